use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// A scalar printed by a command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Number(x as f64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Number(x as f64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Number(x) => sig15(*x),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub quantity: String,
    pub zeta: Value,
    pub pareto: Value,
    pub note: Option<String>,
}

/// Everything a command reports. Text mode is for people; machine mode is
/// one JSON object per line whose numbers parse back to the same `f64`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<Field>,
    pub headline: Option<String>,
    pub values: Vec<Field>,
    pub certificate: Option<Value>,
    pub method: Option<String>,
    pub terms_used: Option<usize>,
    pub table: Vec<TableRow>,
    pub notes: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        OutputRecord { command: command.into(), ..Default::default() }
    }

    pub fn input(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.inputs.push(Field { name: name.into(), value: value.into() });
        self
    }

    pub fn value(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.values.push(Field { name: name.into(), value: value.into() });
        self
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.headline {
            let _ = writeln!(out, "{h}");
        }
        let inputs: Vec<String> = self.inputs.iter().map(|f| format!("{}={}", f.name, f.value.text())).collect();
        if inputs.is_empty() {
            let _ = writeln!(out, "{}", self.command);
        } else {
            let _ = writeln!(out, "{}: {}", self.command, inputs.join(" "));
        }
        if !self.table.is_empty() {
            let cells: Vec<[String; 4]> = self
                .table
                .iter()
                .map(|r| [r.quantity.clone(), r.zeta.text(), r.pareto.text(), r.note.clone().unwrap_or_default()])
                .collect();
            let header = ["quantity".to_string(), "zeta".into(), "pareto".into(), String::new()];
            let mut widths = [0usize; 4];
            for row in std::iter::once(&header).chain(&cells) {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for row in std::iter::once(&header).chain(&cells) {
                let line = format!(
                    "{:<w0$}  {:>w1$}  {:>w2$}  {}",
                    row[0],
                    row[1],
                    row[2],
                    row[3],
                    w0 = widths[0],
                    w1 = widths[1],
                    w2 = widths[2]
                );
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
        for f in &self.values {
            let _ = writeln!(out, "{} = {}", f.name, f.value.text());
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "certificate = {}", c.text());
        }
        if let Some(m) = &self.method {
            let _ = writeln!(out, "method = {m}");
        }
        if let Some(t) = self.terms_used {
            let _ = writeln!(out, "terms_used = {t}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

/// `%.15g`: fifteen significant digits, trailing zeros removed, exponent
/// form outside `[1e-5, 1e15)`.
pub fn sig15(x: f64) -> String {
    sig(x, 15)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mant.starts_with('-');
    let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if exp < -5 || exp >= digits as i32 {
        let (head, tail) = digits_only.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mant = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{mant}e{esign}{:02}", exp.abs());
    }
    let body = if exp >= 0 {
        let point = exp as usize + 1;
        let (int, frac) = digits_only.split_at(point.min(digits_only.len()));
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{zeros}{}", digits_only.trim_end_matches('0'))
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(std::f64::consts::PI * std::f64::consts::PI / 6.0), "1.64493406684823");
        assert_eq!(sig15(0.43049430285461221), "0.430494302854612");
        assert_eq!(sig15(1.367383682536406), "1.36738368253641");
        assert_eq!(sig15(2.0), "2");
        assert_eq!(sig15(-0.5), "-0.5");
        assert_eq!(sig15(1e-7), "1e-07");
        assert_eq!(sig15(1.5e20), "1.5e+20");
        assert_eq!(sig15(0.000123), "0.000123");
        assert_eq!(sig15(9.999999999999999e14), "1e+15");
        assert_eq!(sig15(123456.0), "123456");
    }

    #[test]
    fn machine_round_trip() {
        let r = OutputRecord::new("x")
            .input("s", 0.1 + 0.2)
            .value("v", 0.43049430285461221)
            .value("tiny", 5e-324)
            .value("label", "pi^2/6");
        let back: OutputRecord = serde_json::from_str(&r.to_machine()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_machine().contains('\n'));
    }
}

use std::fmt;

use num_traits::{One, ToPrimitive};

use crate::error::Result;
use crate::special::exact::extract_power;
use crate::special::{zeta_even_exact, ExactRational, DEFAULT_BERNOULLI_CAP};

/// Largest root index attempted; `α` must be a dyadic rational with at most
/// this denominator.
const MAX_ROOT: u32 = 64;

/// `coefficient · (1 - outside · radicand^{1/root})`, the α-divergence between
/// zeta distributions whose three shapes `s1`, `s2`, `α s1 + (1 - α) s2` are
/// even integers. The powers of π cancel, leaving a rational under a root.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactAlphaDivergence {
    pub coefficient: ExactRational,
    pub outside: ExactRational,
    pub radicand: ExactRational,
    pub root: u32,
}

impl ExactAlphaDivergence {
    /// The Bhattacharyya coefficient `outside · radicand^{1/root}`.
    pub fn coefficient_i(&self) -> f64 {
        self.outside.to_f64() * self.radicand.to_f64().powf(1.0 / self.root as f64)
    }

    pub fn to_f64(&self) -> f64 {
        let ln_i = self.outside.ln() + self.radicand.ln() / self.root as f64;
        -self.coefficient.to_f64() * ln_i.exp_m1()
    }

    /// Attempts the exact form. Returns `Ok(None)` whenever the shapes or
    /// weight do not qualify.
    pub fn try_new(s1: f64, s2: f64, alpha: f64) -> Result<Option<Self>> {
        let (Some(a), Some(e1), Some(e2)) = (
            ExactRational::from_f64(alpha),
            even_index(s1),
            even_index(s2),
        ) else {
            return Ok(None);
        };
        let q = match a.denominator().to_u32() {
            Some(q) if q <= MAX_ROOT => q,
            _ => return Ok(None),
        };
        let p = match a.numerator().to_u32() {
            Some(p) if p > 0 && p < q => p,
            _ => return Ok(None),
        };
        let s1r = ExactRational::from_integer(e1);
        let s2r = ExactRational::from_integer(e2);
        let one = ExactRational::one();
        let mixed = &(&a * &s1r) + &(&(&one - &a) * &s2r);
        if !mixed.is_integer() {
            return Ok(None);
        }
        let Some(em) = mixed.numerator().to_u32() else {
            return Ok(None);
        };
        if em % 2 != 0 || em as usize > DEFAULT_BERNOULLI_CAP {
            return Ok(None);
        }
        let z1 = zeta_even_exact(e1)?;
        let z2 = zeta_even_exact(e2)?;
        let zm = zeta_even_exact(em)?;
        // π^{em q} / (π^{e1 p} π^{e2 (q - p)}) = 1.
        let q_i = q as i32;
        let p_i = p as i32;
        let r = &zm.coefficient.pow(q_i)
            / &(&z1.coefficient.pow(p_i) * &z2.coefficient.pow(q_i - p_i));
        let (on, rn) = extract_power(r.numerator(), q, 10_000);
        let (od, rd) = extract_power(r.denominator(), q, 10_000);
        let coefficient = (&a * &(&one - &a)).recip();
        Ok(Some(ExactAlphaDivergence {
            coefficient,
            outside: ExactRational::new(on, od),
            radicand: ExactRational::new(rn, rd),
            root: q,
        }))
    }
}

fn even_index(s: f64) -> Option<u32> {
    if s.fract() == 0.0 && s >= 2.0 && s <= DEFAULT_BERNOULLI_CAP as f64 && (s as u32) % 2 == 0 {
        Some(s as u32)
    } else {
        None
    }
}

impl fmt::Display for ExactAlphaDivergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match self.root {
            2 => format!("sqrt({})", self.radicand),
            k => format!("({})^(1/{k})", self.radicand),
        };
        let inner = if self.radicand.numerator().is_one() && self.radicand.denominator().is_one() {
            format!("1 - {}", self.outside)
        } else if self.outside.numerator().is_one() && self.outside.denominator().is_one() {
            format!("1 - {root}")
        } else {
            format!("1 - {}*{root}", self.outside)
        };
        if self.coefficient == ExactRational::one() {
            write!(f, "{inner}")
        } else {
            write!(f, "{}*({inner})", self.coefficient)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hellinger_four_twelve() {
        let e = ExactAlphaDivergence::try_new(4.0, 12.0, 0.5).unwrap().unwrap();
        assert_eq!(e.to_string(), "4*(1 - 3*sqrt(143/1382))");
        let expected = 4.0 * (1.0 - 3.0 * (715.0f64 / 6910.0).sqrt());
        assert!((e.to_f64() - expected).abs() < 1e-14);
        assert!((e.coefficient_i() - 0.96501763966391728).abs() < 1e-15);
    }

    #[test]
    fn other_weights() {
        // α = 1/4: 0.25 * 2 + 0.75 * 6 = 5 is odd.
        assert!(ExactAlphaDivergence::try_new(2.0, 6.0, 0.25).unwrap().is_none());
        let e = ExactAlphaDivergence::try_new(2.0, 10.0, 0.25).unwrap().unwrap();
        assert_eq!(e.root, 4);
        assert!(ExactAlphaDivergence::try_new(3.0, 7.0, 0.5).unwrap().is_none());
        assert!(ExactAlphaDivergence::try_new(4.0, 12.0, 0.3).unwrap().is_none());
    }
}

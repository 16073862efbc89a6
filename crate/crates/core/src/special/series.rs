use std::fmt;

use crate::error::{Error, Result};

/// How infinite series are truncated and how hard the evaluator tries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPolicy {
    /// Requested bound on `truncation_bound / |value|`.
    pub target_rel_error: f64,
    /// Ceiling on direct terms (and on the sieve range for von Mangoldt sums).
    pub max_terms: usize,
    /// Initial number of direct terms before the Euler–Maclaurin tail.
    pub euler_maclaurin_cutoff: usize,
    /// Number of Bernoulli correction terms in the tail.
    pub euler_maclaurin_order: usize,
    /// When set, the log-weighted, entropy and von Mangoldt series are cut
    /// after exactly this many terms with no tail correction. Normalising
    /// zeta values are still evaluated to full precision.
    pub literal_terms: Option<usize>,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            target_rel_error: 1e-12,
            max_terms: 1_000_000,
            euler_maclaurin_cutoff: 20,
            euler_maclaurin_order: 10,
            literal_terms: None,
        }
    }
}

impl SeriesPolicy {
    /// Default policy, except that defining series stop after `terms` terms.
    pub fn literal(terms: usize) -> Self {
        SeriesPolicy { literal_terms: Some(terms), ..Default::default() }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        SeriesPolicy { max_terms, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.target_rel_error;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::domain("target_rel_error must lie in (0, 1)"));
        }
        if self.euler_maclaurin_cutoff == 0 {
            return Err(Error::domain("euler_maclaurin_cutoff must be positive"));
        }
        if self.max_terms < self.euler_maclaurin_cutoff {
            return Err(Error::domain("max_terms must be at least euler_maclaurin_cutoff"));
        }
        if self.euler_maclaurin_order == 0
            || self.euler_maclaurin_order >= super::bernoulli::MAX_EM_ORDER
        {
            return Err(Error::domain(format!(
                "euler_maclaurin_order must lie in 1..{}",
                super::bernoulli::MAX_EM_ORDER
            )));
        }
        if self.literal_terms == Some(0) {
            return Err(Error::domain("literal_terms must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesMethod {
    Direct,
    EulerMaclaurin,
    Mangoldt,
    IntegralTail,
    EulerProduct,
    Quadrature,
}

impl SeriesMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesMethod::Direct => "direct",
            SeriesMethod::EulerMaclaurin => "euler_maclaurin",
            SeriesMethod::Mangoldt => "mangoldt",
            SeriesMethod::IntegralTail => "integral_tail",
            SeriesMethod::EulerProduct => "euler_product",
            SeriesMethod::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for SeriesMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A truncated series together with a bound on what the truncation cost.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// The exact sum lies within `value ± truncation_bound`, up to rounding.
    pub truncation_bound: f64,
    pub terms_used: usize,
    pub method: SeriesMethod,
}

impl SeriesValue {
    pub fn relative_bound(&self) -> f64 {
        if self.value == 0.0 {
            self.truncation_bound
        } else {
            self.truncation_bound / self.value.abs()
        }
    }
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for Accumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Accumulator::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

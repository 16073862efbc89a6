//! The zeta, Hurwitz-zeta and fixed-scale Pareto families as exponential
//! families with natural parameter `θ = s` and sufficient statistic
//! `t(x) = -ln x`.

mod expfam;
mod mle;
mod sample;

pub use expfam::{
    conjugate_value, cumulant, generalized_pmf, moment_from_natural, natural_from_moment,
    pareto_entropy, pareto_pdf, zeta_entropy, zeta_log_pmf, zeta_pmf, family_entropy,
};
pub(crate) use expfam::{cumulant_difference, cumulant_series, moment_series};
pub use mle::{mle_fit, MleFit};
pub use sample::{sample_pareto, sample_zeta, SampleKind, SampleSet};

use std::fmt;

use crate::error::{check_shape, Error, Result};

/// Which exponential family a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `p_s(x) = x^{-s} / ζ(s)` on the positive integers.
    Zeta,
    /// `x^{-s} / ζ(s, k0)` on `k0, k0 + 1, …`.
    Generalized { k0: u64 },
    /// `q_s(x) = (s - 1) x^{-s}` on `(1, ∞)`.
    Pareto,
}

impl Family {
    /// Support offset of the discrete families.
    pub fn offset(self) -> Option<u64> {
        match self {
            Family::Zeta => Some(1),
            Family::Generalized { k0 } => Some(k0),
            Family::Pareto => None,
        }
    }

    /// Folds `Generalized { k0: 1 }` into `Zeta`.
    pub fn normalized(self) -> Self {
        match self {
            Family::Generalized { k0: 1 } => Family::Zeta,
            f => f,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Family::Generalized { k0: 0 } => Err(Error::domain("k0 must be at least 1")),
            _ => Ok(()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Zeta => "zeta",
            Family::Generalized { .. } => "generalized",
            Family::Pareto => "pareto",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Generalized { k0 } => write!(f, "generalized(k0={k0})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaParam {
    s: f64,
}

impl ZetaParam {
    pub fn new(s: f64) -> Result<Self> {
        check_shape("s", s)?;
        Ok(ZetaParam { s })
    }

    pub fn s(self) -> f64 {
        self.s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralizedZetaParam {
    s: f64,
    k0: u64,
}

impl GeneralizedZetaParam {
    pub fn new(s: f64, k0: u64) -> Result<Self> {
        check_shape("s", s)?;
        Family::Generalized { k0 }.validate()?;
        Ok(GeneralizedZetaParam { s, k0 })
    }

    pub fn s(self) -> f64 {
        self.s
    }

    pub fn k0(self) -> u64 {
        self.k0
    }
}

impl From<ZetaParam> for GeneralizedZetaParam {
    fn from(p: ZetaParam) -> Self {
        GeneralizedZetaParam { s: p.s, k0: 1 }
    }
}

/// Density exponent of a Pareto law with scale 1 and shape `s - 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParetoParam {
    s: f64,
}

impl ParetoParam {
    pub fn new(s: f64) -> Result<Self> {
        check_shape("s", s)?;
        Ok(ParetoParam { s })
    }

    pub fn s(self) -> f64 {
        self.s
    }
}

/// The moment parameter `η = E[-ln X] = F'(θ)`; negative for every family
/// here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentParam {
    pub eta: f64,
}

impl MomentParam {
    pub fn new(eta: f64) -> Self {
        MomentParam { eta }
    }
}

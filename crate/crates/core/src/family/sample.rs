use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ParetoParam, ZetaParam};
use crate::error::{Error, Result};

/// Whether observations are integers (zeta families) or reals (Pareto).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Discrete,
    Continuous,
}

/// A non-empty set of iid observations.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleSet {
    Discrete(Vec<u64>),
    Continuous(Vec<f64>),
}

impl SampleSet {
    pub fn discrete(obs: Vec<u64>) -> Result<Self> {
        if obs.is_empty() {
            return Err(Error::domain("sample must contain at least one observation"));
        }
        if obs.contains(&0) {
            return Err(Error::domain("observations must be positive integers"));
        }
        Ok(SampleSet::Discrete(obs))
    }

    pub fn continuous(obs: Vec<f64>) -> Result<Self> {
        if obs.is_empty() {
            return Err(Error::domain("sample must contain at least one observation"));
        }
        if obs.iter().any(|x| !(*x > 1.0) || !x.is_finite()) {
            return Err(Error::domain("observations must be finite reals exceeding 1"));
        }
        Ok(SampleSet::Continuous(obs))
    }

    pub fn len(&self) -> usize {
        match self {
            SampleSet::Discrete(v) => v.len(),
            SampleSet::Continuous(v) => v.len(),
        }
    }

    /// Always false for a constructed set; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> SampleKind {
        match self {
            SampleSet::Discrete(_) => SampleKind::Discrete,
            SampleSet::Continuous(_) => SampleKind::Continuous,
        }
    }

    /// Smallest observation as a real.
    pub fn min(&self) -> f64 {
        match self {
            SampleSet::Discrete(v) => v.iter().copied().min().unwrap_or(0) as f64,
            SampleSet::Continuous(v) => v.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// `(1/n) Σ ln x_i`.
    pub fn mean_log(&self) -> f64 {
        let n = self.len() as f64;
        match self {
            SampleSet::Discrete(v) => v.iter().map(|&x| (x as f64).ln()).sum::<f64>() / n,
            SampleSet::Continuous(v) => v.iter().map(|x| x.ln()).sum::<f64>() / n,
        }
    }

    /// Parses one observation per line. Blank lines and anything after `#`
    /// are ignored.
    pub fn parse(text: &str, kind: SampleKind) -> Result<Self> {
        let mut ints = Vec::new();
        let mut reals = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line, message };
            match kind {
                SampleKind::Discrete => {
                    let x: u64 = body
                        .parse()
                        .map_err(|_| bad(format!("expected a positive integer, found {body:?}")))?;
                    if x == 0 {
                        return Err(bad("observation must be at least 1".into()));
                    }
                    ints.push(x);
                }
                SampleKind::Continuous => {
                    let x: f64 = body
                        .parse()
                        .map_err(|_| bad(format!("expected a real number, found {body:?}")))?;
                    if !(x > 1.0) || !x.is_finite() {
                        return Err(bad(format!("observation {body} must be a finite real exceeding 1")));
                    }
                    reals.push(x);
                }
            }
        }
        match kind {
            SampleKind::Discrete => SampleSet::discrete(ints),
            SampleKind::Continuous => SampleSet::continuous(reals),
        }
    }

    pub fn from_file(path: impl AsRef<Path>, kind: SampleKind) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SampleSet::parse(&text, kind)
    }
}

impl fmt::Display for SampleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleSet::Discrete(v) => v.iter().try_for_each(|x| writeln!(f, "{x}")),
            SampleSet::Continuous(v) => v.iter().try_for_each(|x| writeln!(f, "{x}")),
        }
    }
}

/// `count` iid zeta draws from a ChaCha8 stream seeded with `seed`.
pub fn sample_zeta(param: ZetaParam, count: usize, seed: u64) -> Result<SampleSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SampleSet::discrete(sample_zeta_with(param, count, &mut rng)?)
}

/// Devroye's rejection sampler: propose `floor(U^{-1/(s-1)})` and accept
/// against the ratio of the zeta pmf to the discretized Pareto proposal.
/// Proposals beyond `2^63` are redrawn, which removes less than
/// `2^{-63(s-1)}` of the mass.
pub fn sample_zeta_with<R: Rng + ?Sized>(param: ZetaParam, count: usize, rng: &mut R) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    let a = param.s() - 1.0;
    let b = 2f64.powf(a);
    let limit = 2f64.powi(63);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = 1.0 - rng.random::<f64>();
        let v = rng.random::<f64>();
        let x = u.powf(-1.0 / a).floor();
        if !(x < limit) {
            continue;
        }
        let t = (1.0 + 1.0 / x).powf(a);
        if v * x * (t - 1.0) / (b - 1.0) <= t / b {
            out.push(x as u64);
        }
    }
    Ok(out)
}

/// `count` iid Pareto draws by inversion, `X = U^{-1/(s-1)}`.
pub fn sample_pareto(param: ParetoParam, count: usize, seed: u64) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = param.s() - 1.0;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = 1.0 - rng.random::<f64>();
        let x = u.powf(-1.0 / a);
        if x > 1.0 && x.is_finite() {
            out.push(x);
        }
    }
    SampleSet::continuous(out)
}

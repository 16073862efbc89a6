//! Closed-form divergences within one family.
//!
//! Every quantity is a function of the skewed Jensen gap
//! `J_α(s1 : s2) = α F(s1) + (1 - α) F(s2) - F(α s1 + (1 - α) s2)` of the
//! cumulant, or of its Bregman limit. `J` is assembled from cumulant
//! differences evaluated without cancellation, and each result carries a
//! first-order propagation of the underlying series certificates.

mod exact;
pub mod oracle;

pub use exact::ExactAlphaDivergence;

use std::fmt;

use crate::error::{check_shape, Error, Result};
use crate::family::{conjugate_value, cumulant_difference, cumulant_series, family_entropy, moment_series, Family, MomentParam};
use crate::special::{hurwitz_log_weighted_series, hurwitz_zeta, mangoldt_series, SeriesPolicy, SeriesValue};

/// Error certificate attached to a divergence value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Certificate {
    /// Exact up to floating-point rounding.
    ClosedForm,
    /// Truncation error is at most this much.
    Bound(f64),
}

impl Certificate {
    fn from_bound(b: f64) -> Self {
        if b == 0.0 {
            Certificate::ClosedForm
        } else {
            Certificate::Bound(b)
        }
    }

    /// The bound, zero for closed forms.
    pub fn bound(self) -> f64 {
        match self {
            Certificate::ClosedForm => 0.0,
            Certificate::Bound(b) => b,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ClosedForm => f.write_str("closed-form"),
            Certificate::Bound(b) => write!(f, "{b:e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivergenceKind {
    Alpha,
    Hellinger2,
    SharmaMittal,
    Renyi,
    Tsallis,
    Kl,
}

impl DivergenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DivergenceKind::Alpha => "alpha",
            DivergenceKind::Hellinger2 => "hellinger2",
            DivergenceKind::SharmaMittal => "sharma-mittal",
            DivergenceKind::Renyi => "renyi",
            DivergenceKind::Tsallis => "tsallis",
            DivergenceKind::Kl => "kl",
        }
    }
}

impl fmt::Display for DivergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a Kullback–Leibler divergence is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KlMethod {
    /// `ln(ζ(s2)/ζ(s1)) + (s2 - s1) L(s1)/ζ(s1)`, the reverse Bregman form.
    LogSeries,
    /// `ln ζ(s2) - H[p_{s1}] + s2 L(s1)/ζ(s1)`.
    EntropyForm,
    /// `ln ζ(s2) - H[p_{s1}] + s2 Σ Λ(i)/i^{s1}`.
    MangoldtForm,
    /// `F(s2) + F*(η(s1)) - s2 η(s1)` with the conjugate found numerically.
    FenchelYoung,
    /// The α-divergence with weight `w` on `s1`, which tends to the KL
    /// divergence as `w → 1`. Passing `w = 1 - ε` gives the small-ε form.
    EpsilonApprox(f64),
}

impl KlMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KlMethod::LogSeries => "log_series",
            KlMethod::EntropyForm => "entropy_form",
            KlMethod::MangoldtForm => "mangoldt_form",
            KlMethod::FenchelYoung => "fenchel_young",
            KlMethod::EpsilonApprox(_) => "epsilon_approx",
        }
    }
}

/// Parameters of the Sharma–Mittal divergence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SharmaMittalSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl SharmaMittalSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_order(alpha)?;
        if !beta.is_finite() || beta == 1.0 {
            return Err(Error::domain("beta must be finite and differ from 1"));
        }
        Ok(SharmaMittalSpec { alpha, beta })
    }
}

/// Inputs echoed back with every result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceInputs {
    pub family: Family,
    pub s1: f64,
    pub s2: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceResult {
    pub kind: DivergenceKind,
    pub value: f64,
    pub certificate: Certificate,
    pub method: &'static str,
    pub inputs: DivergenceInputs,
    pub terms_used: usize,
    /// Symbolic value, present for α-divergences between zeta distributions
    /// at even integer shapes.
    pub exact: Option<ExactAlphaDivergence>,
}

fn validate_pair(family: Family, s1: f64, s2: f64) -> Result<()> {
    family.validate()?;
    check_shape("s1", s1)?;
    check_shape("s2", s2)
}

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() || alpha == 1.0 {
        return Err(Error::domain("alpha must be positive and differ from 1"));
    }
    Ok(())
}

fn check_unit_interval(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("alpha must lie in (0, 1)"));
    }
    Ok(())
}

fn mixed_shape(s1: f64, s2: f64, alpha: f64) -> Result<f64> {
    let m = alpha * s1 + (1.0 - alpha) * s2;
    if !(m > 1.0) || !m.is_finite() {
        return Err(Error::domain("interpolated parameter alpha*s1 + (1-alpha)*s2 must exceed 1"));
    }
    Ok(m)
}

/// `J_α` with its truncation bound and term count. Any order `α` with an
/// interpolated shape above 1 is accepted; `J_α <= 0` when `α > 1`.
pub(crate) fn jensen_certified(
    family: Family,
    s1: f64,
    s2: f64,
    alpha: f64,
    policy: &SeriesPolicy,
) -> Result<(f64, f64)> {
    validate_pair(family, s1, s2)?;
    let m = mixed_shape(s1, s2, alpha)?;
    if s1 == s2 {
        return Ok((0.0, 0.0));
    }
    let (d1, b1) = cumulant_difference(family, s1, m, policy)?;
    let (d2, b2) = cumulant_difference(family, s2, m, policy)?;
    let j = alpha * d1 + (1.0 - alpha) * d2;
    Ok((j, alpha.abs() * b1 + (1.0 - alpha).abs() * b2))
}

/// Skewed Jensen divergence `α F(s1) + (1 - α) F(s2) - F(α s1 + (1 - α) s2)`.
pub fn jensen_skewed(family: Family, s1: f64, s2: f64, alpha: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_unit_interval(alpha)?;
    Ok(jensen_certified(family, s1, s2, alpha, policy)?.0)
}

/// Skewed Bhattacharyya coefficient `I_α = Σ p1^α p2^{1-α} = exp(-J_α)`.
///
/// Zeta: `ζ(α s1 + (1-α) s2) / (ζ(s1)^α ζ(s2)^{1-α})`.
/// Pareto: `(s1 - 1)^α (s2 - 1)^{1-α} / (α s1 + (1-α) s2 - 1)`.
pub fn bhattacharyya_coeff(family: Family, s1: f64, s2: f64, alpha: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_unit_interval(alpha)?;
    Ok((-jensen_certified(family, s1, s2, alpha, policy)?.0).exp())
}

/// `(1 - I_α) / (α (1 - α))` for `α ∈ (0, 1)`.
pub fn alpha_divergence(family: Family, s1: f64, s2: f64, alpha: f64, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    check_unit_interval(alpha)?;
    let (j, bj) = jensen_certified(family, s1, s2, alpha, policy)?;
    let scale = 1.0 / (alpha * (1.0 - alpha));
    let value = -scale * (-j).exp_m1();
    let exact = if family.normalized() == Family::Zeta && s1 != s2 {
        ExactAlphaDivergence::try_new(s1, s2, alpha)?
    } else {
        None
    };
    Ok(DivergenceResult {
        kind: DivergenceKind::Alpha,
        value,
        certificate: Certificate::from_bound(scale * (-j).exp() * bj),
        method: if exact.is_some() { "closed_form_exact" } else { "closed_form" },
        inputs: DivergenceInputs { family, s1, s2, alpha: Some(alpha), beta: None },
        terms_used: terms_for(family, policy),
        exact,
    })
}

/// Squared Hellinger divergence `Σ (√p1 - √p2)²`, the α-divergence at
/// `α = 1/2`.
pub fn hellinger_squared(family: Family, s1: f64, s2: f64, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    let mut r = alpha_divergence(family, s1, s2, 0.5, policy)?;
    r.kind = DivergenceKind::Hellinger2;
    Ok(r)
}

/// `(I_α^{(1-β)/(1-α)} - 1) / (β - 1)`.
pub fn sharma_mittal(family: Family, s1: f64, s2: f64, spec: SharmaMittalSpec, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    let SharmaMittalSpec { alpha, beta } = SharmaMittalSpec::new(spec.alpha, spec.beta)?;
    let (j, bj) = jensen_certified(family, s1, s2, alpha, policy)?;
    let x = -j * (1.0 - beta) / (1.0 - alpha);
    let value = x.exp_m1() / (beta - 1.0);
    let bound = x.exp() * bj / (1.0 - alpha).abs();
    Ok(DivergenceResult {
        kind: DivergenceKind::SharmaMittal,
        value,
        certificate: Certificate::from_bound(bound),
        method: "closed_form",
        inputs: DivergenceInputs { family, s1, s2, alpha: Some(alpha), beta: Some(beta) },
        terms_used: terms_for(family, policy),
        exact: None,
    })
}

/// Rényi divergence `J_α / (1 - α) = ln(I_α) / (α - 1)`, the `β → 1` limit of
/// Sharma–Mittal.
pub fn renyi(family: Family, s1: f64, s2: f64, alpha: f64, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    check_order(alpha)?;
    let (j, bj) = jensen_certified(family, s1, s2, alpha, policy)?;
    Ok(DivergenceResult {
        kind: DivergenceKind::Renyi,
        value: j / (1.0 - alpha),
        certificate: Certificate::from_bound(bj / (1.0 - alpha).abs()),
        method: "closed_form",
        inputs: DivergenceInputs { family, s1, s2, alpha: Some(alpha), beta: None },
        terms_used: terms_for(family, policy),
        exact: None,
    })
}

/// Tsallis divergence `(I_α - 1) / (α - 1)`: Sharma–Mittal at `β = α`.
pub fn tsallis(family: Family, s1: f64, s2: f64, alpha: f64, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    let mut r = sharma_mittal(family, s1, s2, SharmaMittalSpec::new(alpha, alpha)?, policy)?;
    r.kind = DivergenceKind::Tsallis;
    r.inputs.beta = None;
    Ok(r)
}

/// Kullback–Leibler divergence `KL(p_{s1} : p_{s2})`.
///
/// Pareto uses the closed form `ln((s1-1)/(s2-1)) + (s2-s1)/(s1-1)` for every
/// method except [`KlMethod::EpsilonApprox`]. [`KlMethod::MangoldtForm`]
/// needs the plain zeta family. A literal policy truncates the log-weighted,
/// entropy and von Mangoldt series at exactly that many terms while the
/// normalizers stay certified.
pub fn kl_divergence(family: Family, s1: f64, s2: f64, method: KlMethod, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    validate_pair(family, s1, s2)?;
    policy.validate()?;
    let inputs = DivergenceInputs { family, s1, s2, alpha: None, beta: None };
    let result = |value: f64, bound: f64, method: &'static str, terms_used: usize| DivergenceResult {
        kind: DivergenceKind::Kl,
        value,
        certificate: Certificate::from_bound(bound),
        method,
        inputs,
        terms_used,
        exact: None,
    };

    if let KlMethod::EpsilonApprox(w) = method {
        if !(w > 0.0 && w < 1.0) {
            return Err(Error::domain("epsilon weight must lie in (0, 1)"));
        }
        let mut r = alpha_divergence(family, s1, s2, w, policy)?;
        r.kind = DivergenceKind::Kl;
        r.method = "epsilon_approx";
        r.inputs = DivergenceInputs { alpha: Some(w), ..inputs };
        r.exact = None;
        return Ok(r);
    }
    if method == KlMethod::MangoldtForm && family.normalized() != Family::Zeta {
        return Err(Error::domain("the von Mangoldt form needs the zeta family"));
    }
    if s1 == s2 {
        return Ok(result(0.0, 0.0, method.as_str(), 0));
    }
    let Some(k0) = family.offset() else {
        let x = (s2 - s1) / (s1 - 1.0);
        return Ok(result(x - x.ln_1p(), 0.0, "closed_form", 0));
    };

    let certified = SeriesPolicy { literal_terms: None, ..*policy };
    match method {
        KlMethod::LogSeries => {
            let (df, bf) = cumulant_difference(family, s2, s1, &certified)?;
            let z1 = hurwitz_zeta(s1, k0, &certified)?;
            let l1 = hurwitz_log_weighted_series(s1, k0, policy)?;
            let ratio = l1.value / z1.value;
            let value = df + (s2 - s1) * ratio;
            let bound = bf + (s2 - s1).abs() * (l1.truncation_bound + ratio * z1.truncation_bound) / z1.value;
            Ok(result(value, bound, method.as_str(), l1.terms_used))
        }
        KlMethod::EntropyForm | KlMethod::MangoldtForm => {
            let z2 = hurwitz_zeta(s2, k0, &certified)?;
            let h = family_entropy(family, s1, policy)?;
            let (tail, tail_bound, terms) = if method == KlMethod::MangoldtForm {
                let g = mangoldt_series(s1, policy)?;
                (g.value, g.truncation_bound, g.terms_used)
            } else {
                let z1 = hurwitz_zeta(s1, k0, &certified)?;
                let l1 = hurwitz_log_weighted_series(s1, k0, policy)?;
                let ratio = l1.value / z1.value;
                (ratio, (l1.truncation_bound + ratio * z1.truncation_bound) / z1.value, l1.terms_used)
            };
            Ok(kl_from_entropy_parts(z2, h, tail, tail_bound, s2, terms, method.as_str(), inputs))
        }
        KlMethod::FenchelYoung => {
            let (eta, beta) = moment_series(family, s1, &certified)?;
            let eta = MomentParam::new(eta);
            let tol = 1e-15;
            // F*(η1) = θ η1 - F(θ) at θ = θ(η1) ≈ s1; the stationarity of
            // the conjugate makes the inversion error second order.
            let fstar = conjugate_value(family, eta, tol, &certified)?;
            let (f2, bf2) = cumulant_series(family, s2, &certified)?;
            let (_, bf1) = cumulant_series(family, s1, &certified)?;
            let value = f2 + fstar - s2 * eta.eta;
            let bound = bf2 + bf1 + (s2 - s1).abs() * beta + s1 * tol;
            Ok(result(value, bound, method.as_str(), 0))
        }
        KlMethod::EpsilonApprox(_) => unreachable!(),
    }
}

/// The von Mangoldt form with a precomputed `Σ Λ(i)/i^{s1}`, so that one
/// sieve can serve many `s2`.
pub fn kl_from_mangoldt(s1: f64, s2: f64, lambda_sum: &SeriesValue, policy: &SeriesPolicy) -> Result<DivergenceResult> {
    validate_pair(Family::Zeta, s1, s2)?;
    let inputs = DivergenceInputs { family: Family::Zeta, s1, s2, alpha: None, beta: None };
    let certified = SeriesPolicy { literal_terms: None, ..*policy };
    let z2 = hurwitz_zeta(s2, 1, &certified)?;
    let h = family_entropy(Family::Zeta, s1, policy)?;
    Ok(kl_from_entropy_parts(
        z2,
        h,
        lambda_sum.value,
        lambda_sum.truncation_bound,
        s2,
        lambda_sum.terms_used,
        KlMethod::MangoldtForm.as_str(),
        inputs,
    ))
}

#[allow(clippy::too_many_arguments)]
fn kl_from_entropy_parts(
    z2: SeriesValue,
    h: SeriesValue,
    tail: f64,
    tail_bound: f64,
    s2: f64,
    terms: usize,
    method: &'static str,
    inputs: DivergenceInputs,
) -> DivergenceResult {
    let value = z2.value.ln() - h.value + s2 * tail;
    let bound = z2.truncation_bound / z2.value + h.truncation_bound + s2 * tail_bound;
    DivergenceResult {
        kind: DivergenceKind::Kl,
        value,
        certificate: Certificate::from_bound(bound),
        method,
        inputs,
        terms_used: terms.max(h.terms_used),
        exact: None,
    }
}

fn terms_for(family: Family, policy: &SeriesPolicy) -> usize {
    match family {
        Family::Pareto => 0,
        _ => policy.euler_maclaurin_cutoff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    #[test]
    fn hellinger_examples() {
        let h = hellinger_squared(Family::Zeta, 4.0, 12.0, &pol()).unwrap();
        let closed = 4.0 * (1.0 - 3.0 * (715.0f64 / 6910.0).sqrt());
        assert!((h.value - closed).abs() < 1e-15, "{}", h.value);
        assert!((h.value - 0.139929).abs() < 1e-6);
        assert_eq!(h.exact.as_ref().unwrap().to_string(), "4*(1 - 3*sqrt(143/1382))");
        assert!((h.exact.unwrap().to_f64() - h.value).abs() < 1e-12);
        let h = hellinger_squared(Family::Zeta, 3.0, 7.0, &pol()).unwrap();
        // 4(1 - ζ(5)/√(ζ(3)ζ(7))) at 50 digits.
        assert!((h.value - 0.23261086055934402).abs() < 1e-14, "{}", h.value);
        assert!(h.exact.is_none());
    }

    #[test]
    fn coefficient_values() {
        let i = bhattacharyya_coeff(Family::Zeta, 4.0, 12.0, 0.5, &pol()).unwrap();
        assert!((i - 3.0 * (715.0f64 / 6910.0).sqrt()).abs() < 1e-15);
        assert_eq!(bhattacharyya_coeff(Family::Zeta, 3.0, 3.0, 0.3, &pol()).unwrap(), 1.0);
        let ip = bhattacharyya_coeff(Family::Pareto, 4.0, 12.0, 0.5, &pol()).unwrap();
        assert!((ip - 33f64.sqrt() / 7.0).abs() < 1e-15, "{ip}");
        let jp = jensen_skewed(Family::Pareto, 4.0, 12.0, 0.5, &pol()).unwrap();
        assert!((jp - (7.0 / 33f64.sqrt()).ln()).abs() < 1e-15);
        let jz = jensen_skewed(Family::Zeta, 4.0, 12.0, 0.5, &pol()).unwrap();
        let (z4, z8, z12) = (
            std::f64::consts::PI.powi(4) / 90.0,
            std::f64::consts::PI.powi(8) / 9450.0,
            691.0 * std::f64::consts::PI.powi(12) / 638512875.0,
        );
        assert!((jz - ((z4 * z12).sqrt() / z8).ln()).abs() < 1e-15);
        assert_eq!(jensen_skewed(Family::Zeta, 3.0, 3.0, 0.7, &pol()).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(alpha_divergence(Family::Zeta, 4.0, 12.0, 0.0, &pol()).is_err());
        assert!(alpha_divergence(Family::Zeta, 4.0, 12.0, 1.0, &pol()).is_err());
        assert!(alpha_divergence(Family::Zeta, 1.0, 12.0, 0.5, &pol()).is_err());
        assert!(renyi(Family::Zeta, 4.0, 12.0, 1.0, &pol()).is_err());
        assert!(renyi(Family::Zeta, 1.5, 4.0, 3.0, &pol()).is_err());
        assert!(SharmaMittalSpec::new(0.5, 1.0).is_err());
        assert!(kl_divergence(Family::Zeta, 4.0, 12.0, KlMethod::EpsilonApprox(1.0), &pol()).is_err());
        assert!(kl_divergence(Family::Pareto, 4.0, 12.0, KlMethod::MangoldtForm, &pol()).is_err());
    }

    #[test]
    fn tsallis_is_sharma_mittal_at_beta_alpha() {
        for alpha in [0.25, 0.5, 2.0] {
            let t = tsallis(Family::Zeta, 12.0, 4.0, alpha, &pol()).unwrap();
            let sm = sharma_mittal(Family::Zeta, 12.0, 4.0, SharmaMittalSpec::new(alpha, alpha).unwrap(), &pol()).unwrap();
            assert_eq!(t.value, sm.value);
        }
        let t = tsallis(Family::Zeta, 4.0, 12.0, 0.5, &pol()).unwrap();
        let d = hellinger_squared(Family::Zeta, 4.0, 12.0, &pol()).unwrap();
        assert!((t.value - 0.5 * d.value).abs() < 1e-16);
        assert!((t.value - 0.069964).abs() < 1e-6);
    }

    #[test]
    fn renyi_half() {
        let r = renyi(Family::Zeta, 4.0, 12.0, 0.5, &pol()).unwrap();
        let i = 3.0 * (715.0f64 / 6910.0).sqrt();
        assert!((r.value + 2.0 * i.ln()).abs() < 1e-15);
        assert!((r.value - 0.07121779673148855).abs() < 1e-15, "{}", r.value);
    }

    #[test]
    fn kl_methods_agree() {
        let expected = 0.43049430285461221;
        for m in [KlMethod::LogSeries, KlMethod::EntropyForm, KlMethod::MangoldtForm, KlMethod::FenchelYoung] {
            let r = kl_divergence(Family::Zeta, 4.0, 12.0, m, &pol()).unwrap();
            assert!((r.value - expected).abs() < 1e-11, "{m:?}: {}", r.value);
            assert!((r.value - expected).abs() <= r.certificate.bound() + 1e-14, "{m:?}");
        }
    }

    #[test]
    fn kl_literal_hundred_terms() {
        let r = kl_divergence(Family::Zeta, 4.0, 12.0, KlMethod::MangoldtForm, &SeriesPolicy::literal(100)).unwrap();
        assert!((r.value - 0.430495790304827).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn kl_pareto() {
        for m in [KlMethod::LogSeries, KlMethod::FenchelYoung] {
            let r = kl_divergence(Family::Pareto, 4.0, 12.0, m, &pol()).unwrap();
            assert!((r.value - ((3.0f64 / 11.0).ln() + 8.0 / 3.0)).abs() < 1e-15);
            assert!((r.value - 1.367383682536406).abs() < 1e-12);
            assert_eq!(r.certificate, Certificate::ClosedForm);
        }
    }

    #[test]
    fn epsilon_ladder_increases() {
        let mut prev = 0.0;
        for w in [0.99, 0.999, 0.9999, 0.99999, 0.999999] {
            let r = kl_divergence(Family::Zeta, 4.0, 12.0, KlMethod::EpsilonApprox(w), &pol()).unwrap();
            assert!(r.value > prev);
            prev = r.value;
        }
        assert!((prev - 0.43049284690173197).abs() < 1e-12, "{prev}");
    }

    #[test]
    fn generalized_family() {
        let fam = Family::Generalized { k0: 3 };
        let a = kl_divergence(fam, 2.0, 5.0, KlMethod::LogSeries, &pol()).unwrap();
        let b = kl_divergence(fam, 2.0, 5.0, KlMethod::EntropyForm, &pol()).unwrap();
        let c = kl_divergence(fam, 2.0, 5.0, KlMethod::FenchelYoung, &pol()).unwrap();
        assert!((a.value - b.value).abs() < 1e-12 && (a.value - c.value).abs() < 1e-10);
        assert!(a.value > 0.0);
    }
}

use super::{Family, GeneralizedZetaParam, MomentParam, ParetoParam, ZetaParam};
use crate::error::{check_shape, Error, Result};
use crate::special::series::{SeriesMethod, SeriesPolicy, SeriesValue};
use crate::special::zeta::{log_tail_bound, power_tail_bound};
use crate::special::{hurwitz_log_weighted_series, hurwitz_zeta, hurwitz_zeta_difference};

/// `Pr[X = x] = x^{-s} / ζ(s)`.
pub fn zeta_pmf(param: ZetaParam, x: u64, policy: &SeriesPolicy) -> Result<f64> {
    generalized_pmf(param.into(), x, policy)
}

/// `ln Pr[X = x]`, finite for any `x` where the pmf itself underflows.
pub fn zeta_log_pmf(param: ZetaParam, x: u64, policy: &SeriesPolicy) -> Result<f64> {
    generalized_log_pmf(param.into(), x, policy)
}

/// `x^{-s} / ζ(s, k0)` on `x >= k0`.
pub fn generalized_pmf(param: GeneralizedZetaParam, x: u64, policy: &SeriesPolicy) -> Result<f64> {
    check_support(param, x)?;
    let z = hurwitz_zeta(param.s(), param.k0(), policy)?;
    Ok((x as f64).powf(-param.s()) / z.value)
}

fn generalized_log_pmf(param: GeneralizedZetaParam, x: u64, policy: &SeriesPolicy) -> Result<f64> {
    check_support(param, x)?;
    let z = hurwitz_zeta(param.s(), param.k0(), policy)?;
    Ok(-param.s() * (x as f64).ln() - z.value.ln())
}

fn check_support(param: GeneralizedZetaParam, x: u64) -> Result<()> {
    if x < param.k0() {
        Err(Error::domain(format!("x must be at least {}", param.k0())))
    } else {
        Ok(())
    }
}

/// `F(θ)` and a bound on its truncation error.
pub(crate) fn cumulant_series(family: Family, theta: f64, policy: &SeriesPolicy) -> Result<(f64, f64)> {
    check_shape("theta", theta)?;
    family.validate()?;
    match family.offset() {
        Some(k0) => {
            let z = hurwitz_zeta(theta, k0, policy)?;
            Ok((z.value.ln(), z.truncation_bound / z.value))
        }
        None => Ok((-(theta - 1.0).ln(), 0.0)),
    }
}

/// The cumulant: `ln ζ(θ)`, `ln ζ(θ, k0)` or `-ln(θ - 1)`.
pub fn cumulant(family: Family, theta: f64, policy: &SeriesPolicy) -> Result<f64> {
    Ok(cumulant_series(family, theta, policy)?.0)
}

/// `F(u) - F(v)` without the cancellation of subtracting two cumulants.
pub(crate) fn cumulant_difference(family: Family, u: f64, v: f64, policy: &SeriesPolicy) -> Result<(f64, f64)> {
    check_shape("theta", u)?;
    check_shape("theta", v)?;
    family.validate()?;
    match family.offset() {
        Some(k0) => {
            let d = hurwitz_zeta_difference(u, v, k0, policy)?;
            let z = hurwitz_zeta(v, k0, policy)?;
            let ratio = d.value / z.value;
            if ratio.abs() > 0.5 {
                // ln_1p near -1 amplifies the rounding of its argument; the
                // two zeta values are far enough apart to divide directly.
                let zu = hurwitz_zeta(u, k0, policy)?;
                let value = (zu.value / z.value).ln();
                return Ok((value, zu.truncation_bound / zu.value + z.truncation_bound / z.value));
            }
            let bound = (d.truncation_bound + ratio.abs() * z.truncation_bound) / (z.value + d.value);
            Ok((ratio.ln_1p(), bound))
        }
        None => {
            let x = (v - u) / (u - 1.0);
            let value = if x.abs() > 0.5 { ((v - 1.0) / (u - 1.0)).ln() } else { x.ln_1p() };
            Ok((value, 0.0))
        }
    }
}

/// `η(θ) = F'(θ)` with its bound.
pub(crate) fn moment_series(family: Family, theta: f64, policy: &SeriesPolicy) -> Result<(f64, f64)> {
    check_shape("theta", theta)?;
    family.validate()?;
    match family.offset() {
        Some(k0) => {
            let z = hurwitz_zeta(theta, k0, policy)?;
            let l = hurwitz_log_weighted_series(theta, k0, &certified(policy))?;
            let eta = -l.value / z.value;
            let bound = l.truncation_bound / z.value + eta.abs() * z.truncation_bound / z.value;
            Ok((eta, bound))
        }
        None => Ok((-1.0 / (theta - 1.0), 0.0)),
    }
}

/// The moment map. For the zeta families `η(θ) = ζ'(θ, k0)/ζ(θ, k0)`,
/// evaluated from the certified log-weighted series; for Pareto
/// `η(θ) = -1/(θ - 1)`.
pub fn moment_from_natural(family: Family, theta: f64, policy: &SeriesPolicy) -> Result<MomentParam> {
    Ok(MomentParam::new(moment_series(family, theta, policy)?.0))
}

/// Inverse of the moment map.
///
/// Pareto: `θ = 1 - 1/η`. Zeta families: bisection on the strictly
/// increasing `η(θ)` until `|η(θ) - eta| <= tol`.
pub fn natural_from_moment(family: Family, eta: MomentParam, tol: f64, policy: &SeriesPolicy) -> Result<f64> {
    family.validate()?;
    let target = eta.eta;
    if !target.is_finite() {
        return Err(Error::domain("eta must be finite"));
    }
    let k0 = match family.offset() {
        None => {
            if target >= 0.0 {
                return Err(Error::domain("eta must be negative"));
            }
            return Ok(1.0 - 1.0 / target);
        }
        Some(k0) => k0,
    };
    // η(θ) increases from -∞ (θ → 1) to -ln k0 (θ → ∞).
    let sup = -(k0 as f64).ln();
    if target >= sup {
        return Err(Error::domain(format!("eta must be below {sup} for this family")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let eta_at = |theta: f64| moment_series(family, theta, policy).map(|(e, _)| e);
    let mut best = (f64::INFINITY, f64::NAN, 0.0);

    let mut delta = 1e-3;
    let mut lo = 1.0 + delta;
    while eta_at(lo)? > target {
        delta /= 16.0;
        if delta < 1e-14 {
            return Err(Error::Convergence("could not bracket eta from below".into()));
        }
        lo = 1.0 + delta;
    }
    let mut hi = 64.0;
    while eta_at(hi)? < target {
        hi *= 2.0;
        if hi > 1e5 {
            return Err(Error::Convergence("could not bracket eta from above".into()));
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        let (e, bound) = moment_series(family, mid, policy)?;
        let resid = (e - target).abs();
        if resid <= tol {
            return Ok(mid);
        }
        if resid < best.0 {
            best = (resid, mid, bound);
        }
        if e < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            break;
        }
    }
    // A tolerance below the resolution of η itself is met as well as it
    // can be once the bracket has collapsed.
    let (resid, theta, bound) = best;
    let step = (eta_at(hi)? - eta_at(lo)?).abs();
    if resid <= bound + step + 16.0 * f64::EPSILON * target.abs() {
        return Ok(theta);
    }
    Err(Error::Convergence(format!(
        "bisection stalled before reaching |eta(theta) - target| <= {tol}"
    )))
}

/// Shannon entropy of a zeta distribution, `s L(s)/ζ(s) + ln ζ(s)`.
pub fn zeta_entropy(param: ZetaParam, policy: &SeriesPolicy) -> Result<SeriesValue> {
    family_entropy(Family::Zeta, param.s(), policy)
}

/// Entropy of any supported family (differential entropy for Pareto).
///
/// For the zeta families a literal policy sums
/// `sum_{i < k0 + n} (1 / (i^s ζ)) ln(i^s ζ)` term by term.
pub fn family_entropy(family: Family, s: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    check_shape("s", s)?;
    family.validate()?;
    let k0 = match family.offset() {
        None => {
            return Ok(SeriesValue {
                value: pareto_entropy(ParetoParam::new(s)?),
                truncation_bound: 0.0,
                terms_used: 0,
                method: SeriesMethod::Direct,
            })
        }
        Some(k0) => k0,
    };
    let z = hurwitz_zeta(s, k0, &certified(policy))?;
    if let Some(n) = policy.literal_terms {
        let zeta = z.value;
        let mut sum = 0.0;
        for i in k0..k0 + n as u64 {
            let w = (i as f64).powf(s) * zeta;
            sum += (1.0 / w) * w.ln();
        }
        let last = (k0 + n as u64 - 1) as f64;
        let bound = (s * log_tail_bound(s, last) + zeta.ln().abs() * power_tail_bound(s, last)) / zeta;
        return Ok(SeriesValue { value: sum, truncation_bound: bound, terms_used: n, method: SeriesMethod::Direct });
    }
    let l = hurwitz_log_weighted_series(s, k0, policy)?;
    let ratio = l.value / z.value;
    let value = s * ratio + z.value.ln();
    let rel_z = z.truncation_bound / z.value;
    let bound = s * (l.truncation_bound / z.value + ratio * rel_z) + rel_z;
    Ok(SeriesValue {
        value,
        truncation_bound: bound,
        terms_used: l.terms_used.max(z.terms_used),
        method: l.method,
    })
}

/// `q_s(x) = (s - 1) x^{-s}` on `x > 1`.
pub fn pareto_pdf(param: ParetoParam, x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::domain("x must exceed 1"));
    }
    Ok((param.s() - 1.0) * x.powf(-param.s()))
}

/// `h[q_s] = 1 + 1/(s - 1) - ln(s - 1)`.
pub fn pareto_entropy(param: ParetoParam) -> f64 {
    let a = param.s() - 1.0;
    1.0 + 1.0 / a - a.ln()
}

/// Legendre conjugate `F*(η) = θ(η) η - F(θ(η))`, the negentropy at the
/// parameter whose moment is `η`.
///
/// Pareto uses the closed form `η - 1 - ln(-η)`. The zeta families have no
/// closed form; the value is computed numerically through
/// [`natural_from_moment`].
pub fn conjugate_value(family: Family, eta: MomentParam, tol: f64, policy: &SeriesPolicy) -> Result<f64> {
    if family == Family::Pareto {
        if !(eta.eta < 0.0) {
            return Err(Error::domain("eta must be negative"));
        }
        return Ok(eta.eta - 1.0 - (-eta.eta).ln());
    }
    let theta = natural_from_moment(family, eta, tol, policy)?;
    Ok(theta * eta.eta - cumulant(family, theta, policy)?)
}

fn certified(policy: &SeriesPolicy) -> SeriesPolicy {
    SeriesPolicy { literal_terms: None, ..*policy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use std::f64::consts::PI;

    fn pol() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    #[test]
    fn pmf_values() {
        let p = zeta_pmf(ZetaParam::new(2.0).unwrap(), 1, &pol()).unwrap();
        assert!((p - 6.0 / (PI * PI)).abs() < 1e-15);
        assert!((p - 0.607927).abs() < 1e-6);
        let z4 = PI.powi(4) / 90.0;
        let q = zeta_pmf(ZetaParam::new(4.0).unwrap(), 2, &pol()).unwrap();
        assert!(((q - 1.0 / 16.0 / z4) / q).abs() < 1e-15);
        assert!(zeta_pmf(ZetaParam::new(4.0).unwrap(), 0, &pol()).is_err());
        let lp = zeta_log_pmf(ZetaParam::new(12.0).unwrap(), 1u64 << 62, &pol()).unwrap();
        assert!(lp.is_finite() && lp < -500.0);
    }

    #[test]
    fn pmf_normalizes() {
        for s in [1.5, 2.0, 4.0] {
            let param = ZetaParam::new(s).unwrap();
            let n = 100_000u64;
            let head: crate::special::series::Accumulator =
                (1..=n).rev().map(|x| zeta_pmf(param, x, &pol()).unwrap()).collect();
            let z = crate::special::zeta_real(s, &pol()).unwrap().value;
            let a = n as f64 + 0.5;
            let tail = a.powf(1.0 - s) / (s - 1.0) / z;
            assert!((head.value() + tail - 1.0).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn exponential_family_form() {
        for s in [1.5, 2.0, 4.0, 12.0] {
            let param = ZetaParam::new(s).unwrap();
            let f = cumulant(Family::Zeta, s, &pol()).unwrap();
            for x in (1..=10_000u64).step_by(37) {
                let p = zeta_pmf(param, x, &pol()).unwrap();
                let e = (-s * (x as f64).ln() - f).exp();
                assert!(((p - e) / p).abs() < 1e-12, "s={s} x={x}");
            }
        }
    }

    #[test]
    fn cumulant_values() {
        let f2 = cumulant(Family::Zeta, 2.0, &pol()).unwrap();
        assert!((f2 - (PI * PI / 6.0).ln()).abs() < 1e-15);
        assert!((f2 - 0.49770).abs() < 1e-5);
        assert_eq!(cumulant(Family::Pareto, 2.0, &pol()).unwrap(), 0.0);
        let f30 = cumulant(Family::Zeta, 30.0, &pol()).unwrap();
        assert!(f30 > 0.0 && f30 < 1e-9);
        assert!(cumulant(Family::Zeta, 1.0, &pol()).is_err());
        assert!(cumulant(Family::Pareto, 0.5, &pol()).is_err());
    }

    #[test]
    fn cumulant_difference_matches_subtraction() {
        for fam in [Family::Zeta, Family::Generalized { k0: 3 }, Family::Pareto] {
            for (u, v) in [(2.0, 3.0), (4.0, 12.0), (1.5, 7.0)] {
                let (d, _) = cumulant_difference(fam, u, v, &pol()).unwrap();
                let naive = cumulant(fam, u, &pol()).unwrap() - cumulant(fam, v, &pol()).unwrap();
                assert!((d - naive).abs() < 1e-14, "{fam} {u} {v}");
            }
        }
    }

    #[test]
    fn moment_values() {
        let e = moment_from_natural(Family::Zeta, 4.0, &pol()).unwrap();
        // -ζ'(4)/ζ(4) at 50 digits; the hundred-term truncation gives -0.0636693869703.
        assert!((e.eta + 0.063669764955371126).abs() < 1e-15, "{}", e.eta);
        let p = moment_from_natural(Family::Pareto, 4.0, &pol()).unwrap();
        assert_eq!(p.eta, -1.0 / 3.0);
        assert!(moment_from_natural(Family::Zeta, 0.9, &pol()).is_err());
    }

    #[test]
    fn pareto_inverse_is_closed_form() {
        let t = natural_from_moment(Family::Pareto, MomentParam::new(-1.0 / 3.0), 1e-12, &pol()).unwrap();
        assert!((t - 4.0).abs() < 1e-15);
        for theta in [1.25, 2.0, 3.0, 5.0] {
            let e = moment_from_natural(Family::Pareto, theta, &pol()).unwrap();
            assert_eq!(natural_from_moment(Family::Pareto, e, 1e-12, &pol()).unwrap(), theta);
        }
    }

    #[test]
    fn zeta_inverse_recovers_theta() {
        let t = natural_from_moment(Family::Zeta, MomentParam::new(-0.063669764955371126), 1e-14, &pol()).unwrap();
        assert!((t - 4.0).abs() < 1e-8, "{t}");
        // The hundred-term moment value sits slightly higher.
        let t100 = natural_from_moment(Family::Zeta, MomentParam::new(-0.06366938697034288), 1e-14, &pol()).unwrap();
        assert!((t100 - 4.0).abs() < 1e-4);
        let target = -2f64.ln();
        let t = natural_from_moment(Family::Zeta, MomentParam::new(target), 1e-13, &pol()).unwrap();
        let back = moment_from_natural(Family::Zeta, t, &pol()).unwrap().eta;
        assert!((back - target).abs() <= 1e-13);
        for fam in [Family::Zeta, Family::Generalized { k0: 4 }] {
            for theta in [1.05, 1.5, 2.5, 6.0, 20.0] {
                let e = moment_from_natural(fam, theta, &pol()).unwrap();
                let t = natural_from_moment(fam, e, 1e-14, &pol()).unwrap();
                assert!(((t - theta) / theta).abs() < 1e-9, "{fam} {theta} -> {t}");
            }
        }
    }

    #[test]
    fn inverse_rejects_outside_moment_space() {
        let r = natural_from_moment(Family::Zeta, MomentParam::new(0.0), 1e-12, &pol());
        assert!(matches!(r, Err(Error::Domain(_))));
        let r = natural_from_moment(Family::Generalized { k0: 2 }, MomentParam::new(-0.5), 1e-12, &pol());
        assert!(matches!(r, Err(Error::Domain(_))));
        assert!(natural_from_moment(Family::Pareto, MomentParam::new(0.1), 1e-12, &pol()).is_err());
    }

    #[test]
    fn moment_map_is_increasing() {
        for fam in [Family::Zeta, Family::Generalized { k0: 5 }, Family::Pareto] {
            let mut prev = f64::NEG_INFINITY;
            for k in 0..200 {
                let theta = 1.02 + 0.1 * k as f64;
                let e = moment_from_natural(fam, theta, &pol()).unwrap().eta;
                assert!(e > prev, "{fam} at {theta}");
                prev = e;
            }
        }
    }

    #[test]
    fn entropy_literal_and_certified() {
        let p4 = ZetaParam::new(4.0).unwrap();
        let lit = zeta_entropy(p4, &SeriesPolicy::literal(100)).unwrap();
        assert!((lit.value - 0.3337829096182664).abs() < 1e-15, "{}", lit.value);
        let cert = zeta_entropy(p4, &pol()).unwrap();
        // 50-digit reference.
        assert!((cert.value - 0.33378893288882014).abs() < 1e-14, "{}", cert.value);
        assert!(cert.value - lit.value <= lit.truncation_bound);
        let brute: f64 = {
            let z = crate::special::zeta_real(4.0, &pol()).unwrap().value;
            let acc: crate::special::series::Accumulator = (1..=100_000u64)
                .rev()
                .map(|i| {
                    let w = (i as f64).powi(4) * z;
                    w.ln() / w
                })
                .collect();
            acc.value()
        };
        assert!((brute - cert.value).abs() < 1e-10);
    }

    #[test]
    fn entropy_nonnegative() {
        for s in [1.01, 1.5, 2.0, 4.0, 30.0, 100.0] {
            let h = zeta_entropy(ZetaParam::new(s).unwrap(), &pol()).unwrap();
            assert!(h.value >= 0.0, "s={s}");
        }
    }

    #[test]
    fn pareto_density_and_entropy() {
        let p2 = ParetoParam::new(2.0).unwrap();
        assert_eq!(pareto_pdf(p2, 2.0).unwrap(), 0.25);
        let p4 = ParetoParam::new(4.0).unwrap();
        assert!((pareto_pdf(p4, 1.0 + 1e-15).unwrap() - 3.0).abs() < 1e-13);
        assert!(pareto_pdf(p4, 1.0).is_err());
        assert_eq!(pareto_entropy(p2), 2.0);
        assert!((pareto_entropy(p4) - (4.0 / 3.0 - 3f64.ln())).abs() < 1e-16);
        assert!((pareto_entropy(p4) - 0.234721).abs() < 1e-6);
        for s in [2.0, 4.0, 12.0] {
            let p = ParetoParam::new(s).unwrap();
            let a = s - 1.0;
            let upper = 80.0 / a;
            // x = e^u.
            let mass = integrate(|u| a * (-a * u).exp(), 0.0, upper, 400);
            assert!((mass - 1.0).abs() < 1e-10, "s={s}");
            let h = integrate(|u| {
                let x = u.exp();
                let q = pareto_pdf(p, x).unwrap();
                -q * q.ln() * x
            }, 1e-300, upper, 400);
            assert!((h - pareto_entropy(p)).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn negentropy_identity() {
        for fam in [Family::Zeta, Family::Pareto, Family::Generalized { k0: 2 }] {
            for s in [2.0, 3.0, 4.0, 12.0] {
                let eta = moment_from_natural(fam, s, &pol()).unwrap();
                let fstar = conjugate_value(fam, eta, 1e-14, &pol()).unwrap();
                let h = family_entropy(fam, s, &pol()).unwrap().value;
                assert!((fstar + h).abs() < 1e-9, "{fam} s={s}: {fstar} vs {h}");
            }
        }
        let c = conjugate_value(Family::Pareto, MomentParam::new(-1.0), 1e-12, &pol()).unwrap();
        assert_eq!(c, -2.0);
        let c = conjugate_value(Family::Pareto, MomentParam::new(-1.0 / 3.0), 1e-12, &pol()).unwrap();
        assert!((c + pareto_entropy(ParetoParam::new(4.0).unwrap())).abs() < 1e-15);
    }

    #[test]
    fn generalized_with_unit_offset_is_zeta() {
        let g = Family::Generalized { k0: 1 };
        for s in [1.5, 2.0, 4.0] {
            assert_eq!(cumulant(g, s, &pol()).unwrap(), cumulant(Family::Zeta, s, &pol()).unwrap());
            assert_eq!(
                family_entropy(g, s, &pol()).unwrap().value,
                family_entropy(Family::Zeta, s, &pol()).unwrap().value
            );
            let gp = GeneralizedZetaParam::new(s, 1).unwrap();
            let zp = ZetaParam::new(s).unwrap();
            for x in [1, 2, 17] {
                assert_eq!(generalized_pmf(gp, x, &pol()).unwrap(), zeta_pmf(zp, x, &pol()).unwrap());
            }
        }
    }
}

//! Brute-force counterparts of the closed forms: literal pmf sums for the
//! zeta families and Gauss–Legendre quadrature for Pareto.
//!
//! Discrete sums add `terms` explicit terms and then the midpoint
//! Euler–Maclaurin tail `∫_a^∞ f + f'(a)/24` with `a` half a step past the
//! last term; the remainder is bounded by `|f''(a)|/24`. Normalizers are
//! summed the same way, never taken from the [`crate::special`] routines.

use crate::error::{check_shape, Error, Result};
use crate::family::Family;
use crate::quadrature::integrate_with_estimate;
use crate::special::series::Accumulator;
use crate::special::{SeriesMethod, SeriesValue};

/// Tail of `c x^{-s}` from `a`: estimate and remainder bound.
fn power_tail(c: f64, s: f64, a: f64) -> (f64, f64) {
    let integral = a.powf(1.0 - s) / (s - 1.0);
    let d1 = -s * a.powf(-s - 1.0);
    let d2 = s * (s + 1.0) * a.powf(-s - 2.0);
    (c * (integral + d1 / 24.0), (c * d2).abs() / 24.0)
}

/// Tail of `c x^{-s} ln x` from `a`.
fn log_power_tail(c: f64, s: f64, a: f64) -> (f64, f64) {
    let la = a.ln();
    let integral = a.powf(1.0 - s) * (la / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
    let d1 = a.powf(-s - 1.0) * (1.0 - s * la);
    let d2 = a.powf(-s - 2.0) * (s * (s + 1.0) * la - 2.0 * s - 1.0);
    (c * (integral + d1 / 24.0), (c * d2).abs() / 24.0)
}

/// `Σ_{x >= k0} x^{-s}` by explicit summation of `terms` terms plus tail.
pub fn brute_force_zeta(s: f64, k0: u64, terms: usize) -> Result<SeriesValue> {
    check_shape("s", s)?;
    check_terms(terms)?;
    let last = k0 + terms as u64 - 1;
    let head: Accumulator = (k0..=last).rev().map(|x| (x as f64).powf(-s)).collect();
    let (tail, bound) = power_tail(1.0, s, last as f64 + 0.5);
    let mut acc = head;
    acc.add(tail);
    Ok(SeriesValue { value: acc.value(), truncation_bound: bound, terms_used: terms, method: SeriesMethod::Direct })
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        return Err(Error::domain("terms must be at least 1"));
    }
    Ok(())
}

/// `Σ_x p1(x)^α p2(x)^{1-α}`, or the matching integral for Pareto where
/// `terms` is the number of quadrature panels. Orders above 1 are allowed
/// while `α s1 + (1 - α) s2 > 1`.
pub fn brute_force_bhattacharyya(family: Family, s1: f64, s2: f64, alpha: f64, terms: usize) -> Result<SeriesValue> {
    family.validate()?;
    check_shape("s1", s1)?;
    check_shape("s2", s2)?;
    check_terms(terms)?;
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::domain("alpha must be positive and differ from 1"));
    }
    let m = alpha * s1 + (1.0 - alpha) * s2;
    if !(m > 1.0) {
        return Err(Error::domain("interpolated parameter alpha*s1 + (1-alpha)*s2 must exceed 1"));
    }
    let Some(k0) = family.offset() else {
        // x = e^u: (s1-1)^α (s2-1)^{1-α} e^{-(m-1)u}.
        let c = (s1 - 1.0).powf(alpha) * (s2 - 1.0).powf(1.0 - alpha);
        let rate = m - 1.0;
        let upper = 45.0 / rate;
        let (v, err) = integrate_with_estimate(|u| c * (-rate * u).exp(), 0.0, upper, terms);
        let tail = c * (-rate * upper).exp() / rate;
        return Ok(SeriesValue { value: v, truncation_bound: err + tail, terms_used: terms, method: SeriesMethod::Quadrature });
    };
    let z1 = brute_force_zeta(s1, k0, terms)?;
    let z2 = brute_force_zeta(s2, k0, terms)?;
    let last = k0 + terms as u64 - 1;
    let c = z1.value.powf(-alpha) * z2.value.powf(alpha - 1.0);
    let head: Accumulator = (k0..=last)
        .rev()
        .map(|x| {
            let lx = (x as f64).ln();
            let p1 = (-s1 * lx).exp() / z1.value;
            let p2 = (-s2 * lx).exp() / z2.value;
            p1.powf(alpha) * p2.powf(1.0 - alpha)
        })
        .collect();
    let (tail, bound) = power_tail(c, m, last as f64 + 0.5);
    let mut acc = head;
    acc.add(tail);
    let value = acc.value();
    // Sensitivity of I to the two normalizers.
    let norm = value * (alpha * z1.truncation_bound / z1.value + (1.0 - alpha) * z2.truncation_bound / z2.value);
    Ok(SeriesValue { value, truncation_bound: bound + norm, terms_used: terms, method: SeriesMethod::Direct })
}

/// `Σ_x p1(x) ln(p1(x)/p2(x))`, or the matching integral for Pareto.
pub fn brute_force_kl(family: Family, s1: f64, s2: f64, terms: usize) -> Result<SeriesValue> {
    family.validate()?;
    check_shape("s1", s1)?;
    check_shape("s2", s2)?;
    check_terms(terms)?;
    let Some(k0) = family.offset() else {
        // x = e^u: (s1-1) e^{-(s1-1)u} (ln((s1-1)/(s2-1)) + (s2-s1) u).
        let a = s1 - 1.0;
        let c0 = (a / (s2 - 1.0)).ln();
        let d = s2 - s1;
        let upper = 45.0 / a;
        let f = |u: f64| a * (-a * u).exp() * (c0 + d * u);
        let (v, err) = integrate_with_estimate(f, 0.0, upper, terms);
        let tail = (-a * upper).exp() * (c0.abs() + d.abs() * (upper + 1.0 / a));
        return Ok(SeriesValue { value: v, truncation_bound: err + tail, terms_used: terms, method: SeriesMethod::Quadrature });
    };
    let z1 = brute_force_zeta(s1, k0, terms)?;
    let z2 = brute_force_zeta(s2, k0, terms)?;
    let last = k0 + terms as u64 - 1;
    let ratio = (z2.value / z1.value).ln();
    let d = s2 - s1;
    let head: Accumulator = (k0..=last)
        .rev()
        .map(|x| {
            let lx = (x as f64).ln();
            let p1 = (-s1 * lx).exp() / z1.value;
            let p2 = (-s2 * lx).exp() / z2.value;
            if p2 > 0.0 {
                p1 * (p1 / p2).ln()
            } else {
                p1 * (d * lx + ratio)
            }
        })
        .collect();
    let a = last as f64 + 0.5;
    let (t1, b1) = log_power_tail(d / z1.value, s1, a);
    let (t2, b2) = power_tail(ratio / z1.value, s1, a);
    let mut acc = head;
    acc.add(t1);
    acc.add(t2);
    // Normalizer errors enter through ln(ζ2/ζ1) and through the 1/ζ1
    // weight on the log-moment part, which is `value - ln(ζ2/ζ1)`.
    let norm = z1.truncation_bound / z1.value + z2.truncation_bound / z2.value;
    let weight = (acc.value() - ratio).abs() * z1.truncation_bound / z1.value;
    Ok(SeriesValue { value: acc.value(), truncation_bound: b1 + b2 + norm + weight, terms_used: terms, method: SeriesMethod::Direct })
}

/// The α-divergence `(1 - I)/(α(1 - α))` with `I` from
/// [`brute_force_bhattacharyya`].
pub fn brute_force_alpha(family: Family, s1: f64, s2: f64, alpha: f64, terms: usize) -> Result<SeriesValue> {
    let i = brute_force_bhattacharyya(family, s1, s2, alpha, terms)?;
    let scale = 1.0 / (alpha * (1.0 - alpha));
    Ok(SeriesValue { value: scale * (1.0 - i.value), truncation_bound: scale * i.truncation_bound, ..i })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_sums() {
        let z = brute_force_zeta(2.0, 1, 20).unwrap();
        assert!((z.value - PI * PI / 6.0).abs() <= z.truncation_bound + 1e-15);
        assert!(z.truncation_bound < 1e-5);
        let z = brute_force_zeta(3.0, 1, 100_000).unwrap();
        assert!((z.value - 1.2020569031595942854).abs() < 1e-15);
        let z = brute_force_zeta(2.0, 2, 1000).unwrap();
        assert!((z.value - (PI * PI / 6.0 - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn twenty_term_bhattacharyya() {
        let i = brute_force_bhattacharyya(Family::Zeta, 4.0, 12.0, 0.5, 20).unwrap();
        let exact = 3.0 * (715.0f64 / 6910.0).sqrt();
        // Twenty terms with the midpoint tail already give ten digits.
        assert!((i.value - exact).abs() < 1e-10, "{:e}", i.value - exact);
        assert!((i.value - exact).abs() <= i.truncation_bound);
    }

    #[test]
    fn identical_parameters() {
        let i = brute_force_bhattacharyya(Family::Zeta, 3.0, 3.0, 0.3, 1000).unwrap();
        assert!((i.value - 1.0).abs() < 1e-14);
        let k = brute_force_kl(Family::Zeta, 3.0, 3.0, 1000).unwrap();
        assert!(k.value.abs() < 1e-15);
        let k = brute_force_kl(Family::Pareto, 3.0, 3.0, 64).unwrap();
        assert_eq!(k.value, 0.0);
    }

    #[test]
    fn pareto_quadrature() {
        let i = brute_force_bhattacharyya(Family::Pareto, 4.0, 12.0, 0.5, 64).unwrap();
        assert!((i.value - 33f64.sqrt() / 7.0).abs() < 1e-14, "{}", i.value);
        let k = brute_force_kl(Family::Pareto, 4.0, 12.0, 64).unwrap();
        assert!((k.value - 1.367383682536406).abs() < 1e-14, "{}", k.value);
    }

    #[test]
    fn zeta_kl() {
        let k = brute_force_kl(Family::Zeta, 4.0, 12.0, 100_000).unwrap();
        assert!((k.value - 0.43049430285461221).abs() < 1e-14, "{}", k.value);
    }
}

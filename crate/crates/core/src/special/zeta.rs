//! Riemann and Hurwitz zeta functions on the real axis `s > 1`, the
//! log-weighted series `sum ln(i) i^{-s} = -ζ'(s)`, and accurate differences
//! `ζ(u) - ζ(v)` for nearby arguments.
//!
//! Every routine sums a block of leading terms directly and closes the tail
//! with the Euler–Maclaurin formula. The summands and all their even
//! derivatives keep a fixed sign beyond the cutoff, so the remainder is
//! bounded by the first omitted correction term, which is what
//! `truncation_bound` reports.

use super::bernoulli::euler_maclaurin_coefficients;
use super::series::{Accumulator, SeriesMethod, SeriesPolicy, SeriesValue};
use crate::error::{check_shape, Error, Result};

/// Above this shape plain summation converges in a handful of terms.
const DIRECT_THRESHOLD: f64 = 60.0;

pub fn zeta_real(s: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    hurwitz_zeta(s, 1, policy)
}

/// `ζ(s, k0) = sum_{i >= 0} (i + k0)^{-s}`.
pub fn hurwitz_zeta(s: f64, k0: u64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    check_shape("s", s)?;
    check_offset(k0)?;
    policy.validate()?;
    if s > DIRECT_THRESHOLD {
        return Ok(direct_sum(s, k0, policy, |_| 1.0));
    }
    Ok(adaptive(policy, k0, |n| power_sum_em(s, k0, n, policy.euler_maclaurin_order)))
}

/// `L(s) = sum_{i >= 1} ln(i) / i^s`, which equals `-ζ'(s)`.
///
/// Under a literal policy the sum stops after exactly that many terms and
/// the bound covers the omitted tail.
pub fn log_weighted_zeta_series(s: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    hurwitz_log_weighted_series(s, 1, policy)
}

/// `sum_{i >= k0} ln(i) / i^s`.
pub fn hurwitz_log_weighted_series(s: f64, k0: u64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    check_shape("s", s)?;
    check_offset(k0)?;
    policy.validate()?;
    if let Some(n) = policy.literal_terms {
        return Ok(literal_log_sum(s, k0, n));
    }
    if s > DIRECT_THRESHOLD {
        return Ok(direct_sum(s, k0, policy, |i| (i as f64).ln()));
    }
    let order = policy.euler_maclaurin_order;
    // The derivative signs settle once ln x exceeds sum_{j < 2M+4} 1/(s+j).
    let h: f64 = (0..2 * order + 4).map(|j| 1.0 / (s + j as f64)).sum();
    let start = h.exp().ceil() as u64;
    let floor = start.saturating_sub(k0) as usize;
    let policy = SeriesPolicy {
        euler_maclaurin_cutoff: policy.euler_maclaurin_cutoff.max(floor),
        max_terms: policy.max_terms.max(floor),
        ..*policy
    };
    Ok(adaptive(&policy, k0, |n| log_sum_em(s, k0, n, order)))
}

/// `ζ(u, k0) - ζ(v, k0)`, accurate to a few ulps of the difference itself
/// even when `u` and `v` agree to many digits.
pub fn hurwitz_zeta_difference(u: f64, v: f64, k0: u64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    check_shape("s", u)?;
    check_shape("s", v)?;
    check_offset(k0)?;
    policy.validate()?;
    if u == v {
        return Ok(SeriesValue {
            value: 0.0,
            truncation_bound: 0.0,
            terms_used: 0,
            method: SeriesMethod::Direct,
        });
    }
    if u.min(v) > DIRECT_THRESHOLD {
        return Ok(direct_difference(u, v, k0, policy));
    }
    Ok(adaptive(policy, k0, |n| difference_em(u, v, k0, n, policy.euler_maclaurin_order)))
}

pub(crate) fn check_offset(k0: u64) -> Result<()> {
    if k0 >= 1 {
        Ok(())
    } else {
        Err(Error::domain("k0 must be at least 1"))
    }
}

/// Doubles the direct block until the certificate meets the target or the
/// term budget runs out.
fn adaptive(policy: &SeriesPolicy, _k0: u64, eval: impl Fn(usize) -> SeriesValue) -> SeriesValue {
    let mut n = policy.euler_maclaurin_cutoff;
    loop {
        let v = eval(n);
        let ok = v.truncation_bound <= policy.target_rel_error * v.value.abs();
        if ok || n >= policy.max_terms {
            return v;
        }
        n = (2 * n).min(policy.max_terms);
    }
}

fn power_sum_em(s: f64, k0: u64, n: usize, order: usize) -> SeriesValue {
    let head: Accumulator = (0..n as u64).rev().map(|i| ((k0 + i) as f64).powf(-s)).collect();
    let x = (k0 + n as u64) as f64;
    let xs = x.powf(-s);
    let mut acc = head;
    acc.add(x * xs / (s - 1.0));
    acc.add(0.5 * xs);
    let c = euler_maclaurin_coefficients();
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s; // (s)_{2k-1}
    let mut xpow = xs / x; // x^{-s-2k+1}
    let mut next = 0.0;
    for k in 1..=order + 1 {
        let term = c[k] * rising * xpow;
        if k <= order {
            acc.add(term);
        } else {
            next = term;
        }
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        xpow *= inv_x2;
    }
    SeriesValue {
        value: acc.value(),
        truncation_bound: next.abs(),
        terms_used: n + order,
        method: SeriesMethod::EulerMaclaurin,
    }
}

fn log_sum_em(s: f64, k0: u64, n: usize, order: usize) -> SeriesValue {
    let head: Accumulator = (0..n as u64)
        .rev()
        .map(|i| {
            let x = (k0 + i) as f64;
            x.ln() * x.powf(-s)
        })
        .collect();
    let x = (k0 + n as u64) as f64;
    let lx = x.ln();
    let xs = x.powf(-s);
    let sm1 = s - 1.0;
    let mut acc = head;
    acc.add(x * xs * (lx / sm1 + 1.0 / (sm1 * sm1)));
    acc.add(0.5 * lx * xs);
    let c = euler_maclaurin_coefficients();
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s;
    let mut harmonic = 1.0 / s; // sum_{j < 2k-1} 1/(s+j)
    let mut xpow = xs / x;
    let mut next = 0.0;
    for k in 1..=order + 1 {
        let term = c[k] * rising * xpow * (lx - harmonic);
        if k <= order {
            acc.add(term);
        } else {
            next = term;
        }
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        rising *= a * b;
        harmonic += 1.0 / a + 1.0 / b;
        xpow *= inv_x2;
    }
    SeriesValue {
        value: acc.value(),
        truncation_bound: next.abs(),
        terms_used: n + order,
        method: SeriesMethod::EulerMaclaurin,
    }
}

fn difference_em(u: f64, v: f64, k0: u64, n: usize, order: usize) -> SeriesValue {
    let d = u - v;
    let head: Accumulator = (0..n as u64)
        .rev()
        .map(|i| {
            let x = (k0 + i) as f64;
            -x.powf(-u) * (d * x.ln()).exp_m1()
        })
        .collect();
    let x = (k0 + n as u64) as f64;
    let lx = x.ln();
    let xu = x.powf(-u);
    let e = (d * lx).exp_m1();
    let mut acc = head;
    acc.add(x * xu * (-d - (u - 1.0) * e) / ((u - 1.0) * (v - 1.0)));
    acc.add(-0.5 * xu * e);
    let c = euler_maclaurin_coefficients();
    let mut bound = 0.0;
    for s in [u, v] {
        let sign = if s == u { 1.0 } else { -1.0 };
        let xs = x.powf(-s);
        let inv_x2 = 1.0 / (x * x);
        let mut rising = s;
        let mut xpow = xs / x;
        for k in 1..=order + 1 {
            let term = c[k] * rising * xpow;
            if k <= order {
                acc.add(sign * term);
            } else {
                bound += term.abs();
            }
            rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
            xpow *= inv_x2;
        }
    }
    SeriesValue {
        value: acc.value(),
        truncation_bound: bound,
        terms_used: n + order,
        method: SeriesMethod::EulerMaclaurin,
    }
}

/// Plain summation for large shapes; the tail after index `m` is at most
/// `∫_m^∞ w(x) x^{-s} dx`, evaluated for `w = 1` or `w = ln`.
fn direct_sum(s: f64, k0: u64, policy: &SeriesPolicy, weight: impl Fn(u64) -> f64) -> SeriesValue {
    let log_weight = weight(3) != 1.0;
    let mut acc = Accumulator::default();
    let mut i = k0;
    let mut count = 0usize;
    loop {
        let x = i as f64;
        acc.add(weight(i) * x.powf(-s));
        count += 1;
        let tail = if log_weight {
            // ln(x) x^{-s} is decreasing once x > e^{1/s}, which holds for x >= 2.
            let m = x.max(2.0);
            m.powf(1.0 - s) * (m.ln() / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)))
        } else {
            x.powf(1.0 - s) / (s - 1.0)
        };
        let value = acc.value();
        if tail <= policy.target_rel_error * value.abs() || count >= policy.max_terms {
            return SeriesValue {
                value,
                truncation_bound: tail,
                terms_used: count,
                method: SeriesMethod::Direct,
            };
        }
        i += 1;
    }
}

fn direct_difference(u: f64, v: f64, k0: u64, policy: &SeriesPolicy) -> SeriesValue {
    let d = u - v;
    let lo = u.min(v);
    let mut acc = Accumulator::default();
    let mut i = k0;
    let mut count = 0usize;
    loop {
        let x = i as f64;
        acc.add(-x.powf(-u) * (d * x.ln()).exp_m1());
        count += 1;
        let tail = 2.0 * x.powf(1.0 - lo) / (lo - 1.0);
        let value = acc.value();
        if tail <= policy.target_rel_error * value.abs() || count >= policy.max_terms {
            return SeriesValue {
                value,
                truncation_bound: tail,
                terms_used: count,
                method: SeriesMethod::Direct,
            };
        }
        i += 1;
    }
}

fn literal_log_sum(s: f64, k0: u64, n: usize) -> SeriesValue {
    let mut sum = 0.0;
    for i in k0..k0 + n as u64 {
        sum += (i as f64).ln() / (i as f64).powf(s);
    }
    let last = (k0 + n as u64 - 1) as f64;
    SeriesValue {
        value: sum,
        truncation_bound: log_tail_bound(s, last),
        terms_used: n,
        method: SeriesMethod::Direct,
    }
}

/// Upper bound on `sum_{i > m} ln(i) i^{-s}`.
pub(crate) fn log_tail_bound(s: f64, m: f64) -> f64 {
    let sm1 = s - 1.0;
    let integral = |a: f64| a.powf(1.0 - s) * (a.ln() / sm1 + 1.0 / (sm1 * sm1));
    if m >= 3.0 {
        integral(m)
    } else {
        // Not yet decreasing: pad by the maximum of ln(x) x^{-s}.
        integral(m.max(1.0)) + 1.0 / (s * std::f64::consts::E)
    }
}

/// Upper bound on `sum_{i > m} i^{-s}`.
pub(crate) fn power_tail_bound(s: f64, m: f64) -> f64 {
    m.powf(1.0 - s) / (s - 1.0)
}

//! The von Mangoldt function, the Dirichlet series
//! `sum Λ(i) / i^s = -ζ'(s)/ζ(s)`, and partial Euler products.

use super::series::{Accumulator, SeriesMethod, SeriesPolicy, SeriesValue};
use super::zeta::{log_tail_bound, power_tail_bound};
use crate::error::{check_shape, Error, Result};

/// `ln p` when `i = p^k` for a prime `p` and `k >= 1`, else 0.
pub fn von_mangoldt(i: u64) -> Result<f64> {
    if i == 0 {
        return Err(Error::domain("von Mangoldt function is defined for i >= 1"));
    }
    match smallest_prime_factor(i) {
        None => Ok(0.0),
        Some(p) => {
            let mut rest = i;
            while rest % p == 0 {
                rest /= p;
            }
            Ok(if rest == 1 { (p as f64).ln() } else { 0.0 })
        }
    }
}

fn smallest_prime_factor(i: u64) -> Option<u64> {
    if i < 2 {
        return None;
    }
    if i % 2 == 0 {
        return Some(2);
    }
    let mut d = 3u64;
    while d <= i / d {
        if i % d == 0 {
            return Some(d);
        }
        d += 2;
    }
    Some(i)
}

/// `ζ'(s)/ζ(s) = -sum_{i >= 1} Λ(i) / i^s`. Always negative.
pub fn zeta_log_derivative(s: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    let g = mangoldt_series(s, policy)?;
    Ok(SeriesValue { value: -g.value, ..g })
}

/// `sum_{i >= 1} Λ(i) / i^s`.
///
/// Prime powers up to a cutoff `N` are summed directly. The remaining tail is
/// estimated by partial summation against `ψ(x) ≈ x`, using the exact `ψ(N)`
/// from the sieve; the bound rests on `|ψ(x) - x| <= x / ln x` for `x >= 41`.
/// Under a literal policy exactly that many terms are summed, in index order.
pub fn mangoldt_series(s: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    check_shape("s", s)?;
    policy.validate()?;
    if let Some(n) = policy.literal_terms {
        return Ok(literal_mangoldt_sum(s, n));
    }
    let n = choose_cutoff(s, policy);
    Ok(mangoldt_series_many(&[s], n)?.remove(0))
}

/// Certified sums for several shapes sharing one sieve up to `cutoff`.
pub fn mangoldt_series_many(shapes: &[f64], cutoff: u64) -> Result<Vec<SeriesValue>> {
    for &s in shapes {
        check_shape("s", s)?;
    }
    if cutoff < 2 {
        return Err(Error::domain("mangoldt cutoff must be at least 2"));
    }
    let mut heads = vec![Accumulator::default(); shapes.len()];
    let mut psi = Accumulator::default();
    let mut terms = 0usize;
    for_each_prime(cutoff, |p| {
        let lp = (p as f64).ln();
        let mut pk = p;
        loop {
            psi.add(lp);
            terms += 1;
            let lpk = (pk as f64).ln();
            for (acc, &s) in heads.iter_mut().zip(shapes) {
                acc.add(lp * (-s * lpk).exp());
            }
            match pk.checked_mul(p) {
                Some(next) if next <= cutoff => pk = next,
                _ => break,
            }
        }
    });
    let n = cutoff as f64;
    let psi_n = psi.value();
    Ok(shapes
        .iter()
        .zip(heads)
        .map(|(&s, head)| {
            let (tail, bound) = if cutoff >= 41 {
                let est = s * n.powf(1.0 - s) / (s - 1.0) - psi_n * n.powf(-s);
                let bound = s * n.powf(1.0 - s) / ((s - 1.0) * n.ln());
                (est, bound)
            } else {
                // 0 <= tail <= sum_{i > N} ln(i) i^{-s}.
                let b = 0.5 * log_tail_bound(s, n);
                (b, b)
            };
            let mut acc = head;
            acc.add(tail);
            SeriesValue {
                value: acc.value(),
                truncation_bound: bound,
                terms_used: terms,
                method: SeriesMethod::Mangoldt,
            }
        })
        .collect())
}

/// Smallest cutoff whose tail bound meets the target, capped by `max_terms`.
fn choose_cutoff(s: f64, policy: &SeriesPolicy) -> u64 {
    // Lower bound on the sum: its first nonzero term.
    let floor = std::f64::consts::LN_2 * 2f64.powf(-s);
    let cap = policy.max_terms.max(2) as u64;
    let mut n = (policy.euler_maclaurin_cutoff as u64).max(64).min(cap);
    loop {
        let nf = n as f64;
        let bound = s * nf.powf(1.0 - s) / ((s - 1.0) * nf.ln());
        if bound <= policy.target_rel_error * floor || n >= cap {
            return n;
        }
        n = (2 * n).min(cap);
    }
}

/// `sum_{i <= n} Λ(i) / i^s` in index order, with the omitted tail bounded
/// through `Λ(i) <= ln i`.
pub fn literal_mangoldt_sum(s: f64, n: usize) -> SeriesValue {
    let table = mangoldt_table(n);
    let mut sum = 0.0;
    for (i, &lam) in table.iter().enumerate().skip(1) {
        if lam != 0.0 {
            sum += lam / (i as f64).powf(s);
        }
    }
    SeriesValue {
        value: sum,
        truncation_bound: log_tail_bound(s, n as f64),
        terms_used: n,
        method: SeriesMethod::Mangoldt,
    }
}

/// `Λ(0..=n)` (index 0 unused) from a smallest-prime-factor sieve.
fn mangoldt_table(n: usize) -> Vec<f64> {
    let mut spf = vec![0u32; n + 1];
    let mut table = vec![0.0; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        let p = spf[i] as usize;
        let mut rest = i;
        while rest % p == 0 {
            rest /= p;
        }
        if rest == 1 {
            table[i] = (p as f64).ln();
        }
    }
    table
}

/// Calls `visit` on every prime `p <= limit` in increasing order using a
/// segmented sieve of Eratosthenes.
pub(crate) fn for_each_prime(limit: u64, mut visit: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root);
    const SEGMENT: u64 = 1 << 18;
    let mut marks = vec![true; SEGMENT as usize];
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = (lo + p - 1) / p * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                marks[(j - lo) as usize] = false;
                j += p;
            }
        }
        for (k, &m) in marks[..len].iter().enumerate() {
            if m {
                visit(lo + k as u64);
            }
        }
        lo = hi + 1;
    }
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut is = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if is[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
    }
    out
}

/// `prod_{p <= prime_bound} (1 - p^{-s})^{-1}`.
///
/// Only a cross-check for [`super::zeta_real`]: it converges slowly. The
/// reported bound follows from `-ln(1 - x) <= x / (1 - x)` summed over the
/// omitted primes and is loose.
pub fn euler_product_zeta(s: f64, prime_bound: u64) -> Result<SeriesValue> {
    check_shape("s", s)?;
    if prime_bound < 2 {
        return Err(Error::domain("prime_bound must be at least 2"));
    }
    let mut log = Accumulator::default();
    let mut count = 0usize;
    for_each_prime(prime_bound, |p| {
        log.add(-(-(p as f64).powf(-s)).ln_1p());
        count += 1;
    });
    let value = log.value().exp();
    let pb = prime_bound as f64;
    let omitted = power_tail_bound(s, pb) / (1.0 - pb.powf(-s));
    Ok(SeriesValue {
        value,
        truncation_bound: value * omitted.exp_m1(),
        terms_used: count,
        method: SeriesMethod::EulerProduct,
    })
}

//! Bernoulli numbers and the exact values of ζ at even integers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::exact::{ExactRational, PiPowerValue};
use crate::error::{Error, Result};

/// Largest index [`bernoulli_numbers`] will compute without an explicit cap.
pub const DEFAULT_BERNOULLI_CAP: usize = 512;

/// `B_0 ..= B_n_max` with the `B_1 = -1/2` convention, from the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n_max: usize) -> Result<Vec<ExactRational>> {
    bernoulli_numbers_capped(n_max, DEFAULT_BERNOULLI_CAP)
}

pub fn bernoulli_numbers_capped(n_max: usize, cap: usize) -> Result<Vec<ExactRational>> {
    if n_max > cap {
        return Err(Error::ResourceLimit { requested: n_max, cap });
    }
    let mut b: Vec<ExactRational> = Vec::with_capacity(n_max + 1);
    b.push(ExactRational::one());
    // Row m+1 of Pascal's triangle, updated in place.
    let mut binom: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for m in 1..=n_max {
        next_pascal_row(&mut binom);
        if m > 1 && m % 2 == 1 {
            b.push(ExactRational::zero());
            continue;
        }
        let mut acc = ExactRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc = acc + &ExactRational::from_integer(binom[j].clone()) * bj;
        }
        let bm = -(acc / ExactRational::from_integer(m as i64 + 1));
        b.push(bm);
    }
    Ok(b)
}

fn next_pascal_row(row: &mut Vec<BigInt>) {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigInt::one());
    for w in row.windows(2) {
        next.push(&w[0] + &w[1]);
    }
    next.push(BigInt::one());
    *row = next;
}

/// `ζ(2n) = (-1)^{n+1} B_{2n} (2π)^{2n} / (2 (2n)!)` as an exact multiple
/// of `π^{2n}`.
pub fn zeta_even_exact(two_n: u32) -> Result<PiPowerValue> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(Error::Domain(format!(
            "exact zeta needs an even integer >= 2, got {two_n}"
        )));
    }
    let b = bernoulli_numbers(two_n as usize)?;
    let b2n = &b[two_n as usize];
    let mut factorial = BigInt::one();
    for k in 2..=two_n {
        factorial *= k;
    }
    let pow2 = BigInt::one() << two_n as usize;
    let scale = ExactRational::new(pow2, factorial * 2);
    let mut coeff = b2n * &scale;
    if (two_n / 2) % 2 == 0 {
        coeff = -coeff;
    }
    Ok(PiPowerValue::new(coeff, two_n))
}

/// `B_{2k} / (2k)!` for `k = 0..`, as doubles, for the Euler–Maclaurin
/// corrections. Computed once.
pub(crate) fn euler_maclaurin_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 2 * MAX_EM_ORDER + 2;
        let b = bernoulli_numbers(n).expect("within cap");
        let mut factorial = BigInt::one();
        let mut out = Vec::with_capacity(MAX_EM_ORDER + 2);
        for (i, bi) in b.iter().enumerate() {
            if i > 1 {
                factorial *= i;
            }
            if i % 2 == 0 {
                let c = bi / &ExactRational::from_integer(factorial.clone());
                out.push(c.to_f64());
            }
        }
        out
    })
}

/// Highest Euler–Maclaurin order the coefficient table supports.
pub const MAX_EM_ORDER: usize = 60;

//! Exact rational arithmetic and rational multiples of powers of π.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An arbitrary-precision rational number, always stored in lowest terms
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        let den = denominator.into();
        assert!(!den.is_zero(), "zero denominator");
        ExactRational(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    /// Exact conversion of a finite double (every finite double is a dyadic
    /// rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(ExactRational)
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest double. Large numerators and denominators are scaled so the
    /// conversion does not overflow when the quotient itself is representable.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        let (m, e) = log2_parts(self);
        m * 2f64.powi(e)
    }

    /// Natural logarithm of a positive rational, accurate even when the value
    /// lies far outside the double range.
    pub fn ln(&self) -> f64 {
        assert!(self.0.is_positive(), "logarithm of a non-positive rational");
        ln_big(self.0.numer()) - ln_big(self.0.denom())
    }

}

fn log2_parts(r: &ExactRational) -> (f64, i32) {
    let nb = r.0.numer().bits() as i64;
    let db = r.0.denom().bits() as i64;
    let shift = nb - db;
    // Bring the quotient near 1 before converting.
    let scaled = if shift >= 0 {
        BigRational::new(r.0.numer().clone(), r.0.denom().clone() << shift as usize)
    } else {
        BigRational::new(r.0.numer().clone() << (-shift) as usize, r.0.denom().clone())
    };
    (scaled.to_f64().unwrap_or(f64::NAN), shift as i32)
}

pub(crate) fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in a double").abs().ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift as usize).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                ExactRational((self.0).$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$m(&rhs.0))
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// The exact value `coefficient · π^pi_exponent`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiPowerValue {
    pub coefficient: ExactRational,
    pub pi_exponent: u32,
}

impl PiPowerValue {
    pub fn new(coefficient: ExactRational, pi_exponent: u32) -> Self {
        PiPowerValue { coefficient, pi_exponent }
    }

    pub fn rational(coefficient: ExactRational) -> Self {
        PiPowerValue { coefficient, pi_exponent: 0 }
    }

    /// Returns `None` when the exponents would go negative.
    pub fn checked_div(&self, rhs: &PiPowerValue) -> Option<PiPowerValue> {
        if rhs.coefficient.is_zero() {
            return None;
        }
        let exp = self.pi_exponent.checked_sub(rhs.pi_exponent)?;
        Some(PiPowerValue::new(&self.coefficient / &rhs.coefficient, exp))
    }

    pub fn to_f64(&self) -> f64 {
        if self.coefficient.is_zero() {
            return 0.0;
        }
        let sign = if self.coefficient.is_negative() { -1.0 } else { 1.0 };
        sign * self.ln_abs().exp()
    }

    /// `ln |value|`, usable when the value itself overflows a double.
    pub fn ln_abs(&self) -> f64 {
        self.coefficient.abs().ln() + self.pi_exponent as f64 * std::f64::consts::PI.ln()
    }
}

impl Mul for &PiPowerValue {
    type Output = PiPowerValue;
    fn mul(self, rhs: &PiPowerValue) -> PiPowerValue {
        PiPowerValue::new(&self.coefficient * &rhs.coefficient, self.pi_exponent + rhs.pi_exponent)
    }
}

impl fmt::Display for PiPowerValue {
    /// Renders as `num*pi^k/den`, dropping unit factors: `pi^2/6`,
    /// `691*pi^12/638512875`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.coefficient.numerator();
        let den = self.coefficient.denominator();
        if self.pi_exponent == 0 {
            return write!(f, "{}", self.coefficient);
        }
        let pi = if self.pi_exponent == 1 {
            "pi".to_string()
        } else {
            format!("pi^{}", self.pi_exponent)
        };
        let head = if num.is_one() {
            pi
        } else if num.sign() == Sign::Minus && (-num).is_one() {
            format!("-{pi}")
        } else {
            format!("{num}*{pi}")
        };
        if den.is_one() {
            write!(f, "{head}")
        } else {
            write!(f, "{head}/{den}")
        }
    }
}

/// Splits `n = k^q · rest` with `k` as large as trial division by primes
/// below `limit` finds.
pub(crate) fn extract_power(n: &BigInt, q: u32, limit: u64) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut outside = BigInt::one();
    if q <= 1 {
        return (outside, rest);
    }
    let mut p = 2u64;
    while p < limit && rest > BigInt::one() {
        let bp = BigInt::from(p);
        let mut count = 0u32;
        loop {
            let (quot, rem) = rest.div_rem(&bp);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            count += 1;
        }
        let k = count / q;
        if k > 0 {
            outside *= num_traits::pow(bp.clone(), k as usize);
            rest *= num_traits::pow(bp, (count % q) as usize);
        } else if count > 0 {
            rest *= num_traits::pow(bp, count as usize);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, rest)
}

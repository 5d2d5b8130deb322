//! Exact integer and rational arithmetic.
//!
//! Every quantity that influences a decision (membership, comparisons of
//! distances, loop bounds) is computed here without floating point.

mod hnf;
mod kernel;
mod matrix;

pub use hnf::{hnf, hnf_generators};
pub use kernel::{is_prime, kernel_mod_p, mod_inverse};
pub use matrix::{IntMatrix, RationalMatrix};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;
/// Arbitrary-precision integer.
pub type Integer = BigInt;

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"num/den"` or a plain integer. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not an exact rational: {s:?}"));
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"num/den"`, or the bare integer when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn floor_int(r: &Rational) -> Integer {
    r.floor().to_integer()
}

pub fn ceil_int(r: &Rational) -> Integer {
    r.ceil().to_integer()
}

/// Nearest integer, ties rounded up: `floor(r + 1/2)`.
pub fn round_int(r: &Rational) -> Integer {
    floor_int(&(r + rat(1, 2)))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `floor(sqrt(q))` for `q >= 0`.
pub fn floor_sqrt(q: &Rational) -> Integer {
    debug_assert!(!q.is_negative());
    floor_int(q).sqrt()
}

/// The exact square root of `q` when it is a rational square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Rational bracket `lo <= sqrt(q) <= hi` with `hi - lo <= 2^-bits / den(q)`.
/// Collapses to the exact root when `q` is a rational square.
pub fn sqrt_bracket(q: &Rational, bits: u32) -> (Rational, Rational) {
    if let Some(r) = exact_sqrt(q) {
        return (r.clone(), r);
    }
    let scale = BigInt::one() << bits;
    // sqrt(n/d) = sqrt(n d) / d
    let radicand = q.numer() * q.denom() * &scale * &scale;
    let s = radicand.sqrt();
    let den = q.denom() * &scale;
    let lo = Rational::new(s.clone(), den.clone());
    let hi = Rational::new(s + 1, den);
    (lo, hi)
}

/// A rational upper bound on `sqrt(q)` with relative slack below `2^-bits`.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    sqrt_bracket_relative(q, bits).1
}

/// A rational lower bound on `sqrt(q)`; strictly positive whenever `q > 0`.
pub fn sqrt_lower(q: &Rational, bits: u32) -> Rational {
    sqrt_bracket_relative(q, bits).0
}

/// Bracket whose width is at most `2^-bits * lo` (or exact).
pub fn sqrt_bracket_relative(q: &Rational, bits: u32) -> (Rational, Rational) {
    if q.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let mut k = bits;
    loop {
        let (lo, hi) = sqrt_bracket(q, k);
        if lo == hi {
            return (lo, hi);
        }
        let slack = Rational::new(BigInt::one(), BigInt::one() << bits);
        if lo.is_positive() && &hi - &lo <= &lo * slack {
            return (lo, hi);
        }
        k += 8;
    }
}

/// `base^exp` for small exponents.
pub fn pow_rational(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm2_sq(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).sum()
}

/// Nonnegative residue of `v` modulo `p`.
pub fn mod_u64(v: &Integer, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue fits in u64")
}

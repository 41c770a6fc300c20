//! Exact rational scalars.
//!
//! All geometric predicates in this crate run on [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Parsing accepts integers and `p/q`; decimal literals are
//! accepted only through [`parse_decimal_or_rational`], which converts them
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

fn normalize_minus(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

/// Parse an integer or `p/q` string. Floats are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = normalize_minus(s);
    let bad = || Error::Parse(format!("`{s}` is not an integer or p/q rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.as_str(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// Like [`parse_rational`] but also accepts finite decimal literals such as
/// `-0.125`, converted exactly (no binary rounding).
pub fn parse_decimal_or_rational(s: &str) -> Result<Rational> {
    let s = normalize_minus(s);
    if !s.contains('.') {
        return parse_rational(&s);
    }
    let bad = || Error::Parse(format!("`{s}` is not a decimal literal"));
    if s.contains(['e', 'E']) {
        return Err(bad());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(&s)),
    };
    let (ip, fp) = body.split_once('.').ok_or_else(bad)?;
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num_traits::pow(BigInt::from(10), fp.len());
    Ok(Rational::new(n * sign, d))
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale down by bit length first.
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let shift = (nb.max(db) - 1000).max(0) as usize;
        let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Smallest positive integer multiple of a nonzero rational vector with
/// coprime integer entries. Returns the scale factor `c > 0` such that
/// `c * v` is integral and primitive.
pub fn primitive_scale(v: &[Rational]) -> Rational {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut gcd = BigInt::zero();
    for c in v {
        let k = c.numer() * (&lcm / c.denom());
        gcd = gcd.gcd(&k);
    }
    if gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm, gcd.abs())
}

/// Floor of the square root of a nonnegative rational, to `bits` binary
/// places: returns `floor(sqrt(q) * 2^bits) / 2^bits`.
pub fn sqrt_floor(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    let scaled = (q.numer() << (2 * bits as usize)) / q.denom();
    let root = scaled.sqrt();
    Rational::new(root, BigInt::one() << bits as usize)
}

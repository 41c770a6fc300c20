//! Rational stand-ins for irrational coordinates.
//!
//! Values are rounded to the nearest multiple of `2^-64`. Trigonometric
//! values are computed with 128-bit fixed point series and reduced by
//! octant, so `cos_sin_turn(f + 1/2)` is the exact negative of
//! `cos_sin_turn(f)` and reflections across the first axis are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{sqrt_floor, Rational};

const OUT_BITS: usize = 64;
const WORK_BITS: usize = 128;

fn fixed_one() -> BigInt {
    BigInt::one() << WORK_BITS
}

fn atan_inv(m: u32) -> BigInt {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = fixed_one() / &m;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    sum
}

fn pi_fixed() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

fn mul_fixed(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> WORK_BITS
}

/// `(cos, sin)` of `phi`, fixed point, for `0 <= phi <= pi/4`.
fn cos_sin_fixed(phi: &BigInt) -> (BigInt, BigInt) {
    let phi2 = mul_fixed(phi, phi);
    let series = |mut term: BigInt, start: u64| {
        let mut sum = BigInt::zero();
        let mut k = start;
        let mut sign = true;
        while !term.is_zero() {
            if sign {
                sum += &term;
            } else {
                sum -= &term;
            }
            term = mul_fixed(&term, &phi2) / BigInt::from((k + 1) * (k + 2));
            k += 2;
            sign = !sign;
        }
        sum
    };
    (series(fixed_one(), 0), series(phi.clone(), 1))
}

fn round_out(v: &BigInt) -> Rational {
    let shift = WORK_BITS - OUT_BITS;
    let half = BigInt::one() << (shift - 1);
    let n = (v + half) >> shift;
    Rational::new(n, BigInt::one() << OUT_BITS)
}

/// `(cos(r*pi/4), sin(r*pi/4))` for rational `0 <= r <= 1`, rounded.
fn octant_values(r: &Rational) -> (Rational, Rational) {
    let phi = (pi_fixed() * r.numer()) / (r.denom() * 4);
    let (c, s) = cos_sin_fixed(&phi);
    (round_out(&c), round_out(&s))
}

/// Rational approximation of `(cos 2πf, sin 2πf)` within `2^-64`.
pub fn cos_sin_turn(f: &Rational) -> (Rational, Rational) {
    let f = f - f.floor();
    let e = f * Rational::from_integer(8.into());
    let o = e.floor();
    let r = &e - &o;
    let octant = o.to_integer().mod_floor(&BigInt::from(8));
    let octant: u32 = octant.try_into().unwrap();
    let one_minus = Rational::one() - &r;
    let (c, s) = match octant % 4 {
        0 => octant_values(&r),
        1 => {
            let (c, s) = octant_values(&one_minus);
            (s, c)
        }
        2 => {
            let (c, s) = octant_values(&r);
            (-s, c)
        }
        _ => {
            let (c, s) = octant_values(&one_minus);
            (-c, s)
        }
    };
    if octant >= 4 {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// `floor(sqrt(q))` to 64 binary places.
pub fn sqrt_approx(q: &Rational) -> Rational {
    sqrt_floor(q, OUT_BITS as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, ratio, to_f64};
    use num_traits::Signed;

    fn eps() -> Rational {
        Rational::new(BigInt::one(), BigInt::one() << 62usize)
    }

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(cos_sin_turn(&int(0)), (int(1), int(0)));
        assert_eq!(cos_sin_turn(&ratio(1, 4)), (int(0), int(1)));
        assert_eq!(cos_sin_turn(&ratio(1, 2)), (int(-1), int(0)));
        assert_eq!(cos_sin_turn(&ratio(3, 4)), (int(0), int(-1)));
        assert_eq!(cos_sin_turn(&int(1)), (int(1), int(0)));
    }

    #[test]
    fn values_match_floats_and_lie_near_circle() {
        for j in 0..64 {
            let f = ratio(j, 64);
            let (c, s) = cos_sin_turn(&f);
            let a = 2.0 * std::f64::consts::PI * j as f64 / 64.0;
            assert!((to_f64(&c) - a.cos()).abs() < 1e-15);
            assert!((to_f64(&s) - a.sin()).abs() < 1e-15);
            let r = &c * &c + &s * &s - int(1);
            assert!(r.abs() < eps());
        }
    }

    #[test]
    fn antipodes_are_exact_negatives() {
        for j in 0..32 {
            let f = ratio(2 * j + 1, 64);
            let (c, s) = cos_sin_turn(&f);
            let (c2, s2) = cos_sin_turn(&(&f + ratio(1, 2)));
            assert_eq!((c2, s2), (-c, -s));
        }
    }

    #[test]
    fn sqrt_within_tolerance() {
        let q = ratio(8, 9);
        let r = sqrt_approx(&q);
        assert!((&r * &r - &q).abs() < eps());
    }
}

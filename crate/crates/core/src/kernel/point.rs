use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{format_rational, int, parse_decimal_or_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// A point (or vector) of `R^n` with exact rational coordinates.
///
/// Ordering is lexicographic on coordinates, which gives complexes and
/// lattices a canonical vertex order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    /// Parse `"a,b,c"`; each entry may be an integer, `p/q`, or a decimal.
    pub fn parse_csv(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(parse_decimal_or_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty coordinate list".into()));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Point) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * c).collect())
    }

    pub fn div(&self, c: &Rational) -> Point {
        Point(self.0.iter().map(|a| a / c).collect())
    }

    /// `self + c * dir`
    pub fn add_scaled(&self, dir: &Point, c: &Rational) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, d)| a + d * c).collect())
    }

    pub fn cross(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), 3, "cross product needs R^3");
        let (a, b) = (&self.0, &other.0);
        Point(vec![
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ])
    }

    /// Sum of absolute coordinate values.
    pub fn norm1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn to_f64_3(&self) -> [f64; 3] {
        let v = self.to_f64();
        [v[0], v[1], v[2]]
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Rational::new(1.into(), 2.into());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| (a + b) * &half).collect())
    }

    pub fn barycenter<'a>(points: impl IntoIterator<Item = &'a Point>) -> Point {
        let mut it = points.into_iter();
        let first = it.next().expect("barycenter of an empty set").clone();
        let mut n = 1i64;
        let sum = it.fold(first, |acc, p| {
            n += 1;
            &acc + p
        });
        sum.div(&int(n))
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Scalar triple product `a · (b × c)`.
pub fn det3(a: &Point, b: &Point, c: &Point) -> Rational {
    a.dot(&b.cross(c))
}

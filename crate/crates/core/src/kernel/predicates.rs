use num_traits::{Signed, Zero};

use super::hull::HalfSpace;
use super::point::Point;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Closed parameter interval of a line clipped by a polytope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Interval {
    Empty,
    Point(Rational),
    Segment(Rational, Rational),
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn contains(&self, t: &Rational) -> bool {
        match self {
            Interval::Empty => false,
            Interval::Point(s) => s == t,
            Interval::Segment(a, b) => a <= t && t <= b,
        }
    }

    pub fn endpoints(&self) -> Option<(Rational, Rational)> {
        match self {
            Interval::Empty => None,
            Interval::Point(s) => Some((s.clone(), s.clone())),
            Interval::Segment(a, b) => Some((a.clone(), b.clone())),
        }
    }

    fn from_bounds(lo: Rational, hi: Rational) -> Interval {
        match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Interval::Empty,
            std::cmp::Ordering::Equal => Interval::Point(lo),
            std::cmp::Ordering::Less => Interval::Segment(lo, hi),
        }
    }
}

/// Parameter bounds of `{t : p + t*dir satisfies every halfspace}`; `None`
/// when infeasible, with `None` endpoints where unbounded.
pub fn clip_line<'a>(
    halfspaces: impl IntoIterator<Item = &'a HalfSpace>,
    p: &Point,
    dir: &Point,
) -> Option<(Option<Rational>, Option<Rational>)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for h in halfspaces {
        let slope = h.normal.dot(dir);
        let slack = &h.offset - h.normal.dot(p);
        if slope.is_zero() {
            if slack.is_negative() {
                return None;
            }
            continue;
        }
        let t = slack / &slope;
        if slope.is_positive() {
            if hi.as_ref().is_none_or(|h| &t < h) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|l| &t > l) {
            lo = Some(t);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Exact intersection of the line `p + t*dir` with a bounded polytope given
/// by its facet halfspaces.
pub fn line_body_intersection(halfspaces: &[HalfSpace], p: &Point, dir: &Point) -> Result<Interval> {
    if dir.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(match clip_line(halfspaces, p, dir) {
        None => Interval::Empty,
        Some((Some(lo), Some(hi))) => Interval::from_bounds(lo, hi),
        Some(_) => return Err(Error::DegenerateInput("line is unbounded in the body".into())),
    })
}

/// Minkowski functional of a body with `0` in its interior:
/// `max over facets of (a·p)/b`, clamped below at zero.
pub fn gauge(halfspaces: &[HalfSpace], p: &Point) -> Rational {
    halfspaces
        .iter()
        .map(|h| h.normal.dot(p) / &h.offset)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

/// Projection parallel to `x` onto the hyperplane `x^⊥`:
/// `p - ((p·x)/(x·x)) x`.
pub fn project_along(x: &Point, p: &Point) -> Result<Point> {
    if x.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let c = p.dot(x) / x.dot(x);
    Ok(p.add_scaled(x, &-c))
}

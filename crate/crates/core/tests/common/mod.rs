//! Independent oracles shared by the integration tests.
//!
//! Nothing here touches the face lattice: membership is decided from the
//! vertex list or from raw halfspace rows with a phase-one simplex over
//! exact rationals.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use umbra::body::{random_direction, random_symmetric, SymmetricBody};
use umbra::kernel::rational::{int, ratio};
use umbra::kernel::Point;

pub type Q = BigRational;

/// Whether `{z >= 0 : A z = b}` is nonempty. Dense phase-one simplex with
/// Bland's rule, one artificial per row.
pub fn feasible_standard(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let s = |q: &Q| if flip { -q.clone() } else { q.clone() };
            let mut row: Vec<Q> = a[i].iter().map(s).collect();
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row.push(s(&b[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective: minimize the sum of artificials, kept as reduced costs.
    let mut cost: Vec<Q> = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    while let Some(col) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut pick: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let r = &t[i][width - 1] / &t[i][col];
                let better = match &pick {
                    None => true,
                    Some((pi, pr)) => r < *pr || (r == *pr && basis[i] < basis[*pi]),
                };
                if better {
                    pick = Some((i, r));
                }
            }
        }
        let Some((row, _)) = pick else { break };
        let piv = t[row][col].clone();
        for v in t[row].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        let f = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
        basis[row] = col;
    }
    cost[width - 1].is_zero()
}

/// Whether `{y : C y <= d}` is nonempty.
pub fn feasible_halfspaces(c: &[Vec<Q>], d: &[Q]) -> bool {
    let m = c.len();
    let n = c.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Q>> = c
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q> = r.clone();
            row.extend(r.iter().map(|q| -q));
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    debug_assert!(rows.iter().all(|r| r.len() == 2 * n + m));
    feasible_standard(&rows, d)
}

/// `p ∈ t·conv(V)`, decided from the vertex list alone.
pub fn in_scaled_hull(vertices: &[Point], p: &Point, t: &Q) -> bool {
    let dim = p.dim();
    let mut a: Vec<Vec<Q>> = (0..dim).map(|k| vertices.iter().map(|v| v[k].clone()).collect()).collect();
    a.push(vec![Q::one(); vertices.len()]);
    let mut b: Vec<Q> = p.coords().to_vec();
    b.push(t.clone());
    feasible_standard(&a, &b)
}

/// Bisection for `min{t : p ∈ t·K}` until the bracket is narrower than
/// `2^-bits`. Returns the bracket.
pub fn gauge_bracket(vertices: &[Point], p: &Point, bits: u32) -> (Q, Q) {
    let mut hi = Q::one();
    while !in_scaled_hull(vertices, p, &hi) {
        hi *= int(2);
    }
    let mut lo = Q::zero();
    let eps = Q::one() / Q::from_integer(num_bigint::BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / int(2);
        if in_scaled_hull(vertices, p, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Whether `tK ∩ (tK + x)` is nonempty, with `K = conv(V)`: some
/// `Σμv - Σνv = x` with `Σμ = Σν = t` and `μ, ν >= 0`.
pub fn lens_nonempty(vertices: &[Point], x: &Point, t: &Q) -> bool {
    let n = vertices.len();
    let mut a: Vec<Vec<Q>> = (0..x.dim())
        .map(|k| vertices.iter().map(|v| v[k].clone()).chain(vertices.iter().map(|v| -&v[k])).collect())
        .collect();
    a.push((0..2 * n).map(|j| if j < n { Q::one() } else { Q::zero() }).collect());
    a.push((0..2 * n).map(|j| if j < n { Q::zero() } else { Q::one() }).collect());
    let mut b: Vec<Q> = x.coords().to_vec();
    b.push(t.clone());
    b.push(t.clone());
    feasible_standard(&a, &b)
}

/// Bisection for the smallest `t` with a nonempty lens.
pub fn lambda_zero_bracket(vertices: &[Point], x: &Point, bits: u32) -> (Q, Q) {
    let mut hi = Q::one();
    while !lens_nonempty(vertices, x, &hi) {
        hi *= int(2);
    }
    let mut lo = Q::zero();
    let eps = Q::one() / Q::from_integer(num_bigint::BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / int(2);
        if lens_nonempty(vertices, x, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Seeded random body and direction; pairs in `4..=8`.
pub fn random_case(seed: u64) -> (SymmetricBody, Point) {
    let body = random_symmetric(seed, 4 + (seed % 5) as usize).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let x = random_direction(&body, &mut rng);
    (body, x)
}

pub fn p(c: [i64; 3]) -> Point {
    Point::from_ints(&c)
}

pub fn pq(c: [(i64, i64); 3]) -> Point {
    Point::new(c.iter().map(|&(n, d)| ratio(n, d)).collect())
}


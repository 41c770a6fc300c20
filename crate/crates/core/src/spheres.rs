//! General parameter spheres `γ_λ(K, x)`.
//!
//! Everything is computed in normalized coordinates, where
//! `γ_λ = bd K ∩ bd(K + t)` with `t = x/λ`. Each facet pair `F`, `G` of `K`
//! contributes `F ∩ (G + t)`, a face of the lens `K ∩ (K + t)`; the faces of
//! these pieces make up the complex.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::body::{build_named, SymmetricBody};
use crate::error::{Error, Result};
use crate::kernel::hull::{hull_and_lattice, planar_cycle, HalfSpace};
use crate::kernel::point::det3;
use crate::kernel::predicates::{clip_line, project_along};
use crate::kernel::rational::{format_rational, int};
use crate::kernel::{Point, Rational};
use crate::shadow::{decompose, ShadowDecomposition};
use crate::topology::CellComplex;

#[derive(Clone, Debug)]
pub struct ParameterSphere {
    pub lambda: Rational,
    pub x: Point,
    pub complex: CellComplex,
    pub degenerate: bool,
}

impl ParameterSphere {
    /// The translation `x/λ` between the two bodies.
    pub fn shift(&self) -> Point {
        self.x.div(&self.lambda)
    }
}

/// `λ₀ = ‖x‖/2`, the smallest λ with `λK ∩ (λK + x)` nonempty.
pub fn lambda_zero(body: &SymmetricBody, x: &Point) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::ZeroDirection);
    }
    Ok(body.gauge(x) / int(2))
}

fn check_lambda(body: &SymmetricBody, x: &Point, lambda: &Rational, strict: bool) -> Result<Rational> {
    let l0 = lambda_zero(body, x)?;
    if lambda < &l0 || (strict && lambda == &l0) {
        return Err(Error::LambdaTooSmall { lambda: format_rational(lambda), lambda_zero: format_rational(&l0) });
    }
    Ok(l0)
}

fn bbox(points: &[&Point]) -> (Point, Point) {
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in points {
        for k in 0..3 {
            if p[k] < lo[k] {
                lo.0[k] = p[k].clone();
            }
            if p[k] > hi[k] {
                hi.0[k] = p[k].clone();
            }
        }
    }
    (lo, hi)
}

fn boxes_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    (0..3).all(|k| a.0[k] <= b.1[k] && b.0[k] <= a.1[k])
}

/// Convex polygon cut by a halfspace.
fn clip_polygon(poly: Vec<Point>, h: &HalfSpace) -> Vec<Point> {
    let n = poly.len();
    if n == 0 {
        return poly;
    }
    let vals: Vec<Rational> = poly.iter().map(|p| h.eval(p)).collect();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (vi, vj) = (&vals[i], &vals[j]);
        if !vi.is_positive() {
            out.push(poly[i].clone());
        }
        if (vi.is_negative() && vj.is_positive()) || (vi.is_positive() && vj.is_negative()) {
            let s = vi / (vi - vj);
            out.push(poly[i].add_scaled(&(&poly[j] - &poly[i]), &s));
        }
    }
    out
}

/// A convex cell from a point set lying in a plane with normal `normal`.
fn convex_cell(mut pts: Vec<Point>, normal: &Point) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let refs: Vec<&Point> = pts.iter().collect();
    let order = planar_cycle(&refs, normal);
    order.into_iter().map(|i| pts[i].clone()).collect()
}

/// Point on both planes `n1·p = d1`, `n2·p = d2`, for non-parallel normals.
fn plane_pair_point(h1: &HalfSpace, h2: &HalfSpace, u: &Point) -> Point {
    let a = h2.normal.cross(u).scale(&h1.offset);
    let b = u.cross(&h1.normal).scale(&h2.offset);
    (&a + &b).div(&u.dot(u))
}

/// Cells of `bd K ∩ bd(K + t)`.
///
/// Within its own plane a facet is cut out by the planes of its neighbours,
/// so each pair is clipped by the neighbour constraints of both facets only.
pub fn boundary_intersection(body: &SymmetricBody, t: &Point) -> CellComplex {
    let lat = &body.lattice;
    let shifted: Vec<HalfSpace> = body.halfspaces.iter().map(|h| h.translate(t)).collect();
    let polys: Vec<Vec<Point>> = lat
        .facets
        .iter()
        .map(|f| f.cycle.iter().map(|&v| lat.vertices[v].clone()).collect())
        .collect();
    let boxes: Vec<(Point, Point)> = polys.iter().map(|p| bbox(&p.iter().collect::<Vec<_>>())).collect();
    let moved: Vec<(Point, Point)> = boxes.iter().map(|(lo, hi)| (lo + t, hi + t)).collect();
    let n = lat.facets.len();
    let cells: Vec<Vec<Point>> = (0..n * n)
        .into_par_iter()
        .filter_map(|k| {
            let (i, j) = (k / n, k % n);
            if !boxes_meet(&boxes[i], &moved[j]) {
                return None;
            }
            let (hi, hj) = (&body.halfspaces[i], &shifted[j]);
            let around_j = lat.facets[j].neighbors.iter().map(|&m| &shifted[m]);
            let u = hi.normal.cross(&hj.normal);
            if u.is_zero() {
                let same = hi.normal == hj.normal && hi.offset == hj.offset;
                let opposite = hi.normal == -&hj.normal && hi.offset == -&hj.offset;
                if !(same || opposite) {
                    return None;
                }
                let mut poly = polys[i].clone();
                for h in around_j {
                    poly = clip_polygon(poly, h);
                }
                let cell = convex_cell(poly, &hi.normal);
                (!cell.is_empty()).then_some(cell)
            } else {
                let around_i = lat.facets[i].neighbors.iter().map(|&m| &body.halfspaces[m]);
                let p = plane_pair_point(hi, hj, &u);
                match clip_line(around_i.chain(around_j), &p, &u)? {
                    (Some(lo), Some(hi)) => {
                        let (a, b) = (p.add_scaled(&u, &lo), p.add_scaled(&u, &hi));
                        Some(if a == b { vec![a] } else { vec![a, b] })
                    }
                    _ => unreachable!("line through a bounded facet"),
                }
            }
        })
        .collect();
    CellComplex::from_cells(cells)
}

pub fn gamma_complex(body: &SymmetricBody, x: &Point, lambda: &Rational) -> Result<ParameterSphere> {
    let l0 = check_lambda(body, x, lambda, false)?;
    let t = x.div(lambda);
    Ok(ParameterSphere {
        lambda: lambda.clone(),
        x: x.clone(),
        complex: boundary_intersection(body, &t),
        degenerate: lambda == &l0,
    })
}

/// Vertices of the polytope `{y : n·y <= c}` given facet constraints with
/// `c > 0`, via the hull of the polar points `n/c`.
fn vertices_from_halfspaces(hs: &[HalfSpace]) -> Result<Vec<Point>> {
    let polar: Vec<Point> = hs.iter().map(|h| h.unit_normal()).collect();
    let lat = hull_and_lattice(&polar)?;
    Ok(lat.halfspaces().map(|h| h.unit_normal()).collect())
}

/// The lens `K ∩ (K + t)` moved to the origin, as a symmetric body, and the
/// offset `t/2` that moves it back.
pub fn lens_body(body: &SymmetricBody, x: &Point, lambda: &Rational) -> Result<(SymmetricBody, Point)> {
    check_lambda(body, x, lambda, true)?;
    let t = x.div(lambda);
    let half = t.div(&int(2));
    let hs: Vec<HalfSpace> = body
        .halfspaces
        .iter()
        .flat_map(|h| {
            let d = h.normal.dot(&half);
            [
                HalfSpace { normal: h.normal.clone(), offset: &h.offset - &d },
                HalfSpace { normal: h.normal.clone(), offset: &h.offset + &d },
            ]
        })
        .collect();
    let verts = vertices_from_halfspaces(&hs)?;
    let lens = build_named(&verts, false, &format!("lens({}, {})", body.name, format_rational(lambda)))?;
    Ok((lens, half))
}

/// Shadow decomposition of the centred lens along `x`. Its shadow complex,
/// moved back by `t/2`, should coincide with `γ_λ`.
pub fn gamma_as_shadow_oracle(
    body: &SymmetricBody,
    x: &Point,
    lambda: &Rational,
) -> Result<(ShadowDecomposition, Point)> {
    let (lens, half) = lens_body(body, x, lambda)?;
    Ok((decompose(&lens, x)?, half))
}

/// Cells of a complex as float points, segments and triangles.
struct Primitives {
    points: Vec<[f64; 3]>,
    segments: Vec<[[f64; 3]; 2]>,
    triangles: Vec<[[f64; 3]; 3]>,
}

fn primitives(c: &CellComplex) -> Primitives {
    let v: Vec<[f64; 3]> = c.vertices.iter().map(Point::to_f64_3).collect();
    let degree = c.vertex_edges();
    Primitives {
        points: v.iter().zip(&degree).filter(|(_, d)| d.is_empty()).map(|(p, _)| *p).collect(),
        segments: c.edges.iter().map(|e| [v[e[0]], v[e[1]]]).collect(),
        triangles: c
            .polygons
            .iter()
            .flat_map(|cyc| (1..cyc.len() - 1).map(|k| [v[cyc[0]], v[cyc[k]], v[cyc[k + 1]]]).collect::<Vec<_>>())
            .collect(),
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn lerp(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])]
}

fn point_segment(p: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let s = if len2 == 0.0 { 0.0 } else { (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0) };
    norm(sub(p, lerp(a, b, s)))
}

fn point_triangle(p: [f64; 3], t: &[[f64; 3]; 3]) -> f64 {
    let (a, b, c) = (t[0], t[1], t[2]);
    let (ab, ac) = (sub(b, a), sub(c, a));
    let n = [ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2], ab[0] * ac[1] - ab[1] * ac[0]];
    let nn = dot(n, n);
    if nn > 0.0 {
        let ap = sub(p, a);
        let d = dot(ap, n) / nn;
        let q = [p[0] - d * n[0], p[1] - d * n[1], p[2] - d * n[2]];
        // Barycentric test for the foot of the perpendicular.
        let (v0, v1, v2) = (ab, ac, sub(q, a));
        let (d00, d01, d11, d20, d21) = (dot(v0, v0), dot(v0, v1), dot(v1, v1), dot(v2, v0), dot(v2, v1));
        let den = d00 * d11 - d01 * d01;
        let v = (d11 * d20 - d01 * d21) / den;
        let w = (d00 * d21 - d01 * d20) / den;
        if v >= 0.0 && w >= 0.0 && v + w <= 1.0 {
            return norm(sub(p, q));
        }
    }
    point_segment(p, a, b).min(point_segment(p, b, c)).min(point_segment(p, c, a))
}

impl Primitives {
    fn distance(&self, p: [f64; 3]) -> f64 {
        let mut d = f64::INFINITY;
        for q in &self.points {
            d = d.min(norm(sub(p, *q)));
        }
        for s in &self.segments {
            d = d.min(point_segment(p, s[0], s[1]));
        }
        for t in &self.triangles {
            d = d.min(point_triangle(p, t));
        }
        d
    }

    fn samples(&self, density: f64) -> Vec<[f64; 3]> {
        let mut out = self.points.clone();
        for s in &self.segments {
            let m = (norm(sub(s[1], s[0])) * density).ceil().max(1.0) as usize;
            out.extend((0..=m).map(|k| lerp(s[0], s[1], k as f64 / m as f64)));
        }
        for t in &self.triangles {
            let longest = norm(sub(t[1], t[0])).max(norm(sub(t[2], t[1]))).max(norm(sub(t[0], t[2])));
            let m = (longest * density).ceil().max(1.0) as usize;
            for i in 0..=m {
                for j in 0..=(m - i) {
                    let (u, v) = (i as f64 / m as f64, j as f64 / m as f64);
                    let p = [0, 1, 2].map(|k| t[0][k] + u * (t[1][k] - t[0][k]) + v * (t[2][k] - t[0][k]));
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Symmetric Hausdorff distance, sampling each complex at `density` points
/// per unit length and measuring exact float distances to the other.
pub fn hausdorff_distance(a: &CellComplex, b: &CellComplex, density: f64) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let (pa, pb) = (primitives(a), primitives(b));
    let one_sided = |from: &Primitives, to: &Primitives| {
        from.samples(density).par_iter().map(|&p| to.distance(p)).reduce(|| 0.0, f64::max)
    };
    Ok(one_sided(&pa, &pb).max(one_sided(&pb, &pa)))
}

/// Candidate values of λ in `[λ₀, lambda_max]` where the combinatorics of
/// `γ_λ` may change: a vertex of one body crossing a facet plane of the
/// other on the boundary, or an edge of `K` meeting an edge of `K + t`.
pub fn critical_lambdas(body: &SymmetricBody, x: &Point, lambda_max: &Rational) -> Result<Vec<Rational>> {
    let l0 = lambda_zero(body, x)?;
    let lat = &body.lattice;
    let mut out = vec![l0.clone()];
    let keep = |s: Rational, out: &mut Vec<Rational>| {
        if s.is_positive() {
            let lambda = s.recip();
            if lambda > l0 && &lambda <= lambda_max {
                out.push(lambda);
            }
        }
    };
    for v in &lat.vertices {
        for h in &body.halfspaces {
            let ax = h.normal.dot(x);
            if ax.is_zero() {
                continue;
            }
            let av = h.normal.dot(v);
            let s = (&av - &h.offset) / &ax;
            if s.is_positive() && body.on_boundary(&v.add_scaled(x, &-&s)) {
                keep(s, &mut out);
            }
            let s = (&h.offset - &av) / &ax;
            if s.is_positive() && body.on_boundary(&v.add_scaled(x, &s)) {
                keep(s, &mut out);
            }
        }
    }
    for e1 in &lat.edges {
        let (p, q) = (&lat.vertices[e1.vertices[0]], &lat.vertices[e1.vertices[1]]);
        let d1 = q - p;
        for e2 in &lat.edges {
            let (r, s2) = (&lat.vertices[e2.vertices[0]], &lat.vertices[e2.vertices[1]]);
            let d2 = s2 - r;
            let den = det3(&d1, &d2, x);
            if den.is_zero() {
                continue;
            }
            let sigma = -det3(&d1, &d2, &(r - p)) / &den;
            if !sigma.is_positive() {
                continue;
            }
            let m = &r.add_scaled(x, &sigma) - p;
            let n = d1.cross(&d2);
            let nn = n.dot(&n);
            let u = m.cross(&d2).dot(&n) / &nn;
            let w = m.cross(&d1).dot(&n) / &nn;
            let unit = |c: &Rational| !c.is_negative() && c <= &Rational::one();
            if unit(&u) && unit(&w) {
                keep(sigma, &mut out);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The half of a longitudinal curve on the side of `p`, in coordinates
/// `y = α·x + β·q` with `q` the projection of `p` along `x`.
pub struct Meridian {
    pub x: Point,
    pub q: Point,
    /// Polygon vertices as `(α, β)`.
    pub polygon: Vec<(Rational, Rational)>,
    pub beta_max: Rational,
}

impl Meridian {
    pub fn new(body: &SymmetricBody, x: &Point, p: &Point) -> Result<Meridian> {
        let q = project_along(x, p)?;
        if q.is_zero() {
            return Err(Error::CollinearPoint);
        }
        let curve = body.longitudinal_curve(x, p)?;
        let (xx, qq) = (x.dot(x), q.dot(&q));
        let polygon: Vec<(Rational, Rational)> = curve.iter().map(|y| (y.dot(x) / &xx, y.dot(&q) / &qq)).collect();
        let beta_max = polygon.iter().map(|c| c.1.clone()).max().unwrap();
        Ok(Meridian { x: x.clone(), q, polygon, beta_max })
    }

    pub fn point(&self, alpha: &Rational, beta: &Rational) -> Point {
        &self.x.scale(alpha) + &self.q.scale(beta)
    }

    pub fn coords(&self, y: &Point) -> (Rational, Rational) {
        (y.dot(&self.x) / self.x.dot(&self.x), y.dot(&self.q) / self.q.dot(&self.q))
    }

    /// Ends `(α_min, α_max)` of the chord at height `β`.
    pub fn chord(&self, beta: &Rational) -> (Rational, Rational) {
        let n = self.polygon.len();
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |a: Rational| {
            if lo.as_ref().is_none_or(|l| &a < l) {
                lo = Some(a.clone());
            }
            if hi.as_ref().is_none_or(|h| &a > h) {
                hi = Some(a);
            }
        };
        for k in 0..n {
            let (a, b) = (&self.polygon[k], &self.polygon[(k + 1) % n]);
            if &a.1 == beta {
                push(a.0.clone());
            }
            if (&a.1 < beta && beta < &b.1) || (&b.1 < beta && beta < &a.1) {
                let s = (beta - &a.1) / (&b.1 - &a.1);
                push(&a.0 + (&b.0 - &a.0) * s);
            }
        }
        (lo.expect("height inside the meridian"), hi.unwrap())
    }

    pub fn chord_length(&self, beta: &Rational) -> Rational {
        let (lo, hi) = self.chord(beta);
        hi - lo
    }

    /// `r ∩ γ_λ`: the segment `[(α_lo, β), (α_hi, β)]` it spans, possibly a
    /// single point.
    pub fn sphere_section(&self, lambda: &Rational) -> (Rational, Rational, Rational) {
        let target = lambda.recip();
        let top = self.chord(&self.beta_max);
        if &top.1 - &top.0 >= target {
            return (&top.0 + &target, top.1, self.beta_max.clone());
        }
        let mut heights: Vec<Rational> = self.polygon.iter().map(|c| c.1.clone()).filter(|b| !b.is_negative()).collect();
        heights.push(Rational::zero());
        heights.sort();
        heights.dedup();
        for w in heights.windows(2) {
            let (c0, c1) = (self.chord_length(&w[0]), self.chord_length(&w[1]));
            if c0 >= target && target > c1 {
                let beta = &w[0] + (&c0 - &target) / (&c0 - &c1) * (&w[1] - &w[0]);
                let (_, hi) = self.chord(&beta);
                return (hi.clone(), hi, beta);
            }
        }
        unreachable!("chord length passes 1/λ between the poles and the top")
    }
}

/// The retraction `γ_μ → γ_λ` along longitudinal curves.
pub fn bounding_map(body: &SymmetricBody, x: &Point, lambda: &Rational, mu: &Rational, p: &Point) -> Result<Point> {
    check_lambda(body, x, lambda, true)?;
    if lambda >= mu {
        return Err(Error::LambdaOrder { lambda: format_rational(lambda), mu: format_rational(mu) });
    }
    if !(body.on_boundary(p) && body.on_boundary(&p.add_scaled(x, &-mu.recip()))) {
        return Err(Error::PointNotOnSphere(p.to_string()));
    }
    let m = Meridian::new(body, x, p)?;
    let (lo, hi, beta) = m.sphere_section(lambda);
    if lo == hi {
        return Ok(m.point(&lo, &beta));
    }
    let (ap, bp) = m.coords(p);
    if bp == beta && lo <= ap && ap <= hi {
        return Ok(p.clone());
    }
    Ok(m.point(&lo, &beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::builtin;
    use crate::kernel::rational::ratio;
    use crate::topology::{classify, Classification};

    fn pt(c: [i64; 3]) -> Point {
        Point::from_ints(&c)
    }

    #[test]
    fn lambda_zero_examples() {
        let worked = builtin("example-sec3", None).unwrap();
        assert_eq!(lambda_zero(&worked, &pt([4, 0, 0])).unwrap(), int(1));
        let cube = builtin("cube", None).unwrap();
        assert_eq!(lambda_zero(&cube, &pt([2, 0, 0])).unwrap(), int(1));
        assert!(matches!(lambda_zero(&cube, &Point::zeros(3)), Err(Error::ZeroDirection)));
    }

    #[test]
    fn degenerate_spheres() {
        let worked = builtin("example-sec3", None).unwrap();
        let g = gamma_complex(&worked, &pt([4, 0, 0]), &int(1)).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.complex.vertices, vec![pt([2, 0, -1]), pt([2, 0, 1])]);
        assert_eq!(classify(&g.complex).classification, Classification::Segment);
        let cube = builtin("cube", None).unwrap();
        let g = gamma_complex(&cube, &pt([2, 0, 0]), &int(1)).unwrap();
        assert_eq!(classify(&g.complex).classification, Classification::DegenerateCell(2));
        let oct = builtin("octahedron", None).unwrap();
        let g = gamma_complex(&oct, &pt([2, 0, 0]), &int(1)).unwrap();
        assert_eq!(classify(&g.complex).classification, Classification::Point);
        assert!(matches!(
            gamma_complex(&oct, &pt([2, 0, 0]), &ratio(1, 2)),
            Err(Error::LambdaTooSmall { .. })
        ));
    }

    #[test]
    fn sphere_vertices_satisfy_both_gauges() {
        let worked = builtin("example-sec3", None).unwrap();
        let x = pt([4, 0, 0]);
        for lambda in [ratio(9, 8), ratio(11, 8), int(2)] {
            let g = gamma_complex(&worked, &x, &lambda).unwrap();
            let t = g.shift();
            for v in &g.complex.vertices {
                assert_eq!(worked.gauge(v), int(1));
                assert_eq!(worked.gauge(&(v - &t)), int(1));
            }
            let flipped = g.complex.map_points(|p| &t - p);
            assert_eq!(flipped, g.complex);
        }
    }

    #[test]
    fn cube_lens_matches_sphere() {
        let cube = builtin("cube", None).unwrap();
        let x = pt([2, 0, 0]);
        let g = gamma_complex(&cube, &x, &int(2)).unwrap();
        let (d, half) = gamma_as_shadow_oracle(&cube, &x, &int(2)).unwrap();
        assert_eq!(d.shadow_complex.translate(&half), g.complex);
        assert_eq!(classify(&g.complex).classification, Classification::Annulus);
    }

    #[test]
    fn hausdorff_basics() {
        let a = CellComplex::from_cells([vec![pt([0, 0, 0]), pt([1, 0, 0])]]);
        let b = CellComplex::from_cells([vec![pt([0, 1, 0]), pt([1, 1, 0])]]);
        assert!(hausdorff_distance(&a, &a, 64.0).unwrap() < 1e-12);
        assert!((hausdorff_distance(&a, &b, 64.0).unwrap() - 1.0).abs() < 1.0 / 64.0);
        assert!(matches!(hausdorff_distance(&a, &CellComplex::default(), 64.0), Err(Error::EmptyComplex)));
    }

    #[test]
    fn critical_values_scale_with_direction() {
        let cube = builtin("cube", None).unwrap();
        let a = critical_lambdas(&cube, &pt([2, 0, 0]), &int(4)).unwrap();
        assert_eq!(a[0], int(1));
        let b = critical_lambdas(&cube, &pt([4, 0, 0]), &int(8)).unwrap();
        let doubled: Vec<Rational> = a.iter().map(|l| l * int(2)).collect();
        assert_eq!(b, doubled);
    }

    #[test]
    fn bounding_map_cases() {
        let worked = builtin("example-sec3", None).unwrap();
        let x = pt([4, 0, 0]);
        let g2 = gamma_complex(&worked, &x, &int(2)).unwrap();
        for v in &g2.complex.vertices {
            let y = bounding_map(&worked, &x, &ratio(9, 8), &int(2), v).unwrap();
            assert!(worked.on_boundary(&y));
            assert!(worked.on_boundary(&y.add_scaled(&x, &-ratio(8, 9))));
        }
        assert!(matches!(
            bounding_map(&worked, &x, &ratio(9, 8), &int(2), &pt([0, 0, 0])),
            Err(Error::PointNotOnSphere(_))
        ));
        assert!(matches!(
            bounding_map(&worked, &x, &int(2), &ratio(9, 8), &pt([1, 1, 1])),
            Err(Error::LambdaOrder { .. })
        ));
    }
}

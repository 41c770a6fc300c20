//! Centrally symmetric convex polytopes: construction, built-in examples,
//! random generation, poles and longitudinal curves.

use std::path::Path;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::approx::{cos_sin_turn, sqrt_approx};
use crate::kernel::hull::{hull_and_lattice, planar_cycle, FaceLattice, HalfSpace};
use crate::kernel::predicates::{gauge, line_body_intersection, Interval};
use crate::kernel::rational::{format_rational, int, parse_rational, ratio};
use crate::kernel::{Point, Rational};

/// A 0-symmetric convex polytope in `R^3` with its face lattice.
#[derive(Clone, Debug)]
pub struct SymmetricBody {
    pub name: String,
    pub lattice: FaceLattice,
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolePair {
    pub positive: Point,
    pub negative: Point,
}

/// Hull of `points` (and their negatives when `symmetrize`), validated as a
/// symmetric body with the origin inside.
pub fn build_symmetric(points: &[Point], symmetrize: bool) -> Result<SymmetricBody> {
    build_named(points, symmetrize, "custom")
}

pub fn build_named(points: &[Point], symmetrize: bool, name: &str) -> Result<SymmetricBody> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("no points".into()));
    }
    for p in points {
        if p.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: p.dim() });
        }
    }
    let mut pts = points.to_vec();
    if symmetrize {
        pts.extend(points.iter().map(|p| -p));
    }
    let lattice = hull_and_lattice(&pts)?;
    for v in &lattice.vertices {
        if lattice.vertex_index(&-v).is_none() {
            return Err(Error::NotSymmetric(format!("vertex {v} has no opposite vertex")));
        }
    }
    if lattice.halfspaces().any(|h| !h.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let halfspaces = lattice.halfspaces().cloned().collect();
    Ok(SymmetricBody { name: name.to_string(), lattice, halfspaces })
}

impl SymmetricBody {
    pub fn dim(&self) -> usize {
        3
    }

    pub fn vertices(&self) -> &[Point] {
        &self.lattice.vertices
    }

    pub fn gauge(&self, p: &Point) -> Rational {
        gauge(&self.halfspaces, p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains(p))
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p) && self.halfspaces.iter().any(|h| h.on_boundary(p))
    }

    pub fn line_intersection(&self, p: &Point, dir: &Point) -> Result<Interval> {
        line_body_intersection(&self.halfspaces, p, dir)
    }

    /// Euclidean diameter, in floating point.
    pub fn diameter(&self) -> f64 {
        let vs: Vec<[f64; 3]> = self.vertices().iter().map(Point::to_f64_3).collect();
        let mut d: f64 = 0.0;
        for a in &vs {
            for b in &vs {
                let s = (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>();
                d = d.max(s.sqrt());
            }
        }
        d
    }

    pub fn poles(&self, x: &Point) -> Result<PolePair> {
        if x.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let positive = x.div(&self.gauge(x));
        let negative = -&positive;
        Ok(PolePair { positive, negative })
    }

    /// `bd K` intersected with the plane through the origin spanned by `x`
    /// and `p`, as a convex cycle.
    pub fn longitudinal_curve(&self, x: &Point, p: &Point) -> Result<Vec<Point>> {
        if x.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let normal = x.cross(p);
        if normal.is_zero() {
            return Err(Error::CollinearPoint);
        }
        let side: Vec<Rational> = self.vertices().iter().map(|v| normal.dot(v)).collect();
        let mut pts: Vec<Point> = Vec::new();
        for (v, s) in self.vertices().iter().zip(&side) {
            if s.is_zero() {
                pts.push(v.clone());
            }
        }
        for e in &self.lattice.edges {
            let [a, b] = e.vertices;
            let (sa, sb) = (&side[a], &side[b]);
            if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
                let t = sa / (sa - sb);
                let (va, vb) = (&self.vertices()[a], &self.vertices()[b]);
                pts.push(va.add_scaled(&(vb - va), &t));
            }
        }
        pts.sort();
        pts.dedup();
        let refs: Vec<&Point> = pts.iter().collect();
        let order = planar_cycle(&refs, &normal);
        Ok(order.into_iter().map(|i| pts[i].clone()).collect())
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Vec<String>> = self.vertices().iter().map(Point::to_strings).collect();
        json!({ "dim": 3, "name": self.name, "vertices": vertices })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("body json");
        crate::report::write_atomic(path, text.as_bytes())
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
        other => Err(Error::Parse(format!("coordinate {other} must be an integer or a \"p/q\" string"))),
    }
}

/// Parse the body JSON format; floats are rejected.
pub fn body_from_json(v: &Value) -> Result<SymmetricBody> {
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing integer `dim`".into()))?;
    if dim != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: dim as usize });
    }
    let name = v.get("name").and_then(Value::as_str).unwrap_or("custom");
    let raw = v.get("vertices").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing `vertices`".into()))?;
    let mut points = Vec::with_capacity(raw.len());
    for r in raw {
        let coords = r.as_array().ok_or_else(|| Error::Parse("vertex must be an array".into()))?;
        points.push(Point::new(coords.iter().map(json_rational).collect::<Result<_>>()?));
    }
    let symmetrize = v.get("symmetrize").and_then(Value::as_bool).unwrap_or(false);
    build_named(&points, symmetrize, name)
}

pub fn load_body(path: &Path) -> Result<SymmetricBody> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    body_from_json(&v)
}

fn octahedron_points() -> Vec<Point> {
    (0..3)
        .map(|k| {
            let mut c = [0; 3];
            c[k] = 1;
            Point::from_ints(&c)
        })
        .collect()
}

fn cube_points() -> Vec<Point> {
    let mut pts = Vec::new();
    for a in [-1, 1] {
        for b in [-1, 1] {
            pts.push(Point::from_ints(&[1, a, b]));
        }
    }
    pts.push(Point::from_ints(&[-1, 1, 1]));
    pts.push(Point::from_ints(&[-1, 1, -1]));
    pts
}

/// Corner points of the generator sets of the worked example: the squares
/// `±{(r,1,t)}`, the rectangles `r ± s = 2` with `1 <= r <= 2`, and the
/// segments `±{(r,0,2) : |r| <= 3/2}`.
fn worked_example_points() -> Vec<Point> {
    let mut pts = Vec::new();
    for a in [-1, 1] {
        for b in [-1, 1] {
            pts.push(Point::from_ints(&[a, 1, b]));
        }
        pts.push(Point::from_ints(&[2, 0, a]));
        pts.push(Point::new(vec![ratio(3 * a, 2), int(0), int(2)]));
    }
    pts
}

/// Segments `s_k = {(t, 1/k, sqrt(k^2-1)/k)}` for `k <= n`, joined by arcs of
/// the cylinder `y^2 + z^2 = 1` cut by vertical planes, then reflected in
/// the planes `y = 0` and `z = 0`.
fn sine_cylinder_points(n: u32) -> Vec<Point> {
    let on_cylinder = |x: Rational, y: Rational| {
        let z = sqrt_approx(&(int(1) - &y * &y));
        Point::new(vec![x, y, z])
    };
    let mut pts = Vec::new();
    for k in 1..=n as i64 {
        let y = ratio(1, k);
        pts.push(on_cylinder(int(1), y.clone()));
        pts.push(on_cylinder(int(-1), y.clone()));
        if k < n as i64 {
            let y2 = ratio(1, k + 1);
            for j in 1..=n as i64 {
                let a = ratio(j, n as i64 + 1);
                let x = int(1) - &a * int(2);
                let yy = &y + (&y2 - &y) * &a;
                pts.push(on_cylinder(x, yy));
            }
        }
    }
    let mut all = Vec::with_capacity(pts.len() * 4);
    for p in pts {
        for (sy, sz) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            all.push(Point::new(vec![p[0].clone(), &p[1] * int(sy), &p[2] * int(sz)]));
        }
    }
    all
}

/// Segments through the dyadic points of the unit circle, orthogonal to its
/// plane, up to level `n`.
fn diadic_points(n: u32) -> Vec<Point> {
    let mut pts = Vec::new();
    for i in 0..=n {
        let half = if i <= 1 { int(1) } else { ratio(1, 1 << (i - 1)) };
        let den = 1i64 << i;
        for j in (1..=den).step_by(2) {
            let (c, s) = cos_sin_turn(&ratio(j, den));
            pts.push(Point::new(vec![c.clone(), s.clone(), half.clone()]));
            pts.push(Point::new(vec![c, s, -&half]));
        }
    }
    pts
}

/// A built-in body; `name` may carry its parameter as `name(n)`.
pub fn builtin(name: &str, n: Option<u32>) -> Result<SymmetricBody> {
    let (base, param) = match name.split_once('(') {
        Some((b, rest)) => {
            let v = rest.trim_end_matches(')').trim();
            let v: u32 = v.parse().map_err(|_| Error::UnknownBody(name.into()))?;
            (b.trim(), Some(v))
        }
        None => (name.trim(), n),
    };
    let need = |p: Option<u32>| match p {
        Some(v) if v >= 1 => Ok(v),
        _ => Err(Error::UnknownBody(format!("{base} needs a parameter N >= 1"))),
    };
    match base {
        "octahedron" => build_named(&octahedron_points(), true, "octahedron"),
        "cube" => build_named(&cube_points(), true, "cube"),
        "example-sec3" => build_named(&worked_example_points(), true, "example-sec3"),
        "sine-cylinder" => {
            let k = need(param)?;
            build_named(&sine_cylinder_points(k), true, &format!("sine-cylinder({k})"))
        }
        "diadic" => {
            let k = need(param)?;
            build_named(&diadic_points(k), true, &format!("diadic({k})"))
        }
        _ => Err(Error::UnknownBody(name.into())),
    }
}

pub const BUILTIN_NAMES: &[&str] = &["octahedron", "cube", "example-sec3", "sine-cylinder(N)", "diadic(N)"];

/// Hull of `pairs` random grid points in `[-1, 1]^3` and their negatives.
/// Grid steps are `1/4`; degenerate draws are retried.
pub fn random_symmetric(seed: u64, pairs: usize) -> Result<SymmetricBody> {
    if pairs < 4 {
        return Err(Error::DegenerateInput(format!("need at least 4 point pairs, got {pairs}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let pts: Vec<Point> = (0..pairs)
            .map(|_| Point::new((0..3).map(|_| ratio(rng.gen_range(-4..=4), 4)).collect()))
            .collect();
        match build_named(&pts, true, &format!("random(seed={seed},pairs={pairs})")) {
            Ok(b) => return Ok(b),
            Err(Error::DegenerateInput(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateInput("random draws stayed degenerate".into()))
}

/// A nonzero direction for property tests: small integer vectors, edge
/// directions and vertex differences, all of which hit special cases.
pub fn random_direction(body: &SymmetricBody, rng: &mut impl Rng) -> Point {
    loop {
        let x = match rng.gen_range(0..4) {
            0 | 1 => Point::new((0..3).map(|_| int(rng.gen_range(-3..=3))).collect()),
            2 => {
                let e = &body.lattice.edges[rng.gen_range(0..body.lattice.edges.len())];
                &body.vertices()[e.vertices[1]] - &body.vertices()[e.vertices[0]]
            }
            _ => {
                let vs = body.vertices();
                &vs[rng.gen_range(0..vs.len())] - &vs[rng.gen_range(0..vs.len())]
            }
        };
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn format_point(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

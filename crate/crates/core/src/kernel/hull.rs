//! Exact 3D convex hull with face lattice.
//!
//! Facets are found by gift wrapping: one supporting plane is rotated until
//! it touches a 2-dimensional contact set, then every facet edge is wrapped
//! to its neighbour. All predicates are exact, so coplanar input points are
//! handled by taking the 2D hull of each facet's contact set.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};

use super::point::Point;
use super::rational::{primitive_scale, Rational};
use crate::error::{Error, Result};

/// Closed halfspace `normal · y <= offset`.
///
/// Normals built by the hull are primitive integer vectors (coprime entries),
/// which makes every facet plane have exactly one representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfSpace {
    pub normal: Point,
    pub offset: Rational,
}

impl HalfSpace {
    /// Plane with the given outward normal passing through `on`, with the
    /// normal rescaled to primitive integer form.
    pub fn through(normal: &Point, on: &Point) -> HalfSpace {
        assert!(!normal.is_zero(), "halfspace normal must be nonzero");
        let normal = normal.scale(&primitive_scale(normal.coords()));
        let offset = normal.dot(on);
        HalfSpace { normal, offset }
    }

    /// `normal · p - offset`; nonpositive inside.
    pub fn eval(&self, p: &Point) -> Rational {
        self.normal.dot(p) - &self.offset
    }

    pub fn contains(&self, p: &Point) -> bool {
        !self.eval(p).is_positive()
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// The halfspace moved by `t`.
    pub fn translate(&self, t: &Point) -> HalfSpace {
        HalfSpace { normal: self.normal.clone(), offset: &self.offset + self.normal.dot(t) }
    }

    /// `normal / offset`, the unit-ball form used by gauges. Requires a
    /// positive offset.
    pub fn unit_normal(&self) -> Point {
        self.normal.div(&self.offset)
    }
}

#[derive(Clone, Debug)]
pub struct Facet {
    pub halfspace: HalfSpace,
    /// Vertex ids, counterclockwise when seen from outside.
    pub cycle: Vec<usize>,
    /// Edge ids, `edges[i]` joins `cycle[i]` and `cycle[i + 1]`.
    pub edges: Vec<usize>,
    /// Facets sharing an edge, aligned with `edges`.
    pub neighbors: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub facets: [usize; 2],
}

/// A face of a 3-polytope, by dimension.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FaceId {
    Vertex(usize),
    Edge(usize),
    Facet(usize),
}

impl FaceId {
    pub fn dim(self) -> usize {
        match self {
            FaceId::Vertex(_) => 0,
            FaceId::Edge(_) => 1,
            FaceId::Facet(_) => 2,
        }
    }
}

/// Vertices, edges and facets of a full-dimensional polytope in `R^3`, with
/// incidences and active facet sets.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub vertices: Vec<Point>,
    pub edges: Vec<Edge>,
    pub facets: Vec<Facet>,
    pub vertex_facets: Vec<Vec<usize>>,
    pub vertex_edges: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn halfspaces(&self) -> impl Iterator<Item = &HalfSpace> {
        self.facets.iter().map(|f| &f.halfspace)
    }

    pub fn face_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.facets.len()
    }

    /// All faces, vertices first, then edges, then facets.
    pub fn faces(&self) -> Vec<FaceId> {
        (0..self.vertices.len())
            .map(FaceId::Vertex)
            .chain((0..self.edges.len()).map(FaceId::Edge))
            .chain((0..self.facets.len()).map(FaceId::Facet))
            .collect()
    }

    /// Active facet set `A(F)`: the facets containing `face`, sorted.
    pub fn active(&self, face: FaceId) -> Vec<usize> {
        match face {
            FaceId::Vertex(v) => self.vertex_facets[v].clone(),
            FaceId::Edge(e) => {
                let mut f = self.edges[e].facets.to_vec();
                f.sort_unstable();
                f
            }
            FaceId::Facet(f) => vec![f],
        }
    }

    /// Vertex ids of a face; facets keep their cyclic order.
    pub fn face_vertices(&self, face: FaceId) -> Vec<usize> {
        match face {
            FaceId::Vertex(v) => vec![v],
            FaceId::Edge(e) => self.edges[e].vertices.to_vec(),
            FaceId::Facet(f) => self.facets[f].cycle.clone(),
        }
    }

    /// Faces one dimension down.
    pub fn boundary(&self, face: FaceId) -> Vec<FaceId> {
        match face {
            FaceId::Vertex(_) => Vec::new(),
            FaceId::Edge(e) => self.edges[e].vertices.iter().map(|&v| FaceId::Vertex(v)).collect(),
            FaceId::Facet(f) => self.facets[f].edges.iter().map(|&e| FaceId::Edge(e)).collect(),
        }
    }

    /// Faces one dimension up.
    pub fn coboundary(&self, face: FaceId) -> Vec<FaceId> {
        match face {
            FaceId::Vertex(v) => self.vertex_edges[v].iter().map(|&e| FaceId::Edge(e)).collect(),
            FaceId::Edge(e) => self.edges[e].facets.iter().map(|&f| FaceId::Facet(f)).collect(),
            FaceId::Facet(_) => Vec::new(),
        }
    }

    pub fn barycenter(&self, face: FaceId) -> Point {
        let vs = self.face_vertices(face);
        Point::barycenter(vs.iter().map(|&v| &self.vertices[v]))
    }

    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }
}

/// Affine dimension of a point set (at most 3), and a witness basis.
pub fn affine_dim(points: &[&Point]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let mut basis: Vec<Point> = Vec::new();
    for p in &points[1..] {
        let d = *p - *first;
        let independent = match basis.len() {
            0 => !d.is_zero(),
            1 => !basis[0].cross(&d).is_zero(),
            2 => !basis[0].cross(&basis[1]).dot(&d).is_zero(),
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis.len()
}

fn cross2(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Strictly convex 2D hull (Andrew's monotone chain); returns indices into
/// `pts`, counterclockwise, with collinear points removed.
pub fn hull2d(pts: &[(Rational, Rational)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && !cross2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]).is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !cross2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]).is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Coordinate to drop when projecting a plane with this normal to 2D.
pub fn dominant_axis(normal: &Point) -> usize {
    (0..3).max_by(|&a, &b| normal[a].abs().cmp(&normal[b].abs())).unwrap()
}

pub fn project2(p: &Point, drop: usize) -> (Rational, Rational) {
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    (p[keep[0]].clone(), p[keep[1]].clone())
}

/// Ordered facet polygon for points lying on the plane of `normal`,
/// counterclockwise seen from the side `normal` points to.
pub fn planar_cycle(points: &[&Point], normal: &Point) -> Vec<usize> {
    let drop = dominant_axis(normal);
    let pts: Vec<_> = points.iter().map(|p| project2(p, drop)).collect();
    let mut cyc = hull2d(&pts);
    if cyc.len() >= 3 {
        let (a, b, c) = (points[cyc[0]], points[cyc[1]], points[cyc[2]]);
        let turn = (b - a).cross(&(c - b)).dot(normal);
        if turn.is_negative() {
            cyc.reverse();
        }
    }
    cyc
}

/// Rotate a plane about the line through `u` with direction `d` until it
/// touches the point set. `w` is a reference point in the starting plane,
/// off the line; points with `skip` set are ignored. Returns the outward
/// normal of the wrapped plane.
fn wrap(points: &[Point], u: &Point, d: &Point, w: &Point, skip: impl Fn(&Point) -> bool) -> Option<Point> {
    let wu = w - u;
    let orient = |n: Point| -> Point {
        let s = n.dot(&wu);
        debug_assert!(!s.is_zero(), "reference point on candidate plane");
        if s.is_positive() {
            -&n
        } else {
            n
        }
    };
    let mut best: Option<Point> = None;
    for q in points {
        if skip(q) {
            continue;
        }
        let qu = q - u;
        let n = d.cross(&qu);
        if n.is_zero() {
            continue;
        }
        let replace = match &best {
            None => true,
            Some(b) => b.dot(&qu).is_positive(),
        };
        if replace {
            best = Some(orient(n));
        }
    }
    best
}

fn initial_facet(points: &[Point]) -> HalfSpace {
    // points are sorted, so points[0] is the lexicographic minimum: a vertex
    let u = &points[0];
    let mut plane = HalfSpace::through(&Point::from_ints(&[-1, 0, 0]), u);
    loop {
        let contact: Vec<&Point> = points.iter().filter(|p| plane.on_boundary(p)).collect();
        let n = plane.normal.clone();
        let d = match affine_dim(&contact) {
            2 => return plane,
            1 => {
                let v = contact.iter().find(|p| **p != u).unwrap();
                *v - u
            }
            _ => (0..3)
                .map(|k| {
                    let mut c = Point::zeros(3);
                    c.0[k] = Rational::from_integer(1.into());
                    n.cross(&c)
                })
                .find(|c| !c.is_zero())
                .unwrap(),
        };
        let w = u + &n.cross(&d);
        let current = plane.clone();
        let normal = wrap(points, u, &d, &w, |q| current.on_boundary(q))
            .expect("full-dimensional input always wraps");
        plane = HalfSpace::through(&normal, u);
    }
}

/// Exact convex hull of a full-dimensional point set in `R^3` together with
/// its face lattice. Interior and non-extreme boundary points are dropped.
pub fn hull_and_lattice(input: &[Point]) -> Result<FaceLattice> {
    for p in input {
        if p.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: p.dim() });
        }
    }
    let mut points: Vec<Point> = input.to_vec();
    points.sort();
    points.dedup();
    let refs: Vec<&Point> = points.iter().collect();
    if points.len() < 4 || affine_dim(&refs) < 3 {
        return Err(Error::DegenerateInput(format!(
            "{} distinct points do not span R^3",
            points.len()
        )));
    }

    let first = initial_facet(&points);
    let mut planes: Vec<HalfSpace> = vec![first.clone()];
    let mut plane_index: BTreeMap<HalfSpace, usize> = BTreeMap::from([(first, 0)]);
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut edge_facets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);

    while let Some(f) = queue.pop_front() {
        let plane = planes[f].clone();
        let contact: Vec<usize> = (0..points.len()).filter(|&i| plane.on_boundary(&points[i])).collect();
        let contact_pts: Vec<&Point> = contact.iter().map(|&i| &points[i]).collect();
        let cyc: Vec<usize> = planar_cycle(&contact_pts, &plane.normal).into_iter().map(|k| contact[k]).collect();
        debug_assert!(cyc.len() >= 3);
        let k = cyc.len();
        for i in 0..k {
            let (a, b) = (cyc[i], cyc[(i + 1) % k]);
            let key = (a.min(b), a.max(b));
            if let Some(list) = edge_facets.get_mut(&key) {
                list.push(f);
                continue;
            }
            let d = &points[b] - &points[a];
            let w = &points[cyc[(i + 2) % k]];
            let normal = wrap(&points, &points[a], &d, w, |q| plane.on_boundary(q))
                .expect("every facet edge has a neighbouring facet");
            let neighbor = HalfSpace::through(&normal, &points[a]);
            if !plane_index.contains_key(&neighbor) {
                plane_index.insert(neighbor.clone(), planes.len());
                queue.push_back(planes.len());
                planes.push(neighbor);
            }
            edge_facets.insert(key, vec![f]);
        }
        cycles.push(cyc);
    }
    debug_assert!(edge_facets.values().all(|v| v.len() == 2));

    // canonical numbering: vertices lexicographic, facets by halfspace
    let mut used: Vec<usize> = cycles.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let vertices: Vec<Point> = used.iter().map(|&i| points[i].clone()).collect();
    let remap = |i: usize| used.binary_search(&i).unwrap();

    let mut order: Vec<usize> = (0..planes.len()).collect();
    order.sort_by(|&a, &b| planes[a].cmp(&planes[b]));
    let mut facet_rank = vec![0; planes.len()];
    for (rank, &f) in order.iter().enumerate() {
        facet_rank[f] = rank;
    }

    let mut edge_map: BTreeMap<(usize, usize), [usize; 2]> = BTreeMap::new();
    for ((a, b), fs) in &edge_facets {
        let (a, b) = (remap(*a), remap(*b));
        let mut pair = [facet_rank[fs[0]], facet_rank[fs[1]]];
        pair.sort_unstable();
        edge_map.insert((a.min(b), a.max(b)), pair);
    }
    let edges: Vec<Edge> =
        edge_map.iter().map(|(&(a, b), &facets)| Edge { vertices: [a, b], facets }).collect();
    let edge_id = |a: usize, b: usize| -> usize {
        let key = (a.min(b), a.max(b));
        edges.binary_search_by(|e| (e.vertices[0], e.vertices[1]).cmp(&key)).unwrap()
    };

    let mut facets: Vec<Facet> = Vec::with_capacity(planes.len());
    for &f in &order {
        let cycle: Vec<usize> = cycles[f].iter().map(|&i| remap(i)).collect();
        let k = cycle.len();
        let edges_of: Vec<usize> = (0..k).map(|i| edge_id(cycle[i], cycle[(i + 1) % k])).collect();
        let me = facet_rank[f];
        let neighbors = edges_of
            .iter()
            .map(|&e| {
                let [p, q] = edges[e].facets;
                if p == me {
                    q
                } else {
                    p
                }
            })
            .collect();
        facets.push(Facet { halfspace: planes[f].clone(), cycle, edges: edges_of, neighbors });
    }

    let mut vertex_facets = vec![Vec::new(); vertices.len()];
    for (fi, f) in facets.iter().enumerate() {
        for &v in &f.cycle {
            vertex_facets[v].push(fi);
        }
    }
    let mut vertex_edges = vec![Vec::new(); vertices.len()];
    for (ei, e) in edges.iter().enumerate() {
        for &v in &e.vertices {
            vertex_edges[v].push(ei);
        }
    }

    Ok(FaceLattice { vertices, edges, facets, vertex_facets, vertex_edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[[i64; 3]]) -> Vec<Point> {
        raw.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn tetrahedron_lattice() {
        let lat = hull_and_lattice(&pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!((lat.vertices.len(), lat.edges.len(), lat.facets.len()), (4, 6, 4));
    }

    #[test]
    fn interior_and_coplanar_points_are_dropped() {
        let mut raw = vec![];
        for x in [-1, 0, 1] {
            for y in [-1, 0, 1] {
                for z in [-1, 0, 1] {
                    raw.push([x, y, z]);
                }
            }
        }
        let lat = hull_and_lattice(&pts(&raw)).unwrap();
        assert_eq!((lat.vertices.len(), lat.edges.len(), lat.facets.len()), (8, 12, 6));
        for f in &lat.facets {
            assert_eq!(f.cycle.len(), 4);
        }
    }

    #[test]
    fn flat_input_is_degenerate() {
        let err = hull_and_lattice(&pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]])).unwrap_err();
        assert!(matches!(err, Error::DegenerateInput(_)));
    }

    #[test]
    fn facet_cycles_are_counterclockwise_from_outside() {
        let lat = hull_and_lattice(&pts(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]))
            .unwrap();
        for f in &lat.facets {
            let v: Vec<&Point> = f.cycle.iter().map(|&i| &lat.vertices[i]).collect();
            let turn = (v[1] - v[0]).cross(&(v[2] - v[1])).dot(&f.halfspace.normal);
            assert!(turn.is_positive());
        }
    }

    #[test]
    fn hull2d_removes_collinear() {
        let r = |a: i64, b: i64| (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let p = vec![r(0, 0), r(1, 0), r(2, 0), r(2, 2), r(0, 2), r(1, 1)];
        let h = hull2d(&p);
        assert_eq!(h.len(), 4);
    }
}

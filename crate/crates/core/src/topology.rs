//! Embedded polyhedral complexes and their combinatorial topology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::kernel::{Point, Rational};

/// A finite complex of points, segments and convex polygons with exact
/// coordinates.
///
/// Vertices are sorted lexicographically, edges are sorted index pairs with
/// `a < b`, and each polygon is a cycle starting at its smallest vertex and
/// running towards its smaller neighbour. Two complexes with the same cells
/// are therefore equal as values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CellComplex {
    pub vertices: Vec<Point>,
    pub edges: Vec<[usize; 2]>,
    pub polygons: Vec<Vec<usize>>,
}

/// Collects cells by coordinates and closes them under taking faces.
#[derive(Default)]
pub struct ComplexBuilder {
    points: BTreeSet<Point>,
    segments: BTreeSet<(Point, Point)>,
    polygons: BTreeSet<Vec<Point>>,
}

fn canonical_cycle<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    let n = cycle.len();
    let start = (0..n).min_by(|&i, &j| cycle[i].cmp(&cycle[j])).unwrap();
    let fwd = &cycle[(start + 1) % n];
    let bwd = &cycle[(start + n - 1) % n];
    if fwd <= bwd {
        (0..n).map(|k| cycle[(start + k) % n].clone()).collect()
    } else {
        (0..n).map(|k| cycle[(start + n - k) % n].clone()).collect()
    }
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point(&mut self, p: Point) {
        self.points.insert(p);
    }

    pub fn add_segment(&mut self, a: Point, b: Point) {
        if a == b {
            self.add_point(a);
            return;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.points.insert(a.clone());
        self.points.insert(b.clone());
        self.segments.insert((a, b));
    }

    /// Adds a polygon given as a cycle of distinct points, with its edges
    /// and vertices.
    pub fn add_polygon(&mut self, cycle: Vec<Point>) {
        assert!(cycle.len() >= 3, "polygon needs at least three vertices");
        for i in 0..cycle.len() {
            self.add_segment(cycle[i].clone(), cycle[(i + 1) % cycle.len()].clone());
        }
        self.polygons.insert(canonical_cycle(&cycle));
    }

    /// A cell by its vertex list: one point, a segment, or a polygon cycle.
    pub fn add_cell(&mut self, mut cell: Vec<Point>) {
        match cell.len() {
            0 => {}
            1 => self.add_point(cell.pop().unwrap()),
            2 => {
                let b = cell.pop().unwrap();
                let a = cell.pop().unwrap();
                self.add_segment(a, b);
            }
            _ => self.add_polygon(cell),
        }
    }

    pub fn build(self) -> CellComplex {
        let vertices: Vec<Point> = self.points.into_iter().collect();
        let index = |p: &Point| vertices.binary_search(p).unwrap();
        let mut edges: Vec<[usize; 2]> = self.segments.iter().map(|(a, b)| [index(a), index(b)]).collect();
        edges.sort_unstable();
        let mut polygons: Vec<Vec<usize>> =
            self.polygons.iter().map(|c| c.iter().map(index).collect()).collect();
        polygons.sort();
        CellComplex { vertices, edges, polygons }
    }
}

impl CellComplex {
    pub fn from_cells(cells: impl IntoIterator<Item = Vec<Point>>) -> CellComplex {
        let mut b = ComplexBuilder::new();
        for c in cells {
            b.add_cell(c);
        }
        b.build()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.polygons.len()
    }

    /// Highest cell dimension, `None` when empty.
    pub fn max_dim(&self) -> Option<usize> {
        if !self.polygons.is_empty() {
            Some(2)
        } else if !self.edges.is_empty() {
            Some(1)
        } else if !self.vertices.is_empty() {
            Some(0)
        } else {
            None
        }
    }

    /// Every cell as a vertex list, in cell order: vertices, edges, polygons.
    pub fn cells(&self) -> Vec<Vec<Point>> {
        let pts = |ids: &[usize]| ids.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>();
        self.vertices
            .iter()
            .map(|v| vec![v.clone()])
            .chain(self.edges.iter().map(|e| pts(e)))
            .chain(self.polygons.iter().map(|c| pts(c)))
            .collect()
    }

    /// Cells as sorted coordinate sets; convex cells are determined by them.
    pub fn cell_set(&self) -> BTreeSet<Vec<Point>> {
        self.cells()
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect()
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> CellComplex {
        CellComplex::from_cells(self.cells().into_iter().map(|c| c.iter().map(&f).collect()))
    }

    pub fn translate(&self, t: &Point) -> CellComplex {
        self.map_points(|p| p + t)
    }

    pub fn scale(&self, c: &Rational) -> CellComplex {
        self.map_points(|p| p.scale(c))
    }

    /// Union of cells, closed under faces.
    pub fn union(&self, other: &CellComplex) -> CellComplex {
        CellComplex::from_cells(self.cells().into_iter().chain(other.cells()))
    }

    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.polygons.len() as i64
    }

    fn edge_index(&self) -> BTreeMap<[usize; 2], usize> {
        self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }

    /// Polygon ids incident to each edge.
    pub fn edge_polygons(&self) -> Vec<Vec<usize>> {
        let index = self.edge_index();
        let mut out = vec![Vec::new(); self.edges.len()];
        for (pi, cyc) in self.polygons.iter().enumerate() {
            for k in 0..cyc.len() {
                let (a, b) = (cyc[k], cyc[(k + 1) % cyc.len()]);
                let key = if a < b { [a, b] } else { [b, a] };
                out[index[&key]].push(pi);
            }
        }
        out
    }

    pub fn vertex_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e[0]].push(i);
            out[e[1]].push(i);
        }
        out
    }

    /// Component id per vertex under edge adjacency, and the count.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e[0], e[1]);
        }
        uf.labels()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense component labels in order of first appearance.
    pub(crate) fn labels(&mut self) -> (usize, Vec<usize>) {
        let mut map = BTreeMap::new();
        let mut out = Vec::with_capacity(self.parent.len());
        for i in 0..self.parent.len() {
            let r = self.find(i);
            let next = map.len();
            out.push(*map.entry(r).or_insert(next));
        }
        (map.len(), out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "id")]
pub enum WitnessCell {
    Vertex(usize),
    Edge(usize),
    Polygon(usize),
}

/// A cell with no manifold neighbourhood.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub cell: WitnessCell,
    pub reason: String,
    /// For vertex witnesses in a 2-complex: number of connected pieces of
    /// the link.
    pub link_components: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Manifoldness {
    Manifold(usize),
    ManifoldWithBoundary(usize),
    NonManifold(Witness),
}

impl Manifoldness {
    pub fn is_manifold(&self) -> bool {
        !matches!(self, Manifoldness::NonManifold(_))
    }
}

fn nonmanifold(cell: WitnessCell, reason: impl Into<String>) -> Manifoldness {
    Manifoldness::NonManifold(Witness { cell, reason: reason.into(), link_components: None })
}

pub fn manifold_check(c: &CellComplex) -> Manifoldness {
    let vertex_edges = c.vertex_edges();
    match c.max_dim() {
        None | Some(0) => Manifoldness::Manifold(0),
        Some(1) => {
            let mut boundary = false;
            for (v, es) in vertex_edges.iter().enumerate() {
                match es.len() {
                    0 => return nonmanifold(WitnessCell::Vertex(v), "isolated vertex"),
                    1 => boundary = true,
                    2 => {}
                    d => return nonmanifold(WitnessCell::Vertex(v), format!("vertex of degree {d}")),
                }
            }
            if boundary {
                Manifoldness::ManifoldWithBoundary(1)
            } else {
                Manifoldness::Manifold(1)
            }
        }
        Some(_) => {
            let edge_polys = c.edge_polygons();
            let mut boundary = false;
            for (e, ps) in edge_polys.iter().enumerate() {
                match ps.len() {
                    0 => return nonmanifold(WitnessCell::Edge(e), "edge not on any polygon"),
                    1 => boundary = true,
                    2 => {}
                    k => return nonmanifold(WitnessCell::Edge(e), format!("edge on {k} polygons")),
                }
            }
            let index = c.edge_index();
            for (v, es) in vertex_edges.iter().enumerate() {
                if es.is_empty() {
                    return nonmanifold(WitnessCell::Vertex(v), "isolated vertex");
                }
                // Link of v: its edges, joined through the polygons at v.
                let local: BTreeMap<usize, usize> = es.iter().enumerate().map(|(i, &e)| (e, i)).collect();
                let mut uf = UnionFind::new(es.len());
                for cyc in &c.polygons {
                    let n = cyc.len();
                    if let Some(k) = cyc.iter().position(|&u| u == v) {
                        let (p, q) = (cyc[(k + n - 1) % n], cyc[(k + 1) % n]);
                        let e1 = index[&if p < v { [p, v] } else { [v, p] }];
                        let e2 = index[&if q < v { [q, v] } else { [v, q] }];
                        uf.union(local[&e1], local[&e2]);
                    }
                }
                let (parts, _) = uf.labels();
                if parts > 1 {
                    return Manifoldness::NonManifold(Witness {
                        cell: WitnessCell::Vertex(v),
                        reason: format!("vertex link has {parts} components"),
                        link_components: Some(parts),
                    });
                }
            }
            if boundary {
                Manifoldness::ManifoldWithBoundary(2)
            } else {
                Manifoldness::Manifold(2)
            }
        }
    }
}

/// Boundary cycles of a 2-manifold with boundary, as vertex id lists.
pub fn boundary_cycles(c: &CellComplex) -> Vec<Vec<usize>> {
    let edge_polys = c.edge_polygons();
    let bedges: Vec<[usize; 2]> =
        c.edges.iter().zip(&edge_polys).filter(|(_, p)| p.len() == 1).map(|(e, _)| *e).collect();
    let mut uf = UnionFind::new(c.vertices.len());
    let mut on_boundary = vec![false; c.vertices.len()];
    for e in &bedges {
        uf.union(e[0], e[1]);
        on_boundary[e[0]] = true;
        on_boundary[e[1]] = true;
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &on) in on_boundary.iter().enumerate() {
        if on {
            let r = uf.find(v);
            groups.entry(r).or_default().push(v);
        }
    }
    groups.into_values().collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Empty,
    Point,
    Segment,
    DegenerateCell(usize),
    Circle,
    Annulus,
    Disk,
    Sphere2,
    NonManifold,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::DegenerateCell(d) => write!(f, "DegenerateCell({d})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TopologyReport {
    pub vertices: usize,
    pub edges: usize,
    pub polygons: usize,
    pub components: usize,
    pub euler: i64,
    pub max_dim: Option<usize>,
    pub manifold: Manifoldness,
    pub boundary_circles: usize,
    pub classification: Classification,
}

pub fn classify(c: &CellComplex) -> TopologyReport {
    let (components, _) = c.connected_components();
    let euler = c.euler_characteristic();
    let manifold = manifold_check(c);
    let boundary_circles = match manifold {
        Manifoldness::ManifoldWithBoundary(2) => boundary_cycles(c).len(),
        _ => 0,
    };
    let (v, e, f) = (c.vertices.len(), c.edges.len(), c.polygons.len());
    use Classification as C;
    use Manifoldness as M;
    let classification = match (&manifold, components, euler) {
        _ if v == 0 => C::Empty,
        _ if v == 1 => C::Point,
        (M::ManifoldWithBoundary(1), 1, 1) => C::Segment,
        _ if f == 1 && e == c.polygons[0].len() && v == e => C::DegenerateCell(2),
        (M::Manifold(1), 1, 0) => C::Circle,
        (M::ManifoldWithBoundary(2), 1, 0) if boundary_circles == 2 => C::Annulus,
        (M::ManifoldWithBoundary(2), 1, 1) if boundary_circles == 1 => C::Disk,
        (M::Manifold(2), 1, 2) => C::Sphere2,
        (M::NonManifold(_), _, _) => C::NonManifold,
        _ => C::Other,
    };
    TopologyReport {
        vertices: v,
        edges: e,
        polygons: f,
        components,
        euler,
        max_dim: c.max_dim(),
        manifold,
        boundary_circles,
        classification,
    }
}

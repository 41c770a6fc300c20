//! Shadow boundary of a symmetric polytope under light parallel to `x`.
//!
//! Every face of the lattice gets a label from the signs of `a·x` over its
//! active facets `a`. All positive means the face is lit (`Plus`), all
//! negative means it is dark (`Minus`), anything else puts it on the shadow
//! boundary.

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::body::{PolePair, SymmetricBody};
use crate::error::{Error, Result};
use crate::kernel::hull::{dominant_axis, hull2d, project2, FaceLattice};
use crate::kernel::predicates::project_along;
use crate::kernel::{FaceId, Interval, Point, Rational};
use crate::topology::{CellComplex, UnionFind};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FaceLabel {
    Plus,
    Minus,
    Shadow,
}

/// A non-sharp shadow face and the segment its supporting line cuts from
/// the body.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonsharpWitness {
    pub face: FaceId,
    pub segment: (Point, Point),
}

#[derive(Clone, Debug)]
pub struct ShadowDecomposition {
    pub body: SymmetricBody,
    pub x: Point,
    /// One label per face, in `FaceLattice::faces` order.
    pub labels: Vec<FaceLabel>,
    pub shadow_faces: Vec<FaceId>,
    pub shadow_complex: CellComplex,
    pub sharp: bool,
    pub sharp_faces: Vec<FaceId>,
    pub sharp_subcomplex: CellComplex,
    pub nonsharp_witness: Option<NonsharpWitness>,
    pub plus_boundary: CellComplex,
    pub minus_boundary: CellComplex,
    pub poles: PolePair,
}

pub(crate) fn face_position(lattice: &FaceLattice, face: FaceId) -> usize {
    match face {
        FaceId::Vertex(v) => v,
        FaceId::Edge(e) => lattice.vertices.len() + e,
        FaceId::Facet(f) => lattice.vertices.len() + lattice.edges.len() + f,
    }
}

/// Vertex coordinates of a face, facets in cyclic order.
pub fn face_cell(lattice: &FaceLattice, face: FaceId) -> Vec<Point> {
    lattice.face_vertices(face).into_iter().map(|v| lattice.vertices[v].clone()).collect()
}

fn complex_of(lattice: &FaceLattice, faces: impl IntoIterator<Item = FaceId>) -> CellComplex {
    CellComplex::from_cells(faces.into_iter().map(|f| face_cell(lattice, f)))
}

struct Signs {
    pos: bool,
    neg: bool,
    zero: bool,
}

fn active_signs(lattice: &FaceLattice, dots: &[Rational], face: FaceId) -> Signs {
    let mut s = Signs { pos: false, neg: false, zero: false };
    for a in lattice.active(face) {
        let d = &dots[a];
        if d.is_positive() {
            s.pos = true;
        } else if d.is_negative() {
            s.neg = true;
        } else {
            s.zero = true;
        }
    }
    s
}

pub fn decompose(body: &SymmetricBody, x: &Point) -> Result<ShadowDecomposition> {
    if x.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let lattice = &body.lattice;
    let dots: Vec<Rational> = lattice.facets.iter().map(|f| f.halfspace.normal.dot(x)).collect();
    let faces = lattice.faces();
    let signs: Vec<Signs> = faces.iter().map(|&f| active_signs(lattice, &dots, f)).collect();
    let labels: Vec<FaceLabel> = signs
        .iter()
        .map(|s| match (s.pos, s.neg, s.zero) {
            (true, false, false) => FaceLabel::Plus,
            (false, true, false) => FaceLabel::Minus,
            _ => FaceLabel::Shadow,
        })
        .collect();
    let pick = |pred: &dyn Fn(&Signs, FaceLabel) -> bool| -> Vec<FaceId> {
        faces.iter().zip(&signs).zip(&labels).filter(|((_, s), &l)| pred(s, l)).map(|((&f, _), _)| f).collect()
    };
    let shadow_faces = pick(&|_, l| l == FaceLabel::Shadow);
    let sharp_faces = pick(&|s, l| l == FaceLabel::Shadow && s.pos && s.neg);
    let plus_faces = pick(&|s, _| s.pos && (s.neg || s.zero));
    let minus_faces = pick(&|s, _| s.neg && (s.pos || s.zero));
    let sharp = sharp_faces.len() == shadow_faces.len();
    let nonsharp_witness = if sharp {
        None
    } else {
        let face = shadow_faces
            .iter()
            .rev()
            .find(|f| !sharp_faces.contains(f))
            .copied()
            .expect("a non-sharp shadow face");
        let c = lattice.barycenter(face);
        let segment = match body.line_intersection(&c, x)? {
            Interval::Segment(lo, hi) => (c.add_scaled(x, &lo), c.add_scaled(x, &hi)),
            other => unreachable!("non-sharp face cut in {other:?}"),
        };
        Some(NonsharpWitness { face, segment })
    };
    Ok(ShadowDecomposition {
        body: body.clone(),
        x: x.clone(),
        shadow_complex: complex_of(lattice, shadow_faces.iter().copied()),
        sharp_subcomplex: complex_of(lattice, sharp_faces.iter().copied()),
        plus_boundary: complex_of(lattice, plus_faces),
        minus_boundary: complex_of(lattice, minus_faces),
        poles: body.poles(x)?,
        labels,
        shadow_faces,
        sharp,
        sharp_faces,
        nonsharp_witness,
    })
}

impl ShadowDecomposition {
    pub fn label(&self, face: FaceId) -> FaceLabel {
        self.labels[face_position(&self.body.lattice, face)]
    }

    /// Faces carrying `label`.
    pub fn faces_with(&self, label: FaceLabel) -> Vec<FaceId> {
        self.body.lattice.faces().into_iter().filter(|&f| self.label(f) == label).collect()
    }

    /// Closure boundary of the lit part, `bd(cl K+)`.
    pub fn positive_closure_boundary(&self) -> &CellComplex {
        &self.plus_boundary
    }

    pub fn negative_closure_boundary(&self) -> &CellComplex {
        &self.minus_boundary
    }

    /// Sharp points: the 0-dimensional sharp faces.
    pub fn sharp_points(&self) -> Vec<Point> {
        self.sharp_faces
            .iter()
            .filter_map(|&f| match f {
                FaceId::Vertex(v) => Some(self.body.lattice.vertices[v].clone()),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let lattice = &self.body.lattice;
        let faces: Vec<Value> = lattice
            .faces()
            .into_iter()
            .map(|f| {
                let id = match f {
                    FaceId::Vertex(i) | FaceId::Edge(i) | FaceId::Facet(i) => i,
                };
                json!({
                    "id": id,
                    "dim": f.dim(),
                    "vertex_ids": lattice.face_vertices(f),
                    "label": self.label(f),
                })
            })
            .collect();
        let pts = |ps: &[Point]| ps.iter().map(Point::to_strings).collect::<Vec<_>>();
        let cycles = |c: &CellComplex| -> Vec<Vec<Vec<String>>> {
            let (n, comp) = c.connected_components();
            (0..n)
                .map(|k| {
                    let vs: Vec<Point> =
                        c.vertices.iter().zip(&comp).filter(|(_, &l)| l == k).map(|(p, _)| p.clone()).collect();
                    pts(&vs)
                })
                .collect()
        };
        json!({
            "body": self.body.name,
            "direction": self.x.to_strings(),
            "faces": faces,
            "shadow": {
                "vertices": self.shadow_complex.vertices.len(),
                "edges": self.shadow_complex.edges.len(),
                "facets": self.shadow_complex.polygons.len(),
            },
            "sharp": self.sharp,
            "sharp_points": pts(&self.sharp_points()),
            "poles": [self.poles.positive.to_strings(), self.poles.negative.to_strings()],
            "plus_boundary_cycles": cycles(&self.plus_boundary),
            "minus_boundary_cycles": cycles(&self.minus_boundary),
        })
    }
}

/// Components of `bd K` with the faces of `sub` removed, where faces are
/// adjacent when one lies in the boundary of the other.
pub fn separation_components(body: &SymmetricBody, sub: &CellComplex) -> usize {
    let lattice = &body.lattice;
    let removed = sub.cell_set();
    let faces = lattice.faces();
    let keep: Vec<bool> = faces
        .iter()
        .map(|&f| {
            let mut c = face_cell(lattice, f);
            c.sort();
            !removed.contains(&c)
        })
        .collect();
    let mut uf = UnionFind::new(faces.len());
    for (i, &f) in faces.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        for g in lattice.boundary(f) {
            let j = face_position(lattice, g);
            if keep[j] {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = (0..faces.len()).filter(|&i| keep[i]).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Whether `sub`, projected along `x`, is exactly the boundary of the
/// projected body.
pub fn projection_covers(body: &SymmetricBody, x: &Point, sub: &CellComplex) -> Result<bool> {
    let drop = dominant_axis(x);
    let flat = |p: &Point| -> Result<(Rational, Rational)> { Ok(project2(&project_along(x, p)?, drop)) };
    let pts: Vec<(Rational, Rational)> = body.vertices().iter().map(flat).collect::<Result<_>>()?;
    let order = hull2d(&pts);
    let poly: Vec<&(Rational, Rational)> = order.iter().map(|&i| &pts[i]).collect();
    let n = poly.len();
    let cross = |o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    // Parameter of q along hull edge k, if q lies on it.
    let on_edge = |k: usize, q: &(Rational, Rational)| -> Option<Rational> {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        if !cross(a, b, q).is_zero() {
            return None;
        }
        let (dx, dy) = (&b.0 - &a.0, &b.1 - &a.1);
        let t = ((&q.0 - &a.0) * &dx + (&q.1 - &a.1) * &dy) / (&dx * &dx + &dy * &dy);
        (!t.is_negative() && t <= Rational::from_integer(1.into())).then_some(t)
    };
    let on_boundary = |q: &(Rational, Rational)| (0..n).any(|k| on_edge(k, q).is_some());
    let mut coverage: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); n];
    for cell in sub.cells() {
        let img: Vec<(Rational, Rational)> = cell.iter().map(flat).collect::<Result<_>>()?;
        let centre = {
            let len = Rational::from_integer((img.len() as i64).into());
            let sx = img.iter().fold(Rational::zero(), |s, p| s + &p.0) / &len;
            let sy = img.iter().fold(Rational::zero(), |s, p| s + &p.1) / &len;
            (sx, sy)
        };
        if !img.iter().all(on_boundary) || !on_boundary(&centre) {
            return Ok(false);
        }
        if img.len() == 2 {
            for (k, cov) in coverage.iter_mut().enumerate() {
                if let (Some(s), Some(t)) = (on_edge(k, &img[0]), on_edge(k, &img[1])) {
                    cov.push(if s <= t { (s, t) } else { (t, s) });
                }
            }
        }
    }
    for mut cov in coverage {
        cov.sort();
        let mut reach = Rational::zero();
        for (s, t) in cov {
            if s > reach {
                return Ok(false);
            }
            if t > reach {
                reach = t;
            }
        }
        if reach != Rational::from_integer(1.into()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn projection_check(d: &ShadowDecomposition) -> Result<bool> {
    projection_covers(&d.body, &d.x, &d.shadow_complex)
}

/// Pointwise label of a boundary point straight from the definition: move
/// by a step `tau` below the first constraint crossing and test strict
/// interiority on either side.
pub fn definition_label(body: &SymmetricBody, x: &Point, y: &Point) -> FaceLabel {
    let mut tau: Option<Rational> = None;
    for h in &body.halfspaces {
        let slack = &h.offset - h.normal.dot(y);
        let rate = h.normal.dot(x).abs();
        if slack.is_positive() && rate.is_positive() {
            let t = slack / rate;
            if tau.as_ref().is_none_or(|u| &t < u) {
                tau = Some(t);
            }
        }
    }
    let tau = tau.unwrap_or_else(|| Rational::from_integer(1.into())) / Rational::from_integer(2.into());
    let interior = |p: &Point| body.halfspaces.iter().all(|h| h.eval(p).is_negative());
    if interior(&y.add_scaled(x, &-&tau)) {
        FaceLabel::Plus
    } else if interior(&y.add_scaled(x, &tau)) {
        FaceLabel::Minus
    } else {
        FaceLabel::Shadow
    }
}

//! The bisector `H_x = {y : ‖y‖ = ‖y − x‖}` as a stack of scaled parameter
//! spheres, its manifold verdict, and mesh export.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::body::SymmetricBody;
use crate::error::{Error, Result};
use crate::kernel::rational::{format_rational, int};
use crate::kernel::{Point, Rational};
use crate::report::write_atomic;
use crate::spheres::{critical_lambdas, gamma_complex, lambda_zero};
use crate::topology::{classify, Classification, CellComplex};

/// `λ·γ_λ`, the level set of the bisector at distance `λ`.
#[derive(Clone, Debug)]
pub struct BisectorSlice {
    pub lambda: Rational,
    pub scaled_complex: CellComplex,
}

/// Whether `‖y‖ = ‖y − x‖`, and the common value.
pub fn membership(body: &SymmetricBody, x: &Point, y: &Point) -> Result<(bool, Rational)> {
    if x.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let a = body.gauge(y);
    let b = body.gauge(&(y - x));
    Ok((a == b, a))
}

pub fn slices(body: &SymmetricBody, x: &Point, lambdas: &[Rational]) -> Result<Vec<BisectorSlice>> {
    lambdas
        .par_iter()
        .map(|l| {
            let g = gamma_complex(body, x, l)?;
            Ok(BisectorSlice { lambda: l.clone(), scaled_complex: g.complex.scale(l) })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BisectorVerdict {
    pub manifold: bool,
    pub reason: String,
    /// Probe values and their classes, in increasing λ.
    pub slice_reports: Vec<(Rational, Classification)>,
    pub criticals: Vec<Rational>,
    /// The interval `(a, b]` holding the first failing probe.
    pub failing_interval: Option<(Rational, Rational)>,
}

impl BisectorVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "manifold": self.manifold,
            "reason": self.reason,
            "failing_interval": self.failing_interval.as_ref().map(|(a, b)| [format_rational(a), format_rational(b)]),
            "slices": self.slice_reports.iter().map(|(l, c)| json!({
                "lambda": format_rational(l),
                "classification": c,
            })).collect::<Vec<_>>(),
            "criticals": self.criticals.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// Probe values for a sweep over `(λ₀, lambda_max]`: each critical value
/// and the midpoint of each gap, skipping `λ₀` itself.
pub fn probe_lambdas(criticals: &[Rational], lambda_max: &Rational) -> Vec<(Rational, Rational, Rational)> {
    let mut ends = criticals.to_vec();
    if ends.last().is_some_and(|l| l < lambda_max) {
        ends.push(lambda_max.clone());
    }
    let mut out = Vec::new();
    for w in ends.windows(2) {
        let mid = (&w[0] + &w[1]) / int(2);
        out.push((mid, w[0].clone(), w[1].clone()));
        out.push((w[1].clone(), w[0].clone(), w[1].clone()));
    }
    out
}

/// The bisector is a 2-manifold exactly when every non-degenerate parameter
/// sphere is a circle; probes cover every critical interval.
pub fn manifold_verdict(body: &SymmetricBody, x: &Point, lambda_max: &Rational) -> Result<BisectorVerdict> {
    let l0 = lambda_zero(body, x)?;
    if lambda_max <= &l0 {
        return Err(Error::LambdaTooSmall { lambda: format_rational(lambda_max), lambda_zero: format_rational(&l0) });
    }
    let criticals = critical_lambdas(body, x, lambda_max)?;
    let probes = probe_lambdas(&criticals, lambda_max);
    let classes: Vec<Classification> = probes
        .par_iter()
        .map(|(l, _, _)| gamma_complex(body, x, l).map(|g| classify(&g.complex).classification))
        .collect::<Result<_>>()?;
    let failing = probes.iter().zip(&classes).find(|(_, c)| **c != Classification::Circle);
    let (manifold, reason, failing_interval) = match failing {
        None => (true, format!("all {} probes up to {} are circles", probes.len(), format_rational(lambda_max)), None),
        Some(((l, a, b), c)) => (
            false,
            format!(
                "γ_λ is {c} at λ = {}, in the critical interval ({}, {}]",
                format_rational(l),
                format_rational(a),
                format_rational(b)
            ),
            Some((a.clone(), b.clone())),
        ),
    };
    Ok(BisectorVerdict {
        manifold,
        reason,
        slice_reports: probes.into_iter().map(|(l, _, _)| l).zip(classes).collect(),
        criticals,
        failing_interval,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl FromStr for MeshFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            _ => Err(Error::Parse(format!("unknown mesh format `{s}`"))),
        }
    }
}

impl MeshFormat {
    /// Format implied by a file extension.
    pub fn from_path(path: &Path) -> Option<MeshFormat> {
        path.extension().and_then(|e| e.to_str()).and_then(|e| e.parse().ok())
    }
}

/// A float with 12 significant digits, without trailing zeros.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let decimals = (11 - v.abs().log10().floor() as i32).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

struct Mesh {
    vertices: Vec<[f64; 3]>,
    lines: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

fn mesh_of(complexes: &[CellComplex]) -> Mesh {
    let mut m = Mesh { vertices: Vec::new(), lines: Vec::new(), triangles: Vec::new() };
    for c in complexes {
        let base = m.vertices.len();
        m.vertices.extend(c.vertices.iter().map(Point::to_f64_3));
        for (e, polys) in c.edges.iter().zip(c.edge_polygons()) {
            if polys.is_empty() {
                m.lines.push([base + e[0], base + e[1]]);
            }
        }
        for cyc in &c.polygons {
            for k in 1..cyc.len() - 1 {
                m.triangles.push([base + cyc[0], base + cyc[k], base + cyc[k + 1]]);
            }
        }
    }
    m
}

pub fn mesh_text(complexes: &[CellComplex], format: MeshFormat) -> Result<String> {
    if complexes.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let m = mesh_of(complexes);
    let mut out = String::new();
    let coords = |v: &[f64; 3]| v.iter().map(|&c| format_sig12(c)).collect::<Vec<_>>().join(" ");
    match format {
        MeshFormat::Obj => {
            for v in &m.vertices {
                writeln!(out, "v {}", coords(v)).unwrap();
            }
            for l in &m.lines {
                writeln!(out, "l {} {}", l[0] + 1, l[1] + 1).unwrap();
            }
            for t in &m.triangles {
                writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
            }
        }
        MeshFormat::Ply => {
            writeln!(out, "ply\nformat ascii 1.0").unwrap();
            writeln!(out, "element vertex {}", m.vertices.len()).unwrap();
            writeln!(out, "property double x\nproperty double y\nproperty double z").unwrap();
            writeln!(out, "element edge {}", m.lines.len()).unwrap();
            writeln!(out, "property int vertex1\nproperty int vertex2").unwrap();
            writeln!(out, "element face {}", m.triangles.len()).unwrap();
            writeln!(out, "property list uchar int vertex_indices\nend_header").unwrap();
            for v in &m.vertices {
                writeln!(out, "{}", coords(v)).unwrap();
            }
            for l in &m.lines {
                writeln!(out, "{} {}", l[0], l[1]).unwrap();
            }
            for t in &m.triangles {
                writeln!(out, "3 {} {} {}", t[0], t[1], t[2]).unwrap();
            }
        }
    }
    Ok(out)
}

/// Write the complexes as one OBJ or PLY mesh: free edges as lines,
/// polygons fanned into triangles.
pub fn export_mesh(complexes: &[CellComplex], format: MeshFormat, path: &Path) -> Result<()> {
    let text = mesh_text(complexes, format)?;
    write_atomic(path, text.as_bytes())
}

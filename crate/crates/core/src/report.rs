//! JSON reports, λ sweeps and atomic file output.

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::body::SymmetricBody;
use crate::error::{Error, Result};
use crate::kernel::rational::format_rational;
use crate::kernel::{Point, Rational};
use crate::shadow::decompose;
use crate::spheres::{critical_lambdas, gamma_complex, hausdorff_distance, lambda_zero, ParameterSphere};
use crate::topology::{classify, CellComplex, Classification};

/// Write `bytes` to a temporary file next to `path`, then rename it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Face counts and symmetry data for a validated body.
pub fn body_report(body: &SymmetricBody) -> Value {
    let lat = &body.lattice;
    json!({
        "name": body.name,
        "dim": body.dim(),
        "centrally_symmetric": true,
        "origin_interior": true,
        "vertices": lat.vertices.len(),
        "edges": lat.edges.len(),
        "facets": lat.facets.len(),
        "euler": lat.vertices.len() as i64 - lat.edges.len() as i64 + lat.facets.len() as i64,
        "vertex_list": lat.vertices.iter().map(Point::to_strings).collect::<Vec<_>>(),
        "facet_normals": lat.halfspaces().map(|h| h.normal.to_strings()).collect::<Vec<_>>(),
    })
}

fn complex_json(c: &CellComplex) -> Value {
    json!({
        "vertices": c.vertices.iter().map(Point::to_strings).collect::<Vec<_>>(),
        "edges": c.edges,
        "cells2": c.polygons,
    })
}

pub fn sphere_report(body: &SymmetricBody, g: &ParameterSphere) -> Value {
    json!({
        "body": body.name,
        "direction": g.x.to_strings(),
        "lambda": format_rational(&g.lambda),
        "degenerate": g.degenerate,
        "topology": classify(&g.complex),
        "complex": complex_json(&g.complex),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub lambda: String,
    pub classification: Classification,
    pub euler: i64,
    pub components: usize,
    pub boundary_circles: usize,
    pub degenerate: bool,
    /// Sampled distance to the shadow boundary of `K` along `x`.
    pub hausdorff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub body: String,
    pub direction: Vec<String>,
    pub lambda_zero: String,
    pub shadow_classification: Classification,
    pub criticals: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Grid values where the classification differs from the previous row.
    pub transitions: Vec<String>,
}

/// Default sampling density for the Hausdorff column, per unit length.
pub const HAUSDORFF_DENSITY: f64 = 64.0;

/// Uniform grid of `steps` intervals on `[lo, hi]`, merged with the critical
/// values in range, clipped below at `λ₀`.
pub fn sweep_grid(lo: &Rational, hi: &Rational, steps: u32, criticals: &[Rational], l0: &Rational) -> Vec<Rational> {
    let steps = steps.max(1);
    let mut grid: Vec<Rational> =
        (0..=steps).map(|k| lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(steps))).collect();
    grid.extend(criticals.iter().filter(|c| *c >= lo && *c <= hi).cloned());
    grid.retain(|l| l >= l0);
    grid.sort();
    grid.dedup();
    grid
}

pub fn sweep(
    body: &SymmetricBody,
    x: &Point,
    lambda_min: &Rational,
    lambda_max: &Rational,
    steps: u32,
) -> Result<SweepReport> {
    let l0 = lambda_zero(body, x)?;
    if lambda_max < lambda_min {
        return Err(Error::LambdaOrder { lambda: format_rational(lambda_min), mu: format_rational(lambda_max) });
    }
    let criticals = if lambda_max > &l0 { critical_lambdas(body, x, lambda_max)? } else { vec![l0.clone()] };
    let grid = sweep_grid(lambda_min, lambda_max, steps, &criticals, &l0);
    let shadow = decompose(body, x)?;
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|l| {
            let g = gamma_complex(body, x, l)?;
            let r = classify(&g.complex);
            Ok(SweepRow {
                lambda: format_rational(l),
                classification: r.classification,
                euler: r.euler,
                components: r.components,
                boundary_circles: r.boundary_circles,
                degenerate: g.degenerate,
                hausdorff: hausdorff_distance(&g.complex, &shadow.shadow_complex, HAUSDORFF_DENSITY)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if i == 0 || rows[i - 1].classification != row.classification {
            transitions.push(row.lambda.clone());
        }
    }
    Ok(SweepReport {
        body: body.name.clone(),
        direction: x.to_strings(),
        lambda_zero: format_rational(&l0),
        shadow_classification: classify(&shadow.shadow_complex).classification,
        criticals: criticals.iter().map(format_rational).collect(),
        rows,
        transitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::builtin;
    use crate::kernel::rational::{int, ratio};

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn grid_merges_criticals_and_clips_at_lambda_zero() {
        let g = sweep_grid(&int(0), &int(2), 2, &[int(1), ratio(5, 4), int(7)], &int(1));
        assert_eq!(g, vec![int(1), ratio(5, 4), int(2)]);
    }

    #[test]
    fn cube_sweep_starts_degenerate() {
        let cube = builtin("cube", None).unwrap();
        let r = sweep(&cube, &Point::from_ints(&[2, 0, 0]), &int(1), &int(3), 4).unwrap();
        assert_eq!(r.lambda_zero, "1");
        assert!(r.rows[0].degenerate);
        assert_eq!(r.rows[0].classification, Classification::DegenerateCell(2));
        assert!(r.rows[1..].iter().all(|row| row.classification == Classification::Annulus && !row.degenerate));
        assert_eq!(r.transitions, vec!["1", "3/2"]);
    }
}

//! Property suite over random symmetric bodies.
//!
//! Each body is checked against the structural claims about shadow
//! boundaries and parameter spheres: the partition of the boundary, closure
//! and connectivity of the shadow, separation by `bd(cl K+)`, the
//! projection picture, the sphere/cylinder dichotomy, the lens identity for
//! parameter spheres, and the bounding maps.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::body::{random_direction, random_symmetric, SymmetricBody};
use crate::error::Result;
use crate::kernel::rational::{format_rational, int, ratio};
use crate::kernel::{FaceId, Point, Rational};
use crate::shadow::{decompose, definition_label, face_cell, projection_check, separation_components, FaceLabel};
use crate::spheres::{bounding_map, critical_lambdas, gamma_as_shadow_oracle, gamma_complex, lambda_zero};
use crate::topology::{boundary_cycles, classify, Classification, Manifoldness, TopologyReport};

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub body: String,
    pub direction: Vec<String>,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BodyOutcome {
    pub checks: usize,
    pub violations: Vec<Violation>,
    /// Observations that are reported but never asserted.
    pub findings: Vec<String>,
    pub separation_components: Option<usize>,
    pub shadow_class: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub bodies: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub findings: Vec<String>,
    /// How often each separation count was seen.
    pub separation_counts: BTreeMap<usize, usize>,
    pub shadow_classes: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which groups of properties to run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub spheres: bool,
    pub sweep: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { spheres: true, sweep: true }
    }
}

struct Ctx<'a> {
    body: &'a SymmetricBody,
    x: &'a Point,
    out: BodyOutcome,
}

impl Ctx<'_> {
    fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.out.checks += 1;
        if !ok {
            self.out.violations.push(Violation {
                body: self.body.name.clone(),
                direction: self.x.to_strings(),
                property: property.to_string(),
                detail: detail(),
            });
        }
    }
}

fn swap(l: FaceLabel) -> FaceLabel {
    match l {
        FaceLabel::Plus => FaceLabel::Minus,
        FaceLabel::Minus => FaceLabel::Plus,
        FaceLabel::Shadow => FaceLabel::Shadow,
    }
}

fn lattice_checks(c: &mut Ctx) {
    let lat = &c.body.lattice;
    for v in lat.vertices.iter() {
        let ok = lat.vertex_index(&-v).is_some() && c.body.gauge(v) == int(1);
        c.check("body.symmetric_vertices", ok, || format!("vertex {v}"));
    }
    for f in lat.faces() {
        let active: BTreeSet<usize> = lat.active(f).into_iter().collect();
        for v in lat.face_vertices(f) {
            let av: BTreeSet<usize> = lat.vertex_facets[v].iter().copied().collect();
            c.check("lattice.active_sets", av.is_superset(&active), || format!("{f:?} vertex {v}"));
        }
    }
    for (i, facet) in lat.facets.iter().enumerate() {
        let tight: BTreeSet<usize> =
            (0..lat.vertices.len()).filter(|&v| facet.halfspace.on_boundary(&lat.vertices[v])).collect();
        let own: BTreeSet<usize> = facet.cycle.iter().copied().collect();
        let inside = lat.vertices.iter().all(|v| facet.halfspace.contains(v));
        c.check("lattice.facet_planes", tight == own && inside, || format!("facet {i}"));
    }
}

fn shadow_checks(c: &mut Ctx) -> Result<Classification> {
    let body = c.body;
    let lat = &body.lattice;
    let d = decompose(body, c.x)?;
    let flipped = decompose(body, &-c.x)?;
    let by_cell: BTreeMap<Vec<Point>, FaceId> = lat
        .faces()
        .into_iter()
        .map(|f| {
            let mut k = face_cell(lat, f);
            k.sort();
            (k, f)
        })
        .collect();
    for f in lat.faces() {
        let label = d.label(f);
        let direct = definition_label(body, c.x, &lat.barycenter(f));
        c.check("labels.partition", direct == label, || format!("{f:?}: {label:?} vs pointwise {direct:?}"));
        let mut neg: Vec<Point> = face_cell(lat, f).iter().map(|p| -p).collect();
        neg.sort();
        let opposite = by_cell.get(&neg).map(|&g| d.label(g));
        c.check("labels.central_symmetry", opposite == Some(swap(label)), || format!("{f:?}"));
        c.check("labels.direction_flip", flipped.label(f) == swap(label), || format!("{f:?}"));
        if label == FaceLabel::Shadow {
            let closed = lat.boundary(f).into_iter().all(|g| d.label(g) == FaceLabel::Shadow);
            c.check("shadow.closed", closed, || format!("{f:?} has a non-shadow face"));
        }
    }
    let poles_ok = body.on_boundary(&d.poles.positive) && d.poles.negative == -&d.poles.positive;
    c.check("body.poles", poles_ok, || format!("pole {}", d.poles.positive));

    let s = classify(&d.shadow_complex);
    c.check("shadow.connected", s.components == 1, || format!("{} components", s.components));
    c.check("shadow.dimension", s.max_dim >= Some(1), || format!("max dim {:?}", s.max_dim));
    let sym = d.shadow_complex.map_points(|p| -p);
    c.check("shadow.symmetric", sym == d.shadow_complex, String::new);
    c.check("shadow.projection", projection_check(&d)?, || "projection is not the outline".into());

    let shadow_cells = d.shadow_complex.cell_set();
    for (name, sub) in [("plus", &d.plus_boundary), ("minus", &d.minus_boundary)] {
        let r = classify(sub);
        c.check("plus_boundary.subset", sub.cell_set().is_subset(&shadow_cells), || format!("{name} boundary"));
        c.check("plus_boundary.connected", r.components == 1, || format!("{name}: {} components", r.components));
        let pure = r.max_dim == Some(1) && sub.vertex_edges().iter().all(|e| !e.is_empty());
        c.check("plus_boundary.pure", pure, || format!("{name}: max dim {:?}", r.max_dim));
        let sep = separation_components(body, sub);
        c.check("plus_boundary.separates", sep >= 2, || format!("{name}: {sep} pieces"));
        if name == "plus" {
            c.out.separation_components = Some(sep);
        }
    }
    manifold_shape_checks(c, &s, &d.shadow_complex, &d.plus_boundary.vertices, &d.minus_boundary.vertices);
    if d.sharp != (d.sharp_faces.len() == d.shadow_faces.len()) {
        c.check("sharpness.flag", false, || "flag disagrees with the sharp faces".into());
    }
    Ok(s.classification)
}

fn manifold_shape_checks(
    c: &mut Ctx,
    r: &TopologyReport,
    complex: &crate::topology::CellComplex,
    plus: &[Point],
    minus: &[Point],
) {
    match r.manifold {
        Manifoldness::Manifold(1) => {
            c.check("shape.circle", r.classification == Classification::Circle, || {
                format!("1-manifold classified {}", r.classification)
            });
        }
        Manifoldness::ManifoldWithBoundary(2) => {
            c.check("shape.annulus", r.classification == Classification::Annulus, || {
                format!("2-manifold with boundary classified {}", r.classification)
            });
            let cycles: Vec<BTreeSet<Point>> = boundary_cycles(complex)
                .into_iter()
                .map(|cyc| cyc.into_iter().map(|v| complex.vertices[v].clone()).collect())
                .collect();
            let want: BTreeSet<BTreeSet<Point>> =
                [plus.iter().cloned().collect(), minus.iter().cloned().collect()].into_iter().collect();
            let got: BTreeSet<BTreeSet<Point>> = cycles.iter().cloned().collect();
            c.check("shape.boundary_circles", got == want, || "boundary circles differ from bd(cl K±)".into());
            let total: usize = cycles.iter().map(BTreeSet::len).sum();
            let union: BTreeSet<&Point> = cycles.iter().flatten().collect();
            c.check("shape.disjoint_circles", total == union.len(), || "boundary circles overlap".into());
        }
        _ => {}
    }
}

/// Points sampled on a complex: vertices, edge midpoints, polygon centres.
pub fn sample_points(c: &crate::topology::CellComplex) -> Vec<Point> {
    let mut out = c.vertices.clone();
    out.extend(c.edges.iter().map(|e| c.vertices[e[0]].midpoint(&c.vertices[e[1]])));
    out.extend(c.polygons.iter().map(|cyc| Point::barycenter(cyc.iter().map(|&v| &c.vertices[v]))));
    out
}

/// Image on the target sphere, identity where the section is a segment
/// through the point, and `p(λ,μ) ∘ p(μ,ν) = p(λ,ν)`.
pub fn bounding_map_checks(
    body: &SymmetricBody,
    x: &Point,
    levels: [&Rational; 3],
    points: &[Point],
) -> Result<Vec<(String, String)>> {
    let [lambda, mu, nu] = levels;
    let mut bad = Vec::new();
    let on = |y: &Point, l: &Rational| body.on_boundary(y) && body.on_boundary(&y.add_scaled(x, &-l.recip()));
    for p in points {
        let a = bounding_map(body, x, mu, nu, p)?;
        if !on(&a, mu) {
            bad.push(("bounding_map.image".into(), format!("{p} -> {a}")));
        }
        let b = bounding_map(body, x, lambda, mu, &a)?;
        let direct = bounding_map(body, x, lambda, nu, p)?;
        if !on(&direct, lambda) || !on(&b, lambda) {
            bad.push(("bounding_map.image".into(), format!("{p} -> {direct}")));
        }
        if b != direct {
            bad.push(("bounding_map.composition".into(), format!("{p}: {b} vs {direct}")));
        }
        if on(p, mu) && direct == *p {
            continue;
        }
        let m = crate::spheres::Meridian::new(body, x, p)?;
        let (lo, hi, beta) = m.sphere_section(mu);
        let (ap, bp) = m.coords(p);
        if lo != hi && bp == beta && lo <= ap && ap <= hi && on(p, mu) {
            let img = bounding_map(body, x, mu, nu, p)?;
            if img != *p && on(p, nu) {
                bad.push(("bounding_map.identity".into(), format!("{p} moved to {img}")));
            }
        }
    }
    Ok(bad)
}

fn sphere_checks(c: &mut Ctx) -> Result<()> {
    let (body, x) = (c.body, c.x);
    let l0 = lambda_zero(body, x)?;
    c.check("lambda_zero.closed_form", l0 == body.gauge(x) / int(2), String::new);
    for factor in [ratio(3, 2), int(3)] {
        let lambda = &l0 * &factor;
        let g = gamma_complex(body, x, &lambda)?;
        let t = g.shift();
        let gauges = g.complex.vertices.iter().all(|v| body.gauge(v) == int(1) && body.gauge(&(v - &t)) == int(1));
        c.check("sphere.gauges", gauges, || format!("λ = {}", format_rational(&lambda)));
        c.check("sphere.lens_symmetry", g.complex.map_points(|p| &t - p) == g.complex, || {
            format!("λ = {}", format_rational(&lambda))
        });
        let r = classify(&g.complex);
        c.check("sphere.connected", r.components == 1 && r.max_dim >= Some(1), || {
            format!("λ = {}: {} components, max dim {:?}", format_rational(&lambda), r.components, r.max_dim)
        });
        let (d, half) = gamma_as_shadow_oracle(body, x, &lambda)?;
        c.check("sphere.lens_identity", d.shadow_complex.translate(&half) == g.complex, || {
            format!("λ = {}", format_rational(&lambda))
        });
    }
    let (lambda, mu, nu) = (&l0 * ratio(5, 4), &l0 * int(2), &l0 * int(4));
    let g = gamma_complex(body, x, &nu)?;
    let pts: Vec<Point> = sample_points(&g.complex).into_iter().take(8).collect();
    let bad = bounding_map_checks(body, x, [&lambda, &mu, &nu], &pts)?;
    c.out.checks += pts.len();
    for (property, detail) in bad {
        c.check(&property, false, || detail);
    }
    Ok(())
}

/// Quartile probes of each critical interval share one topology; the
/// shadow is an annulus exactly when some parameter sphere is.
fn sweep_checks(c: &mut Ctx, shadow_class: Classification) -> Result<()> {
    let (body, x) = (c.body, c.x);
    let l0 = lambda_zero(body, x)?;
    let lmax = &l0 * int(64);
    let mut ends = critical_lambdas(body, x, &lmax)?;
    if ends.last().is_some_and(|l| l < &lmax) {
        ends.push(lmax.clone());
    }
    let mut classes = Vec::new();
    for w in ends.windows(2) {
        let probes: Vec<Rational> =
            [ratio(1, 4), ratio(1, 2), ratio(3, 4)].iter().map(|q| &w[0] + (&w[1] - &w[0]) * q).collect();
        let reports: Vec<TopologyReport> = probes
            .iter()
            .map(|l| gamma_complex(body, x, l).map(|g| classify(&g.complex)))
            .collect::<Result<_>>()?;
        let stable = reports.windows(2).all(|r| r[0] == r[1]);
        c.check("critical.stability", stable, || {
            format!("({}, {})", format_rational(&w[0]), format_rational(&w[1]))
        });
        classes.extend(reports.iter().map(|r| r.classification));
        let end = gamma_complex(body, x, &w[1])?;
        classes.push(classify(&end.complex).classification);
    }
    let some_annulus = classes.contains(&Classification::Annulus);
    c.check("spheres.annulus_iff", some_annulus == (shadow_class == Classification::Annulus), || {
        format!("shadow {shadow_class}, annulus among spheres: {some_annulus}")
    });
    let all_circles = classes.iter().all(|&k| k == Classification::Circle);
    if all_circles && shadow_class != Classification::Circle {
        c.out.findings.push(format!(
            "{} along {}: every sphere is a circle but the shadow is {shadow_class}",
            body.name, x
        ));
    }
    if shadow_class == Classification::Circle && !all_circles {
        let first = classes.iter().find(|&&k| k != Classification::Circle).unwrap();
        c.out.findings.push(format!(
            "{} along {}: shadow is a circle but some sphere is {first}",
            body.name, x
        ));
    }
    Ok(())
}

pub fn check_body(body: &SymmetricBody, x: &Point, opts: SuiteOptions) -> BodyOutcome {
    let mut c = Ctx { body, x, out: BodyOutcome::default() };
    let run = |c: &mut Ctx| -> Result<()> {
        lattice_checks(c);
        let class = shadow_checks(c)?;
        c.out.shadow_class = Some(class.to_string());
        if opts.spheres {
            sphere_checks(c)?;
        }
        if opts.sweep {
            sweep_checks(c, class)?;
        }
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.check("suite.error", false, || e.to_string());
    }
    c.out
}

/// The `i`-th body and direction of a seeded suite.
pub fn suite_case(seed: u64, i: usize) -> Result<(SymmetricBody, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
    let pairs = rng.gen_range(4..=9);
    let body = random_symmetric(rng.gen(), pairs)?;
    let x = random_direction(&body, &mut rng);
    Ok((body, x))
}

pub fn run_suite(count: usize, seed: u64, opts: SuiteOptions) -> Result<SuiteReport> {
    let cases: Vec<(SymmetricBody, Point)> = (0..count).map(|i| suite_case(seed, i)).collect::<Result<_>>()?;
    let outcomes: Vec<BodyOutcome> = cases.par_iter().map(|(b, x)| check_body(b, x, opts)).collect();
    let mut report = SuiteReport {
        bodies: count,
        checks: 0,
        violations: Vec::new(),
        findings: Vec::new(),
        separation_counts: BTreeMap::new(),
        shadow_classes: BTreeMap::new(),
    };
    for o in outcomes {
        report.checks += o.checks;
        report.violations.extend(o.violations);
        report.findings.extend(o.findings);
        if let Some(s) = o.separation_components {
            *report.separation_counts.entry(s).or_default() += 1;
        }
        if let Some(k) = o.shadow_class {
            *report.shadow_classes.entry(k).or_default() += 1;
        }
    }
    Ok(report)
}

mod common;

use common::{lambda_zero_bracket, lens_nonempty, p, random_case};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use umbra::body::{builtin, SymmetricBody};
use umbra::kernel::rational::{int, ratio};
use umbra::kernel::{Point, Rational};
use umbra::spheres::{
    bounding_map, critical_lambdas, gamma_as_shadow_oracle, gamma_complex, hausdorff_distance, lambda_zero,
};
use umbra::topology::{classify, CellComplex, Classification};
use umbra::Error;

/// Points of `r ∩ γ_λ` on the side of `p`, from the longitudinal polygon and
/// its translate by `x/λ`: vertices of one lying on the other, and proper
/// edge crossings.
fn section_oracle(body: &SymmetricBody, x: &Point, lambda: &Rational, p: &Point) -> Vec<Point> {
    let curve = body.longitudinal_curve(x, p).unwrap();
    let t = x.div(lambda);
    let moved: Vec<Point> = curve.iter().map(|c| c + &t).collect();
    let normal = x.cross(p);
    let on_seg = |q: &Point, a: &Point, b: &Point| {
        let (u, w) = (b - a, q - a);
        u.cross(&w).is_zero() && !w.dot(&u).is_negative() && w.dot(&u) <= u.dot(&u)
    };
    let edges = |c: &[Point]| -> Vec<(Point, Point)> {
        (0..c.len()).map(|i| (c[i].clone(), c[(i + 1) % c.len()].clone())).collect()
    };
    let (ea, eb) = (edges(&curve), edges(&moved));
    let mut out: Vec<Point> = Vec::new();
    for v in &curve {
        if eb.iter().any(|(a, b)| on_seg(v, a, b)) {
            out.push(v.clone());
        }
    }
    for v in &moved {
        if ea.iter().any(|(a, b)| on_seg(v, a, b)) {
            out.push(v.clone());
        }
    }
    for (a, b) in &ea {
        for (c, d) in &eb {
            let (u, w) = (b - a, d - c);
            let den = u.cross(&w).dot(&normal);
            if den.is_zero() {
                continue;
            }
            let s = (c - a).cross(&w).dot(&normal) / &den;
            let r = (c - a).cross(&u).dot(&normal) / &den;
            if !s.is_negative() && s <= Rational::one() && !r.is_negative() && r <= Rational::one() {
                out.push(a.add_scaled(&u, &s));
            }
        }
    }
    let side = |q: &Point| x.cross(q).dot(&normal).is_positive();
    out.retain(side);
    out.sort();
    out.dedup();
    out
}

#[test]
fn degenerate_spheres() {
    let cube = builtin("cube", None).unwrap();
    let g = gamma_complex(&cube, &p([2, 0, 0]), &int(1)).unwrap();
    assert!(g.degenerate);
    assert_eq!(classify(&g.complex).classification, Classification::DegenerateCell(2));
    assert!(g.complex.vertices.iter().all(|v| v[0] == int(1)));
    assert_eq!(g.complex.vertices.len(), 4);

    let worked = builtin("example-sec3", None).unwrap();
    let g = gamma_complex(&worked, &p([4, 0, 0]), &int(1)).unwrap();
    assert_eq!(g.complex.vertices, vec![p([2, 0, -1]), p([2, 0, 1])]);
    assert_eq!(classify(&g.complex).classification, Classification::Segment);

    let oct = builtin("octahedron", None).unwrap();
    let g = gamma_complex(&oct, &p([0, 2, 0]), &int(1)).unwrap();
    assert_eq!(g.complex.vertices, vec![p([0, 1, 0])]);
    assert!(matches!(gamma_complex(&oct, &p([0, 2, 0]), &ratio(1, 2)), Err(Error::LambdaTooSmall { .. })));
}

#[test]
fn worked_example_classes_by_interval() {
    // This polytope's transitions sit at 4/3 and 2.
    let body = builtin("example-sec3", None).unwrap();
    let x = p([4, 0, 0]);
    let class = |l: Rational| classify(&gamma_complex(&body, &x, &l).unwrap().complex).classification;
    assert_eq!(class(ratio(9, 8)), Classification::Circle);
    assert_eq!(class(ratio(5, 4)), Classification::Circle);
    assert_eq!(class(ratio(4, 3)), Classification::Circle);
    assert_eq!(class(ratio(11, 8)), Classification::NonManifold);
    assert_eq!(class(int(2)), Classification::NonManifold);
    assert_eq!(class(ratio(9, 4)), Classification::Annulus);
    assert_eq!(class(int(4)), Classification::Annulus);
    assert_eq!(critical_lambdas(&body, &x, &int(4)).unwrap(), vec![int(1), ratio(4, 3), int(2)]);
}

#[test]
fn cube_band_keeps_its_class() {
    let cube = builtin("cube", None).unwrap();
    let x = p([2, 0, 0]);
    let crit = critical_lambdas(&cube, &x, &int(4)).unwrap();
    assert_eq!(crit[0], int(1));
    for l in [ratio(9, 8), int(2), ratio(7, 2), int(4)] {
        assert_eq!(classify(&gamma_complex(&cube, &x, &l).unwrap().complex).classification, Classification::Annulus);
    }
    let (d, half) = gamma_as_shadow_oracle(&cube, &x, &int(2)).unwrap();
    assert_eq!(d.body.vertices().len(), 8);
    assert_eq!(d.shadow_complex.translate(&half), gamma_complex(&cube, &x, &int(2)).unwrap().complex);
}

#[test]
fn hausdorff_basics() {
    let seg = |y: i64| CellComplex::from_cells([vec![p([0, y, 0]), p([1, y, 0])]]);
    assert_eq!(hausdorff_distance(&seg(0), &seg(0), 64.0).unwrap(), 0.0);
    assert!((hausdorff_distance(&seg(0), &seg(1), 64.0).unwrap() - 1.0).abs() <= 1.0 / 64.0);
    assert!(matches!(hausdorff_distance(&seg(0), &CellComplex::default(), 64.0), Err(Error::EmptyComplex)));

    let body = builtin("example-sec3", None).unwrap();
    let x = p([4, 0, 0]);
    let s = umbra::shadow::decompose(&body, &x).unwrap().shadow_complex;
    let d: Vec<f64> = [2, 4, 8, 16]
        .iter()
        .map(|&l| hausdorff_distance(&gamma_complex(&body, &x, &int(l)).unwrap().complex, &s, 64.0).unwrap())
        .collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
}

#[test]
fn worked_example_bounding_maps_to_the_circle() {
    let body = builtin("example-sec3", None).unwrap();
    let x = p([4, 0, 0]);
    let (lambda, mu) = (ratio(9, 8), int(2));
    let g = gamma_complex(&body, &x, &mu).unwrap();
    let target = gamma_complex(&body, &x, &lambda).unwrap();
    for v in &g.complex.vertices {
        if x.cross(v).is_zero() {
            continue;
        }
        let want = section_oracle(&body, &x, &lambda, v);
        assert_eq!(want.len(), 1, "section through {v}: {want:?}");
        let got = bounding_map(&body, &x, &lambda, &mu, v).unwrap();
        assert_eq!(got, want[0]);
        assert!(target.complex.vertices.contains(&got) || body.on_boundary(&got));
    }
    let v = &g.complex.vertices[0];
    assert!(matches!(bounding_map(&body, &x, &mu, &lambda, v), Err(Error::LambdaOrder { .. })));
    assert!(matches!(bounding_map(&body, &x, &lambda, &mu, &p([0, 0, 0])), Err(Error::PointNotOnSphere(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn lambda_zero_matches_lp_bisection(seed in 0u64..5000) {
        let (body, x) = random_case(seed);
        let l0 = lambda_zero(&body, &x).unwrap();
        let (lo, hi) = lambda_zero_bracket(body.vertices(), &x, 40);
        prop_assert!(lo <= l0 && l0 <= hi);
        prop_assert!(lens_nonempty(body.vertices(), &x, &l0));
        prop_assert!(!lens_nonempty(body.vertices(), &x, &(&l0 * ratio(1023, 1024))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn homogeneity_in_x(seed in 0u64..5000, c in 1i64..5) {
        let (body, x) = random_case(seed);
        let cx = x.scale(&int(c));
        let l0 = lambda_zero(&body, &x).unwrap();
        prop_assert_eq!(lambda_zero(&body, &cx).unwrap(), &l0 * int(c));
        let a = critical_lambdas(&body, &x, &(&l0 * int(8))).unwrap();
        let b = critical_lambdas(&body, &cx, &(&l0 * int(8 * c))).unwrap();
        prop_assert_eq!(b, a.iter().map(|l| l * int(c)).collect::<Vec<_>>());
    }

    #[test]
    fn spheres_are_symmetric_lenses(seed in 0u64..5000, k in 1i64..40) {
        let (body, x) = random_case(seed);
        let lambda = lambda_zero(&body, &x).unwrap() * ratio(8 + k, 8);
        let g = gamma_complex(&body, &x, &lambda).unwrap();
        let t = g.shift();
        for v in &g.complex.vertices {
            prop_assert!(body.gauge(v).is_one() && body.gauge(&(v - &t)).is_one());
        }
        prop_assert_eq!(g.complex.map_points(|q| &t - q), g.complex.clone());
        let r = classify(&g.complex);
        prop_assert_eq!(r.components, 1);
        prop_assert!(r.max_dim >= Some(1));
        let (d, half) = gamma_as_shadow_oracle(&body, &x, &lambda).unwrap();
        prop_assert_eq!(d.shadow_complex.translate(&half), g.complex);
    }

    #[test]
    fn bounding_map_lands_in_the_section(seed in 0u64..5000, k in 0usize..64) {
        let (body, x) = random_case(seed);
        let l0 = lambda_zero(&body, &x).unwrap();
        let (lambda, mu) = (&l0 * ratio(3, 2), &l0 * int(3));
        let g = gamma_complex(&body, &x, &mu).unwrap();
        let pts = umbra::verify::sample_points(&g.complex);
        let y = &pts[k % pts.len()];
        prop_assume!(!x.cross(y).is_zero());
        let img = bounding_map(&body, &x, &lambda, &mu, y).unwrap();
        prop_assert!(body.on_boundary(&img) && body.on_boundary(&img.add_scaled(&x, &-lambda.recip())));
        let section = section_oracle(&body, &x, &lambda, y);
        if section.len() == 1 {
            prop_assert_eq!(&img, &section[0]);
        } else {
            // A segment: its ends are the two extreme oracle points.
            let along = |q: &Point| q.dot(&x);
            let lo = section.iter().min_by(|a, b| along(a).cmp(&along(b))).unwrap();
            let hi = section.iter().max_by(|a, b| along(a).cmp(&along(b))).unwrap();
            prop_assert!(along(lo) <= along(&img) && along(&img) <= along(hi));
            prop_assert!(img == *y || img == *lo);
        }
    }
}

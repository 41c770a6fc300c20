mod common;

use common::{in_scaled_hull, random_case, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;
use umbra::body::{builtin, load_body, random_symmetric};
use umbra::kernel::rational::int;
use umbra::kernel::Point;
use umbra::Error;

fn counts(name: &str) -> (usize, usize, usize) {
    let b = builtin(name, None).unwrap();
    (b.lattice.vertices.len(), b.lattice.edges.len(), b.lattice.facets.len())
}

#[test]
fn builtin_face_counts() {
    assert_eq!(counts("octahedron"), (6, 12, 8));
    assert_eq!(counts("cube"), (8, 12, 6));
    let (v, e, f) = counts("example-sec3");
    assert_eq!((v, v as i64 - e as i64 + f as i64), (16, 2));
    for name in ["sine-cylinder(3)", "diadic(3)", "diadic(5)"] {
        let b = builtin(name, None).unwrap();
        assert!(b.vertices().iter().all(|v| b.gauge(v).is_one() && b.lattice.vertex_index(&-v).is_some()), "{name}");
    }
}

#[test]
fn body_files_load_and_save() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prism.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "name": "prism", "symmetrize": true,
            "vertices": [["1", 0, 1], ["-1/2", "1", 1], ["-1/2", "-1", 1]]}"#,
    )
    .unwrap();
    let b = load_body(&path).unwrap();
    assert_eq!(b.name, "prism");
    assert_eq!(b.vertices().len(), 6);
    let out = dir.path().join("saved.json");
    b.save(&out).unwrap();
    assert_eq!(load_body(&out).unwrap().vertices(), b.vertices());

    std::fs::write(&path, r#"{"dim": 3, "vertices": [[1.5, 0, 0]]}"#).unwrap();
    assert!(matches!(load_body(&path), Err(Error::Parse(_))));
    std::fs::write(&path, r#"{"dim": 3, "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]}"#).unwrap();
    assert!(matches!(load_body(&path), Err(Error::NotSymmetric(_))));
    assert!(matches!(load_body(&dir.path().join("missing.json")), Err(Error::Io(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_bodies_are_symmetric_polytopes(seed in any::<u64>(), pairs in 4usize..10) {
        let b = random_symmetric(seed, pairs).unwrap();
        for v in b.vertices() {
            prop_assert!(b.lattice.vertex_index(&-v).is_some());
            prop_assert!(b.gauge(v).is_one());
        }
        prop_assert!(in_scaled_hull(b.vertices(), &Point::zeros(3), &Q::zero()));
        prop_assert!(b.contains(&Point::zeros(3)) && !b.on_boundary(&Point::zeros(3)));
        let again = random_symmetric(seed, pairs).unwrap();
        prop_assert_eq!(again.vertices(), b.vertices());
    }

    #[test]
    fn poles_lie_on_the_boundary_along_x(seed in 0u64..500) {
        let (b, x) = random_case(seed);
        let poles = b.poles(&x).unwrap();
        prop_assert!(b.on_boundary(&poles.positive) && b.on_boundary(&poles.negative));
        prop_assert!(poles.positive.cross(&x).is_zero());
        prop_assert!(poles.positive.dot(&x) > int(0));
    }

    #[test]
    fn longitudinal_curves_are_planar_sections(seed in 0u64..500, k in 0usize..64) {
        let (b, x) = random_case(seed);
        let p = &b.vertices()[k % b.vertices().len()];
        prop_assume!(!x.cross(p).is_zero());
        let curve = b.longitudinal_curve(&x, p).unwrap();
        let normal = x.cross(p);
        prop_assert!(curve.len() >= 4);
        prop_assert!(curve.iter().all(|q| b.on_boundary(q) && normal.dot(q).is_zero()));
        prop_assert!(curve.contains(p));
        let poles = b.poles(&x).unwrap();
        let n = curve.len();
        let pole_on_curve = (0..n).any(|i| {
            let (a, c) = (&curve[i], &curve[(i + 1) % n]);
            let (u, w) = (c - a, &poles.positive - a);
            u.cross(&w).is_zero() && w.dot(&u) >= int(0) && w.dot(&u) <= u.dot(&u)
        });
        prop_assert!(pole_on_curve);
        // Consecutive points turn the same way around the normal.
        let turns: Vec<_> = (0..n)
            .map(|i| {
                let (a, m, c) = (&curve[i], &curve[(i + 1) % n], &curve[(i + 2) % n]);
                (m - a).cross(&(c - m)).dot(&normal)
            })
            .collect();
        prop_assert!(turns.iter().all(|t| t > &int(0)) || turns.iter().all(|t| t < &int(0)));
    }
}

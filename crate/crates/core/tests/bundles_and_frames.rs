use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ordbundle::bundle_classifier::{
    classify_pair, enumerate_classes, generic_functional, pullback_bundle, realize_class,
    trivialize, validate_bundle, w1_class, ComponentTrivialization, GroupBundle,
};
use ordbundle::catalog;
use ordbundle::frames::{hyperplane_to_group, same_oriented_plane, standard_frame, Frame};
use ordbundle::gf2_complex::{cohomology, pullback_cochain, SimplicialComplex};
use ordbundle::ordered_group::{GroupElement, LinearFunctional};

fn bases() -> Vec<SimplicialComplex> {
    vec![
        catalog::circle(3).unwrap(),
        catalog::circle(5).unwrap(),
        catalog::figure_eight(),
        catalog::torus(),
        catalog::projective_plane(),
        catalog::cone_over_circle(4).unwrap(),
        SimplicialComplex::from_facets(5, &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4]])
            .unwrap(),
    ]
}

/// A bundle in class `class_idx` with a scrambled gauge and vertex normals.
fn scrambled(
    base: &SimplicialComplex,
    class_idx: usize,
    gauge_bits: u64,
    rank: usize,
) -> GroupBundle {
    let classes = enumerate_classes(base);
    let class = &classes[class_idx % classes.len()];
    let gauge: Vec<i8> = (0..base.vertex_count())
        .map(|v| {
            if gauge_bits >> (v % 64) & 1 == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    realize_class(class, rank)
        .unwrap()
        .apply_gauge(&gauge)
        .unwrap()
}

proptest! {
    #[test]
    fn fibers_are_total_and_gauge_preserves_w1(
        b in 0usize..7, c in 0usize..16, g in any::<u64>(), rank in 2usize..5
    ) {
        let base = &bases()[b];
        let e = scrambled(base, c, g, rank);
        for v in 0..base.vertex_count() {
            let fiber = e.fiber(v).unwrap();
            prop_assert!(fiber.is_totally_ordered());
            prop_assert_eq!(fiber.rank(), rank);
        }
        let plain = scrambled(base, c, 0, rank);
        prop_assert_eq!(w1_class(&e), w1_class(&plain));
        prop_assert!(classify_pair(&e, &plain).unwrap());
    }

    #[test]
    fn trivialization_is_sound(b in 0usize..7, c in 0usize..16, g in any::<u64>()) {
        let base = &bases()[b];
        let e = scrambled(base, c, g, 2);
        let t = trivialize(&e);
        prop_assert_eq!(t.components.len(), base.components().len());
        match t.global_gauge(base.vertex_count()) {
            Some(gauge) => {
                prop_assert!(w1_class(&e).is_trivial());
                let fixed = e.apply_gauge(&gauge).unwrap();
                prop_assert!(fixed.edge_signs().iter().all(|&s| s == 1));
            }
            None => {
                prop_assert!(!w1_class(&e).is_trivial());
                for comp in &t.components {
                    if let ComponentTrivialization::OddCycle { vertices, cycle } = comp {
                        prop_assert_eq!(cycle.first(), cycle.last());
                        prop_assert!(cycle.iter().all(|v| vertices.contains(v)));
                        let product: i8 = cycle
                            .windows(2)
                            .map(|w| e.edge_sign(w[0], w[1]).expect("cycle uses edges"))
                            .product();
                        prop_assert_eq!(product, -1);
                    }
                }
            }
        }
    }

    #[test]
    fn negated_normal_reverses_positivity(
        coeffs in prop::collection::vec(-4i64..=4, 2..5),
        samples in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 1..20),
    ) {
        let k = coeffs.len();
        // perturb by the generic functional so the hyperplane is irrational
        let f = LinearFunctional::new(
            coeffs
                .iter()
                .zip(generic_functional(k).coeffs())
                .map(|(&a, g)| &ordbundle::surd::Surd::from_integer(a) + g)
                .collect(),
        );
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        let g = hyperplane_to_group(f.clone()).unwrap();
        let h = hyperplane_to_group(f.negated()).unwrap();
        for s in samples {
            let x = GroupElement::new(s[..k].to_vec());
            if f.eval(&x).is_zero() {
                prop_assert!(!g.is_positive(&x).unwrap() && !h.is_positive(&x).unwrap() || x.is_zero());
                continue;
            }
            prop_assert_eq!(g.is_positive(&x).unwrap(), !h.is_positive(&x).unwrap());
            prop_assert_eq!(g.is_positive(&x).unwrap(), h.is_positive(&-&x).unwrap());
        }
    }

    #[test]
    fn canonical_frames_are_primitive_and_orthogonal(
        k in 2usize..=4,
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=4),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().take(k).map(|r| r[..k].to_vec()).collect();
        let Ok(f) = Frame::from_integers(&rows) else { return Ok(()) };
        let p = standard_frame(&f);
        prop_assert_eq!(p.dim(), rows.len());
        for (i, u) in p.canonical_frame.iter().enumerate() {
            let g = u.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
            prop_assert!(g.is_one());
            for v in &p.canonical_frame[i + 1..] {
                let d: num_bigint::BigInt = u.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(d.is_zero());
            }
        }
        prop_assert!(same_oriented_plane(&f, &p.as_frame()).unwrap());
        prop_assert_eq!(standard_frame(&p.as_frame()), p);
    }
}

#[test]
fn realization_hits_every_class() {
    for base in bases() {
        let classes = enumerate_classes(&base);
        assert_eq!(classes.len(), 1 << cohomology(&base, 1).rank());
        for c in &classes {
            for rank in 2..=4 {
                assert_eq!(&w1_class(&realize_class(c, rank).unwrap()), c);
            }
        }
    }
}

#[test]
fn pullback_is_natural() {
    // the double cover of the 3-cycle by the 6-cycle, and a collapse onto an edge
    let hexagon = catalog::circle(6).unwrap();
    let triangle = catalog::circle(3).unwrap();
    let cover: Vec<usize> = (0..6).map(|i| i % 3).collect();
    let collapse = vec![0, 1, 1, 1, 1, 0];
    for map in [cover, collapse] {
        for class in enumerate_classes(&triangle) {
            let e = realize_class(&class, 2).unwrap();
            let pulled = pullback_bundle(&hexagon, &map, &e).unwrap();
            let expected = cohomology(&hexagon, 1)
                .normal_form(
                    &pullback_cochain(&hexagon, &triangle, &map, &class.representative).unwrap(),
                )
                .unwrap();
            assert_eq!(w1_class(&pulled).representative, expected);
            // both maps have even degree, so every pullback is orientable
            assert!(w1_class(&pulled).is_trivial());
        }
    }
    // the identity pulls back to the same class
    let twisted = &enumerate_classes(&triangle)[1];
    let e = realize_class(twisted, 3).unwrap();
    assert_eq!(
        &w1_class(&pullback_bundle(&triangle, &[0, 1, 2], &e).unwrap()),
        twisted
    );
    assert!(pullback_bundle(&triangle, &[0, 1], &e).is_err());
}

#[test]
fn raw_round_trip() {
    for base in bases() {
        for class in enumerate_classes(&base) {
            let e = realize_class(&class, 3).unwrap().flip_vertex(0).unwrap();
            let json = serde_json::to_string(&e.to_raw()).unwrap();
            let back = GroupBundle::from_raw(&serde_json::from_str(&json).unwrap(), true).unwrap();
            assert_eq!(back, e);
        }
    }
}

#[test]
fn mismatched_inputs_are_rejected() {
    let k = catalog::circle(3).unwrap();
    let f = generic_functional(2);
    assert!(validate_bundle(k.clone(), 2, vec![f.clone(); 2], vec![1; 3]).is_err());
    assert!(validate_bundle(k.clone(), 2, vec![f.clone(); 3], vec![1; 2]).is_err());
    assert!(validate_bundle(k.clone(), 2, vec![f.clone(); 3], vec![1, 0, 1]).is_err());
    assert!(validate_bundle(k.clone(), 3, vec![f; 3], vec![1; 3]).is_err());
    let a = realize_class(&enumerate_classes(&k)[0], 2).unwrap();
    let b = realize_class(&enumerate_classes(&catalog::circle(4).unwrap())[0], 2).unwrap();
    assert!(classify_pair(&a, &b).is_err());
}

#[test]
fn oriented_plane_examples() {
    let f = Frame::from_integers(&[vec![2, 0], vec![1, 3]]).unwrap();
    let g = Frame::from_integers(&[vec![1, 3], vec![2, 0]]).unwrap();
    let id = Frame::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
    assert!(same_oriented_plane(&f, &f).unwrap());
    assert!(same_oriented_plane(&f, &id).unwrap());
    assert!(!same_oriented_plane(&f, &g).unwrap());
    let line = Frame::from_integers(&[vec![3, 4]]).unwrap();
    assert!(same_oriented_plane(&line, &id).is_err());
}

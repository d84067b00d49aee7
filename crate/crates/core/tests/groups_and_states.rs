use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ordbundle::formats::default_unit;
use ordbundle::ordered_group::{
    GroupElement, LinearFunctional, OrderRelation, OrderedGroup, SimplicialBasis,
};
use ordbundle::state_space::{
    extreme_states, is_discrete_state, rational_convex_decomposition, unique_state, State,
};
use ordbundle::surd::Surd;

fn elem(v: Vec<i64>) -> GroupElement {
    GroupElement::new(v)
}

fn sqrt_functional(k: usize) -> LinearFunctional {
    ordbundle::bundle_classifier::generic_functional(k)
}

fn unimodular(k: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(a, b, c) in ops {
        let (a, b) = (a % k, b % k);
        if a != b {
            for j in 0..k {
                m[a][j] += c * m[b][j];
            }
        }
    }
    m
}

fn group_strategy() -> impl Strategy<Value = OrderedGroup> {
    let hyper = (2usize..=5).prop_map(|k| OrderedGroup::hyperplane(sqrt_functional(k)));
    let rational = prop::collection::vec(-3i64..=3, 2..=5)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| {
            OrderedGroup::hyperplane(
                LinearFunctional::new(v.into_iter().map(Surd::from_integer).collect()).unwrap(),
            )
        });
    let simplicial = (
        2usize..=5,
        prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..10),
    )
        .prop_map(|(k, ops)| {
            OrderedGroup::simplicial(SimplicialBasis::new(unimodular(k, &ops)).unwrap())
        });
    prop_oneof![hyper, rational, simplicial]
}

fn with_elements(n: usize) -> impl Strategy<Value = (OrderedGroup, Vec<GroupElement>)> {
    group_strategy().prop_flat_map(move |g| {
        let k = g.rank();
        (
            Just(g),
            prop::collection::vec(
                prop::collection::vec(-8i64..=8, k).prop_map(GroupElement::new),
                n,
            ),
        )
    })
}

proptest! {
    #[test]
    fn total_groups_compare_everything((g, xs) in with_elements(4)) {
        if g.is_totally_ordered() {
            for x in &xs {
                prop_assert!(g.is_positive(x).unwrap() || g.is_positive(&-x).unwrap());
            }
        }
    }

    #[test]
    fn compare_is_translation_invariant((g, xs) in with_elements(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(g.compare(x, y).unwrap(), g.compare(&(x + z), &(y + z)).unwrap());
        let flipped = match g.compare(x, y).unwrap() {
            OrderRelation::Less => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Less,
            other => other,
        };
        prop_assert_eq!(g.compare(y, x).unwrap(), flipped);
    }

    #[test]
    fn states_are_positive((g, xs) in with_elements(6)) {
        let u = default_unit(&g);
        let Ok(states) = extreme_states(&g, &u) else {
            // rational hyperplanes of rank ≥ 2 carry no unique state
            prop_assert!(!g.is_totally_ordered());
            return Ok(());
        };
        for s in states.states() {
            prop_assert_eq!(s.eval(&u).unwrap(), Surd::one());
            for x in &xs {
                if g.is_positive(x).unwrap() {
                    prop_assert!(!s.eval(x).unwrap().is_negative());
                }
            }
        }
    }

    #[test]
    fn decomposition_round_trip(
        ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8),
        weights in prop::collection::vec(0u32..5, 4),
        probes in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 5),
    ) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let g = OrderedGroup::simplicial(SimplicialBasis::new(unimodular(4, &ops)).unwrap());
        let u = default_unit(&g);
        let extremes = extreme_states(&g, &u).unwrap();
        let total: u32 = weights.iter().sum();
        let w: Vec<BigRational> = weights
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total)))
            .collect();
        let coeffs: Vec<Surd> = (0..4)
            .map(|j| {
                extremes
                    .states()
                    .iter()
                    .zip(&w)
                    .map(|(s, a)| &s.functional().coeffs()[j] * &Surd::from_rational(a.clone()))
                    .sum()
            })
            .collect();
        let mixed = State::new(&g, LinearFunctional::new(coeffs).unwrap(), u.clone()).unwrap();
        let alpha = rational_convex_decomposition(&mixed, &extremes).unwrap();
        for p in probes {
            let x = elem(p);
            let recombined: Surd = extremes
                .states()
                .iter()
                .zip(alpha.weights())
                .map(|(s, a)| &s.eval(&x).unwrap() * &Surd::from_rational(a.clone()))
                .sum();
            prop_assert_eq!(recombined, mixed.eval(&x).unwrap());
        }
    }
}

#[test]
fn quotients_by_every_basis_subset() {
    let ops = [(0, 1, 1), (2, 0, -1), (3, 2, 2), (1, 3, 1)];
    for k in 1..=4 {
        let g = OrderedGroup::simplicial(SimplicialBasis::new(unimodular(k, &ops)).unwrap());
        for mask in 0u32..1 << k {
            let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let ideal = g.order_ideal_generated(&subset).unwrap();
            let (q, proj) = g.quotient_with_projection(&ideal).unwrap();
            assert_eq!(q.rank(), k - subset.len());
            // every cone generator lands in the quotient cone, and exactly
            // the ones in the subset die
            for (i, gen) in g.basis().unwrap().generators().iter().enumerate() {
                let img: Vec<i64> = proj
                    .iter()
                    .map(|r| r.iter().zip(gen.coords()).map(|(a, b)| a * b).sum())
                    .collect();
                let img = elem(img);
                assert_eq!(img.is_zero(), subset.contains(&i));
                if q.rank() > 0 {
                    assert!(q.is_positive(&img).unwrap());
                }
            }
        }
    }
}

#[test]
fn irrational_total_groups_have_no_discrete_state() {
    for k in 2..=6 {
        let g = OrderedGroup::hyperplane(sqrt_functional(k));
        let u = default_unit(&g);
        let s = unique_state(&g, &u).unwrap();
        let gens: Vec<GroupElement> = (0..k).map(|i| GroupElement::unit(k, i)).collect();
        assert!(!is_discrete_state(&s, &gens).unwrap());
    }
}

#[test]
fn rank_one_groups_have_discrete_states() {
    for m in 1..=6 {
        let u = elem(vec![m]);
        let g = OrderedGroup::standard_simplicial(1);
        let states = extreme_states(&g, &u).unwrap();
        let s = &states.states()[0];
        assert!(is_discrete_state(s, &[elem(vec![1])]).unwrap());
        assert_eq!(
            s.eval(&elem(vec![1])).unwrap(),
            Surd::from_rational(BigRational::new(1.into(), m.into()))
        );

        let h =
            OrderedGroup::hyperplane(LinearFunctional::new(vec![Surd::from_integer(3)]).unwrap());
        let t = unique_state(&h, &u).unwrap();
        assert!(is_discrete_state(&t, &[elem(vec![1])]).unwrap());
    }
}

#[test]
fn kernel_elements_are_incomparable() {
    let g = OrderedGroup::hyperplane(LinearFunctional::parse(&["1", "1"], None).unwrap());
    assert_eq!(g.kernel_lattice(), vec![elem(vec![1, -1])]);
    assert_eq!(
        g.compare(&elem(vec![1, -1]), &elem(vec![0, 0])).unwrap(),
        OrderRelation::Incomparable
    );
    assert!(!g.is_totally_ordered());
}

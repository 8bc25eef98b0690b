//! Invariants across modules: composition against the graph oracle,
//! augmentation, family closure, and agreement between the two homology
//! routes and the symmetric group.

mod common;

use common::{blocks_of, compose as oracle_compose, in_family};
use diagram_homology::algebra::{enumerate_basis, Basis};
use diagram_homology::homcompute::{compute_both, compute_ext, compute_tor, group_cohomology, group_homology, Method};
use diagram_homology::{AlgebraContext, Diagram, FamilySpec, RingSpec, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn basis(n: usize, fam: &str) -> std::sync::Arc<Basis> {
    Basis::shared(n, fam.parse().unwrap()).unwrap()
}

fn ctx(n: usize, fam: &str, ring: &str, delta: i64) -> AlgebraContext {
    AlgebraContext::with_int_delta(n, fam.parse().unwrap(), ring.parse().unwrap(), delta).unwrap()
}

#[test]
fn oracle_sanity() {
    assert_eq!((0..9).map(common::bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52, 203, 877, 4140]);
    assert_eq!(common::set_partitions(&[1, 2, 3, 4]).len(), 15);
    let f = common::invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
    assert_eq!(common::rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
}

#[test]
fn families_closed_under_composition() {
    for n in 1..=3 {
        for fam in ["P", "T:2", "T:3", "TPP", "U", "S"] {
            let f: FamilySpec = fam.parse().unwrap();
            let b = enumerate_basis(n, f).unwrap();
            for x in &b {
                for y in &b {
                    let c = x.compose(y).unwrap();
                    assert!(in_family(&blocks_of(&c.diagram), f), "{fam}: {x} {y} -> {}", c.diagram);
                    if !f.uses_delta() {
                        assert_eq!(c.alpha, 0, "{fam} produced a loop from {x} {y}");
                    }
                }
            }
        }
    }
}

#[test]
fn identity_is_neutral() {
    for n in 1..=3 {
        let id = Diagram::identity(n);
        for d in enumerate_basis(n, FamilySpec::Partition).unwrap() {
            let l = id.compose(&d).unwrap();
            let r = d.compose(&id).unwrap();
            assert_eq!((l.alpha, &l.diagram), (0, &d));
            assert_eq!((r.alpha, &r.diagram), (0, &d));
        }
    }
}

#[test]
fn bar_and_resolution_agree() {
    for fam in ["P", "T:2", "T:3", "TPP", "U", "S"] {
        for ring in ["Z", "Z/2", "Z/3", "Q"] {
            for delta in [0, 1, 2] {
                let c = ctx(2, fam, ring, delta);
                let bar = compute_both(&c, 4, Method::Bar).unwrap();
                let res = compute_both(&c, 4, Method::Resolution).unwrap();
                assert_eq!(bar, res, "{}", c.label());
            }
        }
    }
    for fam in ["T:2", "U"] {
        let c = ctx(3, fam, "Z/2", 1);
        assert_eq!(
            compute_tor(&c, 3, Method::Bar).unwrap(),
            compute_tor(&c, 3, Method::Resolution).unwrap(),
            "{}",
            c.label()
        );
    }
}

#[test]
fn truncation_is_honest() {
    // degrees below the truncation do not depend on it
    for (fam, ring) in [("T:2", "Z"), ("P", "Z/2"), ("TPP", "Z/3"), ("U", "Q")] {
        let c = ctx(2, fam, ring, 1);
        for method in [Method::Bar, Method::Resolution] {
            let short = compute_both(&c, 3, method).unwrap();
            let long = compute_both(&c, 4, method).unwrap();
            assert_eq!(short.0[..], long.0[..3], "{} Tor", c.label());
            assert_eq!(short.1[..], long.1[..3], "{} Ext", c.label());
        }
    }
}

#[test]
fn permutation_family_is_the_group_algebra() {
    for n in [2, 3] {
        for ring in [RingSpec::Integers, RingSpec::ModM(2), RingSpec::ModM(3), RingSpec::Rationals] {
            let c = AlgebraContext::with_int_delta(n, FamilySpec::Permutations, ring, 0).unwrap();
            assert_eq!(compute_tor(&c, 4, Method::Auto).unwrap(), group_homology(n, ring, 4).unwrap());
            assert_eq!(compute_ext(&c, 4, Method::Auto).unwrap(), group_cohomology(n, ring, 4).unwrap());
        }
    }
}

#[test]
fn field_duality() {
    for fam in ["P", "T:2", "TPP", "U"] {
        for ring in ["Z/2", "Z/3", "Q"] {
            let c = ctx(2, fam, ring, 0);
            let (tor, ext) = compute_both(&c, 5, Method::Auto).unwrap();
            let a: Vec<usize> = tor.iter().map(|g| g.free_rank).collect();
            let b: Vec<usize> = ext.iter().map(|g| g.free_rank).collect();
            assert_eq!(a, b, "{}", c.label());
        }
    }
}

#[test]
fn integral_universal_coefficients() {
    // over Z/2, dim H_q = rank H_q(Z) + #even torsion in H_q(Z) and H_{q-1}(Z)
    let z = compute_tor(&ctx(2, "U", "Z", 0), 5, Method::Auto).unwrap();
    let f2 = compute_tor(&ctx(2, "U", "Z/2", 0), 5, Method::Auto).unwrap();
    let even = |q: usize| z[q].torsion.iter().filter(|t| (*t % 2u32) == BigInt::from(0)).count();
    for q in 0..5 {
        let expect = z[q].free_rank + even(q) + if q > 0 { even(q - 1) } else { 0 };
        assert_eq!(f2[q].free_rank, expect, "q = {q}");
    }
}

#[test]
fn reflection_reverses_products() {
    // swapping the columns is an anti-automorphism fixing ε
    let flip = |b: &common::Blocks| -> common::Blocks { b.iter().map(|c| c.iter().map(|v| -v).collect()).collect() };
    let b = enumerate_basis(3, FamilySpec::Partition).unwrap();
    for x in &b {
        let fx = flip(&blocks_of(x));
        assert_eq!(common::epsilon(&fx), x.is_permutation());
        for y in &b {
            let c = x.compose(y).unwrap();
            let r = oracle_compose(3, &flip(&blocks_of(y)), &fx);
            assert_eq!(r, (c.alpha, flip(&blocks_of(&c.diagram))), "{x} {y}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compose_matches_graph_oracle(i in 0usize..4140, j in 0usize..4140) {
        let b = basis(4, "P");
        let (x, y) = (b.diagram(i), b.diagram(j));
        let c = x.compose(y).unwrap();
        prop_assert_eq!(oracle_compose(4, &blocks_of(x), &blocks_of(y)), (c.alpha, blocks_of(&c.diagram)));
    }

    #[test]
    fn associativity_n3(i in 0usize..203, j in 0usize..203, k in 0usize..203) {
        let b = basis(3, "P");
        let (x, y, z) = (b.diagram(i), b.diagram(j), b.diagram(k));
        let xy = x.compose(y).unwrap();
        let yz = y.compose(z).unwrap();
        let l = xy.diagram.compose(z).unwrap();
        let r = x.compose(&yz.diagram).unwrap();
        prop_assert_eq!(&l.diagram, &r.diagram);
        prop_assert_eq!(xy.alpha + l.alpha, yz.alpha + r.alpha);
    }

    #[test]
    fn text_round_trip(i in 0usize..4140) {
        let d = basis(4, "P").diagram(i).clone();
        let back: Diagram = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn augmentation_is_multiplicative(
        xs in proptest::collection::vec((0usize..203, -3i64..=3), 1..5),
        ys in proptest::collection::vec((0usize..203, -3i64..=3), 1..5),
    ) {
        let c = AlgebraContext::new(3, FamilySpec::Partition, RingSpec::Rationals, RingSpec::Rationals.parse_scalar("1/2").unwrap()).unwrap();
        let elem = |terms: &[(usize, i64)]| {
            let t: Vec<(Scalar, Diagram)> = terms.iter().map(|&(i, k)| (RingSpec::Rationals.from_i64(k), c.basis().diagram(i).clone())).collect();
            c.combination(&t).unwrap()
        };
        let (x, y) = (elem(&xs), elem(&ys));
        let lhs = x.multiply(&y).unwrap().augmentation();
        let rhs = x.augmentation().try_mul(&y.augmentation()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tanabe_closure_n4(i in 0usize..10_000, j in 0usize..10_000, r in 2usize..=4) {
        let f = FamilySpec::Tanabe(r);
        let b = Basis::shared(4, f).unwrap();
        let (x, y) = (b.diagram(i % b.len()), b.diagram(j % b.len()));
        let c = x.compose(y).unwrap();
        prop_assert!(in_family(&blocks_of(&c.diagram), f));
    }
}

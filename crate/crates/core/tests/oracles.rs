//! Independent recomputations of the main quantities.

use std::collections::BTreeSet;

use liftable_core::corpus::{entry, CORPUS};
use liftable_core::germ::Multigerm;
use liftable_core::ksm::{omega_map_direct, pullback_power_jets, tr_e_jets, LevelSummary};
use liftable_core::linalg::JetBasis;
use liftable_core::localalg::GermContext;
use liftable_core::JetOrder;
use proptest::prelude::*;

type Exps = Vec<u32>;

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Monomials of degree below `bound` in the ideal generated by all products
/// of `power` generators.
fn monomial_ideal(gens: &[Exps], power: usize, bound: u32) -> BTreeSet<Exps> {
    let mut prods: BTreeSet<Exps> = BTreeSet::from([vec![0; gens[0].len()]]);
    for _ in 0..power {
        prods = prods
            .iter()
            .flat_map(|p| gens.iter().map(move |g| p.iter().zip(g).map(|(a, b)| a + b).collect()))
            .collect();
    }
    let mut out = BTreeSet::new();
    for a in 0..bound {
        for b in 0..bound - a {
            let m = vec![a, b];
            if prods.iter().any(|p| divides(p, &m)) {
                out.insert(m);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `(x1, x2^a, x1^b x2^c)` has a monomial pullback ideal, so the graded
    /// pieces can be counted by divisibility.
    #[test]
    fn graded_delta_of_monomial_germs(a in 2u32..5, b in 0u32..3, c in 1u32..4, i in 0usize..3) {
        let third = match (b, c) {
            (0, c) => format!("x2^{c}"),
            (b, c) => format!("x1^{b}*x2^{c}"),
        };
        let g = Multigerm::from_strings(2, 3, &[&["x1", &format!("x2^{a}"), &third]]).unwrap();
        let gens = vec![vec![1, 0], vec![0, a], vec![b, c]];
        // (x1, x2^a)^{i+2} contains every monomial of degree >= (i+2)a
        let bound = (i as u32 + 2) * a + 1;
        let lower = monomial_ideal(&gens, i, bound);
        let upper = monomial_ideal(&gens, i + 1, bound);
        let expected = lower.difference(&upper).count();
        let ctx = GermContext::new(&g).unwrap();
        prop_assert_eq!(ctx.graded_delta(i).unwrap(), expected);
    }
}

#[test]
fn cusp_pullback_jets_are_spanned_by_squares_and_cubes() {
    let cusp = entry("cusp").unwrap().germ();
    let v = pullback_power_jets(&cusp, 1, JetOrder(3));
    // jets of order 3 in x, two components: span{x^2, x^3} in each slot
    assert_eq!(v.dim(), 4);
    let full = pullback_power_jets(&cusp, 0, JetOrder(3));
    assert_eq!(full.dim(), full.ambient_dim());
    assert!(full.contains(&v));
    assert!(v.contains(&pullback_power_jets(&cusp, 2, JetOrder(3))));
    // tf(x^k d/dx) = (2x^{k+1}, 3x^{k+2})
    assert_eq!(tr_e_jets(&cusp, JetOrder(3)).dim(), 3);
    assert_eq!(JetBasis::new(1, JetOrder(3)).len() * 2, full.dim());
}

#[test]
fn full_jet_route_matches_quotient_route() {
    for e in CORPUS.iter().filter(|e| e.n <= 2) {
        let g = e.germ();
        let ctx = GermContext::new(&g).unwrap();
        let ell = ctx.stabilization().ell;
        for i in 0..3usize {
            let a = ctx.omega_map(i).unwrap();
            let b = omega_map_direct(&g, i, JetOrder((i as u32 + 1) * ell));
            assert_eq!(LevelSummary::of(&a), LevelSummary::of(&b), "{} level {i}", e.key);
            assert_eq!(a.kernel, b.kernel, "{} level {i}", e.key);
        }
    }
}

#[test]
fn line_arrangements_by_direct_route() {
    for (key, i1) in [("lines-2", 0usize), ("lines-3", 1), ("lines-4", 2)] {
        let g = entry(key).unwrap().germ();
        let levels: Vec<LevelSummary> = (0..=3)
            .map(|i| LevelSummary::of(&omega_map_direct(&g, i, JetOrder(i as u32 + 2))))
            .collect();
        let first_surjective = levels.iter().position(|l| l.surjective);
        let first_non_injective = levels.iter().position(|l| !l.injective);
        assert_eq!(first_surjective, Some(i1), "{key}");
        assert_eq!(first_non_injective, Some(1), "{key}");
    }
}

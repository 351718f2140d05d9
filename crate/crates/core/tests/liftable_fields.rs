use liftable_core::corpus::{entry, fields, CORPUS, PHI2_GENERATORS, TWO_CUSPS_GENERATORS};
use liftable_core::germ::Multigerm;
use liftable_core::ksm::default_kmax;
use liftable_core::liftgen::{
    default_degree, same_jet_module, verify_liftable, GeneratorSet, Residual, TargetVectorField,
};
use liftable_core::localalg::GermContext;
use liftable_core::{parse_poly, JetOrder, Monomial, Rational};

fn constructed(ctx: &GermContext) -> Option<GeneratorSet> {
    let r = ctx.indices(default_kmax(ctx)).unwrap();
    let i = r.bijective_level()?;
    Some(ctx.construct_generators(i, default_degree(i)).unwrap())
}

#[test]
fn phi2_reference_generators() {
    let g = entry("phi2").unwrap().germ();
    let ctx = GermContext::new(&g).unwrap();
    let reference = fields(PHI2_GENERATORS).unwrap();
    for xi in &reference {
        let r = verify_liftable(&g, xi, JetOrder(6)).unwrap();
        assert!(r.ok, "{xi}");
        assert_eq!(r.witness.unwrap().residual, Residual::Exact, "{xi}");
    }
    let set = constructed(&ctx).unwrap();
    assert_eq!(set.rho(), 4);
    assert!(same_jet_module(&set.fields(), &reference, 3, JetOrder(set.degree)));
    assert!(ctx.span_check(&reference, JetOrder(4)).unwrap().equal);
    for skip in 0..reference.len() {
        let fewer: Vec<_> = reference.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, f)| f.clone()).collect();
        assert!(!ctx.span_check(&fewer, JetOrder(4)).unwrap().equal);
    }
}

#[test]
fn two_cusps_reference_generators() {
    let g = entry("two-cusps").unwrap().germ();
    let ctx = GermContext::new(&g).unwrap();
    let reference = fields(TWO_CUSPS_GENERATORS).unwrap();
    for xi in &reference {
        let r = verify_liftable(&g, xi, JetOrder(12)).unwrap();
        assert!(r.ok, "{xi}");
        match r.witness.as_ref().unwrap().residual {
            Residual::Exact => {}
            Residual::Order(d) => assert!(d > 12, "{xi}: residual at degree {d}"),
        }
    }
    // on the first branch the source field starts with 3x^4 d/dx
    let w = verify_liftable(&g, &reference[0], JetOrder(12)).unwrap().witness.unwrap();
    let eta = &w.per_branch_eta[0][0];
    assert_eq!(eta.order(), Some(4));
    assert_eq!(eta.coeff(&Monomial::from_exponents(vec![4])), Rational::from(3));

    let set = ctx.construct_generators(1, 8).unwrap();
    assert_eq!(set.rho(), 2);
    assert!(same_jet_module(&set.fields(), &reference, 2, JetOrder(8)));
    assert!(ctx.span_check(&reference, JetOrder(8)).unwrap().equal);
}

#[test]
fn generator_counts_agree_three_ways() {
    for e in CORPUS {
        let ctx = GermContext::new(&e.germ()).unwrap();
        let Ok(mg) = ctx.min_generators(default_kmax(&ctx)) else { continue };
        assert!(mg.agree(), "{}: {mg:?}", e.key);
        if let Some(expected) = e.expect.min_generators {
            assert_eq!(mg.direct, expected, "{}", e.key);
        }
    }
}

#[test]
fn constructed_generators_are_minimal_and_liftable() {
    for e in CORPUS.iter().filter(|e| e.key != "large-corank-one") {
        let g = e.germ();
        let ctx = GermContext::new(&g).unwrap();
        let Some(set) = constructed(&ctx) else { continue };
        let order = JetOrder(set.degree);
        let kernel = ctx.omega_map(set.level + 1).unwrap().kernel_fields(g.p);
        assert_eq!(set.rho(), kernel.len());
        for (gen, xi) in set.generators.iter().zip(&kernel) {
            assert_eq!(&gen.field.homogeneous_part(set.level as u32 + 1), xi, "{}", e.key);
            assert_eq!(gen.field.order(), Some(set.level as u32 + 1));
            let deeper = if gen.is_exact() { set.degree + 2 } else { set.degree };
            for n in [set.degree - 2, deeper] {
                assert!(verify_liftable(&g, &gen.field, JetOrder(n)).unwrap().ok, "{} order {n}: {}", e.key, gen.field);
            }
        }
        let all = set.fields();
        assert!(ctx.span_check(&all, order).unwrap().equal, "{}", e.key);
        for skip in 0..all.len() {
            let fewer: Vec<_> = all.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, f)| f.clone()).collect();
            assert!(!ctx.span_check(&fewer, order).unwrap().equal, "{} without {skip}", e.key);
        }
    }
}

#[test]
fn coordinate_axes_lift_exactly_the_diagonal_fields() {
    let g = entry("lines-2").unwrap().germ();
    let ctx = GermContext::new(&g).unwrap();
    let set = constructed(&ctx).unwrap();
    let expected = fields(&[&["X1", "0"], &["0", "X2"]]).unwrap();
    assert_eq!(set.fields(), expected);
    // every liftable jet is (X1 a, X2 b)
    let module = ctx.liftable_jets(JetOrder(3)).unwrap();
    assert_eq!(module.rank(), 2 * (10 - 4));
}

#[test]
fn identity_lifts_everything() {
    let g = Multigerm::from_strings(1, 1, &[&["x1"]]).unwrap();
    let ctx = GermContext::new(&g).unwrap();
    assert!(ctx.span_check(&[TargetVectorField::parse(&["1"]).unwrap()], JetOrder(5)).unwrap().equal);
}

#[test]
fn cusp_liftability_examples() {
    let cusp = entry("cusp").unwrap().germ();
    let euler = TargetVectorField::parse(&["2*X1", "3*X2"]).unwrap();
    let r = verify_liftable(&cusp, &euler, JetOrder(8)).unwrap();
    assert!(r.ok);
    assert_eq!(r.witness.unwrap().per_branch_eta[0][0], parse_poly("x1", cusp.source_ring()).unwrap());
    let constant = TargetVectorField::parse(&["1", "0"]).unwrap();
    assert!(!verify_liftable(&cusp, &constant, JetOrder(8)).unwrap().ok);
}

#[test]
fn generator_documents_round_trip() {
    let g = entry("two-cusps").unwrap().germ();
    let ctx = GermContext::new(&g).unwrap();
    let set = constructed(&ctx).unwrap();
    let text = serde_json::to_string(&set.to_document()).unwrap();
    let back = liftable_core::liftgen::load_fields(&text, 2).unwrap();
    assert_eq!(back, set.fields());
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["rho"], 2);
    assert_eq!(doc["level"], 1);
    assert_eq!(doc["generators"][0]["witnesses"].as_array().unwrap().len(), 2);
}

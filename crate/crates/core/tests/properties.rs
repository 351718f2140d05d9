use liftable_core::germ::{stabilization, Multigerm};
use liftable_core::linalg::{intersect, kernel_of_images, Echelon, SparseVec};
use liftable_core::{parse_poly, JetOrder, Monomial, Polynomial, Rational, RingTag};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

fn poly(ring: RingTag, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars;
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), rational()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

/// Polynomials without constant term, usable as map components.
fn component(ring: RingTag) -> impl Strategy<Value = Polynomial> {
    poly(ring, 2, 3).prop_map(|p| &p - &Polynomial::constant(p.ring(), p.constant_term()))
}

const SRC: RingTag = RingTag::source(2);
const TGT: RingTag = RingTag::target(2);

proptest! {
    #[test]
    fn truncation_commutes_with_products(a in poly(SRC, 3, 5), b in poly(SRC, 3, 5), n in 0u32..6) {
        let o = JetOrder(n);
        let full = (&a * &b).truncate(o);
        prop_assert_eq!(&full, &a.truncate(o).mul_truncated(&b.truncate(o), Some(o)));
        prop_assert_eq!(&full, &a.mul_truncated(&b, Some(o)));
    }

    #[test]
    fn composition_is_a_ring_homomorphism(
        u in poly(TGT, 2, 4),
        v in poly(TGT, 2, 4),
        f1 in component(SRC),
        f2 in component(SRC),
        n in 0u32..6,
    ) {
        let f = [f1, f2];
        let o = JetOrder(n);
        let c = |w: &Polynomial| w.compose(&f, o).unwrap();
        prop_assert_eq!(c(&(&u * &v)), c(&u).mul_truncated(&c(&v), Some(o)));
        prop_assert_eq!(c(&(&u + &v)), &c(&u) + &c(&v));
        let exact = (&u * &v).compose_exact(&f).unwrap();
        prop_assert_eq!(exact.truncate(o), c(&(&u * &v)));
    }

    #[test]
    fn partial_derivatives_obey_leibniz(a in poly(SRC, 3, 5), b in poly(SRC, 3, 5), k in 0usize..2) {
        let lhs = (&a * &b).partial(k);
        let rhs = &(&a.partial(k) * &b) + &(&a * &b.partial(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printing_round_trips(a in poly(SRC, 4, 6), t in poly(TGT, 4, 6)) {
        prop_assert_eq!(parse_poly(&a.to_string(), SRC).unwrap(), a);
        prop_assert_eq!(parse_poly(&t.to_string(), TGT).unwrap(), t);
    }

    #[test]
    fn rationals_agree_with_big_rationals(
        a in any::<i64>(), b in 1i64..=i64::MAX, c in any::<i64>(), d in 1i64..=i64::MAX,
    ) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        let bx = BigRational::new(BigInt::from(a), BigInt::from(b));
        let by = BigRational::new(BigInt::from(c), BigInt::from(d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn intersection_dimension_formula(
        a in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4),
        b in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4),
    ) {
        let sparse = |v: &Vec<i64>| -> SparseVec {
            v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c as u32, Rational::from(*x))).collect()
        };
        let ea = Echelon::from_rows(5, a.iter().map(sparse));
        let eb = Echelon::from_rows(5, b.iter().map(sparse));
        let sum = Echelon::from_rows(5, a.iter().chain(&b).map(sparse));
        let cap = intersect(&ea, &eb);
        prop_assert!(ea.contains_space(&cap) && eb.contains_space(&cap));
        prop_assert_eq!(ea.rank() + eb.rank(), cap.rank() + sum.rank());
    }

    #[test]
    fn kernel_vectors_map_to_zero(images in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..6)) {
        let imgs: Vec<SparseVec> = images
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c as u32, Rational::from(*x))).collect())
            .collect();
        let (rank, kernel) = kernel_of_images(&imgs, 3);
        prop_assert_eq!(rank + kernel.len(), imgs.len());
        for w in &kernel {
            let mut acc = vec![Rational::from(0); 3];
            for (k, c) in w {
                for (col, x) in &imgs[*k as usize] {
                    acc[*col as usize] += c * x;
                }
            }
            prop_assert!(acc.iter().all(|x| *x == Rational::from(0)));
        }
    }

    #[test]
    fn stabilization_is_invariant_under_linear_source_changes(
        a in 2u32..5,
        b in 1u32..3,
        s in -3i64..=3,
        t in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
    ) {
        let base = Multigerm::from_strings(2, 2, &[&["x1", &format!("x2^{a} + x1*x2^{b}")]]).unwrap();
        // x1 -> t*x1 + s*x2, x2 -> x2
        let change = [parse_poly(&format!("{t}*x1 + {s}*x2"), SRC).unwrap(), parse_poly("x2", SRC).unwrap()];
        let comps = base.branches[0]
            .components
            .iter()
            .map(|c| c.retag(TGT).compose_exact(&change).unwrap())
            .collect::<Vec<_>>();
        let strings: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
        let moved = Multigerm::from_strings(2, 2, &[&refs]).unwrap();
        let s0 = stabilization(&base, 24).unwrap();
        let s1 = stabilization(&moved, 24).unwrap();
        prop_assert_eq!((s0.delta, s0.ell), (s1.delta, s1.ell));
        prop_assert_eq!(s0.delta, a as usize);
    }
}

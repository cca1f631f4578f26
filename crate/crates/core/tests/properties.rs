mod common;

use std::sync::Arc;

use lcverify_core::linalg::DEFAULT_PIECE_BOUND;
use lcverify_core::rational::{int, rat};
use lcverify_core::{
    ideal_member, linear_membership_oracle, parse_polynomial, Budget, DegreeQ, GroebnerBasis, IdealGens, Membership,
    Monomial, Polynomial, Ring,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mixed_ring() -> Arc<Ring> {
    Ring::graded(vec![("x".into(), int(1)), ("y".into(), rat(1, 2)), ("z".into(), rat(2, 3))]).unwrap()
}

fn poly(ring: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -9i64..=9, 1i64..=4), 0..6).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(e.to_vec()), rat(n, d))).collect();
        Polynomial::from_terms(&ring, terms)
    })
}

fn seed() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in poly(mixed_ring()), g in poly(mixed_ring()), h in poly(mixed_ring())) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(f.ring()), f.clone());
    }

    #[test]
    fn valuation_axioms(f in poly(mixed_ring()), g in poly(mixed_ring())) {
        let (vf, vg) = (f.order_valuation(), g.order_valuation());
        prop_assert_eq!((&f * &g).order_valuation(), &vf + &vg);
        prop_assert!((&f + &g).order_valuation() >= vf.clone().min(vg.clone()));
        prop_assert_eq!(vf == DegreeQ::Infinity, f.is_zero());
    }

    #[test]
    fn print_parse_round_trip(f in poly(mixed_ring())) {
        let back = parse_polynomial(f.ring(), &f.to_string()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_canonical_string(), f.to_canonical_string());
    }

    #[test]
    fn degree_components_reconstruct(f in poly(mixed_ring())) {
        let parts = f.degree_components();
        let mut sum = Polynomial::zero(f.ring());
        for (d, p) in &parts {
            let hd = p.homogeneous_degree();
            prop_assert_eq!(hd.as_ref(), Some(d));
            sum = &sum + p;
        }
        prop_assert_eq!(sum, f.clone());
        let lowest = parts.keys().next().cloned().map(DegreeQ::Finite).unwrap_or(DegreeQ::Infinity);
        prop_assert_eq!(f.order_valuation(), lowest);
    }

    #[test]
    fn normal_form_idempotent(mut rng in seed(), f in poly(common::graded_ring(3))) {
        let gens = (1..=3).map(|d| common::homogeneous(&mut rng, f.ring(), d, 2)).collect();
        let ideal = IdealGens::new(f.ring(), gens).unwrap();
        let gb = GroebnerBasis::compute(&ideal, &Budget::unlimited()).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&(&f - &nf)).unwrap());
        for (m, _) in nf.terms() {
            prop_assert!(gb.is_standard(m));
        }
    }

    #[test]
    fn certificates_sound(mut rng in seed()) {
        let (f, ideal) = common::membership_instance(&mut rng);
        match ideal_member(&f, &ideal, &Budget::unlimited()).unwrap() {
            Membership::In(c) => {
                prop_assert!(c.verify(ideal.gens()));
                let mut bad = c.clone();
                bad.target = &bad.target + &Polynomial::var_index(f.ring(), 0).pow(7);
                prop_assert!(!bad.verify(ideal.gens()));
            }
            Membership::Out { normal_form } => prop_assert!(!normal_form.is_zero()),
        }
    }

    #[test]
    fn oracle_agrees_with_groebner(mut rng in seed()) {
        let (f, ideal) = common::membership_instance(&mut rng);
        let none = IdealGens::new(ideal.ring(), Vec::new()).unwrap();
        let gb = ideal_member(&f, &ideal, &Budget::unlimited()).unwrap().is_in();
        let la = linear_membership_oracle(&f, &ideal, &none, DEFAULT_PIECE_BOUND).unwrap();
        prop_assert_eq!(gb, la.member);
    }
}

use std::sync::Arc;

use braidrep::bkl::{self, CBkl};
use braidrep::braid::{forget_last_strand, perm_of, pure_generator, BraidWord, Perm};
use braidrep::fox::{fox_derivative, magnus_in_gamma_basis, FreeWord, GroupRingElement};
use braidrep::gassner::{gamma, reduced_burau_matrix, Gassner};
use braidrep::graded::{colored_product, induced_block, ColoredFamily, GradedMap};
use braidrep::lawrence::{self, CLawrence};
use braidrep::matrix::Matrix;
use braidrep::quantum::{check_conjugation, PINNED_SIGN};
use braidrep::ring::{LaurentPoly, Substitution, VarSet};
use dashu_int::IBig;
use proptest::prelude::*;

fn vars3() -> Arc<VarSet> {
    VarSet::new(["x", "y", "z"]).unwrap()
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, 3), -20i64..=20), 0..6).prop_map(|ts| {
        LaurentPoly::from_terms(&vars3(), ts.into_iter().map(|(e, c)| (e.into_iter().collect(), IBig::from(c)))).unwrap()
    })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as i64, any::<bool>()), 0..max_len).prop_map(move |ls| {
        let signed: Vec<i64> = ls.into_iter().map(|(i, p)| if p { i } else { -i }).collect();
        BraidWord::from_signed(n, &signed).unwrap()
    })
}

fn pure_word(n: usize, max_factors: usize) -> impl Strategy<Value = BraidWord> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|r| (r + 1..=n).map(move |s| (r, s))).collect();
    prop::collection::vec((prop::sample::select(pairs), any::<bool>()), 0..max_factors).prop_map(move |fs| {
        fs.into_iter().fold(BraidWord::identity(n), |acc, ((r, s), pos)| {
            let g = pure_generator(n, r, s).unwrap();
            acc.concat(&if pos { g } else { g.inverse() }).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn text_and_json_round_trips(a in poly()) {
        prop_assert_eq!(LaurentPoly::parse(&vars3(), &a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly(), b in poly(), ex in -2i32..=2, ey in -2i32..=2) {
        let target = VarSet::new(["u", "v"]).unwrap();
        let sub = Substitution::new(&vars3(), &target)
            .set_str("x", &format!("u^{ex}*v"))
            .unwrap()
            .set_str("y", &format!("-v^{ey}"))
            .unwrap()
            .set_str("z", "u")
            .unwrap();
        let (sa, sb) = (sub.apply(&a).unwrap(), sub.apply(&b).unwrap());
        prop_assert_eq!(sub.apply(&(&a * &b)).unwrap(), &sa * &sb);
        prop_assert_eq!(sub.apply(&(&a + &b)).unwrap(), &sa + &sb);
    }

    #[test]
    fn permutation_is_a_homomorphism(u in word(5, 12), v in word(5, 12)) {
        prop_assert_eq!(perm_of(&u.concat(&v).unwrap()), perm_of(&u).compose(&perm_of(&v)));
        prop_assert!(perm_of(&u).compose(&perm_of(&u.inverse())).is_identity());
    }

    #[test]
    fn forgetting_respects_products(u in pure_word(4, 5), v in pure_word(4, 5)) {
        let whole = forget_last_strand(&u.concat(&v).unwrap()).unwrap();
        let parts = forget_last_strand(&u).unwrap().concat(&forget_last_strand(&v).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn fox_fundamental_identity(xs in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..12)) {
        let w = FreeWord::from_signed(&xs);
        let lhs = GroupRingElement::from_word(w.clone()).sub(&GroupRingElement::one());
        let mut rhs = GroupRingElement::zero();
        for j in 1..=3u32 {
            let xj = GroupRingElement::from_word(FreeWord::generator(j)).sub(&GroupRingElement::one());
            rhs = rhs.add(&fox_derivative(&GroupRingElement::from_word(w.clone()), j).mul(&xj));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_words_give_inverse_matrices(w in word(4, 8)) {
        let m = reduced_burau_matrix(&w).unwrap();
        let mi = reduced_burau_matrix(&w.inverse()).unwrap();
        prop_assert!(m.mul(&mi).unwrap().is_identity());
        prop_assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn fox_gassner_matches_gamma_on_pure_words(w in pure_word(4, 4)) {
        prop_assert_eq!(magnus_in_gamma_basis(&w).unwrap(), gamma(&w).unwrap());
    }

    #[test]
    fn identity_block_is_the_coloured_product(w in word(4, 8)) {
        let id = Perm::identity(4);
        let fams: [Box<dyn ColoredFamily>; 3] = [
            Box::new(Gassner::new(4)),
            Box::new(CBkl::new(4)),
            Box::new(CLawrence::new(4, 2).unwrap()),
        ];
        for fam in &fams {
            let blk = induced_block(fam.as_ref(), &w, &id).unwrap();
            prop_assert_eq!(&blk.dst, &perm_of(&w));
            prop_assert_eq!(blk.matrix, colored_product(fam.as_ref(), &w, fam.convention()).unwrap());
        }
    }

    #[test]
    fn conjugation_on_random_words(w in word(3, 5)) {
        prop_assert!(check_conjugation(&w, PINNED_SIGN).unwrap().is_zero());
    }

    #[test]
    fn specialisations_forget_colours(w in word(4, 6)) {
        let b = bkl::cbkl(&w).unwrap().substitute(&bkl::to_uncolored(4)).unwrap();
        prop_assert_eq!(b, bkl::bkl_matrix(&w).unwrap());
        let l = lawrence::claw(&w, 2).unwrap().substitute(&lawrence::to_uncolored(4)).unwrap();
        prop_assert_eq!(l, lawrence::lawrence_matrix(&w, 2).unwrap());
    }

    #[test]
    fn graded_json_round_trip(w in word(3, 5)) {
        let g = braidrep::gassner::induced_gassner(&w, None).unwrap();
        prop_assert_eq!(GradedMap::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn matrix_json_round_trip(w in word(3, 5)) {
        let m = bkl::cbkl(&w).unwrap();
        prop_assert_eq!(Matrix::from_json(m.vars(), &m.to_json()).unwrap(), m);
    }
}

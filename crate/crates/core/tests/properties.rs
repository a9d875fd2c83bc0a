//! Property tests for the invariants of the exact engine.

use bc2_core::coords;
use bc2_core::expansion::{d_coeffs, l_matrices, phi_expansion};
use bc2_core::krawtchouk::{generating_function_check, krawtchouk_eval, self_duality_check};
use bc2_core::leading::{q_poly, s_matrix};
use bc2_core::lie::{
    casimir_eigenvalue, casimir_eigenvalue_ip, dominance_leq, label_weight, weyl_dim, MsfLabel,
    PairParams,
};
use bc2_core::symbolic::rational::{self, q, qi, Rational};
use bc2_core::symbolic::{symmetric_reduce, MultiPoly, PolyMatrix, Vars};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| q(n, d))
}

fn poly(vars: Vars) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), rat()), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(&vars, terms.into_iter().map(|((i, j), c)| (vec![i, j], c))).unwrap()
    })
}

fn params() -> impl Strategy<Value = PairParams> {
    (3i64..6, 0i64..4, 0i64..3).prop_map(|(m, a, b)| PairParams::new(m, a, b).unwrap())
}

fn params_label() -> impl Strategy<Value = (PairParams, MsfLabel)> {
    params().prop_flat_map(|p| {
        (Just(p), 0..=p.a, 0i64..3, 0i64..3)
            .prop_map(|(p, i, d1, d2)| (p, MsfLabel::new(i, d1, d2)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(f in poly(Vars::c()), g in poly(Vars::c()), h in poly(Vars::c())) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(&Vars::c()), f.clone());
    }

    #[test]
    fn leibniz_rule(f in poly(Vars::c()), g in poly(Vars::c()), idx in 0usize..2) {
        let lhs = (&f * &g).derive(idx);
        let rhs = &(&f.derive(idx) * &g) + &(&f * &g.derive(idx));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(Vars::c()), g in poly(Vars::c()), x in rat(), y in rat()) {
        let pt = [x, y];
        let prod = (&f * &g).evaluate(&pt).unwrap();
        prop_assert_eq!(prod, f.evaluate(&pt).unwrap() * g.evaluate(&pt).unwrap());
    }

    #[test]
    fn symmetric_reduce_round_trip(f in poly(Vars::psi())) {
        let c = coords::psi_to_c(&f).unwrap();
        prop_assert_eq!(symmetric_reduce(&c).unwrap(), f);
    }

    #[test]
    fn psi_x_round_trip(f in poly(Vars::psi())) {
        let x = coords::psi_to_x(&f).unwrap();
        prop_assert_eq!(coords::x_to_psi(&x).unwrap(), f);
    }

    #[test]
    fn rational_text_round_trip(r in rat()) {
        prop_assert_eq!(rational::parse(&rational::to_string(&r)), Some(r));
    }

    #[test]
    fn diffop_is_linear(f in poly(Vars::psi()), g in poly(Vars::psi()), k in rat(), m in 3i64..6) {
        let op = bc2_core::casimir::r0_psi_op(m);
        let v = Vars::psi();
        let wrap = |p: &MultiPoly| PolyMatrix::from_entries(&v, 1, 1, vec![p.clone()]).unwrap();
        let lhs = op.apply(&wrap(&(&f.scale(&k) + &g))).unwrap();
        let rhs = op.apply(&wrap(&f)).unwrap().scale(&k).add(&op.apply(&wrap(&g)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_transform_commutes_with_substitution(f in poly(Vars::psi()), m in 3i64..6) {
        let op = bc2_core::casimir::r0_psi_op(m);
        let opx = op.affine_transform(&coords::jacobian_x_psi(), &coords::psi_in_x()).unwrap();
        let v = Vars::psi();
        let in_psi = op.apply(&PolyMatrix::from_entries(&v, 1, 1, vec![f.clone()]).unwrap()).unwrap();
        let fx = coords::psi_to_x(&f).unwrap();
        let in_x = opx.apply(&PolyMatrix::from_entries(&Vars::x(), 1, 1, vec![fx]).unwrap()).unwrap();
        prop_assert_eq!(coords::psi_to_x(in_psi.get(0, 0)).unwrap(), in_x.get(0, 0).clone());
    }

    #[test]
    fn krawtchouk_invariants(n in 0i64..6, x in 0i64..6, big_n in 5i64..7, p in (1i64..5, 5i64..9).prop_map(|(a, b)| q(a, b))) {
        prop_assert_eq!(krawtchouk_eval(n, x, &p, big_n).unwrap(), krawtchouk_eval(x, n, &p, big_n).unwrap());
        prop_assert!(krawtchouk_eval(n, 0, &p, big_n).unwrap().is_one());
        prop_assert!(generating_function_check(x, &p, big_n).unwrap());
        prop_assert!(self_duality_check(&p, 3).unwrap());
    }

    #[test]
    fn eigenvalue_forms_agree((p, l) in params_label()) {
        let w = label_weight(&p, &l).unwrap();
        prop_assert_eq!(casimir_eigenvalue(&p, &l), casimir_eigenvalue_ip(&w));
        prop_assert!(weyl_dim(&w).unwrap() > num_bigint::BigInt::zero());
    }

    #[test]
    fn bottom_is_dominance_ordered(p in params()) {
        for i in 1..=p.a {
            let lo = label_weight(&p, &MsfLabel::new(i - 1, 0, 0)).unwrap();
            let hi = label_weight(&p, &MsfLabel::new(i, 0, 0)).unwrap();
            prop_assert!(dominance_leq(&lo, &hi));
            prop_assert!(!dominance_leq(&hi, &lo));
        }
    }

    #[test]
    fn expansion_is_normalised_and_triangular((p, l) in params_label()) {
        let t = phi_expansion(&p, &l).unwrap();
        prop_assert!(t.value_at_identity().is_one());
        let top = label_weight(&p, &l).unwrap();
        for k in t.coeffs.keys() {
            prop_assert!(dominance_leq(&label_weight(&p, k).unwrap(), &top));
            prop_assert!(casimir_eigenvalue(&p, k) <= casimir_eigenvalue(&p, &l));
        }
        prop_assert!(!t.coeffs[&l].is_zero());
    }

    #[test]
    fn transition_matrices_are_inverse(p in params()) {
        let (l, linv) = l_matrices(&p).unwrap();
        prop_assert!(l.mul(&linv).is_identity());
        for i in 0..=p.a {
            let total = d_coeffs(&p, i).unwrap().into_iter().fold(Rational::zero(), |a, x| a + x);
            prop_assert!(total.is_one());
        }
    }

    #[test]
    fn leading_terms_have_fixed_shape(p in params()) {
        for i in 0..=p.a {
            for k in 0..=p.a {
                let t = q_poly(&p, i, k).unwrap();
                prop_assert!(t.satisfies_invariants());
                prop_assert_eq!(t.poly.homogeneous_degree(), Some((p.a + 2 * p.b + 2 * i) as u32));
            }
        }
    }

    #[test]
    fn weight_scalar_part(p in params()) {
        let s = s_matrix(&p).unwrap().entries_psi;
        let s0 = s_matrix(&PairParams::new(p.m, p.a, 0).unwrap()).unwrap().entries_psi;
        let psi2b = MultiPoly::var(&Vars::psi(), 1).pow(p.b as u32);
        prop_assert_eq!(s, s0.scale_poly(&psi2b));
        let at_e = s0.evaluate(&[qi(2), qi(1)]).unwrap();
        for i in 0..p.size() {
            for j in 0..p.size() {
                prop_assert_eq!(at_e.get(i, j), &qi(p.a + 1));
            }
        }
    }
}

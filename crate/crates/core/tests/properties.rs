use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qaw_core::awcore::{context, dq_apply, sq_apply};
use qaw_core::families::counterexample_family;
use qaw_core::numeric::{operator_deviation, NumericConfig};
use qaw_core::parse::{parse_scalar, parse_xpoly};
use qaw_core::scalar::Laurent;
use qaw_core::structure::expand_in_basis;
use qaw_core::zsym::{divide_exact, x_to_z, z_to_x, ZLaurent};
use qaw_core::{Scalar, XPoly};

fn laurent(max_terms: usize, t_range: i32, u_range: i32) -> impl Strategy<Value = Laurent> {
    prop::collection::vec(((-t_range..=t_range, -u_range..=u_range), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(
        |terms| {
            Laurent::from_terms(
                terms.into_iter().map(|(e, n, d)| (e, BigRational::new(BigInt::from(n), BigInt::from(d)))),
            )
        },
    )
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(3, 3, 2), laurent(2, 2, 1)).prop_map(|(n, d)| {
        if d.is_zero() {
            Scalar::from_laurent(n)
        } else {
            Scalar::from_fraction(n, d).unwrap()
        }
    })
}

fn laurent_scalar() -> impl Strategy<Value = Scalar> {
    laurent(3, 3, 2).prop_map(Scalar::from_laurent)
}

fn u_free_scalar() -> impl Strategy<Value = Scalar> {
    laurent(3, 4, 0).prop_map(Scalar::from_laurent)
}

fn xpoly(max_deg: usize, coeff: BoxedStrategy<Scalar>) -> impl Strategy<Value = XPoly> {
    prop::collection::vec(coeff, 0..=max_deg + 1).prop_map(XPoly::from_coeffs)
}

fn zlaurent() -> impl Strategy<Value = ZLaurent> {
    prop::collection::vec((-3i64..=3, u_free_scalar()), 0..=4).prop_map(ZLaurent::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn addition_is_a_group(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
    }

    #[test]
    fn multiplication_and_distributivity(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn inverses(a in scalar()) {
        if a.is_zero() {
            prop_assert!(a.inverse().is_err());
        } else {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn normal_form_is_canonical(a in scalar(), k in laurent(2, 2, 1)) {
        prop_assume!(!k.is_zero());
        let again = Scalar::from_fraction(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let scaled = Scalar::from_fraction(a.numerator().mul(&k), a.denominator().mul(&k)).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(a.denominator().min_exps(), (0, 0));
        if a.is_zero() {
            prop_assert!(a.denominator().is_one());
        }
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn shift_then_instantiate(a in scalar(), k in -3i32..=3, n in -4i64..=6) {
        let lhs = a.shift_n(k).instantiate_n(n).ok();
        let rhs = a.instantiate_n(n + k as i64).ok();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_commutes_with_arithmetic(a in scalar(), b in scalar(), q0 in 0.2f64..0.9, n in 0i64..5) {
        let ev = |s: &Scalar| s.eval(q0, Some(n));
        let (Ok(x), Ok(y), Ok(s), Ok(p)) = (ev(&a), ev(&b), ev(&(&a + &b)), ev(&(&a * &b))) else {
            return Ok(());
        };
        prop_assume!(x.abs() < 1e6 && y.abs() < 1e6);
        let close = |u: f64, v: f64| (u - v).abs() <= 1e-7 * (1.0 + u.abs().max(v.abs()));
        prop_assert!(close(s, x + y), "{} vs {}", s, x + y);
        prop_assert!(close(p, x * y), "{} vs {}", p, x * y);
    }

    #[test]
    fn change_of_variables_round_trips(f in xpoly(6, scalar().boxed())) {
        prop_assert_eq!(z_to_x(&x_to_z(&f)), f);
    }

    #[test]
    fn symmetric_product_matches_x_product(f in xpoly(4, u_free_scalar().boxed()), g in xpoly(4, u_free_scalar().boxed())) {
        prop_assert_eq!(x_to_z(&f).mul(&x_to_z(&g)), x_to_z(&(&f * &g)));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in zlaurent(), b in zlaurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(divide_exact(&a.mul(&b), &b).unwrap(), a);
    }

    #[test]
    fn expansion_resums(f in xpoly(6, laurent_scalar().boxed())) {
        let fam = counterexample_family();
        let e = expand_in_basis(&f, &fam);
        let mut sum = XPoly::zero();
        for (k, c) in e.iter().enumerate() {
            sum = &sum + &fam.poly(k).scale(c);
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn product_rules(f in xpoly(3, laurent_scalar().boxed()), g in xpoly(3, laurent_scalar().boxed())) {
        let ctx = context();
        let (df, sf, dg, sg) = (dq_apply(&f).unwrap(), sq_apply(&f).unwrap(), dq_apply(&g).unwrap(), sq_apply(&g).unwrap());
        let fg = &f * &g;
        prop_assert_eq!(dq_apply(&fg).unwrap(), &(&df * &sg) + &(&sf * &dg));
        prop_assert_eq!(sq_apply(&fg).unwrap(), &(&(&df * &dg) * ctx.u2()) + &(&sf * &sg));
    }

    #[test]
    fn dq_lowers_degree_by_one(f in xpoly(6, u_free_scalar().boxed())) {
        let d = dq_apply(&f).unwrap();
        match f.degree() {
            None | Some(0) => prop_assert!(d.is_zero()),
            Some(m) => prop_assert_eq!(d.degree(), Some(m - 1)),
        }
        prop_assert_eq!(sq_apply(&f).unwrap().degree(), f.degree());
    }

    #[test]
    fn lattice_agrees_with_exact_operators(f in xpoly(10, u_free_scalar().boxed())) {
        let cfg = NumericConfig::default();
        let dev = operator_deviation(&f, &cfg).unwrap();
        prop_assert!(dev < cfg.rel_tol, "{}", dev);
    }

    #[test]
    fn polynomial_display_round_trips(f in xpoly(4, scalar().boxed())) {
        prop_assert_eq!(parse_xpoly(&f.to_string()).unwrap(), f);
    }
}

//! Library output against the rational-specialization oracle in `common`.

mod common;

use common::{eval_scalar, q, qi, sample_ts, sample_zs, Oracle, QPoly, Q};
use num_traits::{One, Zero};
use qaw_core::awcore::{context, dq_apply, sq_apply, u2};
use qaw_core::families::closed_forms::{
    alpha_n, big_b, big_c, c_n1, c_n2, c_n3, c_n4, d_k, gamma_n, small_c, D3Reading, NIndex,
};
use qaw_core::families::{aw_hyp_poly, counterexample_family, dual_qhahn_family, generic_params, FamilyParams};
use qaw_core::parse::parse_xpoly;
use qaw_core::scalar::Laurent;
use qaw_core::structure::{expand_in_basis, structure_relation};
use qaw_core::zsym::{divide_exact, x_to_z, z_to_x, SymPoly, ZLaurent};
use qaw_core::{Scalar, XPoly};

fn at(n: i64) -> NIndex {
    NIndex::At(n)
}

#[test]
fn closed_forms_match_fresh_transcription() {
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        for n in 0..=12i64 {
            let ev = |s: Scalar| eval_scalar(&s, &t, None);
            assert_eq!(ev(alpha_n(at(n))), o.alpha_n(n), "alpha_{n}");
            assert_eq!(ev(gamma_n(at(n))), o.gamma_n(n), "gamma_{n}");
            assert_eq!(ev(big_b(at(n))), o.big_b(n), "B_{n}");
            assert_eq!(ev(big_c(at(n))), o.big_c(n), "C_{n}");
            assert_eq!(ev(small_c(at(n))), o.small_c(n), "c_{n}");
            assert_eq!(ev(c_n1(at(n))), o.c_n1(n));
            assert_eq!(ev(c_n2(at(n))), o.c_n2(n));
            assert_eq!(ev(c_n3(at(n))), o.c_n3(n));
            assert_eq!(ev(c_n4(at(n))), o.c_n4(n));
        }
    }
}

#[test]
fn symbolic_closed_forms_evaluate_like_concrete_ones() {
    let t = q(2, 3);
    let o = Oracle::new(t.clone());
    let s = NIndex::symbolic();
    for n in 1..=9i64 {
        assert_eq!(eval_scalar(&c_n3(s), &t, Some(n)), o.c_n3(n));
        assert_eq!(eval_scalar(&c_n4(s), &t, Some(n)), o.c_n4(n));
        assert_eq!(eval_scalar(&big_b(s.shift(-1)), &t, Some(n)), o.big_b(n - 1));
    }
}

#[test]
fn hahn_substitution_gives_b_and_c() {
    // (1, -1, q^(1/4) | q^(1/2)) with base Q = t^2.
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let base = &t * &t;
        for n in 0..=15 {
            let (a, b) = Oracle::hahn_ab(&qi(1), &qi(-1), &t, &base, n);
            assert_eq!(a, o.big_b(n));
            assert_eq!(b, o.big_c(n));
        }
    }
    let t = q(2, 3);
    let fam = dual_qhahn_family(&FamilyParams::counterexample()).unwrap();
    assert_eq!(eval_scalar(&fam.rec_a(0), &t, None), t);
    let one_minus_t2 = Q::one() - &t * &t;
    assert_eq!(eval_scalar(&fam.rec_b(1), &t, None), &one_minus_t2 * &one_minus_t2 / qi(2));
}

#[test]
fn polynomials_match_oracle_recurrence() {
    let fam = counterexample_family();
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let polys = o.p_polys(10);
        for (n, p) in polys.iter().enumerate() {
            assert_eq!(QPoly::from_lib(&fam.poly(n), &t), *p, "P_{n}");
        }
        assert_eq!(polys[1], QPoly(vec![-t.clone(), Q::one()]));
        let (b0, b1, c1) = (o.big_b(0), o.big_b(1), o.big_c(1));
        assert_eq!(polys[2], QPoly(vec![&b0 * &b1 - c1, -(b0 + b1), Q::one()]));
    }
}

#[test]
fn operators_match_lattice_divided_difference() {
    let fam = counterexample_family();
    let fixed = [
        parse_xpoly("x^2").unwrap(),
        parse_xpoly("x^3").unwrap(),
        parse_xpoly("(t^3 - 2) x^5 + t^-1 x^2 - 7").unwrap(),
    ];
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let polys: Vec<XPoly> = fixed.iter().cloned().chain((0..8).map(|n| (*fam.poly(n)).clone())).collect();
        for f in &polys {
            let fq = QPoly::from_lib(f, &t);
            let dq = QPoly::from_lib(&dq_apply(f).unwrap(), &t);
            let sq = QPoly::from_lib(&sq_apply(f).unwrap(), &t);
            for z in sample_zs() {
                let (od, os) = o.dq_sq(|x| fq.eval(x), &z);
                let x = Oracle::x_of(&z);
                assert_eq!(dq.eval(&x), od, "D_q of {f}");
                assert_eq!(sq.eval(&x), os, "S_q of {f}");
            }
        }
    }
}

#[test]
fn dq_and_sq_low_degree_closed_forms() {
    let t = q(3, 5);
    let o = Oracle::new(t.clone());
    let a = o.alpha();
    let g3 = o.gamma_n(3);
    // D_q x^2 = 2 alpha x, D_q x^3 = gamma_3 x^2 + (3 - gamma_3)/4
    assert_eq!(
        QPoly::from_lib(&dq_apply(&parse_xpoly("x^2").unwrap()).unwrap(), &t),
        QPoly(vec![Q::zero(), qi(2) * &a])
    );
    assert_eq!(
        QPoly::from_lib(&dq_apply(&parse_xpoly("x^3").unwrap()).unwrap(), &t),
        QPoly(vec![(qi(3) - &g3) / qi(4), Q::zero(), g3])
    );
    // S_q x = alpha x, S_q x^2 = (2 alpha^2 - 1) x^2 + 1 - alpha^2
    assert_eq!(QPoly::from_lib(&sq_apply(&XPoly::x()).unwrap(), &t), QPoly(vec![Q::zero(), a.clone()]));
    assert_eq!(
        QPoly::from_lib(&sq_apply(&parse_xpoly("x^2").unwrap()).unwrap(), &t),
        QPoly(vec![Q::one() - &a * &a, Q::zero(), qi(2) * &a * &a - Q::one()])
    );
    // U_2 leading coefficient alpha^2 - 1 = (t^2 - t^-2)^2 / 4
    let gap = o.tp(2) - o.tp(-2);
    assert_eq!(eval_scalar(&u2().coeff(2), &t, None), &gap * &gap / qi(4));
    assert_eq!(&a * &a - Q::one(), &gap * &gap / qi(4));
}

#[test]
fn change_of_variables_examples() {
    // z^2 + z^-2 = 4x^2 - 2, checked at rational points.
    let sym = SymPoly::from_half(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
    let f = z_to_x(&sym);
    assert_eq!(f, parse_xpoly("4x^2 - 2").unwrap());
    for z in sample_zs() {
        let x = Oracle::x_of(&z);
        let lhs = &z * &z + (&z * &z).recip();
        assert_eq!(QPoly::from_lib(&f, &qi(1)).eval(&x), lhs);
    }
    assert_eq!(x_to_z(&f), sym);
}

#[test]
fn z_division_example_by_remultiplication() {
    // (t^4 - t^-4)(z^2 - z^-2) / ((t^2 - t^-2)(z - z^-1)) = (t^2 + t^-2)(z + z^-1)
    let s = |text: &str| -> Scalar { text.parse().unwrap() };
    let num = ZLaurent::from_terms([(2, s("t^4 - t^-4")), (-2, s("t^-4 - t^4"))]);
    let den = ZLaurent::from_terms([(1, s("t^2 - t^-2")), (-1, s("t^-2 - t^2"))]);
    let quot = divide_exact(&num, &den).unwrap();
    assert_eq!(quot, ZLaurent::from_terms([(1, s("t^2 + t^-2")), (-1, s("t^2 + t^-2"))]));
    assert_eq!(quot.mul(&den), num);
}

#[test]
fn laurent_division_example_by_remultiplication() {
    let a: Scalar = "1 - t^4".parse().unwrap();
    let b: Scalar = "1 - t^2".parse().unwrap();
    let quot = a.checked_div(&b).unwrap();
    assert!(quot.is_laurent());
    assert_eq!(&quot * &b, a);
    assert_eq!(eval_scalar(&quot, &q(2, 3), None), Q::one() + q(4, 9));
}

#[test]
fn relations_hold_in_the_oracle_alone() {
    // No library call: both relations at specialized t and lattice points.
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let polys = o.p_polys(14);
        for z in sample_zs() {
            let x = Oracle::x_of(&z);
            let pv: Vec<Q> = polys.iter().map(|p| p.eval(&x)).collect();
            let p = |k: i64| if k < 0 { Q::zero() } else { pv[k as usize].clone() };
            for n in 0..=12i64 {
                let (d, s) = o.dq_sq(|y| polys[n as usize].eval(y), &z);
                assert_eq!(s, o.alpha_n(n) * p(n) + o.small_c(n) * p(n - 1), "S_q, n = {n}");
                let rhs = o.c_n1(n) * p(n + 1) + o.c_n2(n) * p(n) + o.c_n3(n) * p(n - 1) + o.c_n4(n) * p(n - 2);
                assert_eq!(o.u2(&x) * d, rhs, "D_q, n = {n}");
            }
        }
    }
}

#[test]
fn structure_relation_coefficients_match_oracle() {
    let fam = counterexample_family();
    let pi = u2();
    for t in [q(2, 3), q(5, 4)] {
        let o = Oracle::new(t.clone());
        for n in 0..=9usize {
            let rep = structure_relation(&fam, &pi, n).unwrap();
            let m = n as i64;
            for (k, expect) in [(1, o.c_n1(m)), (0, o.c_n2(m)), (-1, o.c_n3(m)), (-2, o.c_n4(m))] {
                if m + k < 0 {
                    continue;
                }
                assert_eq!(eval_scalar(&rep.coefficient(k), &t, None), expect, "n = {n}, offset {k}");
            }
        }
    }
    // n = 1: D_q P_1 = 1, so the expansion is U_2's own, led by (alpha^2 - 1) gamma_1.
    let r1 = structure_relation(&fam, &pi, 1).unwrap();
    assert_eq!(r1.coefficient(1), pi.coeff(2));
    // n = 5: full bandwidth with a nonzero lowest coefficient.
    let r5 = structure_relation(&fam, &pi, 5).unwrap();
    assert_eq!(r5.bandwidth, Some((2, 1)));
    assert!(!Oracle::new(q(2, 3)).c_n4(5).is_zero());
}

#[test]
fn offset_minus2_factorization_in_oracle() {
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        for n in 2..=12i64 {
            let f = o.big_c(n - 1) * o.big_c(n) * o.tp(-(2 * n - 1)) * (o.tp(2) - o.tp(-2)) / qi(2);
            assert_eq!(o.c_n4(n), f);
            assert!(!f.is_zero());
        }
        assert!(o.c_n4(1).is_zero());
    }
}

#[test]
fn step_identities_in_oracle() {
    // d_{k,i} transcribed afresh, B_k reading for the third.
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let a = o.alpha();
        let a21 = &a * &a - Q::one();
        let one = Q::one();
        for k in 2..=10i64 {
            let (b, cc, sc, al) = (|j| o.big_b(j), |j| o.big_c(j), |j| o.small_c(j), o.alpha_n(k));
            assert!((o.c_n3(k) + (&a * &al - o.alpha_n(k - 1)) * cc(k) + (&a * b(k - 1) - b(k)) * sc(k)).is_zero());
            assert!((o.c_n4(k) + &a * sc(k) * cc(k - 1) - sc(k - 1) * cc(k)).is_zero());
            assert_eq!(o.alpha_n(k + 1), o.c_n1(k) + &a * &al);
            assert_eq!(sc(k + 1), o.c_n2(k) + &a * sc(k) + (&a - &one) * &al * b(k));

            let d1 = &a21 * &al + &a * o.c_n1(k);
            let d2 = &a21 * (sc(k) + &al * (b(k) + b(k + 1))) + &a * o.c_n2(k) - (b(k) - &a * b(k + 1)) * o.c_n1(k);
            let d3_head = &a21 * ((b(k) + b(k - 1)) * sc(k) + &al * (b(k) * b(k) + cc(k) + cc(k + 1) - &one))
                + &a * o.c_n1(k) * cc(k + 1)
                - o.c_n1(k - 1) * cc(k)
                + &a * o.c_n3(k);
            let d3 = &d3_head + (&a - &one) * o.c_n2(k) * b(k);
            let d3_alt = &d3_head + (&a - &one) * o.c_n2(k) * b(k + 1);
            let d4 = &a21
                * ((b(k) + b(k - 1)) * &al * cc(k) + (cc(k) + b(k - 1) * b(k - 1) + cc(k - 1) - &one) * sc(k))
                - (o.c_n2(k - 1) - &a * o.c_n2(k)) * cc(k)
                - (b(k) - &a * b(k - 1)) * o.c_n3(k)
                + &a * o.c_n4(k);
            let d5 = &a21 * cc(k - 1) * (&al * cc(k) + sc(k) * (b(k - 1) + b(k - 2))) + &a * o.c_n3(k) * cc(k - 1)
                - o.c_n3(k - 1) * cc(k)
                - (b(k) - &a * b(k - 2)) * o.c_n4(k);
            let d6 = &a21 * sc(k) * cc(k - 1) * cc(k - 2) + &a * o.c_n4(k) * cc(k - 2) - o.c_n4(k - 1) * cc(k);
            assert_eq!(d1, o.c_n1(k + 1));
            assert_eq!(d2, o.c_n2(k + 1));
            assert_eq!(d3, o.c_n3(k + 1));
            assert_ne!(d3_alt, o.c_n3(k + 1));
            assert_eq!(d4, o.c_n4(k + 1));
            assert!(d5.is_zero());
            assert!(d6.is_zero());

            let lib = d_k(NIndex::At(k), D3Reading::Bk);
            for (got, want) in lib.iter().zip([d1, d2, d3, d4, d5, d6]) {
                assert_eq!(eval_scalar(got, &t, None), want);
            }
        }
    }
}

#[test]
fn hypergeometric_sum_matches_recurrence_at_points() {
    for t in sample_ts() {
        let o = Oracle::new(t.clone());
        let base = &t * &t;
        let polys = o.p_polys(8);
        for z in sample_zs() {
            let x = Oracle::x_of(&z);
            for (n, p) in polys.iter().enumerate() {
                // Leading coefficient of the d = 0 sum is 2^n.
                let h = Oracle::hyp(&qi(1), &qi(-1), &t, &base, n, &z);
                assert_eq!(h, p.eval(&x) * Q::from_integer(num_bigint::BigInt::from(1u64 << n)), "n = {n}");
            }
        }
    }
}

#[test]
fn library_hypergeometric_matches_oracle() {
    let t = q(2, 3);
    let g = generic_params();
    let zero = Scalar::zero();
    let (a, b, c, base) = (t.clone(), &t * &t, &t * &t * &t, (&t * &t) * (&t * &t));
    for n in 0..=5usize {
        let lib = QPoly::from_lib(&aw_hyp_poly(n, &g.a, &g.b, &g.c, &zero, &g.base).unwrap(), &t);
        for z in sample_zs() {
            let h = Oracle::hyp(&a, &b, &c, &base, n, &z);
            let scale = Q::from_integer(num_bigint::BigInt::from(1u64 << n));
            assert_eq!(lib.eval(&Oracle::x_of(&z)) * scale, h, "n = {n}");
        }
    }
}

#[test]
fn expansion_of_x_is_p1_plus_b0() {
    let fam = counterexample_family();
    assert_eq!(expand_in_basis(&XPoly::x(), &fam), vec![Scalar::t(), Scalar::one()]);
    let t = q(5, 4);
    assert_eq!(Oracle::new(t.clone()).big_b(0), t);
}

#[test]
fn scalar_eval_examples() {
    let t = Scalar::t();
    let v = t.eval(0.25, None).unwrap();
    assert!((v - 0.25f64.powf(0.25)).abs() < 1e-15);
    assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    let a = context().alpha().eval(0.25, None).unwrap();
    assert!((a - (0.5 + 2.0) / 2.0).abs() < 1e-15);
    let l = Scalar::from_laurent(Laurent::one());
    assert_eq!(l.eval(0.3, None).unwrap(), 1.0);
}

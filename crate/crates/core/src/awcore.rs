//! The Askey-Wilson divided-difference operator `D_q`, the averaging
//! operator `S_q`, and the fixed polynomial `U_2`.
//!
//! Both operators act on the `z`-side: with `F(z) = f((z + 1/z)/2)`,
//!
//! ```text
//! D_q f = (F(t^2 z) - F(t^-2 z)) / ((t^2 - t^-2)(z - 1/z)/2)
//! S_q f = (F(t^2 z) + F(t^-2 z)) / 2
//! ```
//!
//! where `t^2 = q^(1/2)`. No sampling is involved; results are exact.

use std::sync::OnceLock;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::families::closed_forms::{alpha_n, gamma_n, NIndex};
use crate::report::Status;
use crate::scalar::{Laurent, Rational, Scalar};
use crate::zsym::{divide_exact, x_to_z, z_to_x, z_to_x_laurent, SymPoly, XPoly, ZLaurent};

/// Constants shared by every operator application.
#[derive(Debug, Clone)]
pub struct OperatorContext {
    alpha: Scalar,
    u2: XPoly,
    dq_denominator: ZLaurent,
}

impl OperatorContext {
    pub fn new() -> Self {
        let alpha = (Scalar::t_pow(2) + Scalar::t_pow(-2)).scale(&Rational::new(1.into(), 2.into()));
        let alpha_sq_minus_one = &(&alpha * &alpha) - &Scalar::one();
        let u2 = XPoly::from_coeffs(vec![-&alpha_sq_minus_one, Scalar::zero(), alpha_sq_minus_one]);
        let half_gap = (Scalar::t_pow(2) - Scalar::t_pow(-2)).scale(&Rational::new(1.into(), 2.into()));
        let dq_denominator = ZLaurent::from_terms([(1, half_gap.clone()), (-1, -half_gap)]);
        OperatorContext { alpha, u2, dq_denominator }
    }

    /// `alpha = (q^(1/2) + q^(-1/2))/2`.
    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// `U_2(x) = (alpha^2 - 1)(x^2 - 1)`.
    pub fn u2(&self) -> &XPoly {
        &self.u2
    }

    pub fn dq_apply(&self, f: &XPoly) -> Result<XPoly, Error> {
        Ok(dq_sym(&x_to_z(f)))
    }

    pub fn sq_apply(&self, f: &XPoly) -> Result<XPoly, Error> {
        Ok(sq_sym(&x_to_z(f)))
    }

    /// `(D_q f, S_q f)`, sharing the change of variables.
    pub fn dq_sq_apply(&self, f: &XPoly) -> Result<(XPoly, XPoly), Error> {
        let g = x_to_z(f);
        Ok((dq_sym(&g), sq_sym(&g)))
    }

    /// `D_q f` by exact division of the lattice difference by `(t^2 - t^-2)(z - 1/z)/2`.
    pub fn dq_apply_by_division(&self, f: &XPoly) -> Result<XPoly, Error> {
        if f.degree().unwrap_or(0) == 0 {
            return Ok(XPoly::zero());
        }
        let big_f = x_to_z(f);
        let num = big_f.z_scale(1).sub(&big_f.z_scale(-1));
        let quot = divide_exact(&num, &self.dq_denominator)?;
        z_to_x_laurent(&quot)
    }

    /// `S_q f` from the two lattice shifts.
    pub fn sq_apply_by_shifts(&self, f: &XPoly) -> Result<XPoly, Error> {
        let big_f = x_to_z(f);
        let sum = big_f.z_scale(1).add(&big_f.z_scale(-1));
        z_to_x_laurent(&sum.scale(&Scalar::ratio(1, 2)))
    }
}

fn dq_sym(g: &SymPoly) -> XPoly {
    // z^m + z^-m  ->  2 gamma_m (z^(m-1) + z^(m-3) + ... + z^(1-m))
    let Some(top) = g.degree().filter(|d| *d > 0) else {
        return XPoly::zero();
    };
    let mut half = vec![Scalar::zero(); top];
    for m in 1..=top {
        let a = g.coeff(m as i64);
        if a.is_zero() {
            continue;
        }
        let w = &a * &(gamma_laurent(m) * Scalar::from_int(2));
        for r in (0..m).rev().step_by(2) {
            half[r] = &half[r] + &w;
        }
    }
    z_to_x(&SymPoly::from_half(half))
}

fn sq_sym(g: &SymPoly) -> XPoly {
    // z^m + z^-m  ->  alpha_m (z^m + z^-m)
    let half = (0..=g.degree().unwrap_or(0))
        .map(|m| {
            let a = g.coeff(m as i64);
            if a.is_zero() {
                a
            } else {
                let e = 2 * m as i32;
                &a * &((Scalar::t_pow(e) + Scalar::t_pow(-e)) * Scalar::ratio(1, 2))
            }
        })
        .collect();
    z_to_x(&SymPoly::from_half(half))
}

/// `(t^(2m) - t^(-2m)) / (t^2 - t^-2) = t^(2m-2) + t^(2m-6) + ... + t^(2-2m)`.
fn gamma_laurent(m: usize) -> Scalar {
    let m = m as i32;
    Scalar::from_laurent(Laurent::from_terms((0..m).map(|j| ((2 * m - 2 - 4 * j, 0), Rational::one()))))
}

impl Default for OperatorContext {
    fn default() -> Self {
        OperatorContext::new()
    }
}

/// Process-wide operator context.
pub fn context() -> &'static OperatorContext {
    static CTX: OnceLock<OperatorContext> = OnceLock::new();
    CTX.get_or_init(OperatorContext::new)
}

pub fn dq_apply(f: &XPoly) -> Result<XPoly, Error> {
    context().dq_apply(f)
}

pub fn sq_apply(f: &XPoly) -> Result<XPoly, Error> {
    context().sq_apply(f)
}

pub fn u2() -> XPoly {
    context().u2().clone()
}

/// Random polynomial of exact degree `deg` with small Laurent coefficients in `t`.
pub fn random_xpoly(rng: &mut impl Rng, deg: usize) -> XPoly {
    let mut coeffs: Vec<Scalar> = (0..=deg).map(|_| random_scalar(rng)).collect();
    while coeffs[deg].is_zero() {
        coeffs[deg] = random_scalar(rng);
    }
    XPoly::from_coeffs(coeffs)
}

fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let nterms = rng.random_range(0..=3);
    Scalar::from_laurent(Laurent::from_terms((0..nterms).map(|_| {
        let e = rng.random_range(-4..=4);
        let c: i64 = rng.random_range(-9..=9);
        ((e, 0), Rational::from_integer(c.into()))
    })))
}

/// Outcome of [`check_operator_laws`].
#[derive(Debug, Clone, Serialize)]
pub struct LawsReport {
    pub check: &'static str,
    pub seed: u64,
    pub pairs: usize,
    pub max_degree: usize,
    pub product_rule_dq_failures: usize,
    pub product_rule_sq_failures: usize,
    pub linearity_failures: usize,
    pub degree_law_max: usize,
    pub degree_law_failures: usize,
    pub status: Status,
}

impl LawsReport {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

/// Checks the product rules and linearity on `pairs` random pairs of degree
/// at most `max_degree`, and the degree/leading-coefficient laws for every
/// degree up to `degree_law_max`.
pub fn check_operator_laws(
    seed: u64,
    pairs: usize,
    max_degree: usize,
    degree_law_max: usize,
) -> Result<LawsReport, Error> {
    let ctx = context();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus: Vec<(XPoly, XPoly, Scalar)> = (0..pairs)
        .map(|_| {
            let df = rng.random_range(0..=max_degree);
            let dg = rng.random_range(0..=max_degree);
            let c = random_scalar(&mut rng);
            (random_xpoly(&mut rng, df), random_xpoly(&mut rng, dg), c)
        })
        .collect();
    let mut dq_fail = 0;
    let mut sq_fail = 0;
    let mut lin_fail = 0;
    for (f, g, c) in &corpus {
        let (df, sf) = (ctx.dq_apply(f)?, ctx.sq_apply(f)?);
        let (dg, sg) = (ctx.dq_apply(g)?, ctx.sq_apply(g)?);
        let fg = f * g;
        if ctx.dq_apply(&fg)? != &(&df * &sg) + &(&sf * &dg) {
            dq_fail += 1;
        }
        if ctx.sq_apply(&fg)? != &(&(&df * &dg) * ctx.u2()) + &(&sf * &sg) {
            sq_fail += 1;
        }
        let comb = &f.scale(c) + g;
        if ctx.dq_apply(&comb)? != &df.scale(c) + &dg || ctx.sq_apply(&comb)? != &sf.scale(c) + &sg {
            lin_fail += 1;
        }
    }
    let mut deg_fail = 0;
    for d in 0..=degree_law_max {
        let f = random_xpoly(&mut rng, d);
        let lc = f.leading_coeff().unwrap().clone();
        let idx = NIndex::symbolic();
        let alpha_d = alpha_n(idx).instantiate_n(d as i64)?;
        let gamma_d = gamma_n(idx).instantiate_n(d as i64)?;
        let sf = ctx.sq_apply(&f)?;
        if sf.degree() != Some(d) || sf.leading_coeff() != Some(&(&alpha_d * &lc)) {
            deg_fail += 1;
        }
        let df = ctx.dq_apply(&f)?;
        let ok = if d == 0 {
            df.is_zero()
        } else {
            df.degree() == Some(d - 1) && df.leading_coeff() == Some(&(&gamma_d * &lc))
        };
        if !ok {
            deg_fail += 1;
        }
    }
    let all_ok = dq_fail + sq_fail + lin_fail + deg_fail == 0;
    Ok(LawsReport {
        check: "operator-laws",
        seed,
        pairs,
        max_degree,
        product_rule_dq_failures: dq_fail,
        product_rule_sq_failures: sq_fail,
        linearity_failures: lin_fail,
        degree_law_max,
        degree_law_failures: deg_fail,
        status: Status::from_ok(all_ok),
    })
}

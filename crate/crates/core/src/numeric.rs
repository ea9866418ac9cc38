//! Double-precision cross-check of the structure relations.
//!
//! Polynomial values come from the three-term recurrence run in `f64`, and
//! `D_q`, `S_q` from the lattice points `x(t^(+-2) z)` with
//! `z = x + sqrt(x^2 - 1)`, so the only shared input with the exact layer is
//! the closed-form coefficients.

use serde::Serialize;

use crate::awcore::context;
use crate::error::Error;
use crate::families::closed_forms::{alpha_n, big_b, big_c, c_n1, c_n2, c_n3, c_n4, small_c, NIndex};
use crate::families::counterexample_family;
use crate::report::Status;
use crate::zsym::XPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    pub q_samples: Vec<f64>,
    pub x_samples: Vec<f64>,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { q_samples: vec![0.3, 0.7], x_samples: vec![1.1, 1.5, 2.0, 3.0], rel_tol: 1e-9, abs_tol: 1e-12 }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.q_samples.is_empty() || self.x_samples.is_empty() {
            return Err(Error::Config("empty sample grid".into()));
        }
        if let Some(q) = self.q_samples.iter().find(|q| !(**q > 0.0 && **q < 1.0)) {
            return Err(Error::Config(format!("q = {q} outside (0, 1)")));
        }
        if let Some(x) = self.x_samples.iter().find(|x| !(x.abs() > 1.0 && x.is_finite())) {
            return Err(Error::Config(format!("x = {x} needs |x| > 1 for a real lattice variable")));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol >= 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    fn grid_text(&self) -> String {
        format!("q={:?} x={:?}", self.q_samples, self.x_samples)
    }
}

/// Horner evaluation with each coefficient evaluated at `q0` (and `n` if symbolic).
pub fn eval_poly(f: &XPoly, q0: f64, n_ctx: Option<i64>, x0: f64) -> Result<f64, Error> {
    let mut acc = 0.0;
    for c in f.coeffs().iter().rev() {
        acc = acc * x0 + c.eval(q0, n_ctx)?;
    }
    Ok(acc)
}

/// `x(t^2 z)` and `x(t^-2 z)` for `x = (z + 1/z)/2`, `t^2 = q^(1/2)`.
pub fn lattice_points(q0: f64, x0: f64) -> Result<(f64, f64), Error> {
    if x0.abs() <= 1.0 {
        return Err(Error::Config(format!("x = {x0} needs |x| > 1")));
    }
    let z = x0 + x0.signum() * (x0 * x0 - 1.0).sqrt();
    let s = q0.sqrt();
    let xs = |w: f64| (w + 1.0 / w) / 2.0;
    Ok((xs(s * z), xs(z / s)))
}

/// `(D_q f)(x0)` and `(S_q f)(x0)` from values of `f` on the lattice.
pub fn lattice_dq_sq(f: impl Fn(f64) -> f64, q0: f64, x0: f64) -> Result<(f64, f64), Error> {
    let (xp, xm) = lattice_points(q0, x0)?;
    let (fp, fm) = (f(xp), f(xm));
    Ok(((fp - fm) / (xp - xm), (fp + fm) / 2.0))
}

/// `P_0(x), ..., P_m(x)` from the recurrence in floating point.
fn recurrence_values(b: &[f64], c: &[f64], x: f64, m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m >= 1 {
        out.push(x - b[0]);
    }
    for k in 1..m {
        out.push((x - b[k]) * out[k] - c[k] * out[k - 1]);
    }
    out
}

fn rel_dev(a: f64, b: f64, abs_tol: f64) -> f64 {
    let diff = (a - b).abs();
    if diff <= abs_tol {
        return 0.0;
    }
    diff / a.abs().max(b.abs())
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NumericSummary {
    pub check: &'static str,
    pub nmax: usize,
    pub grid: String,
    /// Lattice left-hand sides against closed-form right-hand sides.
    pub max_rel_dev: f64,
    /// Lattice operators against `eval_poly` of the exact operator output.
    pub max_rel_dev_exact: f64,
    pub status: Status,
}

/// Float evaluation of both structure relations of the counterexample
/// family for `n <= nmax` on every grid point.
pub fn numeric_crosscheck(cfg: &NumericConfig, nmax: usize) -> Result<NumericSummary, Error> {
    cfg.validate()?;
    let fam = counterexample_family();
    let ctx = context();
    let exact: Vec<(XPoly, XPoly)> = (0..=nmax)
        .map(|n| {
            let (d, s) = ctx.dq_sq_apply(&fam.poly(n))?;
            Ok((ctx.u2() * &d, s))
        })
        .collect::<Result<_, Error>>()?;
    let mut max_dev = 0.0f64;
    let mut max_dev_exact = 0.0f64;
    for &q0 in &cfg.q_samples {
        let ev = |s: crate::scalar::Scalar| s.eval(q0, None);
        let at = |n: usize| NIndex::At(n as i64);
        let b: Vec<f64> = (0..=nmax + 1).map(|k| ev(big_b(at(k)))).collect::<Result<_, _>>()?;
        let c: Vec<f64> = (0..=nmax + 1).map(|k| ev(big_c(at(k)))).collect::<Result<_, _>>()?;
        let a = ev(ctx.alpha().clone())?;
        let u2 = |x: f64| (a * a - 1.0) * (x * x - 1.0);
        for &x0 in &cfg.x_samples {
            let (xp, xm) = lattice_points(q0, x0)?;
            let p0 = recurrence_values(&b, &c, x0, nmax + 1);
            let pp = recurrence_values(&b, &c, xp, nmax);
            let pm = recurrence_values(&b, &c, xm, nmax);
            let p = |k: i64| if k < 0 { 0.0 } else { p0[k as usize] };
            for n in 0..=nmax {
                let (dq, sq) = ((pp[n] - pm[n]) / (xp - xm), (pp[n] + pm[n]) / 2.0);
                let lhs2 = u2(x0) * dq;
                let i = at(n);
                let m = n as i64;
                let rhs1 = ev(alpha_n(i))? * p(m) + ev(small_c(i))? * p(m - 1);
                let rhs2 =
                    ev(c_n1(i))? * p(m + 1) + ev(c_n2(i))? * p(m) + ev(c_n3(i))? * p(m - 1) + ev(c_n4(i))? * p(m - 2);
                max_dev = max_dev.max(rel_dev(sq, rhs1, cfg.abs_tol)).max(rel_dev(lhs2, rhs2, cfg.abs_tol));
                let (ed, es) = &exact[n];
                let e2 = eval_poly(ed, q0, None, x0)?;
                let e1 = eval_poly(es, q0, None, x0)?;
                max_dev_exact = max_dev_exact.max(rel_dev(lhs2, e2, cfg.abs_tol)).max(rel_dev(sq, e1, cfg.abs_tol));
            }
        }
    }
    Ok(NumericSummary {
        check: "numeric",
        nmax,
        grid: cfg.grid_text(),
        max_rel_dev: max_dev,
        max_rel_dev_exact: max_dev_exact,
        status: Status::from_ok(max_dev < cfg.rel_tol && max_dev_exact < cfg.rel_tol),
    })
}

/// Largest relative deviation between lattice and exact `D_q`, `S_q` on `f`.
pub fn operator_deviation(f: &XPoly, cfg: &NumericConfig) -> Result<f64, Error> {
    cfg.validate()?;
    let (d, s) = context().dq_sq_apply(f)?;
    let mut worst = 0.0f64;
    for &q0 in &cfg.q_samples {
        for &x0 in &cfg.x_samples {
            let fv = |x: f64| eval_poly(f, q0, None, x).unwrap_or(f64::NAN);
            let (ld, ls) = lattice_dq_sq(fv, q0, x0)?;
            worst = worst.max(rel_dev(ld, eval_poly(&d, q0, None, x0)?, cfg.abs_tol)).max(rel_dev(
                ls,
                eval_poly(&s, q0, None, x0)?,
                cfg.abs_tol,
            ));
        }
    }
    Ok(worst)
}

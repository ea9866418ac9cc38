//! Monic orthogonal-polynomial families generated by three-term recurrences.
//!
//! A family is determined by `x p_n = p_{n+1} + a_n p_n + b_n p_{n-1}`.
//! The continuous dual q-Hahn coefficients are available for arbitrary
//! parameters; the counterexample family is built directly from its closed
//! forms in [`closed_forms`]. [`aw_hyp_poly`] evaluates the terminating
//! basic hypergeometric sum as an independent construction.

pub mod closed_forms;

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::Error;
use crate::report::Status;
use crate::scalar::Scalar;
use crate::zsym::{z_to_x_laurent, XPoly, ZLaurent};

use closed_forms::{big_b, big_c, NIndex};

type RecFn = Arc<dyn Fn(i64) -> Scalar + Send + Sync>;

/// A monic orthogonal-polynomial family with a growable cache.
///
/// The cache is extended under a write lock, so concurrent readers see
/// either a fully computed `p_n` or compute it themselves.
pub struct OPSFamily {
    name: String,
    rec_a: RecFn,
    rec_b: RecFn,
    cache: RwLock<Vec<Arc<XPoly>>>,
}

impl fmt::Debug for OPSFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OPSFamily").field("name", &self.name).field("cached", &self.cached_len()).finish()
    }
}

impl OPSFamily {
    /// `rec_a(n)` multiplies `p_n`, `rec_b(n)` multiplies `p_{n-1}`.
    pub fn new(
        name: impl Into<String>,
        rec_a: impl Fn(i64) -> Scalar + Send + Sync + 'static,
        rec_b: impl Fn(i64) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        OPSFamily {
            name: name.into(),
            rec_a: Arc::new(rec_a),
            rec_b: Arc::new(rec_b),
            cache: RwLock::new(vec![Arc::new(XPoly::one())]),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rec_a(&self, n: i64) -> Scalar {
        (self.rec_a)(n)
    }

    pub fn rec_b(&self, n: i64) -> Scalar {
        (self.rec_b)(n)
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// `p_n`, extending the cache as needed.
    pub fn poly(&self, n: usize) -> Arc<XPoly> {
        if let Some(p) = self.cache.read().unwrap().get(n) {
            return p.clone();
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() <= n {
            let k = cache.len() - 1;
            let pk = &cache[k];
            let a = self.rec_a(k as i64);
            let mut next = &pk.mul_x() - &pk.scale(&a);
            if k > 0 {
                let b = self.rec_b(k as i64);
                next = &next - &cache[k - 1].scale(&b);
            }
            cache.push(Arc::new(next));
        }
        cache[n].clone()
    }

    /// `p_0, ..., p_n_max`.
    pub fn ttrr_polys(&self, n_max: usize) -> Vec<Arc<XPoly>> {
        self.poly(n_max);
        self.cache.read().unwrap()[..=n_max].to_vec()
    }
}

/// Parameters `(a, b, c | base)` of a continuous dual q-Hahn family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub base: Scalar,
}

impl FamilyParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, base: Scalar) -> Result<Self, Error> {
        if base.is_zero() || base.is_one() {
            return Err(Error::InvalidParameter(format!("family base must differ from 0 and 1, got {base}")));
        }
        if a.is_zero() {
            return Err(Error::InvalidParameter("parameter a must be nonzero".into()));
        }
        Ok(FamilyParams { a, b, c, base })
    }

    /// `(1, -1, q^(1/4) | q^(1/2))`.
    pub fn counterexample() -> Self {
        FamilyParams::new(Scalar::one(), Scalar::from_int(-1), Scalar::t(), Scalar::t_pow(2)).unwrap()
    }

    /// `base^n` for a symbolic `n`, available when `base = t^(2m)`.
    pub fn base_pow_symbolic(&self) -> Result<Scalar, Error> {
        match self.base.as_monomial() {
            Some(((i, 0), c)) if c == &num_traits::One::one() && i > 0 && i % 2 == 0 => Ok(Scalar::u_pow(i / 2)),
            _ => Err(Error::InvalidParameter(format!(
                "symbolic index needs a base of the form t^(2m), got {}",
                self.base
            ))),
        }
    }
}

/// Dual q-Hahn recurrence coefficients `(a_n, b_n)` given the value of `base^n`.
pub fn dual_qhahn_coeffs(p: &FamilyParams, qn: &Scalar) -> Result<(Scalar, Scalar), Error> {
    let one = Scalar::one();
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let a_inv = a.inverse()?;
    let qn1 = qn.checked_div(&p.base)?;
    let ab = a * b;
    let ac = a * c;
    let bc = b * c;
    let rec_a = (a + &a_inv
        - a * &(&one - qn) * (&one - &(&bc * &qn1))
        - &a_inv * &(&one - &(&ab * qn)) * (&one - &(&ac * qn)))
        * Scalar::ratio(1, 2);
    let rec_b =
        (&one - &(&ab * &qn1)) * (&one - &(&ac * &qn1)) * (&one - &(&bc * &qn1)) * (&one - qn) * Scalar::ratio(1, 4);
    Ok((rec_a, rec_b))
}

/// Continuous dual q-Hahn family `H_n(x; a, b, c | base)`, monic.
pub fn dual_qhahn_family(p: &FamilyParams) -> Result<OPSFamily, Error> {
    // Fail early on parameters that make the coefficients undefined.
    dual_qhahn_coeffs(p, &Scalar::one())?;
    let pa = p.clone();
    let pb = p.clone();
    let coeffs = |p: &FamilyParams, n: i64| {
        let qn = p.base.pow(n as i32).expect("base is nonzero");
        dual_qhahn_coeffs(p, &qn).expect("parameters validated")
    };
    Ok(OPSFamily::new(
        format!("dual-q-Hahn({}, {}, {} | {})", p.a, p.b, p.c, p.base),
        move |n| coeffs(&pa, n).0,
        move |n| coeffs(&pb, n).1,
    ))
}

/// `P_n = H_n(x; 1, -1, q^(1/4) | q^(1/2))` from the closed forms of `B_n`, `C_n`.
pub fn counterexample_family() -> OPSFamily {
    OPSFamily::new("counterexample", |n| big_b(NIndex::At(n)), |n| big_c(NIndex::At(n)))
}

/// `(a; base)_k = prod_{j<k} (1 - a base^j)`.
pub fn qpochhammer(a: &Scalar, base: &Scalar, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = &acc * &(Scalar::one() - &term);
        term = &term * base;
    }
    acc
}

/// Monic Askey-Wilson polynomial of degree `n` from the terminating 4phi3 sum.
pub fn aw_hyp_poly(n: usize, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, base: &Scalar) -> Result<XPoly, Error> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("parameter a must be nonzero".into()));
    }
    let ni = i32::try_from(n).map_err(|_| Error::IndexOutOfRange(n as i64))?;
    let q = base;
    let q_minus_n = q.pow(-ni)?;
    let abcd_qn1 = &(&(a * b) * &(c * d)) * &q.pow(ni - 1)?;
    let (ab, ac, ad) = (a * b, a * c, a * d);

    let mut sum = ZLaurent::zero();
    let mut zprod = ZLaurent::monomial(Scalar::one(), 0);
    let mut qj = Scalar::one();
    let mut qk = Scalar::one();
    for k in 0..=n {
        if k > 0 {
            // times (1 - a q^(k-1) z)(1 - a q^(k-1) / z)
            let aq = a * &qj;
            let factor = ZLaurent::from_terms([(1, -&aq), (0, Scalar::one() + &aq * &aq), (-1, -&aq)]);
            zprod = zprod.mul(&factor);
            qj = &qj * q;
            qk = &qk * q;
        }
        let num = qpochhammer(&q_minus_n, q, k) * qpochhammer(&abcd_qn1, q, k) * &qk;
        let den = qpochhammer(&ab, q, k) * qpochhammer(&ac, q, k) * qpochhammer(&ad, q, k) * qpochhammer(q, q, k);
        let coef =
            num.checked_div(&den).map_err(|_| Error::Degenerate(format!("vanishing denominator in term {k}")))?;
        sum = sum.add(&zprod.scale(&coef));
    }
    let prefactor = a.pow(-ni)? * qpochhammer(&ab, q, n) * qpochhammer(&ac, q, n) * qpochhammer(&ad, q, n);
    let p = z_to_x_laurent(&sum.scale(&prefactor))?;
    match (p.degree(), p.leading_coeff()) {
        (Some(deg), Some(lc)) if deg == n => {
            let inv = lc.inverse()?;
            Ok(p.scale(&inv))
        }
        _ => Err(Error::Degenerate(format!("degree-{n} polynomial has vanishing leading coefficient"))),
    }
}

/// `(q^(1/4), q^(1/2), q^(3/4) | q)`: generic parameters for cross-checks.
pub fn generic_params() -> FamilyParams {
    FamilyParams::new(Scalar::t(), Scalar::t_pow(2), Scalar::t_pow(3), Scalar::t_pow(4)).unwrap()
}

/// Result of comparing the hypergeometric and recurrence constructions at one degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleRow {
    pub check: &'static str,
    pub family: String,
    pub n: usize,
    pub status: Status,
}

/// Compares `aw_hyp_poly(n, a, b, c, 0 | base)` with `fam.poly(n)` for `n <= nmax`.
pub fn oracle_agreement(fam: &OPSFamily, p: &FamilyParams, nmax: usize) -> Result<Vec<OracleRow>, Error> {
    let zero = Scalar::zero();
    (0..=nmax)
        .map(|n| {
            let h = aw_hyp_poly(n, &p.a, &p.b, &p.c, &zero, &p.base)?;
            Ok(OracleRow {
                check: "oracle",
                family: fam.name().to_string(),
                n,
                status: Status::from_ok(h == *fam.poly(n)),
            })
        })
        .collect()
}

/// Oracle rows for the closed-form family, the dual q-Hahn family at the
/// same parameters, and the dual q-Hahn family at `generic_params`.
pub fn oracle_suite(nmax: usize) -> Result<Vec<OracleRow>, Error> {
    let ce = FamilyParams::counterexample();
    let g = generic_params();
    let sets = [(counterexample_family(), ce.clone()), (dual_qhahn_family(&ce)?, ce), (dual_qhahn_family(&g)?, g)];
    let mut rows = Vec::new();
    for (fam, p) in &sets {
        rows.extend(oracle_agreement(fam, p, nmax)?);
    }
    Ok(rows)
}

/// Agreement of the dual q-Hahn coefficients at the counterexample
/// parameters with the closed forms `B_n`, `C_n`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub check: &'static str,
    pub nmax: usize,
    /// Indices `n <= nmax` where either coefficient differs.
    pub mismatches: Vec<usize>,
    pub symbolic_a: bool,
    pub symbolic_b: bool,
    pub status: Status,
}

pub fn coefficient_consistency(nmax: usize) -> Result<ConsistencyReport, Error> {
    let p = FamilyParams::counterexample();
    let mut mismatches = Vec::new();
    for n in 0..=nmax {
        let ni = i64::try_from(n).map_err(|_| Error::IndexOutOfRange(i64::MAX))?;
        let qn = p.base.pow(i32::try_from(ni).map_err(|_| Error::IndexOutOfRange(ni))?)?;
        let (a, b) = dual_qhahn_coeffs(&p, &qn)?;
        if a != big_b(NIndex::At(ni)) || b != big_c(NIndex::At(ni)) {
            mismatches.push(n);
        }
    }
    let (a, b) = dual_qhahn_coeffs(&p, &p.base_pow_symbolic()?)?;
    let sym = NIndex::symbolic();
    let (symbolic_a, symbolic_b) = (a == big_b(sym), b == big_c(sym));
    Ok(ConsistencyReport {
        check: "coefficient-consistency",
        nmax,
        status: Status::from_ok(mismatches.is_empty() && symbolic_a && symbolic_b),
        mismatches,
        symbolic_a,
        symbolic_b,
    })
}

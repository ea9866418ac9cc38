//! Expansion in an orthogonal-polynomial basis and structure relations.
//!
//! For a family `(p_n)` and a fixed polynomial `pi`, the structure relation
//! at `n` is the expansion `pi * D_q p_n = sum_k e_k p_{n+k}`. Its bandwidth
//! `(r, s)` is the smallest pair with every nonzero `e_k` in `[-r, s]`.
//! Zero tests are exact.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::awcore::{context, dq_apply};
use crate::error::Error;
use crate::families::closed_forms::{alpha_n, big_c, c_n1, c_n2, c_n3, c_n4, small_c, NIndex};
use crate::families::{counterexample_family, OPSFamily};
pub use crate::report::Status;
use crate::scalar::{Rational, Scalar};
use crate::zsym::XPoly;

/// Coefficients `e_0..e_m` with `f = sum e_k p_k`, by leading-term elimination.
pub fn expand_in_basis(f: &XPoly, fam: &OPSFamily) -> Vec<Scalar> {
    let Some(m) = f.degree() else {
        return Vec::new();
    };
    let basis = fam.ttrr_polys(m);
    let mut rem = f.coeffs().to_vec();
    let mut out = vec![Scalar::zero(); m + 1];
    for k in (0..=m).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for (j, pj) in basis[k].coeffs()[..k].iter().enumerate() {
            if !pj.is_zero() {
                rem[j] = &rem[j] - &(&c * pj);
            }
        }
        out[k] = c;
    }
    out
}

/// Expansion of a polynomial relative to a reference index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub check: String,
    pub n: usize,
    /// Nonzero coefficients keyed by offset `k` (coefficient of `p_{n+k}`).
    pub coefficients: BTreeMap<i64, Scalar>,
    /// `None` when the expanded polynomial is zero.
    pub bandwidth: Option<(u32, u32)>,
    /// `(offset, computed - expected)` for every nonzero difference.
    pub residuals: Vec<(i64, Scalar)>,
}

impl StructureReport {
    fn from_expansion(check: &str, n: usize, expansion: &[Scalar]) -> Self {
        let coefficients: BTreeMap<i64, Scalar> = expansion
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - n as i64, c.clone()))
            .collect();
        let bandwidth = match (coefficients.keys().next(), coefficients.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Some(((-lo).max(0) as u32, hi.max(0) as u32)),
            _ => None,
        };
        StructureReport { check: check.into(), n, coefficients, bandwidth, residuals: Vec::new() }
    }

    pub fn coefficient(&self, offset: i64) -> Scalar {
        self.coefficients.get(&offset).cloned().unwrap_or_default()
    }

    /// Records `computed - expected` at every offset present in either side.
    pub fn compare(&mut self, expected: &BTreeMap<i64, Scalar>) {
        let mut offsets: Vec<i64> = self.coefficients.keys().chain(expected.keys()).copied().collect();
        offsets.sort_unstable();
        offsets.dedup();
        self.residuals = offsets
            .into_iter()
            .filter_map(|k| {
                let e = expected.get(&k).cloned().unwrap_or_default();
                let r = &self.coefficient(k) - &e;
                (!r.is_zero()).then_some((k, r))
            })
            .collect();
    }

    pub fn status(&self) -> Status {
        Status::from_ok(self.residuals.is_empty())
    }

    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            check: self.check.clone(),
            n: self.n,
            status: self.status(),
            bandwidth_r: self.bandwidth.map(|b| b.0),
            bandwidth_s: self.bandwidth.map(|b| b.1),
            residual_count: self.residuals.len(),
            residuals: self.residuals.iter().map(|(k, r)| format!("offset {k}: {r}")).collect(),
        }
    }
}

/// One line of machine-readable output per report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportRecord {
    pub check: String,
    pub n: usize,
    pub status: Status,
    pub bandwidth_r: Option<u32>,
    pub bandwidth_s: Option<u32>,
    pub residual_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<String>,
}

/// Expands `pi * D_q p_n` in the basis of `fam`.
pub fn structure_relation(fam: &OPSFamily, pi: &XPoly, n: usize) -> Result<StructureReport, Error> {
    let g = pi * &dq_apply(&fam.poly(n))?;
    Ok(StructureReport::from_expansion("structure", n, &expand_in_basis(&g, fam)))
}

fn expected(entries: &[(i64, Scalar)], n: usize) -> BTreeMap<i64, Scalar> {
    // Terms against p_{-1}, p_{-2} are dropped: those polynomials are zero.
    entries.iter().filter(|(k, c)| n as i64 + k >= 0 && !c.is_zero()).cloned().collect()
}

fn sq_report(fam: &OPSFamily, n: usize, s: &XPoly) -> StructureReport {
    let idx = NIndex::At(n as i64);
    let mut rep = StructureReport::from_expansion("sq-relation", n, &expand_in_basis(s, fam));
    rep.compare(&expected(&[(0, alpha_n(idx)), (-1, small_c(idx))], n));
    rep
}

fn dq_report(fam: &OPSFamily, n: usize, d: &XPoly) -> StructureReport {
    let idx = NIndex::At(n as i64);
    let g = context().u2() * d;
    let mut rep = StructureReport::from_expansion("dq-relation", n, &expand_in_basis(&g, fam));
    rep.compare(&expected(&[(1, c_n1(idx)), (0, c_n2(idx)), (-1, c_n3(idx)), (-2, c_n4(idx))], n));
    rep
}

/// Exact check of `S_q P_n` at a single `n` against `alpha_n P_n + c_n P_{n-1}`.
pub fn verify_sq_at(fam: &OPSFamily, n: usize) -> Result<StructureReport, Error> {
    Ok(sq_report(fam, n, &context().sq_apply(&fam.poly(n))?))
}

/// Exact check of `U_2 D_q P_n` at a single `n` against the four closed forms.
pub fn verify_dq_at(fam: &OPSFamily, n: usize) -> Result<StructureReport, Error> {
    Ok(dq_report(fam, n, &context().dq_apply(&fam.poly(n))?))
}

/// Both checks at `n`.
pub fn verify_at(fam: &OPSFamily, n: usize) -> Result<(StructureReport, StructureReport), Error> {
    let (d, s) = context().dq_sq_apply(&fam.poly(n))?;
    Ok((sq_report(fam, n, &s), dq_report(fam, n, &d)))
}

/// Reports for both relations, in index order.
#[derive(Clone, Debug)]
pub struct PropositionReport {
    pub sq: Vec<StructureReport>,
    pub dq: Vec<StructureReport>,
}

impl PropositionReport {
    pub fn all_pass(&self) -> bool {
        self.sq.iter().chain(&self.dq).all(StructureReport::passed)
    }

    /// Records interleaved as `(sq_0, dq_0, sq_1, dq_1, ...)`.
    pub fn records(&self) -> Vec<ReportRecord> {
        self.sq.iter().zip(&self.dq).flat_map(|(a, b)| [a.record(), b.record()]).collect()
    }
}

/// Verifies both structure relations of the counterexample family for `n <= nmax`.
pub fn verify_proposition(nmax: usize) -> Result<PropositionReport, Error> {
    let fam = counterexample_family();
    verify_proposition_with(&fam, nmax)
}

pub fn verify_proposition_with(fam: &OPSFamily, nmax: usize) -> Result<PropositionReport, Error> {
    // The recurrence is sequential; fill the cache before fanning out.
    fam.poly(nmax + 1);
    let pairs: Vec<(StructureReport, StructureReport)> =
        (0..=nmax).into_par_iter().map(|n| verify_at(fam, n)).collect::<Result<_, Error>>()?;
    let (sq, dq) = pairs.into_iter().unzip();
    Ok(PropositionReport { sq, dq })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BandwidthRow {
    pub n: usize,
    pub bandwidth_r: Option<u32>,
    pub bandwidth_s: Option<u32>,
    pub lowest_nonzero: bool,
}

/// Bandwidth table of a structure relation and its verdict against `(2, 1)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BandwidthSummary {
    pub check: &'static str,
    pub nmax: usize,
    pub max_r: u32,
    pub max_s: u32,
    /// Offset `-2` coefficient nonzero for every `n` in `[2, nmax]`.
    pub offset_minus2_nonzero: bool,
    pub status: Status,
    #[serde(skip)]
    pub rows: Vec<BandwidthRow>,
}

pub fn bandwidth_summary(reports: &[StructureReport]) -> BandwidthSummary {
    let rows: Vec<BandwidthRow> = reports
        .iter()
        .map(|r| BandwidthRow {
            n: r.n,
            bandwidth_r: r.bandwidth.map(|b| b.0),
            bandwidth_s: r.bandwidth.map(|b| b.1),
            lowest_nonzero: !r.coefficient(-2).is_zero(),
        })
        .collect();
    let max_r = rows.iter().filter_map(|r| r.bandwidth_r).max().unwrap_or(0);
    let max_s = rows.iter().filter_map(|r| r.bandwidth_s).max().unwrap_or(0);
    let offset_minus2_nonzero = rows.iter().filter(|r| r.n >= 2).all(|r| r.lowest_nonzero);
    let nmax = reports.iter().map(|r| r.n).max().unwrap_or(0);
    BandwidthSummary {
        check: "bandwidth",
        nmax,
        max_r,
        max_s,
        offset_minus2_nonzero,
        status: Status::from_ok(max_r == 2 && max_s == 1 && offset_minus2_nonzero),
        rows,
    }
}

/// Computes `pi * D_q p_n` for `n <= nmax` and summarizes the bandwidths.
pub fn bandwidth_scan(fam: &OPSFamily, pi: &XPoly, nmax: usize) -> Result<BandwidthSummary, Error> {
    if nmax < 2 {
        return Err(Error::InvalidParameter(format!("bandwidth scan needs nmax >= 2, got {nmax}")));
    }
    fam.poly(nmax + 1);
    let reports: Vec<StructureReport> =
        (0..=nmax).into_par_iter().map(|n| structure_relation(fam, pi, n)).collect::<Result<_, Error>>()?;
    Ok(bandwidth_summary(&reports))
}

/// Factor of a product in `Q(t, u)` whose sign behaviour is decidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `c * t^i * u^j`.
    Monomial { coef: Rational, t: i32, u: i32 },
    /// `1 + sign * t^i * u^j` with `sign = +-1`.
    Binomial { sign: i8, t: i32, u: i32 },
}

impl Factor {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            Factor::Monomial { coef, t, u } => Scalar::monomial(coef.clone(), *t, *u),
            Factor::Binomial { sign, t, u } => {
                let m = Scalar::monomial(Rational::one(), *t, *u);
                if *sign > 0 {
                    Scalar::one() + m
                } else {
                    Scalar::one() - m
                }
            }
        }
    }

    /// True if the factor cannot vanish for any real `0 < q < 1` and any
    /// integer `n >= n_min`, where `t^i u^j = q^((i + 2jn)/4)`.
    pub fn nonvanishing_from(&self, n_min: i64) -> bool {
        match self {
            Factor::Monomial { coef, .. } => !coef.is_zero(),
            // 1 + positive real
            Factor::Binomial { sign, .. } if *sign > 0 => true,
            Factor::Binomial { t, u, .. } => {
                // 1 - q^(e(n)/4) vanishes iff e(n) = t + 2 u n = 0.
                let (a, b) = (*t as i64, *u as i64);
                let at_min = a + 2 * b * n_min;
                match b.signum() {
                    0 => a != 0,
                    1 => at_min > 0,
                    _ => at_min < 0,
                }
            }
        }
    }
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::Binomial { sign, .. } => {
                let m = &self.to_scalar() - &Scalar::one();
                let m = if *sign > 0 { m } else { -m };
                write!(f, "(1 {} {})", if *sign > 0 { "+" } else { "-" }, m)
            }
            Factor::Monomial { .. } => write!(f, "{}", self.to_scalar()),
        }
    }
}

/// Witness that the offset `-2` coefficient never vanishes.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NonvanishingCertificate {
    pub check: &'static str,
    pub factorization: String,
    /// `c_{n,4} - prod(factors)` is the zero element of `Q(t, u)`.
    pub factorization_exact: bool,
    pub n_min: i64,
    pub every_factor_nonvanishing: bool,
    pub status: Status,
}

/// The factors of `C_{n-1} C_n q^(-(2n-1)/4) (q^(1/2) - q^(-1/2))/2`.
pub fn c_n4_factors() -> Vec<Factor> {
    use Factor::*;
    vec![
        // (1/16)(-1/2) * t^(1-2) u^-1: constants of C_{n-1}, C_n, the q-power and the half-gap
        Monomial { coef: Rational::new((-1).into(), 32.into()), t: -1, u: -1 },
        // C_{n-1}
        Binomial { sign: 1, t: -4, u: 1 },
        Binomial { sign: -1, t: -2, u: 1 },
        Binomial { sign: -1, t: -6, u: 2 },
        // C_n
        Binomial { sign: 1, t: -2, u: 1 },
        Binomial { sign: -1, t: 0, u: 1 },
        Binomial { sign: -1, t: -2, u: 2 },
        // q^(1/2) - q^(-1/2) = -t^-2 (1 - t^4)
        Binomial { sign: -1, t: 4, u: 0 },
    ]
}

/// Certifies symbolically in `n` that `c_{n,4} != 0` for all `n >= 2` and `0 < q < 1`.
pub fn c_n4_nonvanishing() -> NonvanishingCertificate {
    let factors = c_n4_factors();
    let product: Scalar = factors.iter().map(Factor::to_scalar).product();
    let idx = NIndex::symbolic();
    let direct = big_c(idx.shift(-1))
        * big_c(idx)
        * idx.half_q_pow().inverse().unwrap().mul_t_pow(1)
        * (Scalar::t_pow(2) - Scalar::t_pow(-2))
        * Scalar::ratio(1, 2);
    let exact = (c_n4(idx) - &product).is_zero() && (direct - product).is_zero();
    let n_min = 2;
    let every = factors.iter().all(|f| f.nonvanishing_from(n_min));
    NonvanishingCertificate {
        check: "offset-minus2-nonvanishing",
        factorization: factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" * "),
        factorization_exact: exact,
        n_min,
        every_factor_nonvanishing: every,
        status: Status::from_ok(exact && every),
    }
}

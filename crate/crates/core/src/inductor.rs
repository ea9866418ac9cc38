//! Symbolic-in-`n` certificates for the identities behind the inductive
//! proof of the two structure relations.
//!
//! Every identity is written once as a function of an [`NIndex`]. Evaluated
//! at the symbolic index it is a single zero test in `Q(t, u)` valid for all
//! `k`; evaluated at a concrete index it gives the value the symbolic
//! residual must instantiate to.

use serde::Serialize;

use crate::awcore::context;
use crate::error::Error;
use crate::families::closed_forms::{
    alpha, alpha_n, big_b, big_c, c_n1, c_n2, c_n3, c_n4, d_k, small_c, D3Reading, NIndex,
};
use crate::families::counterexample_family;
use crate::report::Status;
use crate::scalar::Scalar;
use crate::zsym::XPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCertificate {
    pub name: String,
    pub residual: Scalar,
    pub verdict: Verdict,
    /// Canonical text of the residual when nonzero, plus any reading note.
    pub rendering: String,
    /// Both sides of the identity lie in `Q[t^(+-1), u^(+-1)]`.
    pub in_laurent_ring: bool,
    /// Reading of `d_{k,3}` used, for that certificate only.
    pub reading: Option<D3Reading>,
}

impl IdentityCertificate {
    fn new(name: &str, lhs: &Scalar, rhs: &Scalar) -> Self {
        let residual = lhs - rhs;
        let verdict = if residual.is_zero() { Verdict::Zero } else { Verdict::Nonzero };
        let rendering = if residual.is_zero() { String::new() } else { residual.to_string() };
        IdentityCertificate {
            name: name.into(),
            residual,
            verdict,
            rendering,
            in_laurent_ring: lhs.is_laurent() && rhs.is_laurent(),
            reading: None,
        }
    }

    fn from_poly(name: &str, residual: &XPoly) -> Self {
        // Constant residuals only arise here; a higher-degree one is nonzero regardless.
        let r = residual.leading_coeff().cloned().unwrap_or_default();
        let mut cert = IdentityCertificate::new(name, &r, &Scalar::zero());
        if !residual.is_zero() {
            cert.rendering = residual.to_string();
        }
        cert
    }

    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }

    pub fn record(&self) -> CertificateRecord {
        CertificateRecord {
            check: "proof",
            name: self.name.clone(),
            verdict: self.verdict,
            residual_text: if self.residual.is_zero() { "0".into() } else { self.residual.to_string() },
            in_laurent_ring: self.in_laurent_ring,
            reading: self.reading.map(D3Reading::label),
            note: (!self.rendering.is_empty() && self.rendering != self.residual.to_string())
                .then(|| self.rendering.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateRecord {
    pub check: &'static str,
    pub name: String,
    pub verdict: Verdict,
    pub residual_text: String,
    pub in_laurent_ring: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

type Identity = (&'static str, Scalar, Scalar);

/// `(name, lhs, rhs)` for the four identities of the `S_q` step at index `k`.
pub fn sq_step_identities(k: NIndex) -> Vec<Identity> {
    let a = alpha();
    let prev = k.shift(-1);
    let zero = Scalar::zero();
    vec![
        (
            "c_k3 + (alpha alpha_k - alpha_(k-1)) C_k + (alpha B_(k-1) - B_k) c_k",
            c_n3(k) + (&a * &alpha_n(k) - alpha_n(prev)) * big_c(k) + (&a * &big_b(prev) - big_b(k)) * small_c(k),
            zero.clone(),
        ),
        (
            "c_k4 + alpha c_k C_(k-1) - c_(k-1) C_k",
            c_n4(k) + &a * &small_c(k) * big_c(prev) - small_c(prev) * big_c(k),
            zero,
        ),
        ("alpha_(k+1) = c_k1 + alpha alpha_k", alpha_n(k.shift(1)), c_n1(k) + &a * &alpha_n(k)),
        (
            "c_(k+1) = c_k2 + alpha c_k + (alpha - 1) alpha_k B_k",
            small_c(k.shift(1)),
            c_n2(k) + &a * &small_c(k) + (&a - &Scalar::one()) * alpha_n(k) * big_b(k),
        ),
    ]
}

fn dq_item_name(i: usize) -> &'static str {
    ["d_k1 = c_(k+1)1", "d_k2 = c_(k+1)2", "d_k3 = c_(k+1)3", "d_k4 = c_(k+1)4", "d_k5 = 0", "d_k6 = 0"][i]
}

/// `(name, lhs, rhs)` for the six identities of the `D_q` step at index `k`.
pub fn dq_step_identities(k: NIndex, reading: D3Reading) -> Vec<Identity> {
    let d = d_k(k, reading);
    let next = k.shift(1);
    let targets = [c_n1(next), c_n2(next), c_n3(next), c_n4(next), Scalar::zero(), Scalar::zero()];
    d.into_iter().zip(targets).enumerate().map(|(i, (lhs, rhs))| (dq_item_name(i), lhs, rhs)).collect()
}

fn certify(ids: Vec<Identity>) -> Vec<IdentityCertificate> {
    ids.iter().map(|(name, l, r)| IdentityCertificate::new(name, l, r)).collect()
}

pub fn certify_sq_step() -> Vec<IdentityCertificate> {
    certify(sq_step_identities(NIndex::symbolic()))
}

/// The `d_{k,3}` certificate under each reading.
pub fn d3_readings() -> Vec<IdentityCertificate> {
    D3Reading::ALL
        .iter()
        .map(|&r| {
            let (name, l, rhs) = dq_step_identities(NIndex::symbolic(), r).swap_remove(2);
            let mut cert = IdentityCertificate::new(name, &l, &rhs);
            cert.reading = Some(r);
            cert
        })
        .collect()
}

/// The six `D_q`-step certificates. Item 3 uses the reading of `d_{k,3}`
/// that yields zero when exactly one does, and the `B_k` reading otherwise.
pub fn certify_dq_step() -> Vec<IdentityCertificate> {
    let mut certs = certify(dq_step_identities(NIndex::symbolic(), D3Reading::Bk));
    let readings = d3_readings();
    let passing: Vec<&IdentityCertificate> = readings.iter().filter(|c| c.is_zero()).collect();
    let mut item = match passing.as_slice() {
        [only] => (*only).clone(),
        _ => readings[0].clone(),
    };
    let notes: Vec<String> = readings
        .iter()
        .map(|c| {
            let label = c.reading.map_or("", D3Reading::label);
            match c.verdict {
                Verdict::Zero => format!("{label} reading: zero"),
                Verdict::Nonzero => format!("{label} reading: nonzero, residual {}", c.residual),
            }
        })
        .collect();
    let chosen = item.reading.map_or("", D3Reading::label);
    item.rendering = match passing.len() {
        1 => format!("passing reading {chosen}; {}", notes.join("; ")),
        _ => format!("no unique passing reading; {}", notes.join("; ")),
    };
    certs[2] = item;
    certs
}

/// Instantiated residuals for `n = 0`.
pub fn certify_base_case() -> Result<Vec<IdentityCertificate>, Error> {
    let (a, z) = (alpha(), NIndex::At(0));
    let c1 = IdentityCertificate::new(
        "c_1 - alpha c_0 + (1 - alpha) alpha_0 B_0",
        &(small_c(NIndex::At(1)) - &a * &small_c(z) + (Scalar::one() - &a) * alpha_n(z) * big_b(z)),
        &Scalar::zero(),
    );
    let fam = counterexample_family();
    let p0 = fam.poly(0);
    let (dq, sq) = context().dq_sq_apply(&p0)?;
    // P_{-1} = 0
    let sq_res = &sq - &p0.scale(&alpha_n(z));
    let dq_res = context().u2() * &dq;
    Ok(vec![
        c1,
        IdentityCertificate::from_poly("S_q P_0 - (alpha_0 P_0 + c_0 P_(-1))", &sq_res),
        IdentityCertificate::from_poly("U_2 D_q P_0", &dq_res),
    ])
}

/// One instantiation-coherence comparison.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoherenceRow {
    pub check: &'static str,
    pub name: String,
    pub k: i64,
    pub status: Status,
}

/// Compares each symbolic residual, instantiated at `k`, with the residual
/// built from coefficients computed directly at `k`.
pub fn instantiation_coherence(ks: &[i64]) -> Result<Vec<CoherenceRow>, Error> {
    let reading = certify_dq_step()[2].reading.unwrap_or(D3Reading::Bk);
    let symbolic: Vec<Identity> = sq_step_identities(NIndex::symbolic())
        .into_iter()
        .chain(dq_step_identities(NIndex::symbolic(), reading))
        .collect();
    let mut rows = Vec::new();
    for &k in ks {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("coherence sample k = {k} must be >= 2")));
        }
        let concrete = sq_step_identities(NIndex::At(k)).into_iter().chain(dq_step_identities(NIndex::At(k), reading));
        for ((name, sl, sr), (_, cl, cr)) in symbolic.iter().zip(concrete) {
            let inst = (sl - sr).instantiate_n(k)?;
            rows.push(CoherenceRow {
                check: "instantiation-coherence",
                name: (*name).into(),
                k,
                status: Status::from_ok(inst == cl - cr),
            });
        }
    }
    Ok(rows)
}

pub const DEFAULT_K_SAMPLES: [i64; 4] = [2, 3, 5, 8];

/// Everything `verify proof` reports.
#[derive(Clone, Debug)]
pub struct ProofReport {
    pub sq_step: Vec<IdentityCertificate>,
    pub dq_step: Vec<IdentityCertificate>,
    pub base_case: Vec<IdentityCertificate>,
    pub d3_readings: Vec<IdentityCertificate>,
    pub coherence: Vec<CoherenceRow>,
}

impl ProofReport {
    pub fn all_pass(&self) -> bool {
        self.sq_step.iter().chain(&self.dq_step).chain(&self.base_case).all(IdentityCertificate::is_zero)
            && self.coherence.iter().all(|r| r.status == Status::Pass)
            && self.d3_readings.iter().filter(|c| c.is_zero()).count() == 1
    }

    /// True if every step identity has both sides in the Laurent ring.
    pub fn all_in_laurent_ring(&self) -> bool {
        self.sq_step.iter().chain(&self.dq_step).all(|c| c.in_laurent_ring)
    }

    pub fn records(&self) -> Vec<CertificateRecord> {
        self.sq_step.iter().chain(&self.dq_step).chain(&self.base_case).map(IdentityCertificate::record).collect()
    }
}

pub fn verify_proof(ks: &[i64]) -> Result<ProofReport, Error> {
    Ok(ProofReport {
        sq_step: certify_sq_step(),
        dq_step: certify_dq_step(),
        base_case: certify_base_case()?,
        d3_readings: d3_readings(),
        coherence: instantiation_coherence(ks)?,
    })
}

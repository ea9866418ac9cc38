//! Polynomials in `x` and their images under `x = (z + 1/z)/2`.
//!
//! [`XPoly`] is the dense monomial form used for input, output and basis
//! expansion. [`SymPoly`] is the symmetric Laurent polynomial in `z` on which
//! the Askey-Wilson operators act. Shifting the lattice (`z -> t^(2k) z`)
//! breaks the symmetry, so shifted values live in the general [`ZLaurent`]
//! type until an operator restores it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Error;
use crate::scalar::{Rational, Scalar};

/// Dense polynomial in `x`; `coeffs[k]` multiplies `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    coeffs: Vec<Scalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        XPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        XPoly::monomial(Scalar::one(), 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        XPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    pub fn scale(&self, c: &Scalar) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul_x(&self) -> XPoly {
        if self.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        XPoly { coeffs }
    }

    /// Applies `f` to every coefficient.
    pub fn try_map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar, Error>) -> Result<XPoly, Error> {
        Ok(XPoly::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }

    /// Exact value at a scalar point (Horner).
    pub fn eval_at(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn to_latex(&self) -> String {
        render_terms(self, true)
    }
}

fn render_terms(p: &XPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let first = out.is_empty();
        let xk = match k {
            0 => String::new(),
            1 => "x".into(),
            k if latex => format!("x^{{{k}}}"),
            k => format!("x^{k}"),
        };
        let (neg, body) = match c.as_monomial() {
            Some(((i, j), r)) => {
                let mag = Scalar::monomial(r.abs(), i, j);
                let mag_s = if latex { mag.to_latex() } else { mag.to_string() };
                (r.is_negative(), if mag.is_one() && k > 0 { String::new() } else { mag_s })
            }
            None => {
                let s = if latex { c.to_latex() } else { c.to_string() };
                (false, format!("({s})"))
            }
        };
        let sep = if latex { " " } else { "*" };
        let term = match (body.is_empty(), xk.is_empty()) {
            (true, _) => xk,
            (false, true) => body,
            (false, false) => format!("{body}{sep}{xk}"),
        };
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self, false))
    }
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;

    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;

    fn sub(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;

    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;

    fn neg(self) -> XPoly {
        XPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// General Laurent polynomial in `z` with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZLaurent {
    terms: BTreeMap<i64, Scalar>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut out = ZLaurent::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    /// `c * z^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        ZLaurent::from_terms([(k, c)])
    }

    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&k) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, other: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    pub fn mul(&self, other: &ZLaurent) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ZLaurent {
        ZLaurent::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.terms.get(&-k) == Some(c))
    }

    /// Substitutes `z -> t^(2k) z`, i.e. shifts the lattice point by `k/2`.
    pub fn z_scale(&self, k: i32) -> ZLaurent {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = i32::try_from(*m).ok().and_then(|m| m.checked_mul(2 * k)).expect("t exponent overflow");
                (*m, c.mul_t_pow(e))
            })
            .collect();
        ZLaurent { terms }
    }
}

/// Exact quotient `num / den` of Laurent polynomials in `z`.
///
/// Fails with [`Error::InexactDivision`] when the remainder is nonzero.
pub fn divide_exact(num: &ZLaurent, den: &ZLaurent) -> Result<ZLaurent, Error> {
    let (Some((&dmin, _)), Some((&dmax, lc))) = (den.terms.first_key_value(), den.terms.last_key_value()) else {
        return Err(Error::DivisionByZero);
    };
    let Some((&nmin, _)) = num.terms.first_key_value() else {
        return Ok(ZLaurent::zero());
    };
    let mut rem = num.clone();
    let mut quot = ZLaurent::zero();
    while let Some((&top, c)) = rem.terms.last_key_value() {
        let e = top - dmax;
        if e < nmin - dmin {
            return Err(Error::InexactDivision);
        }
        let qc = c.checked_div(lc)?;
        for (k, dk) in &den.terms {
            rem.add_term(k + e, &-(&qc * dk));
        }
        debug_assert!(!rem.terms.contains_key(&top));
        quot.terms.insert(e, qc);
    }
    Ok(quot)
}

/// Symmetric Laurent polynomial in `z`: `a_0 + sum_{m>0} a_m (z^m + z^-m)`.
///
/// Only the coefficients `a_m`, `m >= 0`, are stored; symmetry holds by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    half: Vec<Scalar>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    /// From the coefficients `a_0, a_1, ...` of `1, z + 1/z, z^2 + 1/z^2, ...`.
    pub fn from_half(mut half: Vec<Scalar>) -> Self {
        while half.last().is_some_and(Scalar::is_zero) {
            half.pop();
        }
        SymPoly { half }
    }

    /// Coefficient of `z^k` (equal to that of `z^-k`).
    pub fn coeff(&self, k: i64) -> Scalar {
        self.half.get(k.unsigned_abs() as usize).cloned().unwrap_or_default()
    }

    /// Highest power of `z` present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.half.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.half.is_empty()
    }

    pub fn to_laurent(&self) -> ZLaurent {
        let mut terms = BTreeMap::new();
        for (m, c) in self.half.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.insert(m as i64, c.clone());
            if m > 0 {
                terms.insert(-(m as i64), c.clone());
            }
        }
        ZLaurent { terms }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let n = self.half.len().max(other.half.len());
        SymPoly::from_half((0..n as i64).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let n = self.half.len().max(other.half.len());
        SymPoly::from_half((0..n as i64).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        SymPoly::try_from(&self.to_laurent().mul(&other.to_laurent()))
            .expect("product of symmetric polynomials is symmetric")
    }

    /// Lattice shift `z -> t^(2k) z`; the result is generally not symmetric.
    pub fn z_scale(&self, k: i32) -> ZLaurent {
        self.to_laurent().z_scale(k)
    }
}

impl TryFrom<&ZLaurent> for SymPoly {
    type Error = Error;

    fn try_from(g: &ZLaurent) -> Result<Self, Error> {
        if !g.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        let top = g.terms.last_key_value().map_or(-1, |(k, _)| *k);
        Ok(SymPoly::from_half((0..=top).map(|k| g.coeff(k)).collect()))
    }
}

fn pow2(k: usize) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// `f((z + 1/z)/2)`, expanded.
pub fn x_to_z(f: &XPoly) -> SymPoly {
    // Horner in Y = z + 1/z on the coefficients c_k / 2^k, in the half basis
    // {1, z^m + z^-m}: Y * 1 = V_1, Y * V_1 = V_2 + 2, Y * V_m = V_{m+1} + V_{m-1}.
    let Some(deg) = f.degree() else {
        return SymPoly::zero();
    };
    let mut acc: Vec<Scalar> = Vec::with_capacity(deg + 1);
    for k in (0..=deg).rev() {
        let mut next = vec![Scalar::zero(); acc.len() + 1];
        for (m, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            next[m + 1] = &next[m + 1] + a;
            match m {
                0 => {}
                1 => next[0] = &next[0] + &(a + a),
                _ => next[m - 1] = &next[m - 1] + a,
            }
        }
        let ck = f.coeff(k);
        if !ck.is_zero() {
            next[0] = &next[0] + &ck.scale(&pow2(k).recip());
        }
        acc = next;
    }
    SymPoly::from_half(acc)
}

/// Inverse of [`x_to_z`].
pub fn z_to_x(g: &SymPoly) -> XPoly {
    let Some(top) = g.degree() else {
        return XPoly::zero();
    };
    let mut a = g.half.clone();
    let mut coeffs = vec![Scalar::zero(); top + 1];
    // Peel Y^m = sum_j C(m, j) z^(m - 2j) from the top.
    for m in (0..=top).rev() {
        let e = std::mem::take(&mut a[m]);
        if e.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for j in 1..=m / 2 {
            binom = binom * BigInt::from(m - j + 1) / BigInt::from(j);
            let r = m - 2 * j;
            a[r] = &a[r] - &e.scale(&Rational::from_integer(binom.clone()));
        }
        coeffs[m] = e.scale(&pow2(m));
    }
    XPoly::from_coeffs(coeffs)
}

/// [`z_to_x`] for an arbitrary Laurent polynomial; fails unless it is symmetric.
pub fn z_to_x_laurent(g: &ZLaurent) -> Result<XPoly, Error> {
    Ok(z_to_x(&SymPoly::try_from(g)?))
}

//! Dense univariate polynomials over the rationals.
//!
//! Used as the coefficient ring of the bivariate gcd and as the fast path for
//! exact division of `u`-free Laurent polynomials.

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct UPoly(pub(crate) Vec<Rational>);

impl UPoly {
    pub(crate) fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub(crate) fn constant(c: Rational) -> Self {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    pub(crate) fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub(crate) fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub(crate) fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let v = match (self.0.get(k), other.0.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(v);
        }
        UPoly::from_coeffs(out)
    }

    pub(crate) fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub(crate) fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub(crate) fn scale(&self, c: &Rational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub(crate) fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub(crate) fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let dl = d.lead().unwrap();
        let mut rem = self.0.clone();
        let Some(ad) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if ad < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); ad - dd + 1];
        for k in (0..=ad - dd).rev() {
            let c = &rem[k + dd] / dl;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub(crate) fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub(crate) fn monic(&self) -> UPoly {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub(crate) fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

//! Independent oracle: everything specialized to a rational `t = q^(1/4)`.
//!
//! Nothing here calls into the z-side machinery, the closed forms, or the
//! recurrence of the library. Formulas are transcribed afresh and evaluated
//! in exact rational arithmetic; the operators are evaluated on the lattice
//! with a rational `z`, where `x(z) = (z + 1/z)/2` stays rational.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qaw_core::{Scalar, XPoly};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn pow(b: &Q, k: i64) -> Q {
    let mut acc = Q::one();
    let base = if k < 0 { b.recip() } else { b.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Exact evaluation of a library scalar at `t`, with `u = t^(2n)` when `n` is given.
pub fn eval_scalar(s: &Scalar, t: &Q, n: Option<i64>) -> Q {
    let u = n.map(|n| pow(t, 2 * n));
    let ev = |l: &qaw_core::scalar::Laurent| {
        l.terms().iter().fold(Q::zero(), |acc, ((i, j), c)| {
            let uj = if *j == 0 { Q::one() } else { pow(u.as_ref().expect("value depends on n"), *j as i64) };
            acc + c * pow(t, *i as i64) * uj
        })
    };
    ev(s.numerator()) / ev(s.denominator())
}

/// Dense polynomial in `x` over `Q`, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn from_lib(p: &XPoly, t: &Q) -> QPoly {
        QPoly(p.coeffs().iter().map(|c| eval_scalar(c, t, None)).collect())
    }
}

/// The counterexample family at a fixed rational `t`.
pub struct Oracle {
    pub t: Q,
}

impl Oracle {
    pub fn new(t: Q) -> Self {
        Oracle { t }
    }

    /// `t^k = q^(k/4)`.
    pub fn tp(&self, k: i64) -> Q {
        pow(&self.t, k)
    }

    pub fn alpha_n(&self, n: i64) -> Q {
        (self.tp(2 * n) + self.tp(-2 * n)) / qi(2)
    }

    pub fn alpha(&self) -> Q {
        self.alpha_n(1)
    }

    pub fn gamma_n(&self, n: i64) -> Q {
        (self.tp(2 * n) - self.tp(-2 * n)) / (self.tp(2) - self.tp(-2))
    }

    pub fn big_b(&self, n: i64) -> Q {
        let one = Q::one();
        let inner = (&one + self.tp(-2)) * self.tp(2 * n) + &one - self.tp(-2);
        inner * self.tp(2 * n + 1) / qi(2)
    }

    pub fn big_c(&self, n: i64) -> Q {
        let one = Q::one();
        (&one + self.tp(2 * n - 2)) * (&one - self.tp(2 * n)) * (&one - self.tp(4 * n - 2)) / qi(4)
    }

    pub fn small_c(&self, n: i64) -> Q {
        self.big_c(n) * self.tp(-(2 * n - 1))
    }

    pub fn c_n1(&self, n: i64) -> Q {
        let a = self.alpha();
        (&a * &a - Q::one()) * self.gamma_n(n)
    }

    pub fn c_n2(&self, n: i64) -> Q {
        let a = self.alpha();
        self.small_c(n + 1) - &a * self.small_c(n) + (Q::one() - &a) * self.alpha_n(n) * self.big_b(n)
    }

    pub fn c_n3(&self, n: i64) -> Q {
        let a = self.alpha();
        (self.big_b(n) - &a * self.big_b(n - 1)) * self.small_c(n)
            + (Q::one() - &a * &a) * self.gamma_n(n) * self.big_c(n)
    }

    pub fn c_n4(&self, n: i64) -> Q {
        let a = self.alpha();
        self.small_c(n - 1) * self.big_c(n) - a * self.small_c(n) * self.big_c(n - 1)
    }

    /// Recurrence coefficients of the dual q-Hahn family at `(a, b, c | base)`.
    pub fn hahn_ab(a: &Q, b: &Q, c: &Q, base: &Q, n: i64) -> (Q, Q) {
        let one = Q::one();
        let qn = pow(base, n);
        let qn1 = pow(base, n - 1);
        let an = (a + a.recip()
            - a * (&one - &qn) * (&one - b * c * &qn1)
            - a.recip() * (&one - a * b * &qn) * (&one - a * c * &qn))
            / qi(2);
        let bn = (&one - a * b * &qn1) * (&one - a * c * &qn1) * (&one - b * c * &qn1) * (&one - &qn) / qi(4);
        (an, bn)
    }

    /// `P_0(x), ..., P_m(x)` from `x P_n = P_{n+1} + B_n P_n + C_n P_{n-1}`.
    pub fn p_values(&self, x: &Q, m: usize) -> Vec<Q> {
        let mut v = vec![Q::one()];
        if m >= 1 {
            v.push(x - self.big_b(0));
        }
        for k in 1..m {
            let next = (x - self.big_b(k as i64)) * &v[k] - self.big_c(k as i64) * &v[k - 1];
            v.push(next);
        }
        v
    }

    /// `P_0, ..., P_m` as coefficient vectors.
    pub fn p_polys(&self, m: usize) -> Vec<QPoly> {
        let mut v = vec![QPoly(vec![Q::one()])];
        for k in 0..m {
            let pk = &v[k].0;
            let mut next = vec![Q::zero(); pk.len() + 1];
            for (i, c) in pk.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= self.big_b(k as i64) * c;
            }
            if k > 0 {
                for (i, c) in v[k - 1].0.iter().enumerate() {
                    next[i] -= self.big_c(k as i64) * c;
                }
            }
            v.push(QPoly(next));
        }
        v
    }

    pub fn x_of(z: &Q) -> Q {
        (z + z.recip()) / qi(2)
    }

    /// `(x(t^2 z), x(t^-2 z))`.
    pub fn lattice(&self, z: &Q) -> (Q, Q) {
        (Self::x_of(&(z * self.tp(2))), Self::x_of(&(z * self.tp(-2))))
    }

    /// `(D_q f)(x(z))` and `(S_q f)(x(z))` by the divided difference.
    pub fn dq_sq(&self, f: impl Fn(&Q) -> Q, z: &Q) -> (Q, Q) {
        let (xp, xm) = self.lattice(z);
        let (fp, fm) = (f(&xp), f(&xm));
        ((&fp - &fm) / (xp - xm), (fp + fm) / qi(2))
    }

    pub fn u2(&self, x: &Q) -> Q {
        let a = self.alpha();
        (&a * &a - Q::one()) * (x * x - Q::one())
    }

    /// Terminating 4phi3 with `d = 0`, times `a^-n (ab, ac; q)_n`, at `x(z)`.
    pub fn hyp(a: &Q, b: &Q, c: &Q, base: &Q, n: usize, z: &Q) -> Q {
        let poch = |x: &Q, k: usize| (0..k).fold(Q::one(), |acc, j| acc * (Q::one() - x * pow(base, j as i64)));
        let qmn = pow(base, -(n as i64));
        let mut sum = Q::zero();
        for k in 0..=n {
            let num = poch(&qmn, k) * poch(&(a * z), k) * poch(&(a / z), k) * pow(base, k as i64);
            let den = poch(&(a * b), k) * poch(&(a * c), k) * poch(base, k);
            sum += num / den;
        }
        pow(a, -(n as i64)) * poch(&(a * b), n) * poch(&(a * c), n) * sum
    }
}

pub fn sample_ts() -> Vec<Q> {
    vec![q(2, 3), q(3, 5), q(5, 4)]
}

pub fn sample_zs() -> Vec<Q> {
    vec![qi(3), q(7, 2), q(-5, 3)]
}

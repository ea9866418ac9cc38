//! Closed-form coefficients of the counterexample family
//! `P_n = H_n(x; 1, -1, q^(1/4) | q^(1/2))` and of its structure relations.
//!
//! Every formula is written once as a function of an [`NIndex`], which is
//! either a concrete integer or the symbolic index `n + s`. Concretely
//! `q^(n/2) = t^(2n)`; symbolically `q^((n+s)/2) = u * t^(2s)`, obtained
//! from `u` through [`Scalar::shift_n`]. The same code therefore produces
//! per-`n` values and identities valid for every `n`.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::scalar::Scalar;

/// An index `n`, either concrete or `n + shift` with `n` free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NIndex {
    At(i64),
    Symbolic(i32),
}

impl NIndex {
    pub fn at(n: i64) -> Self {
        NIndex::At(n)
    }

    pub fn symbolic() -> Self {
        NIndex::Symbolic(0)
    }

    pub fn shift(self, k: i32) -> Self {
        match self {
            NIndex::At(n) => NIndex::At(n + k as i64),
            NIndex::Symbolic(s) => NIndex::Symbolic(s + k),
        }
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, NIndex::Symbolic(_))
    }

    /// `q^(n/2)`.
    pub fn half_q_pow(self) -> Scalar {
        match self {
            NIndex::At(n) => Scalar::t_pow(i32::try_from(2 * n).expect("index too large")),
            NIndex::Symbolic(s) => Scalar::u().shift_n(s),
        }
    }

    fn w_inv(self) -> Scalar {
        self.half_q_pow().inverse().expect("q^(n/2) is a unit")
    }
}

impl fmt::Display for NIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NIndex::At(n) => write!(f, "{n}"),
            NIndex::Symbolic(0) => f.write_str("n"),
            NIndex::Symbolic(s) if *s > 0 => write!(f, "n+{s}"),
            NIndex::Symbolic(s) => write!(f, "n{s}"),
        }
    }
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

/// `alpha = alpha_1 = (q^(1/2) + q^(-1/2))/2`.
pub fn alpha() -> Scalar {
    alpha_n(NIndex::At(1))
}

/// `alpha_n = (q^(n/2) + q^(-n/2))/2`.
pub fn alpha_n(i: NIndex) -> Scalar {
    (i.half_q_pow() + i.w_inv()) * half()
}

/// `gamma_n = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2))`.
pub fn gamma_n(i: NIndex) -> Scalar {
    let gap = Scalar::t_pow(2) - Scalar::t_pow(-2);
    (i.half_q_pow() - i.w_inv()).checked_div(&gap).unwrap()
}

/// `B_n = ((1 + q^(-1/2)) q^(n/2) + 1 - q^(-1/2)) q^((2n+1)/4) / 2`.
pub fn big_b(i: NIndex) -> Scalar {
    let w = i.half_q_pow();
    let tm2 = Scalar::t_pow(-2);
    let inner = &(&(Scalar::one() + &tm2) * &w) + &(Scalar::one() - &tm2);
    // q^((2n+1)/4) = t^(2n+1) = w * t
    inner * w.mul_t_pow(1) * half()
}

/// `C_n = (1 + q^((n-1)/2)) (1 - q^(n/2)) (1 - q^(n - 1/2)) / 4`.
pub fn big_c(i: NIndex) -> Scalar {
    let w = i.half_q_pow();
    let one = Scalar::one();
    let f1 = &one + &w.mul_t_pow(-2);
    let f2 = &one - &w;
    let f3 = &one - &(&w * &w).mul_t_pow(-2);
    f1 * f2 * f3 * Scalar::ratio(1, 4)
}

/// `c_n = C_n q^(-(2n-1)/4)`.
pub fn small_c(i: NIndex) -> Scalar {
    // q^(-(2n-1)/4) = t / w
    (big_c(i) * i.w_inv()).mul_t_pow(1)
}

fn alpha_sq_minus_one() -> Scalar {
    let a = alpha();
    &a * &a - Scalar::one()
}

/// `c_{n,1} = (alpha^2 - 1) gamma_n`.
pub fn c_n1(i: NIndex) -> Scalar {
    alpha_sq_minus_one() * gamma_n(i)
}

/// `c_{n,2} = c_{n+1} - alpha c_n + (1 - alpha) alpha_n B_n`.
pub fn c_n2(i: NIndex) -> Scalar {
    let a = alpha();
    small_c(i.shift(1)) - &a * &small_c(i) + (Scalar::one() - &a) * alpha_n(i) * big_b(i)
}

/// `c_{n,3} = (B_n - alpha B_{n-1}) c_n + (1 - alpha^2) gamma_n C_n`.
pub fn c_n3(i: NIndex) -> Scalar {
    let a = alpha();
    (big_b(i) - &a * &big_b(i.shift(-1))) * small_c(i) - alpha_sq_minus_one() * gamma_n(i) * big_c(i)
}

/// `c_{n,4} = c_{n-1} C_n - alpha c_n C_{n-1}`.
pub fn c_n4(i: NIndex) -> Scalar {
    let a = alpha();
    small_c(i.shift(-1)) * big_c(i) - a * small_c(i) * big_c(i.shift(-1))
}

/// Reading of the `B` index inside the third `d` coefficient, whose printed
/// form uses a stray `n` in a `k`-indexed expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum D3Reading {
    /// `B_n` read as `B_k`.
    Bk,
    /// `B_n` read as `B_{k+1}` (the inductive target index).
    BkPlusOne,
}

impl D3Reading {
    pub const ALL: [D3Reading; 2] = [D3Reading::Bk, D3Reading::BkPlusOne];

    pub fn label(self) -> &'static str {
        match self {
            D3Reading::Bk => "B_k",
            D3Reading::BkPlusOne => "B_{k+1}",
        }
    }
}

/// The six coefficients of `U_2 D_q P_{k+1}` obtained by pushing the
/// recurrence through the structure relations at `k`.
pub fn d_k(k: NIndex, reading: D3Reading) -> [Scalar; 6] {
    let a = alpha();
    let a21 = alpha_sq_minus_one();
    let b = |s: i32| big_b(k.shift(s));
    let cc = |s: i32| big_c(k.shift(s));
    let sc = |s: i32| small_c(k.shift(s));
    let al = alpha_n(k);
    let c1 = |s: i32| c_n1(k.shift(s));
    let c2 = |s: i32| c_n2(k.shift(s));
    let c3 = |s: i32| c_n3(k.shift(s));
    let c4 = |s: i32| c_n4(k.shift(s));

    let d1 = &a21 * &al + &a * &c1(0);

    let d2 = &a21 * &(sc(0) + &al * &(b(0) + b(1))) + &a * &c2(0) - (b(0) - &a * &b(1)) * c1(0);

    let b_read = match reading {
        D3Reading::Bk => b(0),
        D3Reading::BkPlusOne => b(1),
    };
    let d3 = &a21 * &((b(0) + b(-1)) * sc(0) + &al * &(b(0) * b(0) + cc(0) + cc(1) - Scalar::one()))
        + &a * &(c1(0) * cc(1))
        - c1(-1) * cc(0)
        + (&a - &Scalar::one()) * c2(0) * b_read
        + &a * &c3(0);

    let d4 = &a21 * &((b(0) + b(-1)) * &al * cc(0) + (cc(0) + b(-1) * b(-1) + cc(-1) - Scalar::one()) * sc(0))
        - (c2(-1) - &a * &c2(0)) * cc(0)
        - (b(0) - &a * &b(-1)) * c3(0)
        + &a * &c4(0);

    let d5 = &a21 * &(cc(-1) * (&al * &cc(0) + sc(0) * (b(-1) + b(-2)))) + &a * &(c3(0) * cc(-1))
        - c3(-1) * cc(0)
        - (b(0) - &a * &b(-2)) * c4(0);

    let d6 = &a21 * &(sc(0) * cc(-1) * cc(-2)) + &a * &(c4(0) * cc(-2)) - c4(-1) * cc(0);

    [d1, d2, d3, d4, d5, d6]
}

/// All closed-form coefficients at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSuite {
    pub index: NIndex,
    pub alpha_n: Scalar,
    pub gamma_n: Scalar,
    pub big_b: Scalar,
    pub big_c: Scalar,
    pub small_c: Scalar,
    pub c_n1: Scalar,
    pub c_n2: Scalar,
    pub c_n3: Scalar,
    pub c_n4: Scalar,
    /// `d_{k,1..6}` with `k` the suite index, third entry in the `B_k` reading.
    pub d_k: [Scalar; 6],
}

/// Coefficients at a concrete index, or symbolic in `n` when `n` is `None`.
pub fn coeff_suite(n: Option<i64>) -> CoeffSuite {
    let idx = n.map_or(NIndex::symbolic(), NIndex::At);
    CoeffSuite {
        index: idx,
        alpha_n: alpha_n(idx),
        gamma_n: gamma_n(idx),
        big_b: big_b(idx),
        big_c: big_c(idx),
        small_c: small_c(idx),
        c_n1: c_n1(idx),
        c_n2: c_n2(idx),
        c_n3: c_n3(idx),
        c_n4: c_n4(idx),
        d_k: d_k(idx, D3Reading::Bk),
    }
}

impl CoeffSuite {
    /// Substitutes a concrete index into a symbolic suite.
    pub fn instantiate_n(&self, n: i64) -> Result<CoeffSuite, Error> {
        let f = |s: &Scalar| s.instantiate_n(n);
        let mut d_k: [Scalar; 6] = Default::default();
        for (dst, src) in d_k.iter_mut().zip(&self.d_k) {
            *dst = f(src)?;
        }
        Ok(CoeffSuite {
            index: NIndex::At(n),
            alpha_n: f(&self.alpha_n)?,
            gamma_n: f(&self.gamma_n)?,
            big_b: f(&self.big_b)?,
            big_c: f(&self.big_c)?,
            small_c: f(&self.small_c)?,
            c_n1: f(&self.c_n1)?,
            c_n2: f(&self.c_n2)?,
            c_n3: f(&self.c_n3)?,
            c_n4: f(&self.c_n4)?,
            d_k,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn base_values() {
        let z = coeff_suite(Some(0));
        assert!(z.small_c.is_zero());
        assert!(z.alpha_n.is_one());
        assert!(z.big_c.is_zero());
        assert_eq!(z.big_b, Scalar::t());
        assert!(coeff_suite(Some(1)).gamma_n.is_one());
        assert!(gamma_n(NIndex::At(0)).is_zero());
    }

    #[test]
    fn c1_identity_at_zero() {
        let a = alpha();
        let v = small_c(NIndex::At(1)) - &a * &small_c(NIndex::At(0))
            + (Scalar::one() - &a) * alpha_n(NIndex::At(0)) * big_b(NIndex::At(0));
        assert!(v.is_zero());
        assert!(c_n2(NIndex::At(0)).is_zero());
    }

    #[test]
    fn c1_at_one() {
        // C_1 = (1/4)(1 + 1)(1 - q^(1/2))(1 - q^(1/2)) = (1/2)(1 - t^2)^2
        assert_eq!(big_c(NIndex::At(1)), s("(1 - t^2)^2 / 2"));
    }

    #[test]
    fn symbolic_shift_agrees_with_scalar_shift() {
        let i = NIndex::symbolic();
        assert_eq!(big_b(i.shift(1)), big_b(i).shift_n(1));
        assert_eq!(c_n3(i.shift(-2)), c_n3(i).shift_n(-2));
    }

    #[test]
    fn symbolic_suite_instantiates_to_concrete() {
        let sym = coeff_suite(None);
        for n in [0, 1, 2, 3, 7] {
            assert_eq!(sym.instantiate_n(n).unwrap(), coeff_suite(Some(n)), "n = {n}");
        }
    }

    #[test]
    fn c_n4_factorization() {
        // c_{n-1} C_n - alpha c_n C_{n-1} = C_{n-1} C_n q^(-(2n-1)/4) (q^(1/2) - q^(-1/2))/2
        let i = NIndex::symbolic();
        let rhs = big_c(i.shift(-1)) * big_c(i) * (i.w_inv().mul_t_pow(1)) * s("(t^2 - t^-2)/2");
        assert_eq!(c_n4(i), rhs);
    }
}

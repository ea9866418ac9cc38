//! Exact scalars: the fraction field of `Q[t^±1, u^±1]`.
//!
//! `t` stands for `q^(1/4)` and `u` for `q^(n/2)`, so every power of `q`
//! that shows up in the structure relations is an integer power of `t`,
//! and an unspecified index `n` is carried by the free variable `u`.

mod gcd;
pub mod laurent;
pub(crate) mod upoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use laurent::{Exp, Laurent};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Reduced fraction `numerator / denominator` of Laurent polynomials.
///
/// The denominator is normalized: its minimal `t` and `u` exponents are both
/// zero and its lexicographically leading coefficient is one. Together with
/// reduction by the gcd this makes the representation unique, so `==` is
/// equality in the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Scalar::from_laurent(Laurent::one())
    }

    pub fn from_laurent(num: Laurent) -> Self {
        Scalar { num, den: Laurent::one() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::from_laurent(Laurent::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `c * t^i * u^j`.
    pub fn monomial(c: Rational, i: i32, j: i32) -> Self {
        Scalar::from_laurent(Laurent::monomial(c, (i, j)))
    }

    /// `t^i`.
    pub fn t_pow(i: i32) -> Self {
        Scalar::monomial(Rational::one(), i, 0)
    }

    /// `u^j`.
    pub fn u_pow(j: i32) -> Self {
        Scalar::monomial(Rational::one(), 0, j)
    }

    pub fn t() -> Self {
        Scalar::t_pow(1)
    }

    pub fn u() -> Self {
        Scalar::u_pow(1)
    }

    /// Builds `num / den` in canonical form.
    pub fn from_fraction(num: Laurent, den: Laurent) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(num, den))
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value lies in the Laurent ring.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_u_free(&self) -> bool {
        self.num.is_u_free() && self.den.is_u_free()
    }

    /// The single rational coefficient if this is `c * t^i * u^j`.
    pub fn as_monomial(&self) -> Option<(Exp, &Rational)> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_monomial().map(|(e, c)| (*e, c))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self.as_monomial() {
            Some(((0, 0), c)) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero_or_monomial(&self) -> bool {
        self.is_zero() || self.as_monomial().is_some()
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(normalize(self.num.clone(), other.num.clone()));
        }
        Ok(normalize(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn inverse(&self) -> Result<Scalar, Error> {
        Scalar::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplication by `t^i`; the normalized denominator is untouched.
    pub fn mul_t_pow(&self, i: i32) -> Scalar {
        Scalar { num: self.num.shift((i, 0)), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i32) -> Result<Scalar, Error> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Realizes the index shift `n -> n + k` through `u -> u * t^(2k)`.
    pub fn shift_n(&self, k: i32) -> Scalar {
        let two_k = k.checked_mul(2).expect("shift overflow");
        let map = |(i, j): Exp| {
            let di = two_k.checked_mul(j).expect("t exponent overflow");
            (i.checked_add(di).expect("t exponent overflow"), j)
        };
        let num = self.num.map_exps(map);
        let den = self.den.map_exps(map);
        // An automorphism keeps the fraction reduced; only the unit normalization moves.
        normalize_units(num, den)
    }

    /// Substitutes `u = t^(2n)`, i.e. `q^(n/2)`, for a concrete index.
    pub fn instantiate_n(&self, n: i64) -> Result<Scalar, Error> {
        let two_n = i32::try_from(n).ok().and_then(|n| n.checked_mul(2)).ok_or(Error::IndexOutOfRange(n))?;
        let map = |(i, j): Exp| (i + two_n * j, 0);
        let den = self.den.map_exps(map);
        if den.is_zero() {
            return Err(Error::VanishingDenominator { n });
        }
        Ok(normalize(self.num.map_exps(map), den))
    }

    /// Floating-point value at `t = q0^(1/4)` and, when given, `u = q0^(n/2)`.
    pub fn eval(&self, q0: f64, n: Option<i64>) -> Result<f64, Error> {
        let u = match n {
            Some(n) => q0.powf(n as f64 / 2.0),
            None if self.is_u_free() => 1.0,
            None => return Err(Error::MissingIndex),
        };
        let t = q0.powf(0.25);
        let d = self.den.eval(t, u);
        if d == 0.0 {
            return Err(Error::NumericPole);
        }
        Ok(self.num.eval(t, u) / d)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

/// Full canonicalization: cancel common factors, then normalize units.
fn normalize(num: Laurent, den: Laurent) -> Scalar {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return Scalar::zero();
    }
    if let Some(q) = num.div_exact(&den) {
        return Scalar::from_laurent(q);
    }
    let g = gcd::gcd(&num, &den);
    let num = num.div_exact(&g).expect("gcd divides numerator");
    let den = den.div_exact(&g).expect("gcd divides denominator");
    normalize_units(num, den)
}

/// Moves monomial factors out of the denominator and makes it monic.
fn normalize_units(num: Laurent, den: Laurent) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    if let Some((e, c)) = den.as_monomial() {
        let num = num.shift((-e.0, -e.1)).scale(&c.recip());
        return Scalar::from_laurent(num);
    }
    let m = den.min_exps();
    let shift = (-m.0, -m.1);
    let (num, den) = (num.shift(shift), den.shift(shift));
    let lc = den.leading().unwrap().1.recip();
    Scalar { num: num.scale(&lc), den: den.scale(&lc) }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_scalar(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return normalize(self.num.add(&rhs.num), self.den.clone());
        }
        normalize(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(self.num.mul(&rhs.num));
        }
        normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

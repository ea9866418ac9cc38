//! Sparse Laurent polynomials in `t` and `u` with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::UPoly;
use super::Rational;

/// Exponent pair `(i, j)` of the monomial `t^i * u^j`.
pub type Exp = (i32, i32);

pub(crate) fn add_exp(a: Exp, b: Exp) -> Exp {
    (a.0.checked_add(b.0).expect("t exponent overflow"), a.1.checked_add(b.1).expect("u exponent overflow"))
}

fn neg_exp(a: Exp) -> Exp {
    (a.0.checked_neg().expect("t exponent overflow"), a.1.checked_neg().expect("u exponent overflow"))
}

/// Element of `Q[t, 1/t, u, 1/u]`.
///
/// Terms are kept sorted by exponent pair in strictly descending
/// lexicographic order and never carry a zero coefficient, so structural
/// equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(Exp, Rational)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Laurent::monomial(c, (0, 0))
    }

    pub fn monomial(c: Rational, e: Exp) -> Self {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, Rational)>) -> Self {
        let mut v: Vec<(Exp, Rational)> = terms.into_iter().collect();
        v.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        Laurent { terms: combine_sorted(v) }
    }

    pub fn terms(&self) -> &[(Exp, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn leading(&self) -> Option<&(Exp, Rational)> {
        self.terms.first()
    }

    pub fn as_monomial(&self) -> Option<&(Exp, Rational)> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn is_u_free(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.1 == 0)
    }

    /// Componentwise minimum exponents; `(0, 0)` for zero.
    pub fn min_exps(&self) -> Exp {
        self.fold_exps(i32::min)
    }

    /// Componentwise maximum exponents; `(0, 0)` for zero.
    pub fn max_exps(&self) -> Exp {
        self.fold_exps(i32::max)
    }

    fn fold_exps(&self, f: fn(i32, i32) -> i32) -> Exp {
        let mut it = self.terms.iter().map(|(e, _)| *e);
        let Some(first) = it.next() else {
            return (0, 0);
        };
        it.fold(first, |acc, e| (f(acc.0, e.0), f(acc.1, e.1)))
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        merge(&self.terms, &other.terms, false)
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        merge(&self.terms, &other.terms, true)
    }

    pub fn scale(&self, c: &Rational) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Laurent { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Multiplies by the monomial `t^e.0 * u^e.1`.
    pub fn shift(&self, e: Exp) -> Laurent {
        if e == (0, 0) {
            return self.clone();
        }
        Laurent { terms: self.terms.iter().map(|(x, c)| (add_exp(*x, e), c.clone())).collect() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        if let Some((e, c)) = other.as_monomial() {
            return self.shift(*e).scale(c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return other.shift(*e).scale(c);
        }
        // Clear denominators once, convolve over Z, reduce once per output term.
        let (ia, da) = integerize(&self.terms);
        let (ib, db) = integerize(&other.terms);
        let den = da * db;
        let finish = |e: Exp, c: BigInt| (!c.is_zero()).then(|| (e, Rational::new(c, den.clone())));
        let (hi_a, lo_a) = (self.terms[0].0 .0, self.terms[self.len() - 1].0 .0);
        let (hi_b, lo_b) = (other.terms[0].0 .0, other.terms[other.len() - 1].0 .0);
        let width = (hi_a as i64 - lo_a as i64) as usize + (hi_b as i64 - lo_b as i64) as usize + 1;
        let dense = width <= 4 * self.len() * other.len() + 64;
        if let (true, Some(ua), Some(ub)) = (dense, single_u(&self.terms), single_u(&other.terms)) {
            // Dense in t.
            let mut acc = vec![BigInt::zero(); width];
            for (ea, ca) in &ia {
                let oa = (hi_a - ea.0) as usize;
                for (eb, cb) in &ib {
                    acc[oa + (hi_b - eb.0) as usize] += ca * cb;
                }
            }
            let top = hi_a.checked_add(hi_b).expect("t exponent overflow");
            let u = ua.checked_add(ub).expect("u exponent overflow");
            let terms = acc.into_iter().enumerate().filter_map(|(k, c)| finish((top - k as i32, u), c)).collect();
            return Laurent { terms };
        }
        let mut prods: Vec<(Exp, BigInt)> = Vec::with_capacity(self.len() * other.len());
        for (ea, ca) in &ia {
            for (eb, cb) in &ib {
                prods.push((add_exp(*ea, *eb), ca * cb));
            }
        }
        prods.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        let mut terms: Vec<(Exp, Rational)> = Vec::new();
        let mut it = prods.into_iter().peekable();
        while let Some((e, mut c)) = it.next() {
            while let Some((_, d)) = it.next_if(|(f, _)| *f == e) {
                c += d;
            }
            terms.extend(finish(e, c));
        }
        Laurent { terms }
    }

    pub fn pow(&self, k: u32) -> Laurent {
        let mut acc = Laurent::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies a monomial substitution to every exponent pair.
    pub fn map_exps(&self, f: impl Fn(Exp) -> Exp) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    pub fn eval(&self, t: f64, u: f64) -> f64 {
        self.terms.iter().map(|((i, j), c)| rational_to_f64(c) * t.powi(*i) * u.powi(*j)).sum()
    }

    /// Exact quotient in the Laurent ring, or `None` if `d` does not divide `self`.
    ///
    /// Panics if `d` is zero.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "exact division by the zero polynomial");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if let Some((e, c)) = d.as_monomial() {
            return Some(self.shift(neg_exp(*e)).scale(&c.recip()));
        }
        let amin = self.min_exps();
        let dmin = d.min_exps();
        let a = self.shift(neg_exp(amin));
        let dd = d.shift(neg_exp(dmin));
        let amax = a.max_exps();
        let dmax = dd.max_exps();
        if amax.0 < dmax.0 || amax.1 < dmax.1 {
            return None;
        }
        let offset = add_exp(amin, neg_exp(dmin));
        if a.is_u_free() && dd.is_u_free() {
            let q = a.to_upoly().div_exact(&dd.to_upoly())?;
            return Some(Laurent::from_upoly(&q, 0).shift(offset));
        }
        let limit = (amax.0 - dmax.0, amax.1 - dmax.1);
        let (dl_e, dl_c) = dd.leading().cloned().unwrap();
        let mut rem = a;
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.leading() {
            let e = (re.0 - dl_e.0, re.1 - dl_e.1);
            if e.0 < 0 || e.1 < 0 || e.0 > limit.0 || e.1 > limit.1 {
                return None;
            }
            let c = rc / &dl_c;
            rem = rem.sub(&dd.shift(e).scale(&c));
            quot.push((e, c));
        }
        Some(Laurent { terms: quot }.shift(offset))
    }

    /// Dense view of a `u`-free polynomial with nonnegative `t` exponents.
    pub(crate) fn to_upoly(&self) -> UPoly {
        let deg = self.max_exps().0.max(0) as usize;
        let mut v = vec![Rational::zero(); deg + 1];
        for ((i, j), c) in &self.terms {
            debug_assert!(*j == 0 && *i >= 0);
            v[*i as usize] = c.clone();
        }
        UPoly::from_coeffs(v)
    }

    /// `p(t) * u^j`.
    pub(crate) fn from_upoly(p: &UPoly, j: i32) -> Laurent {
        let terms =
            p.0.iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| ((i as i32, j), c.clone()))
                .collect();
        Laurent { terms }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mono = render_monomial(*i, *j, latex);
            if mono.is_empty() {
                f.write_str(&render_rational(&mag, latex))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else if latex {
                write!(f, "{} {}", render_rational(&mag, true), mono)?;
            } else {
                write!(f, "{}*{}", render_rational(&mag, false), mono)?;
            }
        }
        Ok(())
    }

    pub fn to_latex(&self) -> String {
        struct L<'a>(&'a Laurent);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        L(self).to_string()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

pub(crate) fn render_rational(r: &Rational, latex: bool) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if latex {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn render_monomial(i: i32, j: i32, latex: bool) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("t", i), ("u", j)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            e if latex => parts.push(format!("{name}^{{{e}}}")),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(if latex { " " } else { "*" })
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn combine_sorted(v: Vec<(Exp, Rational)>) -> Vec<(Exp, Rational)> {
    let mut out: Vec<(Exp, Rational)> = Vec::with_capacity(v.len());
    for (e, c) in v {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((e, c));
            }
        }
    }
    if out.last().is_some_and(|(_, c)| c.is_zero()) {
        out.pop();
    }
    out
}

/// Integer coefficients and their common denominator.
fn integerize(terms: &[(Exp, Rational)]) -> (Vec<(Exp, BigInt)>, BigInt) {
    let den = terms.iter().fold(BigInt::one(), |l, (_, c)| if c.denom().is_one() { l } else { l.lcm(c.denom()) });
    let ints = terms
        .iter()
        .map(|(e, c)| {
            let k = if c.denom() == &den { c.numer().clone() } else { c.numer() * (&den / c.denom()) };
            (*e, k)
        })
        .collect();
    (ints, den)
}

fn single_u(terms: &[(Exp, Rational)]) -> Option<i32> {
    let u = terms.first()?.0 .1;
    terms.iter().all(|(e, _)| e.1 == u).then_some(u)
}

fn merge(a: &[(Exp, Rational)], b: &[(Exp, Rational)], negate_b: bool) -> Laurent {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b[j].0, take_b(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, take_b(c))));
    Laurent { terms: out }
}

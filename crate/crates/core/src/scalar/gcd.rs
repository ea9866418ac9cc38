//! Greatest common divisors in `Q[t, u]`.
//!
//! Polynomials are viewed recursively as polynomials in `u` with
//! coefficients in `Q[t]`; the gcd is content times the primitive part of a
//! primitive pseudo-remainder sequence. Monomial factors are units in the
//! Laurent ring and are stripped before entering.

use num_traits::Zero;

use super::laurent::Laurent;
use super::upoly::UPoly;

/// Coefficients in `Q[t]` indexed by the power of `u`; trailing zeros trimmed.
type Biv = Vec<UPoly>;

fn to_biv(p: &Laurent) -> Biv {
    let m = p.min_exps();
    let max = p.max_exps();
    let (tdeg, udeg) = ((max.0 - m.0) as usize, (max.1 - m.1) as usize);
    let mut dense = vec![vec![super::Rational::zero(); tdeg + 1]; udeg + 1];
    for ((i, j), c) in p.terms() {
        dense[(j - m.1) as usize][(i - m.0) as usize] = c.clone();
    }
    let mut out: Biv = dense.into_iter().map(UPoly::from_coeffs).collect();
    trim(&mut out);
    out
}

fn from_biv(b: &Biv) -> Laurent {
    let mut acc = Laurent::zero();
    for (j, c) in b.iter().enumerate() {
        acc = acc.add(&Laurent::from_upoly(c, j as i32));
    }
    acc
}

fn trim(b: &mut Biv) {
    while b.last().is_some_and(UPoly::is_zero) {
        b.pop();
    }
}

fn content(b: &Biv) -> UPoly {
    b.iter().fold(UPoly::zero(), |g, c| UPoly::gcd(&g, c))
}

fn div_by_content(b: &Biv, c: &UPoly) -> Biv {
    b.iter().map(|x| x.div_exact(c).expect("content divides every coefficient")).collect()
}

fn primitive_part(b: &Biv) -> Biv {
    let c = content(b);
    if c.is_zero() {
        return Vec::new();
    }
    div_by_content(b, &c)
}

/// Pseudo-remainder of `a` by `b` with respect to `u`.
fn prem(a: &Biv, b: &Biv) -> Biv {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&bk.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

/// Gcd of two nonzero Laurent polynomials, up to units of the Laurent ring.
pub(crate) fn gcd(a: &Laurent, b: &Laurent) -> Laurent {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let (a, b) = (to_biv(a), to_biv(b));
    let (ca, cb) = (content(&a), content(&b));
    let c = UPoly::gcd(&ca, &cb);
    let mut p = div_by_content(&a, &ca);
    let mut q = div_by_content(&b, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while q.len() > 1 {
        let r = prem(&p, &q);
        p = q;
        if r.is_empty() {
            q = Vec::new();
            break;
        }
        q = primitive_part(&r);
    }
    // q is either zero (p is the gcd) or a nonzero u-free primitive (gcd 1).
    let g = if q.is_empty() { p } else { vec![UPoly::constant(super::Rational::from_integer(1.into()))] };
    let g: Biv = g.iter().map(|x| x.mul(&c)).collect();
    from_biv(&g)
}

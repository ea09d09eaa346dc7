//! Pseudo-division, subresultant chains, resultants and discriminants.
//!
//! Polynomials are viewed as univariate in a chosen variable with
//! multivariate coefficients (`UPoly`, dense, constant term first).

use super::poly::Poly;
use super::var::Var;

pub(crate) type UPoly = Vec<Poly>;

pub(crate) fn to_upoly(p: &Poly, v: Var) -> UPoly {
    let mut u = p.coeffs(v);
    trim(&mut u);
    u
}

pub(crate) fn from_upoly(u: &UPoly, v: Var) -> Poly {
    Poly::from_coeffs(v, u)
}

fn trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn deg(a: &UPoly) -> isize {
    a.len() as isize - 1
}

fn lc(a: &UPoly) -> &Poly {
    a.last().expect("leading coefficient of zero polynomial")
}

fn scale(a: &UPoly, k: &Poly) -> UPoly {
    if k.is_one() {
        return a.clone();
    }
    a.iter().map(|c| c * k).collect()
}

fn div_exact(a: &UPoly, k: &Poly) -> UPoly {
    if k.is_one() {
        return a.clone();
    }
    a.iter()
        .map(|c| c.exact_div(k).expect("inexact division in subresultant chain"))
        .collect()
}

fn neg(a: &UPoly) -> UPoly {
    a.iter().map(|c| -c).collect()
}

/// Pseudo-division with lazy multiplier: returns `(q, r, e)` with
/// `lc(b)^e * a = q * b + r` and `deg r < deg b`.
pub(crate) fn pdivide(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, u32) {
    let db = deg(b);
    assert!(db >= 0, "pseudo-division by zero");
    let lb = lc(b).clone();
    let mut r = a.clone();
    let mut q: UPoly = Vec::new();
    let mut e = 0u32;
    while deg(&r) >= db {
        let k = (deg(&r) - db) as usize;
        let lr = r.last().unwrap().clone();
        if !lb.is_one() {
            r = scale(&r, &lb);
            q = scale(&q, &lb);
            e += 1;
        }
        if q.len() <= k {
            q.resize(k + 1, Poly::zero());
        }
        q[k] = &q[k] + &lr;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[i + k] = &r[i + k] - &(c * &lr);
            }
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r, e)
}

/// Pseudo-remainder with the full multiplier `lc(b)^(deg a - deg b + 1)`.
pub(crate) fn prem_full(a: &UPoly, b: &UPoly) -> UPoly {
    if deg(a) < deg(b) {
        return scale(a, lc(b));
    }
    let full = (deg(a) - deg(b) + 1) as u32;
    let (_, r, e) = pdivide(a, b);
    if e < full {
        scale(&r, &lc(b).pow(full - e))
    } else {
        r
    }
}

/// Regular subresultants `S_j` (those of exact degree `j`) of `p` and `q`,
/// for `j < deg q`, in increasing `j`.  Requires `deg p >= deg q >= 1`.
pub(crate) fn regular_subresultants(p: &UPoly, q: &UPoly) -> Vec<(usize, UPoly)> {
    let (m, n) = (deg(p), deg(q));
    assert!(m >= n && n >= 1);
    let mut out = Vec::new();
    let mut s = lc(q).pow((m - n) as u32);
    let mut a = q.clone();
    let mut b = prem_full(p, &neg(q));
    loop {
        if b.is_empty() {
            break;
        }
        let d = deg(&a);
        let e = deg(&b);
        let delta = d - e;
        let c = if delta > 1 {
            let lb = lc(&b).clone();
            let mut c = b.clone();
            for _ in 1..delta {
                c = div_exact(&scale(&c, &lb), &s);
            }
            c
        } else {
            b.clone()
        };
        out.push((e as usize, c.clone()));
        if e == 0 {
            break;
        }
        let denom = &s.pow(delta as u32) * lc(&a);
        b = div_exact(&prem_full(&a, &neg(&b)), &denom);
        a = c;
        s = lc(&a).clone();
    }
    out.reverse();
    out
}

/// Resultant with respect to `v` (Sylvester determinant convention).
pub fn resultant(p: &Poly, q: &Poly, v: Var) -> Poly {
    let (a, b) = (to_upoly(p, v), to_upoly(q, v));
    if a.is_empty() || b.is_empty() {
        return Poly::zero();
    }
    let (m, n) = (deg(&a), deg(&b));
    if m < n {
        let r = resultant(q, p, v);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    if n == 0 {
        return lc(&b).pow(m as u32);
    }
    match regular_subresultants(&a, &b).first() {
        Some((0, s)) => s[0].clone(),
        _ => Poly::zero(),
    }
}

/// `(-1)^(d(d-1)/2) res(p, dp/dv, v) / init(p)`; equal to 1 for degree 1.
pub fn discriminant(p: &Poly, v: Var) -> Poly {
    let d = p.degree(v) as i64;
    assert!(d >= 1, "discriminant of a polynomial free of the variable");
    if d == 1 {
        return Poly::one();
    }
    let r = resultant(p, &p.derivative(v), v);
    let lcp = p.coeff(v, d as u32);
    let q = r.exact_div(&lcp).expect("resultant not divisible by initial");
    if (d * (d - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

/// Result of a pseudo-division `r = c1 * p1 - c2 * p2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoDivision {
    pub remainder: Poly,
    /// Power of the initial of the divisor.
    pub c1: Poly,
    /// Pseudo-quotient.
    pub c2: Poly,
    /// Exponent `e` with `c1 = init(p2)^e`.
    pub exponent: u32,
}

/// Pseudo-division of `p1` by `p2` with respect to `v`.
pub fn pseudo_divide(p1: &Poly, p2: &Poly, v: Var) -> PseudoDivision {
    let b = to_upoly(p2, v);
    assert!(deg(&b) >= 1, "divisor must involve the variable");
    let (q, r, e) = pdivide(&to_upoly(p1, v), &b);
    PseudoDivision { remainder: from_upoly(&r, v), c1: lc(&b).pow(e), c2: from_upoly(&q, v), exponent: e }
}

/// Pseudo-remainder of `p1` modulo `p2` with respect to `v`.
pub fn prem(p1: &Poly, p2: &Poly, v: Var) -> Poly {
    if p1.degree(v) < p2.degree(v) {
        return p1.clone();
    }
    pseudo_divide(p1, p2, v).remainder
}

/// Pseudo-quotient of `p1` by `p2` with respect to `v`: some
/// `init(p2)^e * p1 / p2` with the remainder dropped.  Each step first
/// tries to divide by the initial exactly, so `e` stays as small as the
/// coefficients allow.
pub fn pquo(p1: &Poly, p2: &Poly, v: Var) -> Poly {
    if p1.degree(v) < p2.degree(v) {
        return Poly::zero();
    }
    let b = to_upoly(p2, v);
    let db = deg(&b);
    let lb = lc(&b).clone();
    let mut r = to_upoly(p1, v);
    let mut q: UPoly = Vec::new();
    while deg(&r) >= db {
        let k = (deg(&r) - db) as usize;
        let lr = r.last().unwrap().clone();
        let t = match lr.exact_div(&lb) {
            Some(t) => t,
            None => {
                r = scale(&r, &lb);
                q = scale(&q, &lb);
                lr
            }
        };
        if q.len() <= k {
            q.resize(k + 1, Poly::zero());
        }
        q[k] = &q[k] + &t;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[i + k] = &r[i + k] - &(c * &t);
            }
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    from_upoly(&q, v)
}

/// The subresultant chain of two polynomials in a common variable.
///
/// `regular` lists `(j, S_j)` for every subresultant of exact degree `j`
/// (`j` below the smaller degree), increasing in `j`.  The principal
/// subresultant coefficient `psc_j` is the initial of `S_j` when `S_j` is
/// listed and identically zero otherwise.
#[derive(Clone, Debug)]
pub struct SubresultantChain {
    pub var: Var,
    pub regular: Vec<(usize, Poly)>,
    /// Degree of the smaller input, the formal top of the chain.
    pub top: usize,
}

impl SubresultantChain {
    pub fn psc(&self, j: usize) -> Poly {
        self.regular
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, s)| s.coeff(self.var, j as u32))
            .unwrap_or_else(Poly::zero)
    }
}

/// Subresultant chain of `p1` and `p2`; the argument of larger degree in
/// `v` is used as the first polynomial.
pub fn euclid_prs(p1: &Poly, p2: &Poly, v: Var) -> SubresultantChain {
    let (a, b) = if p1.degree(v) >= p2.degree(v) { (p1, p2) } else { (p2, p1) };
    let (ua, ub) = (to_upoly(a, v), to_upoly(b, v));
    let top = deg(&ub).max(0) as usize;
    let regular = if top == 0 {
        Vec::new()
    } else {
        regular_subresultants(&ua, &ub).into_iter().map(|(j, s)| (j, from_upoly(&s, v))).collect()
    };
    SubresultantChain { var: v, regular, top }
}

/// Case-split data for making `p` square-free in `v`.
///
/// Under a specialisation where `psc_j` is the first nonvanishing principal
/// subresultant coefficient of `(p, dp/dv)`, the gcd is `S_j` and the
/// square-free part is `pquo(p, S_j)`.  When all listed coefficients
/// vanish the gcd is the derivative itself (`j = top`).
#[derive(Clone, Debug)]
pub struct SquarefreeSplit {
    pub chain: SubresultantChain,
    pub derivative: Poly,
}

impl SquarefreeSplit {
    /// Square-free part assuming the gcd has degree `j`.
    pub fn squarefree_part(&self, p: &Poly, j: usize) -> Poly {
        if j == 0 {
            return p.clone();
        }
        let g = if j == self.chain.top {
            self.derivative.clone()
        } else {
            self.chain
                .regular
                .iter()
                .find(|(k, _)| *k == j)
                .map(|(_, s)| s.clone())
                .expect("no regular subresultant of that degree")
        };
        pquo(p, &g, self.chain.var)
    }
}

pub fn squarefree_split_data(p: &Poly, v: Var) -> SquarefreeSplit {
    let dp = p.derivative(v);
    SquarefreeSplit { chain: euclid_prs(p, &dp, v), derivative: dp }
}

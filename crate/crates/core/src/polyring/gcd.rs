//! Multivariate gcd over Z by recursive content extraction and
//! subresultant remainder sequences.

use num_integer::Integer;

use super::poly::{Int, Monomial, Poly};
use super::prs::{regular_subresultants, to_upoly};
use super::var::Var;
use super::zmod::Zp;

fn normalize_sign(p: Poly) -> Poly {
    if p.lead_sign() < 0 {
        -p
    } else {
        p
    }
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.int_content().gcd(&b.int_content()));
    }
    if a == b {
        return normalize_sign(a.clone());
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        let (mono, other) = if a.num_terms() == 1 { (a, b) } else { (b, a) };
        let g = mono.terms()[0].0.gcd(&other.monomial_content());
        let c = a.int_content().gcd(&b.int_content());
        return Poly::term(g, c);
    }
    let va = a.vars();
    let vb = b.vars();
    let v = *va.last().unwrap().max(vb.last().unwrap());
    let in_a = va.binary_search(&v).is_ok();
    let in_b = vb.binary_search(&v).is_ok();
    if !in_a {
        return gcd(a, &content_in(b, v));
    }
    if !in_b {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content does not divide");
    let pb = b.exact_div(&cb).expect("content does not divide");
    let g = primitive_gcd(&pa, &pb, v);
    normalize_sign(&c * &g)
}

/// Image of `p` in `Z/p[v]` with every other variable set to a value
/// derived from `seed`.
fn image(p: &Poly, v: Var, seed: u64, z: &Zp) -> Vec<u64> {
    use std::hash::{Hash, Hasher};
    let at = |w: Var| {
        let mut h = rustc_hash::FxHasher::default();
        (w, seed).hash(&mut h);
        h.finish() % z.p
    };
    let mut out = vec![0u64; p.degree(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = z.reduce_i(c);
        let mut k = 0;
        for &(w, e) in m.pairs() {
            if w == v {
                k = e as usize;
            } else {
                for _ in 0..e {
                    t = t * at(w) % z.p;
                }
            }
        }
        out[k] = (out[k] + t) % z.p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Certifies that two polynomials primitive in `v` are coprime: if the
/// leading coefficient of `a` survives a specialisation, any common
/// factor involving `v` would survive too.
fn coprime_by_image(a: &Poly, b: &Poly, v: Var) -> bool {
    let z = Zp::new(2_147_483_629);
    (0..2u64).any(|seed| {
        let ia = image(a, v, seed, &z);
        ia.len() == a.degree(v) as usize + 1 && z.gcd(&ia, &image(b, v, seed, &z)).len() == 1
    })
}

/// Gcd of two polynomials that are primitive with respect to `v`.
fn primitive_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (a, b) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    if a.exact_div(b).is_some() {
        return normalize_sign(b.clone());
    }
    if coprime_by_image(a, b, v) {
        return Poly::one();
    }
    let ua = to_upoly(a, v);
    let ub = to_upoly(b, v);
    let chain = regular_subresultants(&ua, &ub);
    let last = match chain.first() {
        None => return normalize_sign(b.clone()),
        Some((0, _)) => return Poly::one(),
        Some((_, s)) => Poly::from_coeffs(v, s),
    };
    normalize_sign(primitive_part_in(&last, v))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let mut cs: Vec<Poly> = p.coeffs(v).into_iter().filter(|c| !c.is_zero()).collect();
    cs.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero();
    for c in &cs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    normalize_sign(p.exact_div(&c).expect("content does not divide"))
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    normalize_sign(&a.exact_div(&g).expect("gcd does not divide") * b)
}

/// Gcd of all coefficients of `p` with respect to the variables in `vars`
/// (a polynomial free of those variables).
pub fn content_wrt(p: &Poly, keep: impl Fn(Var) -> bool) -> Poly {
    use rustc_hash::FxHashMap;
    let mut groups: FxHashMap<Monomial, Vec<(Monomial, Int)>> = FxHashMap::default();
    for (m, c) in p.terms() {
        let (main, rest): (Vec<_>, Vec<_>) = m.pairs().iter().partition(|(v, _)| keep(*v));
        groups
            .entry(Monomial::from_pairs(main))
            .or_default()
            .push((Monomial::from_pairs(rest), c.clone()));
    }
    let mut cs: Vec<Poly> = groups.into_values().map(Poly::from_terms).collect();
    cs.sort_by_key(|c| c.num_terms());
    let mut g = Poly::zero();
    for c in &cs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Square-free decomposition `p = c * prod f_i^i` (integer content dropped),
/// returning the nonconstant `(f_i, i)` with positive leading coefficients.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let mut rest = p.primitive_int();
    while !rest.is_constant() {
        let v = *rest.vars().last().unwrap();
        let c = content_in(&rest, v);
        let pp = rest.exact_div(&c).unwrap();
        yun(&pp, v, &mut out);
        rest = c;
    }
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (f, e) in out {
        let f = normalize_sign(f);
        if let Some(x) = merged.iter_mut().find(|x| x.0 == f) {
            x.1 += e;
        } else {
            merged.push((f, e));
        }
    }
    merged
}

fn yun(f: &Poly, v: Var, out: &mut Vec<(Poly, u32)>) {
    if f.degree(v) == 0 {
        return;
    }
    let df = f.derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).unwrap();
    let c = df.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while b.degree(v) > 0 {
        let a = gcd(&b, &d);
        let nb = b.exact_div(&a).unwrap();
        let nc = d.exact_div(&a).unwrap();
        d = &nc - &nb.derivative(v);
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
}

/// Product of the distinct square-free factors of `p`.
pub fn squarefree_part(p: &Poly) -> Poly {
    let mut acc = Poly::one();
    for (f, _) in squarefree_decomposition(p) {
        acc = &acc * &f;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(Var::indet_var(i))
    }

    #[test]
    fn gcd_of_products() {
        let (x, y, z) = (v(0), v(1), v(2));
        let f = &(&x + &y) * &(&(&x * &z) - &Poly::one());
        let g = &(&x + &y) * &(&z + &y.pow(2));
        assert_eq!(gcd(&f, &g), &x + &y);
        let h = &(&x + &y).pow(2) * &(&z - &Poly::one());
        let sq = squarefree_decomposition(&h);
        assert_eq!(sq.len(), 2);
        assert!(sq.contains(&(&x + &y, 2)));
        assert!(sq.contains(&(&z - &Poly::one(), 1)));
    }
}

//! Factorisation over Z: Zassenhaus for univariate polynomials and
//! Hensel lifting with a leading-coefficient correction for the
//! multivariate case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::gcd::{content_in, gcd, squarefree_decomposition};
use super::poly::{Int, Monomial, Poly};
use super::var::Var;
use super::zmod::{Up, Zp};

/// Irreducible factors over Z with multiplicities.  Integer content and
/// signs are dropped; every factor has a positive leading coefficient.
pub fn factor(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (f, e) in squarefree_decomposition(p) {
        for g in factor_squarefree(&f) {
            let g = g.primitive_int();
            match out.iter_mut().find(|x| x.0 == g) {
                Some(x) => x.1 += e,
                None => out.push((g, e)),
            }
        }
    }
    out
}

/// Factors of a square-free, primitive, nonconstant polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.is_constant() {
        return Vec::new();
    }
    let vars = f.vars();
    for &v in &vars {
        if f.min_degree(v) > 0 {
            let rest = f.exact_div(&Poly::var(v)).unwrap();
            let mut out = vec![Poly::var(v)];
            out.extend(factor_squarefree(&rest));
            return out;
        }
    }
    if vars.len() == 1 {
        let v = vars[0];
        let dense: Vec<Int> = f.coeffs(v).iter().map(|c| c.constant_value().unwrap()).collect();
        return zassenhaus(&dense).into_iter().map(|g| dense_to_poly(&g, v)).collect();
    }
    for &v in &vars {
        let c = content_in(f, v);
        if !c.is_constant() {
            let mut out = factor_squarefree(&c);
            out.extend(factor_squarefree(&f.exact_div(&c).unwrap()));
            return out;
        }
    }
    if vars.iter().any(|&v| f.degree(v) == 1) {
        return vec![f.clone()];
    }
    let main = *vars.iter().min_by_key(|&&v| (f.degree(v), std::cmp::Reverse(v))).unwrap();
    multivariate(f, main)
}

fn dense_to_poly(c: &[Int], v: Var) -> Poly {
    let cs: Vec<Poly> = c.iter().map(|x| Poly::constant(x.clone())).collect();
    Poly::from_coeffs(v, &cs)
}

// ---------------------------------------------------------------------------
// Univariate factorisation over Z.

fn dense_trim(a: &mut Vec<Int>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn to_zp(z: &Zp, f: &[Int]) -> Up {
    let mut out: Up = f.iter().map(|c| z.reduce_i(c)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Irreducible factors of a primitive square-free `f` of positive degree.
pub(crate) fn zassenhaus(f: &[Int]) -> Vec<Vec<Int>> {
    let mut f = f.to_vec();
    dense_trim(&mut f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // Try a few primes and keep the one with the fewest modular factors.
    let mut best: Option<(Zp, Vec<Up>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let z = Zp::new(p);
        let fp = to_zp(&z, &f);
        if fp.len() != n + 1 {
            continue;
        }
        if z.gcd(&fp, &z.derivative(&fp)).len() > 1 {
            continue;
        }
        let fs = z.factor_squarefree(&z.monic(&fp), &mut rng);
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((z, fs));
        }
        tried += 1;
        if tried >= 3 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (z, modular) = best.expect("no suitable prime");
    if modular.len() == 1 {
        return vec![f];
    }
    // Coefficient bound for factors of lc * f.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let p = BigInt::from(z.p);
    let mut k = 1u32;
    let mut m = p.clone();
    while m <= bound {
        m *= &p;
        k += 1;
    }
    let lifted = hensel_lift(&f, &z, &modular, k);
    recombine(f, lifted, &m)
}

fn mod_sym(c: &Int, m: &Int) -> Int {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn dense_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dense_mod(a: &[Int], m: &Int) -> Vec<Int> {
    let mut out: Vec<Int> = a.iter().map(|c| c.mod_floor(m)).collect();
    dense_trim(&mut out);
    out
}

fn dense_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    let n = a.len().max(b.len());
    let mut out: Vec<Int> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    dense_trim(&mut out);
    out
}

fn dense_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    let n = a.len().max(b.len());
    let mut out: Vec<Int> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    dense_trim(&mut out);
    out
}

/// Division by a monic polynomial modulo `m`.
fn dense_divrem_monic(a: &[Int], b: &[Int], m: &Int) -> (Vec<Int>, Vec<Int>) {
    let mut r = dense_mod(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Int::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    dense_trim(&mut q);
    dense_trim(&mut r);
    (q, r)
}

fn up_to_int(a: &Up) -> Vec<Int> {
    a.iter().map(|&c| Int::from(c)).collect()
}

/// Lifts the monic modular factorisation of `f / lc(f)` to modulus `p^k`.
fn hensel_lift(f: &[Int], z: &Zp, factors: &[Up], k: u32) -> Vec<Vec<Int>> {
    let p = Int::from(z.p);
    let target = p.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = lc.extended_gcd(&target).x.mod_floor(&target);
    let monic: Vec<Int> = f.iter().map(|c| (c * &lc_inv).mod_floor(&target)).collect();
    lift_tree(&monic, z, factors, &target)
}

fn lift_tree(f: &[Int], z: &Zp, factors: &[Up], target: &Int) -> Vec<Vec<Int>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, g| z.mul(&acc, g));
    let h0 = right.iter().fold(vec![1u64], |acc, g| z.mul(&acc, g));
    let (one, s0, t0) = z.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (g, h) = hensel_two(f, &up_to_int(&g0), &up_to_int(&h0), &up_to_int(&s0), &up_to_int(&t0), z.p, target);
    let mut out = lift_tree(&g, z, left, target);
    out.extend(lift_tree(&h, z, right, target));
    out
}

/// Quadratic two-factor Hensel lifting of a monic factorisation.
fn hensel_two(f: &[Int], g: &[Int], h: &[Int], s: &[Int], t: &[Int], p: u64, target: &Int) -> (Vec<Int>, Vec<Int>) {
    let (mut g, mut h, mut s, mut t) = (g.to_vec(), h.to_vec(), s.to_vec(), t.to_vec());
    let mut m = Int::from(p);
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        let e = dense_mod(&dense_sub(f, &dense_mul(&g, &h)), &m2);
        let (q, r) = dense_divrem_monic(&dense_mul(&s, &e), &h, &m2);
        let g1 = dense_mod(&dense_add(&dense_add(&g, &dense_mul(&t, &e)), &dense_mul(&q, &g)), &m2);
        let h1 = dense_mod(&dense_add(&h, &r), &m2);
        let b = dense_mod(&dense_sub(&dense_add(&dense_mul(&s, &g1), &dense_mul(&t, &h1)), &[Int::one()]), &m2);
        let (c, d) = dense_divrem_monic(&dense_mul(&s, &b), &h1, &m2);
        s = dense_mod(&dense_sub(&s, &d), &m2);
        t = dense_mod(&dense_sub(&dense_sub(&t, &dense_mul(&t, &b)), &dense_mul(&c, &g1)), &m2);
        g = g1;
        h = h1;
        m = m2;
    }
    (g, h)
}

fn dense_primitive(a: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for c in a {
        g = g.gcd(c);
    }
    let mut out: Vec<Int> = a.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

fn dense_exact_div(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![Int::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1];
        let (qc, rem) = c.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &qc * y;
        }
        q[k] = qc;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(mut f: Vec<Int>, mut lifted: Vec<Vec<Int>>, m: &Int) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), s) {
            let lc = f.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = dense_mul(&g, &lifted[i]);
                g = g.iter().map(|c| c.mod_floor(m)).collect();
            }
            let g: Vec<Int> = g.iter().map(|c| mod_sym(c, m)).collect();
            let g = dense_primitive(&g);
            if !f[0].is_zero() && !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
                continue;
            }
            if let Some(q) = dense_exact_div(&f, &g) {
                out.push(g);
                f = q;
                let mut i = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    out.push(dense_primitive(&f));
    out
}

// ---------------------------------------------------------------------------
// Multivariate factorisation.

type QPoly = Vec<BigRational>;

fn q_trim(a: &mut QPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero) + b.get(i).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    q_trim(&mut out);
    out
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero) - b.get(i).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    q_trim(&mut out);
    out
}

fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / &lb;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &c * y;
        }
        q[k] = c;
    }
    q_trim(&mut q);
    q_trim(&mut r);
    (q, r)
}

/// `s` with `s * a = 1 mod b`, assuming `gcd(a, b) = 1`.
fn q_inverse_mod(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut r0, mut r1) = (b.clone(), q_divrem(a, b).1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    assert_eq!(r0.len(), 1, "factors are not coprime");
    let inv = r0[0].recip();
    s0.iter().map(|c| c * &inv).collect()
}

/// Truncated power series in the shifted variables with `Q[v]`
/// coefficients, keyed by monomials in those variables.
type Series = FxHashMap<Monomial, QPoly>;

fn series_from_poly(p: &Poly, v: Var) -> Series {
    let mut s: Series = FxHashMap::default();
    for (m, c) in p.terms() {
        let (e, rest) = m.split_off(v);
        let entry = s.entry(rest).or_default();
        if entry.len() <= e as usize {
            entry.resize(e as usize + 1, BigRational::zero());
        }
        entry[e as usize] += BigRational::from_integer(c.clone());
    }
    s.retain(|_, q| {
        q_trim(q);
        !q.is_empty()
    });
    s
}

fn series_mul(a: &Series, b: &Series, max_deg: u32) -> Series {
    let mut out: Series = FxHashMap::default();
    for (ma, pa) in a {
        let da = ma.total_degree();
        if da > max_deg {
            continue;
        }
        for (mb, pb) in b {
            if da + mb.total_degree() > max_deg {
                continue;
            }
            let key = ma.mul(mb);
            let prod = q_mul(pa, pb);
            let e = out.entry(key).or_default();
            *e = q_add(e, &prod);
        }
    }
    out.retain(|_, q| !q.is_empty());
    out
}

fn series_to_poly(s: &Series, v: Var) -> Poly {
    let mut den = Int::one();
    for q in s.values() {
        for c in q {
            den = den.lcm(c.denom());
        }
    }
    let mut terms = Vec::new();
    for (m, q) in s {
        for (e, c) in q.iter().enumerate() {
            if !c.is_zero() {
                let k = c.numer() * (&den / c.denom());
                terms.push((m.with_var_pow(v, e as u32), k));
            }
        }
    }
    Poly::from_terms(terms)
}

fn shift(p: &Poly, point: &[(Var, Int)], sign: i32) -> Poly {
    let mut q = p.clone();
    for (x, a) in point {
        if a.is_zero() {
            continue;
        }
        let a = if sign < 0 { -a } else { a.clone() };
        q = q.substitute(*x, &(&Poly::var(*x) + &Poly::constant(a)));
    }
    q
}

fn univariate_image(p: &Poly, v: Var) -> Option<Vec<Int>> {
    p.coeffs(v).iter().map(|c| c.constant_value()).collect()
}

fn dense_derivative(a: &[Int]) -> Vec<Int> {
    a.iter().enumerate().skip(1).map(|(i, c)| c * Int::from(i)).collect()
}

fn dense_is_squarefree(a: &[Int]) -> bool {
    let v = Var::indet_var(0);
    let g = gcd(&dense_to_poly(a, v), &dense_to_poly(&dense_derivative(a), v));
    g.is_constant()
}

/// Factors a square-free polynomial that is primitive in every variable.
fn multivariate(f: &Poly, v: Var) -> Vec<Poly> {
    let others: Vec<Var> = f.vars().into_iter().filter(|&x| x != v).collect();
    let n = f.degree(v);
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut best: Option<(Vec<(Var, Int)>, Poly, Vec<Vec<Int>>)> = None;
    let mut good = 0;
    for attempt in 0..60 {
        let range = 1 + attempt as i64 / 4;
        let point: Vec<(Var, Int)> = others
            .iter()
            .map(|&x| (x, if attempt == 0 { Int::zero() } else { Int::from(rng.gen_range(-range..=range)) }))
            .collect();
        let g = shift(f, &point, 1);
        let mut g0 = g.clone();
        for &x in &others {
            g0 = g0.eval_int(x, &Int::zero());
        }
        let Some(image) = univariate_image(&g0, v) else { continue };
        if image.len() != n as usize + 1 || !dense_is_squarefree(&image) {
            continue;
        }
        let prim = dense_primitive(&image);
        let fs = zassenhaus(&prim);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|b| fs.len() < b.2.len()) {
            best = Some((point, g, fs));
        }
        good += 1;
        if good >= 3 {
            break;
        }
    }
    let Some((point, g, image_factors)) = best else {
        // No usable evaluation point; treat as irreducible.
        return vec![f.clone()];
    };
    if let Some(fs) = lift_factors(&g, v, &image_factors) {
        return fs.iter().map(|h| shift(h, &point, -1).primitive_int()).collect();
    }
    // Some image factors do not correspond to true factors; look for a
    // two-way split and recurse.
    let r = image_factors.len();
    for size in 1..=r / 2 {
        for subset in combinations(r, size) {
            if size * 2 == r && !subset.contains(&0) {
                continue;
            }
            let mut a = vec![Int::one()];
            let mut b = vec![Int::one()];
            for (i, u) in image_factors.iter().enumerate() {
                if subset.contains(&i) {
                    a = dense_mul(&a, u);
                } else {
                    b = dense_mul(&b, u);
                }
            }
            if let Some(fs) = lift_factors(&g, v, &[a, b]) {
                let mut out = Vec::new();
                for h in fs {
                    out.extend(factor_squarefree(&shift(&h, &point, -1).primitive_int()));
                }
                return out;
            }
        }
    }
    vec![f.clone()]
}

/// Hensel lifting of `g(v, 0) = c * prod u_i` to a factorisation of `g`
/// using the leading-coefficient correction.  Returns the primitive
/// factors (in the shifted coordinates) on success.
fn lift_factors(g: &Poly, v: Var, image: &[Vec<Int>]) -> Option<Vec<Poly>> {
    let r = image.len();
    let n = g.degree(v);
    let lc = g.coeff(v, n);
    let mut lc0 = lc.clone();
    for x in lc.vars() {
        lc0 = lc0.eval_int(x, &Int::zero());
    }
    let lc0 = BigRational::from_integer(lc0.constant_value()?);
    let big_f = &lc.pow(r as u32 - 1) * g;
    let target = series_from_poly(&big_f, v);
    let k_max = big_f.terms().iter().map(|(m, _)| m.split_off(v).1.total_degree()).max().unwrap_or(0);
    let lc_series = series_from_poly(&lc, v);
    // Initial factors u0_i scaled so that lc(u0_i) = lc(0).
    let u0: Vec<QPoly> = image
        .iter()
        .map(|u| {
            let l = BigRational::from_integer(u.last().unwrap().clone());
            let k = &lc0 / l;
            u.iter().map(|c| BigRational::from_integer(c.clone()) * &k).collect()
        })
        .collect();
    let degs: Vec<usize> = u0.iter().map(|u| u.len() - 1).collect();
    let b: Vec<QPoly> = (0..r)
        .map(|i| {
            (0..r)
                .filter(|&j| j != i)
                .fold(vec![BigRational::one()], |acc, j| q_mul(&acc, &u0[j]))
        })
        .collect();
    let beta: Vec<QPoly> = (0..r).map(|i| q_inverse_mod(&b[i], &u0[i])).collect();
    // U_i = lc * v^d_i + (u0_i - lc(0) v^d_i) + corrections.
    let mut factors: Vec<Series> = (0..r)
        .map(|i| {
            let mut s: Series = FxHashMap::default();
            for (m, q) in &lc_series {
                let c = q.first().cloned().unwrap_or_else(BigRational::zero);
                let mut poly = vec![BigRational::zero(); degs[i] + 1];
                poly[degs[i]] = c;
                s.insert(m.clone(), poly);
            }
            let mut low = u0[i].clone();
            low[degs[i]] = BigRational::zero();
            let e = s.entry(Monomial::one()).or_default();
            *e = q_add(e, &low);
            s
        })
        .collect();
    for k in 1..=k_max {
        let mut prod = factors[0].clone();
        for f in &factors[1..] {
            prod = series_mul(&prod, f, k);
        }
        let mut errors: Vec<(Monomial, QPoly)> = Vec::new();
        for (m, q) in &target {
            if m.total_degree() == k {
                let e = q_sub(q, prod.get(m).unwrap_or(&Vec::new()));
                if !e.is_empty() {
                    errors.push((m.clone(), e));
                }
            }
        }
        for (m, p) in &prod {
            if m.total_degree() == k && !target.contains_key(m) {
                errors.push((m.clone(), p.iter().map(|c| -c).collect()));
            }
        }
        for (m, e) in errors {
            if e.len() > n as usize {
                return None;
            }
            for i in 0..r {
                let sigma = q_divrem(&q_mul(&e, &beta[i]), &u0[i]).1;
                if sigma.is_empty() {
                    continue;
                }
                let entry = factors[i].entry(m.clone()).or_default();
                *entry = q_add(entry, &sigma);
            }
        }
    }
    let polys: Vec<Poly> = factors.iter().map(|s| series_to_poly(s, v)).collect();
    let mut prod = Poly::one();
    for p in &polys {
        prod = &prod * p;
    }
    // The lifted product must equal lc^(r-1) g up to a rational unit.
    let scale = prod.leading_term()?.1.clone();
    let target_lead = big_f.leading_term()?.1.clone();
    if prod.scale(&target_lead) != big_f.scale(&scale) {
        return None;
    }
    let out: Vec<Poly> = polys.iter().map(|p| super::gcd::primitive_part_in(p, v)).collect();
    let mut check = Poly::one();
    for p in &out {
        check = &check * p;
    }
    if g.exact_div(&check).is_some_and(|q| q.is_constant()) {
        Some(out)
    } else {
        None
    }
}

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thomas::diffring::DiffRing;
use thomas::polyring::{Poly, Var};
use thomas::system::{Decomposition, SimpleSystem, System};

pub const NAMES: [&str; 3] = ["x", "y", "z"];

/// Algebraic ring on the last `n` of `x > y > z`.
pub fn ring(n: usize) -> DiffRing {
    DiffRing::algebraic(&NAMES[3 - n..], &[])
}

/// Variables of `ring(n)`, lowest first.
pub fn vars(ring: &DiffRing) -> Vec<Var> {
    let mut vs: Vec<Var> = ring.indets.iter().map(|name| ring.jet(name, &[])).collect();
    vs.reverse();
    vs
}

pub fn eval(p: &Poly, at: &HashMap<Var, BigRational>) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for &(v, e) in m.pairs() {
            let x = at.get(&v).expect("unassigned variable");
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

fn affine(rng: &mut ChaCha8Rng, vs: &[Var], lo: i64, hi: i64) -> Poly {
    let mut p = Poly::constant(rng.gen_range(lo..=hi));
    for &v in vs {
        let k = rng.gen_range(-2..=2i64);
        p = &p + &(&Poly::constant(k) * &Poly::var(v));
    }
    p
}

/// A zero-dimensional-looking triangular system built from factors
/// `a*v - b` that are linear in their leader `v`, scrambled by adding
/// multiples of lower members to higher ones.
pub struct Triangular {
    pub system: System,
    /// Factors `(a, b)` per level, lowest variable first.
    pub levels: Vec<Vec<(Poly, Poly)>>,
}

pub fn triangular(seed: u64) -> Triangular {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3usize);
    let ring = ring(n);
    let vs = vars(&ring);
    let mut levels: Vec<Vec<(Poly, Poly)>> = Vec::new();
    for i in 0..n {
        let lower = &vs[..i];
        let k = rng.gen_range(1..=3usize);
        let mut fs = Vec::new();
        for _ in 0..k {
            let a = if i > 0 && rng.gen_bool(0.3) {
                let a = affine(&mut rng, lower, -1, 1);
                if a.is_zero() {
                    Poly::one()
                } else {
                    a
                }
            } else {
                Poly::constant(*[1i64, 2, -1].get(rng.gen_range(0..3)).unwrap())
            };
            let b = affine(&mut rng, lower, -3, 3);
            fs.push((a, b));
        }
        levels.push(fs);
    }
    let mut polys: Vec<Poly> = levels
        .iter()
        .zip(&vs)
        .map(|(fs, &v)| fs.iter().fold(Poly::one(), |acc, (a, b)| &acc * &(&(a * &Poly::var(v)) - b)))
        .collect();
    for i in 1..n {
        for j in 0..i {
            let r = match rng.gen_range(0..4) {
                0 => Poly::zero(),
                1 => Poly::constant(rng.gen_range(-2..=2i64)),
                _ => Poly::var(vs[rng.gen_range(0..=j)]),
            };
            polys[i] = &polys[i] + &(&r * &polys[j]);
        }
    }
    Triangular { system: System::new(ring, polys, Vec::new()), levels }
}

/// Number of complex solutions by back-substitution over the rationals,
/// or `None` if some fibre is the whole line.
pub fn back_substitution_count(t: &Triangular) -> Option<u64> {
    let vs = vars(&t.system.ring);
    fn rec(levels: &[Vec<(Poly, Poly)>], vs: &[Var], i: usize, at: &mut HashMap<Var, BigRational>) -> Option<u64> {
        if i == levels.len() {
            return Some(1);
        }
        let mut roots = BTreeSet::new();
        for (a, b) in &levels[i] {
            let (a, b) = (eval(a, at), eval(b, at));
            if a.is_zero() {
                if b.is_zero() {
                    return None;
                }
                continue;
            }
            roots.insert(b / a);
        }
        let mut total = 0;
        for r in roots {
            at.insert(vs[i], r);
            total += rec(levels, vs, i + 1, at)?;
        }
        at.remove(&vs[i]);
        Some(total)
    }
    rec(&t.levels, &vs, 0, &mut HashMap::new())
}

/// A random system of one to three equations and at most one inequation
/// in two or three variables; every member is a product of affine or
/// simple quadratic factors, so integer points are common.
pub fn random_system(seed: u64) -> System {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3usize);
    let ring = ring(n);
    let vs = vars(&ring);
    let atom = |rng: &mut ChaCha8Rng| -> Poly {
        if rng.gen_bool(0.7) {
            loop {
                let p = affine(rng, &vs, -2, 2);
                if !p.vars().is_empty() {
                    return p;
                }
            }
        }
        let v = Poly::var(vs[rng.gen_range(0..n)]);
        let w = Poly::var(vs[rng.gen_range(0..n)]);
        let c = Poly::constant(*[0i64, 1, 4].get(rng.gen_range(0..3)).unwrap());
        if rng.gen_bool(0.5) {
            &(&v * &w) - &c
        } else {
            &(&v * &v) - &c
        }
    };
    let member = |rng: &mut ChaCha8Rng| -> Poly {
        let k = rng.gen_range(1..=2);
        (0..k).fold(Poly::one(), |acc, _| &acc * &atom(rng))
    };
    let eqs = (0..rng.gen_range(1..=3)).map(|_| member(&mut rng)).collect();
    let ineqs = (0..rng.gen_range(0..=1)).map(|_| member(&mut rng)).collect();
    System::new(ring, eqs, ineqs)
}

fn holds(eqs: &[Poly], ineqs: &[Poly], at: &HashMap<Var, BigRational>) -> bool {
    eqs.iter().all(|p| eval(p, at).is_zero()) && ineqs.iter().all(|q| !eval(q, at).is_zero())
}

fn in_simple(s: &SimpleSystem, at: &HashMap<Var, BigRational>) -> bool {
    holds(&s.equation_polys(), &s.inequation_polys(), at)
}

/// Every integer point of `[-r, r]^n` solving the input lies in exactly
/// one simple system, and no other point lies in any.
pub fn check_partition(input: &System, d: &Decomposition, r: i64) -> Result<(), String> {
    let vs = vars(&input.ring);
    let n = vs.len();
    let width = (2 * r + 1) as usize;
    let mut at = HashMap::new();
    for idx in 0..width.pow(n as u32) {
        let mut k = idx;
        for &v in &vs {
            at.insert(v, BigRational::from_integer(BigInt::from((k % width) as i64 - r)));
            k /= width;
        }
        let want = holds(&input.equations, &input.inequations, &at);
        let hits = d.systems.iter().filter(|s| in_simple(s, &at)).count();
        if hits != usize::from(want) {
            let point: Vec<String> = vs.iter().map(|v| at[v].to_string()).collect();
            return Err(format!("point ({}) solves the input: {}, lies in {} systems", point.join(", "), want, hits));
        }
    }
    Ok(())
}

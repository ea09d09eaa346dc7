//! Dense univariate polynomials over a prime field `Z/p`, `p < 2^31`.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type Up = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

fn trim(a: &mut Up) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

impl Zp {
    pub fn new(p: u64) -> Zp {
        assert!(p < (1 << 31));
        Zp { p }
    }

    pub fn reduce_i(&self, c: &num_bigint::BigInt) -> u64 {
        let m = num_bigint::BigInt::from(self.p);
        let r = ((c % &m) + &m) % &m;
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    }

    fn mul_c(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow_c(a, self.p - 2)
    }

    fn pow_c(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_c(acc, a);
            }
            a = self.mul_c(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn sub(&self, a: &Up, b: &Up) -> Up {
        let n = a.len().max(b.len());
        let mut out: Up = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &Up, b: &Up) -> Up {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &Up, k: u64) -> Up {
        let mut out: Up = a.iter().map(|&x| self.mul_c(x, k)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &Up) -> Up {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &Up, b: &Up) -> (Up, Up) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul_c(r[k + b.len() - 1], inv);
            q[k] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mul_c(c, y)) % self.p;
                }
            }
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn rem(&self, a: &Up, b: &Up) -> Up {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &Up, b: &Up) -> Up {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Up, b: &Up) -> (Up, Up, Up) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Up, Up) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Up, Up) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let l = self.inv(*r0.last().unwrap());
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    pub fn derivative(&self, a: &Up) -> Up {
        let mut out: Up = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul_c(c, i as u64 % self.p)).collect();
        trim(&mut out);
        out
    }

    pub fn powmod(&self, base: &Up, e: &BigUint, m: &Up) -> Up {
        let mut acc: Up = vec![1];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }

    /// Distinct-degree factorisation of a monic square-free polynomial.
    fn ddf(&self, f: &Up) -> Vec<(Up, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: Up = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus, odd `p`).
    fn edf<R: Rng>(&self, f: &Up, d: usize, rng: &mut R) -> Vec<Up> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Up = {
                let mut a: Up = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut a);
                a
            };
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let g = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.sub(&self.powmod(&a, &e, f), &vec![1]);
                self.gcd(&b, f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &Up, rng: &mut R) -> Vec<Up> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }
}

//! Janet division on monomials in the derivations.
//!
//! A monomial `d_1^i_1 ... d_n^i_n` is stored as its exponent vector.
//! Derivation `d_k` is admissible (a multiplier) for `theta` in `M` when
//! `i_k` is maximal among the elements of `M` agreeing with `theta` in
//! the first `k - 1` exponents.

use std::fmt;

use crate::error::Error;

pub type DiffMonomial = Vec<u32>;

/// The Janet multipliers of every monomial of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JanetTable {
    pub monomials: Vec<DiffMonomial>,
    pub admissible: Vec<Vec<bool>>,
}

impl JanetTable {
    /// Whether `m` lies in the Janet cone of `monomials[i]`.
    pub fn cone_contains(&self, i: usize, m: &[u32]) -> bool {
        let base = &self.monomials[i];
        base.iter()
            .zip(m)
            .zip(&self.admissible[i])
            .all(|((&b, &e), &adm)| e >= b && (adm || e == b))
    }

    /// Index of the monomial whose cone contains `m`, if any.
    pub fn involutive_divisor(&self, m: &[u32]) -> Option<usize> {
        (0..self.monomials.len()).find(|&i| self.cone_contains(i, m))
    }

    pub fn row(&self, i: usize) -> JanetRow<'_> {
        JanetRow { monomial: &self.monomials[i], admissible: &self.admissible[i] }
    }
}

/// Display helper printing `d1^2*d2  {d1, *, d3}`.
pub struct JanetRow<'a> {
    pub monomial: &'a [u32],
    pub admissible: &'a [bool],
}

impl fmt::Display for JanetRow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono: Vec<String> = self
            .monomial
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("∂{}", k + 1) } else { format!("∂{}^{}", k + 1, e) })
            .collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
        write!(f, "{}  {}", mono, format_admissible(self.admissible, &[]))
    }
}

/// Formats admissible flags as `{∂1, *, ∂3}`, using `names` when given.
pub fn format_admissible(admissible: &[bool], names: &[String]) -> String {
    let parts: Vec<String> = admissible
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            if !a {
                "*".to_string()
            } else if let Some(n) = names.get(k) {
                format!("∂{}", n)
            } else {
                format!("∂{}", k + 1)
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Janet multipliers of every element of `m`.
pub fn janet_assign(m: &[DiffMonomial]) -> Result<JanetTable, Error> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = m[0].len();
    let mut monomials: Vec<DiffMonomial> = m.to_vec();
    monomials.sort();
    monomials.dedup();
    let admissible = monomials
        .iter()
        .map(|theta| {
            (0..n)
                .map(|k| {
                    let max = monomials
                        .iter()
                        .filter(|other| other[..k] == theta[..k])
                        .map(|other| other[k])
                        .max()
                        .unwrap();
                    theta[k] == max
                })
                .collect()
        })
        .collect();
    // Present the table in decreasing lexicographic order (d1 first).
    let mut table = JanetTable { monomials, admissible };
    let mut idx: Vec<usize> = (0..table.monomials.len()).collect();
    idx.sort_by(|&a, &b| table.monomials[b].cmp(&table.monomials[a]));
    table.monomials = idx.iter().map(|&i| table.monomials[i].clone()).collect();
    table.admissible = idx.iter().map(|&i| table.admissible[i].clone()).collect();
    Ok(table)
}

/// One prolongation added by [`janet_complete`]: `monomial = d_k * parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prolongation {
    pub monomial: DiffMonomial,
    pub parent: DiffMonomial,
    pub derivation: usize,
}

/// Janet completion of `m`: adds non-admissible prolongations that lie in
/// no Janet cone until the cones cover the monoid ideal generated by `m`.
/// Returns the completed table and the additions in insertion order.
pub fn janet_complete(m: &[DiffMonomial]) -> Result<(JanetTable, Vec<Prolongation>), Error> {
    let mut set: Vec<DiffMonomial> = m.to_vec();
    let mut added = Vec::new();
    loop {
        let table = janet_assign(&set)?;
        let mut found = None;
        // Scan in increasing order so that low prolongations come first.
        let mut order: Vec<usize> = (0..table.monomials.len()).collect();
        order.sort_by(|&a, &b| table.monomials[a].cmp(&table.monomials[b]));
        'scan: for i in order {
            for k in 0..table.monomials[i].len() {
                if table.admissible[i][k] {
                    continue;
                }
                let mut p = table.monomials[i].clone();
                p[k] += 1;
                if table.involutive_divisor(&p).is_none() {
                    found = Some(Prolongation { monomial: p, parent: table.monomials[i].clone(), derivation: k });
                    break 'scan;
                }
            }
        }
        match found {
            Some(pr) => {
                set.push(pr.monomial.clone());
                added.push(pr);
            }
            None => return Ok((table, added)),
        }
    }
}

/// Whether the Janet cones of `table` are pairwise disjoint and cover
/// every multiple of its monomials up to total degree `bound`.
pub fn check_janet_basis(table: &JanetTable, bound: u32) -> bool {
    let n = table.monomials.first().map_or(0, |m| m.len());
    let mut ok = true;
    enumerate(n, bound, &mut |e| {
        let divisible = table.monomials.iter().any(|m| m.iter().zip(e).all(|(a, b)| a <= b));
        let cones = (0..table.monomials.len()).filter(|&i| table.cone_contains(i, e)).count();
        if cones > 1 || (divisible && cones == 0) {
            ok = false;
        }
    });
    ok
}

/// Calls `f` on every exponent vector of length `n` and total degree at
/// most `bound`.
pub fn enumerate(n: usize, bound: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(prefix: &mut Vec<u32>, n: usize, left: u32, f: &mut dyn FnMut(&[u32])) {
        if prefix.len() == n {
            f(prefix);
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, n, left - e, f);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, bound, f);
}

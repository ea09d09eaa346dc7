//! Thomas decomposition of differential systems, membership and
//! elimination.

use crate::algthomas::verify_simple;
use crate::diffring::{DiffRing, Reducer, ReductionMode};
use crate::engine;
use crate::error::Error;
use crate::janet::{janet_assign, janet_complete, DiffMonomial};
use crate::polyring::{Poly, Var};
pub use crate::system::{Decomposition, Diagnostics, Equation, Inequation, Options, SimpleSystem, System};

/// Splits `sys` into disjoint simple differential systems.
pub fn differential_decompose(sys: &System, opts: &Options) -> Result<Decomposition, Error> {
    if sys.ring.n() == 0 {
        return Err(Error::Invalid("differential decomposition needs an independent variable".into()));
    }
    engine::decompose(sys, opts, true)
}

/// Outcome of a passivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Passivity {
    Passive,
    /// The leader sets are not Janet complete; holds the first missing
    /// prolongation as `(indeterminate, monomial)`.
    Incomplete(usize, DiffMonomial),
    /// A non-admissible prolongation with a nonzero Janet remainder.
    Remainder(Poly),
}

/// Janet multipliers of every equation, from the leader sets per
/// indeterminate.
pub fn admissible_sets(ring: &DiffRing, eqs: &[Poly]) -> Result<Vec<Vec<bool>>, Error> {
    let n = ring.n();
    let leaders: Vec<Var> = eqs
        .iter()
        .map(|p| ring.leader(p).ok_or_else(|| Error::Invalid("ground equation".into())))
        .collect::<Result<_, _>>()?;
    let mut out = vec![Vec::new(); eqs.len()];
    for k in 0..ring.indets.len() {
        let idx: Vec<usize> = (0..eqs.len()).filter(|&i| leaders[i].indet() == Some(k)).collect();
        if idx.is_empty() {
            continue;
        }
        let ms: Vec<DiffMonomial> = idx.iter().map(|&i| leaders[i].orders(n)).collect();
        let table = janet_assign(&ms)?;
        for &i in &idx {
            let m = leaders[i].orders(n);
            let pos = table.monomials.iter().position(|x| *x == m).unwrap();
            out[i] = table.admissible[pos].clone();
        }
    }
    Ok(out)
}

/// Checks Janet completeness of the leader sets and Janet-reduces every
/// non-admissible prolongation of `eqs`.
pub fn passivity_check(ring: &DiffRing, eqs: &[Poly]) -> Result<Passivity, Error> {
    let n = ring.n();
    if eqs.is_empty() {
        return Ok(Passivity::Passive);
    }
    for k in 0..ring.indets.len() {
        let ms: Vec<DiffMonomial> = eqs
            .iter()
            .filter_map(|p| ring.leader(p))
            .filter(|v| v.indet() == Some(k))
            .map(|v| v.orders(n))
            .collect();
        if ms.is_empty() {
            continue;
        }
        let (_, added) = janet_complete(&ms)?;
        if let Some(pr) = added.first() {
            return Ok(Passivity::Incomplete(k, pr.monomial.clone()));
        }
    }
    let adm = admissible_sets(ring, eqs)?;
    let mut cands: Vec<(Var, usize, usize)> = Vec::new();
    for (i, p) in eqs.iter().enumerate() {
        let v = ring.leader(p).unwrap();
        for (j, &ok) in adm[i].iter().enumerate() {
            if !ok {
                cands.push((v.derive(j), i, j));
            }
        }
    }
    cands.sort_by(|a, b| ring.ranking.compare(a.0, b.0));
    let red = Reducer::new(ring, eqs);
    for (_, i, j) in cands {
        let q = ring.differentiate(&eqs[i], j);
        let r = red.reduce(&q, ReductionMode::Janet(&adm)).remainder;
        if !r.is_zero() {
            return Ok(Passivity::Remainder(r));
        }
    }
    Ok(Passivity::Passive)
}

/// Checks all conditions of a simple differential system.
pub fn verify_simple_differential(ring: &DiffRing, sys: &SimpleSystem) -> Result<(), String> {
    verify_simple(ring, sys)?;
    let eqs = sys.equation_polys();
    match passivity_check(ring, &eqs).map_err(|e| e.to_string())? {
        Passivity::Passive => {}
        Passivity::Incomplete(k, m) => return Err(format!("leaders of {} are not Janet complete at {:?}", ring.indets[k], m)),
        Passivity::Remainder(r) => return Err(format!("not passive: remainder {:?}", r)),
    }
    let adm = admissible_sets(ring, &eqs).map_err(|e| e.to_string())?;
    for e in &sys.equations {
        let i = eqs.iter().position(|p| *p == e.poly).unwrap();
        if !e.admissible.is_empty() && e.admissible != adm[i] {
            return Err(format!("wrong admissible derivations for the equation with leader {}", ring.var_name(e.leader)));
        }
    }
    for q in &sys.inequations {
        let r = if eqs.is_empty() {
            q.poly.clone()
        } else {
            Reducer::new(ring, &eqs).reduce(&q.poly, ReductionMode::Full).remainder
        };
        if ring.normalize(&r) != q.poly {
            return Err(format!("inequation with leader {} is not reduced", ring.var_name(q.leader)));
        }
    }
    Ok(())
}

/// Membership of `p` in the differential ideal `E : q^inf` of a simple
/// differential system.
pub fn member_diff(ring: &DiffRing, p: &Poly, sys: &SimpleSystem) -> bool {
    let eqs = sys.equation_polys();
    if eqs.is_empty() {
        return p.is_zero();
    }
    Reducer::new(ring, &eqs).reduce(p, ReductionMode::Full).remainder.is_zero()
}

/// Membership of `p` in the radical differential ideal of the input: the
/// intersection of the ideals of all simple systems.
pub fn member_radical(d: &Decomposition, p: &Poly) -> bool {
    d.systems.iter().all(|s| member_diff(&d.ring, p, s))
}

/// Equations of `sys` involving only indeterminates of blocks `i..` of a
/// block ranking (1-based, as in `B_1 >> ... >> B_k`).
pub fn eliminate(ring: &DiffRing, sys: &SimpleSystem, i: usize) -> Result<Vec<Equation>, Error> {
    let r = &ring.ranking;
    if !r.is_block_ranking() || i == 0 || i > r.num_blocks() {
        return Err(Error::NotBlockRanking);
    }
    Ok(sys
        .equations
        .iter()
        .filter(|e| ring.involves_only(&e.poly, |k| r.block_of(k) + 1 >= i))
        .cloned()
        .collect())
}

//! Thomas decomposition of algebraic systems.

use crate::diffring::{DiffRing, Reducer, ReductionMode};
use crate::engine;
use crate::error::Error;
use crate::polyring::{self, is_ground, Poly, Var, VarOrder};
pub use crate::system::{Decomposition, Diagnostics, Equation, Inequation, Options, SimpleSystem, System};

/// Splits `sys` into disjoint simple algebraic systems.  Jet variables of
/// a differential ring are treated as plain algebraic variables.
pub fn algebraic_decompose(sys: &System, opts: &Options) -> Result<Decomposition, Error> {
    engine::decompose(sys, opts, false)
}

/// Checks the defining conditions of a simple algebraic system: non-ground
/// members with distinct leaders, and initials and discriminants without
/// zeros on the solutions of the lower part.  The error names the first
/// violated condition.
pub fn verify_simple(ring: &DiffRing, sys: &SimpleSystem) -> Result<(), String> {
    let rk = &ring.ranking;
    let mut members: Vec<(Var, &Poly, bool)> = Vec::new();
    for e in &sys.equations {
        members.push((leader_of(ring, &e.poly)?, &e.poly, true));
    }
    for q in &sys.inequations {
        members.push((leader_of(ring, &q.poly)?, &q.poly, false));
    }
    members.sort_by_key(|m| rk.rank_key(m.0));
    for w in members.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(format!("two members have leader {}", ring.var_name(w[0].0)));
        }
    }
    for (i, &(v, p, _)) in members.iter().enumerate() {
        let lower = &members[..i];
        let eqs: Vec<Poly> = lower.iter().filter(|m| m.2).map(|m| m.1.clone()).collect();
        let ineqs: Vec<Poly> = lower.iter().filter(|m| !m.2).map(|m| m.1.clone()).collect();
        let vanishes = |c: Poly| -> Result<bool, String> {
            if is_ground(&c) {
                return Ok(c.is_zero());
            }
            let mut e = eqs.clone();
            e.push(c);
            let d = algebraic_decompose(&System::new(ring.clone(), e, ineqs.clone()), &Options::default())
                .map_err(|e| e.to_string())?;
            Ok(!d.is_empty())
        };
        let name = ring.var_name(v);
        if vanishes(polyring::initial(p, rk))? {
            return Err(format!("initial of the member with leader {} has a zero", name));
        }
        if p.degree(v) >= 2 && vanishes(polyring::discriminant(p, v))? {
            return Err(format!("discriminant of the member with leader {} has a zero", name));
        }
    }
    Ok(())
}

fn leader_of(ring: &DiffRing, p: &Poly) -> Result<Var, String> {
    ring.leader(p).ok_or_else(|| "ground member".to_string())
}

/// Whether the solution sets of two systems are disjoint.
pub fn are_disjoint(ring: &DiffRing, a: &SimpleSystem, b: &SimpleSystem) -> Result<bool, Error> {
    let mut eqs = a.equation_polys();
    eqs.extend(b.equation_polys());
    let mut ineqs = a.inequation_polys();
    ineqs.extend(b.inequation_polys());
    Ok(algebraic_decompose(&System::new(ring.clone(), eqs, ineqs), &Options::default())?.is_empty())
}

/// Whether `p` vanishes on the solutions of the simple system `sys`
/// (membership in the saturation of its equations by their initials).
pub fn member(ring: &DiffRing, p: &Poly, sys: &SimpleSystem) -> bool {
    let eqs = sys.equation_polys();
    if eqs.is_empty() {
        return p.is_zero();
    }
    Reducer::new(ring, &eqs).reduce(p, ReductionMode::Algebraic).remainder.is_zero()
}

/// Number of solutions of a zero-dimensional simple system.
pub fn count_system(ring: &DiffRing, sys: &SimpleSystem) -> Result<u64, Error> {
    let mut count = 1u64;
    for k in 0..ring.indets.len() {
        let v = Var::indet_var(k);
        let e = sys.equation_with_leader(v).ok_or(Error::NotZeroDimensional)?;
        count = count.checked_mul(e.poly.degree(v) as u64).ok_or_else(|| Error::Invalid("count overflow".into()))?;
    }
    if sys.equations.len() != ring.indets.len() {
        return Err(Error::NotZeroDimensional);
    }
    Ok(count)
}

/// Total number of solutions of a zero-dimensional decomposition.
pub fn count_solutions(d: &Decomposition) -> Result<u64, Error> {
    d.systems.iter().map(|s| count_system(&d.ring, s)).sum()
}

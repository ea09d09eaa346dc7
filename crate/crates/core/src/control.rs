//! Observability, flat outputs and inversion of control systems, read off
//! simple differential systems computed under suitable block rankings.

use crate::diffring::{DiffRing, Ranking};
use crate::diffthomas::{differential_decompose, member_diff};
use crate::error::Error;
use crate::polyring::{Poly, Var};
use crate::sysfile::{Expr, SystemFile};
use crate::system::{Decomposition, Options, SimpleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Nothing to check (for example, inversion with no outputs).
    Vacuous,
}

/// A witness `p` for the indeterminate `indet`: `p` lies in the ideal of
/// the system, involves `indet` but none of its proper derivatives, and
/// neither its initial nor its derivative by `indet` lies in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indet: usize,
    pub poly: Poly,
    pub mode: SearchMode,
}

/// How a witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Read off the given decomposition.
    OneShot,
    /// Read off a re-decomposition of one simple system under a ranking
    /// with only the target indeterminate directly above the outputs.
    /// Holds for the witness's piece of that system.
    PerZ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Violated conditions, one line each.
    pub reasons: Vec<String>,
}

impl SystemReport {
    fn new() -> SystemReport {
        SystemReport { verdict: Verdict::Holds, witnesses: Vec::new(), reasons: Vec::new() }
    }

    fn fail(&mut self, reason: String) {
        self.verdict = Verdict::Fails;
        self.reasons.push(reason);
    }
}

/// One report per simple system of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryReport {
    pub systems: Vec<SystemReport>,
}

impl QueryReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.systems.iter().filter(|s| s.verdict == v).count()
    }
}

/// Rewrites `sin(angle)` and `cos(angle)` as new indeterminates `sin` and
/// `cos` related by `cos^2 + sin^2 = 1`.  If the angle still occurs, the
/// derivative relations `cos' = -sin*angle'` and `sin' = cos*angle'` are
/// added for every derivation; otherwise the angle is dropped.  The new
/// indeterminates are ranked just above the angle.
pub fn encode_trig(file: &SystemFile, angle: &str, cos: &str, sin: &str) -> SystemFile {
    let mut f = file.clone();
    let rewrite = |e: &Expr| {
        e.map(&|x| match x {
            Expr::Call { func, arg, .. } if matches!(&**arg, Expr::Sym { name, jet: None, .. } if name == angle) => {
                match func.as_str() {
                    "cos" => Some(Expr::sym(cos)),
                    "sin" => Some(Expr::sym(sin)),
                    _ => None,
                }
            }
            _ => None,
        })
    };
    f.equations = f.equations.iter().map(rewrite).collect();
    f.inequations = f.inequations.iter().map(rewrite).collect();
    let mentions = |e: &Expr| e.any(&|x| matches!(x, Expr::Sym { name, .. } if name == angle));
    let used = f.equations.iter().chain(&f.inequations).any(mentions) || f.constants.iter().any(|c| c == angle);

    let splice = |names: &mut Vec<String>| {
        if let Some(i) = names.iter().position(|n| n == angle) {
            let mut new = vec![cos.to_string(), sin.to_string()];
            if used {
                new.push(angle.to_string());
            }
            names.splice(i..=i, new);
        }
    };
    splice(&mut f.deps);
    if let Some(blocks) = f.ranking.as_mut() {
        for b in blocks.iter_mut() {
            splice(b);
        }
    }
    if !used {
        for r in [&mut f.roles.states, &mut f.roles.inputs, &mut f.roles.outputs] {
            r.retain(|n| n != angle);
        }
    }
    f.trig.retain(|t| t.angle != angle);

    let (c, s) = (Expr::sym(cos), Expr::sym(sin));
    let sq = |e: &Expr| Expr::Pow(Box::new(e.clone()), 2);
    f.equations.push(Expr::Sub(Box::new(Expr::Add(Box::new(sq(&c)), Box::new(sq(&s)))), Box::new(Expr::num(1))));
    if used {
        let n = f.indeps.len();
        for j in 0..n {
            let mut o = vec![0; n];
            o[j] = 1;
            let d = |name: &str| Expr::jet(name, o.clone());
            let mul = |a: Expr, b: Expr| Expr::Mul(Box::new(a), Box::new(b));
            f.equations.push(Expr::Add(Box::new(d(cos)), Box::new(mul(s.clone(), d(angle)))));
            f.equations.push(Expr::Sub(Box::new(d(sin)), Box::new(mul(c.clone(), d(angle)))));
        }
    }
    f
}

fn indets_of(p: &Poly) -> Vec<usize> {
    let mut out: Vec<usize> = p.vars().into_iter().filter_map(|v| v.indet()).collect();
    out.sort();
    out.dedup();
    out
}

/// Whether `p` witnesses `x` over the system: membership, leader `x`
/// itself with no proper derivative of `x` present, and the initial and
/// derivative by `x` outside the ideal.
pub fn verify_witness(ring: &DiffRing, sys: &SimpleSystem, x: usize, p: &Poly) -> bool {
    let n = ring.n();
    let xv = Var::jet(x, &vec![0; n]);
    if !p.contains_var(xv) || p.vars().into_iter().any(|v| v.indet() == Some(x) && v != xv) {
        return false;
    }
    let d = p.degree(xv);
    let init = p.coeff(xv, d);
    let dp = p.derivative(xv);
    member_diff(ring, p, sys) && !member_diff(ring, &init, sys) && !member_diff(ring, &dp, sys)
}

/// Searches the equations of `sys` for a witness of `x` involving only `x`
/// and indeterminates in `known`.
fn find_witness(ring: &DiffRing, sys: &SimpleSystem, x: usize, known: &[usize]) -> Result<Poly, String> {
    let n = ring.n();
    let xv = Var::jet(x, &vec![0; n]);
    let name = &ring.indets[x];
    let Some(e) = sys.equation_with_leader(xv) else {
        return Err(format!("no equation has leader {}", name));
    };
    let extra: Vec<&str> =
        indets_of(&e.poly).into_iter().filter(|k| *k != x && !known.contains(k)).map(|k| ring.indets[k].as_str()).collect();
    if !extra.is_empty() {
        return Err(format!("the equation with leader {} also involves {}", name, extra.join(", ")));
    }
    if !verify_witness(ring, sys, x, &e.poly) {
        return Err(format!("the equation with leader {} fails the non-membership conditions", name));
    }
    Ok(e.poly.clone())
}

/// Checks that `ys` sit in blocks strictly below every other indeterminate
/// except the constants `consts`, and that no member of `mid` is ranked
/// above the rest by block.
fn check_blocks(ring: &DiffRing, ys: &[usize], mid: &[usize], consts: &[usize]) -> Result<(), Error> {
    let r = &ring.ranking;
    let m = ring.indets.len();
    let others: Vec<usize> = (0..m).filter(|k| !ys.contains(k) && !consts.contains(k)).collect();
    let rest: Vec<usize> = others.iter().copied().filter(|k| !mid.contains(k)).collect();
    // Block indices grow downwards.
    let lowest = |s: &[usize]| s.iter().map(|&k| r.block_of(k)).max();
    let highest = |s: &[usize]| s.iter().map(|&k| r.block_of(k)).min();
    let ok_y = match (highest(ys), lowest(&others)) {
        (Some(y), Some(o)) => y > o,
        _ => true,
    };
    let ok_mid = match (highest(mid), lowest(&rest)) {
        (Some(z), Some(o)) => z >= o,
        _ => true,
    };
    if ok_y && ok_mid {
        Ok(())
    } else {
        Err(Error::RankingMismatch(format!(
            "the ranking must rank {} below the other indeterminates",
            ys.iter().map(|&k| ring.indets[k].as_str()).collect::<Vec<_>>().join(", ")
        )))
    }
}

/// Observability of `x` with respect to `ys` on one simple system.  The
/// ranking must place `ys` strictly below `x` and `x` no higher than the
/// remaining indeterminates.  Indeterminates in `consts` are constants
/// (zero derivatives) and are treated like parameters.
pub fn check_observable(
    ring: &DiffRing,
    sys: &SimpleSystem,
    x: usize,
    ys: &[usize],
    consts: &[usize],
) -> Result<SystemReport, Error> {
    check_blocks(ring, ys, &[x], consts)?;
    let mut rep = SystemReport::new();
    let known: Vec<usize> = ys.iter().chain(consts).copied().collect();
    match find_witness(ring, sys, x, &known) {
        Ok(p) => rep.witnesses.push(Witness { indet: x, poly: p, mode: SearchMode::OneShot }),
        Err(why) => rep.fail(why),
    }
    Ok(rep)
}

/// Flat-output test for `ys` on one simple system: no equation lies in
/// `K{Y}` and every other indeterminate is observable.  Observability is
/// established in rounds: a witness may use indeterminates already shown
/// observable.  Constants in `consts` count as coefficients, so equations
/// involving only them constrain the parameters and not `Y`.
pub fn check_flat_output(ring: &DiffRing, sys: &SimpleSystem, ys: &[usize], consts: &[usize]) -> Result<SystemReport, Error> {
    check_blocks(ring, ys, &[], consts)?;
    let mut rep = SystemReport::new();
    for e in &sys.equations {
        let ks = indets_of(&e.poly);
        if ks.iter().all(|k| ys.contains(k) || consts.contains(k)) && ks.iter().any(|k| ys.contains(k)) {
            rep.fail(format!("{} is a nonzero element of K{{Y}}", crate::sysfile::format_poly(ring, &e.poly, None)));
        }
    }
    let mut known: Vec<usize> = ys.iter().chain(consts).copied().collect();
    let mut todo: Vec<usize> = (0..ring.indets.len()).filter(|k| !known.contains(k)).collect();
    // Lowest-ranked first, so that chains resolve in one sweep when possible.
    todo.reverse();
    loop {
        let before = todo.len();
        let mut i = 0;
        while i < todo.len() {
            let x = todo[i];
            if let Ok(p) = find_witness(ring, sys, x, &known) {
                rep.witnesses.push(Witness { indet: x, poly: p, mode: SearchMode::OneShot });
                known.push(x);
                todo.remove(i);
            } else {
                i += 1;
            }
        }
        if todo.is_empty() || todo.len() == before {
            break;
        }
    }
    for &x in todo.iter().rev() {
        let why = find_witness(ring, sys, x, &known).unwrap_err();
        rep.fail(format!("{} is not observable: {}", ring.indets[x], why));
    }
    Ok(rep)
}

/// Inversion on one simple system: a witness in `K{Y, z}` for every
/// `z` in `zs`.  A witness free of `ys` means `z` is forced to a constant
/// and counts as a failure.
pub fn check_invertible(
    ring: &DiffRing,
    sys: &SimpleSystem,
    ys: &[usize],
    zs: &[usize],
    consts: &[usize],
) -> Result<SystemReport, Error> {
    check_blocks(ring, ys, zs, consts)?;
    let mut rep = SystemReport::new();
    if zs.is_empty() {
        rep.verdict = Verdict::Vacuous;
        return Ok(rep);
    }
    let known: Vec<usize> = ys.iter().chain(consts).copied().collect();
    for &z in zs {
        match inversion_witness(ring, sys, z, ys, &known) {
            Ok(p) => rep.witnesses.push(Witness { indet: z, poly: p, mode: SearchMode::OneShot }),
            Err(why) => rep.fail(why),
        }
    }
    Ok(rep)
}

fn inversion_witness(ring: &DiffRing, sys: &SimpleSystem, z: usize, ys: &[usize], known: &[usize]) -> Result<Poly, String> {
    let p = find_witness(ring, sys, z, known).map_err(|why| format!("{}: {}", ring.indets[z], why))?;
    if !indets_of(&p).iter().any(|k| ys.contains(k)) {
        return Err(format!("{} is forced to a constant by {}", ring.indets[z], crate::sysfile::format_poly(ring, &p, None)));
    }
    Ok(p)
}

/// Retries `z` on one simple system re-decomposed under the ranking
/// `rest >> z >> ys >> consts`.  Succeeds if every piece yields a witness.
fn per_z_witnesses(
    ring: &DiffRing,
    sys: &SimpleSystem,
    z: usize,
    ys: &[usize],
    consts: &[usize],
    opts: &Options,
) -> Result<Result<Vec<Witness>, String>, Error> {
    let old = ring.ranking.block_list();
    let pick = |keep: &dyn Fn(usize) -> bool| -> Vec<Vec<usize>> {
        old.iter().map(|b| b.iter().copied().filter(|&k| keep(k)).collect::<Vec<_>>()).filter(|b| !b.is_empty()).collect()
    };
    let mut blocks = pick(&|k| k != z && !ys.contains(&k) && !consts.contains(&k));
    blocks.push(vec![z]);
    blocks.extend(pick(&|k| ys.contains(&k) && !consts.contains(&k)));
    blocks.extend(pick(&|k| consts.contains(&k)));
    let r = ring.with_ranking(Ranking::blocks(ring.n(), blocks)?)?;
    let d = differential_decompose(&sys.to_system(&r), opts)?;
    let known: Vec<usize> = ys.iter().chain(consts).copied().collect();
    let mut found = Vec::new();
    for (i, piece) in d.systems.iter().enumerate() {
        match inversion_witness(&r, piece, z, ys, &known) {
            Ok(p) => found.push(Witness { indet: z, poly: p, mode: SearchMode::PerZ }),
            Err(why) => return Ok(Err(format!("per-z piece {} of {}: {}", i + 1, d.len(), why))),
        }
    }
    Ok(Ok(found))
}

pub fn observable_report(d: &Decomposition, x: usize, ys: &[usize], consts: &[usize]) -> Result<QueryReport, Error> {
    let systems = d.systems.iter().map(|s| check_observable(&d.ring, s, x, ys, consts)).collect::<Result<_, _>>()?;
    Ok(QueryReport { systems })
}

pub fn flat_report(d: &Decomposition, ys: &[usize], consts: &[usize]) -> Result<QueryReport, Error> {
    let systems = d.systems.iter().map(|s| check_flat_output(&d.ring, s, ys, consts)).collect::<Result<_, _>>()?;
    Ok(QueryReport { systems })
}

pub fn invert(d: &Decomposition, ys: &[usize], zs: &[usize], consts: &[usize]) -> Result<QueryReport, Error> {
    let systems = d.systems.iter().map(|s| check_invertible(&d.ring, s, ys, zs, consts)).collect::<Result<_, _>>()?;
    Ok(QueryReport { systems })
}

/// [`invert`] with a per-output fallback: on systems where the one-shot
/// search misses some `z`, that `z` is retried under its own ranking.
/// Each witness records which search found it.
pub fn invert_per_z(
    d: &Decomposition,
    ys: &[usize],
    zs: &[usize],
    consts: &[usize],
    opts: &Options,
) -> Result<QueryReport, Error> {
    let mut rep = invert(d, ys, zs, consts)?;
    for (sys, r) in d.systems.iter().zip(&mut rep.systems) {
        if r.verdict != Verdict::Fails {
            continue;
        }
        let mut retry = SystemReport::new();
        for &z in zs {
            if let Some(w) = r.witnesses.iter().find(|w| w.indet == z) {
                retry.witnesses.push(w.clone());
                continue;
            }
            match per_z_witnesses(&d.ring, sys, z, ys, consts, opts)? {
                Ok(ws) => retry.witnesses.extend(ws),
                Err(why) => retry.fail(why),
            }
        }
        if retry.verdict == Verdict::Holds {
            *r = retry;
        } else {
            r.reasons.extend(retry.reasons);
        }
    }
    Ok(rep)
}

/// Leading coefficient of `p` in the indeterminate `x` (order zero).
pub fn initial_in(ring: &DiffRing, p: &Poly, x: usize) -> Poly {
    let xv = Var::jet(x, &vec![0; ring.n()]);
    p.coeff(xv, p.degree(xv))
}

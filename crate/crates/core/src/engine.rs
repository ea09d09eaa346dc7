//! Splitting engine shared by the algebraic and differential decompositions.
//!
//! A branch holds a triangular set (at most one condition per leader) and
//! a queue of unprocessed conditions.  Conditions are taken smallest leader
//! first, reduced, and then made simple by case distinctions on initials
//! and principal subresultant coefficients.  Every case distinction forks
//! the branch; forks are solved independently, serially or on a thread
//! pool, and the results are ordered by branch path so that both give the
//! same output.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::diffring::{DiffRing, Reducer, ReductionMode};
use crate::diffthomas::{passivity_check, Passivity};
use crate::error::Error;
use crate::janet::{janet_assign, janet_complete, DiffMonomial};
use crate::polyring::factor::factor;
use crate::polyring::{
    self, content_in, gcd, is_ground, pquo, prem, squarefree_split_data, Poly, Var, VarOrder,
};
use crate::system::{Decomposition, Diagnostics, Equation, Inequation, Options, SimpleSystem, System};

#[derive(Clone, Debug)]
struct Cond {
    poly: Poly,
    eq: bool,
    /// May be factored: input equations, remainders, resultant conditions
    /// and equations changed by reduction.  Conditions on initials and
    /// discriminants are kept whole.
    factorable: bool,
    /// Initial and discriminant are already known to be nonzero.
    simple: bool,
    /// Reduced modulo the current equations of the branch.
    reduced: bool,
}

impl Cond {
    fn new(poly: Poly, eq: bool) -> Cond {
        Cond { poly, eq, factorable: false, simple: false, reduced: false }
    }

    fn derived(poly: Poly, eq: bool) -> Cond {
        Cond { factorable: true, ..Cond::new(poly, eq) }
    }

    fn simple(poly: Poly, eq: bool, factorable: bool) -> Cond {
        Cond { poly, eq, factorable, simple: true, reduced: false }
    }
}

#[derive(Clone, Debug)]
struct Slot {
    poly: Poly,
    eq: bool,
    leader: Var,
    degree: u32,
    /// Added by Janet completion; rebuilt every differential round.
    prolongation: bool,
    factorable: bool,
}

#[derive(Clone, Debug)]
struct Branch {
    tri: BTreeMap<u128, Slot>,
    queue: Vec<Cond>,
    path: Vec<u32>,
    splits: u32,
}

impl Branch {
    fn fork(&mut self) -> Branch {
        self.splits += 1;
        let mut path = self.path.clone();
        path.push(self.splits);
        Branch { tri: self.tri.clone(), queue: self.queue.clone(), path, splits: 0 }
    }

    fn equations(&self) -> Vec<Poly> {
        self.tri.values().filter(|s| s.eq).map(|s| s.poly.clone()).collect()
    }

    fn touch(&mut self) {
        for c in &mut self.queue {
            c.reduced = false;
        }
    }

    /// A new equation may invalidate the conditions above it, so those go
    /// back to the queue.
    fn insert(&mut self, key: u128, slot: Slot) {
        if slot.eq {
            let higher: Vec<u128> = self.tri.range(key + 1..).map(|(k, _)| *k).collect();
            for k in higher {
                let s = self.tri.remove(&k).unwrap();
                if !s.prolongation {
                    self.queue.push(Cond { factorable: s.factorable, ..Cond::new(s.poly, s.eq) });
                }
            }
            self.touch();
        }
        self.tri.insert(key, slot);
    }

    fn remove(&mut self, key: u128) -> Option<Slot> {
        let s = self.tri.remove(&key);
        if s.as_ref().is_some_and(|s| s.eq) {
            self.touch();
        }
        s
    }
}

enum Flow {
    Go,
    Dead,
}

enum Next {
    Cond(Cond),
    Empty,
    Dead,
}

enum Decision {
    Zero,
    NonZero,
    Unknown(Poly),
}

type Found = Vec<(Vec<u32>, SimpleSystem)>;

struct Engine<'a> {
    ring: &'a DiffRing,
    opts: &'a Options,
    differential: bool,
    steps: AtomicUsize,
    dead: AtomicUsize,
}

pub(crate) fn decompose(sys: &System, opts: &Options, differential: bool) -> Result<Decomposition, Error> {
    let start = Instant::now();
    let eng = Engine {
        ring: &sys.ring,
        opts,
        differential,
        steps: AtomicUsize::new(0),
        dead: AtomicUsize::new(0),
    };
    let mut root = Branch { tri: BTreeMap::new(), queue: Vec::new(), path: Vec::new(), splits: 0 };
    root.queue.extend(sys.equations.iter().map(|p| Cond::derived(p.clone(), true)));
    root.queue.extend(sys.inequations.iter().map(|p| Cond::derived(p.clone(), false)));
    let mut found = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?;
        pool.install(|| eng.solve_parallel(root))?
    } else {
        eng.solve_serial(root)?
    };
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Decomposition {
        ring: sys.ring.clone(),
        systems: found.into_iter().map(|(_, s)| s).collect(),
        diagnostics: Diagnostics {
            inconsistent_branches: eng.dead.load(Ordering::Relaxed),
            steps: eng.steps.load(Ordering::Relaxed),
            elapsed_ms: start.elapsed().as_millis(),
        },
    })
}

impl Engine<'_> {
    fn solve_serial(&self, root: Branch) -> Result<Found, Error> {
        let mut stack = vec![root];
        let mut out = Vec::new();
        while let Some(b) = stack.pop() {
            let mut spawned = Vec::new();
            out.extend(self.run(b, &mut spawned)?);
            stack.extend(spawned);
        }
        Ok(out)
    }

    fn solve_parallel(&self, b: Branch) -> Result<Found, Error> {
        let mut spawned = Vec::new();
        let mut out: Found = self.run(b, &mut spawned)?.into_iter().collect();
        let rest: Vec<Found> = spawned.into_par_iter().map(|a| self.solve_parallel(a)).collect::<Result<_, _>>()?;
        out.extend(rest.into_iter().flatten());
        Ok(out)
    }

    fn run(&self, mut b: Branch, spawned: &mut Vec<Branch>) -> Result<Option<(Vec<u32>, SimpleSystem)>, Error> {
        loop {
            let flow = match self.next(&mut b) {
                Next::Cond(c) => self.process(&mut b, c, spawned)?,
                Next::Dead => Flow::Dead,
                Next::Empty => {
                    if self.differential && self.round(&mut b)? {
                        continue;
                    }
                    let sys = self.finish(&b);
                    let mut path = b.path;
                    path.push(0);
                    return Ok(Some((path, sys)));
                }
            };
            if let Flow::Dead = flow {
                self.dead.fetch_add(1, Ordering::Relaxed);
                return Ok(None);
            }
        }
    }

    fn mode(&self) -> ReductionMode<'static> {
        if self.differential {
            ReductionMode::Full
        } else {
            ReductionMode::Algebraic
        }
    }

    fn norm(&self, p: &Poly) -> Poly {
        if p.is_zero() {
            return Poly::zero();
        }
        self.ring.normalize(p)
    }

    fn key(&self, v: Var) -> u128 {
        self.ring.ranking.rank_key(v)
    }

    fn reduce(&self, b: &Branch, p: &Poly) -> Poly {
        let eqs = b.equations();
        if eqs.is_empty() {
            return p.clone();
        }
        Reducer::new(self.ring, &eqs).reduce(p, self.mode()).remainder
    }

    /// Reduces stale queue entries, drops trivial ones and pops the
    /// smallest condition.
    fn next(&self, b: &mut Branch) -> Next {
        if b.queue.iter().any(|c| !c.reduced) {
            let eqs = b.equations();
            let red = Reducer::new(self.ring, &eqs);
            let mut keep = Vec::with_capacity(b.queue.len());
            for mut c in std::mem::take(&mut b.queue) {
                if !c.reduced {
                    let r = self.norm(&red.reduce(&c.poly, self.mode()).remainder);
                    if r != c.poly {
                        c.simple = false;
                        c.factorable |= c.eq;
                        c.poly = r;
                    }
                    c.reduced = true;
                }
                if is_ground(&c.poly) {
                    if c.eq == c.poly.is_zero() {
                        continue;
                    }
                    return Next::Dead;
                }
                keep.push(c);
            }
            b.queue = keep;
        }
        let rank = |c: &Cond| {
            let v = self.ring.leader(&c.poly).unwrap();
            (self.key(v), c.poly.degree(v), !c.eq)
        };
        let Some(i) = (0..b.queue.len()).min_by_key(|&i| rank(&b.queue[i])) else { return Next::Empty };
        Next::Cond(b.queue.swap_remove(i))
    }

    fn decide(&self, b: &Branch, c: &Poly) -> Decision {
        let r = self.norm(&self.reduce(b, c));
        if r.is_zero() {
            Decision::Zero
        } else if is_ground(&r) || self.known_nonzero(b, &r) {
            Decision::NonZero
        } else {
            Decision::Unknown(r)
        }
    }

    /// Whether `r` is a product of factors of inequations of the branch.
    fn known_nonzero(&self, b: &Branch, r: &Poly) -> bool {
        let ineqs = b.tri.values().filter(|s| !s.eq).map(|s| &s.poly);
        let pending = b.queue.iter().filter(|c| !c.eq).map(|c| &c.poly);
        let mut g = r.clone();
        for q in ineqs.chain(pending) {
            loop {
                let h = gcd(&g, q);
                if is_ground(&h) {
                    break;
                }
                g = g.exact_div(&h).expect("gcd must divide");
                if is_ground(&g) {
                    return true;
                }
            }
        }
        is_ground(&g)
    }

    /// Distinct non-ground irreducible factors, highest leader first, so
    /// that the first branch leaves lower-ranked variables unconstrained.
    fn factors(&self, p: &Poly) -> Vec<Poly> {
        let mut fs: Vec<Poly> = factor(p).into_iter().map(|(f, _)| f).filter(|f| !is_ground(f)).map(|f| self.norm(&f)).collect();
        fs.sort_by_cached_key(|f| {
            let v = self.ring.leader(f).unwrap();
            (std::cmp::Reverse(self.key(v)), f.degree(v), f.num_terms())
        });
        fs.dedup();
        fs
    }

    /// An inequation holds iff its content in `v` and its primitive part
    /// do, so the content is split off without branching and goes back to
    /// the queue.
    fn tidy_inequation(&self, b: &mut Branch, q: &Poly, v: Var) -> Poly {
        let cont = content_in(q, v);
        if is_ground(&cont) {
            return self.norm(q);
        }
        b.queue.push(Cond::new(self.norm(&cont), false));
        self.norm(&q.exact_div(&cont).expect("content divides"))
    }

    fn process(&self, b: &mut Branch, mut c: Cond, spawned: &mut Vec<Branch>) -> Result<Flow, Error> {
        let steps = self.steps.fetch_add(1, Ordering::Relaxed) + 1;
        if steps > self.opts.max_steps {
            return Err(Error::StepLimit(self.opts.max_steps));
        }
        let rk = &self.ring.ranking;
        let v = self.ring.leader(&c.poly).unwrap();

        if c.eq && c.factorable && self.opts.factorize {
            c.factorable = false;
            let fs = self.factors(&c.poly);
            if fs.len() > 1 || fs[0] != c.poly {
                for i in 1..fs.len() {
                    let mut alt = b.fork();
                    alt.queue.extend(fs[..i].iter().map(|f| Cond::new(f.clone(), false)));
                    alt.queue.push(Cond::new(fs[i].clone(), true));
                    spawned.push(alt);
                }
                b.queue.push(Cond::new(fs[0].clone(), true));
                return Ok(Flow::Go);
            }
        }

        if !c.eq && !c.simple {
            c.poly = self.tidy_inequation(b, &c.poly, v);
        }

        if !c.simple {
            let init = polyring::initial(&c.poly, rk);
            if !is_ground(&init) {
                let tail = self.norm(&polyring::tail(&c.poly, rk));
                let rest = Cond { poly: tail, simple: false, reduced: false, ..c.clone() };
                match self.decide(b, &init) {
                    Decision::Zero => {
                        b.queue.push(rest);
                        return Ok(Flow::Go);
                    }
                    Decision::NonZero => {}
                    Decision::Unknown(r) => {
                        let mut alt = b.fork();
                        alt.queue.push(Cond::new(r.clone(), true));
                        alt.queue.push(rest);
                        spawned.push(alt);
                        b.queue.push(Cond::new(r, false));
                    }
                }
            }
            if c.poly.degree(v) >= 2 {
                let sq = squarefree_split_data(&c.poly, v);
                let again = Cond { simple: false, reduced: false, ..c.clone() };
                let j = self.first_nonvanishing(b, &sq.chain, &again, spawned, false);
                let j = j.unwrap_or(sq.chain.top);
                if j > 0 {
                    let known = if j == sq.chain.top { init.clone() } else { sq.chain.psc(j) };
                    let part = self.divide_out(&sq.squarefree_part(&c.poly, j), &known);
                    b.queue.push(Cond::simple(part, c.eq, c.factorable));
                    return Ok(Flow::Go);
                }
            }
        }
        Ok(self.combine(b, c, v, spawned))
    }

    /// Index of the first principal subresultant coefficient that does not
    /// vanish on the branch, forking where this is undecided.  The fork
    /// gets `pending` back in its queue.
    fn first_nonvanishing(
        &self,
        b: &mut Branch,
        chain: &polyring::SubresultantChain,
        pending: &Cond,
        spawned: &mut Vec<Branch>,
        factorable: bool,
    ) -> Option<usize> {
        for (j, s) in &chain.regular {
            let psc = s.coeff(chain.var, *j as u32);
            match self.decide(b, &psc) {
                Decision::Zero => continue,
                Decision::NonZero => return Some(*j),
                Decision::Unknown(r) => {
                    let mut alt = b.fork();
                    alt.queue.push(Cond { factorable, ..Cond::new(r.clone(), true) });
                    alt.queue.push(Cond { reduced: false, ..pending.clone() });
                    spawned.push(alt);
                    b.queue.push(Cond::new(r, false));
                    return Some(*j);
                }
            }
        }
        None
    }

    /// Divides `p` by the part of its content in `v` made of factors shared
    /// with `nonzero`, polynomials known not to vanish.
    fn drop_nonzero_content(&self, p: &Poly, v: Var, nonzero: &[Poly]) -> Poly {
        let c = content_in(p, v);
        if is_ground(&c) {
            return p.clone();
        }
        let mut rest = c.clone();
        for q in nonzero {
            loop {
                let h = gcd(&rest, q);
                if is_ground(&h) {
                    break;
                }
                rest = rest.exact_div(&h).expect("gcd must divide");
            }
        }
        let known = c.exact_div(&rest).expect("factor of the content");
        if is_ground(&known) {
            return p.clone();
        }
        self.norm(&p.exact_div(&known).expect("content divides"))
    }

    /// Divides `p` by `k` as often as it goes; `k` is known not to vanish.
    fn divide_out(&self, p: &Poly, k: &Poly) -> Poly {
        let mut p = p.clone();
        if !is_ground(k) {
            while let Some(q) = p.exact_div(k) {
                p = q;
            }
        }
        self.norm(&p)
    }

    fn chain_member(chain: &polyring::SubresultantChain, j: usize) -> Poly {
        chain.regular.iter().find(|(k, _)| *k == j).map(|(_, s)| s.clone()).unwrap()
    }

    /// Inserts a simple condition into the triangular set, combining it
    /// with a condition already present for the same leader.
    fn combine(&self, b: &mut Branch, c: Cond, v: Var, spawned: &mut Vec<Branch>) -> Flow {
        let key = self.key(v);
        let d = c.poly.degree(v);
        let fresh = |poly: Poly, eq: bool, factorable: bool| {
            let degree = poly.degree(v);
            Slot { poly, eq, leader: v, degree, prolongation: false, factorable }
        };
        let Some(old) = b.tri.get(&key).cloned() else {
            b.insert(key, fresh(c.poly, c.eq, c.factorable));
            return Flow::Go;
        };
        let pending = Cond { simple: true, ..c.clone() };
        match (old.eq, c.eq) {
            (true, true) => {
                let (hi, lo) = if old.degree >= d { (&old.poly, &c.poly) } else { (&c.poly, &old.poly) };
                let chain = polyring::euclid_prs(hi, lo, v);
                match self.first_nonvanishing(b, &chain, &pending, spawned, true) {
                    Some(0) => return Flow::Dead,
                    Some(j) => {
                        b.remove(key);
                        let g = self.norm(&Self::chain_member(&chain, j));
                        b.queue.push(Cond::simple(g, true, true));
                    }
                    None => {
                        let lo = lo.clone();
                        b.remove(key);
                        b.insert(key, fresh(lo, true, c.factorable || old.factorable));
                    }
                }
            }
            (true, false) => self.cut(b, &old, &c.poly, key, v, &pending, spawned, old.factorable),
            (false, true) => {
                if d <= old.degree {
                    b.remove(key);
                    b.insert(key, fresh(c.poly.clone(), true, c.factorable));
                    b.queue.push(Cond::new(self.norm(&prem(&old.poly, &c.poly, v)), false));
                } else {
                    let eq = Slot { ..fresh(c.poly.clone(), true, c.factorable) };
                    self.cut(b, &eq, &old.poly, key, v, &pending, spawned, c.factorable);
                }
            }
            (false, false) => {
                let (hi, lo) = if old.degree >= d { (&old.poly, &c.poly) } else { (&c.poly, &old.poly) };
                let chain = polyring::euclid_prs(hi, lo, v);
                let l = match self.first_nonvanishing(b, &chain, &pending, spawned, false) {
                    Some(0) => hi * lo,
                    Some(j) => hi * &pquo(lo, &Self::chain_member(&chain, j), v),
                    None => hi.clone(),
                };
                let l = self.tidy_inequation(b, &l, v);
                b.remove(key);
                b.insert(key, fresh(l, false, false));
            }
        }
        Flow::Go
    }

    /// Removes the common roots of equation `eq` and inequation `q`
    /// (same leader, `deg q < deg eq`); the result replaces the slot.
    #[allow(clippy::too_many_arguments)]
    fn cut(
        &self,
        b: &mut Branch,
        eq: &Slot,
        q: &Poly,
        key: u128,
        v: Var,
        pending: &Cond,
        spawned: &mut Vec<Branch>,
        factorable: bool,
    ) {
        let chain = polyring::euclid_prs(&eq.poly, q, v);
        let j = self.first_nonvanishing(b, &chain, pending, spawned, true);
        let prev = b.remove(key);
        match j {
            // Unchanged equation: nothing above it needs another look.
            Some(0) if prev.is_some_and(|p| p.eq && p.poly == eq.poly) => {
                b.tri.insert(key, eq.clone());
            }
            Some(0) => b.insert(key, eq.clone()),
            // Pseudo-quotients pick up powers of a nonvanishing coefficient.
            Some(j) => {
                let e = pquo(&eq.poly, &Self::chain_member(&chain, j), v);
                let e = self.divide_out(&e, &chain.psc(j));
                b.queue.push(Cond::simple(e, true, factorable));
            }
            None => {
                let e = pquo(&eq.poly, q, v);
                let e = self.divide_out(&e, &polyring::initial(q, &self.ring.ranking));
                b.queue.push(Cond::simple(e, true, factorable));
            }
        }
    }

    fn janet_tables(&self, b: &Branch) -> Result<BTreeMap<u128, Vec<bool>>, Error> {
        let n = self.ring.n();
        let mut out = BTreeMap::new();
        for k in 0..self.ring.indets.len() {
            let leaders: Vec<Var> = b.tri.values().filter(|s| s.eq && s.leader.indet() == Some(k)).map(|s| s.leader).collect();
            if leaders.is_empty() {
                continue;
            }
            let ms: Vec<DiffMonomial> = leaders.iter().map(|v| v.orders(n)).collect();
            let table = janet_assign(&ms)?;
            for (m, adm) in table.monomials.iter().zip(&table.admissible) {
                out.insert(self.key(Var::jet(k, m)), adm.clone());
            }
        }
        Ok(out)
    }

    /// One differential round once the queue is empty.  Returns whether
    /// new conditions were queued.
    fn round(&self, b: &mut Branch) -> Result<bool, Error> {
        let n = self.ring.n();
        let old: Vec<u128> = b.tri.iter().filter(|(_, s)| s.prolongation).map(|(k, _)| *k).collect();
        for k in old {
            b.tri.remove(&k);
        }

        // Autoreduction: no leader may be a proper derivative of another.
        let eqs: Vec<(u128, Var)> = b.tri.iter().filter(|(_, s)| s.eq).map(|(k, s)| (*k, s.leader)).collect();
        for &(k, v) in &eqs {
            if eqs.iter().any(|&(k2, w)| k2 != k && v.quotient(w, n).is_some()) {
                let s = b.remove(k).unwrap();
                b.queue.push(Cond { factorable: s.factorable, ..Cond::new(s.poly, true) });
                return Ok(true);
            }
        }

        // Janet completion of the leaders of each indeterminate.
        let mut displaced = false;
        for k in 0..self.ring.indets.len() {
            let ms: Vec<DiffMonomial> =
                b.tri.values().filter(|s| s.eq && s.leader.indet() == Some(k)).map(|s| s.leader.orders(n)).collect();
            if ms.is_empty() {
                continue;
            }
            let (_, added) = janet_complete(&ms)?;
            for pr in added {
                let parent = &b.tri[&self.key(Var::jet(k, &pr.parent))];
                let q = self.norm(&self.ring.differentiate(&parent.poly, pr.derivation));
                let w = Var::jet(k, &pr.monomial);
                debug_assert_eq!(self.ring.leader(&q), Some(w));
                let key = self.key(w);
                if let Some(s) = b.tri.remove(&key) {
                    b.queue.push(Cond::new(s.poly, false));
                    displaced = true;
                }
                b.tri.insert(key, Slot { poly: q, eq: true, leader: w, degree: 1, prolongation: true, factorable: false });
            }
        }
        if displaced {
            return Ok(true);
        }

        // Passivity: Janet-reduce the non-admissible prolongations.
        let tables = self.janet_tables(b)?;
        let slots: Vec<&Slot> = b.tri.values().filter(|s| s.eq).collect();
        let polys: Vec<Poly> = slots.iter().map(|s| s.poly.clone()).collect();
        let adm: Vec<Vec<bool>> = slots.iter().map(|s| tables[&self.key(s.leader)].clone()).collect();
        let mut cands: Vec<(u128, usize, usize)> = Vec::new();
        for (i, s) in slots.iter().enumerate() {
            for (j, &ok) in adm[i].iter().enumerate() {
                if !ok {
                    cands.push((self.key(s.leader.derive(j)), i, j));
                }
            }
        }
        cands.sort();
        let red = Reducer::new(self.ring, &polys);
        for (_, i, j) in cands {
            let q = self.ring.differentiate(&polys[i], j);
            let r = red.reduce(&q, ReductionMode::Janet(&adm)).remainder;
            if !r.is_zero() {
                b.queue.push(Cond::derived(self.norm(&r), true));
                return Ok(true);
            }
        }

        // Inequations must be fully reduced.
        let ineqs: Vec<(u128, Poly)> = b.tri.iter().filter(|(_, s)| !s.eq).map(|(k, s)| (*k, s.poly.clone())).collect();
        for (k, q) in ineqs {
            let r = self.norm(&red.reduce(&q, ReductionMode::Full).remainder);
            if r != q {
                b.remove(k);
                b.queue.push(Cond::new(r, false));
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Reduces coefficients below the leaders and reads off the simple
    /// system.
    fn finish(&self, b: &Branch) -> SimpleSystem {
        let polys = b.equations();
        let red = Reducer::new(self.ring, &polys);
        let tables = if self.differential { self.janet_tables(b).unwrap_or_default() } else { BTreeMap::new() };
        let mut sys = SimpleSystem::default();
        for (k, s) in b.tri.iter().rev() {
            if s.eq {
                let p = self.norm(&red.reduce_below(&s.poly, self.mode(), s.leader).remainder);
                let admissible = tables.get(k).cloned().unwrap_or_default();
                sys.equations.push(Equation { poly: p, leader: s.leader, admissible });
            } else {
                let p = self.norm(&red.reduce(&s.poly, self.mode()).remainder);
                sys.inequations.push(Inequation { poly: p, leader: s.leader });
            }
        }
        self.strip_known_content(sys)
    }

    /// Divides each equation by the factors of its content (in the leader)
    /// that divide some inequation.  In the differential case the result
    /// is kept only if it is still passive.
    fn strip_known_content(&self, sys: SimpleSystem) -> SimpleSystem {
        let ineqs = sys.inequation_polys();
        let mut out = sys.clone();
        let mut changed = false;
        for e in &mut out.equations {
            let p = self.drop_nonzero_content(&e.poly, e.leader, &ineqs);
            if p != e.poly {
                e.poly = p;
                changed = true;
            }
        }
        if changed && self.differential && !matches!(passivity_check(self.ring, &out.equation_polys()), Ok(Passivity::Passive)) {
            return sys;
        }
        out
    }
}



//! Differential polynomial rings, rankings, differentiation and
//! differential pseudo-reduction.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::error::Error;
use crate::polyring::{self, Poly, Var, VarOrder, MAX_DERIVATIONS, MAX_INDETERMINATES};

/// A ranking on the jets `theta u_k`.
///
/// Indeterminates are partitioned into blocks, the first block being the
/// highest.  Jets in different blocks compare by block; otherwise by the
/// degree-reverse-lexicographic order on the derivative multi-index, and
/// finally by the position of the indeterminate in the declared order.
/// A single block gives the degrevlex (orderly) ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    position: Vec<usize>,
}

impl Ranking {
    /// Block ranking over `n` derivations; `blocks` lists indeterminate
    /// indices, highest block first.
    pub fn blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Ranking, Error> {
        if n > MAX_DERIVATIONS {
            return Err(Error::Invalid(format!("at most {} independent variables are supported", MAX_DERIVATIONS)));
        }
        let m: usize = blocks.iter().map(|b| b.len()).sum();
        if m > MAX_INDETERMINATES {
            return Err(Error::Invalid("too many indeterminates".into()));
        }
        let mut block_of = vec![usize::MAX; m];
        let mut position = vec![usize::MAX; m];
        let mut pos = 0;
        for (bi, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Invalid("empty block in ranking".into()));
            }
            for &k in b {
                if k >= m || block_of[k] != usize::MAX {
                    return Err(Error::Invalid("ranking blocks must partition the indeterminates".into()));
                }
                block_of[k] = bi;
                position[k] = pos;
                pos += 1;
            }
        }
        Ok(Ranking { n, blocks, block_of, position })
    }

    /// Degrevlex ranking with the indeterminates ordered as in `order`.
    pub fn degrevlex(n: usize, order: Vec<usize>) -> Result<Ranking, Error> {
        Ranking::blocks(n, vec![order])
    }

    pub fn num_derivations(&self) -> usize {
        self.n
    }

    pub fn num_indets(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_list(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, indet: usize) -> usize {
        self.block_of[indet]
    }

    pub fn is_block_ranking(&self) -> bool {
        self.blocks.len() > 1
    }

    /// Order between two jets (ground symbols rank below every jet).
    pub fn compare(&self, a: Var, b: Var) -> Ordering {
        self.rank_key(a).cmp(&self.rank_key(b))
    }

    /// Order of derivative multi-indices (degree, then reverse lexicographic).
    pub fn compare_theta(a: &[u32], b: &[u32]) -> Ordering {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }
}

impl VarOrder for Ranking {
    fn rank_key(&self, v: Var) -> u128 {
        if v.is_ground() {
            return v.raw() as u128;
        }
        let k = v.indet().unwrap();
        let mut key: u128 = 1;
        key = (key << 8) | (self.blocks.len() - 1 - self.block_of[k]) as u128;
        key = (key << 16) | v.total_order() as u128;
        for i in (0..MAX_DERIVATIONS).rev() {
            let o = if i < self.n { 255 - v.order(i) } else { 0 };
            key = (key << 8) | o as u128;
        }
        (key << 8) | (255 - self.position[k]) as u128
    }
}

/// Names and ranking of a differential polynomial ring
/// `K{u_1, ..., u_m}` with derivations `d/dx_1, ..., d/dx_n` over
/// `K = Q(params)(x_1, ..., x_n)`.  With `n = 0` it is an ordinary
/// polynomial ring in the `u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRing {
    pub params: Vec<String>,
    pub indeps: Vec<String>,
    pub indets: Vec<String>,
    pub ranking: Ranking,
}

impl DiffRing {
    pub fn new(params: Vec<String>, indeps: Vec<String>, indets: Vec<String>, ranking: Ranking) -> Result<DiffRing, Error> {
        if ranking.num_indets() != indets.len() || ranking.num_derivations() != indeps.len() {
            return Err(Error::Invalid("ranking does not match the declared symbols".into()));
        }
        Ok(DiffRing { params, indeps, indets, ranking })
    }

    /// Polynomial ring with variables ordered `vars[0] > vars[1] > ...`.
    pub fn algebraic(vars: &[&str], params: &[&str]) -> DiffRing {
        let ranking = Ranking::degrevlex(0, (0..vars.len()).collect()).expect("valid ranking");
        DiffRing {
            params: params.iter().map(|s| s.to_string()).collect(),
            indeps: Vec::new(),
            indets: vars.iter().map(|s| s.to_string()).collect(),
            ranking,
        }
    }

    pub fn n(&self) -> usize {
        self.ranking.num_derivations()
    }

    pub fn with_ranking(&self, ranking: Ranking) -> Result<DiffRing, Error> {
        DiffRing::new(self.params.clone(), self.indeps.clone(), self.indets.clone(), ranking)
    }

    pub fn indet_index(&self, name: &str) -> Option<usize> {
        self.indets.iter().position(|s| s == name)
    }

    /// The jet of indeterminate `name` with multi-index `orders`.
    pub fn jet(&self, name: &str, orders: &[u32]) -> Var {
        let k = self.indet_index(name).unwrap_or_else(|| panic!("unknown indeterminate {}", name));
        Var::jet(k, orders)
    }

    pub fn var_name(&self, v: Var) -> String {
        if v.is_param() {
            return self.params[v.ground_index().unwrap()].clone();
        }
        if v.is_indep() {
            return self.indeps[v.ground_index().unwrap()].clone();
        }
        let k = v.indet().unwrap();
        let mut s = self.indets[k].clone();
        let orders = v.orders(self.n());
        if orders.iter().any(|&o| o > 0) {
            let mut parts = Vec::new();
            for (j, &o) in orders.iter().enumerate() {
                for _ in 0..o {
                    parts.push(self.indeps[j].clone());
                }
            }
            let _ = write!(s, "[{}]", parts.join(","));
        }
        s
    }

    /// Total derivative `d/dx_j`.
    pub fn differentiate(&self, p: &Poly, j: usize) -> Poly {
        assert!(j < self.n(), "derivation index out of range");
        let xj = Var::indep(j);
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            for &(v, e) in m.pairs() {
                let dv = if v.is_jet() {
                    Some(v.derive(j))
                } else if v == xj {
                    None
                } else {
                    continue;
                };
                let (_, rest) = m.split_off(v);
                let mut mono = rest.with_var_pow(v, e - 1);
                if let Some(w) = dv {
                    mono = mono.with_var_pow(w, 1);
                }
                terms.push((mono, c * polyring::Int::from(e)));
            }
        }
        Poly::from_terms(terms)
    }

    /// Applies the derivative operator with multi-index `theta`.
    pub fn apply_theta(&self, p: &Poly, theta: &[u32]) -> Poly {
        let mut q = p.clone();
        for (j, &k) in theta.iter().enumerate() {
            for _ in 0..k {
                q = self.differentiate(&q, j);
            }
        }
        q
    }

    pub fn leader(&self, p: &Poly) -> Option<Var> {
        polyring::leader(p, &self.ranking)
    }

    pub fn normalize(&self, p: &Poly) -> Poly {
        polyring::normalize(p, &self.ranking)
    }

    /// Whether `p` only involves jets of indeterminates from `keep`.
    pub fn involves_only(&self, p: &Poly, keep: impl Fn(usize) -> bool) -> bool {
        p.vars().into_iter().all(|v| v.is_ground() || keep(v.indet().unwrap()))
    }
}

/// Which derivatives of the reducing equations may be used.
#[derive(Clone, Copy, Debug)]
pub enum ReductionMode<'a> {
    /// Only the equations themselves, in their leaders.
    Algebraic,
    /// Every derivative of every equation.
    Full,
    /// Derivatives by admissible derivations only (one flag vector per
    /// equation).
    Janet(&'a [Vec<bool>]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplierKind {
    Initial,
    Separant,
}

/// One factor `kind(G[equation])^power` of the reduction multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub equation: usize,
    pub kind: MultiplierKind,
    pub power: u32,
}

/// `theta(G[equation])` multiplied by `cofactor`.
#[derive(Clone, Debug)]
pub struct Cofactor {
    pub equation: usize,
    pub theta: Vec<u32>,
    pub cofactor: Poly,
}

/// Result of a differential pseudo-reduction: `m * p - remainder` lies in
/// the differential ideal generated by the equations, where `m` is the
/// product of the recorded multipliers.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: Poly,
    pub multipliers: Vec<Multiplier>,
}

impl Reduction {
    /// Expands the multiplier record into a polynomial.
    pub fn multiplier(&self, ring: &DiffRing, eqs: &[Poly]) -> Poly {
        let mut m = Poly::one();
        for f in &self.multipliers {
            let g = &eqs[f.equation];
            let base = match f.kind {
                MultiplierKind::Initial => polyring::initial(g, &ring.ranking),
                MultiplierKind::Separant => polyring::separant(g, &ring.ranking),
            };
            m = &m * &base.pow(f.power);
        }
        m
    }
}

struct Entry {
    poly: Poly,
    leader: Var,
    degree: u32,
}

/// Reduction context over a fixed list of equations.
pub struct Reducer<'a> {
    ring: &'a DiffRing,
    eqs: Vec<Entry>,
    by_indet: FxHashMap<usize, Vec<usize>>,
    prolongations: RefCell<FxHashMap<(usize, Vec<u32>), Poly>>,
}

impl<'a> Reducer<'a> {
    pub fn new(ring: &'a DiffRing, eqs: &[Poly]) -> Reducer<'a> {
        let mut entries = Vec::with_capacity(eqs.len());
        let mut by_indet: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for (i, g) in eqs.iter().enumerate() {
            let leader = ring.leader(g).expect("reducing equations must not be ground");
            by_indet.entry(leader.indet().unwrap()).or_default().push(i);
            entries.push(Entry { poly: g.clone(), leader, degree: g.degree(leader) });
        }
        Reducer { ring, eqs: entries, by_indet, prolongations: RefCell::new(FxHashMap::default()) }
    }

    fn prolongation(&self, i: usize, theta: &[u32]) -> Poly {
        let key = (i, theta.to_vec());
        if let Some(p) = self.prolongations.borrow().get(&key) {
            return p.clone();
        }
        let p = self.ring.apply_theta(&self.eqs[i].poly, theta);
        self.prolongations.borrow_mut().insert(key, p.clone());
        p
    }

    /// Finds the equation and derivative that reduces jet `w` of `r`.
    fn find(&self, r: &Poly, w: Var, mode: ReductionMode<'_>) -> Option<(usize, Vec<u32>)> {
        let n = self.ring.n();
        let cands = self.by_indet.get(&w.indet()?)?;
        for &i in cands {
            let e = &self.eqs[i];
            let Some(theta) = w.quotient(e.leader, n) else { continue };
            let proper = theta.iter().any(|&k| k > 0);
            if !proper {
                if r.degree(w) >= e.degree {
                    return Some((i, theta));
                }
                continue;
            }
            let allowed = match mode {
                ReductionMode::Algebraic => false,
                ReductionMode::Full => true,
                ReductionMode::Janet(adm) => theta.iter().zip(&adm[i]).all(|(&k, &ok)| k == 0 || ok),
            };
            if allowed {
                return Some((i, theta));
            }
        }
        None
    }

    pub fn reduce(&self, p: &Poly, mode: ReductionMode<'_>) -> Reduction {
        self.reduce_impl(p, mode, None, None)
    }

    /// Reduction that only touches jets ranked strictly below `cap`.
    pub fn reduce_below(&self, p: &Poly, mode: ReductionMode<'_>, cap: Var) -> Reduction {
        self.reduce_impl(p, mode, None, Some(self.ring.ranking.rank_key(cap)))
    }

    /// Reduction that also records the ideal cofactors, so that
    /// `m * p - remainder = sum cofactor * theta(G[equation])`.
    pub fn reduce_with_cofactors(&self, p: &Poly, mode: ReductionMode<'_>) -> (Reduction, Vec<Cofactor>) {
        let mut cof = Vec::new();
        let r = self.reduce_impl(p, mode, Some(&mut cof), None);
        (r, cof)
    }

    fn reduce_impl(
        &self,
        p: &Poly,
        mode: ReductionMode<'_>,
        mut cof: Option<&mut Vec<Cofactor>>,
        cap: Option<u128>,
    ) -> Reduction {
        let mut r = p.clone();
        let mut mults: Vec<Multiplier> = Vec::new();
        'outer: loop {
            if r.is_zero() {
                break;
            }
            for w in polyring::ranked_jets(&r, &self.ring.ranking) {
                if cap.is_some_and(|c| self.ring.ranking.rank_key(w) >= c) {
                    continue;
                }
                let Some((i, theta)) = self.find(&r, w, mode) else { continue };
                let proper = theta.iter().any(|&k| k > 0);
                let h = if proper { self.prolongation(i, &theta) } else { self.eqs[i].poly.clone() };
                let pd = polyring::pseudo_divide(&r, &h, w);
                if let Some(cs) = cof.as_deref_mut() {
                    for c in cs.iter_mut() {
                        c.cofactor = &c.cofactor * &pd.c1;
                    }
                    cs.push(Cofactor { equation: i, theta: theta.clone(), cofactor: pd.c2.clone() });
                }
                if pd.exponent > 0 {
                    let kind = if proper { MultiplierKind::Separant } else { MultiplierKind::Initial };
                    match mults.iter_mut().find(|m| m.equation == i && m.kind == kind) {
                        Some(m) => m.power += pd.exponent,
                        None => mults.push(Multiplier { equation: i, kind, power: pd.exponent }),
                    }
                }
                r = pd.remainder;
                continue 'outer;
            }
            break;
        }
        Reduction { remainder: r, multipliers: mults }
    }
}

/// Full differential reduction of `p` modulo `eqs` and all their derivatives.
pub fn diff_reduce(ring: &DiffRing, p: &Poly, eqs: &[Poly]) -> Reduction {
    Reducer::new(ring, eqs).reduce(p, ReductionMode::Full)
}

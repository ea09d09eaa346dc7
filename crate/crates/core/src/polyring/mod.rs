//! Multivariate polynomials over the ground field `Q(params)(indep vars)`.
//!
//! Coefficients are integers; parameters and independent variables are
//! ordinary variables of the [`Poly`] type but count as ground elements.
//! Every nonzero ground polynomial is a unit and is never split on.

pub mod factor;
pub mod gcd;
mod poly;
pub mod prs;
mod var;
mod zmod;

pub use gcd::{content_in, gcd, lcm, primitive_part_in, squarefree_decomposition, squarefree_part};
pub use poly::{Int, Monomial, Poly};
pub use prs::{
    discriminant, euclid_prs, pquo, prem, pseudo_divide, resultant, squarefree_split_data, PseudoDivision,
    SquarefreeSplit, SubresultantChain,
};
pub use var::{Var, MAX_DERIVATIONS, MAX_INDETERMINATES};

/// A total ordering on jet variables.
///
/// `rank_key` must be injective on jets, and every ground symbol must map
/// below every jet.
pub trait VarOrder {
    fn rank_key(&self, v: Var) -> u128;
}

/// True when the polynomial involves no jet variable.
pub fn is_ground(p: &Poly) -> bool {
    p.terms().iter().all(|(m, _)| m.vars().all(Var::is_ground))
}

/// Highest-ranked jet occurring in `p`.
pub fn leader<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Option<Var> {
    let mut best: Option<(u128, Var)> = None;
    for (m, _) in p.terms() {
        for v in m.vars() {
            if v.is_jet() {
                let k = ord.rank_key(v);
                if best.is_none_or(|(b, _)| k > b) {
                    best = Some((k, v));
                }
            }
        }
    }
    best.map(|b| b.1)
}

/// Jets of `p` sorted from highest to lowest rank.
pub fn ranked_jets<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Vec<Var> {
    let mut vs: Vec<Var> = p.vars().into_iter().filter(|v| v.is_jet()).collect();
    vs.sort_by_key(|&v| std::cmp::Reverse(ord.rank_key(v)));
    vs
}

/// Coefficient of the highest power of the leader.
pub fn initial<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Poly {
    match leader(p, ord) {
        Some(v) => p.coeff(v, p.degree(v)),
        None => p.clone(),
    }
}

/// `p` minus its leading part `init * ld^deg`.
pub fn tail<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Poly {
    match leader(p, ord) {
        Some(v) => {
            let d = p.degree(v);
            let lead = &p.coeff(v, d) * &Poly::var_pow(v, d);
            p - &lead
        }
        None => Poly::zero(),
    }
}

/// Partial derivative with respect to the leader.
pub fn separant<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Poly {
    match leader(p, ord) {
        Some(v) => p.derivative(v),
        None => Poly::zero(),
    }
}

/// Sign of the coefficient of the leading term when terms are compared
/// recursively by leader degree, falling back to the monomial order on
/// ground terms.
pub fn ranked_sign<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> i32 {
    let mut q = p.clone();
    while let Some(v) = leader(&q, ord) {
        q = q.coeff(v, q.degree(v));
    }
    q.lead_sign()
}

/// Gcd of the ground coefficients of `p` (its content over the ground ring).
pub fn ground_content(p: &Poly) -> Poly {
    if p.terms().iter().all(|(m, _)| m.vars().all(Var::is_jet)) {
        return Poly::constant(p.int_content());
    }
    gcd::content_wrt(p, Var::is_jet)
}

/// Canonical representative of `p` up to ground units: content-free over
/// `Z[ground]` with positive ranked sign.  Nonzero ground polynomials
/// normalise to `1`.
pub fn normalize<O: VarOrder + ?Sized>(p: &Poly, ord: &O) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    if is_ground(p) {
        return Poly::one();
    }
    let c = ground_content(p);
    let q = if c.is_one() { p.clone() } else { p.exact_div(&c).expect("content does not divide") };
    if ranked_sign(&q, ord) < 0 {
        -q
    } else {
        q
    }
}

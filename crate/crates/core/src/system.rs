//! Input systems, simple systems and decompositions.

use crate::diffring::DiffRing;
use crate::polyring::{Poly, Var};

/// A finite system of equations `p = 0` and inequations `q != 0`.
#[derive(Clone, Debug)]
pub struct System {
    pub ring: DiffRing,
    pub equations: Vec<Poly>,
    pub inequations: Vec<Poly>,
}

impl System {
    pub fn new(ring: DiffRing, equations: Vec<Poly>, inequations: Vec<Poly>) -> System {
        System { ring, equations, inequations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub poly: Poly,
    pub leader: Var,
    /// Janet multipliers (one flag per derivation); empty for algebraic
    /// systems.
    pub admissible: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequation {
    pub poly: Poly,
    pub leader: Var,
}

/// A simple system; equations and inequations are sorted by decreasing
/// leader.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleSystem {
    pub equations: Vec<Equation>,
    pub inequations: Vec<Inequation>,
}

impl SimpleSystem {
    pub fn equation_polys(&self) -> Vec<Poly> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn inequation_polys(&self) -> Vec<Poly> {
        self.inequations.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn equation_with_leader(&self, v: Var) -> Option<&Equation> {
        self.equations.iter().find(|e| e.leader == v)
    }

    /// The system as an ordinary input system over `ring`.
    pub fn to_system(&self, ring: &DiffRing) -> System {
        System::new(ring.clone(), self.equation_polys(), self.inequation_polys())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Branches that ended in an inconsistency.
    pub inconsistent_branches: usize,
    /// Conditions processed over all branches.
    pub steps: usize,
    pub elapsed_ms: u128,
}

/// A Thomas decomposition: disjoint simple systems whose solution sets
/// partition the solution set of the input.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ring: DiffRing,
    pub systems: Vec<SimpleSystem>,
    pub diagnostics: Diagnostics,
}

impl Decomposition {
    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Factor new equations and split on their factors.
    pub factorize: bool,
    /// Worker threads for independent branches (`1` runs serially).
    pub threads: usize,
    /// Upper bound on processed conditions over the whole run.
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options { factorize: false, threads: 1, max_steps: 200_000 }
    }
}

impl Options {
    pub fn factorized() -> Options {
        Options { factorize: true, ..Options::default() }
    }
}

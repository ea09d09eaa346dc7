use std::fmt;

/// Maximum number of independent variables (derivations) supported by [`Var`].
pub const MAX_DERIVATIONS: usize = 7;

/// Maximum number of differential indeterminates.
pub const MAX_INDETERMINATES: usize = 254;

const TAG_SHIFT: u32 = 56;
const INDEP_FLAG: u64 = 1 << 55;
const ORDER_MASK: u64 = (1 << TAG_SHIFT) - 1;

/// A polynomial variable, packed into a single word.
///
/// The top byte distinguishes ground symbols (tag 0) from jet variables
/// (tag = indeterminate index + 1).  A jet stores one order byte per
/// derivation.  Ground symbols are either parameters or independent
/// variables; both belong to the coefficient field and never become leaders.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u64);

impl Var {
    pub fn param(index: usize) -> Var {
        assert!(index < (1 << 32), "parameter index out of range");
        Var(index as u64)
    }

    pub fn indep(index: usize) -> Var {
        assert!(index < MAX_DERIVATIONS, "too many independent variables");
        Var(INDEP_FLAG | index as u64)
    }

    /// The jet `u_k` differentiated `orders[j]` times by the j-th derivation.
    pub fn jet(indet: usize, orders: &[u32]) -> Var {
        assert!(indet < MAX_INDETERMINATES, "too many indeterminates");
        assert!(orders.len() <= MAX_DERIVATIONS, "too many derivations");
        let mut bits = ((indet as u64) + 1) << TAG_SHIFT;
        for (j, &o) in orders.iter().enumerate() {
            assert!(o < 256, "derivative order exceeds 255");
            bits |= (o as u64) << (8 * j);
        }
        Var(bits)
    }

    /// The jet of order zero, i.e. the indeterminate itself.
    pub fn indet_var(indet: usize) -> Var {
        Var::jet(indet, &[])
    }

    pub fn is_ground(self) -> bool {
        self.0 >> TAG_SHIFT == 0
    }

    pub fn is_jet(self) -> bool {
        !self.is_ground()
    }

    pub fn is_param(self) -> bool {
        self.is_ground() && self.0 & INDEP_FLAG == 0
    }

    pub fn is_indep(self) -> bool {
        self.is_ground() && self.0 & INDEP_FLAG != 0
    }

    /// Parameter index, or independent-variable index, for ground symbols.
    pub fn ground_index(self) -> Option<usize> {
        if self.is_ground() {
            Some((self.0 & !INDEP_FLAG) as usize)
        } else {
            None
        }
    }

    pub fn indet(self) -> Option<usize> {
        let tag = self.0 >> TAG_SHIFT;
        if tag == 0 {
            None
        } else {
            Some(tag as usize - 1)
        }
    }

    pub fn order(self, j: usize) -> u32 {
        if self.is_ground() {
            0
        } else {
            ((self.0 >> (8 * j)) & 0xff) as u32
        }
    }

    pub fn orders(self, n: usize) -> Vec<u32> {
        (0..n).map(|j| self.order(j)).collect()
    }

    pub fn total_order(self) -> u32 {
        if self.is_ground() {
            return 0;
        }
        (0..MAX_DERIVATIONS).map(|j| self.order(j)).sum()
    }

    /// The jet differentiated once more by derivation `j`.
    pub fn derive(self, j: usize) -> Var {
        assert!(self.is_jet(), "only jets can be prolonged");
        assert!(self.order(j) < 255, "derivative order exceeds 255");
        Var(self.0 + (1u64 << (8 * j)))
    }

    /// The jet with the multi-index shifted by `by` (componentwise sum).
    pub fn derive_by(self, by: &[u32]) -> Var {
        let mut v = self;
        for (j, &k) in by.iter().enumerate() {
            for _ in 0..k {
                v = v.derive(j);
            }
        }
        v
    }

    /// Returns the multi-index `e` with `self = e * other` when `self` is a
    /// derivative of `other` (same indeterminate, componentwise larger).
    pub fn quotient(self, other: Var, n: usize) -> Option<Vec<u32>> {
        if self.is_ground() || self.indet() != other.indet() {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let (a, b) = (self.order(j), other.order(j));
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        if (self.0 & ORDER_MASK) >> (8 * n) != 0 {
            return None;
        }
        Some(out)
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_param() {
            write!(f, "p{}", self.0)
        } else if self.is_indep() {
            write!(f, "x{}", self.0 & !INDEP_FLAG)
        } else {
            let k = self.indet().unwrap();
            let ord: Vec<u32> = (0..MAX_DERIVATIONS).map(|j| self.order(j)).collect();
            let last = ord.iter().rposition(|&o| o != 0).map_or(0, |p| p + 1);
            if last == 0 {
                write!(f, "u{}", k)
            } else {
                write!(f, "u{}{:?}", k, &ord[..last])
            }
        }
    }
}

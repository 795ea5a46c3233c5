//! Bi-operator topological spaces and the B-open calculus.
//!
//! `S` is B-open when `S ⊆ T₁(S) ∪ T₂(S)`; further operators `T₃, …, Tₙ`
//! only enter through [`BiOperatorSpace::is_chain_open`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::{NamedOperator, Operator};
use crate::subset::Subset;
use crate::topology::Topology;

/// Named operators are materialized into tables from this many points on.
pub const MEMO_THRESHOLD: usize = 6;

/// Reading of "X is not a union of two nonempty B-open sets".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConnectednessMode {
    /// Two nonempty proper B-open sets covering X, overlap allowed.
    #[default]
    Literal,
    /// Additionally the two sets must be disjoint.
    Disjoint,
}

#[derive(Clone, Debug)]
pub struct BiOperatorSpace {
    topology: Arc<Topology>,
    operators: Vec<Operator>,
    evaluators: Vec<Operator>,
    b_open: Vec<u64>,
}

impl BiOperatorSpace {
    /// Validates that there are at least two operators, each associated with the topology.
    pub fn new(topology: impl Into<Arc<Topology>>, operators: Vec<Operator>) -> Result<Self> {
        let topology = topology.into();
        if operators.len() < 2 {
            return Err(Error::TooFewOperators(operators.len()));
        }
        for (i, op) in operators.iter().enumerate() {
            if let Operator::Table(table) = op {
                if table.points() != topology.len() {
                    return Err(Error::DomainMismatch(format!(
                        "operator T{} is over {} points, topology over {}",
                        i + 1,
                        table.points(),
                        topology.len()
                    )));
                }
            }
            if let Some(u) = topology
                .opens()
                .iter()
                .find(|&u| !u.is_subset_of(op.apply(&topology, u)))
            {
                return Err(Error::NotAssociated {
                    index: i + 1,
                    open: topology.format(u),
                });
            }
        }
        let evaluators: Vec<Operator> = if topology.len() >= MEMO_THRESHOLD {
            operators
                .iter()
                .map(|op| Operator::Table(op.to_table(&topology)))
                .collect()
        } else {
            operators.clone()
        };
        let size = 1usize << topology.len();
        let mut b_open = vec![0u64; size.div_ceil(64)];
        for s in topology.ground().subsets() {
            let cover = evaluators[0].apply(&topology, s) | evaluators[1].apply(&topology, s);
            if s.is_subset_of(cover) {
                let i = s.bits() as usize;
                b_open[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(BiOperatorSpace {
            topology,
            operators,
            evaluators,
            b_open,
        })
    }

    /// `T₁ = Int∘Cl`, `T₂ = Cl∘Int`, under which B-open coincides with b-open.
    pub fn canonical(topology: impl Into<Arc<Topology>>) -> Self {
        BiOperatorSpace::new(topology, vec![Operator::INT_CL, Operator::CL_INT])
            .expect("canonical operators are associated with every topology")
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn topology_arc(&self) -> &Arc<Topology> {
        &self.topology
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn full(&self) -> Subset {
        self.topology.full()
    }

    pub fn len(&self) -> usize {
        self.topology.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether every operator is one of the named composites.
    pub fn has_named_operators(&self) -> bool {
        self.operators.iter().all(Operator::is_named)
    }

    pub fn named_operators(&self) -> Option<Vec<NamedOperator>> {
        self.operators
            .iter()
            .map(|op| match op {
                Operator::Named(n) => Some(*n),
                Operator::Table(_) => None,
            })
            .collect()
    }

    fn check_index(&self, index: usize) -> Result<usize> {
        if index == 0 || index > self.operators.len() {
            Err(Error::IndexOutOfRange {
                index,
                len: self.operators.len(),
            })
        } else {
            Ok(index - 1)
        }
    }

    fn eval(&self, i: usize, s: Subset) -> Subset {
        self.evaluators[i].apply(&self.topology, s)
    }

    /// `T_index(s)`, 1-based.
    pub fn apply(&self, index: usize, s: Subset) -> Result<Subset> {
        let i = self.check_index(index)?;
        Ok(self.eval(i, s))
    }

    /// Every `x ∈ S` has an open `U` with `x ∈ U ⊆ T(U) ⊆ S`.
    ///
    /// Scans all open sets, so it stays correct for non-monotone tables.
    pub fn is_t_open(&self, index: usize, s: Subset) -> Result<bool> {
        let i = self.check_index(index)?;
        let mut covered = Subset::EMPTY;
        for u in self.topology.opens().iter() {
            if u.is_subset_of(s) {
                let tu = self.eval(i, u);
                if u.is_subset_of(tu) && tu.is_subset_of(s) {
                    covered = covered | u;
                }
            }
        }
        Ok(s.is_subset_of(covered))
    }

    /// `S ⊆ T(S)`.
    pub fn is_t_star_open(&self, index: usize, s: Subset) -> Result<bool> {
        let i = self.check_index(index)?;
        Ok(s.is_subset_of(self.eval(i, s)))
    }

    pub fn is_b_open(&self, s: Subset) -> bool {
        let i = s.bits() as usize;
        self.b_open[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_b_closed(&self, s: Subset) -> bool {
        self.is_b_open(self.topology.complement(s))
    }

    /// `S ⊆ T₁(S) ∪ … ∪ T_k(S)`.
    pub fn is_chain_open(&self, k: usize, s: Subset) -> Result<bool> {
        self.check_index(k)?;
        let cover = (0..k).fold(Subset::EMPTY, |acc, i| acc | self.eval(i, s));
        Ok(s.is_subset_of(cover))
    }

    pub fn b_open_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.topology.ground().subsets().filter(|&s| self.is_b_open(s))
    }

    pub fn b_closed_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.topology.ground().subsets().filter(|&s| self.is_b_closed(s))
    }

    /// Union of all B-open subsets of `s`.
    pub fn b_interior(&self, s: Subset) -> Subset {
        s.subsets()
            .filter(|&u| self.is_b_open(u))
            .fold(Subset::EMPTY, |acc, u| acc | u)
    }

    /// Intersection of all B-closed supersets of `s`.
    pub fn b_closure(&self, s: Subset) -> Subset {
        let outside = self.topology.complement(s);
        outside
            .subsets()
            .map(|extra| s | extra)
            .filter(|&c| self.is_b_closed(c))
            .fold(self.full(), |acc, c| acc & c)
    }

    pub fn is_b_dense(&self, s: Subset) -> bool {
        self.b_closure(s) == self.full()
    }

    pub fn is_b_connected(&self, mode: ConnectednessMode) -> bool {
        let full = self.full();
        for a in self.b_open_sets() {
            if a.is_empty() || a == full {
                continue;
            }
            let rest = full - a;
            match mode {
                ConnectednessMode::Disjoint => {
                    if self.is_b_open(rest) {
                        return false;
                    }
                }
                ConnectednessMode::Literal => {
                    // B must contain the rest of X and stay proper.
                    let found = a
                        .subsets()
                        .filter(|&extra| extra != a)
                        .any(|extra| self.is_b_open(rest | extra));
                    if found {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every singleton is B-closed.
    pub fn is_b_frechet(&self) -> bool {
        (0..self.len()).all(|x| self.is_b_closed(Subset::singleton(x)))
    }

    /// Distinct points are separated by B-open sets in both directions.
    pub fn is_b_frechet_pairwise(&self) -> bool {
        let n = self.len();
        let opens: Vec<Subset> = self.b_open_sets().collect();
        (0..n).all(|x| {
            (0..n).filter(|&y| y != x).all(|y| {
                let u = opens.iter().any(|u| u.contains(x) && !u.contains(y));
                let v = opens.iter().any(|v| v.contains(y) && !v.contains(x));
                u && v
            })
        })
    }

    /// Whether pairwise unions of B-open sets are B-open (finite ⇒ arbitrary).
    pub fn b_open_union_closed(&self) -> bool {
        let opens: Vec<Subset> = self.b_open_sets().collect();
        opens.iter().all(|&a| opens.iter().all(|&b| self.is_b_open(a | b)))
    }
}

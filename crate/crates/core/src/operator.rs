//! Operators `T: P(X) → P(X)` attached to a topology.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::topology::Topology;

/// Composites of interior and closure, evaluated against a bound topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedOperator {
    Id,
    Int,
    Cl,
    IntCl,
    ClInt,
    IntClInt,
    ClIntCl,
}

impl NamedOperator {
    pub const ALL: [NamedOperator; 7] = [
        NamedOperator::Id,
        NamedOperator::Int,
        NamedOperator::Cl,
        NamedOperator::IntCl,
        NamedOperator::ClInt,
        NamedOperator::IntClInt,
        NamedOperator::ClIntCl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedOperator::Id => "id",
            NamedOperator::Int => "int",
            NamedOperator::Cl => "cl",
            NamedOperator::IntCl => "int_cl",
            NamedOperator::ClInt => "cl_int",
            NamedOperator::IntClInt => "int_cl_int",
            NamedOperator::ClIntCl => "cl_int_cl",
        }
    }

    pub fn from_name(name: &str) -> Result<NamedOperator> {
        NamedOperator::ALL
            .into_iter()
            .find(|op| op.name() == name)
            .ok_or_else(|| Error::UnknownOperator {
                name: name.to_string(),
                valid: NamedOperator::ALL.map(NamedOperator::name).join(", "),
            })
    }

    pub fn apply(self, t: &Topology, s: Subset) -> Subset {
        match self {
            NamedOperator::Id => s,
            NamedOperator::Int => t.interior(s),
            NamedOperator::Cl => t.closure(s),
            NamedOperator::IntCl => t.interior(t.closure(s)),
            NamedOperator::ClInt => t.closure(t.interior(s)),
            NamedOperator::IntClInt => t.interior(t.closure(t.interior(s))),
            NamedOperator::ClIntCl => t.closure(t.interior(t.closure(s))),
        }
    }
}

impl fmt::Display for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An explicit image for each of the `2^n` subsets, indexed by mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorTable {
    n: usize,
    images: Arc<[Subset]>,
}

impl OperatorTable {
    pub fn new(n: usize, images: Vec<Subset>) -> Result<OperatorTable> {
        let expected = 1usize << n;
        if images.len() != expected {
            return Err(Error::IncompleteTable {
                expected,
                actual: images.len(),
            });
        }
        let full = Subset::full(n);
        if let Some(bad) = images.iter().find(|s| !s.is_subset_of(full)) {
            return Err(Error::SubsetOutOfRange(bad.bits()));
        }
        Ok(OperatorTable {
            n,
            images: images.into(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Subset) -> Subset) -> OperatorTable {
        OperatorTable {
            n,
            images: Subset::all(n).map(f).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> Subset {
        self.images[s.bits() as usize]
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }
}

impl fmt::Debug for OperatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter().map(|s| s.bits())).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Named(NamedOperator),
    Table(OperatorTable),
}

impl Operator {
    pub const ID: Operator = Operator::Named(NamedOperator::Id);
    pub const INT_CL: Operator = Operator::Named(NamedOperator::IntCl);
    pub const CL_INT: Operator = Operator::Named(NamedOperator::ClInt);

    pub fn apply(&self, t: &Topology, s: Subset) -> Subset {
        match self {
            Operator::Named(op) => op.apply(t, s),
            Operator::Table(table) => table.get(s),
        }
    }

    /// `U ⊆ T(U)` for every open `U`.
    pub fn is_associated(&self, t: &Topology) -> bool {
        t.opens().iter().all(|u| u.is_subset_of(self.apply(t, u)))
    }

    pub fn is_named(&self) -> bool {
        matches!(self, Operator::Named(_))
    }

    /// Materializes the operator over `t` as a table.
    pub fn to_table(&self, t: &Topology) -> OperatorTable {
        match self {
            Operator::Table(table) => table.clone(),
            Operator::Named(op) => OperatorTable::from_fn(t.len(), |s| op.apply(t, s)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Operator::Named(op) => op.name().to_string(),
            Operator::Table(_) => "table".to_string(),
        }
    }
}

/// Families drawn by [`sample_operator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleFamily {
    /// `T(S) = S ∪ M`; preserves unions and intersections.
    UnionShift,
    /// `T(S) = g⁻¹(S) ∪ M` for a random self-map `g`.
    PreimageShift,
    /// Monotone closure of `S ↦ S ∪ mask(S)`.
    Monotone,
    /// Arbitrary random table.
    Raw,
}

impl SampleFamily {
    pub const ALL: [SampleFamily; 4] = [
        SampleFamily::UnionShift,
        SampleFamily::PreimageShift,
        SampleFamily::Monotone,
        SampleFamily::Raw,
    ];
}

/// Deterministic RNG for the `index`-th sample on a topology with the given code.
pub fn sample_rng(seed: u64, topology_code: u64, index: u64) -> ChaCha8Rng {
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(topology_code.rotate_left(17))
        ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Draws a table operator of the given family, then forces `U ⊆ T(U)` on opens.
pub fn sample_operator(t: &Topology, family: SampleFamily, rng: &mut ChaCha8Rng) -> Operator {
    let n = t.len();
    let full = Subset::full(n);
    let sparse = |rng: &mut ChaCha8Rng| Subset::from_bits(rng.random::<u32>() & rng.random::<u32>()) & full;
    let mut images: Vec<Subset> = match family {
        SampleFamily::UnionShift => {
            let m = sparse(rng);
            Subset::all(n).map(|s| s | m).collect()
        }
        SampleFamily::PreimageShift => {
            let g: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let m = sparse(rng);
            Subset::all(n)
                .map(|s| (0..n).filter(|&x| s.contains(g[x])).fold(m, |acc, x| acc.with(x)))
                .collect()
        }
        SampleFamily::Monotone => {
            let base: Vec<Subset> = Subset::all(n).map(|s| s | sparse(rng)).collect();
            Subset::all(n)
                .map(|s| s.subsets().fold(Subset::EMPTY, |acc, a| acc | base[a.bits() as usize]))
                .collect()
        }
        SampleFamily::Raw => Subset::all(n)
            .map(|_| Subset::from_bits(rng.random::<u32>()) & full)
            .collect(),
    };
    for u in t.opens().iter() {
        let img = &mut images[u.bits() as usize];
        *img = *img | u;
    }
    Operator::Table(OperatorTable::new(n, images).expect("complete table"))
}

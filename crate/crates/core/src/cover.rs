//! Covers, exact minimal subcover search and the compactness family.
//!
//! On a finite space every cover is a finite family and therefore its own
//! finite (and countable) subcover, so each space-level predicate here is
//! true. They are still evaluated: the whole class family is the largest
//! possible cover, and an exact subcover search is run on it.

use crate::classes;
use crate::space::BiOperatorSpace;
use crate::subset::{Subset, SubsetFamily};

pub fn is_cover(family: &SubsetFamily, carrier: Subset) -> bool {
    carrier.is_subset_of(family.union_all())
}

/// A minimum-cardinality subfamily covering `carrier`, if one of size
/// at most `bound` exists.
pub fn minimal_subcover(family: &SubsetFamily, carrier: Subset, bound: usize) -> Option<SubsetFamily> {
    if !is_cover(family, carrier) {
        return None;
    }
    let members: Vec<Subset> = family.iter().filter(|m| m.intersects(carrier)).collect();
    let limit = bound.min(members.len());
    let mut chosen = Vec::new();
    for k in 0..=limit {
        if search(&members, carrier, Subset::EMPTY, k, &mut chosen) {
            return Some(chosen.into_iter().collect());
        }
    }
    None
}

/// Branches on the sets containing the lowest uncovered point.
fn search(members: &[Subset], carrier: Subset, covered: Subset, budget: usize, chosen: &mut Vec<Subset>) -> bool {
    let missing = carrier - covered;
    let Some(x) = missing.points().next() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for &m in members.iter().filter(|m| m.contains(x)) {
        chosen.push(m);
        if search(members, carrier, covered | m, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Which sets a cover may be drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverClass {
    Open,
    Closed,
    RegularOpen,
    RegularClosed,
    BOpen,
}

pub fn class_family(space: &BiOperatorSpace, class: CoverClass) -> SubsetFamily {
    let t = space.topology();
    t.ground()
        .subsets()
        .filter(|&s| match class {
            CoverClass::Open => t.is_open(s),
            CoverClass::Closed => t.is_closed(s),
            CoverClass::RegularOpen => classes::is_regular_open(t, s),
            CoverClass::RegularClosed => classes::is_regular_closed(t, s),
            CoverClass::BOpen => space.is_b_open(s),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compactness {
    Compact,
    ContraCompact,
    RCompact,
    ContraRCompact,
    RLindelof,
    ContraRLindelof,
    CountableRCompact,
    ContraCountableRCompact,
    BCompact,
    BLindelof,
    CountableBCompact,
}

impl Compactness {
    pub const ALL: [Compactness; 11] = [
        Compactness::Compact,
        Compactness::ContraCompact,
        Compactness::RCompact,
        Compactness::ContraRCompact,
        Compactness::RLindelof,
        Compactness::ContraRLindelof,
        Compactness::CountableRCompact,
        Compactness::ContraCountableRCompact,
        Compactness::BCompact,
        Compactness::BLindelof,
        Compactness::CountableBCompact,
    ];

    pub fn cover_class(self) -> CoverClass {
        match self {
            Compactness::Compact => CoverClass::Open,
            Compactness::ContraCompact => CoverClass::Closed,
            Compactness::RCompact | Compactness::RLindelof | Compactness::CountableRCompact => CoverClass::RegularOpen,
            Compactness::ContraRCompact | Compactness::ContraRLindelof | Compactness::ContraCountableRCompact => {
                CoverClass::RegularClosed
            }
            Compactness::BCompact | Compactness::BLindelof | Compactness::CountableBCompact => CoverClass::BOpen,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Compactness::Compact => "compact",
            Compactness::ContraCompact => "contra_compact",
            Compactness::RCompact => "r_compact",
            Compactness::ContraRCompact => "contra_r_compact",
            Compactness::RLindelof => "r_lindelof",
            Compactness::ContraRLindelof => "contra_r_lindelof",
            Compactness::CountableRCompact => "countable_r_compact",
            Compactness::ContraCountableRCompact => "contra_countable_r_compact",
            Compactness::BCompact => "b_compact",
            Compactness::BLindelof => "b_lindelof",
            Compactness::CountableBCompact => "countable_b_compact",
        }
    }

    /// Whether every cover of `X` drawn from the class has a finite
    /// (resp. countable) subcover. Always true on finite spaces.
    pub fn holds(self, space: &BiOperatorSpace) -> bool {
        covers_are_reducible(space, self.cover_class(), space.full())
    }
}

/// Every cover of `carrier` by members of `class` has a finite subcover.
pub fn covers_are_reducible(space: &BiOperatorSpace, class: CoverClass, carrier: Subset) -> bool {
    let family = class_family(space, class);
    if !is_cover(&family, carrier) {
        // No cover exists at all.
        return true;
    }
    minimal_subcover(&family, carrier, family.len()).is_some()
}

/// `S` is B-compact relative to `X`: covers of `S` by B-open sets of `X` reduce.
pub fn is_b_compact_relative(space: &BiOperatorSpace, s: Subset) -> bool {
    covers_are_reducible(space, CoverClass::BOpen, s)
}

/// `S` is contra-compact in the space: covers of `S` by closed sets reduce.
pub fn is_contra_compact_subset(space: &BiOperatorSpace, s: Subset) -> bool {
    covers_are_reducible(space, CoverClass::Closed, s)
}

//! Regular, pre-, semi-, α-, β- and b-open sets and their interiors/closures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::topology::Topology;

/// The classical generalized-openness notions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpenClass {
    Open,
    RegularOpen,
    PreOpen,
    SemiOpen,
    AlphaOpen,
    BetaOpen,
    BOpen,
}

impl OpenClass {
    pub const ALL: [OpenClass; 7] = [
        OpenClass::Open,
        OpenClass::RegularOpen,
        OpenClass::PreOpen,
        OpenClass::SemiOpen,
        OpenClass::AlphaOpen,
        OpenClass::BetaOpen,
        OpenClass::BOpen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpenClass::Open => "open",
            OpenClass::RegularOpen => "regular_open",
            OpenClass::PreOpen => "pre_open",
            OpenClass::SemiOpen => "semi_open",
            OpenClass::AlphaOpen => "alpha_open",
            OpenClass::BetaOpen => "beta_open",
            OpenClass::BOpen => "b_open",
        }
    }

    pub fn contains(self, t: &Topology, s: Subset) -> bool {
        match self {
            OpenClass::Open => t.is_open(s),
            OpenClass::RegularOpen => is_regular_open(t, s),
            OpenClass::PreOpen => is_pre_open(t, s),
            OpenClass::SemiOpen => is_semi_open(t, s),
            OpenClass::AlphaOpen => is_alpha_open(t, s),
            OpenClass::BetaOpen => is_beta_open(t, s),
            OpenClass::BOpen => is_b_open(t, s),
        }
    }

    /// Membership of the complement.
    pub fn contains_closed(self, t: &Topology, s: Subset) -> bool {
        self.contains(t, t.complement(s))
    }
}

pub fn int_cl(t: &Topology, s: Subset) -> Subset {
    t.interior(t.closure(s))
}

pub fn cl_int(t: &Topology, s: Subset) -> Subset {
    t.closure(t.interior(s))
}

pub fn is_regular_open(t: &Topology, s: Subset) -> bool {
    s == int_cl(t, s)
}

pub fn is_regular_closed(t: &Topology, s: Subset) -> bool {
    s == cl_int(t, s)
}

pub fn is_pre_open(t: &Topology, s: Subset) -> bool {
    s.is_subset_of(int_cl(t, s))
}

pub fn is_semi_open(t: &Topology, s: Subset) -> bool {
    s.is_subset_of(cl_int(t, s))
}

pub fn is_alpha_open(t: &Topology, s: Subset) -> bool {
    s.is_subset_of(t.interior(cl_int(t, s)))
}

pub fn is_beta_open(t: &Topology, s: Subset) -> bool {
    s.is_subset_of(t.closure(int_cl(t, s)))
}

pub fn is_b_open(t: &Topology, s: Subset) -> bool {
    s.is_subset_of(cl_int(t, s) | int_cl(t, s))
}

/// `pInt(S) = S ∩ Int(Cl(S))`
pub fn p_int(t: &Topology, s: Subset) -> Subset {
    s & int_cl(t, s)
}

/// `pCl(S) = S ∪ Cl(Int(S))`
pub fn p_cl(t: &Topology, s: Subset) -> Subset {
    s | cl_int(t, s)
}

/// `sInt(S) = S ∩ Cl(Int(S))`
pub fn s_int(t: &Topology, s: Subset) -> Subset {
    s & cl_int(t, s)
}

/// `sCl(S) = S ∪ Int(Cl(S))`
pub fn s_cl(t: &Topology, s: Subset) -> Subset {
    s | int_cl(t, s)
}

/// Union of all members of `class` contained in `s`, by scanning every subset of `s`.
pub fn class_interior(t: &Topology, class: OpenClass, s: Subset) -> Subset {
    s.subsets()
        .filter(|&u| class.contains(t, u))
        .fold(Subset::EMPTY, |acc, u| acc | u)
}

/// Intersection of all `class`-closed supersets of `s`, by a full scan.
pub fn class_closure_unchecked(t: &Topology, class: OpenClass, s: Subset) -> Subset {
    t.ground()
        .subsets()
        .filter(|&c| s.is_subset_of(c) && class.contains_closed(t, c))
        .fold(t.full(), |acc, c| acc & c)
}

/// Like [`class_closure_unchecked`], but fails if the result is not itself
/// `class`-closed.
pub fn class_closure(t: &Topology, class: OpenClass, s: Subset) -> Result<Subset> {
    let c = class_closure_unchecked(t, class, s);
    if class.contains_closed(t, c) {
        Ok(c)
    } else {
        Err(Error::ClosureNotClosed {
            class: class.name(),
            subset: t.format(s),
        })
    }
}

pub fn beta_int(t: &Topology, s: Subset) -> Subset {
    class_interior(t, OpenClass::BetaOpen, s)
}

pub fn beta_cl(t: &Topology, s: Subset) -> Result<Subset> {
    class_closure(t, OpenClass::BetaOpen, s)
}

pub fn b_int_classical(t: &Topology, s: Subset) -> Subset {
    class_interior(t, OpenClass::BOpen, s)
}

pub fn b_cl_classical(t: &Topology, s: Subset) -> Result<Subset> {
    class_closure(t, OpenClass::BOpen, s)
}

/// Membership of one subset in every classical class, open and closed forms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub open: bool,
    pub closed: bool,
    pub regular_open: bool,
    pub regular_closed: bool,
    pub pre_open: bool,
    pub pre_closed: bool,
    pub semi_open: bool,
    pub semi_closed: bool,
    pub alpha_open: bool,
    pub alpha_closed: bool,
    pub beta_open: bool,
    pub beta_closed: bool,
    pub b_open: bool,
    pub b_closed: bool,
}

pub fn classify(t: &Topology, s: Subset) -> ClassFlags {
    let c = t.complement(s);
    ClassFlags {
        open: t.is_open(s),
        closed: t.is_closed(s),
        regular_open: is_regular_open(t, s),
        regular_closed: is_regular_closed(t, s),
        pre_open: is_pre_open(t, s),
        pre_closed: is_pre_open(t, c),
        semi_open: is_semi_open(t, s),
        semi_closed: is_semi_open(t, c),
        alpha_open: is_alpha_open(t, s),
        alpha_closed: is_alpha_open(t, c),
        beta_open: is_beta_open(t, s),
        beta_closed: is_beta_open(t, c),
        b_open: is_b_open(t, s),
        b_closed: is_b_open(t, c),
    }
}

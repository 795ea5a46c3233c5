//! Ground sets, bitmask subsets and deduplicated subset families.
//!
//! Point labels live only on [`GroundSet`]; every computation is done on
//! [`Subset`] masks where bit `i` stands for `points[i]`.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported ground set; a subset always fits in one word.
pub const MAX_POINTS: usize = 16;

/// An ordered list of distinct point labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    points: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = labels.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if points.len() > MAX_POINTS {
            return Err(Error::SizeExceeded {
                what: "ground set size",
                actual: points.len(),
                limit: MAX_POINTS,
            });
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        Ok(GroundSet { points: points.into() })
    }

    /// Points labelled `a`, `b`, `c`, ...
    pub fn standard(n: usize) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::SizeExceeded {
                what: "ground set size",
                actual: n,
                limit: MAX_POINTS,
            });
        }
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn complement(&self, s: Subset) -> Subset {
        s.complement(self.len())
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.is_subset_of(self.full())
    }

    /// All `2^n` subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + Clone {
        Subset::all(self.len())
    }

    pub fn subset_from_labels<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for l in labels {
            let l = l.as_ref();
            let i = self.index_of(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Subset(bits))
    }

    /// Labels of the members of `s`, in ground-set order.
    pub fn labels_of(&self, s: Subset) -> Vec<String> {
        s.points().map(|i| self.points[i].clone()).collect()
    }

    /// `{a,c}` style rendering used in diagnostics.
    pub fn format(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.points.iter()).finish()
    }
}

/// A subset of some ground set, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn all(n: usize) -> impl Iterator<Item = Subset> + Clone {
        (0..(1u32 << n)).map(Subset)
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within the low `n` bits.
    pub const fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    /// Indices of the members, ascending.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, ascending.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur | !mask).wrapping_add(1) & mask)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b})", self.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

/// Deduplicated family of subsets, kept sorted by (cardinality, mask).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(members: I) -> Self {
        let mut members: Vec<Subset> = members.into_iter().collect();
        members.sort_by_key(|s| (s.len(), s.bits()));
        members.dedup();
        SubsetFamily { members }
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members
            .binary_search_by_key(&(s.len(), s.bits()), |m| (m.len(), m.bits()))
            .is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    /// Union of all members; the empty family gives the empty set.
    pub fn union_all(&self) -> Subset {
        self.iter().fold(Subset::EMPTY, |acc, s| acc | s)
    }

    /// Intersection of all members; the empty family gives the whole ground set.
    pub fn intersect_all(&self, over: &GroundSet) -> Subset {
        self.iter().fold(over.full(), |acc, s| acc & s)
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<I: IntoIterator<Item = Subset>>(iter: I) -> Self {
        SubsetFamily::new(iter)
    }
}

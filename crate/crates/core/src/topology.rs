//! Finite topologies, their specialization preorders, subspaces and products.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset, SubsetFamily, MAX_POINTS};

/// A validated finite topology.
///
/// Alongside the open sets it keeps the minimal open neighbourhood of every
/// point, which is itself open; interiors are computed from that cache.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    ground: GroundSet,
    opens: SubsetFamily,
    min_nbhd: Vec<Subset>,
}

impl Topology {
    /// Checks the axioms and builds the topology.
    ///
    /// Errors name the first offending pair, scanning unions before
    /// intersections in family order.
    pub fn validate(ground: GroundSet, opens: SubsetFamily) -> Result<Topology> {
        let full = ground.full();
        if let Some(bad) = opens.iter().find(|s| !s.is_subset_of(full)) {
            return Err(Error::SubsetOutOfRange(bad.bits()));
        }
        if !opens.contains(Subset::EMPTY) || !opens.contains(full) {
            return Err(Error::MissingEmptyOrWhole);
        }
        let min_nbhd: Vec<Subset> = (0..ground.len())
            .map(|x| opens.iter().filter(|u| u.contains(x)).fold(full, |acc, u| acc & u))
            .collect();
        let generated = up_closed_family(ground.len(), &min_nbhd);
        if generated != opens {
            return Err(first_axiom_violation(&ground, &opens));
        }
        Ok(Topology {
            ground,
            opens,
            min_nbhd,
        })
    }

    pub fn from_opens<I: IntoIterator<Item = Subset>>(ground: GroundSet, opens: I) -> Result<Self> {
        Topology::validate(ground, opens.into_iter().collect())
    }

    /// Builds a topology from minimal neighbourhoods that are already known
    /// to come from a preorder.
    pub(crate) fn from_min_nbhds(ground: GroundSet, min_nbhd: Vec<Subset>) -> Topology {
        let opens = up_closed_family(ground.len(), &min_nbhd);
        Topology {
            ground,
            opens,
            min_nbhd,
        }
    }

    pub fn discrete(ground: GroundSet) -> Topology {
        let nb = (0..ground.len()).map(Subset::singleton).collect();
        Topology::from_min_nbhds(ground, nb)
    }

    pub fn indiscrete(ground: GroundSet) -> Topology {
        let nb = vec![ground.full(); ground.len()];
        Topology::from_min_nbhds(ground, nb)
    }

    /// `{a, b}` with opens `∅, {a}, X`.
    pub fn sierpinski() -> Topology {
        let g = GroundSet::standard(2).expect("two points");
        Topology::from_min_nbhds(g, vec![Subset::from_bits(0b01), Subset::from_bits(0b11)])
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn complement(&self, s: Subset) -> Subset {
        s.complement(self.len())
    }

    pub fn opens(&self) -> &SubsetFamily {
        &self.opens
    }

    /// Smallest open set containing `x`.
    pub fn min_nbhd(&self, x: usize) -> Subset {
        self.min_nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[Subset] {
        &self.min_nbhd
    }

    pub fn closed_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.opens.iter().map(|u| self.complement(u))
    }

    /// Largest open subset of `s`.
    pub fn interior(&self, s: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for x in s.points() {
            if self.min_nbhd[x].is_subset_of(s) {
                out = out.with(x);
            }
        }
        out
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        self.complement(self.interior(self.complement(s)))
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.interior(s) == s
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.min_nbhd[x] == Subset::singleton(x))
    }

    pub fn format(&self, s: Subset) -> String {
        self.ground.format(s)
    }

    /// Specialization preorder: `x ≤ y` iff `x ∈ Cl({y})`.
    pub fn to_preorder(&self) -> Preorder {
        let n = self.len();
        let up = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| self.closure(Subset::singleton(y)).contains(x))
                    .fold(Subset::EMPTY, |acc, y| acc.with(y))
            })
            .collect();
        Preorder { up }
    }

    /// Topology of up-sets of `p`.
    pub fn from_preorder(p: &Preorder, ground: GroundSet) -> Result<Topology> {
        if p.len() != ground.len() {
            return Err(Error::DomainMismatch(format!(
                "preorder on {} points, ground set of {}",
                p.len(),
                ground.len()
            )));
        }
        Ok(Topology::from_min_nbhds(ground, p.up.clone()))
    }

    /// Row-major encoding of the specialization matrix, first entry most
    /// significant. Defined for at most 8 points.
    pub fn code(&self) -> u64 {
        preorder_code(&self.min_nbhd)
    }

    /// Trace topology on a nonempty carrier, re-indexed onto the carrier's points.
    pub fn subspace(&self, carrier: Subset) -> Result<Subspace> {
        if carrier.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if !carrier.is_subset_of(self.full()) {
            return Err(Error::SubsetOutOfRange(carrier.bits()));
        }
        let embedding: Vec<usize> = carrier.points().collect();
        let ground = GroundSet::new(embedding.iter().map(|&i| self.ground.label(i).to_string()))?;
        let restrict = |s: Subset| {
            embedding
                .iter()
                .enumerate()
                .filter(|(_, &p)| s.contains(p))
                .fold(Subset::EMPTY, |acc, (i, _)| acc.with(i))
        };
        let opens: SubsetFamily = self.opens.iter().map(|u| restrict(u & carrier)).collect();
        let topology = Topology::validate(ground, opens)?;
        Ok(Subspace { topology, embedding })
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|u| self.format(u)).collect();
        write!(f, "Topology({:?}; {})", self.ground, opens.join(" "))
    }
}

/// A subspace together with the indices of its points in the parent.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub topology: Topology,
    pub embedding: Vec<usize>,
}

impl Subspace {
    /// Maps a subset of the subspace back to the parent's indexing.
    pub fn lift(&self, s: Subset) -> Subset {
        s.points().fold(Subset::EMPTY, |acc, i| acc.with(self.embedding[i]))
    }
}

/// Product topology on `X × Y`; the pair `(i, j)` has index `i·|Y| + j`
/// and label `x/y`.
pub fn product(t1: &Topology, t2: &Topology) -> Result<Topology> {
    let (n1, n2) = (t1.len(), t2.len());
    if n1 * n2 > MAX_POINTS {
        return Err(Error::SizeExceeded {
            what: "product size",
            actual: n1 * n2,
            limit: MAX_POINTS,
        });
    }
    let labels = (0..n1).flat_map(|i| (0..n2).map(move |j| format!("{}/{}", t1.ground.label(i), t2.ground.label(j))));
    let ground = GroundSet::new(labels)?;
    let full = ground.full();
    // Minimal neighbourhood of each pair = meet of all open rectangles around it.
    let mut min_nbhd = vec![full; n1 * n2];
    for u in t1.opens.iter() {
        for v in t2.opens.iter() {
            let rect = rectangle(u, v, n2);
            for p in rect.points() {
                min_nbhd[p] = min_nbhd[p] & rect;
            }
        }
    }
    Ok(Topology::from_min_nbhds(ground, min_nbhd))
}

/// `U × V` as a subset of the product ground set of width `n2`.
pub fn rectangle(u: Subset, v: Subset, n2: usize) -> Subset {
    let mut out = Subset::EMPTY;
    for i in u.points() {
        out = out | Subset::from_bits(v.bits() << (i * n2));
    }
    out
}

/// A reflexive, transitive relation; `up[x]` is the set of `y` with `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preorder {
    up: Vec<Subset>,
}

impl Preorder {
    pub fn new(up: Vec<Subset>) -> Result<Preorder> {
        let n = up.len();
        if n == 0 || n > MAX_POINTS {
            return Err(Error::NotAPreorder(format!("size {n}")));
        }
        for (x, &row) in up.iter().enumerate() {
            if !row.contains(x) {
                return Err(Error::NotAPreorder(format!("not reflexive at {x}")));
            }
            if !row.is_subset_of(Subset::full(n)) {
                return Err(Error::NotAPreorder(format!("row {x} out of range")));
            }
            for y in row.points() {
                if !up[y].is_subset_of(row) {
                    return Err(Error::NotAPreorder(format!("not transitive at {x} ≤ {y}")));
                }
            }
        }
        Ok(Preorder { up })
    }

    pub fn from_matrix(rel: &[Vec<bool>]) -> Result<Preorder> {
        let up = rel
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .fold(Subset::EMPTY, |acc, (j, _)| acc.with(j))
            })
            .collect();
        Preorder::new(up)
    }

    pub(crate) fn from_rows_unchecked(up: Vec<Subset>) -> Preorder {
        Preorder { up }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> Subset {
        self.up[x]
    }

    pub fn rows(&self) -> &[Subset] {
        &self.up
    }

    pub fn code(&self) -> u64 {
        preorder_code(&self.up)
    }
}

/// Row `x` of the matrix as an `n`-bit number with column 0 most significant.
pub(crate) fn row_code(row: Subset, n: usize) -> u64 {
    let mut out = 0u64;
    for j in 0..n {
        out = out << 1 | row.contains(j) as u64;
    }
    out
}

pub(crate) fn preorder_code(up: &[Subset]) -> u64 {
    let n = up.len();
    debug_assert!(n <= 8);
    up.iter().fold(0u64, |acc, &row| acc << n | row_code(row, n))
}

/// Every subset that contains the minimal neighbourhood of each of its points.
fn up_closed_family(n: usize, min_nbhd: &[Subset]) -> SubsetFamily {
    Subset::all(n)
        .filter(|&s| s.points().all(|x| min_nbhd[x].is_subset_of(s)))
        .collect()
}

fn first_axiom_violation(ground: &GroundSet, opens: &SubsetFamily) -> Error {
    let m = opens.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !opens.contains(a | b) {
                return Error::NotClosedUnderUnion(ground.format(a), ground.format(b));
            }
        }
    }
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !opens.contains(a & b) {
                return Error::NotClosedUnderIntersection(ground.format(a), ground.format(b));
            }
        }
    }
    unreachable!("family differs from its generated topology but satisfies every axiom")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn s(t: &GroundSet, l: &[&str]) -> Subset {
        t.subset_from_labels(l.iter().copied()).unwrap()
    }

    fn sierpinski_ground() -> (Topology, GroundSet) {
        let t = Topology::sierpinski();
        let gr = t.ground().clone();
        (t, gr)
    }

    #[test]
    fn validation_examples() {
        let ab = g(2);
        let t = Topology::from_opens(ab.clone(), [Subset::EMPTY, s(&ab, &["a"]), ab.full()]).unwrap();
        assert_eq!(t, Topology::sierpinski());

        let abc = g(3);
        let err = Topology::from_opens(
            abc.clone(),
            [Subset::EMPTY, s(&abc, &["a"]), s(&abc, &["b"]), abc.full()],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotClosedUnderUnion("{a}".into(), "{b}".into()));
        assert_eq!(err.to_string(), "NotClosedUnderUnion: {a},{b}");

        let err = Topology::from_opens(ab.clone(), [s(&ab, &["a"]), ab.full()]).unwrap_err();
        assert_eq!(err, Error::MissingEmptyOrWhole);

        let err = Topology::from_opens(
            abc.clone(),
            [
                Subset::EMPTY,
                s(&abc, &["a", "b"]),
                s(&abc, &["b", "c"]),
                s(&abc, &["a", "b", "c"]),
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NotClosedUnderUnion(..) | Error::NotClosedUnderIntersection(..)
        ));
        assert_eq!(err, Error::NotClosedUnderIntersection("{a,b}".into(), "{b,c}".into()));
    }

    #[test]
    fn interior_and_closure_on_sierpinski() {
        let (t, gr) = sierpinski_ground();
        let (a, b) = (s(&gr, &["a"]), s(&gr, &["b"]));
        assert_eq!(t.interior(b), Subset::EMPTY);
        assert_eq!(t.interior(Subset::EMPTY), Subset::EMPTY);
        assert_eq!(t.interior(a), a);
        assert_eq!(t.closure(a), gr.full());
        assert_eq!(t.closure(b), b);
        assert_eq!(t.closure(gr.full()), gr.full());
    }

    #[test]
    fn interior_matches_union_of_contained_opens() {
        let abc = g(3);
        let t = Topology::from_opens(
            abc.clone(),
            [Subset::EMPTY, s(&abc, &["a"]), s(&abc, &["a", "b"]), abc.full()],
        )
        .unwrap();
        for x in abc.subsets() {
            let literal = t
                .opens()
                .iter()
                .filter(|u| u.is_subset_of(x))
                .fold(Subset::EMPTY, |acc, u| acc | u);
            assert_eq!(t.interior(x), literal);
        }
    }

    #[test]
    fn subspace_examples() {
        let abc = g(3);
        let t = Topology::from_opens(
            abc.clone(),
            [Subset::EMPTY, s(&abc, &["a"]), s(&abc, &["a", "b"]), abc.full()],
        )
        .unwrap();
        let sub = t.subspace(s(&abc, &["b", "c"])).unwrap();
        let bc = sub.topology.ground().clone();
        assert_eq!(bc.labels(), ["b", "c"]);
        assert_eq!(
            sub.topology.opens(),
            &SubsetFamily::new([Subset::EMPTY, s(&bc, &["b"]), bc.full()])
        );
        assert_eq!(sub.lift(s(&bc, &["c"])), s(&abc, &["c"]));

        assert_eq!(t.subspace(abc.full()).unwrap().topology, t);
        let (si, gr) = sierpinski_ground();
        let one = si.subspace(s(&gr, &["b"])).unwrap().topology;
        assert_eq!(one.opens().len(), 2);
        assert_eq!(t.subspace(Subset::EMPTY).unwrap_err(), Error::EmptyCarrier);
    }

    // Oracle: close the rectangle family under pairwise union until stable.
    fn rectangle_closure(t1: &Topology, t2: &Topology) -> SubsetFamily {
        let n2 = t2.len();
        let mut fam: Vec<Subset> = Vec::new();
        for u in t1.opens().iter() {
            for v in t2.opens().iter() {
                fam.push(rectangle(u, v, n2));
            }
        }
        loop {
            let before = fam.len();
            let snapshot = fam.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    if !fam.contains(&(a | b)) {
                        fam.push(a | b);
                    }
                }
            }
            if fam.len() == before {
                return fam.into_iter().collect();
            }
        }
    }

    #[test]
    fn product_examples() {
        let si = Topology::sierpinski();
        let p = product(&si, &si).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.opens(), &rectangle_closure(&si, &si));
        assert_eq!(p.opens().len(), 6);
        assert_eq!(p.ground().labels(), ["a/a", "a/b", "b/a", "b/b"]);

        let d2 = Topology::discrete(g(2));
        let d3 = Topology::discrete(g(3));
        assert!(product(&d2, &d3).unwrap().is_discrete());

        let one = Topology::indiscrete(g(1));
        let abc = g(3);
        let t = Topology::from_opens(
            abc.clone(),
            [Subset::EMPTY, s(&abc, &["a"]), s(&abc, &["a", "b"]), abc.full()],
        )
        .unwrap();
        let q = product(&t, &one).unwrap();
        assert_eq!(q.opens().members(), t.opens().members());

        let d4 = Topology::discrete(g(4));
        let d5 = Topology::discrete(g(5));
        assert!(matches!(product(&d4, &d5), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn preorder_examples() {
        let d = Topology::discrete(g(3));
        let p = d.to_preorder();
        assert!((0..3).all(|x| p.up_set(x) == Subset::singleton(x)));
        let i = Topology::indiscrete(g(3));
        assert!((0..3).all(|x| i.to_preorder().up_set(x) == Subset::full(3)));
        // b ∈ Cl{a}: b ≤ a, and nothing else besides reflexivity.
        let si = Topology::sierpinski().to_preorder();
        assert!(si.le(1, 0) && !si.le(0, 1));
        assert_eq!(Topology::from_preorder(&si, g(2)).unwrap(), Topology::sierpinski());
        assert!(Preorder::from_matrix(&[
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true]
        ])
        .is_err());
    }

    #[test]
    fn codes_are_row_major() {
        // c ≤ a and c ≤ b: rows 100, 010, 111.
        let abc = g(3);
        let t = Topology::from_opens(
            abc.clone(),
            [
                Subset::EMPTY,
                s(&abc, &["a"]),
                s(&abc, &["b"]),
                s(&abc, &["a", "b"]),
                abc.full(),
            ],
        )
        .unwrap();
        assert_eq!(t.code(), 0b100_010_111);
    }
}

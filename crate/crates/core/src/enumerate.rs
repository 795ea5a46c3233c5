//! Exhaustive enumeration of finite topologies.
//!
//! Topologies on `n` labeled points are in bijection with preorders on `n`
//! points (open sets = up-sets). Preorders are grown one point at a time:
//! the new point gets a down-set `D` and an up-set `U` of the old order with
//! `D × U ⊆ ≤`, which keeps the relation transitive without any repair.

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::topology::{row_code, Preorder, Topology};

/// Largest `n` accepted by [`enumerate_topologies`].
pub const MAX_ENUMERATION_POINTS: usize = 6;
/// Largest `n` accepted by the family-filtering oracle.
pub const MAX_ORACLE_POINTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumerationMode {
    /// Every topology on the labeled points exactly once.
    Labeled,
    /// One representative per relabeling orbit (minimal code).
    Canonical,
}

/// All preorders on `n` points, sorted by code.
pub fn enumerate_preorders(n: usize) -> Result<Vec<Preorder>> {
    check_size(n, MAX_ENUMERATION_POINTS)?;
    let mut layer: Vec<Vec<Subset>> = vec![vec![Subset::singleton(0)]];
    for k in 1..n {
        let mut next = Vec::new();
        for up in &layer {
            extend_by_one(up, k, &mut next);
        }
        layer = next;
    }
    let mut out: Vec<Preorder> = layer.into_iter().map(Preorder::from_rows_unchecked).collect();
    out.sort_by_key(Preorder::code);
    Ok(out)
}

fn extend_by_one(up: &[Subset], k: usize, out: &mut Vec<Vec<Subset>>) {
    let old = Subset::full(k);
    let is_up_set = |s: Subset| s.points().all(|x| up[x].is_subset_of(s));
    // d is a down-set iff its complement is an up-set.
    let is_down_set = |s: Subset| is_up_set(old - s);
    let up_sets: Vec<Subset> = old.subsets().filter(|&s| is_up_set(s)).collect();
    for down in old.subsets().filter(|&s| is_down_set(s)) {
        for &above in &up_sets {
            if !down.points().all(|d| above.is_subset_of(up[d])) {
                continue;
            }
            let mut rows: Vec<Subset> = up
                .iter()
                .enumerate()
                .map(|(x, &r)| if down.contains(x) { r.with(k) } else { r })
                .collect();
            rows.push(above.with(k));
            out.push(rows);
        }
    }
}

/// All topologies on the standard `n`-point ground set, in ascending code order.
pub fn enumerate_topologies(n: usize, mode: EnumerationMode) -> Result<Vec<Topology>> {
    let ground = GroundSet::standard(n.max(1))?;
    let preorders = enumerate_preorders(n)?;
    Ok(preorders
        .into_iter()
        .filter(|p| mode == EnumerationMode::Labeled || is_canonical(p.rows()))
        .map(|p| Topology::from_min_nbhds(ground.clone(), p.rows().to_vec()))
        .collect())
}

/// Independent route for small `n`: keep every family of subsets that
/// satisfies the axioms when checked pair by pair.
pub fn enumerate_topologies_oracle(n: usize) -> Result<Vec<Topology>> {
    check_size(n, MAX_ORACLE_POINTS)?;
    let ground = GroundSet::standard(n)?;
    let subsets = 1usize << n;
    let full = subsets - 1;
    let mut out = Vec::new();
    for family in 0u64..(1u64 << subsets) {
        let has = |s: usize| family >> s & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<usize> = (0..subsets).filter(|&s| has(s)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| has(a | b) && has(a & b)));
        if closed {
            let opens = members.iter().map(|&s| Subset::from_bits(s as u32));
            out.push(Topology::from_opens(ground.clone(), opens)?);
        }
    }
    Ok(out)
}

/// Minimal code over all relabelings of the topology's preorder.
pub fn canonical_code(t: &Topology) -> u64 {
    let rows = t.min_nbhds();
    let n = rows.len();
    let mut best = t.code();
    for_each_permutation(n, |perm| {
        let code = permuted_code(rows, perm);
        if code < best {
            best = code;
        }
        true
    });
    best
}

/// The same topology, relabeled so that its code is the canonical one.
pub fn canonical_form(t: &Topology) -> Topology {
    let rows = t.min_nbhds();
    let n = rows.len();
    let target = canonical_code(t);
    let mut found = None;
    for_each_permutation(n, |perm| {
        if permuted_code(rows, perm) == target {
            found = Some(perm.to_vec());
            false
        } else {
            true
        }
    });
    let perm = found.expect("minimum is attained by some permutation");
    let new_rows = permuted_rows(rows, &perm);
    Topology::from_min_nbhds(t.ground().clone(), new_rows)
}

fn is_canonical(rows: &[Subset]) -> bool {
    let n = rows.len();
    let own: Vec<u64> = rows.iter().map(|&r| row_code(r, n)).collect();
    let mut canonical = true;
    for_each_permutation(n, |perm| {
        // Compare row by row and stop as soon as the order is decided.
        for (k, &own_row) in own.iter().enumerate() {
            let r = permuted_row(rows, perm, k);
            if r < own_row {
                canonical = false;
                return false;
            }
            if r > own_row {
                return true;
            }
        }
        true
    });
    canonical
}

/// Row `k` of the relabeled matrix, where new point `k` is old point `perm[k]`.
fn permuted_row(rows: &[Subset], perm: &[usize], k: usize) -> u64 {
    let src = rows[perm[k]];
    perm.iter().fold(0u64, |acc, &old| acc << 1 | src.contains(old) as u64)
}

fn permuted_code(rows: &[Subset], perm: &[usize]) -> u64 {
    let n = rows.len();
    (0..n).fold(0u64, |acc, k| acc << n | permuted_row(rows, perm, k))
}

fn permuted_rows(rows: &[Subset], perm: &[usize]) -> Vec<Subset> {
    let n = rows.len();
    let mut inverse = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inverse[old] = new;
    }
    (0..n)
        .map(|k| {
            rows[perm[k]]
                .points()
                .fold(Subset::EMPTY, |acc, old| acc.with(inverse[old]))
        })
        .collect()
}

/// Visits permutations of `0..n` in lexicographic order until `f` returns false.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if !f(&perm) {
            return;
        }
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > limit {
        return Err(Error::SizeExceeded {
            what: "enumeration size",
            actual: n,
            limit,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_topologies(1, EnumerationMode::Labeled).unwrap().len(), 1);
        assert_eq!(enumerate_topologies_oracle(1).unwrap().len(), 1);
        assert_eq!(enumerate_topologies_oracle(2).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(3, EnumerationMode::Labeled).unwrap().len(), 29);
    }

    #[test]
    fn canonical_counts_match_unlabeled_census() {
        // Orbit counts computed by canonicalizing every labeled topology.
        for n in 1..=4 {
            let labeled = enumerate_topologies(n, EnumerationMode::Labeled).unwrap();
            let orbits: HashSet<u64> = labeled.iter().map(canonical_code).collect();
            let canon = enumerate_topologies(n, EnumerationMode::Canonical).unwrap();
            assert_eq!(canon.len(), orbits.len(), "n = {n}");
            for t in &canon {
                assert_eq!(t.code(), canonical_code(t));
            }
        }
    }

    #[test]
    fn canonical_form_has_canonical_code() {
        for t in enumerate_topologies(3, EnumerationMode::Labeled).unwrap() {
            let c = canonical_form(&t);
            assert_eq!(c.code(), canonical_code(&t));
            assert_eq!(c.opens().len(), t.opens().len());
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            enumerate_topologies(7, EnumerationMode::Labeled),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(matches!(
            enumerate_topologies_oracle(5),
            Err(Error::SizeExceeded { .. })
        ));
        assert_eq!(enumerate_preorders(0).unwrap_err(), Error::EmptyGroundSet);
    }

    #[test]
    fn order_is_by_code() {
        let ts = enumerate_topologies(3, EnumerationMode::Labeled).unwrap();
        assert!(ts.windows(2).all(|w| w[0].code() < w[1].code()));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| {
            seen.push(p.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], [0, 1, 2]);
        assert_eq!(seen[5], [2, 1, 0]);
    }
}

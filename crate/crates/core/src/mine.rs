//! Witness search over all small (topology, subset) pairs.
//!
//! Scans run in a fixed order: size, then labeled topology code, then
//! subset bitmask. Every scan is exhaustive, so a zero match count at a
//! size is a certificate that no witness exists there.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::classify;
use crate::enumerate::{enumerate_topologies, EnumerationMode};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::io::{space_to_json, subset_to_json};
use crate::operator::{NamedOperator, Operator};
use crate::space::BiOperatorSpace;
use crate::subset::Subset;
use crate::topology::Topology;

pub const MAX_MINE_POINTS: usize = 5;

/// Operators used when none are given.
pub const CANONICAL_OPERATORS: [NamedOperator; 2] = [NamedOperator::IntCl, NamedOperator::ClInt];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineWitness {
    pub topology: Topology,
    pub subset: Subset,
}

impl MineWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.topology.len(),
            "space": space_to_json(&self.topology),
            "subset": subset_to_json(self.topology.ground(), self.subset),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MineLevel {
    pub n: usize,
    pub topologies: usize,
    pub pairs: u64,
    pub matches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineResult {
    pub predicate: String,
    pub witnesses: Vec<MineWitness>,
    pub levels: Vec<MineLevel>,
}

impl MineResult {
    pub fn total_matches(&self) -> u64 {
        self.levels.iter().map(|l| l.matches).sum()
    }

    /// No pair up to the scanned size satisfies the predicate.
    pub fn is_absent(&self) -> bool {
        self.total_matches() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "predicate": self.predicate,
            "witnesses": self.witnesses.iter().map(MineWitness::to_json).collect::<Vec<_>>(),
            "levels": self.levels,
            "absent": self.is_absent(),
        })
    }
}

fn check_points(max_points: usize) -> Result<()> {
    if max_points > MAX_MINE_POINTS {
        return Err(Error::SizeExceeded {
            what: "mining size",
            actual: max_points,
            limit: MAX_MINE_POINTS,
        });
    }
    Ok(())
}

fn space(t: Topology, operators: &[NamedOperator]) -> Result<BiOperatorSpace> {
    BiOperatorSpace::new(Arc::new(t), operators.iter().copied().map(Operator::Named).collect())
}

/// Up to `limit` pairs satisfying `expr`, with per-size match counts.
pub fn mine(expr: &Expr, max_points: usize, operators: &[NamedOperator], limit: usize) -> Result<MineResult> {
    check_points(max_points)?;
    if operators.len() < 2 {
        return Err(Error::TooFewOperators(operators.len()));
    }
    let wanted = expr.max_operator_index();
    if wanted > operators.len() {
        return Err(Error::IndexOutOfRange {
            index: wanted,
            len: operators.len(),
        });
    }
    let mut witnesses = Vec::new();
    let mut levels = Vec::new();
    for n in 1..=max_points {
        let tops = enumerate_topologies(n, EnumerationMode::Labeled)?;
        let mut level = MineLevel {
            n,
            topologies: tops.len(),
            pairs: 0,
            matches: 0,
        };
        for t in tops {
            let sp = space(t, operators)?;
            for s in sp.topology().ground().subsets() {
                level.pairs += 1;
                if expr.eval(&sp, s)? {
                    level.matches += 1;
                    if witnesses.len() < limit {
                        witnesses.push(MineWitness {
                            topology: sp.topology().clone(),
                            subset: s,
                        });
                    }
                }
            }
        }
        levels.push(level);
    }
    Ok(MineResult {
        predicate: expr.to_string(),
        witnesses,
        levels,
    })
}

pub fn mine_str(src: &str, max_points: usize, operators: &[NamedOperator], limit: usize) -> Result<MineResult> {
    mine(&Expr::parse(src)?, max_points, operators, limit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub topologies: usize,
    pub pairs: u64,
    pub counts: BTreeMap<String, u64>,
}

/// Per-size class-membership counts over all (topology, subset) pairs.
pub fn census(max_points: usize, operators: &[NamedOperator]) -> Result<Vec<CensusRow>> {
    check_points(max_points)?;
    let mut rows = Vec::new();
    for n in 1..=max_points {
        let tops = enumerate_topologies(n, EnumerationMode::Labeled)?;
        let mut row = CensusRow {
            n,
            topologies: tops.len(),
            pairs: 0,
            counts: BTreeMap::new(),
        };
        for t in tops {
            let sp = space(t, operators)?;
            let t = sp.topology();
            for s in t.ground().subsets() {
                row.pairs += 1;
                let flags = serde_json::to_value(classify(t, s)).expect("plain data");
                let mut bump = |k: String, on: bool| *row.counts.entry(k).or_default() += on as u64;
                for (k, v) in flags.as_object().expect("flags object") {
                    bump(k.clone(), v == &Value::Bool(true));
                }
                bump("B_open".into(), sp.is_b_open(s));
                bump("B_closed".into(), sp.is_b_closed(s));
                for i in 1..=operators.len() {
                    bump(format!("t_star_open({i})"), sp.is_t_star_open(i, s)?);
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub topology: Topology,
    pub s1: Subset,
    pub s2: Subset,
}

impl IntersectionWitness {
    pub fn n(&self) -> usize {
        self.topology.len()
    }

    pub fn to_json(&self) -> Value {
        let g = self.topology.ground();
        json!({
            "n": self.n(),
            "space": space_to_json(&self.topology),
            "S1": subset_to_json(g, self.s1),
            "S2": subset_to_json(g, self.s2),
        })
    }
}

/// First pair of B-open sets with non-B-open intersection on `n` points,
/// canonical operators, scanning `S1 ≤ S2`.
pub fn intersection_witness_at(n: usize) -> Result<Option<IntersectionWitness>> {
    for t in enumerate_topologies(n, EnumerationMode::Labeled)? {
        let sp = BiOperatorSpace::canonical(t);
        let opens: Vec<Subset> = sp.b_open_sets().collect();
        for (i, &s1) in opens.iter().enumerate() {
            if let Some(&s2) = opens[i..].iter().find(|&&s2| !sp.is_b_open(s1 & s2)) {
                return Ok(Some(IntersectionWitness {
                    topology: sp.topology().clone(),
                    s1,
                    s2,
                }));
            }
        }
    }
    Ok(None)
}

/// The smallest witness that B-open sets are not closed under intersection.
pub fn intersection_nonclosure_witness() -> IntersectionWitness {
    (1..=3)
        .find_map(|n| intersection_witness_at(n).expect("small sizes"))
        .expect("a witness exists on three points")
}

/// Strict inclusions of the implication chain, as (name, separating predicate).
pub const STRICTNESS_LEVELS: [(&str, &str); 5] = [
    ("open < alpha_open", "alpha_open & !open"),
    ("alpha_open < pre_open", "pre_open & !alpha_open"),
    ("alpha_open < semi_open", "semi_open & !alpha_open"),
    ("pre_open | semi_open < b_open", "b_open & !pre_open & !semi_open"),
    ("b_open < beta_open", "beta_open & !b_open"),
];

/// Predicates that must never match if the implication chain holds.
pub const CHAIN_VIOLATIONS: [&str; 6] = [
    "open & !alpha_open",
    "alpha_open & !pre_open",
    "alpha_open & !semi_open",
    "pre_open & !b_open",
    "semi_open & !b_open",
    "b_open & !beta_open",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictnessCertificate {
    pub inclusion: &'static str,
    pub result: MineResult,
}

impl StrictnessCertificate {
    pub fn is_strict(&self) -> bool {
        !self.result.is_absent()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "inclusion": self.inclusion,
            "strict": self.is_strict(),
            "result": self.result.to_json(),
        })
    }
}

/// For each inclusion, either its first separating witness or an
/// exhaustive absence certificate up to `max_points`.
pub fn strictness_certificates(max_points: usize) -> Result<Vec<StrictnessCertificate>> {
    STRICTNESS_LEVELS
        .iter()
        .map(|&(inclusion, predicate)| {
            Ok(StrictnessCertificate {
                inclusion,
                result: mine_str(predicate, max_points, &CANONICAL_OPERATORS, 1)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_witness() {
        assert_eq!(intersection_witness_at(1).unwrap(), None);
        assert_eq!(intersection_witness_at(2).unwrap(), None);
        let w = intersection_nonclosure_witness();
        assert_eq!(w.n(), 3);
        let opens: Vec<u32> = w.topology.opens().iter().map(Subset::bits).collect();
        assert_eq!(opens, [0b000, 0b001, 0b010, 0b011, 0b111]);
        assert_eq!((w.s1.bits(), w.s2.bits()), (0b101, 0b110));
        let sp = BiOperatorSpace::canonical(w.topology.clone());
        assert_eq!(
            (sp.is_b_open(w.s1), sp.is_b_open(w.s2), sp.is_b_open(w.s1 & w.s2)),
            (true, true, false)
        );
    }

    #[test]
    fn census_rows() {
        let rows = census(3, &CANONICAL_OPERATORS).unwrap();
        assert_eq!(rows[0].pairs, 2);
        assert!(rows[0].counts.values().all(|&c| c == 2));
        assert_eq!((rows[2].topologies, rows[2].pairs), (29, 232));
        for r in &rows {
            assert!(r.counts["open"] <= r.counts["b_open"] && r.counts["b_open"] <= r.counts["beta_open"]);
            assert_eq!(r.counts["b_open"], r.counts["B_open"]);
        }
    }

    #[test]
    fn miner_limits_and_errors() {
        let r = mine_str("pre_open & !semi_open", 4, &CANONICAL_OPERATORS, 3).unwrap();
        assert_eq!(r.witnesses.len(), 3);
        assert_eq!(r.witnesses[0].topology.len(), 2);
        assert!(matches!(
            mine_str("open", 6, &CANONICAL_OPERATORS, 1),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(matches!(
            mine_str("t_star_open(3)", 2, &CANONICAL_OPERATORS, 1),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        ));
        assert!(matches!(
            mine_str("b_open & !", 2, &CANONICAL_OPERATORS, 1),
            Err(Error::Parse { .. })
        ));
    }
}

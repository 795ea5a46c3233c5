//! JSON formats for spaces, subsets, operators and maps.
//!
//! A space is `{"points": [...], "opens": [[...], ...]}`; opens are written
//! ordered by cardinality, then by bitmask. A subset is a label array in
//! ground-set order. A table operator maps comma-joined label keys
//! (`""` for the empty set) to label arrays.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::{NamedOperator, Operator, OperatorTable};
use crate::subset::{GroundSet, Subset};
use crate::topology::Topology;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceFile {
    pub fn from_topology(t: &Topology) -> SpaceFile {
        SpaceFile {
            points: t.ground().labels().to_vec(),
            opens: t.opens().iter().map(|u| t.ground().labels_of(u)).collect(),
        }
    }

    pub fn to_topology(&self) -> Result<Topology> {
        let ground = GroundSet::new(self.points.iter())?;
        let opens = self
            .opens
            .iter()
            .map(|u| ground.subset_from_labels(u))
            .collect::<Result<Vec<_>>>()?;
        Topology::from_opens(ground, opens)
    }
}

fn invalid(e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub fn space_to_json(t: &Topology) -> Value {
    serde_json::to_value(SpaceFile::from_topology(t)).expect("plain data")
}

pub fn space_from_json(v: &Value) -> Result<Topology> {
    SpaceFile::deserialize(v).map_err(invalid)?.to_topology()
}

pub fn parse_space(text: &str) -> Result<Topology> {
    let v: Value = serde_json::from_str(text).map_err(invalid)?;
    space_from_json(&v)
}

pub fn load_space(path: impl AsRef<Path>) -> Result<Topology> {
    parse_space(&read(path.as_ref())?)
}

pub fn subset_to_json(ground: &GroundSet, s: Subset) -> Value {
    json!(ground.labels_of(s))
}

pub fn subset_from_json(ground: &GroundSet, v: &Value) -> Result<Subset> {
    let labels = Vec::<String>::deserialize(v).map_err(invalid)?;
    ground.subset_from_labels(labels)
}

/// Parses `a,b,c`; the empty string is the empty set.
pub fn parse_subset_list(ground: &GroundSet, text: &str) -> Result<Subset> {
    ground.subset_from_labels(text.split(',').map(str::trim).filter(|l| !l.is_empty()))
}

fn table_key(ground: &GroundSet, s: Subset) -> String {
    ground.labels_of(s).join(",")
}

pub fn operator_to_json(op: &Operator, t: &Topology) -> Value {
    match op {
        Operator::Named(n) => json!({ "name": n.name() }),
        Operator::Table(table) => {
            let g = t.ground();
            let entries: serde_json::Map<String, Value> = g
                .subsets()
                .map(|s| (table_key(g, s), subset_to_json(g, table.get(s))))
                .collect();
            json!({ "table": entries })
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum OperatorFile {
    Named { name: String },
    Table { table: BTreeMap<String, Vec<String>> },
}

pub fn operator_from_json(v: &Value, t: &Topology) -> Result<Operator> {
    match OperatorFile::deserialize(v).map_err(|_| invalid("operator must be {\"name\": ...} or {\"table\": {...}}"))? {
        OperatorFile::Named { name } => Ok(Operator::Named(NamedOperator::from_name(&name)?)),
        OperatorFile::Table { table } => {
            let g = t.ground();
            let mut images = vec![None; 1 << g.len()];
            for (key, image) in &table {
                let s = parse_subset_list(g, key)?;
                images[s.bits() as usize] = Some(g.subset_from_labels(image)?);
            }
            let present: Vec<Subset> = images.iter().flatten().copied().collect();
            if present.len() != images.len() {
                return Err(Error::IncompleteTable {
                    expected: images.len(),
                    actual: present.len(),
                });
            }
            Ok(Operator::Table(OperatorTable::new(g.len(), present)?))
        }
    }
}

pub fn load_operator(path: impl AsRef<Path>, t: &Topology) -> Result<Operator> {
    let v: Value = serde_json::from_str(&read(path.as_ref())?).map_err(invalid)?;
    operator_from_json(&v, t)
}

/// `{"a": "x", ...}` for an assignment.
pub fn map_to_json(x: &GroundSet, y: &GroundSet, assignment: &[usize]) -> Value {
    let entries: serde_json::Map<String, Value> = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| (x.label(i).to_string(), json!(y.label(j))))
        .collect();
    Value::Object(entries)
}

pub fn map_assignment_from_json(x: &GroundSet, y: &GroundSet, v: &Value) -> Result<Vec<usize>> {
    let entries = BTreeMap::<String, String>::deserialize(v).map_err(invalid)?;
    if let Some(k) = entries.keys().find(|k| x.index_of(k).is_none()) {
        return Err(Error::UnknownLabel(k.clone()));
    }
    x.labels()
        .iter()
        .map(|l| {
            let target = entries.get(l).ok_or_else(|| Error::UnmappedPoint(l.clone()))?;
            y.index_of(target).ok_or_else(|| Error::UnknownLabel(target.clone()))
        })
        .collect()
}

/// A parsed map file: domain topology, codomain topology and assignment.
#[derive(Clone, Debug)]
pub struct MapFile {
    pub domain: Topology,
    pub codomain: Topology,
    pub assignment: Vec<usize>,
}

fn space_ref(v: &Value, base: Option<&Path>) -> Result<Topology> {
    match v {
        Value::String(p) => {
            let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
            load_space(path)
        }
        other => space_from_json(other),
    }
}

/// Spaces may be inline objects or paths, resolved against `base` when given.
pub fn map_from_json(v: &Value, base: Option<&Path>) -> Result<MapFile> {
    let field = |k: &str| v.get(k).ok_or_else(|| invalid(format!("map file lacks \"{k}\"")));
    let domain = space_ref(field("domain")?, base)?;
    let codomain = space_ref(field("codomain")?, base)?;
    let assignment = map_assignment_from_json(domain.ground(), codomain.ground(), field("map")?)?;
    Ok(MapFile {
        domain,
        codomain,
        assignment,
    })
}

pub fn load_map(path: impl AsRef<Path>) -> Result<MapFile> {
    let path = path.as_ref();
    let v: Value = serde_json::from_str(&read(path)?).map_err(invalid)?;
    map_from_json(&v, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        let t = Topology::sierpinski();
        let v = space_to_json(&t);
        assert_eq!(v.to_string(), r#"{"opens":[[],["a"],["a","b"]],"points":["a","b"]}"#);
        assert_eq!(space_from_json(&v).unwrap(), t);
    }

    #[test]
    fn invalid_space_names_the_pair() {
        let err = parse_space(r#"{"points":["a","b","c"],"opens":[[],["a"],["b"],["a","b","c"]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "NotClosedUnderUnion: {a},{b}");
        assert!(matches!(
            parse_space(r#"{"points":["a"],"opens":[[],["z"],["a"]]}"#),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(parse_space("{"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn operator_round_trip() {
        let t = Topology::sierpinski();
        let op = operator_from_json(&json!({"name": "int_cl"}), &t).unwrap();
        assert_eq!(op, Operator::INT_CL);
        let table = Operator::Table(OperatorTable::from_fn(2, |s| s | Subset::singleton(0)));
        let v = operator_to_json(&table, &t);
        assert_eq!(v["table"][""], json!(["a"]));
        assert_eq!(v["table"]["a,b"], json!(["a", "b"]));
        assert_eq!(operator_from_json(&v, &t).unwrap(), table);
        let short = json!({"table": {"": [], "a": ["a"]}});
        assert!(matches!(
            operator_from_json(&short, &t),
            Err(Error::IncompleteTable { expected: 4, actual: 2 })
        ));
        assert!(matches!(
            operator_from_json(&json!({"name": "nope"}), &t),
            Err(Error::UnknownOperator { .. })
        ));
    }

    #[test]
    fn maps() {
        let v = json!({
            "domain": {"points": ["a", "b", "c"], "opens": [[], ["a", "b", "c"]]},
            "codomain": {"points": ["x", "y"], "opens": [[], ["x"], ["x", "y"]]},
            "map": {"a": "x", "b": "x", "c": "y"}
        });
        let m = map_from_json(&v, None).unwrap();
        assert_eq!(m.assignment, [0, 0, 1]);
        assert_eq!(
            map_to_json(m.domain.ground(), m.codomain.ground(), &m.assignment),
            v["map"]
        );
        let mut missing = v.clone();
        missing["map"].as_object_mut().unwrap().remove("c");
        assert_eq!(
            map_from_json(&missing, None).unwrap_err(),
            Error::UnmappedPoint("c".into())
        );
    }

    #[test]
    fn subset_lists() {
        let g = GroundSet::standard(3).unwrap();
        assert_eq!(parse_subset_list(&g, "").unwrap(), Subset::EMPTY);
        assert_eq!(parse_subset_list(&g, "c, a").unwrap(), Subset::from_bits(0b101));
        assert_eq!(subset_to_json(&g, Subset::from_bits(0b101)), json!(["a", "c"]));
    }
}

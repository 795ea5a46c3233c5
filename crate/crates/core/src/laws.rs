//! Registered statements about bi-operator spaces, each checked on every
//! instance of a bounded stream of finite examples.
//!
//! A law pairs an instance generator with a hypothesis and a conclusion.
//! Verification counts how often the hypothesis fires, so a law whose
//! hypothesis never fires is reported vacuous instead of verified, and
//! keeps the first counterexample in a fixed instance order.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::{self, OpenClass};
use crate::cover::{is_b_compact_relative, is_contra_compact_subset, Compactness};
use crate::enumerate::{enumerate_topologies, EnumerationMode};
use crate::error::{Error, Result};
use crate::io::{
    map_assignment_from_json, map_to_json, operator_from_json, operator_to_json, space_from_json, space_to_json,
    subset_from_json, subset_to_json,
};
use crate::maps::{enumerate_maps, graph_map, is_urysohn, is_weakly_hausdorff, FiniteMap, MapFilter, MapView};
use crate::operator::{sample_operator, sample_rng, Operator, SampleFamily};
use crate::space::{BiOperatorSpace, ConnectednessMode};
use crate::subset::Subset;
use crate::topology::Topology;

/// Seeded table-operator samples drawn per topology.
pub const TABLE_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Counterexample,
    Vacuous,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::Vacuous => "vacuous",
        }
    }
}

/// One point of an instance stream. Map laws fill `codomain` and `f`
/// (and `g` for two-map laws); `subsets` are named by the law.
#[derive(Clone, Debug)]
pub struct Instance {
    pub space: Arc<BiOperatorSpace>,
    pub codomain: Option<Arc<Topology>>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub subsets: Vec<Subset>,
}

impl Instance {
    fn t(&self) -> &Topology {
        self.space.topology()
    }

    fn s(&self, i: usize) -> Subset {
        self.subsets[i]
    }

    fn y(&self) -> &Topology {
        self.codomain.as_deref().expect("map instance")
    }

    fn view(&self) -> MapView<'_> {
        MapView::new(&self.space, self.y(), &self.f)
    }

    fn g_view(&self) -> MapView<'_> {
        MapView::new(&self.space, self.y(), &self.g)
    }

    fn y_space(&self) -> BiOperatorSpace {
        BiOperatorSpace::canonical(self.codomain.clone().expect("map instance"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub hypothesis: bool,
    pub conclusion: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    /// Every topology, every subset.
    Subsets { tables: bool },
    /// Every topology, every pair of subsets (`symmetric`: first ≤ second).
    Pairs { tables: bool, symmetric: bool },
    /// Every topology.
    Spaces,
    /// Every pair of topologies, every map.
    Maps,
    /// Maps together with every subset of the domain.
    MapsWithSubset,
    /// Every pair of maps between the same two spaces.
    MapPairs,
}

impl Generator {
    /// Largest size the stream may be run at.
    fn hard_limit(self) -> usize {
        match self {
            Generator::Subsets { tables: false } | Generator::Spaces => 5,
            Generator::Subsets { tables: true } | Generator::Pairs { tables: false, .. } => 4,
            _ => 3,
        }
    }

    fn tables(self) -> bool {
        matches!(
            self,
            Generator::Subsets { tables: true } | Generator::Pairs { tables: true, .. }
        )
    }

    fn is_map(self) -> bool {
        matches!(self, Generator::Maps | Generator::MapsWithSubset | Generator::MapPairs)
    }
}

pub struct Law {
    pub id: &'static str,
    pub description: &'static str,
    pub default_max_points: usize,
    pub trivial_on_finite: bool,
    pub note: Option<&'static str>,
    generator: Generator,
    subset_names: &'static [&'static str],
    hypothesis: fn(&Instance) -> bool,
    conclusion: fn(&Instance) -> bool,
}

impl Law {
    pub fn evaluate(&self, inst: &Instance) -> Outcome {
        Outcome {
            hypothesis: (self.hypothesis)(inst),
            conclusion: (self.conclusion)(inst),
        }
    }

    pub fn subset_names(&self) -> &'static [&'static str] {
        self.subset_names
    }

    pub fn uses_table_operators(&self) -> bool {
        self.generator.tables()
    }

    pub fn is_map_law(&self) -> bool {
        self.generator.is_map()
    }

    /// Size bound actually used for a requested override.
    pub fn effective_max_points(&self, requested: Option<usize>) -> usize {
        requested
            .unwrap_or(self.default_max_points)
            .min(self.generator.hard_limit())
    }

    pub fn witness_to_json(&self, inst: &Instance) -> Value {
        let t = inst.t();
        let mut w = serde_json::Map::new();
        w.insert("space".into(), space_to_json(t));
        w.insert(
            "operators".into(),
            inst.space
                .operators()
                .iter()
                .map(|op| operator_to_json(op, t))
                .collect(),
        );
        if let Some(y) = &inst.codomain {
            w.insert("codomain".into(), space_to_json(y));
            w.insert("map".into(), map_to_json(t.ground(), y.ground(), &inst.f));
            if !inst.g.is_empty() {
                w.insert("g".into(), map_to_json(t.ground(), y.ground(), &inst.g));
            }
        }
        let subsets: serde_json::Map<String, Value> = self
            .subset_names
            .iter()
            .zip(&inst.subsets)
            .map(|(name, &s)| (name.to_string(), subset_to_json(t.ground(), s)))
            .collect();
        w.insert("subsets".into(), Value::Object(subsets));
        Value::Object(w)
    }

    pub fn witness_from_json(&self, v: &Value) -> Result<Instance> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::InvalidInput(format!("witness lacks \"{k}\"")))
        };
        let t = Arc::new(space_from_json(field("space")?)?);
        let ops = field("operators")?
            .as_array()
            .ok_or_else(|| Error::InvalidInput("\"operators\" must be an array".into()))?
            .iter()
            .map(|o| operator_from_json(o, &t))
            .collect::<Result<Vec<_>>>()?;
        let space = Arc::new(BiOperatorSpace::new(t.clone(), ops)?);
        let (codomain, f, g) = match v.get("codomain") {
            Some(c) => {
                let y = Arc::new(space_from_json(c)?);
                let f = map_assignment_from_json(t.ground(), y.ground(), field("map")?)?;
                let g = match v.get("g") {
                    Some(g) => map_assignment_from_json(t.ground(), y.ground(), g)?,
                    None => Vec::new(),
                };
                (Some(y), f, g)
            }
            None => (None, Vec::new(), Vec::new()),
        };
        let named = field("subsets")?;
        let subsets = self
            .subset_names
            .iter()
            .map(|name| {
                let s = named
                    .get(*name)
                    .ok_or_else(|| Error::InvalidInput(format!("witness lacks subset {name}")))?;
                subset_from_json(t.ground(), s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            space,
            codomain,
            f,
            g,
            subsets,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub law: String,
    pub status: Status,
    pub max_points: usize,
    pub instances_checked: u64,
    pub hypothesis_hits: u64,
    pub counterexamples: u64,
    pub witness: Option<Value>,
    pub trivial_on_finite: bool,
    pub note: Option<String>,
    /// Wall-clock time; kept out of JSON so reports compare byte for byte.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_points: Option<usize>,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

// ---- predicates shared by several laws ----

fn b_open(i: &Instance, k: usize) -> bool {
    i.space.is_b_open(i.s(k))
}

fn b_closed(i: &Instance, k: usize) -> bool {
    i.space.is_b_closed(i.s(k))
}

fn preserves_meet(i: &Instance, w: Subset, z: Subset) -> bool {
    (1..=2).all(|k| {
        let t = |s| i.space.apply(k, s).expect("two operators");
        t(w & z) == t(w) & t(z)
    })
}

fn preserves_join(i: &Instance, w: Subset, z: Subset) -> bool {
    (1..=2).all(|k| {
        let t = |s| i.space.apply(k, s).expect("two operators");
        t(w | z) == t(w) | t(z)
    })
}

fn contra_b_continuous(i: &Instance) -> bool {
    i.view().is_contra_b_continuous()
}

fn almost_contra_b(i: &Instance) -> bool {
    i.view().is_almost_contra_b_continuous()
}

fn x_has(i: &Instance, c: Compactness) -> bool {
    c.holds(&i.space)
}

fn y_has(i: &Instance, c: Compactness) -> bool {
    c.holds(&i.y_space())
}

fn always(_: &Instance) -> bool {
    true
}

const S: &[&str] = &["S"];
const WZ: &[&str] = &["W", "Z"];
const Z12: &[&str] = &["Z1", "Z2"];
const C12: &[&str] = &["C1", "C2"];
const S12: &[&str] = &["S1", "S2"];
const NONE: &[&str] = &[];

/// All registered laws, in reporting order.
pub fn registry() -> &'static [Law] {
    &LAWS
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    LAWS.iter()
        .find(|l| l.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}

static LAWS: [Law; 29] = [
    Law {
        id: "prop-open-class-identities",
        description: "pInt, pCl, sInt, sCl closed forms agree with the scan over class members",
        default_max_points: 4,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Subsets { tables: false },
        subset_names: S,
        hypothesis: always,
        conclusion: |i| {
            let (t, s) = (i.t(), i.s(0));
            classes::p_int(t, s) == classes::class_interior(t, OpenClass::PreOpen, s)
                && classes::s_int(t, s) == classes::class_interior(t, OpenClass::SemiOpen, s)
                && classes::p_cl(t, s) == classes::class_closure_unchecked(t, OpenClass::PreOpen, s)
                && classes::s_cl(t, s) == classes::class_closure_unchecked(t, OpenClass::SemiOpen, s)
        },
    },
    Law {
        id: "remark-b-equivalence",
        description: "with T1 = int cl and T2 = cl int, B-open coincides with b-open",
        default_max_points: 4,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Subsets { tables: false },
        subset_names: S,
        hypothesis: always,
        conclusion: |i| i.space.is_b_open(i.s(0)) == classes::is_b_open(i.t(), i.s(0)),
    },
    Law {
        id: "remark-Tstar-implies-B",
        description: "T1*-open or T2*-open implies B-open, and B-open implies chain-open for T1, T2, T3",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("canonical operators plus 64 seeded table samples per topology"),
        generator: Generator::Subsets { tables: true },
        subset_names: S,
        hypothesis: |i| {
            let s = i.s(0);
            i.space.is_t_star_open(1, s).unwrap() || i.space.is_t_star_open(2, s).unwrap() || i.space.is_b_open(s)
        },
        conclusion: |i| i.space.is_b_open(i.s(0)) && i.space.is_chain_open(3, i.s(0)).unwrap(),
    },
    Law {
        id: "lemma-BInt-decomposition",
        description: "BInt(S) = sInt(S) ∪ pInt(S) for T1 = int cl, T2 = cl int",
        default_max_points: 4,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Subsets { tables: false },
        subset_names: S,
        hypothesis: always,
        conclusion: |i| {
            let (t, s) = (i.t(), i.s(0));
            i.space.b_interior(s) == classes::s_int(t, s) | classes::p_int(t, s)
        },
    },
    Law {
        id: "lemma-BCl-decomposition",
        description: "BCl(S) = sCl(S) ∩ pCl(S) for T1 = int cl, T2 = cl int",
        default_max_points: 4,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Subsets { tables: false },
        subset_names: S,
        hypothesis: always,
        conclusion: |i| {
            let (t, s) = (i.t(), i.s(0));
            i.space.b_closure(s) == classes::s_cl(t, s) & classes::p_cl(t, s)
        },
    },
    Law {
        id: "lemma-open-cap-B-open",
        description: "open ∩ B-open is B-open (canonical operators, conclusion only)",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("canonical operators do not preserve intersections; only the conclusion is tested"),
        generator: Generator::Pairs {
            tables: false,
            symmetric: false,
        },
        subset_names: WZ,
        hypothesis: |i| i.t().is_open(i.s(0)) && b_open(i, 1),
        conclusion: |i| i.space.is_b_open(i.s(0) & i.s(1)),
    },
    Law {
        id: "lemma-open-cap-B-open-tables",
        description: "open W ∩ B-open Z is B-open when T1, T2 preserve W ∩ Z",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("table operators; intersection preservation checked on the instance pair"),
        generator: Generator::Pairs {
            tables: true,
            symmetric: false,
        },
        subset_names: WZ,
        hypothesis: |i| i.t().is_open(i.s(0)) && b_open(i, 1) && preserves_meet(i, i.s(0), i.s(1)),
        conclusion: |i| i.space.is_b_open(i.s(0) & i.s(1)),
    },
    Law {
        id: "lemma-union-B-open",
        description: "a union of B-open sets is B-open (canonical operators)",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("pairwise unions; finite families follow by induction"),
        generator: Generator::Pairs {
            tables: false,
            symmetric: true,
        },
        subset_names: Z12,
        hypothesis: |i| b_open(i, 0) && b_open(i, 1),
        conclusion: |i| i.space.is_b_open(i.s(0) | i.s(1)),
    },
    Law {
        id: "lemma-union-B-open-tables",
        description: "a union of B-open sets is B-open when T1, T2 preserve that union",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("table operators; the union-preservation step of the proof is an explicit hypothesis"),
        generator: Generator::Pairs {
            tables: true,
            symmetric: true,
        },
        subset_names: Z12,
        hypothesis: |i| b_open(i, 0) && b_open(i, 1) && preserves_join(i, i.s(0), i.s(1)),
        conclusion: |i| i.space.is_b_open(i.s(0) | i.s(1)),
    },
    Law {
        id: "lemma-union-B-open-tables-literal",
        description: "a union of B-open sets is B-open when T1, T2 preserve every open-by-arbitrary intersection",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("table operators; only the stated intersection hypothesis, without union preservation"),
        generator: Generator::Pairs {
            tables: true,
            symmetric: true,
        },
        subset_names: Z12,
        hypothesis: |i| {
            b_open(i, 0)
                && b_open(i, 1)
                && i.t()
                    .opens()
                    .iter()
                    .all(|w| i.t().ground().subsets().all(|z| preserves_meet(i, w, z)))
        },
        conclusion: |i| i.space.is_b_open(i.s(0) | i.s(1)),
    },
    Law {
        id: "remark-B-closed-intersection",
        description: "an intersection of B-closed sets is B-closed",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("table operators; failures show the statement needs extra operator hypotheses"),
        generator: Generator::Pairs {
            tables: true,
            symmetric: true,
        },
        subset_names: C12,
        hypothesis: |i| b_closed(i, 0) && b_closed(i, 1),
        conclusion: |i| i.space.is_b_closed(i.s(0) & i.s(1)),
    },
    Law {
        id: "selftest-bopen-implies-semiopen",
        description: "negative control: every b-open set is semi-open",
        default_max_points: 4,
        trivial_on_finite: false,
        note: Some("deliberately false; must report a counterexample"),
        generator: Generator::Subsets { tables: false },
        subset_names: S,
        hypothesis: |i| classes::is_b_open(i.t(), i.s(0)),
        conclusion: |i| classes::is_semi_open(i.t(), i.s(0)),
    },
    Law {
        id: "selftest-B-open-intersection",
        description: "negative control: the intersection of two B-open sets is B-open",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("deliberately false; must report a counterexample"),
        generator: Generator::Pairs {
            tables: false,
            symmetric: true,
        },
        subset_names: S12,
        hypothesis: |i| b_open(i, 0) && b_open(i, 1),
        conclusion: |i| i.space.is_b_open(i.s(0) & i.s(1)),
    },
    Law {
        id: "prop-contra-graph-preimage",
        description: "contra-B-closed graph implies the preimage of every contra-compact subset is B-closed",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("every subset of a finite space is contra-compact; the conclusion ranges over all of them"),
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().has_contra_b_closed_graph(),
        conclusion: |i| {
            let y = i.y_space();
            let v = i.view();
            i.y()
                .ground()
                .subsets()
                .all(|s| !is_contra_compact_subset(&y, s) || i.space.is_b_closed(v.preimage(s)))
        },
    },
    Law {
        id: "prop-contra-compact-continuity",
        description: "a map into a contra-compact space with contra-B-closed graph is contra-B-continuous",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().has_contra_b_closed_graph() && y_has(i, Compactness::ContraCompact),
        conclusion: contra_b_continuous,
    },
    Law {
        id: "lemma-graph-function",
        description: "a contra-B-continuous graph map g(x) = (x, f(x)) makes f contra-B-continuous",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("product operators are the domain's named operators re-derived on X × Y"),
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| {
            let m = FiniteMap::new(i.space.clone(), i.codomain.clone().unwrap(), i.f.clone()).unwrap();
            graph_map(&m)
                .map(|g| g.view().is_contra_b_continuous())
                .unwrap_or(false)
        },
        conclusion: contra_b_continuous,
    },
    Law {
        id: "prop-equalizer-B-closed",
        description: "f contra-B-continuous, g contra-continuous, Y Urysohn: {f = g} is B-closed",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::MapPairs,
        subset_names: NONE,
        hypothesis: |i| is_urysohn(i.y()) && contra_b_continuous(i) && i.g_view().is_contra_continuous(),
        conclusion: |i| i.space.is_b_closed(crate::maps::equalizer_of(&i.f, &i.g)),
    },
    Law {
        id: "cor-B-dense-agreement",
        description: "under the equalizer hypotheses, agreement on a B-dense set forces f = g",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("the agreement set is taken as {f = g}, the largest set on which f and g agree"),
        generator: Generator::MapPairs,
        subset_names: NONE,
        hypothesis: |i| {
            is_urysohn(i.y())
                && contra_b_continuous(i)
                && i.g_view().is_contra_continuous()
                && i.space.is_b_dense(crate::maps::equalizer_of(&i.f, &i.g))
        },
        conclusion: |i| i.f == i.g,
    },
    Law {
        id: "prop-non-discrete",
        description: "a contra-B-continuous surjection from a B-connected space has non-discrete codomain",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("|Y| ≥ 2; B-connected in the literal reading over proper B-open sets"),
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| {
            i.y().len() >= 2
                && i.view().is_surjective()
                && contra_b_continuous(i)
                && i.space.is_b_connected(ConnectednessMode::Literal)
        },
        conclusion: |i| !i.y().is_discrete(),
    },
    Law {
        id: "prop-compact-transfer-family",
        description: "surjective almost contra-B-continuous maps carry B-compactness variants to contra-R variants",
        default_max_points: 3,
        trivial_on_finite: true,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().is_surjective() && almost_contra_b(i),
        conclusion: |i| {
            [
                (Compactness::BLindelof, Compactness::ContraRLindelof),
                (Compactness::BCompact, Compactness::ContraRCompact),
                (Compactness::CountableBCompact, Compactness::ContraCountableRCompact),
            ]
            .into_iter()
            .all(|(a, b)| !x_has(i, a) || y_has(i, b))
        },
    },
    Law {
        id: "lemma-R-continuous",
        description: "almost contra-B-continuous and almost continuous implies R-continuous",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| almost_contra_b(i) && i.view().is_almost_continuous(),
        conclusion: |i| i.view().is_r_continuous(),
    },
    Law {
        id: "prop-R-compact-transfer",
        description: "surjective almost continuous, almost contra-B-continuous maps carry R-compactness variants",
        default_max_points: 3,
        trivial_on_finite: true,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().is_surjective() && almost_contra_b(i) && i.view().is_almost_continuous(),
        conclusion: |i| {
            [
                Compactness::ContraRCompact,
                Compactness::RCompact,
                Compactness::RLindelof,
                Compactness::CountableRCompact,
                Compactness::ContraCountableRCompact,
                Compactness::ContraRLindelof,
            ]
            .into_iter()
            .all(|c| !x_has(i, c) || y_has(i, c))
        },
    },
    Law {
        id: "prop-image-contra-compact",
        description: "contra-B-continuous f and S B-compact relative to X: f(S) is contra-compact in Y",
        default_max_points: 3,
        trivial_on_finite: true,
        note: Some("the statement names f(X) while the argument is about f(S); the S form is checked"),
        generator: Generator::MapsWithSubset,
        subset_names: S,
        hypothesis: |i| contra_b_continuous(i) && is_b_compact_relative(&i.space, i.s(0)),
        conclusion: |i| is_contra_compact_subset(&i.y_space(), i.view().image(i.s(0))),
    },
    Law {
        id: "cor-surjective-contra-compact",
        description: "a contra-B-continuous surjection from a B-compact space has contra-compact codomain",
        default_max_points: 3,
        trivial_on_finite: true,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().is_surjective() && contra_b_continuous(i) && x_has(i, Compactness::BCompact),
        conclusion: |i| y_has(i, Compactness::ContraCompact),
    },
    Law {
        id: "prop-urysohn-regular-graph",
        description: "almost contra-B-continuous into an Urysohn space gives a B-regular graph",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| is_urysohn(i.y()) && almost_contra_b(i),
        conclusion: |i| i.view().has_b_regular_graph(),
    },
    Law {
        id: "prop-weakly-hausdorff",
        description: "a surjection with B-regular graph has weakly Hausdorff codomain",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().is_surjective() && i.view().has_b_regular_graph(),
        conclusion: |i| is_weakly_hausdorff(i.y()),
    },
    Law {
        id: "prop-B-frechet",
        description: "an injection with B-regular graph has B-Frechet domain",
        default_max_points: 3,
        trivial_on_finite: false,
        note: None,
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| i.view().is_injective() && i.view().has_b_regular_graph(),
        conclusion: |i| i.space.is_b_frechet(),
    },
    Law {
        id: "prop-contra-B-regular-graph",
        description: "almost weakly B-continuous into an Urysohn space gives a contra-B-closed graph",
        default_max_points: 3,
        trivial_on_finite: false,
        note: Some("weak B-continuity read as almost weak B-continuity over regular open V"),
        generator: Generator::Maps,
        subset_names: NONE,
        hypothesis: |i| is_urysohn(i.y()) && i.view().is_almost_weakly_b_continuous(),
        conclusion: |i| i.view().has_contra_b_closed_graph(),
    },
    Law {
        id: "compactness-variants",
        description: "every compactness and Lindelöf variant holds on a finite space",
        default_max_points: 4,
        trivial_on_finite: true,
        note: None,
        generator: Generator::Spaces,
        subset_names: NONE,
        hypothesis: always,
        conclusion: |i| Compactness::ALL.into_iter().all(|c| c.holds(&i.space)),
    },
];

// ---- instance streams ----

struct Context {
    topologies: Vec<Arc<Topology>>,
    seed: u64,
}

impl Context {
    fn new(max_points: usize, seed: u64) -> Result<Context> {
        let mut topologies = Vec::new();
        for n in 1..=max_points {
            topologies.extend(
                enumerate_topologies(n, EnumerationMode::Labeled)?
                    .into_iter()
                    .map(Arc::new),
            );
        }
        Ok(Context { topologies, seed })
    }
}

#[derive(Clone, Copy, Debug)]
enum Unit {
    Space(usize),
    Pair(usize, usize),
}

fn units(generator: Generator, count: usize) -> Vec<Unit> {
    if generator.is_map() {
        // topologies are already sorted by (size, code)
        (0..count)
            .flat_map(|x| (0..count).map(move |y| Unit::Pair(x, y)))
            .collect::<Vec<_>>()
    } else {
        (0..count).map(Unit::Space).collect()
    }
}

/// Sorts pair units by (|X|, |Y|, code X, code Y).
fn order_units(units: &mut [Unit], ctx: &Context) {
    units.sort_by_key(|u| match *u {
        Unit::Space(x) => (ctx.topologies[x].len(), 0, x, 0),
        Unit::Pair(x, y) => (ctx.topologies[x].len(), ctx.topologies[y].len(), x, y),
    });
}

/// Canonical operators with `id` as third, then the seeded samples.
pub fn operator_samples(t: &Arc<Topology>, seed: u64) -> Vec<Arc<BiOperatorSpace>> {
    let mut out = Vec::with_capacity(TABLE_SAMPLES + 1);
    out.push(Arc::new(
        BiOperatorSpace::new(t.clone(), vec![Operator::INT_CL, Operator::CL_INT, Operator::ID])
            .expect("canonical operators are associated"),
    ));
    let fam = SampleFamily::ALL;
    for i in 0..TABLE_SAMPLES {
        let mut rng = sample_rng(seed, t.code(), i as u64);
        let ops = vec![
            sample_operator(t, fam[(i / 8) % 4], &mut rng),
            sample_operator(t, fam[i % 4], &mut rng),
            sample_operator(t, fam[(i / 8 + i) % 4], &mut rng),
        ];
        out.push(Arc::new(
            BiOperatorSpace::new(t.clone(), ops).expect("samples are forced associated"),
        ));
    }
    out
}

fn instances(law: &Law, unit: Unit, ctx: &Context) -> Vec<Instance> {
    let bare = |space: &Arc<BiOperatorSpace>, subsets: Vec<Subset>| Instance {
        space: space.clone(),
        codomain: None,
        f: Vec::new(),
        g: Vec::new(),
        subsets,
    };
    match (law.generator, unit) {
        (Generator::Subsets { tables }, Unit::Space(x)) => {
            let t = &ctx.topologies[x];
            spaces_for(t, tables, ctx.seed)
                .iter()
                .flat_map(|sp| t.ground().subsets().map(move |s| bare(sp, vec![s])))
                .collect()
        }
        (Generator::Pairs { tables, symmetric }, Unit::Space(x)) => {
            let t = &ctx.topologies[x];
            let mut out = Vec::new();
            for sp in spaces_for(t, tables, ctx.seed) {
                for a in t.ground().subsets() {
                    for b in t.ground().subsets() {
                        if !symmetric || a <= b {
                            out.push(bare(&sp, vec![a, b]));
                        }
                    }
                }
            }
            out
        }
        (Generator::Spaces, Unit::Space(x)) => {
            vec![bare(
                &Arc::new(BiOperatorSpace::canonical(ctx.topologies[x].clone())),
                Vec::new(),
            )]
        }
        (_, Unit::Pair(x, y)) => {
            let tx = &ctx.topologies[x];
            let ty = &ctx.topologies[y];
            let space = Arc::new(BiOperatorSpace::canonical(tx.clone()));
            let maps = enumerate_maps(tx.len(), ty.len(), MapFilter::All).expect("bounded sizes");
            let inst = |f: &Vec<usize>, g: &Vec<usize>, subsets: Vec<Subset>| Instance {
                space: space.clone(),
                codomain: Some(ty.clone()),
                f: f.clone(),
                g: g.clone(),
                subsets,
            };
            let none = Vec::new();
            match law.generator {
                Generator::Maps => maps.iter().map(|f| inst(f, &none, Vec::new())).collect(),
                Generator::MapsWithSubset => maps
                    .iter()
                    .flat_map(|f| tx.ground().subsets().map(move |s| (f, s)))
                    .map(|(f, s)| inst(f, &none, vec![s]))
                    .collect(),
                Generator::MapPairs => maps
                    .iter()
                    .flat_map(|f| maps.iter().map(move |g| (f, g)))
                    .map(|(f, g)| inst(f, g, Vec::new()))
                    .collect(),
                _ => unreachable!("map generators only"),
            }
        }
        _ => unreachable!("unit kind follows the generator"),
    }
}

fn spaces_for(t: &Arc<Topology>, tables: bool, seed: u64) -> Vec<Arc<BiOperatorSpace>> {
    if tables {
        operator_samples(t, seed)
    } else {
        vec![Arc::new(BiOperatorSpace::canonical(t.clone()))]
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    hits: u64,
    counterexamples: u64,
    first: Option<Instance>,
}

fn run_unit(law: &Law, unit: Unit, ctx: &Context) -> Tally {
    let mut tally = Tally::default();
    for inst in instances(law, unit, ctx) {
        tally.checked += 1;
        if (law.hypothesis)(&inst) {
            tally.hits += 1;
            if !(law.conclusion)(&inst) {
                tally.counterexamples += 1;
                if tally.first.is_none() {
                    tally.first = Some(inst);
                }
            }
        }
    }
    tally
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn run_law(law: &Law, max_points: usize, seed: u64, pool: &rayon::ThreadPool) -> Result<Report> {
    let start = Instant::now();
    let ctx = Context::new(max_points, seed)?;
    let mut units = units(law.generator, ctx.topologies.len());
    order_units(&mut units, &ctx);
    let tallies: Vec<Tally> = pool.install(|| units.par_iter().map(|&u| run_unit(law, u, &ctx)).collect());
    let mut total = Tally::default();
    for t in tallies {
        total.checked += t.checked;
        total.hits += t.hits;
        total.counterexamples += t.counterexamples;
        if total.first.is_none() {
            total.first = t.first;
        }
    }
    let status = if total.counterexamples > 0 {
        Status::Counterexample
    } else if total.hits == 0 {
        Status::Vacuous
    } else {
        Status::Verified
    };
    Ok(Report {
        law: law.id.to_string(),
        status,
        max_points,
        instances_checked: total.checked,
        hypothesis_hits: total.hits,
        counterexamples: total.counterexamples,
        witness: total.first.as_ref().map(|i| law.witness_to_json(i)),
        trivial_on_finite: law.trivial_on_finite,
        note: law.note.map(str::to_string),
        runtime_ms: start.elapsed().as_millis(),
    })
}

pub fn verify(id: &str, opts: &VerifyOptions) -> Result<Report> {
    let law = find_law(id)?;
    run_law(
        law,
        law.effective_max_points(opts.max_points),
        opts.seed,
        &pool(opts.jobs)?,
    )
}

pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<Report>> {
    let pool = pool(opts.jobs)?;
    LAWS.iter()
        .map(|law| run_law(law, law.effective_max_points(opts.max_points), opts.seed, &pool))
        .collect()
}

/// Re-evaluates a reported witness from its JSON form.
pub fn recheck(id: &str, witness: &Value) -> Result<Outcome> {
    let law = find_law(id)?;
    Ok(law.evaluate(&law.witness_from_json(witness)?))
}

/// JSON array of reports.
pub fn reports_to_json(reports: &[Report]) -> Value {
    json!(reports.iter().map(Report::to_json).collect::<Vec<_>>())
}

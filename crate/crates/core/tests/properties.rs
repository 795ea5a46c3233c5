//! Cross-checks of the engine against small independent oracles: interior
//! and closure by scanning the open family, classes straight from their
//! containment conditions, random preorders for larger spaces.

use std::sync::Arc;

use finitetop::classes::{self, OpenClass};
use finitetop::cover::{minimal_subcover, Compactness};
use finitetop::enumerate::{canonical_form, enumerate_topologies, EnumerationMode};
use finitetop::expr::Expr;
use finitetop::maps::{enumerate_maps, MapFilter, MapView};
use finitetop::operator::{sample_operator, sample_rng, SampleFamily};
use finitetop::{BiOperatorSpace, GroundSet, Preorder, Subset, SubsetFamily, Topology};
use proptest::prelude::*;

fn tops(max: usize) -> Vec<Topology> {
    (1..=max)
        .flat_map(|n| enumerate_topologies(n, EnumerationMode::Labeled).unwrap())
        .collect()
}

fn int_oracle(t: &Topology, s: Subset) -> Subset {
    t.opens()
        .iter()
        .filter(|u| u.is_subset_of(s))
        .fold(Subset::EMPTY, |a, u| a | u)
}

fn cl_oracle(t: &Topology, s: Subset) -> Subset {
    t.opens()
        .iter()
        .map(|u| t.complement(u))
        .filter(|c| s.is_subset_of(*c))
        .fold(t.full(), |a, c| a & c)
}

fn in_class(t: &Topology, class: OpenClass, s: Subset) -> bool {
    let (i, c) = (|x| int_oracle(t, x), |x| cl_oracle(t, x));
    match class {
        OpenClass::Open => i(s) == s,
        OpenClass::RegularOpen => i(c(s)) == s,
        OpenClass::PreOpen => s.is_subset_of(i(c(s))),
        OpenClass::SemiOpen => s.is_subset_of(c(i(s))),
        OpenClass::AlphaOpen => s.is_subset_of(i(c(i(s)))),
        OpenClass::BetaOpen => s.is_subset_of(c(i(c(s)))),
        OpenClass::BOpen => s.is_subset_of(c(i(s)) | i(c(s))),
    }
}

/// Union of class members inside `s`, written without the library's scan.
fn class_int_oracle(t: &Topology, class: OpenClass, s: Subset) -> Subset {
    s.subsets()
        .filter(|&u| in_class(t, class, u))
        .fold(Subset::EMPTY, |a, u| a | u)
}

fn class_cl_oracle(t: &Topology, class: OpenClass, s: Subset) -> Subset {
    t.complement(class_int_oracle(t, class, t.complement(s)))
}

#[test]
fn interior_and_closure_match_the_scans() {
    for t in tops(4) {
        for s in t.ground().subsets() {
            assert_eq!(t.interior(s), int_oracle(&t, s));
            assert_eq!(t.closure(s), cl_oracle(&t, s));
        }
    }
}

#[test]
fn kuratowski_axioms() {
    for t in tops(4) {
        let full = t.full();
        assert_eq!(t.closure(Subset::EMPTY), Subset::EMPTY);
        assert_eq!(t.interior(full), full);
        for a in t.ground().subsets() {
            assert!(a.is_subset_of(t.closure(a)));
            assert_eq!(t.closure(t.closure(a)), t.closure(a));
            assert_eq!(t.interior(a), t.complement(t.closure(t.complement(a))));
            for b in t.ground().subsets() {
                assert_eq!(t.closure(a | b), t.closure(a) | t.closure(b));
                assert_eq!(t.interior(a & b), t.interior(a) & t.interior(b));
            }
        }
    }
}

#[test]
fn class_membership_matches_definitions() {
    for t in tops(4) {
        for s in t.ground().subsets() {
            for class in OpenClass::ALL {
                assert_eq!(class.contains(&t, s), in_class(&t, class, s), "{class:?}");
            }
        }
    }
}

#[test]
fn closed_forms_match_class_scans() {
    for t in tops(4) {
        for s in t.ground().subsets() {
            assert_eq!(classes::p_int(&t, s), class_int_oracle(&t, OpenClass::PreOpen, s));
            assert_eq!(classes::s_int(&t, s), class_int_oracle(&t, OpenClass::SemiOpen, s));
            assert_eq!(classes::p_cl(&t, s), class_cl_oracle(&t, OpenClass::PreOpen, s));
            assert_eq!(classes::s_cl(&t, s), class_cl_oracle(&t, OpenClass::SemiOpen, s));
        }
    }
}

#[test]
fn implication_chain() {
    use OpenClass::*;
    let chain = [
        (Open, AlphaOpen),
        (AlphaOpen, PreOpen),
        (AlphaOpen, SemiOpen),
        (PreOpen, BOpen),
        (SemiOpen, BOpen),
        (BOpen, BetaOpen),
        (RegularOpen, Open),
    ];
    for t in tops(4) {
        for s in t.ground().subsets() {
            for (lo, hi) in chain {
                assert!(!lo.contains(&t, s) || hi.contains(&t, s), "{lo:?} ⊄ {hi:?}");
            }
        }
    }
}

#[test]
fn canonical_b_open_and_b_interior() {
    for t in tops(4) {
        let sp = BiOperatorSpace::canonical(t.clone());
        for s in t.ground().subsets() {
            assert_eq!(sp.is_b_open(s), in_class(&t, OpenClass::BOpen, s));
            assert_eq!(sp.b_interior(s), class_int_oracle(&t, OpenClass::BOpen, s));
            assert_eq!(sp.b_closure(s), t.complement(sp.b_interior(t.complement(s))));
            assert_eq!(sp.b_interior(s), classes::s_int(&t, s) | classes::p_int(&t, s));
        }
    }
}

#[test]
fn labeled_and_canonical_counts() {
    let labeled: Vec<usize> = (1..=6)
        .map(|n| enumerate_topologies(n, EnumerationMode::Labeled).unwrap().len())
        .collect();
    assert_eq!(labeled, [1, 4, 29, 355, 6942, 209527]);
    let canonical: Vec<usize> = (1..=5)
        .map(|n| enumerate_topologies(n, EnumerationMode::Canonical).unwrap().len())
        .collect();
    assert_eq!(canonical, [1, 3, 9, 33, 139]);
}

#[test]
fn preorder_round_trip() {
    for t in tops(5) {
        let p = t.to_preorder();
        assert_eq!(Topology::from_preorder(&p, t.ground().clone()).unwrap(), t);
    }
}

#[test]
fn canonical_form_is_an_invariant() {
    for t in tops(4) {
        let c = canonical_form(&t);
        assert_eq!(canonical_form(&c), c);
        assert_eq!(c.opens().len(), t.opens().len());
    }
}

#[test]
fn graph_forms_agree_and_contra_continuity_implies_contra_b() {
    let ts = tops(3);
    for x in &ts {
        let sp = BiOperatorSpace::canonical(x.clone());
        for y in &ts {
            for f in enumerate_maps(x.len(), y.len(), MapFilter::All).unwrap() {
                let v = MapView::new(&sp, y, &f);
                assert_eq!(v.has_b_regular_graph(), v.has_b_regular_graph_via_rectangles());
                assert!(!v.is_contra_continuous() || v.is_contra_b_continuous());
                assert!(!v.is_contra_b_continuous() || v.is_almost_contra_b_continuous());
            }
        }
    }
}

#[test]
fn compactness_holds_on_enumerated_spaces() {
    let spaces: Vec<Topology> = tops(4).into_iter().take(100).collect();
    assert_eq!(spaces.len(), 100);
    for t in spaces {
        let sp = BiOperatorSpace::canonical(t);
        for c in Compactness::ALL {
            assert!(c.holds(&sp), "{}", c.name());
        }
    }
}

#[test]
fn sampled_operators_are_associated_and_reproducible() {
    for t in tops(3) {
        for (i, fam) in SampleFamily::ALL.into_iter().enumerate() {
            let a = sample_operator(&t, fam, &mut sample_rng(7, t.code(), i as u64));
            let b = sample_operator(&t, fam, &mut sample_rng(7, t.code(), i as u64));
            assert_eq!(a, b);
            assert!(a.is_associated(&t));
        }
    }
}

/// Random preorder on up to `max` points via reflexive-transitive closure.
fn arb_topology(max: usize) -> impl Strategy<Value = Topology> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<u16>(), n).prop_map(move |rows| {
            let mut up: Vec<u32> = rows
                .iter()
                .enumerate()
                .map(|(x, &r)| (r as u32 & ((1 << n) - 1) & rand_mask(x, r)) | 1 << x)
                .collect();
            for k in 0..n {
                for x in 0..n {
                    if up[x] >> k & 1 == 1 {
                        up[x] |= up[k];
                    }
                }
            }
            let p = Preorder::new(up.into_iter().map(Subset::from_bits).collect()).unwrap();
            Topology::from_preorder(&p, GroundSet::standard(n).unwrap()).unwrap()
        })
    })
}

/// Thins the relation so larger spaces are not mostly indiscrete.
fn rand_mask(x: usize, r: u16) -> u32 {
    (r as u32).rotate_left(x as u32 * 3) | (r as u32 >> 5)
}

fn arb_space_and_subset(max: usize) -> impl Strategy<Value = (Topology, Subset)> {
    arb_topology(max).prop_flat_map(|t| {
        let full = t.full().bits();
        (Just(t), (0..=full).prop_map(Subset::from_bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn topology_axioms_hold((t, s) in arb_space_and_subset(9)) {
        let family = t.opens();
        for a in family.iter() {
            for b in family.iter() {
                prop_assert!(family.contains(a | b) && family.contains(a & b));
            }
        }
        prop_assert_eq!(t.interior(s), int_oracle(&t, s));
        prop_assert_eq!(t.closure(t.closure(s)), t.closure(s));
    }

    #[test]
    fn memoized_b_open_matches_classical((t, s) in arb_space_and_subset(9)) {
        let sp = BiOperatorSpace::canonical(Arc::new(t.clone()));
        prop_assert_eq!(sp.is_b_open(s), classes::is_b_open(&t, s));
        prop_assert_eq!(sp.b_closure(s), classes::s_cl(&t, s) & classes::p_cl(&t, s));
    }

    #[test]
    fn preimage_algebra(
        (t, a) in arb_space_and_subset(5),
        b in any::<u32>(),
        raw in proptest::collection::vec(any::<usize>(), 5),
        ny in 1usize..5,
    ) {
        let y = Topology::discrete(GroundSet::standard(ny).unwrap());
        let f: Vec<usize> = raw.iter().take(t.len()).map(|v| v % ny).collect();
        let sp = BiOperatorSpace::canonical(t.clone());
        let v = MapView::new(&sp, &y, &f);
        let a = Subset::from_bits(a.bits() & y.full().bits());
        let b = Subset::from_bits(b & y.full().bits());
        prop_assert_eq!(v.preimage(a | b), v.preimage(a) | v.preimage(b));
        prop_assert_eq!(v.preimage(a & b), v.preimage(a) & v.preimage(b));
        prop_assert_eq!(v.preimage(y.complement(a)), t.complement(v.preimage(a)));
        prop_assert!(v.image(v.preimage(a)).is_subset_of(a));
    }

    #[test]
    fn minimal_subcover_is_minimum(sets in proptest::collection::vec(1u32..64, 1..8)) {
        let family: SubsetFamily = sets.iter().map(|&b| Subset::from_bits(b)).collect();
        let carrier = family.union_all();
        let best = minimal_subcover(&family, carrier, family.len()).unwrap();
        prop_assert_eq!(best.union_all(), carrier);
        let members = family.members();
        let brute = (1u32..1 << members.len())
            .filter(|pick| {
                (0..members.len())
                    .filter(|i| pick >> i & 1 == 1)
                    .fold(Subset::EMPTY, |a, i| a | members[i]) == carrier
            })
            .map(|pick| pick.count_ones() as usize)
            .min()
            .unwrap();
        prop_assert_eq!(best.len(), brute);
    }

    #[test]
    fn expressions_round_trip(ops in proptest::collection::vec(0usize..16, 1..12)) {
        const ATOMS: [&str; 8] = ["open", "closed", "b_open", "B_open", "pre_open", "semi_open", "t_star_open(2)", "B_dense"];
        let mut src = String::from(ATOMS[ops[0] % 8]);
        for &o in &ops[1..] {
            let atom = ATOMS[o % 8];
            src = match o / 8 {
                0 => format!("({src}) & !{atom}"),
                _ => format!("{atom} | ({src})"),
            };
        }
        let e = Expr::parse(&src).unwrap();
        prop_assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
    }
}

//! Functions between finite spaces: continuity variants, graph predicates and
//! separation properties of the codomain.

use std::sync::Arc;

use crate::classes::{is_regular_closed, is_regular_open};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::space::BiOperatorSpace;
use crate::subset::Subset;
use crate::topology::{product, rectangle, Topology};

/// Borrowed view of a map; all predicates live here so instance loops
/// can run without allocating.
#[derive(Clone, Copy, Debug)]
pub struct MapView<'a> {
    pub domain: &'a BiOperatorSpace,
    pub codomain: &'a Topology,
    pub assignment: &'a [usize],
}

impl<'a> MapView<'a> {
    pub fn new(domain: &'a BiOperatorSpace, codomain: &'a Topology, assignment: &'a [usize]) -> Self {
        debug_assert_eq!(assignment.len(), domain.len());
        MapView {
            domain,
            codomain,
            assignment,
        }
    }

    fn x(&self) -> &Topology {
        self.domain.topology()
    }

    pub fn preimage(&self, v: Subset) -> Subset {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &y)| v.contains(y))
            .fold(Subset::EMPTY, |acc, (x, _)| acc.with(x))
    }

    pub fn image(&self, u: Subset) -> Subset {
        u.points().fold(Subset::EMPTY, |acc, x| acc.with(self.assignment[x]))
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.full()) == self.codomain.full()
    }

    pub fn is_injective(&self) -> bool {
        self.image(self.domain.full()).len() == self.assignment.len()
    }

    /// `G(f)` as a subset of `X × Y` indexed like [`product`].
    pub fn graph(&self) -> Subset {
        let ny = self.codomain.len();
        self.assignment
            .iter()
            .enumerate()
            .fold(Subset::EMPTY, |acc, (x, &y)| acc.with(x * ny + y))
    }

    fn regular_opens(&self) -> impl Iterator<Item = Subset> + '_ {
        let y = self.codomain;
        y.ground().subsets().filter(move |&v| is_regular_open(y, v))
    }

    fn regular_closeds(&self) -> impl Iterator<Item = Subset> + '_ {
        let y = self.codomain;
        y.ground().subsets().filter(move |&v| is_regular_closed(y, v))
    }

    /// Preimages of open sets are closed.
    pub fn is_contra_continuous(&self) -> bool {
        self.codomain
            .opens()
            .iter()
            .all(|v| self.x().is_closed(self.preimage(v)))
    }

    /// Preimages of open sets are B-closed.
    pub fn is_contra_b_continuous(&self) -> bool {
        self.codomain
            .opens()
            .iter()
            .all(|v| self.domain.is_b_closed(self.preimage(v)))
    }

    /// Preimages of regular open sets are B-closed.
    pub fn is_almost_contra_b_continuous(&self) -> bool {
        self.regular_opens().all(|v| self.domain.is_b_closed(self.preimage(v)))
    }

    /// Preimages of regular open sets are open.
    pub fn is_almost_continuous(&self) -> bool {
        self.regular_opens().all(|v| self.x().is_open(self.preimage(v)))
    }

    /// Preimages of regular closed sets are regular open.
    pub fn is_r_continuous(&self) -> bool {
        self.regular_closeds()
            .all(|v| is_regular_open(self.x(), self.preimage(v)))
    }

    /// For each `x` and regular open `V ∋ f(x)` some B-open `U ∋ x` has `f(U) ⊆ Cl(V)`.
    pub fn is_almost_weakly_b_continuous(&self) -> bool {
        let b_opens: Vec<Subset> = self.domain.b_open_sets().collect();
        self.regular_opens().all(|v| {
            let target = self.codomain.closure(v);
            self.preimage(v).points().all(|x| {
                b_opens
                    .iter()
                    .any(|&u| u.contains(x) && self.image(u).is_subset_of(target))
            })
        })
    }

    /// Off-graph points `(x, y)` are separated by a B-closed `U ∋ x` and a
    /// `V ∋ y` from `witnesses` with `f(U) ∩ V = ∅`.
    fn graph_separated(&self, witnesses: &[Subset]) -> bool {
        let b_closed: Vec<Subset> = self.domain.b_closed_sets().collect();
        let ny = self.codomain.len();
        (0..self.assignment.len()).all(|x| {
            (0..ny).filter(|&y| y != self.assignment[x]).all(|y| {
                b_closed.iter().filter(|u| u.contains(x)).any(|&u| {
                    let fu = self.image(u);
                    witnesses.iter().any(|&v| v.contains(y) && !v.intersects(fu))
                })
            })
        })
    }

    /// B-regular graph: separation by B-closed × regular open rectangles.
    pub fn has_b_regular_graph(&self) -> bool {
        let vs: Vec<Subset> = self.regular_opens().collect();
        self.graph_separated(&vs)
    }

    /// Contra-B-closed graph: separation by B-closed × regular closed rectangles.
    pub fn has_contra_b_closed_graph(&self) -> bool {
        let vs: Vec<Subset> = self.regular_closeds().collect();
        self.graph_separated(&vs)
    }

    /// Same predicate as [`has_b_regular_graph`](Self::has_b_regular_graph), phrased
    /// as `(U × V) ∩ G(f) = ∅` inside `X × Y`.
    pub fn has_b_regular_graph_via_rectangles(&self) -> bool {
        let ny = self.codomain.len();
        let g = self.graph();
        let b_closed: Vec<Subset> = self.domain.b_closed_sets().collect();
        let vs: Vec<Subset> = self.regular_opens().collect();
        (0..self.assignment.len()).all(|x| {
            (0..ny).filter(|&y| y != self.assignment[x]).all(|y| {
                b_closed
                    .iter()
                    .filter(|u| u.contains(x))
                    .any(|&u| vs.iter().any(|&v| v.contains(y) && !rectangle(u, v, ny).intersects(g)))
            })
        })
    }
}

/// A map between finite spaces, owning its endpoints.
#[derive(Clone, Debug)]
pub struct FiniteMap {
    domain: Arc<BiOperatorSpace>,
    codomain: Arc<Topology>,
    codomain_space: Option<Arc<BiOperatorSpace>>,
    assignment: Vec<usize>,
}

impl FiniteMap {
    pub fn new(domain: Arc<BiOperatorSpace>, codomain: Arc<Topology>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::DomainMismatch(format!(
                "assignment has {} entries, domain has {} points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&y) = assignment.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::DomainMismatch(format!("image index {y} outside codomain")));
        }
        Ok(FiniteMap {
            domain,
            codomain,
            codomain_space: None,
            assignment,
        })
    }

    /// Attaches operator structure to the codomain; predicates that only
    /// look at the codomain topology ignore it.
    pub fn with_codomain_space(mut self, space: Arc<BiOperatorSpace>) -> Result<Self> {
        if space.topology() != self.codomain.as_ref() {
            return Err(Error::DomainMismatch("codomain space has a different topology".into()));
        }
        self.codomain_space = Some(space);
        Ok(self)
    }

    pub fn view(&self) -> MapView<'_> {
        MapView::new(&self.domain, &self.codomain, &self.assignment)
    }

    pub fn domain(&self) -> &Arc<BiOperatorSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Topology> {
        &self.codomain
    }

    pub fn codomain_space(&self) -> Option<&Arc<BiOperatorSpace>> {
        self.codomain_space.as_ref()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// `g(x) = (x, f(x))` into `X × Y`, with the domain's named operators
/// re-instantiated on the product.
pub fn graph_map(m: &FiniteMap) -> Result<FiniteMap> {
    let named = m
        .domain
        .named_operators()
        .ok_or_else(|| Error::UnsupportedOperators("graph maps need named operators on the domain".into()))?;
    let x = m.domain.topology();
    let prod = Arc::new(product(x, &m.codomain)?);
    let ny = m.codomain.len();
    let assignment = m.assignment.iter().enumerate().map(|(i, &y)| i * ny + y).collect();
    let ops = named.into_iter().map(Operator::Named).collect();
    let prod_space = Arc::new(BiOperatorSpace::new(prod.clone(), ops)?);
    FiniteMap::new(m.domain.clone(), prod, assignment)?.with_codomain_space(prod_space)
}

/// Distinct points have open neighbourhoods with disjoint closures.
pub fn is_urysohn(t: &Topology) -> bool {
    let n = t.len();
    // Minimal neighbourhoods have the smallest closures, so they suffice.
    (0..n).all(|x| {
        (0..n)
            .filter(|&y| y != x)
            .all(|y| !t.closure(t.min_nbhd(x)).intersects(t.closure(t.min_nbhd(y))))
    })
}

/// Each point is the intersection of the regular closed sets containing it.
pub fn is_weakly_hausdorff(t: &Topology) -> bool {
    let regular: Vec<Subset> = t.ground().subsets().filter(|&c| is_regular_closed(t, c)).collect();
    (0..t.len()).all(|x| {
        regular
            .iter()
            .filter(|c| c.contains(x))
            .fold(t.full(), |acc, &c| acc & c)
            == Subset::singleton(x)
    })
}

pub fn is_discrete(t: &Topology) -> bool {
    t.is_discrete()
}

/// `{x | f(x) = g(x)}`.
pub fn equalizer(m1: &FiniteMap, m2: &FiniteMap) -> Result<Subset> {
    if m1.domain.topology() != m2.domain.topology() || m1.codomain != m2.codomain {
        return Err(Error::DomainMismatch("maps must share domain and codomain".into()));
    }
    Ok(equalizer_of(&m1.assignment, &m2.assignment))
}

pub fn equalizer_of(f: &[usize], g: &[usize]) -> Subset {
    f.iter()
        .zip(g)
        .enumerate()
        .filter(|(_, (a, b))| a == b)
        .fold(Subset::EMPTY, |acc, (x, _)| acc.with(x))
}

/// Largest number of maps [`enumerate_maps`] will produce.
pub const MAX_MAPS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MapFilter {
    #[default]
    All,
    Surjective,
    Injective,
}

/// All assignments `X → Y` in lexicographic order (first point most significant).
pub fn enumerate_maps(nx: usize, ny: usize, filter: MapFilter) -> Result<Vec<Vec<usize>>> {
    let total = (ny as u128).checked_pow(nx as u32).unwrap_or(u128::MAX);
    if total > MAX_MAPS as u128 {
        return Err(Error::SizeExceeded {
            what: "number of maps",
            actual: total.min(usize::MAX as u128) as usize,
            limit: MAX_MAPS,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0usize; nx];
    for _ in 0..total {
        let keep = match filter {
            MapFilter::All => true,
            MapFilter::Surjective => (0..ny).all(|y| cur.contains(&y)),
            MapFilter::Injective => (0..nx).all(|i| !cur[..i].contains(&cur[i])),
        };
        if keep {
            out.push(cur.clone());
        }
        // increment, last point fastest
        for i in (0..nx).rev() {
            cur[i] += 1;
            if cur[i] < ny {
                break;
            }
            cur[i] = 0;
        }
    }
    Ok(out)
}

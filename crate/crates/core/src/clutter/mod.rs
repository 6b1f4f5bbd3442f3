//! Clutters (simple hypergraphs), their edge ideals and combinatorial invariants.

mod complex;
mod graph;
mod vertex_set;

pub use complex::SimplicialComplex;
pub use graph::{Graph, StructuralFlags};
pub use vertex_set::{lex_cmp, VertexSet, MAX_VERTICES};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Ring};
use crate::vnumber;

/// A vertex set `{0, ..., n-1}` with an inclusion-antichain of non-empty edges.
///
/// Edges are kept in canonical order (lexicographic on sorted vertex lists).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: usize,
    edges: Vec<VertexSet>,
}

/// `alpha_0`, `beta_0` and the minimal vertex covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverNumbers {
    pub alpha0: usize,
    pub beta0: usize,
    pub minimal_covers: Vec<VertexSet>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            vertices: n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

pub(crate) fn sort_sets(sets: &mut [VertexSet]) {
    sets.sort_by(|a, b| lex_cmp(*a, *b));
}

/// Keeps only the inclusion-minimal sets, in canonical order.
pub(crate) fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| (s.len(), s.0));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    sort_sets(&mut kept);
    kept
}

impl Clutter {
    /// Validates an edge list: non-empty edges inside the vertex range that
    /// form an antichain under inclusion.
    pub fn new(n: usize, mut edges: Vec<VertexSet>) -> Result<Self> {
        check_size(n)?;
        let full = VertexSet::full(n);
        for e in &edges {
            if e.is_empty() {
                return Err(Error::InvalidClutter("empty edge".into()));
            }
            if !e.is_subset(full) {
                return Err(Error::InvalidClutter(format!(
                    "edge {:?} uses a vertex outside 1..={n}",
                    e
                )));
            }
        }
        sort_sets(&mut edges);
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidClutter("repeated edge".into()));
        }
        for (a, ea) in edges.iter().enumerate() {
            for (b, eb) in edges.iter().enumerate() {
                if a != b && ea.is_subset(*eb) {
                    return Err(Error::InvalidClutter(format!(
                        "edge {:?} is contained in edge {:?}",
                        ea, eb
                    )));
                }
            }
        }
        Ok(Clutter { n, edges })
    }

    /// Like [`new`](Self::new) but silently keeps only minimal edges.
    pub fn from_edges_minimalized(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        Clutter::new(n, minimal_sets(edges))
    }

    /// Edges given as one-based vertex lists.
    pub fn from_one_based(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(edges.len());
        for e in edges {
            if e.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidClutter(format!(
                    "edge {e:?} uses a vertex outside 1..={n}"
                )));
            }
            sets.push(e.iter().map(|v| v - 1).collect());
        }
        Clutter::new(n, sets)
    }

    /// The clutter of a square-free proper ideal.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        ideal.require_proper()?;
        if !ideal.is_squarefree() {
            return Err(Error::NotSquareFree);
        }
        let n = ideal.nvars();
        check_size(n)?;
        let edges = ideal
            .generators()
            .iter()
            .map(|g| g.support().into_iter().collect())
            .collect();
        Clutter::new(n, edges)
    }

    pub fn nvertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn one_based_edges(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.one_based()).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// `I(C) = <X_e : e in E(C)>`.
    pub fn edge_ideal(&self) -> Result<MonomialIdeal> {
        let gens = self
            .edges
            .iter()
            .map(|e| Monomial::from_support(self.n, e.iter()))
            .collect();
        MonomialIdeal::new(Ring::standard(self.n.max(1)), gens)
    }

    pub fn is_stable(&self, a: VertexSet) -> bool {
        !self.edges.iter().any(|e| e.is_subset(a))
    }

    pub fn is_vertex_cover(&self, c: VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(c))
    }

    /// `N(A)`: vertices `x` such that `{x} ∪ A` contains an edge.
    pub fn neighbor_set(&self, a: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for e in &self.edges {
            let rest = e.difference(a);
            match rest.len() {
                0 => return self.vertices(),
                1 => out = out.union(rest),
                _ => {}
            }
        }
        out
    }

    /// Calls `visit` on every stable subset of `candidates` with `size`
    /// elements, in lexicographic order, until it returns `true`.
    pub fn for_each_stable_subset_of_size(
        &self,
        candidates: &[usize],
        size: usize,
        visit: &mut dyn FnMut(VertexSet) -> bool,
    ) -> bool {
        let incident: Vec<Vec<VertexSet>> = (0..self.n)
            .map(|v| self.edges.iter().copied().filter(|e| e.contains(v)).collect())
            .collect();
        fn rec(
            incident: &[Vec<VertexSet>],
            candidates: &[usize],
            start: usize,
            left: usize,
            current: VertexSet,
            visit: &mut dyn FnMut(VertexSet) -> bool,
        ) -> bool {
            if left == 0 {
                return visit(current);
            }
            if candidates.len() - start < left {
                return false;
            }
            for k in start..=candidates.len() - left {
                let v = candidates[k];
                let next = current.with(v);
                if incident[v].iter().any(|e| e.is_subset(next)) {
                    continue;
                }
                if rec(incident, candidates, k + 1, left - 1, next, visit) {
                    return true;
                }
            }
            false
        }
        rec(&incident, candidates, 0, size, VertexSet::EMPTY, visit)
    }

    /// Inclusion-minimal vertex covers in canonical order, by Berge's
    /// incremental transversal algorithm.
    pub fn minimal_vertex_covers(&self) -> Vec<VertexSet> {
        let mut covers = vec![VertexSet::EMPTY];
        let mut by_size = self.edges.clone();
        by_size.sort_by_key(|e| e.len());
        for e in by_size {
            let mut next = Vec::with_capacity(covers.len() * 2);
            for t in &covers {
                if t.intersects(e) {
                    next.push(*t);
                } else {
                    next.extend(e.iter().map(|v| t.with(v)));
                }
            }
            covers = minimal_sets(next);
        }
        sort_sets(&mut covers);
        covers
    }

    pub fn cover_numbers(&self) -> CoverNumbers {
        let minimal_covers = self.minimal_vertex_covers();
        let alpha0 = minimal_covers.iter().map(|c| c.len()).min().unwrap_or(0);
        CoverNumbers {
            alpha0,
            beta0: self.n - alpha0,
            minimal_covers,
        }
    }

    /// Complements of the minimal vertex covers, in canonical order.
    pub fn maximal_stable_sets(&self) -> Vec<VertexSet> {
        let full = self.vertices();
        let mut sets: Vec<VertexSet> = self
            .minimal_vertex_covers()
            .into_iter()
            .map(|c| full.difference(c))
            .collect();
        sort_sets(&mut sets);
        sets
    }

    /// The clutter whose edges are the minimal vertex covers of `self`.
    pub fn dual(&self) -> Result<Clutter> {
        let covers = self.minimal_vertex_covers();
        if covers.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidClutter(
                "an edgeless clutter has no proper Alexander dual".into(),
            ));
        }
        Clutter::new(self.n, covers)
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets_unchecked(self.n, self.maximal_stable_sets())
    }

    /// Largest `Σ(|e| - 1)` over induced matchings: pairwise disjoint edges
    /// whose union spans no further edge.
    pub fn induced_matching_weight(&self) -> usize {
        fn rec(edges: &[VertexSet], start: usize, chosen: &mut Vec<usize>, union: VertexSet, weight: usize, best: &mut usize) {
            *best = (*best).max(weight);
            for k in start..edges.len() {
                let e = edges[k];
                if e.intersects(union) {
                    continue;
                }
                let next = union.union(e);
                chosen.push(k);
                let induced = edges
                    .iter()
                    .enumerate()
                    .all(|(j, f)| !f.is_subset(next) || chosen.contains(&j));
                if induced {
                    rec(edges, k + 1, chosen, next, weight + e.len() - 1, best);
                }
                chosen.pop();
            }
        }
        let mut best = 0;
        rec(&self.edges, 0, &mut Vec::new(), VertexSet::EMPTY, 0, &mut best);
        best
    }

    /// Largest number of edges in an induced matching.
    pub fn induced_matching_size(&self) -> usize {
        fn rec(edges: &[VertexSet], start: usize, chosen: &mut Vec<usize>, union: VertexSet, best: &mut usize) {
            *best = (*best).max(chosen.len());
            for k in start..edges.len() {
                let e = edges[k];
                if e.intersects(union) {
                    continue;
                }
                let next = union.union(e);
                chosen.push(k);
                let induced = edges
                    .iter()
                    .enumerate()
                    .all(|(j, f)| !f.is_subset(next) || chosen.contains(&j));
                if induced {
                    rec(edges, k + 1, chosen, next, best);
                }
                chosen.pop();
            }
        }
        let mut best = 0;
        rec(&self.edges, 0, &mut Vec::new(), VertexSet::EMPTY, &mut best);
        best
    }

    /// The induced clutter on `keep`, renumbered in increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Clutter {
        let map = renumbering(self.n, keep);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.is_subset(keep))
            .map(|e| e.relabel(&map))
            .collect();
        Clutter::new(keep.len(), edges).expect("induced clutters stay antichains")
    }

    /// `C \ A`: drop the vertices of `A` and every edge meeting them.
    pub fn delete_vertices(&self, a: VertexSet) -> Clutter {
        self.induced(self.vertices().difference(a))
    }

    /// Vertices of `other` are shifted after those of `self`.
    pub fn disjoint_union(&self, other: &Clutter) -> Result<Clutter> {
        let shift = self.n;
        check_size(self.n + other.n)?;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| VertexSet(e.0 << shift)));
        Clutter::new(self.n + other.n, edges)
    }

    /// Connected as a hypergraph on all of its vertices.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = VertexSet::singleton(0);
        loop {
            let mut grown = seen;
            for e in &self.edges {
                if e.intersects(grown) {
                    grown = grown.union(*e);
                }
            }
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen == self.vertices()
    }

    /// `v(I(C))`, taking the zero ideal of an edgeless clutter to be prime
    /// (so its v-number is 0).
    pub fn v_number(&self) -> u64 {
        if self.edges.is_empty() {
            return 0;
        }
        vnumber::v_number_squarefree(self)
            .expect("non-empty clutters always have a v-number witness")
            .degree
    }
}

/// `old vertex -> new vertex` for the members of `keep`.
pub(crate) fn renumbering(n: usize, keep: VertexSet) -> Vec<Option<usize>> {
    let mut map = vec![None; n];
    for (new, old) in keep.iter().enumerate() {
        map[old] = Some(new);
    }
    map
}

/// `I^∨`, generated by the monomials of the minimal vertex covers.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let clutter = Clutter::from_ideal(ideal)?;
    let dual = clutter.dual()?;
    let gens = dual
        .edges()
        .iter()
        .map(|c| Monomial::from_support(ideal.nvars(), c.iter()))
        .collect();
    MonomialIdeal::new(ideal.ring().clone(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn c5() -> Clutter {
        Clutter::from_one_based(5, &[vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 5], vec![4, 5]]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn edge_ideal_round_trip() {
        let i = c5().edge_ideal().unwrap();
        assert_eq!(
            parse_ideal("x1*x2, x1*x3, x2*x4, x3*x5, x4*x5").unwrap(),
            i
        );
        assert_eq!(Clutter::from_ideal(&i).unwrap(), c5());
        let tri = Clutter::from_one_based(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(tri.edge_ideal().unwrap().to_string(), "x1*x2*x3");
        assert_eq!(Clutter::from_ideal(&parse_ideal("x1^2").unwrap()), Err(Error::NotSquareFree));
    }

    #[test]
    fn invalid_clutters_are_rejected() {
        assert!(Clutter::from_one_based(3, &[vec![1, 2], vec![1, 2, 3]]).is_err());
        assert!(Clutter::from_one_based(2, &[vec![1, 3]]).is_err());
        assert!(Clutter::from_one_based(2, &[vec![]]).is_err());
        assert!(Clutter::new(129, vec![]).is_err());
    }

    #[test]
    fn neighbor_sets() {
        assert_eq!(c5().neighbor_set(set(&[1])), set(&[2, 3]));
        let tri = Clutter::from_one_based(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(tri.neighbor_set(set(&[1, 2])), set(&[3]));
        let nb = c5().neighbor_set(set(&[1, 4]));
        assert_eq!(nb, set(&[2, 3, 5]));
        assert!(c5().is_vertex_cover(nb));
    }

    #[test]
    fn cover_numbers() {
        let c = c5().cover_numbers();
        assert_eq!((c.alpha0, c.beta0), (3, 2));
        assert_eq!(c.minimal_covers.len(), 5);
        let edge = Clutter::from_one_based(2, &[vec![1, 2]]).unwrap().cover_numbers();
        assert_eq!(edge.alpha0, 1);
        assert_eq!(edge.minimal_covers, vec![set(&[1]), set(&[2])]);
    }

    #[test]
    fn alexander_duals() {
        let d = alexander_dual(&parse_ideal("x1*x2").unwrap()).unwrap();
        assert_eq!(d, parse_ideal("x1, x2").unwrap());
        let d5 = alexander_dual(&c5().edge_ideal().unwrap()).unwrap();
        assert_eq!(d5.generators().len(), 5);
        assert!(d5.generators().iter().all(|g| g.degree() == 3));
        assert_eq!(alexander_dual(&d5).unwrap(), c5().edge_ideal().unwrap());
    }

    #[test]
    fn induced_matching_weights() {
        let one = Clutter::from_one_based(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(one.induced_matching_weight(), 2);
        let two = Clutter::from_one_based(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(two.induced_matching_weight(), 3);
        assert_eq!(c5().induced_matching_weight(), 1);
    }

    #[test]
    fn independence_complex_facets() {
        let edge = Clutter::from_one_based(2, &[vec![1, 2]]).unwrap();
        assert_eq!(edge.independence_complex().facets(), &[set(&[1]), set(&[2])]);
    }

    #[test]
    fn connectivity_and_unions() {
        assert!(c5().is_connected());
        let u = c5().disjoint_union(&c5()).unwrap();
        assert!(!u.is_connected());
        assert_eq!(u.v_number(), 2 * c5().v_number());
    }
}

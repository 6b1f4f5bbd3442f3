use std::collections::HashMap;

use super::{minimal_sets, sort_sets, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A simplicial complex on `{0, ..., n-1}` given by its facets.
///
/// No facets at all is the void complex; the single facet `∅` is the
/// complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// Keeps only the inclusion-maximal sets, in canonical order.
fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.0));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    sort_sets(&mut kept);
    kept
}

impl SimplicialComplex {
    /// Generated by `faces`; non-maximal entries are dropped.
    pub fn generated_by(n: usize, faces: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                vertices: n,
                max: MAX_VERTICES,
            });
        }
        if faces.iter().any(|f| !f.is_subset(VertexSet::full(n))) {
            return Err(Error::InvalidClutter("face outside the vertex range".into()));
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_sets(faces),
        })
    }

    pub(crate) fn from_facets_unchecked(n: usize, mut facets: Vec<VertexSet>) -> Self {
        sort_sets(&mut facets);
        SimplicialComplex { n, facets }
    }

    pub fn nvertices(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `-1` for `{∅}`; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn contains_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    /// Vertices lying in some face.
    pub fn support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    /// All faces (including `∅` when non-void), grouped by size.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let top = self.facets.iter().map(|f| f.len()).max();
        let Some(top) = top else {
            return Vec::new();
        };
        let mut seen = std::collections::HashSet::new();
        let mut by_size = vec![Vec::new(); top + 1];
        for &f in &self.facets {
            let mut sub: u128 = f.0;
            loop {
                let face = VertexSet(sub);
                if seen.insert(face) {
                    by_size[face.len()].push(face);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f.0;
            }
        }
        for level in &mut by_size {
            sort_sets(level);
        }
        by_size
    }

    /// `Δ|_W`: faces contained in `w`.
    pub fn restriction(&self, w: VertexSet) -> SimplicialComplex {
        let faces = self.facets.iter().map(|f| f.intersection(w)).collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(faces),
        }
    }

    /// `del(v)`: faces avoiding `v`.
    pub fn deletion(&self, v: usize) -> SimplicialComplex {
        self.restriction(VertexSet::full(self.n).without(v))
    }

    /// `lk(F)`: faces `G` disjoint from `F` with `F ∪ G` a face.
    pub fn link(&self, f: VertexSet) -> SimplicialComplex {
        let faces = self
            .facets
            .iter()
            .filter(|g| f.is_subset(**g))
            .map(|g| g.difference(f))
            .collect();
        SimplicialComplex {
            n: self.n,
            facets: maximal_sets(faces),
        }
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Recursive vertex decomposability with memoization on the facet list.
    pub fn is_vertex_decomposable(&self) -> bool {
        let mut memo = HashMap::new();
        vertex_decomposable(&self.facets, &mut memo)
    }

    /// The facets of the Stanley–Reisner clutter: minimal non-faces.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let mut cands = Vec::new();
        for v in 0..self.n {
            if !self.contains_face(VertexSet::singleton(v)) {
                cands.push(VertexSet::singleton(v));
            }
        }
        for level in self.faces_by_size() {
            for f in level {
                for v in 0..self.n {
                    if !f.contains(v) && !self.contains_face(f.with(v)) {
                        cands.push(f.with(v));
                    }
                }
            }
        }
        minimal_sets(cands)
    }
}

fn vertex_decomposable(facets: &[VertexSet], memo: &mut HashMap<Vec<VertexSet>, bool>) -> bool {
    if facets.len() <= 1 {
        return true;
    }
    if let Some(&hit) = memo.get(facets) {
        return hit;
    }
    let support = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
    let result = support.iter().any(|v| {
        let del = maximal_sets(facets.iter().map(|f| f.without(v)).collect());
        let lk = maximal_sets(
            facets
                .iter()
                .filter(|f| f.contains(v))
                .map(|f| f.without(v))
                .collect(),
        );
        // Shedding: no facet of the link is a facet of the deletion.
        let shedding = !lk.iter().any(|f| del.contains(f));
        shedding && vertex_decomposable(&lk, memo) && vertex_decomposable(&del, memo)
    });
    memo.insert(facets.to_vec(), result);
    result
}

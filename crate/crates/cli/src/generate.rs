//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use vnumkit_core::{Clutter, Graph, Monomial, MonomialIdeal, Ring, VertexSet};

/// Uniform labeled graph with independent edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid by construction")
}

/// Rejection sampling of [`random_graph`] until connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random bipartition, then independent edges across it.
pub fn random_bipartite_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid by construction")
}

/// Each new vertex is joined to a random clique of the current graph, so the
/// reverse insertion order is a perfect elimination ordering.
pub fn random_chordal_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut adj = vec![VertexSet::EMPTY; n];
    for v in 1..n {
        let mut clique = VertexSet::EMPTY;
        let mut candidates = VertexSet::full(v);
        while let Some(u) = pick(rng, candidates) {
            if !rng.gen_bool(p) {
                break;
            }
            clique.insert(u);
            candidates = candidates.intersection(adj[u]);
        }
        for u in clique.iter() {
            edges.push((u, v));
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    Graph::new(n, &edges).expect("valid by construction")
}

fn pick<R: Rng>(rng: &mut R, s: VertexSet) -> Option<usize> {
    let members = s.to_vec();
    members.choose(rng).copied()
}

/// Up to `max_edges` random edges of size `2..=max_size` (size 1 allowed
/// when `allow_singletons`), reduced to an antichain.
pub fn random_clutter<R: Rng>(
    rng: &mut R,
    n: usize,
    max_edges: usize,
    max_size: usize,
    allow_singletons: bool,
) -> Clutter {
    let lo = if allow_singletons { 1 } else { 2.min(n) };
    let hi = max_size.min(n).max(lo);
    let count = rng.gen_range(1..=max_edges.max(1));
    let vertices: Vec<usize> = (0..n).collect();
    let edges: Vec<VertexSet> = (0..count)
        .map(|_| {
            let size = rng.gen_range(lo..=hi);
            vertices.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Clutter::from_edges_minimalized(n, edges).expect("non-empty edges within range")
}

/// A random proper monomial ideal with up to `max_gens` generators.
pub fn random_ideal<R: Rng>(rng: &mut R, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..count)
        .map(|_| {
            let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().all(|&x| x == 0) {
                let i = rng.gen_range(0..n);
                e[i] = rng.gen_range(1..=max_exp.max(1));
            }
            Monomial::from_exponents(e)
        })
        .collect();
    MonomialIdeal::new(Ring::standard(n), gens).expect("non-empty generator list")
}

/// A complete intersection: generators on pairwise disjoint supports.
pub fn random_complete_intersection<R: Rng>(rng: &mut R, n: usize, max_exp: u32) -> MonomialIdeal {
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(rng);
    let k = rng.gen_range(1..=n);
    let mut gens = Vec::with_capacity(k);
    // Split the first vars into k non-empty blocks.
    let used = rng.gen_range(k..=n);
    let mut cuts: Vec<usize> = (1..used).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(used)) {
        let mut e = vec![0u32; n];
        for &v in &vars[start..end] {
            e[v] = rng.gen_range(1..=max_exp.max(1));
        }
        gens.push(Monomial::from_exponents(e));
        start = end;
    }
    MonomialIdeal::new(Ring::standard(n), gens).expect("non-empty generator list")
}

#![allow(dead_code)]

use proptest::prelude::*;
use vnumkit_core::{Clutter, Graph, Monomial, MonomialIdeal, Ring, VertexSet};

/// Proper monomial ideals in at most `max_n` variables with exponents up to `max_e`.
pub fn ideal_strategy(max_n: usize, max_e: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_e, n), 1..=5).prop_map(move |rows| {
            let gens = rows
                .into_iter()
                .map(|mut e| {
                    if e.iter().all(|&x| x == 0) {
                        e[0] = 1;
                    }
                    Monomial::from_exponents(e)
                })
                .collect();
            MonomialIdeal::new(Ring::standard(n), gens).unwrap()
        })
    })
}

/// Clutters with at least one edge on `min_n..=max_n` vertices.
pub fn clutter_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Clutter> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u128..(1u128 << n), 1..=6).prop_map(move |masks| {
            let sets = masks.into_iter().map(VertexSet).collect();
            Clutter::from_edges_minimalized(n, sets).unwrap()
        })
    })
}

/// Labeled graphs with at least one edge.
pub fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (1u64..(1u64 << pairs)).prop_map(move |mask| Graph::from_edge_mask(n, mask))
    })
}

pub fn is_stable(edges: &[Vec<usize>], a: &[usize]) -> bool {
    !edges.iter().any(|e| e.iter().all(|v| a.contains(v)))
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

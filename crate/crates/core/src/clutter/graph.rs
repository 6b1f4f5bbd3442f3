use super::{renumbering, sort_sets, Clutter, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A simple graph on `{0, ..., n-1}` stored as adjacency bitsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructuralFlags {
    pub bipartite: bool,
    pub chordal: bool,
    pub c4c5_free: bool,
    pub unicyclic: bool,
    pub connected: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                vertices: n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Zero-based edge pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) uses a vertex outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if g.adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!("repeated edge ({}, {})", u + 1, v + 1)));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(Error::InvalidGraph("vertices are numbered from 1".into()));
        }
        let zero: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        Graph::new(n, &zero)
    }

    pub fn from_clutter(c: &Clutter) -> Result<Self> {
        if !c.is_graph() {
            return Err(Error::InvalidGraph("every edge must have two vertices".into()));
        }
        let edges: Vec<(usize, usize)> = c
            .edges()
            .iter()
            .map(|e| {
                let v = e.to_vec();
                (v[0], v[1])
            })
            .collect();
        Graph::new(c.nvertices(), &edges)
    }

    /// The labeled graph whose edges are the pairs `(u, v)`, `u < v`, selected
    /// by the bits of `mask` in lexicographic pair order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n).expect("small graph");
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn to_clutter(&self) -> Clutter {
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| VertexSet::singleton(u).with(v))
            .collect();
        Clutter::new(self.nvertices(), edges).expect("simple graphs are clutters")
    }

    pub fn nvertices(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.nvertices())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Union of `N[v]` over `v` in `a`.
    pub fn closed_neighborhood(&self, a: VertexSet) -> VertexSet {
        a.iter().fold(a, |acc, v| acc.union(self.adj[v]))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for v in nb.iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn one_based_edges(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().map(|(u, v)| (u + 1, v + 1)).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    pub fn is_clique(&self, a: VertexSet) -> bool {
        a.iter().all(|v| a.without(v).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, a: VertexSet) -> bool {
        a.iter().all(|v| !self.adj[v].intersects(a))
    }

    /// `L(G)`: vertex `i` stands for the `i`-th edge of [`edges`](Self::edges).
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut l = Graph::empty(edges.len()).unwrap_or_else(|_| panic!("line graph exceeds {MAX_VERTICES} vertices"));
        for (i, a) in edges.iter().enumerate() {
            for (j, b) in edges.iter().enumerate().skip(i + 1) {
                if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                    l.adj[i].insert(j);
                    l.adj[j].insert(i);
                }
            }
        }
        l
    }

    /// Checked variant of [`line_graph`](Self::line_graph).
    pub fn try_line_graph(&self) -> Result<Graph> {
        let m = self.edge_count();
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                vertices: m,
                max: MAX_VERTICES,
            });
        }
        Ok(self.line_graph())
    }

    /// `G^k`: distinct vertices at distance at most `k` become adjacent.
    pub fn power(&self, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidGraph("graph powers need k >= 1".into()));
        }
        let mut out = Graph::empty(self.nvertices())?;
        for v in 0..self.nvertices() {
            let mut reach = VertexSet::singleton(v);
            for _ in 0..k {
                reach = self.closed_neighborhood(reach);
            }
            out.adj[v] = reach.without(v);
        }
        Ok(out)
    }

    /// `W_G`: vertex `n + i` is a pendant attached to vertex `i`.
    pub fn whisker(&self) -> Result<Graph> {
        let n = self.nvertices();
        let mut edges = self.edges();
        edges.extend((0..n).map(|i| (i, n + i)));
        Graph::new(2 * n, &edges)
    }

    /// `G^S`: a new vertex `n` joined to every vertex outside the stable set `S`.
    pub fn s_suspension(&self, s: VertexSet) -> Result<Graph> {
        let n = self.nvertices();
        if !s.is_subset(self.vertices()) {
            return Err(Error::InvalidGraph("S uses a vertex outside the graph".into()));
        }
        if !self.is_independent(s) {
            return Err(Error::InvalidGraph("S must be a stable set".into()));
        }
        if self.has_isolated_vertex() {
            return Err(Error::InvalidGraph(
                "S-suspension needs a graph without isolated vertices".into(),
            ));
        }
        let mut edges = self.edges();
        edges.extend((0..n).filter(|&i| !s.contains(i)).map(|i| (i, n)));
        Graph::new(n + 1, &edges)
    }

    fn require_edge(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.nvertices() || v >= self.nvertices() || !self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("({}, {}) is not an edge", u + 1, v + 1)));
        }
        Ok(())
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.require_edge(u, v)?;
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        Ok(g)
    }

    /// `G/e`: the endpoints merge into one vertex placed at the smaller
    /// endpoint's index; later vertices shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.require_edge(u, v)?;
        let (a, b) = (u.min(v), u.max(v));
        let n = self.nvertices();
        let map: Vec<usize> = (0..n).map(|x| if x == b { a } else if x > b { x - 1 } else { x }).collect();
        let mut g = Graph::empty(n - 1)?;
        for (x, y) in self.edges() {
            let (p, q) = (map[x], map[y]);
            if p != q {
                g.adj[p].insert(q);
                g.adj[q].insert(p);
            }
        }
        Ok(g)
    }

    /// `G_e`: the induced subgraph on `V \ N[e]`, renumbered.
    pub fn reduced_neighborhood_subgraph(&self, u: usize, v: usize) -> Result<Graph> {
        self.require_edge(u, v)?;
        let closed = self.closed_neighborhood(VertexSet::singleton(u).with(v));
        Ok(self.delete_vertices(closed))
    }

    /// The induced subgraph on `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let map = renumbering(self.nvertices(), keep);
        let adj = keep.iter().map(|v| self.adj[v].intersection(keep).relabel(&map)).collect();
        Graph { adj }
    }

    pub fn delete_vertices(&self, j: VertexSet) -> Graph {
        self.induced(self.vertices().difference(j))
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.nvertices();
        let mut g = Graph::empty(shift + other.nvertices())?;
        g.adj[..shift].copy_from_slice(&self.adj);
        for (v, nb) in other.adj.iter().enumerate() {
            g.adj[shift + v] = VertexSet(nb.0 << shift);
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nvertices();
        if n == 0 {
            return false;
        }
        let mut seen = VertexSet::singleton(0);
        loop {
            let grown = self.closed_neighborhood(seen);
            if grown == seen {
                return seen == self.vertices();
            }
            seen = grown;
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.nvertices();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let c = colour[x].unwrap();
                for y in self.adj[x].iter() {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!c);
                            stack.push(y);
                        }
                        Some(d) if d == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Maximum cardinality search; ties go to the smallest vertex.
    pub fn mcs_order(&self) -> Vec<usize> {
        let n = self.nvertices();
        let mut weight = vec![0usize; n];
        let mut done = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !done.contains(v))
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            order.push(v);
            done.insert(v);
            for w in self.adj[v].difference(done).iter() {
                weight[w] += 1;
            }
        }
        order
    }

    pub fn is_chordal(&self) -> bool {
        let mut earlier = VertexSet::EMPTY;
        for v in self.mcs_order() {
            if !self.is_clique(self.adj[v].intersection(earlier)) {
                return false;
            }
            earlier.insert(v);
        }
        true
    }

    /// No induced 4-cycle and no induced 5-cycle.
    pub fn is_c4c5_free(&self) -> bool {
        fn rec(g: &Graph, start: usize, chosen: VertexSet, left: usize) -> bool {
            if left == 0 {
                // A 2-regular graph on 4 or 5 vertices is a single cycle.
                return chosen.iter().any(|v| g.adj[v].intersection(chosen).len() != 2);
            }
            (start..g.nvertices()).all(|v| {
                let next = chosen.with(v);
                // Every vertex of an induced cycle has at most two neighbours in it.
                let ok = next.iter().all(|w| g.adj[w].intersection(next).len() <= 2);
                !ok || rec(g, v + 1, next, left - 1)
            })
        }
        rec(self, 0, VertexSet::EMPTY, 4) && rec(self, 0, VertexSet::EMPTY, 5)
    }

    /// Counts induced cycles; any count above `limit` is reported as `limit + 1`.
    pub fn count_induced_cycles(&self, limit: usize) -> usize {
        let n = self.nvertices();
        // Each cycle is found once per direction from its smallest vertex.
        let mut directed = 0usize;
        for s in 0..n {
            let allowed = self.vertices().difference(VertexSet::full(s + 1));
            for a in self.adj[s].intersection(allowed).iter() {
                let mut path = vec![s, a];
                let mut on_path = VertexSet::singleton(s).with(a);
                self.extend_chordless(&mut path, &mut on_path, allowed, &mut directed, 2 * limit + 1);
                if directed > 2 * limit {
                    return limit + 1;
                }
            }
        }
        directed / 2
    }

    fn extend_chordless(
        &self,
        path: &mut Vec<usize>,
        on_path: &mut VertexSet,
        allowed: VertexSet,
        found: &mut usize,
        cap: usize,
    ) {
        let s = path[0];
        let x = *path.last().unwrap();
        let interior: VertexSet = path[1..path.len() - 1].iter().copied().collect();
        for y in self.adj[x].intersection(allowed).difference(*on_path).iter() {
            if *found >= cap {
                return;
            }
            if self.adj[y].intersects(interior) {
                continue;
            }
            if self.adj[y].contains(s) {
                *found += 1;
                continue;
            }
            path.push(y);
            on_path.insert(y);
            self.extend_chordless(path, on_path, allowed, found, cap);
            on_path.remove(y);
            path.pop();
        }
    }

    pub fn structural_flags(&self) -> StructuralFlags {
        StructuralFlags {
            bipartite: self.is_bipartite(),
            chordal: self.is_chordal(),
            c4c5_free: self.is_c4c5_free(),
            unicyclic: self.count_induced_cycles(1) == 1,
            connected: self.is_connected(),
        }
    }

    /// `beta_0(G)`, the independence number.
    pub fn independence_number(&self) -> usize {
        fn mis(g: &Graph, p: VertexSet) -> usize {
            let Some(v) = p.iter().max_by_key(|&v| g.adj[v].intersection(p).len()) else {
                return 0;
            };
            let deg = g.adj[v].intersection(p).len();
            if deg == 0 {
                return p.len();
            }
            if let Some(w) = p.iter().find(|&w| g.adj[w].intersection(p).len() <= 1) {
                // A vertex of degree at most one can always be taken.
                return 1 + mis(g, p.difference(g.adj[w]).without(w));
            }
            let with = 1 + mis(g, p.difference(g.adj[v]).without(v));
            let without = mis(g, p.without(v));
            with.max(without)
        }
        mis(self, self.vertices())
    }

    /// `im(G) = beta_0(L^2(G))`.
    pub fn induced_matching_number(&self) -> usize {
        if self.edge_count() == 0 {
            return 0;
        }
        let l2 = self.line_graph().power(2).expect("k = 2");
        l2.independence_number()
    }

    /// Maximal cliques in canonical order (Bron–Kerbosch with pivoting).
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        fn bk(g: &Graph, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
            if p.is_empty() {
                if x.is_empty() {
                    out.push(r);
                }
                return;
            }
            let pivot = p
                .union(x)
                .iter()
                .max_by_key(|&u| g.adj[u].intersection(p).len())
                .unwrap();
            let (mut p, mut x) = (p, x);
            for v in p.difference(g.adj[pivot]).iter() {
                bk(g, r.with(v), p.intersection(g.adj[v]), x.intersection(g.adj[v]), out);
                p.remove(v);
                x.insert(v);
            }
        }
        let mut out = Vec::new();
        if self.nvertices() > 0 {
            bk(self, VertexSet::EMPTY, self.vertices(), VertexSet::EMPTY, &mut out);
        }
        sort_sets(&mut out);
        out
    }

    /// Every non-empty clique, in canonical order.
    pub fn cliques(&self) -> Vec<VertexSet> {
        fn rec(g: &Graph, current: VertexSet, cand: VertexSet, out: &mut Vec<VertexSet>) {
            for v in cand.iter() {
                let next = current.with(v);
                out.push(next);
                let rest = cand.intersection(g.adj[v]).difference(VertexSet::full(v + 1));
                rec(g, next, rest, out);
            }
        }
        let mut out = Vec::new();
        rec(self, VertexSet::EMPTY, self.vertices(), &mut out);
        sort_sets(&mut out);
        out
    }

    /// Fewest cliques whose closed neighbourhoods cover every vertex.
    pub fn clique_domination_number(&self) -> usize {
        let pool: Vec<VertexSet> = self
            .maximal_cliques()
            .into_iter()
            .map(|k| self.closed_neighborhood(k))
            .collect();
        min_cover(self.vertices(), &pool, None)
    }

    /// As [`clique_domination_number`](Self::clique_domination_number) with
    /// the cliques required to be pairwise disjoint.
    pub fn disjoint_clique_domination_number(&self) -> usize {
        let cliques = self.cliques();
        let pool: Vec<VertexSet> = cliques.iter().map(|&k| self.closed_neighborhood(k)).collect();
        min_cover(self.vertices(), &pool, Some(&cliques))
    }
}

/// Smallest number of `pool` entries covering `target`, by iterative deepening
/// on the lowest uncovered vertex. With `bodies`, chosen entries must have
/// pairwise disjoint bodies.
fn min_cover(target: VertexSet, pool: &[VertexSet], bodies: Option<&[VertexSet]>) -> usize {
    fn rec(
        uncovered: VertexSet,
        used: VertexSet,
        depth: usize,
        pool: &[VertexSet],
        bodies: Option<&[VertexSet]>,
    ) -> bool {
        let Some(u) = uncovered.first() else {
            return true;
        };
        if depth == 0 {
            return false;
        }
        pool.iter().enumerate().any(|(k, cover)| {
            if !cover.contains(u) {
                return false;
            }
            let mut next_used = used;
            if let Some(b) = bodies {
                if b[k].intersects(used) {
                    return false;
                }
                next_used = used.union(b[k]);
            }
            rec(uncovered.difference(*cover), next_used, depth - 1, pool, bodies)
        })
    }
    (0..=target.len())
        .find(|&d| rec(target, VertexSet::EMPTY, d, pool, bodies))
        .expect("singleton cliques always cover")
}

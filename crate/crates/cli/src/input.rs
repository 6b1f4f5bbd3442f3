//! Reading ideals, graphs and clutters from text.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use vnumkit_core::parse::parse_ideal_detailed;
use vnumkit_core::{Clutter, Graph, MonomialIdeal};

/// `{"n": 5, "edges": [[1,2],[1,3]]}` with one-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl EdgeListJson {
    pub fn from_graph(g: &Graph) -> Self {
        EdgeListJson {
            n: g.nvertices(),
            edges: g.one_based_edges().into_iter().map(|(u, v)| vec![u, v]).collect(),
        }
    }

    pub fn from_clutter(c: &Clutter) -> Self {
        EdgeListJson {
            n: c.nvertices(),
            edges: c.one_based_edges(),
        }
    }
}

/// A parsed input together with any warnings raised while reading it.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

pub fn parse_ideal_text(text: &str) -> Result<Loaded<MonomialIdeal>> {
    let parsed = parse_ideal_detailed(text)?;
    let warnings = if parsed.dropped_generators > 0 {
        vec![format!(
            "input generators were not minimal; {} redundant generator(s) removed",
            parsed.dropped_generators
        )]
    } else {
        Vec::new()
    };
    Ok(Loaded {
        value: parsed.ideal,
        warnings,
    })
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: EdgeListJson = serde_json::from_str(text).context("graph JSON")?;
    let mut pairs = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        if e.len() != 2 {
            bail!("graph edge {e:?} must have exactly two vertices");
        }
        pairs.push((e[0], e[1]));
    }
    Ok(Graph::from_one_based(raw.n, &pairs)?)
}

pub fn parse_clutter_json(text: &str) -> Result<Clutter> {
    let raw: EdgeListJson = serde_json::from_str(text).context("clutter JSON")?;
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        let mut sorted = e.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            bail!("clutter edge {e:?} repeats a vertex");
        }
        edges.push(sorted);
    }
    Ok(Clutter::from_one_based(raw.n, &edges)?)
}

/// Any of the three input kinds.
#[derive(Debug, Clone)]
pub enum Instance {
    Ideal(MonomialIdeal),
    Graph(Graph),
    Clutter(Clutter),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Ideal(_) => "ideal",
            Instance::Graph(_) => "graph",
            Instance::Clutter(_) => "clutter",
        }
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        Ok(match self {
            Instance::Ideal(i) => i.clone(),
            Instance::Graph(g) => g.to_clutter().edge_ideal()?,
            Instance::Clutter(c) => c.edge_ideal()?,
        })
    }

    /// The clutter of a square-free instance.
    pub fn clutter(&self) -> Option<Clutter> {
        match self {
            Instance::Ideal(i) => Clutter::from_ideal(i).ok(),
            Instance::Graph(g) => Some(g.to_clutter()),
            Instance::Clutter(c) => Some(c.clone()),
        }
    }

    /// The graph of an instance whose edges all have two vertices.
    pub fn graph(&self) -> Option<Graph> {
        match self {
            Instance::Graph(g) => Some(g.clone()),
            _ => self.clutter().and_then(|c| Graph::from_clutter(&c).ok()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Instance::Ideal(i) => i.to_string(),
            Instance::Graph(g) => serde_json::to_string(&EdgeListJson::from_graph(g)).unwrap(),
            Instance::Clutter(c) => serde_json::to_string(&EdgeListJson::from_clutter(c)).unwrap(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_inputs() {
        let i = parse_ideal_text("x1*x2^2, x2*x3^2, x1^2*x3").unwrap();
        assert!(i.warnings.is_empty());
        assert_eq!(i.value.generators().len(), 3);
        let g = parse_graph_json(r#"{"n":5,"edges":[[1,2],[1,3],[2,4],[3,5],[4,5]]}"#).unwrap();
        assert_eq!(g.edge_count(), 5);
        let redundant = parse_ideal_text("x1, x1*x2").unwrap();
        assert_eq!(redundant.value.to_string(), "x1");
        assert_eq!(redundant.warnings.len(), 1);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(parse_graph_json(r#"{"n":3,"edges":[[1,2,3]]}"#).is_err());
        assert!(parse_clutter_json(r#"{"n":3,"edges":[[1,2],[1,2,3]]}"#).is_err());
        assert!(parse_clutter_json(r#"{"n":3,"edges":[[1,1]]}"#).is_err());
        let c = parse_clutter_json(r#"{"n":4,"edges":[[3,2,1],[4,1]]}"#).unwrap();
        assert_eq!(c.one_based_edges(), vec![vec![1, 2, 3], vec![1, 4]]);
    }
}

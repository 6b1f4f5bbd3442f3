//! Serialized instances and finding records.

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use vnumkit_core::{parse_ideal, Clutter, Graph, MonomialIdeal};

use crate::input::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceRecord {
    Graph { n: usize, edges: Vec<Vec<usize>> },
    Clutter { n: usize, edges: Vec<Vec<usize>> },
    Ideal { nvars: usize, ideal: String },
}

impl InstanceRecord {
    pub fn graph(g: &Graph) -> Self {
        InstanceRecord::Graph {
            n: g.nvertices(),
            edges: g.one_based_edges().into_iter().map(|(u, v)| vec![u, v]).collect(),
        }
    }

    pub fn clutter(c: &Clutter) -> Self {
        InstanceRecord::Clutter {
            n: c.nvertices(),
            edges: c.one_based_edges(),
        }
    }

    pub fn ideal(i: &MonomialIdeal) -> Self {
        InstanceRecord::Ideal {
            nvars: i.nvars(),
            ideal: i.to_string(),
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        match instance {
            Instance::Graph(g) => Self::graph(g),
            Instance::Clutter(c) => Self::clutter(c),
            Instance::Ideal(i) => Self::ideal(i),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        Ok(match self {
            InstanceRecord::Graph { n, edges } => {
                let mut pairs = Vec::with_capacity(edges.len());
                for e in edges {
                    if e.len() != 2 {
                        bail!("graph edge {e:?} must have two vertices");
                    }
                    pairs.push((e[0], e[1]));
                }
                Instance::Graph(Graph::from_one_based(*n, &pairs)?)
            }
            InstanceRecord::Clutter { n, edges } => Instance::Clutter(Clutter::from_one_based(*n, edges)?),
            InstanceRecord::Ideal { nvars, ideal } => {
                let parsed = parse_ideal(ideal)?;
                if parsed.nvars() > *nvars {
                    bail!("ideal {ideal} uses more than {nvars} variables");
                }
                Instance::Ideal(parsed.extend_ring(nvars - parsed.nvars()))
            }
        })
    }
}

/// One instance where a check or an open inequality failed, with the values
/// that decided it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingRecord {
    pub check: String,
    pub instance: InstanceRecord,
    pub values: Value,
}

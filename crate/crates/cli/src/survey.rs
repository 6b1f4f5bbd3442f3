//! Randomized search for counterexamples to the open v-number questions.
//!
//! Instances are drawn sequentially from one seeded stream, evaluated in
//! parallel, and reported in trial order.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use vnumkit_core::homology::{self, betti_table_clutter, HomologyOptions};
use vnumkit_core::vnumber::v_number_definition;
use vnumkit_core::{Clutter, MonomialIdeal, VertexSet};

use crate::generate;
use crate::input::Instance;
use crate::record::InstanceRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceClass {
    Graph,
    Bipartite,
    Chordal,
    ConnectedGraph,
    Clutter,
    MonomialIdeal,
}

impl FromStr for InstanceClass {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "graph" => InstanceClass::Graph,
            "bipartite" => InstanceClass::Bipartite,
            "chordal" => InstanceClass::Chordal,
            "connected-graph" => InstanceClass::ConnectedGraph,
            "clutter" => InstanceClass::Clutter,
            "monomial-ideal" => InstanceClass::MonomialIdeal,
            _ => bail!(
                "unknown class {s:?}; expected graph, bipartite, chordal, connected-graph, clutter or monomial-ideal"
            ),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub class: InstanceClass,
    pub n_min: usize,
    pub n_max: usize,
    /// Edge probability for graph classes.
    pub density: f64,
    /// Largest exponent for monomial ideals.
    pub exponent_cap: u32,
    /// Largest edge size for clutters.
    pub max_edge_size: usize,
    pub trials: u64,
    pub seed: u64,
    /// Emit every trial, not only the findings.
    pub all_records: bool,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            class: InstanceClass::ConnectedGraph,
            n_min: 4,
            n_max: 8,
            density: 0.4,
            exponent_cap: 3,
            max_edge_size: 3,
            trials: 1000,
            seed: 0,
            all_records: false,
        }
    }
}

impl SurveyConfig {
    pub fn validate(&self, opts: &HomologyOptions) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            bail!("need 1 <= n_min <= n_max");
        }
        let biggest = match self.class {
            InstanceClass::MonomialIdeal => (self.n_max + 2).min(self.n_max * self.exponent_cap.max(1) as usize),
            _ => self.n_max,
        };
        if biggest > opts.betti_guard {
            bail!(
                "instances may reach size {biggest} for the Betti table; the guard is {} (set VNUMKIT_SIZE_GUARD to raise it)",
                opts.betti_guard
            );
        }
        if !(0.0..=1.0).contains(&self.density) {
            bail!("density must lie in [0, 1]");
        }
        let graphs = !matches!(self.class, InstanceClass::Clutter | InstanceClass::MonomialIdeal);
        if graphs && (self.density == 0.0 || self.n_min < 2) {
            bail!("graph classes need n_min >= 2 and a positive density");
        }
        if matches!(self.class, InstanceClass::Clutter) && self.max_edge_size < 2 {
            bail!("clutter edges need at least two vertices");
        }
        Ok(())
    }
}

/// Invariants of one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub v: u64,
    pub reg: usize,
    pub depth: usize,
    pub dim: usize,
    pub squarefree: bool,
    /// Connected once isolated vertices are ignored.
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_matching_weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub instance: InstanceRecord,
    pub invariants: Invariants,
    /// Each applicable inequality and whether it held.
    pub questions: BTreeMap<String, bool>,
    /// Independent recomputation of the failing values, for findings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recheck: Option<Recheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recheck {
    pub v_definition: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_line_graph: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg_from_dual: Option<usize>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionStats {
    pub applicable: u64,
    pub holds: u64,
    pub fails: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub config: SurveyConfig,
    pub statistics: BTreeMap<String, QuestionStats>,
    /// Confirmed counterexamples to the open inequalities.
    pub findings: Vec<TrialRecord>,
    /// Failures of proven statements or unconfirmed disagreements.
    pub violations: Vec<TrialRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub records: Vec<TrialRecord>,
}

/// Open inequalities; failures are findings.
const OPEN: &[&str] = &[
    "open_v_le_reg_plus_one",
    "open_v_le_im_plus_one",
    "open_v_le_induced_matching_weight_plus_one",
    "open_v_le_depth",
    "open_v_ge_dim_minus_depth",
];

/// Proven statements; failures are violations.
const PROVEN: &[&str] = &[
    "cohen_macaulay_v_le_depth",
    "bipartite_v_le_im",
    "im_le_reg",
    "induced_matching_weight_le_reg",
];

fn generate_instance(config: &SurveyConfig, rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(config.n_min..=config.n_max);
    let p = config.density;
    // Edgeless graphs have no edge ideal and are redrawn.
    let graph = |rng: &mut ChaCha8Rng, draw: fn(&mut ChaCha8Rng, usize, f64) -> vnumkit_core::Graph| loop {
        let g = draw(rng, n, p);
        if g.edge_count() > 0 {
            return Instance::Graph(g);
        }
    };
    match config.class {
        InstanceClass::Graph => graph(rng, generate::random_graph),
        InstanceClass::Bipartite => graph(rng, generate::random_bipartite_graph),
        InstanceClass::Chordal => graph(rng, generate::random_chordal_graph),
        InstanceClass::ConnectedGraph => graph(rng, generate::random_connected_graph),
        InstanceClass::Clutter => {
            Instance::Clutter(generate::random_clutter(rng, n, n + 2, config.max_edge_size, false))
        }
        InstanceClass::MonomialIdeal => {
            Instance::Ideal(generate::random_ideal(rng, n, n + 2, config.exponent_cap))
        }
    }
}

fn connected_ignoring_isolated(c: &Clutter) -> bool {
    let used = c.edges().iter().fold(VertexSet::EMPTY, |a, e| a.union(*e));
    c.induced(used).is_connected()
}

fn evaluate(instance: &Instance, opts: &HomologyOptions) -> Result<(Invariants, BTreeMap<String, bool>)> {
    let ideal = instance.ideal()?;
    let table = homology::betti_table(&ideal, opts)?;
    let reg = table.regularity();
    let depth = homology::depth(&ideal, opts)?;
    let dim = homology::krull_dim(&ideal)?;
    let squarefree = ideal.is_squarefree();
    let clutter = instance.clutter();
    let graph = instance.graph();
    let v = match &clutter {
        Some(c) => c.v_number(),
        None => v_number_definition(&ideal)?.degree,
    };
    let connected = clutter.as_ref().is_some_and(connected_ignoring_isolated);
    let im = graph.as_ref().map(|g| g.induced_matching_number());
    let weight = clutter.as_ref().map(|c| c.induced_matching_weight());
    let bipartite = graph.as_ref().map(|g| g.is_bipartite());

    let mut q = BTreeMap::new();
    let mut put = |name: &str, ok: bool| {
        q.insert(name.to_string(), ok);
    };
    if squarefree {
        if connected {
            put(OPEN[0], v <= reg as u64 + 1);
            if let Some(im) = im {
                put(OPEN[1], v <= im as u64 + 1);
            }
            if let Some(w) = weight {
                put(OPEN[2], v <= w as u64 + 1);
            }
        }
        put(OPEN[3], v <= depth as u64);
        put(OPEN[4], v + depth as u64 >= dim as u64);
        if let Some(w) = weight {
            put(PROVEN[3], w <= reg);
        }
    } else {
        put("general_v_le_reg_plus_one", v <= reg as u64 + 1);
        put("general_v_le_depth", v <= depth as u64);
        put("general_v_ge_dim_minus_depth", v + depth as u64 >= dim as u64);
    }
    if depth == dim {
        put(PROVEN[0], v <= depth as u64);
    }
    if bipartite == Some(true) {
        put(PROVEN[1], v <= im.unwrap_or(0) as u64);
    }
    if let Some(im) = im {
        put(PROVEN[2], im <= reg);
    }
    Ok((
        Invariants {
            v,
            reg,
            depth,
            dim,
            squarefree,
            connected,
            im,
            induced_matching_weight: weight,
            bipartite,
        },
        q,
    ))
}

/// Recomputes `v` by the definition search, by `c(L(G))` for graphs, and
/// `reg` through the Alexander dual, then checks the failing questions again.
fn recheck(instance: &Instance, inv: &Invariants, failing: &[String], opts: &HomologyOptions) -> Result<Recheck> {
    let ideal = instance.ideal()?;
    let v_definition = v_number_definition(&ideal)?.degree;
    let v_line_graph = instance
        .graph()
        .map(|g| g.line_graph().clique_domination_number() as u64);
    let reg_from_dual = match instance.clutter() {
        Some(c) if c.dual().is_ok() => {
            let pd = betti_table_clutter(&c.dual()?, opts)?.projective_dimension();
            Some(pd - 1)
        }
        _ => None,
    };
    let reg = reg_from_dual.unwrap_or(inv.reg);
    let values_agree = v_definition == inv.v
        && v_line_graph.is_none_or(|w| w == inv.v)
        && reg == inv.reg;
    let v = v_definition;
    let still_fails = failing.iter().all(|name| match name.as_str() {
        "open_v_le_reg_plus_one" => v > reg as u64 + 1,
        "open_v_le_im_plus_one" => v > inv.im.unwrap_or(0) as u64 + 1,
        "open_v_le_induced_matching_weight_plus_one" => {
            v > inv.induced_matching_weight.unwrap_or(0) as u64 + 1
        }
        "open_v_le_depth" => v > inv.depth as u64,
        "open_v_ge_dim_minus_depth" => v + (inv.depth as u64) < inv.dim as u64,
        _ => true,
    });
    Ok(Recheck {
        v_definition,
        v_line_graph,
        reg_from_dual,
        confirmed: values_agree && still_fails,
    })
}

fn run_trial(trial: u64, instance: &Instance, opts: &HomologyOptions) -> Result<TrialRecord> {
    let (invariants, questions) = evaluate(instance, opts)?;
    let failing_open: Vec<String> = questions
        .iter()
        .filter(|(k, ok)| !**ok && OPEN.contains(&k.as_str()))
        .map(|(k, _)| k.clone())
        .collect();
    let recheck = if failing_open.is_empty() {
        None
    } else {
        Some(recheck(instance, &invariants, &failing_open, opts)?)
    };
    Ok(TrialRecord {
        trial,
        instance: InstanceRecord::from_instance(instance),
        invariants,
        questions,
        recheck,
    })
}

/// Re-evaluates a record's instance and compares every stored value.
pub fn revalidate(record: &TrialRecord, opts: &HomologyOptions) -> Result<bool> {
    let instance = record.instance.to_instance()?;
    let again = run_trial(record.trial, &instance, opts)?;
    Ok(&again == record)
}

pub fn survey(config: &SurveyConfig, opts: &HomologyOptions) -> Result<SurveyReport> {
    config.validate(opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let instances: Vec<Instance> = (0..config.trials).map(|_| generate_instance(config, &mut rng)).collect();
    let records: Vec<TrialRecord> = instances
        .par_iter()
        .enumerate()
        .map(|(k, inst)| run_trial(k as u64, inst, opts))
        .collect::<Result<_>>()?;

    let mut statistics: BTreeMap<String, QuestionStats> = BTreeMap::new();
    let mut findings = Vec::new();
    let mut violations = Vec::new();
    for r in &records {
        for (name, &ok) in &r.questions {
            let s = statistics.entry(name.clone()).or_default();
            s.applicable += 1;
            if ok {
                s.holds += 1;
            } else {
                s.fails += 1;
            }
        }
        let proven_fails = r
            .questions
            .iter()
            .any(|(k, ok)| !*ok && PROVEN.contains(&k.as_str()));
        match (&r.recheck, proven_fails) {
            (_, true) => violations.push(r.clone()),
            (Some(c), false) if c.confirmed => findings.push(r.clone()),
            (Some(_), false) => violations.push(r.clone()),
            (None, false) => {}
        }
    }
    Ok(SurveyReport {
        config: config.clone(),
        statistics,
        findings,
        violations,
        records: if config.all_records { records } else { Vec::new() },
    })
}

/// Builds the instance an ideal record describes; used by tests.
pub fn ideal_of(record: &TrialRecord) -> Result<MonomialIdeal> {
    record.instance.to_instance()?.ideal()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(class: InstanceClass) -> SurveyConfig {
        SurveyConfig {
            class,
            n_min: 3,
            n_max: 6,
            trials: 40,
            seed: 5,
            all_records: true,
            ..Default::default()
        }
    }

    #[test]
    fn surveys_are_deterministic() {
        let opts = HomologyOptions::default();
        let a = survey(&small(InstanceClass::Clutter), &opts).unwrap();
        let b = survey(&small(InstanceClass::Clutter), &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.records.len(), 40);
        assert!(a.violations.is_empty());
    }

    #[test]
    fn records_revalidate() {
        let opts = HomologyOptions::default();
        let r = survey(&small(InstanceClass::MonomialIdeal), &opts).unwrap();
        for rec in r.records.iter().take(10) {
            assert!(revalidate(rec, &opts).unwrap());
            assert!(ideal_of(rec).is_ok());
        }
    }

    #[test]
    fn bipartite_class_never_violates() {
        let opts = HomologyOptions::default();
        let r = survey(&small(InstanceClass::Bipartite), &opts).unwrap();
        let s = r.statistics["bipartite_v_le_im"];
        assert!(s.applicable > 0);
        assert_eq!(s.fails, 0);
    }

    #[test]
    fn guard_is_checked() {
        let cfg = SurveyConfig { n_max: 40, ..Default::default() };
        assert!(survey(&cfg, &HomologyOptions::default()).is_err());
    }
}

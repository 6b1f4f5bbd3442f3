//! The theorem-verification suite behind `vnumkit verify`.
//!
//! Every check is counted per instance; a failing check stores a
//! [`FindingRecord`]. Observations are logged events that are not failures,
//! such as the alpha-quotient bound being strict.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use vnumkit_core::decomposition::{associated_primes, irreducible_decomposition};
use vnumkit_core::homology::{
    betti_table_clutter, betti_table_lcm, betti_table_polarized, depth_via_links, non_cm_certificate,
    terai_check, BettiTable, FieldChoice,
    HomologyOptions,
};
use vnumkit_core::polarization::{polarize_ideal, polarized_colon_prime};
use vnumkit_core::vnumber::{v_all_methods, v_number_definition};
use vnumkit_core::{Clutter, Error, Graph, Monomial, MonomialIdeal, PrimeSupport, Ring, VertexSet};

use crate::generate;
use crate::record::{FindingRecord, InstanceRecord};
use crate::report::betti_rows;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Small,
    Wide,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Small => "small",
            Level::Wide => "wide",
        }
    }
}

impl FromStr for Level {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Level::Small),
            "wide" => Ok(Level::Wide),
            _ => bail!("unknown level {s:?}; expected small or wide"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservationSummary {
    pub name: String,
    pub count: u64,
    pub examples: Vec<FindingRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub level: &'static str,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<FindingRecord>,
    pub observations: Vec<ObservationSummary>,
}

const EXAMPLES_PER_OBSERVATION: usize = 5;

#[derive(Default)]
struct Tally {
    checks: BTreeMap<&'static str, (u64, u64)>,
    failures: Vec<FindingRecord>,
    observations: BTreeMap<&'static str, (u64, Vec<FindingRecord>)>,
}

impl Tally {
    fn check(&mut self, name: &'static str, ok: bool, rec: &InstanceRecord, values: impl FnOnce() -> Value) {
        let slot = self.checks.entry(name).or_default();
        slot.0 += 1;
        if !ok {
            slot.1 += 1;
            self.failures.push(FindingRecord {
                check: name.to_string(),
                instance: rec.clone(),
                values: values(),
            });
        }
    }

    fn observe(&mut self, name: &'static str, rec: &InstanceRecord, values: Value) {
        let slot = self.observations.entry(name).or_default();
        slot.0 += 1;
        if slot.1.len() < EXAMPLES_PER_OBSERVATION {
            slot.1.push(FindingRecord {
                check: name.to_string(),
                instance: rec.clone(),
                values,
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (k, (a, b)) in other.checks {
            let slot = self.checks.entry(k).or_default();
            slot.0 += a;
            slot.1 += b;
        }
        self.failures.extend(other.failures);
        for (k, (count, examples)) in other.observations {
            let slot = self.observations.entry(k).or_default();
            slot.0 += count;
            let room = EXAMPLES_PER_OBSERVATION - slot.1.len();
            slot.1.extend(examples.into_iter().take(room));
        }
        self
    }
}

/// Runs `body` on one instance; an engine error becomes a failed check.
fn run_one(rec: &InstanceRecord, body: impl FnOnce(&mut Tally) -> Result<()>) -> Tally {
    let mut t = Tally::default();
    let outcome = body(&mut t);
    let message = outcome.as_ref().err().map(|e| e.to_string());
    t.check("engine.completes_without_error", outcome.is_ok(), rec, || json!({ "error": message }));
    t
}

fn run_all<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

// ---------------------------------------------------------------------------
// Enumeration

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn sorted_masks(edges: &[VertexSet]) -> Vec<u128> {
    let mut m: Vec<u128> = edges.iter().map(|e| e.0).collect();
    m.sort_unstable();
    m
}

/// True when `edges` is the least relabeling of itself, so exactly one
/// member of each isomorphism class passes.
fn is_canonical(edges: &[VertexSet], perms: &[Vec<usize>]) -> bool {
    let own = sorted_masks(edges);
    perms.iter().all(|p| {
        let image: Vec<VertexSet> = edges.iter().map(|e| e.iter().map(|v| p[v]).collect()).collect();
        sorted_masks(&image) >= own
    })
}

/// All labeled graphs on `n` vertices with at least one edge.
fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs = n * (n - 1) / 2;
    (1u64..1 << pairs).map(|mask| Graph::from_edge_mask(n, mask)).collect()
}

/// All clutters on `n` vertices with at least one edge.
fn labeled_clutters(n: usize) -> Vec<Clutter> {
    fn rec(n: usize, next: u128, chosen: &mut Vec<VertexSet>, out: &mut Vec<Clutter>) {
        if !chosen.is_empty() {
            out.push(Clutter::new(n, chosen.clone()).expect("antichain by construction"));
        }
        for mask in next..1u128 << n {
            let s = VertexSet(mask);
            if chosen.iter().all(|e| !e.is_subset(s) && !s.is_subset(*e)) {
                chosen.push(s);
                rec(n, mask + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// `table[k][mask]` is the image of `mask` under the `k`-th permutation.
fn permutation_tables(n: usize) -> Vec<Vec<u8>> {
    permutations(n)
        .into_iter()
        .map(|p| {
            (0..1usize << n)
                .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| 1u8 << p[v]).sum())
                .collect()
        })
        .collect()
}

/// One clutter from each isomorphism class on `n <= 8` vertices, by orderly
/// generation: edges are added in increasing mask order and only canonical
/// (lexicographically least) sorted mask lists are extended. Dropping the
/// largest mask of a canonical list leaves a canonical list, so every class
/// is reached exactly once.
fn clutter_representatives(n: usize) -> Vec<Clutter> {
    fn canonical(masks: &[u8], tables: &[Vec<u8>], image: &mut Vec<u8>) -> bool {
        tables.iter().all(|t| {
            image.clear();
            image.extend(masks.iter().map(|&m| t[m as usize]));
            image.sort_unstable();
            image.as_slice() >= masks
        })
    }
    fn rec(n: usize, tables: &[Vec<u8>], chosen: &mut Vec<u8>, image: &mut Vec<u8>, out: &mut Vec<Clutter>) {
        if !chosen.is_empty() {
            let edges = chosen.iter().map(|&m| VertexSet(u128::from(m))).collect();
            out.push(Clutter::new(n, edges).expect("antichain by construction"));
        }
        let start = chosen.last().map_or(1, |&m| m as usize + 1);
        for mask in start..1usize << n {
            let m = mask as u8;
            if chosen.iter().all(|&e| e & m != e && e & m != m) {
                chosen.push(m);
                if canonical(chosen, tables, image) {
                    rec(n, tables, chosen, image, out);
                }
                chosen.pop();
            }
        }
    }
    assert!(n <= 8, "masks are stored in a byte");
    let tables = permutation_tables(n);
    let mut out = Vec::new();
    rec(n, &tables, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Clutter checks

fn variable_colon_v(ideal: &MonomialIdeal, c: &Clutter) -> Result<Vec<Option<u64>>> {
    let n = c.nvertices();
    (0..n)
        .map(|x| {
            if c.edges().contains(&VertexSet::singleton(x)) {
                return Ok(None);
            }
            let q = ideal.colon(&Monomial::variable(n, x));
            Ok(Some(Clutter::from_ideal(&q)?.v_number()))
        })
        .collect()
}

fn prime_ideal_of(set: VertexSet, ring: &std::sync::Arc<Ring>) -> Result<MonomialIdeal> {
    Ok(PrimeSupport::new(set.to_vec(), ring.nvars())?.to_ideal(ring))
}

/// Checks that need no homology; cheap enough for every labeled instance.
fn clutter_cheap(c: &Clutter, rec: &InstanceRecord, t: &mut Tally) -> Result<()> {
    let n = c.nvertices();
    let ideal = c.edge_ideal()?;
    let v = c.v_number();
    let def = v_number_definition(&ideal)?;
    t.check("clutter.v_definition_eq_stable_set", def.degree == v, rec, || {
        json!({"definition": def.degree, "stable_set": v})
    });
    t.check(
        "clutter.witness_colon_is_its_prime",
        ideal.colon(&def.f).is_monomial_prime().as_ref() == Some(&def.prime),
        rec,
        || json!({"witness": ideal.ring().format_monomial(&def.f)}),
    );

    let covers = c.cover_numbers();
    t.check("clutter.alpha0_plus_beta0_eq_n", covers.alpha0 + covers.beta0 == n, rec, || {
        json!({"alpha0": covers.alpha0, "beta0": covers.beta0})
    });
    let minimal: BTreeSet<u128> = covers.minimal_covers.iter().map(|s| s.0).collect();
    let complements: BTreeSet<u128> =
        c.maximal_stable_sets().iter().map(|a| c.vertices().difference(*a).0).collect();
    t.check("clutter.maximal_stable_complements_are_minimal_covers", minimal == complements, rec, || {
        json!({"covers": minimal.len(), "complements": complements.len()})
    });

    // (I : X_A) = <N(A)> for stable A whose neighbor set covers.
    let mut lemma_ok = true;
    for mask in 0u128..1 << n {
        let a = VertexSet(mask);
        if !c.is_stable(a) {
            continue;
        }
        let nb = c.neighbor_set(a);
        if nb.is_empty() || !c.is_vertex_cover(nb) {
            continue;
        }
        let colon = ideal.colon(&Monomial::from_support(n, a.iter()));
        if colon != prime_ideal_of(nb, ideal.ring())? || !minimal.contains(&nb.0) {
            lemma_ok = false;
        }
    }
    t.check("clutter.stable_set_colon_is_neighbor_prime", lemma_ok, rec, || json!({}));

    let colons = variable_colon_v(&ideal, c)?;
    let proper: Vec<u64> = colons.iter().flatten().copied().collect();
    t.check("clutter.v_le_v_colon_variable_plus_one", proper.iter().all(|&w| v <= w + 1), rec, || {
        json!({"v": v, "colon_v": colons})
    });
    let is_max_ideal = proper.is_empty();
    if !is_max_ideal {
        t.check("clutter.some_variable_colon_has_v_le_v", proper.iter().any(|&w| w <= v), rec, || {
            json!({"v": v, "colon_v": colons})
        });
    }
    if v >= 2 {
        t.check("clutter.some_variable_colon_has_v_lt_v", proper.iter().any(|&w| w < v), rec, || {
            json!({"v": v, "colon_v": colons})
        });
    }
    let deletions: Vec<u64> =
        (0..n).map(|x| c.delete_vertices(VertexSet::singleton(x)).v_number()).collect();
    t.check("clutter.some_vertex_deletion_has_v_le_v", deletions.iter().any(|&w| w <= v), rec, || {
        json!({"v": v, "deletion_v": deletions})
    });

    if let Ok(d) = c.dual() {
        t.check("clutter.dual_is_an_involution", d.dual().ok().as_ref() == Some(c), rec, || json!({}));
        let dv = d.v_number();
        t.check("clutter.dual_v_ge_alpha0_minus_one", dv + 1 >= covers.alpha0 as u64, rec, || {
            json!({"dual_v": dv, "alpha0": covers.alpha0})
        });
    }
    Ok(())
}

/// `Σ_i (-1)^i β_{i,j}` against the face numbers of the independence complex.
fn euler_relation_holds(c: &Clutter, table: &BettiTable) -> bool {
    let n = c.nvertices();
    let faces = c.independence_complex().faces_by_size();
    let mut expected = vec![0i64; n + 1];
    for (k, group) in faces.iter().enumerate() {
        let count = group.len() as i64;
        let mut binom = 1i64;
        for m in 0..=n - k {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            expected[k + m] += sign * binom * count;
            binom = binom * (n - k - m) as i64 / (m as i64 + 1);
        }
    }
    let mut alt = vec![0i64; n + 1];
    alt[0] = 1;
    for ((i, j), r) in table.entries() {
        alt[j] += if i % 2 == 0 { r as i64 } else { -(r as i64) };
    }
    alt == expected
}

/// Homological checks; returns the Betti table for reuse.
fn clutter_heavy(
    c: &Clutter,
    opts: &HomologyOptions,
    rec: &InstanceRecord,
    char2_is_check: bool,
    t: &mut Tally,
) -> Result<BettiTable> {
    let n = c.nvertices();
    let ideal = c.edge_ideal()?;
    let table = betti_table_clutter(c, opts)?;
    let reg = table.regularity();
    let pd = table.projective_dimension();
    let depth = n - pd;
    let links = depth_via_links(c, opts.field);
    t.check("homology.depth_from_pd_eq_depth_from_links", links == depth, rec, || {
        json!({"n_minus_pd": depth, "links": links})
    });
    let beta0 = c.cover_numbers().beta0;
    let dim = n - associated_primes(&ideal)?.height();
    t.check("homology.dim_eq_beta0", dim == beta0, rec, || json!({"dim": dim, "beta0": beta0}));
    t.check("homology.euler_relation", euler_relation_holds(c, &table), rec, || json!({}));
    let weight = c.induced_matching_weight();
    t.check("homology.induced_matching_weight_le_reg", weight <= reg, rec, || {
        json!({"weight": weight, "reg": reg})
    });
    let v = c.v_number();
    if depth == dim {
        t.check("homology.cohen_macaulay_v_le_depth", v <= depth as u64, rec, || {
            json!({"v": v, "depth": depth})
        });
    }
    if c.dual().is_ok() {
        let terai = terai_check(&ideal, opts)?;
        t.check("homology.terai", terai.holds(), rec, || {
            json!({"reg_plus_one": terai.reg_plus_one, "pd_of_dual": terai.pd_of_dual})
        });
        match non_cm_certificate(c, opts) {
            Ok(report) => {
                t.check("homology.non_cm_certificate_consistent", true, rec, || json!({}));
                if let Some(chain) = report.certificate() {
                    t.observe("homology.non_cm_certificate_found", rec, json!({ "chain": chain }));
                }
            }
            Err(Error::Inconsistency(msg)) => {
                t.check("homology.non_cm_certificate_consistent", false, rec, || json!({ "error": msg }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let f2 = betti_table_clutter(c, &HomologyOptions { field: FieldChoice::Prime(2), ..*opts })?;
    if char2_is_check {
        t.check("homology.char0_eq_char2", f2 == table, rec, || {
            json!({"reg_char0": reg, "reg_char2": f2.regularity()})
        });
    } else if f2 != table {
        t.observe(
            "homology.char2_divergence",
            rec,
            json!({"reg_char0": reg, "reg_char2": f2.regularity(), "pd_char0": pd, "pd_char2": f2.projective_dimension()}),
        );
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Graph checks

fn first_maximal_stable(g: &Graph) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for v in 0..g.nvertices() {
        if !g.neighbors(v).intersects(s) {
            s.insert(v);
        }
    }
    s
}

fn graph_cheap(g: &Graph, rec: &InstanceRecord, t: &mut Tally) -> Result<()> {
    let c = g.to_clutter();
    clutter_cheap(&c, rec, t)?;
    let v = c.v_number();
    let alpha0 = c.cover_numbers().alpha0;
    t.check("graph.v_le_alpha0", v <= alpha0 as u64, rec, || json!({"v": v, "alpha0": alpha0}));
    let line = g.line_graph();
    let cl = line.clique_domination_number() as u64;
    let cd = line.disjoint_clique_domination_number() as u64;
    t.check("graph.v_eq_clique_domination_of_line_graph", cl == v, rec, || {
        json!({"v": v, "c": cl})
    });
    t.check("graph.v_eq_disjoint_clique_domination_of_line_graph", cd == v, rec, || {
        json!({"v": v, "c_disjoint": cd})
    });
    let im = g.induced_matching_number();
    let weight = c.induced_matching_weight();
    let size = c.induced_matching_size();
    t.check("graph.im_from_square_of_line_graph_eq_direct_search", im == weight && im == size, rec, || {
        json!({"im": im, "weight": weight, "size": size})
    });

    let edges = g.edges();
    let del: Vec<u64> = edges
        .iter()
        .map(|&(a, b)| Ok(g.delete_edge(a, b)?.to_clutter().v_number()))
        .collect::<Result<_>>()?;
    t.check("graph.edge_deletion_v_le_v_plus_one", del.iter().all(|&w| w <= v + 1), rec, || {
        json!({"v": v, "deletion_v": del})
    });
    let clique_ok = g
        .cliques()
        .into_iter()
        .all(|j| v <= g.delete_vertices(j).to_clutter().v_number() + 1);
    t.check("graph.v_le_clique_deletion_v_plus_one", clique_ok, rec, || json!({"v": v}));
    let con: Vec<u64> = edges
        .iter()
        .map(|&(a, b)| Ok(g.contract_edge(a, b)?.to_clutter().v_number()))
        .collect::<Result<_>>()?;
    t.check("graph.some_contraction_has_v_le_v", con.iter().any(|&w| w <= v), rec, || {
        json!({"v": v, "contraction_v": con})
    });

    if g.is_bipartite() {
        t.check("class.bipartite_v_le_im", v <= im as u64, rec, || json!({"v": v, "im": im}));
    }
    let w = g.whisker()?;
    let wv = w.to_clutter().v_number();
    let wim = w.induced_matching_number();
    t.check("class.whisker_v_le_im", wv <= wim as u64, rec, || json!({"v": wv, "im": wim}));
    if !g.has_isolated_vertex() {
        for s in [VertexSet::EMPTY, first_maximal_stable(g)] {
            let sv = g.s_suspension(s)?.to_clutter().v_number();
            t.check("graph.suspension_v_eq_one", sv == 1, rec, || json!({"s": s.one_based(), "v": sv}));
        }
    }
    Ok(())
}

fn vertex_removal_leaves_bipartite_or_vd(g: &Graph) -> bool {
    let simple = |h: &Graph| h.is_bipartite() || h.to_clutter().independence_complex().is_vertex_decomposable();
    (0..g.nvertices()).any(|x| {
        let single = VertexSet::singleton(x);
        simple(&g.delete_vertices(single)) || simple(&g.delete_vertices(g.closed_neighborhood(single)))
    })
}

fn graph_heavy(g: &Graph, opts: &HomologyOptions, rec: &InstanceRecord, t: &mut Tally) -> Result<()> {
    let c = g.to_clutter();
    let table = clutter_heavy(&c, opts, rec, true, t)?;
    let reg = table.regularity();
    let v = c.v_number();
    let im = g.induced_matching_number();
    t.check("graph.im_le_reg", im <= reg, rec, || json!({"im": im, "reg": reg}));
    let flags = g.structural_flags();
    if flags.chordal {
        t.check("class.chordal_v_le_im", v <= im as u64, rec, || json!({"v": v, "im": im}));
        t.check("class.chordal_im_eq_reg", im == reg, rec, || json!({"im": im, "reg": reg}));
    }
    if flags.c4c5_free && c.independence_complex().is_vertex_decomposable() {
        t.check("class.c4c5_free_vertex_decomposable_v_le_im_eq_reg", v <= im as u64 && im == reg, rec, || {
            json!({"v": v, "im": im, "reg": reg})
        });
    }
    if flags.unicyclic {
        t.check("class.unicyclic_v_le_reg_plus_one", v <= reg as u64 + 1, rec, || {
            json!({"v": v, "reg": reg})
        });
    }
    if vertex_removal_leaves_bipartite_or_vd(g) {
        t.check("class.bipartite_or_vd_vertex_removal_v_le_reg_plus_one", v <= reg as u64 + 1, rec, || {
            json!({"v": v, "reg": reg})
        });
    }
    if !g.has_isolated_vertex() {
        for s in [VertexSet::EMPTY, first_maximal_stable(g)] {
            let gs = g.s_suspension(s)?.to_clutter();
            let rs = betti_table_clutter(&gs, opts)?.regularity();
            t.check("graph.suspension_preserves_reg", rs == reg, rec, || {
                json!({"s": s.one_based(), "reg": reg, "reg_suspension": rs})
            });
        }
    }
    Ok(())
}

fn disjoint_union_checks(g: &Graph, opts: &HomologyOptions, rec: &InstanceRecord, t: &mut Tally) -> Result<()> {
    let c = g.to_clutter();
    let gg = g.disjoint_union(g)?.to_clutter();
    let (v, vv) = (c.v_number(), gg.v_number());
    t.check("graph.disjoint_union_doubles_v", vv == 2 * v, rec, || json!({"v": v, "v_union": vv}));
    let reg = betti_table_clutter(&c, opts)?.regularity();
    let rr = betti_table_clutter(&gg, opts)?.regularity();
    t.check("graph.disjoint_union_doubles_reg", rr == 2 * reg, rec, || {
        json!({"reg": reg, "reg_union": rr})
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// Monomial ideal checks

/// `v_p` of a square-free ideal for every associated prime, from stable sets.
fn local_v_squarefree(c: &Clutter) -> BTreeMap<u128, u64> {
    let candidates: Vec<usize> =
        (0..c.nvertices()).filter(|&v| !c.edges().contains(&VertexSet::singleton(v))).collect();
    let covers: BTreeSet<u128> = c.minimal_vertex_covers().iter().map(|s| s.0).collect();
    let mut out = BTreeMap::new();
    for size in 0..=candidates.len() {
        c.for_each_stable_subset_of_size(&candidates, size, &mut |a| {
            let nb = c.neighbor_set(a);
            if covers.contains(&nb.0) {
                out.entry(nb.0).or_insert(size as u64);
            }
            out.len() == covers.len()
        });
        if out.len() == covers.len() {
            break;
        }
    }
    out
}

struct PolarizationHypotheses {
    strong: bool,
    weak: bool,
    v_pol: u64,
}

/// Evaluates the hypotheses under which `v(I) = v(I(pol))`: a prime `p` of
/// `I(pol)` with no embedded prime of `I` strictly above its depolarization,
/// with (strong) or without (weak) the requirement `v_p(I(pol)) = v(I(pol))`.
fn polarization_hypotheses(ideal: &MonomialIdeal) -> Result<PolarizationHypotheses> {
    let (pol, ctx) = polarize_ideal(ideal)?;
    let local = local_v_squarefree(&Clutter::from_ideal(&pol)?);
    let v_pol = *local.values().min().ok_or_else(|| anyhow!("no associated primes"))?;
    let embedded: Vec<BTreeSet<usize>> = associated_primes(ideal)?
        .embedded
        .iter()
        .map(|p| p.vars().iter().copied().collect())
        .collect();
    let (mut strong, mut weak) = (false, false);
    for (&mask, &vp) in &local {
        let depol: BTreeSet<usize> = VertexSet(mask).iter().map(|pos| ctx.pair(pos).0).collect();
        let blocked = embedded.iter().any(|e| e.is_superset(&depol) && *e != depol);
        if !blocked {
            weak = true;
            strong |= vp == v_pol;
        }
    }
    Ok(PolarizationHypotheses { strong, weak, v_pol })
}

fn box_monomials(caps: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                (0..=c).map(move |e| {
                    let mut next = m.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

fn ideal_checks(
    ideal: &MonomialIdeal,
    f: &Monomial,
    opts: &HomologyOptions,
    rec: &InstanceRecord,
    t: &mut Tally,
) -> Result<()> {
    let n = ideal.nvars();
    let report = match v_all_methods(ideal) {
        Ok(r) => r,
        Err(Error::Inconsistency(msg)) => {
            t.check("ideal.methods_consistent", false, rec, || json!({ "error": msg }));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    t.check("ideal.methods_consistent", true, rec, || json!({}));
    let v = report.definition.degree;
    let pol = report.polarization;
    t.check("ideal.polarization_v_le_v", pol <= v, rec, || json!({"v": v, "v_pol": pol}));
    if !report.has_embedded_prime {
        t.check("ideal.no_embedded_prime_polarization_v_eq_v", pol == v, rec, || {
            json!({"v": v, "v_pol": pol})
        });
    }
    t.check("ideal.alpha_le_v", report.alpha <= v, rec, || {
        json!({"v": v, "alpha": report.alpha})
    });
    if !report.alpha_agrees() {
        t.observe("ideal.alpha_quotient_below_v", rec, json!({"v": v, "v_pol": pol, "alpha": report.alpha}));
    }
    if report.alpha < pol {
        t.observe("ideal.alpha_quotient_below_polarization_v", rec, json!({"v": v, "v_pol": pol, "alpha": report.alpha}));
    }
    let witnesses_ok = report
        .local
        .iter()
        .all(|w| ideal.colon(&w.f) == w.prime.to_ideal(ideal.ring()));
    t.check("ideal.local_witnesses_give_their_primes", witnesses_ok, rec, || json!({}));

    let comps = irreducible_decomposition(ideal)?;
    let back = comps
        .iter()
        .map(|q| q.to_ideal(ideal.ring()))
        .reduce(|a, b| a.intersect(&b).expect("same ring"))
        .ok_or_else(|| anyhow!("empty decomposition"))?;
    t.check("ideal.decomposition_intersects_back", &back == ideal, rec, || {
        json!({"intersection": back.to_string()})
    });

    let mut prediction_ok = true;
    for g in box_monomials(&ideal.max_exponents()) {
        if ideal.contains(&g) || ideal.colon(&g).is_monomial_prime().is_none() {
            continue;
        }
        match polarized_colon_prime(ideal, &g) {
            Ok(_) => {}
            Err(Error::Inconsistency(_)) => prediction_ok = false,
            Err(e) => return Err(e.into()),
        }
    }
    t.check("ideal.polarized_colon_prime_prediction", prediction_ok, rec, || json!({}));

    if !ideal.contains(f) {
        let vc = v_number_definition(&ideal.colon(f))?.degree;
        t.check("ideal.v_le_v_colon_plus_degree", v <= vc + f.degree(), rec, || {
            json!({"f": ideal.ring().format_monomial(f), "v": v, "v_colon": vc})
        });
    }
    for i in 0..n {
        let x = Monomial::variable(n, i);
        if !ideal.contains(&x) {
            let vc = v_number_definition(&ideal.colon(&x))?.degree;
            t.check("ideal.v_le_v_colon_variable_plus_one", v <= vc + 1, rec, || {
                json!({"variable": i + 1, "v": v, "v_colon": vc})
            });
        }
    }

    let pol_vars: u32 = ideal.max_exponents().iter().sum();
    if pol_vars <= 8 {
        let lcm = betti_table_lcm(ideal, opts)?;
        let via_pol = betti_table_polarized(ideal, opts)?;
        t.check("homology.lcm_lattice_betti_eq_polarized_betti", lcm == via_pol, rec, || {
            json!({"lcm": betti_rows(&lcm), "polarized": betti_rows(&via_pol)})
        });
    }

    let th = polarization_hypotheses(ideal)?;
    t.check("ideal.polarization_v_matches_local_stable_sets", th.v_pol == pol, rec, || {
        json!({"v_pol": pol, "from_local": th.v_pol})
    });
    if th.strong {
        t.check("ideal.polarization_equality_hypothesis_gives_equality", pol == v, rec, || {
            json!({"v": v, "v_pol": pol})
        });
        if report.alpha != v {
            t.observe("ideal.alpha_formula_fails_under_hypothesis", rec, json!({"v": v, "alpha": report.alpha}));
        }
    } else if th.weak && pol != v {
        t.observe("ideal.weak_hypothesis_without_equality", rec, json!({"v": v, "v_pol": pol}));
    }
    Ok(())
}

fn regularity_of(ideal: &MonomialIdeal, opts: &HomologyOptions) -> Result<usize> {
    Ok(vnumkit_core::homology::regularity(ideal, opts)?)
}

fn complete_intersection_checks(
    ideal: &MonomialIdeal,
    opts: &HomologyOptions,
    rec: &InstanceRecord,
    t: &mut Tally,
) -> Result<()> {
    let expected: u64 = ideal.generator_degrees().iter().map(|d| d - 1).sum();
    let v = v_number_definition(ideal)?.degree;
    let reg = regularity_of(ideal, opts)? as u64;
    t.check("ideal.complete_intersection_v_eq_reg_eq_degree_sum", v == expected && reg == expected, rec, || {
        json!({"v": v, "reg": reg, "sum_d_minus_k": expected})
    });
    Ok(())
}

fn additivity_checks(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    opts: &HomologyOptions,
    rec: &InstanceRecord,
    t: &mut Tally,
) -> Result<()> {
    let sum = a.disjoint_sum(b)?;
    let (va, vb, vs) = (
        v_number_definition(a)?.degree,
        v_number_definition(b)?.degree,
        v_number_definition(&sum)?.degree,
    );
    t.check("ideal.disjoint_sum_v_additive", vs == va + vb, rec, || json!({"a": va, "b": vb, "sum": vs}));
    let (ra, rb, rs) = (regularity_of(a, opts)?, regularity_of(b, opts)?, regularity_of(&sum, opts)?);
    t.check("ideal.disjoint_sum_reg_additive", rs == ra + rb, rec, || json!({"a": ra, "b": rb, "sum": rs}));
    let counts = (
        associated_primes(a)?.primes.len(),
        associated_primes(b)?.primes.len(),
        associated_primes(&sum)?.primes.len(),
    );
    t.check("ideal.disjoint_sum_ass_is_product", counts.2 == counts.0 * counts.1, rec, || {
        json!({"a": counts.0, "b": counts.1, "sum": counts.2})
    });
    Ok(())
}

fn prime_checks(ideal: &MonomialIdeal, opts: &HomologyOptions, rec: &InstanceRecord, t: &mut Tally) -> Result<()> {
    let r = v_all_methods(ideal)?;
    let ass = associated_primes(ideal)?;
    let reg = regularity_of(ideal, opts)?;
    let cm = vnumkit_core::homology::is_cohen_macaulay(ideal, opts)?;
    let ok = r.definition.degree == 0
        && r.definition.f.is_one()
        && r.polarization == 0
        && r.alpha == 0
        && ass.primes.len() == 1
        && ass.embedded.is_empty()
        && reg == 0
        && cm;
    t.check("ideal.prime_ideal_edge_cases", ok, rec, || {
        json!({"v": r.definition.degree, "reg": reg, "cm": cm, "ass": ass.primes.len()})
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// Levels

struct Plan {
    /// Graphs for the cheap checks.
    graphs: Vec<Graph>,
    /// Graphs for the homological checks.
    graphs_heavy: Vec<Graph>,
    union_graphs: Vec<Graph>,
    clutters: Vec<Clutter>,
    clutters_heavy: Vec<Clutter>,
    ideals: Vec<(MonomialIdeal, Monomial)>,
    complete_intersections: Vec<MonomialIdeal>,
    sums: Vec<(MonomialIdeal, MonomialIdeal)>,
    primes: Vec<MonomialIdeal>,
}

/// A random monomial outside `ideal`, up to one past its exponent caps.
fn random_f(rng: &mut ChaCha8Rng, ideal: &MonomialIdeal) -> Monomial {
    let caps = ideal.max_exponents();
    loop {
        let f = Monomial::from_exponents(caps.iter().map(|&c| rng.gen_range(0..=c + 1)).collect());
        if !ideal.contains(&f) {
            return f;
        }
    }
}

fn prime_cases() -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        for mask in 1u32..1 << n {
            let vars: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            out.push(PrimeSupport::new(vars, n).expect("non-empty").to_ideal(&Ring::standard(n)));
        }
    }
    out
}

fn small_plan(seed: u64) -> Plan {
    let mut graphs = Vec::new();
    let mut graphs_heavy = Vec::new();
    let mut union_graphs = Vec::new();
    for n in 2..=6 {
        let perms = permutations(n);
        for g in labeled_graphs(n) {
            if is_canonical(g.to_clutter().edges(), &perms) {
                if n <= 5 && g.is_connected() {
                    union_graphs.push(g.clone());
                }
                graphs_heavy.push(g.clone());
            }
            graphs.push(g);
        }
    }
    let mut clutters = Vec::new();
    let mut clutters_heavy = Vec::new();
    for n in 1..=5 {
        clutters.extend(labeled_clutters(n).into_iter().filter(|c| !c.is_graph()));
    }
    for n in 1..=6 {
        let reps = clutter_representatives(n).into_iter().filter(|c| !c.is_graph());
        if n == 6 {
            let reps: Vec<Clutter> = reps.collect();
            clutters.extend(reps.iter().cloned());
            clutters_heavy.extend(reps);
        } else {
            clutters_heavy.extend(reps);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals = (0..1000)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let i = generate::random_ideal(&mut rng, n, 5, 3);
            let f = random_f(&mut rng, &i);
            (i, f)
        })
        .collect();
    let complete_intersections = (0..1000)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            generate::random_complete_intersection(&mut rng, n, 3)
        })
        .collect();
    let sums = (0..1000)
        .map(|_| {
            let (na, nb) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            (generate::random_ideal(&mut rng, na, 3, 2), generate::random_ideal(&mut rng, nb, 3, 2))
        })
        .collect();
    Plan {
        graphs,
        graphs_heavy,
        union_graphs,
        clutters,
        clutters_heavy,
        ideals,
        complete_intersections,
        sums,
        primes: prime_cases(),
    }
}

fn wide_plan(seed: u64) -> Plan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::new();
    for k in 0..400 {
        let n = rng.gen_range(7..=9);
        let p = rng.gen_range(0.2..0.7);
        let g = match k % 4 {
            0 => generate::random_graph(&mut rng, n, p),
            1 => generate::random_connected_graph(&mut rng, n, p.max(0.35)),
            2 => generate::random_bipartite_graph(&mut rng, n, p),
            _ => generate::random_chordal_graph(&mut rng, n, p),
        };
        if g.edge_count() > 0 {
            graphs.push(g);
        }
    }
    let union_graphs = graphs
        .iter()
        .filter(|g| g.nvertices() == 7 && g.is_connected())
        .take(20)
        .cloned()
        .collect();
    let clutters: Vec<Clutter> = (0..300)
        .map(|_| {
            let n = rng.gen_range(6..=8);
            let singletons = rng.gen_bool(0.1);
            generate::random_clutter(&mut rng, n, 8, 4, singletons)
        })
        .collect();
    let ideals = (0..400)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let i = generate::random_ideal(&mut rng, n, 6, 3);
            let f = random_f(&mut rng, &i);
            (i, f)
        })
        .collect();
    let complete_intersections = (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=7);
            generate::random_complete_intersection(&mut rng, n, 3)
        })
        .collect();
    let sums = (0..200)
        .map(|_| {
            let (na, nb) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
            (generate::random_ideal(&mut rng, na, 4, 3), generate::random_ideal(&mut rng, nb, 4, 3))
        })
        .collect();
    Plan {
        graphs_heavy: graphs.clone(),
        graphs,
        union_graphs,
        clutters_heavy: clutters.clone(),
        clutters,
        ideals,
        complete_intersections,
        sums,
        primes: prime_cases(),
    }
}

/// Runs the suite. Identical `(level, seed)` give identical reports.
pub fn verify_suite(level: Level, seed: u64, opts: &HomologyOptions) -> SuiteReport {
    let plan = match level {
        Level::Small => small_plan(seed),
        Level::Wide => wide_plan(seed),
    };
    let mut tally = Tally::default();
    tally = tally.merge(run_all(&plan.graphs, |g| {
        let rec = InstanceRecord::graph(g);
        run_one(&rec, |t| graph_cheap(g, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.graphs_heavy, |g| {
        let rec = InstanceRecord::graph(g);
        run_one(&rec, |t| graph_heavy(g, opts, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.union_graphs, |g| {
        let rec = InstanceRecord::graph(g);
        run_one(&rec, |t| disjoint_union_checks(g, opts, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.clutters, |c| {
        let rec = InstanceRecord::clutter(c);
        run_one(&rec, |t| clutter_cheap(c, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.clutters_heavy, |c| {
        let rec = InstanceRecord::clutter(c);
        run_one(&rec, |t| clutter_heavy(c, opts, &rec, c.nvertices() <= 5, t).map(|_| ()))
    }));
    tally = tally.merge(run_all(&plan.ideals, |(i, f)| {
        let rec = InstanceRecord::ideal(i);
        run_one(&rec, |t| ideal_checks(i, f, opts, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.complete_intersections, |i| {
        let rec = InstanceRecord::ideal(i);
        run_one(&rec, |t| complete_intersection_checks(i, opts, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.sums, |(a, b)| {
        let rec = InstanceRecord::ideal(&a.disjoint_sum(b).expect("proper ideals"));
        run_one(&rec, |t| additivity_checks(a, b, opts, &rec, t))
    }));
    tally = tally.merge(run_all(&plan.primes, |i| {
        let rec = InstanceRecord::ideal(i);
        run_one(&rec, |t| prime_checks(i, opts, &rec, t))
    }));

    let checks: Vec<CheckSummary> = tally
        .checks
        .iter()
        .map(|(name, &(instances, failures))| CheckSummary {
            name: name.to_string(),
            instances,
            failures,
        })
        .collect();
    SuiteReport {
        level: level.name(),
        seed,
        passed: tally.failures.is_empty(),
        checks,
        failures: tally.failures,
        observations: tally
            .observations
            .into_iter()
            .map(|(name, (count, examples))| ObservationSummary {
                name: name.to_string(),
                count,
                examples,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // Labeled graphs with an edge, and isomorphism classes with an edge.
        assert_eq!(labeled_graphs(4).len(), 63);
        let perms = permutations(4);
        let classes = labeled_graphs(4)
            .iter()
            .filter(|g| is_canonical(g.to_clutter().edges(), &perms))
            .count();
        assert_eq!(classes, 10);
        // Antichains of non-empty subsets of a 3-set, minus the empty one.
        assert_eq!(labeled_clutters(3).len(), 18);
    }

    #[test]
    fn clutter_classes_match_known_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| clutter_representatives(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 8, 28, 208]);
        for n in 1..=4 {
            let perms = permutations(n);
            let labeled = labeled_clutters(n).into_iter().filter(|c| is_canonical(c.edges(), &perms)).count();
            assert_eq!(labeled, clutter_representatives(n).len());
        }
    }

    #[test]
    fn local_stable_sets_match_definition() {
        let c = Clutter::from_one_based(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let local = local_v_squarefree(&c);
        let ideal = c.edge_ideal().unwrap();
        let direct = vnumkit_core::vnumber::local_v_numbers(&ideal).unwrap();
        assert_eq!(local.len(), direct.len());
        for w in direct {
            let mask: VertexSet = w.prime.vars().iter().copied().collect();
            assert_eq!(local[&mask.0], w.degree);
        }
    }
}

//! The all-invariants report and the JSON shapes shared by subcommands.

use std::time::Instant;

use anyhow::Result;
use serde_json::{json, Map, Value};

use vnumkit_core::decomposition::{associated_primes, irreducible_decomposition};
use vnumkit_core::homology::{self, depth_via_links, terai_check, HomologyOptions};
use vnumkit_core::polarization::polarize_ideal;
use vnumkit_core::vnumber::v_all_methods;
use vnumkit_core::{Error, MonomialIdeal, PrimeSupport, VWitness};

use crate::input::{EdgeListJson, Instance};

pub fn prime_json(p: &PrimeSupport) -> Value {
    json!(p.one_based())
}

pub fn witness_json(ideal: &MonomialIdeal, w: &VWitness, method: &str) -> Value {
    json!({
        "v": w.degree,
        "witness": ideal.ring().format_monomial(&w.f),
        "prime": prime_json(&w.prime),
        "method": method,
    })
}

/// Turns a size-guard error into a `"skipped"` marker; other errors propagate.
pub fn guarded<T: Into<Value>>(r: vnumkit_core::Result<T>) -> Result<Value> {
    match r {
        Ok(v) => Ok(v.into()),
        Err(e @ Error::SizeGuard { .. }) => Ok(json!({ "skipped": e.to_string() })),
        Err(e) => Err(e.into()),
    }
}

struct Timer {
    timings: Map<String, Value>,
}

impl Timer {
    fn run<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.timings.insert(name.to_string(), json!((ms * 1e3).round() / 1e3));
        Ok(out)
    }
}

/// Every invariant that applies to the instance, with per-section timings.
pub fn full_report(instance: &Instance, opts: &HomologyOptions) -> Result<Value> {
    let ideal = instance.ideal()?;
    let mut t = Timer { timings: Map::new() };
    let mut out = Map::new();
    out.insert(
        "input".into(),
        json!({
            "kind": instance.kind(),
            "value": instance.describe(),
            "nvars": ideal.nvars(),
            "squarefree": ideal.is_squarefree(),
        }),
    );

    let v = t.run("v_number", || Ok(v_all_methods(&ideal)?))?;
    out.insert(
        "v_number".into(),
        json!({
            "v": v.definition.degree,
            "witness": ideal.ring().format_monomial(&v.definition.f),
            "prime": prime_json(&v.definition.prime),
            "stable_set": v.squarefree.as_ref().map(|w| w.degree),
            "polarization": v.polarization,
            "alpha_min": v.alpha,
            "alpha_agrees": v.alpha_agrees(),
            "local": v.local.iter().map(|w| json!({"prime": prime_json(&w.prime), "v": w.degree})).collect::<Vec<_>>(),
        }),
    );

    let (ass, comps) = t.run("decomposition", || {
        Ok((associated_primes(&ideal)?, irreducible_decomposition(&ideal)?))
    })?;
    out.insert(
        "associated_primes".into(),
        json!({
            "primes": ass.primes.iter().map(prime_json).collect::<Vec<_>>(),
            "embedded": ass.embedded.iter().map(prime_json).collect::<Vec<_>>(),
        }),
    );
    out.insert(
        "irreducible_components".into(),
        json!(comps
            .iter()
            .map(|c| c.to_ideal(ideal.ring()).to_string())
            .collect::<Vec<_>>()),
    );
    if !ideal.is_squarefree() {
        let (pol, _) = polarize_ideal(&ideal)?;
        out.insert("polarization".into(), json!(pol.to_string()));
    }

    if let Some(c) = instance.clutter() {
        let covers = t.run("covers", || Ok(c.cover_numbers()))?;
        let mut section = json!({
            "alpha0": covers.alpha0,
            "beta0": covers.beta0,
            "minimal_vertex_covers": covers.minimal_covers.iter().map(|s| s.one_based()).collect::<Vec<_>>(),
            "induced_matching_weight": c.induced_matching_weight(),
            "connected": c.is_connected(),
        });
        if let Ok(d) = c.dual() {
            section["dual"] = json!(EdgeListJson::from_clutter(&d));
            section["dual_v_number"] = json!(d.v_number());
        }
        out.insert("clutter".into(), section);
    }

    if let Some(g) = instance.graph() {
        let section = t.run("graph", || {
            let flags = g.structural_flags();
            let line = g.line_graph();
            Ok(json!({
                "induced_matching_number": g.induced_matching_number(),
                "clique_domination_line_graph": line.clique_domination_number(),
                "disjoint_clique_domination_line_graph": line.disjoint_clique_domination_number(),
                "bipartite": flags.bipartite,
                "chordal": flags.chordal,
                "c4c5_free": flags.c4c5_free,
                "unicyclic": flags.unicyclic,
                "connected": flags.connected,
                "vertex_decomposable": g.to_clutter().independence_complex().is_vertex_decomposable(),
            }))
        })?;
        out.insert("graph".into(), section);
    }

    let hom = t.run("homology", || {
        let table = match homology::betti_table(&ideal, opts) {
            Ok(table) => table,
            Err(e @ Error::SizeGuard { .. }) => return Ok(json!({ "skipped": e.to_string() })),
            Err(e) => return Err(e.into()),
        };
        let dim = homology::krull_dim(&ideal)?;
        let pd = table.projective_dimension();
        let depth = homology::depth(&ideal, opts)?;
        let mut section = json!({
            "field": opts.field.characteristic(),
            "regularity": table.regularity(),
            "projective_dimension": pd,
            "depth": depth,
            "dim": dim,
            "cohen_macaulay": depth == dim,
            "betti": betti_rows(&table),
        });
        if ideal.is_squarefree() {
            let c = instance.clutter().expect("square-free");
            section["depth_via_links"] = json!(depth_via_links(&c, opts.field));
            if c.dual().is_ok() {
                section["terai"] = guarded(terai_check(&ideal, opts).map(|r| {
                    json!({"reg_plus_one": r.reg_plus_one, "pd_of_dual": r.pd_of_dual, "holds": r.holds()})
                }))?;
            }
        }
        Ok(section)
    })?;
    out.insert("homology".into(), hom);
    out.insert("timings_ms".into(), Value::Object(t.timings));
    Ok(Value::Object(out))
}

pub fn betti_rows(table: &vnumkit_core::BettiTable) -> Vec<Value> {
    table
        .entries()
        .map(|((i, j), r)| json!({"i": i, "j": j, "rank": r}))
        .collect()
}

/// Betti table as text, rows `i` and columns `j - i` as usual.
pub fn betti_text(table: &vnumkit_core::BettiTable) -> String {
    let pd = table.projective_dimension();
    let reg = table.regularity();
    let mut s = String::from("      ");
    for i in 0..=pd {
        s.push_str(&format!("{i:>6}"));
    }
    s.push('\n');
    for d in 0..=reg {
        s.push_str(&format!("{d:>4}: "));
        for i in 0..=pd {
            let r = if i == 0 && d == 0 { 1 } else { table.get(i, i + d) };
            if r == 0 {
                s.push_str(&format!("{:>6}", "."));
            } else {
                s.push_str(&format!("{r:>6}"));
            }
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use vnumkit_core::parse_ideal;

    #[test]
    fn report_has_sections() {
        let ideal = parse_ideal("x1*x2^2, x2*x3^2, x1^2*x3").unwrap();
        let r = full_report(&Instance::Ideal(ideal), &HomologyOptions::default()).unwrap();
        assert_eq!(r["v_number"]["v"], 3);
        assert!(r["homology"]["cohen_macaulay"].is_boolean());
        assert!(r["timings_ms"]["v_number"].is_number());
    }

    #[test]
    fn guard_is_reported_not_fatal() {
        let ideal = parse_ideal("x1*x2, x2*x3").unwrap();
        let opts = HomologyOptions { betti_guard: 2, ..Default::default() };
        let r = full_report(&Instance::Ideal(ideal), &opts).unwrap();
        assert!(r["homology"]["skipped"].is_string());
    }
}

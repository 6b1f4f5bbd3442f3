//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vnumkit::generate;
use vnumkit::suite::{verify_suite, Level, SuiteReport};
use vnumkit_core::decomposition::{associated_primes, irreducible_decomposition};
use vnumkit_core::homology::{betti_table_clutter, depth_via_links, terai_check, FieldChoice, HomologyOptions};
use vnumkit_core::polarization::polarized_colon_prime;
use vnumkit_core::vnumber::{v_number_definition, v_number_squarefree};
use vnumkit_core::{parse_ideal, polarize_ideal, Clutter, Graph, Monomial, MonomialIdeal, PrimeSupport, VertexSet};

const LIMIT_WORKED_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_FIGURE_GRAPHS: Duration = Duration::from_secs(1);
const LIMIT_ORACLE_EQUIVALENCE: Duration = Duration::from_secs(600);
const LIMIT_CLASS_THEOREMS: Duration = Duration::from_secs(1800);

/// Connected labeled graphs on 1..=6 vertices.
const CONNECTED_LABELED: [usize; 7] = [0, 1, 1, 4, 38, 728, 26704];

const MIN_RANDOM_IDEALS: usize = 1000;
const MIN_PER_CLASS: u64 = 1000;
const MIN_TERAI: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, detail: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail }
    } else {
        Outcome {
            pass: false,
            detail: format!("{detail}; {}", problems.join("; ")),
        }
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}, {:.2?} (limit {:?})", o.detail, elapsed, limit);
    if elapsed > limit {
        o.pass = false;
        o.detail.push_str("; over the time limit");
    }
    o
}

fn opts() -> HomologyOptions {
    HomologyOptions::default()
}

fn ideal(s: &str) -> MonomialIdeal {
    parse_ideal(s).unwrap()
}

fn prime(vars: &[usize], n: usize) -> PrimeSupport {
    PrimeSupport::from_one_based(vars, n).unwrap()
}

fn reg(c: &Clutter) -> usize {
    betti_table_clutter(c, &opts()).unwrap().regularity()
}

fn v_def(c: &Clutter) -> u64 {
    v_number_definition(&c.edge_ideal().unwrap()).unwrap().degree
}

fn first_maximal_stable(g: &Graph) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for v in 0..g.nvertices() {
        if !g.neighbors(v).intersects(s) {
            s.insert(v);
        }
    }
    s
}

fn worked_example() -> Outcome {
    let mut bad = Vec::new();
    let i = ideal("x1*x2^2, x2*x3^2, x1^2*x3");
    let ring = i.ring().clone();

    let comps: BTreeSet<String> = irreducible_decomposition(&i)
        .unwrap()
        .iter()
        .map(|c| c.to_ideal(&ring).to_string())
        .collect();
    let expected: BTreeSet<String> = ["x2^2, x3", "x1, x3^2", "x1^2, x2", "x1^2, x2^2, x3^2"]
        .iter()
        .map(|s| ideal(s).to_string())
        .collect();
    if comps != expected {
        bad.push(format!("components {comps:?}"));
    }

    let ass = associated_primes(&i).unwrap();
    let primes: BTreeSet<PrimeSupport> = ass.primes.iter().cloned().collect();
    let want: BTreeSet<PrimeSupport> =
        [prime(&[2, 3], 3), prime(&[1, 3], 3), prime(&[1, 2], 3), prime(&[1, 2, 3], 3)].into_iter().collect();
    if primes != want || ass.embedded != vec![prime(&[1, 2, 3], 3)] {
        bad.push(format!("Ass {:?}, embedded {:?}", ass.primes, ass.embedded));
    }

    let v = v_number_definition(&i).unwrap().degree;
    let (pol, ctx) = polarize_ideal(&i).unwrap();
    let v_pol = v_number_squarefree(&Clutter::from_ideal(&pol).unwrap()).unwrap().degree;
    if (v, v_pol) != (3, 3) {
        bad.push(format!("v = {v}, v(pol) = {v_pol}"));
    }

    let x123 = Monomial::from_exponents(vec![1, 1, 1]);
    if i.colon(&x123) != prime(&[1, 2, 3], 3).to_ideal(&ring) {
        bad.push(format!("(I : x1x2x3) = {}", i.colon(&x123)));
    }
    let np = ctx.target().nvars();
    let first = Monomial::from_support(np, (0..3).map(|k| ctx.position(k, 1).unwrap()));
    let second = PrimeSupport::new((0..3).map(|k| ctx.position(k, 2).unwrap()).collect(), np).unwrap();
    if pol.colon(&first) != second.to_ideal(ctx.target()) {
        bad.push(format!("(I(pol) : x1_1x2_1x3_1) = {}", pol.colon(&first)));
    }
    outcome(bad, format!("components {}, v = {v}, v(pol) = {v_pol}", comps.len()))
}

fn figure_graphs() -> Outcome {
    let g = Graph::from_one_based(5, &[(1, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
    let h = Graph::from_one_based(5, &[(1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
    let got = (
        v_def(&g.to_clutter()),
        g.induced_matching_number(),
        v_def(&h.to_clutter()),
        h.induced_matching_number(),
    );
    let bad = if got == (2, 1, 1, 2) { vec![] } else { vec![format!("got {got:?}")] };
    outcome(bad, format!("v(G) = {}, im(G) = {}, v(H) = {}, im(H) = {}", got.0, got.1, got.2, got.3))
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for (n, &expected) in CONNECTED_LABELED.iter().enumerate().skip(2) {
        let pairs = n * (n - 1) / 2;
        let mut connected = 0;
        for mask in 1u64..1 << pairs {
            let g = Graph::from_edge_mask(n, mask);
            if !g.is_connected() {
                continue;
            }
            connected += 1;
            let c = g.to_clutter();
            let by_definition = v_def(&c);
            let by_stable_sets = v_number_squarefree(&c).unwrap().degree;
            let by_line_graph = g.line_graph().clique_domination_number() as u64;
            if by_definition != by_stable_sets || by_definition != by_line_graph {
                bad.push(format!(
                    "{:?}: definition {by_definition}, stable sets {by_stable_sets}, c(L) {by_line_graph}",
                    g.one_based_edges()
                ));
            }
        }
        if connected != expected {
            bad.push(format!("{connected} connected graphs on {n} vertices"));
        }
        total += connected;
    }
    bad.truncate(5);
    outcome(bad, format!("{total} connected labeled graphs"))
}

fn polarization_laws() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut no_embedded, mut prime_colons) = (0, 0);
    for _ in 0..MIN_RANDOM_IDEALS {
        let n = rng.gen_range(1..=4);
        let i = generate::random_ideal(&mut rng, n, 6, 3);
        let v = v_number_definition(&i).unwrap().degree;
        let (pol, _) = polarize_ideal(&i).unwrap();
        let v_pol = v_number_squarefree(&Clutter::from_ideal(&pol).unwrap()).unwrap().degree;
        if v_pol > v {
            bad.push(format!("{i}: v(pol) = {v_pol} > v = {v}"));
        }
        if associated_primes(&i).unwrap().embedded.is_empty() {
            no_embedded += 1;
            if v_pol != v {
                bad.push(format!("{i}: no embedded prime but v(pol) = {v_pol} != {v}"));
            }
        }
        let caps = i.max_exponents();
        let mut exps = vec![0u32; n];
        loop {
            let f = Monomial::from_exponents(exps.clone());
            if !i.contains(&f) && i.colon(&f).is_monomial_prime().is_some() {
                prime_colons += 1;
                if let Err(e) = polarized_colon_prime(&i, &f) {
                    bad.push(format!("{i}, f = {}: {e}", i.ring().format_monomial(&f)));
                }
            }
            let Some(k) = (0..n).find(|&k| exps[k] < caps[k]) else { break };
            exps[k] += 1;
            exps[..k].iter_mut().for_each(|e| *e = 0);
        }
    }
    bad.truncate(5);
    outcome(
        bad,
        format!("{MIN_RANDOM_IDEALS} ideals, {no_embedded} without embedded primes, {prime_colons} prime colons"),
    )
}

fn require_checks(report: &SuiteReport, names: &[&str], min: u64, bad: &mut Vec<String>) -> u64 {
    let mut least = u64::MAX;
    for name in names {
        match report.checks.iter().find(|c| c.name == *name) {
            Some(c) => {
                least = least.min(c.instances);
                if c.failures > 0 {
                    bad.push(format!("{name}: {} failures ({} level)", c.failures, report.level));
                }
                if c.instances < min {
                    bad.push(format!("{name}: only {} instances ({} level)", c.instances, report.level));
                }
            }
            None => bad.push(format!("{name} missing from the {} level", report.level)),
        }
    }
    least
}

fn inequality_suite(small: &SuiteReport) -> Outcome {
    let mut bad = Vec::new();
    let least = require_checks(
        small,
        &[
            "graph.v_le_alpha0",
            "ideal.v_le_v_colon_plus_degree",
            "clutter.some_variable_colon_has_v_le_v",
            "clutter.some_variable_colon_has_v_lt_v",
            "clutter.some_vertex_deletion_has_v_le_v",
            "graph.edge_deletion_v_le_v_plus_one",
            "graph.v_le_clique_deletion_v_plus_one",
            "graph.some_contraction_has_v_le_v",
            "ideal.disjoint_sum_v_additive",
            "ideal.complete_intersection_v_eq_reg_eq_degree_sum",
        ],
        MIN_PER_CLASS,
        &mut bad,
    );
    outcome(bad, format!("10 classes, at least {least} instances each"))
}

fn class_theorems(small: &SuiteReport, wide: &SuiteReport) -> Outcome {
    let mut bad = Vec::new();
    let names = [
        "class.bipartite_v_le_im",
        "class.chordal_v_le_im",
        "class.whisker_v_le_im",
        "class.chordal_im_eq_reg",
        "class.c4c5_free_vertex_decomposable_v_le_im_eq_reg",
    ];
    let a = require_checks(small, &names, 1, &mut bad);
    let b = require_checks(wide, &names, 1, &mut bad);
    outcome(bad, format!("5 statements, at least {a} exhaustive (n <= 6) and {b} random (n 7-9) instances each"))
}

fn homological_engine() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < MIN_TERAI + 50 {
        let n = rng.gen_range(4..=8);
        let c = if checked % 2 == 0 {
            generate::random_clutter(&mut rng, n, 8, 4, false)
        } else {
            let g = generate::random_graph(&mut rng, n, 0.4);
            if g.to_clutter().edges().is_empty() {
                continue;
            }
            g.to_clutter()
        };
        let i = c.edge_ideal().unwrap();
        checked += 1;
        let t = terai_check(&i, &opts()).unwrap();
        if !t.holds() {
            bad.push(format!("{i}: reg + 1 = {}, pd(dual) = {}", t.reg_plus_one, t.pd_of_dual));
        }
        let pd = betti_table_clutter(&c, &opts()).unwrap().projective_dimension();
        let depth = depth_via_links(&c, FieldChoice::Rational);
        if depth + pd != n {
            bad.push(format!("{i}: depth {depth} + pd {pd} != {n}"));
        }
        let dim = n - associated_primes(&i).unwrap().height();
        if dim != c.cover_numbers().beta0 {
            bad.push(format!("{i}: dim {dim} != beta0 {}", c.cover_numbers().beta0));
        }
    }
    bad.truncate(5);
    outcome(bad, format!("{checked} random square-free ideals, n 4-8"))
}

fn suspension_gap() -> Outcome {
    let mut bad = Vec::new();
    let mut found = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 1..=3usize {
        let mut hit = None;
        for _ in 0..20_000 {
            let n = rng.gen_range(2 * (k + 1)..=2 * (k + 1) + 4);
            let p = rng.gen_range(0.15..0.5);
            let h = generate::random_connected_graph(&mut rng, n, p);
            if reg(&h.to_clutter()) == k + 1 {
                hit = Some(h);
                break;
            }
        }
        let Some(h) = hit else {
            bad.push(format!("no connected graph with reg {} found", k + 1));
            continue;
        };
        for s in [VertexSet::EMPTY, first_maximal_stable(&h)] {
            let hs = h.s_suspension(s).unwrap().to_clutter();
            let (v, r) = (v_def(&hs), reg(&hs));
            if v != 1 || r != k + 1 || r as u64 - v != k as u64 {
                bad.push(format!("k = {k}, H = {:?}, S = {:?}: v = {v}, reg = {r}", h.one_based_edges(), s.one_based()));
            }
        }
        found.push(format!("k={k}: n={}", h.nvertices()));
    }
    outcome(bad, found.join(", "))
}

fn disjoint_unions() -> Outcome {
    let mut bad = Vec::new();
    let mut graphs: Vec<Graph> = (2..=4usize)
        .flat_map(|n| (1u64..1 << (n * (n - 1) / 2)).map(move |m| Graph::from_edge_mask(n, m)))
        .filter(|g| g.is_connected())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    graphs.extend((0..20).map(|_| generate::random_connected_graph(&mut rng, 5, 0.5)));
    for g in &graphs {
        let c = g.to_clutter();
        let gg = g.disjoint_union(g).unwrap().to_clutter();
        let (v, vv) = (v_def(&c), v_def(&gg));
        let (r, rr) = (reg(&c), reg(&gg));
        if vv != 2 * v || rr != 2 * r {
            bad.push(format!("{:?}: v {v} -> {vv}, reg {r} -> {rr}", g.one_based_edges()));
        }
    }
    bad.truncate(5);
    outcome(bad, format!("{} connected graphs on 2-5 vertices", graphs.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_vnumkit"))
            .args(["verify", "--level", "small", "--seed", "42", "--json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let mut bad = Vec::new();
    if a.stdout != b.stdout {
        bad.push("outputs differ".to_string());
    }
    if serde_json::from_slice::<serde_json::Value>(&a.stdout).is_err() {
        bad.push("output is not JSON".to_string());
    }
    if a.status.code() != Some(0) {
        bad.push(format!("exit status {:?}", a.status.code()));
    }
    outcome(bad, format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let suites_start = Instant::now();
    let small = verify_suite(Level::Small, 42, &opts());
    let wide = verify_suite(Level::Wide, 42, &opts());
    let suites_elapsed = suites_start.elapsed();

    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "worked example", timed(LIMIT_WORKED_EXAMPLE, worked_example)),
        (2, "figure graphs", timed(LIMIT_FIGURE_GRAPHS, figure_graphs)),
        (3, "oracle equivalence", timed(LIMIT_ORACLE_EQUIVALENCE, oracle_equivalence)),
        (4, "polarization laws", polarization_laws()),
        (5, "inequality suite", inequality_suite(&small)),
        (6, "class theorems", {
            let mut o = class_theorems(&small, &wide);
            o.detail = format!("{}, suites {:.2?} (limit {:?})", o.detail, suites_elapsed, LIMIT_CLASS_THEOREMS);
            if suites_elapsed > LIMIT_CLASS_THEOREMS {
                o.pass = false;
            }
            o
        }),
        (7, "homological engine", homological_engine()),
        (8, "suspension gap", suspension_gap()),
        (9, "disjoint unions", disjoint_unions()),
        (10, "determinism", determinism()),
    ];
    let mut all = true;
    for (id, name, o) in &results {
        println!("{} {id:>2} {name:<20} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

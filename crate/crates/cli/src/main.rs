use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vnumkit::input::{self, EdgeListJson, Instance};
use vnumkit::report::{betti_rows, betti_text, full_report, prime_json, witness_json};
use vnumkit::suite::{verify_suite, Level};
use vnumkit::survey::{survey, InstanceClass, SurveyConfig};
use vnumkit_core::decomposition::{associated_primes, irreducible_decomposition};
use vnumkit_core::homology::{self, FieldChoice, HomologyOptions};
use vnumkit_core::vnumber::{v_all_methods, v_number_definition, v_number_squarefree};
use vnumkit_core::{alexander_dual, polarize_ideal, Clutter, VertexSet};

const EXIT_FAILURE: u8 = 1;
const EXIT_FINDINGS: u8 = 2;

#[derive(Parser)]
#[command(name = "vnumkit", version, about = "Exact v-numbers, associated primes and Betti numbers of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Monomial ideal, e.g. "x1*x2^2, x2*x3^2" (`-` reads stdin).
    #[arg(long, value_name = "PATH", group = "source")]
    ideal: Option<PathBuf>,
    /// Graph JSON {"n": 5, "edges": [[1,2], ...]}.
    #[arg(long, value_name = "PATH", group = "source")]
    graph: Option<PathBuf>,
    /// Clutter JSON {"n": 5, "edges": [[1,2,3], ...]}.
    #[arg(long, value_name = "PATH", group = "source")]
    clutter: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// Coefficient field characteristic: 0 or a prime.
    #[arg(long, default_value_t = 0)]
    field: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Definition,
    Squarefree,
    Polarization,
    Alpha,
}

#[derive(Subcommand)]
enum Command {
    /// v-number with a witness monomial and its associated prime.
    Vnum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// List v_p for every associated prime instead.
        #[arg(long)]
        local: bool,
    },
    /// Associated primes, flagging the embedded ones.
    Ass(InputArgs),
    /// Irredundant irreducible decomposition.
    Decomp(InputArgs),
    /// Polarization.
    Pol(InputArgs),
    /// Induced matching number.
    Im(InputArgs),
    /// Vertex cover number, stable number and minimal vertex covers.
    Alpha0(InputArgs),
    /// Alexander dual.
    Dual(InputArgs),
    /// Line graph.
    Linegraph(InputArgs),
    /// Whisker graph.
    Whisker(InputArgs),
    /// S-suspension for a stable set S.
    Suspend {
        #[command(flatten)]
        input: InputArgs,
        /// One-based vertices of S, comma separated.
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
    },
    /// reg(R/I).
    Reg(InputArgs),
    /// pd(R/I).
    Pd(InputArgs),
    /// depth(R/I).
    Depth(InputArgs),
    /// Cohen-Macaulay test.
    Cm(InputArgs),
    /// Graded Betti numbers of R/I.
    Betti(InputArgs),
    /// Every invariant at once, with timings.
    Report(InputArgs),
    /// Run the theorem-verification suite.
    Verify {
        #[arg(long, default_value = "small")]
        level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Randomized search for counterexamples to open inequalities.
    Survey {
        #[arg(long, default_value = "connected-graph")]
        class: InstanceClass,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 3)]
        exponent_cap: u32,
        #[arg(long, default_value_t = 3)]
        max_edge_size: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every trial in the output.
        #[arg(long)]
        records: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn read_source(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(args: &InputArgs) -> Result<Instance> {
    if let Some(p) = &args.ideal {
        let loaded = input::parse_ideal_text(&read_source(p)?)?;
        for w in &loaded.warnings {
            eprintln!("warning: {w}");
        }
        return Ok(Instance::Ideal(loaded.value));
    }
    if let Some(p) = &args.graph {
        return Ok(Instance::Graph(input::parse_graph_json(&read_source(p)?)?));
    }
    if let Some(p) = &args.clutter {
        return Ok(Instance::Clutter(input::parse_clutter_json(&read_source(p)?)?));
    }
    bail!("one of --ideal, --graph or --clutter is required")
}

fn homology_options(field: u64) -> Result<HomologyOptions> {
    let mut opts = HomologyOptions::with_field(FieldChoice::from_characteristic(field)?);
    if let Ok(raw) = std::env::var("VNUMKIT_SIZE_GUARD") {
        let guard: usize = raw
            .trim()
            .parse()
            .map_err(|_| anyhow!("VNUMKIT_SIZE_GUARD must be a vertex count, got {raw:?}"))?;
        opts.betti_guard = guard;
        opts.complex_guard = guard;
    }
    Ok(opts)
}

fn emit(out: &OutputArgs, value: &Value, text: impl FnOnce() -> String) {
    if out.json {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn need_clutter(instance: &Instance) -> Result<Clutter> {
    instance
        .clutter()
        .ok_or_else(|| anyhow!("this command needs a square-free ideal, a graph or a clutter"))
}

fn need_graph(instance: &Instance) -> Result<vnumkit_core::Graph> {
    instance
        .graph()
        .ok_or_else(|| anyhow!("this command needs a graph"))
}

fn sets_text(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| format!("<{}>", s.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_vnum(args: &InputArgs, method: Method, local: bool) -> Result<u8> {
    let instance = load(args)?;
    let ideal = instance.ideal()?;
    if local {
        let report = v_all_methods(&ideal)?;
        let rows: Vec<Value> = report
            .local
            .iter()
            .map(|w| witness_json(&ideal, w, "definition"))
            .collect();
        let value = json!({ "v": report.definition.degree, "local": rows });
        emit(&args.out, &value, || {
            let mut s = format!("v = {}\n", report.definition.degree);
            for w in &report.local {
                s.push_str(&format!(
                    "v_p = {} for p = {}  witness {}\n",
                    w.degree,
                    w.prime.to_ideal(ideal.ring()),
                    ideal.ring().format_monomial(&w.f)
                ));
            }
            s.trim_end().to_string()
        });
        return Ok(0);
    }
    let method = match method {
        Method::Auto if ideal.is_squarefree() => Method::Squarefree,
        Method::Auto => Method::Definition,
        m => m,
    };
    let value = match method {
        Method::Definition => witness_json(&ideal, &v_number_definition(&ideal)?, "definition"),
        Method::Squarefree => {
            let c = need_clutter(&instance)?;
            witness_json(&ideal, &v_number_squarefree(&c)?, "squarefree")
        }
        Method::Polarization => {
            let (pol, _) = polarize_ideal(&ideal)?;
            let w = v_number_squarefree(&Clutter::from_ideal(&pol)?)?;
            let mut v = witness_json(&pol, &w, "polarization");
            v["prime_names"] = json!(w.prime.to_ideal(pol.ring()).to_string());
            v
        }
        Method::Alpha => {
            let report = v_all_methods(&ideal)?;
            let (p, a) = report
                .alpha_per_prime
                .iter()
                .min_by_key(|(_, a)| *a)
                .ok_or_else(|| anyhow!("no associated primes"))?;
            json!({"v": a, "witness": null, "prime": prime_json(p), "method": "alpha"})
        }
        Method::Auto => unreachable!(),
    };
    emit(&args.out, &value, || {
        let prime = value["prime"]
            .as_array()
            .map(|a| a.iter().map(|x| format!("x{x}")).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        let witness = value["witness"].as_str().unwrap_or("-");
        format!("v = {}  witness {witness}  prime <{prime}>  ({})", value["v"], value["method"].as_str().unwrap())
    });
    Ok(0)
}

fn cmd_simple(which: &Command) -> Result<u8> {
    match which {
        Command::Ass(args) => {
            let ideal = load(args)?.ideal()?;
            let r = associated_primes(&ideal)?;
            let primes: Vec<Vec<usize>> = r.primes.iter().map(|p| p.one_based()).collect();
            let embedded: Vec<Vec<usize>> = r.embedded.iter().map(|p| p.one_based()).collect();
            let value = json!({ "primes": primes, "embedded": embedded });
            emit(&args.out, &value, || {
                format!("Ass: {}\nembedded: {}", sets_text(&primes), sets_text(&embedded))
            });
        }
        Command::Decomp(args) => {
            let ideal = load(args)?.ideal()?;
            let comps: Vec<String> = irreducible_decomposition(&ideal)?
                .iter()
                .map(|c| c.to_ideal(ideal.ring()).to_string())
                .collect();
            let value = json!({ "components": comps });
            emit(&args.out, &value, || comps.iter().map(|c| format!("<{c}>")).collect::<Vec<_>>().join(" ∩ "));
        }
        Command::Pol(args) => {
            let ideal = load(args)?.ideal()?;
            let (pol, ctx) = polarize_ideal(&ideal)?;
            let value = json!({ "ideal": pol.to_string(), "variables": ctx.target().names() });
            emit(&args.out, &value, || pol.to_string());
        }
        Command::Im(args) => {
            let instance = load(args)?;
            let value = match instance.graph() {
                Some(g) => json!({ "im": g.induced_matching_number() }),
                None => {
                    let c = need_clutter(&instance)?;
                    json!({ "im": c.induced_matching_size(), "weight": c.induced_matching_weight() })
                }
            };
            emit(&args.out, &value, || match value.get("weight") {
                Some(w) => format!("im = {}  max Σ(|e|-1) = {w}", value["im"]),
                None => format!("im = {}", value["im"]),
            });
        }
        Command::Alpha0(args) => {
            let c = need_clutter(&load(args)?)?;
            let n = c.cover_numbers();
            let covers: Vec<Vec<usize>> = n.minimal_covers.iter().map(|s| s.one_based()).collect();
            let value = json!({ "alpha0": n.alpha0, "beta0": n.beta0, "minimal_covers": covers });
            emit(&args.out, &value, || {
                format!("alpha0 = {}  beta0 = {}\nminimal covers: {}", n.alpha0, n.beta0, sets_text(&covers))
            });
        }
        Command::Dual(args) => {
            let instance = load(args)?;
            let value = match &instance {
                Instance::Ideal(i) => json!({ "ideal": alexander_dual(i)?.to_string() }),
                _ => {
                    let d = need_clutter(&instance)?.dual()?;
                    json!({ "clutter": EdgeListJson::from_clutter(&d), "ideal": d.edge_ideal()?.to_string() })
                }
            };
            emit(&args.out, &value, || value["ideal"].as_str().unwrap().to_string());
        }
        Command::Linegraph(args) | Command::Whisker(args) => {
            let g = need_graph(&load(args)?)?;
            let h = match which {
                Command::Linegraph(_) => g.try_line_graph()?,
                _ => g.whisker()?,
            };
            let value = json!(EdgeListJson::from_graph(&h));
            emit(&args.out, &value, || value.to_string());
        }
        Command::Suspend { input: args, s } => {
            let g = need_graph(&load(args)?)?;
            let mut set = VertexSet::EMPTY;
            for &v in s {
                if v == 0 || v > g.nvertices() {
                    bail!("vertex {v} is outside 1..={}", g.nvertices());
                }
                set.insert(v - 1);
            }
            let h = g.s_suspension(set)?;
            let value = json!(EdgeListJson::from_graph(&h));
            emit(&args.out, &value, || value.to_string());
        }
        Command::Reg(args) | Command::Pd(args) | Command::Depth(args) => {
            let ideal = load(args)?.ideal()?;
            let opts = homology_options(args.out.field)?;
            let (name, n) = match which {
                Command::Reg(_) => ("reg", homology::regularity(&ideal, &opts)?),
                Command::Pd(_) => ("pd", homology::projective_dimension(&ideal, &opts)?),
                _ => ("depth", homology::depth(&ideal, &opts)?),
            };
            let value = json!({ name: n, "field": opts.field.characteristic() });
            emit(&args.out, &value, || format!("{name}(R/I) = {n}"));
        }
        Command::Cm(args) => {
            let ideal = load(args)?.ideal()?;
            let opts = homology_options(args.out.field)?;
            let depth = homology::depth(&ideal, &opts)?;
            let dim = homology::krull_dim(&ideal)?;
            let value = json!({ "cohen_macaulay": depth == dim, "depth": depth, "dim": dim, "field": opts.field.characteristic() });
            emit(&args.out, &value, || {
                format!("Cohen-Macaulay: {}  (depth {depth}, dim {dim})", if depth == dim { "yes" } else { "no" })
            });
        }
        Command::Betti(args) => {
            let ideal = load(args)?.ideal()?;
            let opts = homology_options(args.out.field)?;
            let table = homology::betti_table(&ideal, &opts)?;
            let value = json!({ "table": betti_rows(&table), "field": opts.field.characteristic() });
            emit(&args.out, &value, || betti_text(&table).trim_end().to_string());
        }
        Command::Report(args) => {
            let instance = load(args)?;
            let opts = homology_options(args.out.field)?;
            let value = full_report(&instance, &opts)?;
            if args.out.json {
                println!("{}", serde_json::to_string(&value)?);
            } else {
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
        }
        _ => unreachable!("handled in run"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Vnum { input, method, local } => cmd_vnum(&input, method, local),
        Command::Verify { level, seed, out } => {
            let opts = homology_options(out.field)?;
            let report = verify_suite(level, seed, &opts);
            if out.json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                for c in &report.checks {
                    let mark = if c.failures == 0 { "PASS" } else { "FAIL" };
                    println!("{mark} {:<60} {:>8} instances {:>4} failures", c.name, c.instances, c.failures);
                }
                for o in &report.observations {
                    println!("NOTE {:<60} {:>8} occurrences", o.name, o.count);
                }
                for f in &report.failures {
                    println!("failure: {}", serde_json::to_string(f)?);
                }
                println!("suite {}", if report.passed { "passed" } else { "FAILED" });
            }
            Ok(if report.passed { 0 } else { EXIT_FAILURE })
        }
        Command::Survey {
            class,
            n_min,
            n_max,
            density,
            exponent_cap,
            max_edge_size,
            trials,
            seed,
            records,
            out,
        } => {
            let opts = homology_options(out.field)?;
            let config = SurveyConfig {
                class,
                n_min,
                n_max,
                density,
                exponent_cap,
                max_edge_size,
                trials,
                seed,
                all_records: records,
            };
            let report = survey(&config, &opts)?;
            if out.json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!("{:<48} {:>10} {:>10} {:>10}", "inequality", "applicable", "holds", "fails");
                for (name, s) in &report.statistics {
                    println!("{name:<48} {:>10} {:>10} {:>10}", s.applicable, s.holds, s.fails);
                }
                for f in &report.findings {
                    println!("finding: {}", serde_json::to_string(f)?);
                }
                for f in &report.violations {
                    println!("violation: {}", serde_json::to_string(f)?);
                }
            }
            Ok(if !report.violations.is_empty() {
                EXIT_FAILURE
            } else if !report.findings.is_empty() {
                EXIT_FINDINGS
            } else {
                0
            })
        }
        other => cmd_simple(&other),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if matches!(e.downcast_ref(), Some(vnumkit_core::Error::SizeGuard { .. })) {
                eprintln!("hint: set VNUMKIT_SIZE_GUARD to raise the homology size guards");
            }
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

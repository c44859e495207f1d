//! Command-line front end. Exit codes: 0 success, 1 domain error (JSON on
//! stderr), 2 usage error.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sg2::fo::{
    check_axioms, eval_formula, parse_sentence, EvalConfig, SchemeCaps, Structure, Theory,
};
use sg2::invariants::{
    sweep, triple, CongruenceFilter, CsvWriter, GridAccumulator, SvgWriter, SweepConfig,
};
use sg2::limit::{decide_reduced_system, eval_qf_sentence, validate, LimitInvariants, LimitModel};
use sg2::systems::{solve_direct, solve_via_lambda, System};
use sg2::transfer::{
    catalog_threshold, check_agreement, default_catalog, generate_family, preset, FamilySpec,
    PRESETS,
};
use sg2::{Elem, Error, Result, TwoGenSemigroup};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sg2",
    version,
    about = "Two-generator numerical semigroups and their limit models"
)]
struct Cli {
    /// Print every result as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Pair {
    a: u64,
    b: u64,
}

#[derive(Args)]
struct ModelSource {
    /// A shipped preset name.
    #[arg(long, conflicts_with = "invariants")]
    preset: Option<String>,
    /// A limit-invariants JSON file.
    #[arg(long)]
    invariants: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Notable constants and ratio invariants.
    Info(Pair),
    /// Membership of x.
    Member {
        #[command(flatten)]
        pair: Pair,
        x: Elem,
    },
    /// The decomposition x = m*ab + m_a*a + m_b*b.
    Decomp {
        #[command(flatten)]
        pair: Pair,
        x: Elem,
    },
    /// Check the axiom catalog, or evaluate given sentences.
    Axioms {
        #[command(flatten)]
        pair: Pair,
        /// Universe bound: a number or `auto` (3ab).
        #[arg(long, default_value = "auto")]
        bound: String,
        /// Largest modulus and multiplier in the axiom schemes.
        #[arg(long, default_value_t = 8)]
        cap: u64,
        /// Evaluate this sentence instead of the catalog (repeatable).
        #[arg(long)]
        sentence: Vec<String>,
    },
    /// Solve a residue/window system given as JSON text or a file path.
    Solve {
        #[command(flatten)]
        pair: Pair,
        system: String,
        /// Solve by enumerating distances instead of scanning multiples of b.
        #[arg(long)]
        lambda: bool,
    },
    /// The ratio triple (q0, q1, q2).
    Ratios(Pair),
    /// Sweep coprime pairs and write (q1, q2) as CSV.
    Sweep {
        /// Largest generator b.
        #[arg(long)]
        max: u64,
        /// Keep only pairs with a = res-a and b = res-b modulo this.
        #[arg(long = "mod", requires_all = ["res_a", "res_b"])]
        modulus: Option<u64>,
        #[arg(long, requires = "modulus")]
        res_a: Option<u64>,
        #[arg(long, requires = "modulus")]
        res_b: Option<u64>,
        /// CSV output path.
        #[arg(long)]
        out: String,
        /// Optional scatter plot path.
        #[arg(long)]
        svg: Option<String>,
        /// Side length of the scatter plot in pixels.
        #[arg(long, default_value_t = 512)]
        svg_size: u64,
        /// Grid resolution for the coverage summary.
        #[arg(long, default_value_t = 20)]
        grid: u64,
        /// Worker threads; output does not depend on it.
        #[arg(long, env = "SG2_THREADS")]
        threads: Option<usize>,
    },
    /// Evaluate quantifier-free sentences in a limit model.
    LimitEval {
        #[command(flatten)]
        model: ModelSource,
        /// Sentence to evaluate (repeatable); defaults to the shipped catalog.
        #[arg(long)]
        sentence: Vec<String>,
    },
    /// Decide a reduced system in a limit model via a witness.
    LimitSolve {
        #[command(flatten)]
        model: ModelSource,
        system: String,
        /// Lower bound for the witness generator a.
        #[arg(long)]
        floor: Option<u64>,
    },
    /// Compare a limit model with large finite semigroups.
    Transfer {
        /// Shipped preset; all presets when neither this nor --invariants is given.
        #[command(flatten)]
        model: ModelSource,
        /// Family members per model.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Least generator a in the family.
        #[arg(long, default_value_t = 10_000)]
        a_floor: u64,
        /// Seed for the family generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sentence catalog file; defaults to the shipped catalog.
        #[arg(long)]
        catalog: Option<String>,
        /// Worker threads; output does not depend on it.
        #[arg(long, env = "SG2_THREADS")]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(1)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::SinkFailure(e.to_string())
}

fn read_text(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') || arg.trim_start().starts_with('(') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::OutOfDomain(format!("cannot read {arg}: {e}")))
    }
}

fn parse_system(arg: &str) -> Result<System> {
    serde_json::from_str(&read_text(arg)?).map_err(|e| Error::InvalidSystem(e.to_string()))
}

fn load_model(src: &ModelSource) -> Result<LimitModel> {
    let inv = match (&src.preset, &src.invariants) {
        (Some(p), _) => preset(p)?,
        (None, Some(path)) => LimitInvariants::from_json(&read_text(path)?)?,
        (None, None) => return Err(Error::OutOfDomain("give --preset or --invariants".into())),
    };
    validate(&inv)
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::ConfigRejected(e.to_string()))
}

fn line(out: &mut String, s: impl std::fmt::Display) {
    out.push_str(&s.to_string());
    out.push('\n');
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: &Cli, out: &mut String) -> Result<()> {
    let sg = |p: &Pair| TwoGenSemigroup::new(p.a, p.b);
    match &cli.cmd {
        Cmd::Info(p) => {
            let s = sg(p)?;
            let t = triple(&s);
            if cli.json {
                line(
                    out,
                    pretty(&json!({
                        "a": s.a(), "b": s.b(), "ab": s.ab(), "frobenius": s.frobenius(),
                        "conductor": s.conductor(), "genus": s.genus(), "alpha1": s.alpha1(),
                        "beta1": s.beta1(), "q1": t.q1.to_string(), "q2": t.q2.to_string(),
                    })),
                );
            } else {
                line(out, format_args!(
                    "a={} b={} ab={} frobenius={} conductor={} genus={} alpha1={} beta1={} q1={} q2={}",
                    s.a(), s.b(), s.ab(), s.frobenius(), s.conductor(), s.genus(), s.alpha1(), s.beta1(), t.q1, t.q2
                ));
            }
        }
        Cmd::Member { pair, x } => {
            let s = sg(pair)?;
            let m = s.contains(*x);
            if cli.json {
                line(out, json!({ "x": x, "member": m }));
            } else {
                line(out, format_args!("x={x} member={m}"));
            }
        }
        Cmd::Decomp { pair, x } => {
            let d = sg(pair)?.decompose(*x)?;
            if cli.json {
                line(out, json!({ "x": x, "m": d.m, "m_a": d.m_a, "m_b": d.m_b }));
            } else {
                line(
                    out,
                    format_args!("x={x} m={} m_a={} m_b={}", d.m, d.m_a, d.m_b),
                );
            }
        }
        Cmd::Axioms {
            pair,
            bound,
            cap,
            sentence,
        } => {
            let s = sg(pair)?;
            let universe = match bound.as_str() {
                "auto" => 3 * s.ab(),
                n => n
                    .parse()
                    .map_err(|_| Error::OutOfDomain(format!("bad bound `{n}`")))?,
            };
            let st = Structure::new(s);
            if !sentence.is_empty() {
                let cfg = EvalConfig {
                    universe,
                    ..EvalConfig::auto(&s)
                };
                let mut rows = Vec::new();
                for src in sentence {
                    let rep = eval_formula(&st, &parse_sentence(src)?, &cfg);
                    rows.push(
                        json!({ "sentence": src, "value": rep.value, "undefined": rep.undefined }),
                    );
                    if !cli.json {
                        line(
                            out,
                            format_args!("{} undefined={}  {src}", rep.value, rep.undefined),
                        );
                    }
                }
                if cli.json {
                    line(out, pretty(&rows));
                }
                return Ok(());
            }
            let caps = SchemeCaps {
                n_max: *cap,
                k_max: *cap,
                ..SchemeCaps::default()
            };
            let rep = check_axioms(&st, universe, &caps);
            if cli.json {
                line(out, pretty(&rep));
                return Ok(());
            }
            line(
                out,
                format_args!("a={} b={} universe={universe} cap={cap}", s.a(), s.b()),
            );
            for (ax, th, ok, all) in rep.summary() {
                let status = if ok == all { "pass" } else { "FAIL" };
                line(
                    out,
                    format_args!("axiom {ax:>2} {th:?} {status} {ok}/{all}"),
                );
            }
            for f in rep.failures() {
                line(
                    out,
                    format_args!("  failed {} counterexample={:?}", f.name, f.counterexample),
                );
            }
            line(
                out,
                format_args!(
                    "Tons: {}  Tlons: {}",
                    rep.passes(Theory::Tons),
                    rep.passes(Theory::Tlons)
                ),
            );
        }
        Cmd::Solve {
            pair,
            system,
            lambda,
        } => {
            let s = sg(pair)?;
            let sys = parse_system(system)?;
            let x = if *lambda {
                solve_via_lambda(&s, &sys)?
            } else {
                solve_direct(&s, &sys)?
            };
            if cli.json {
                line(out, json!({ "realizable": x.is_some(), "x": x }));
            } else {
                line(out, x.map_or("x=none".into(), |x| format!("x={x}")));
            }
        }
        Cmd::Ratios(p) => {
            let t = triple(&sg(p)?);
            if cli.json {
                line(out, pretty(&t));
            } else {
                line(
                    out,
                    format_args!("q0={} q1={} q2={} l={} k={}", t.q0, t.q1, t.q2, t.l, t.k),
                );
            }
        }
        Cmd::Sweep {
            max,
            modulus,
            res_a,
            res_b,
            out: path,
            svg,
            svg_size,
            grid,
            threads,
        } => {
            let filter = modulus.map(|m| CongruenceFilter {
                modulus: m,
                res_a: res_a.unwrap_or(0),
                res_b: res_b.unwrap_or(0),
            });
            let cfg = SweepConfig {
                max: *max,
                filter,
                threads: *threads,
            };
            let mut csv = CsvWriter::new(BufWriter::new(File::create(path).map_err(io)?))?;
            let mut plot = match svg {
                Some(p) => {
                    let title = match filter {
                        Some(f) => {
                            format!("N={max}, a={} b={} (mod {})", f.res_a, f.res_b, f.modulus)
                        }
                        None => format!("N={max}"),
                    };
                    Some(SvgWriter::new(
                        BufWriter::new(File::create(p).map_err(io)?),
                        *svg_size,
                        &title,
                    )?)
                }
                None => None,
            };
            let mut acc = GridAccumulator::new(*grid)?;
            let n = sweep(&cfg, |r| {
                acc.push(r);
                if let Some(p) = plot.as_mut() {
                    p.write(r)?;
                }
                csv.write(r)
            })?;
            csv.finish()?.flush().map_err(io)?;
            if let Some(p) = plot {
                p.finish()?.flush().map_err(io)?;
            }
            let stats = acc.finish()?;
            if cli.json {
                line(
                    out,
                    pretty(&json!({ "pairs": n, "csv": path, "svg": svg, "grid": stats })),
                );
            } else {
                line(out, format_args!("pairs={n} csv={path}"));
                line(
                    out,
                    format_args!(
                        "grid={}x{} occupied={} coverage={:.6} q1<1/2={:.6} q2<1/2={:.6}",
                        stats.k,
                        stats.k,
                        stats.occupied,
                        stats.coverage,
                        stats.frac_q1_below_half,
                        stats.frac_q2_below_half
                    ),
                );
            }
        }
        Cmd::LimitEval { model, sentence } => {
            let md = load_model(model)?;
            let catalog = if sentence.is_empty() {
                default_catalog()
            } else {
                sentence
                    .iter()
                    .map(|s| Ok((s.clone(), parse_sentence(s)?)))
                    .collect::<Result<Vec<_>>>()?
            };
            let mut rows = Vec::new();
            for (name, s) in &catalog {
                let row = match eval_qf_sentence(&md, s) {
                    Ok(r) => json!({ "name": name, "value": r.value, "undefined": r.undefined }),
                    Err(e @ (Error::InsufficientProfile(_) | Error::Unsupported(_))) => {
                        json!({ "name": name, "skipped": e.kind(), "message": e.to_string() })
                    }
                    Err(e) => return Err(e),
                };
                rows.push(row);
            }
            if cli.json {
                line(
                    out,
                    pretty(&json!({
                        "q0": md.q0().to_string(), "q1": md.q1().to_string(), "q2": md.q2().to_string(),
                        "sentences": rows,
                    })),
                );
            } else {
                line(
                    out,
                    format_args!("q0={} q1={} q2={}", md.q0(), md.q1(), md.q2()),
                );
                for r in rows {
                    match r.get("value") {
                        Some(v) => line(
                            out,
                            format_args!(
                                "{v:<5} undefined={}  {}",
                                r["undefined"],
                                r["name"].as_str().unwrap_or("")
                            ),
                        ),
                        None => line(
                            out,
                            format_args!(
                                "skip  {}  {}",
                                r["skipped"].as_str().unwrap_or(""),
                                r["name"].as_str().unwrap_or("")
                            ),
                        ),
                    }
                }
            }
        }
        Cmd::LimitSolve {
            model,
            system,
            floor,
        } => {
            let md = load_model(model)?;
            let sys = parse_system(system)?;
            let d = decide_reduced_system(&md, sys.reduced(), *floor)?;
            if cli.json {
                line(out, pretty(&d));
            } else {
                let w = d.witness.map_or("-".into(), |(a, b)| format!("<{a}, {b}>"));
                let x = d.x.map_or("-".into(), |x| x.to_string());
                line(
                    out,
                    format_args!("realizable={} witness={w} x={x}", d.realizable),
                );
                if let Some(n) = d.note {
                    line(out, format_args!("note: {n}"));
                }
            }
        }
        Cmd::Transfer {
            model,
            count,
            a_floor,
            seed,
            catalog,
            threads,
        } => {
            let catalog = match catalog {
                Some(path) => sg2::fo::parse_catalog(&read_text(path)?)?,
                None => default_catalog(),
            };
            let threshold = catalog_threshold(&catalog);
            let models: Vec<LimitModel> = if model.preset.is_none() && model.invariants.is_none() {
                PRESETS
                    .iter()
                    .map(|(n, _)| validate(&preset(n)?))
                    .collect::<Result<_>>()?
            } else {
                vec![load_model(model)?]
            };
            let spec = FamilySpec {
                count: *count,
                a_floor: *a_floor,
                seed: *seed,
            };
            let pool = pool(*threads)?;
            let mut reports = Vec::new();
            for md in &models {
                let family = generate_family(md, &spec)?;
                reports.push(pool.install(|| check_agreement(md, &family, &catalog, threshold)));
            }
            if cli.json {
                line(out, pretty(&reports));
            } else {
                for (md, r) in models.iter().zip(&reports) {
                    let name = r.preset.clone().unwrap_or_else(|| "custom".into());
                    line(
                        out,
                        format_args!("== {name}  q0={} q1={} q2={}", md.q0(), md.q1(), md.q2()),
                    );
                    out.push_str(&r.table());
                }
            }
        }
    }
    Ok(())
}

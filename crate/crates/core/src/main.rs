use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hamorient::decomposition::{decompose, verify_partition, DecompositionParams};
use hamorient::embedding::{
    check_embedding, embed_hamilton_orientation, embed_with_classes, exact_embed, EmbedParams, OracleOptions,
    OracleResult, PatternRef,
};
use hamorient::expansion::{
    certify_expander, dichotomy_nu, sparse_or_expander, CertificateJson, CheckMode, Dichotomy, DichotomyOptions,
    ExpansionParams,
};
use hamorient::generators::{GenSpec, TournamentKind};
use hamorient::io::{read_edge_list_file, write_edge_list};
use hamorient::workbench::{run, run_trial, ExperimentConfig, Outcome, Trial};
use hamorient::{CyclePattern, Digraph, VertexSet};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "hamorient", version, about = "Oriented Hamilton cycles in dense digraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated digraph as an edge list.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        /// Part sizes for g1, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        intra: f64,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Minimum degree target for random-min-degree.
        #[arg(long)]
        delta: Option<usize>,
        /// Random tournament instead of transitive.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose into ordered robust-expander classes.
    Partition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Strict parameters derived from zeta; without it the relaxed desk set is used.
        #[arg(long)]
        zeta: Option<f64>,
        #[arg(long)]
        exact_cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed an oriented Hamilton cycle.
    Embed {
        #[arg(long)]
        input: PathBuf,
        /// `+`/`-` string, `directed` or `antidirected`.
        #[arg(long)]
        pattern: String,
        /// Output of `partition`; computed with the desk parameters if absent.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Pipeline)]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        deadline_ms: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit certificates and check artifacts.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Run an experiment config, or replay one trial.
    Experiment {
        #[arg(long, conflicts_with = "trial")]
        config: Option<PathBuf>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// A trial as printed in a reproducer line.
        #[arg(long)]
        trial: Option<String>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Robust outexpander certificate.
    Expander {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        tau: f64,
        /// Sample this many sets per size decile instead of the exhaustive sweep.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sparse cut or expander.
    Dichotomy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check an embedding file against a digraph.
    Embedding {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
    /// Re-check a partition file against a digraph.
    Partition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        zeta: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Complete,
    BipartiteExtremal,
    SplitCliques,
    G1,
    RandomMinDegree,
    Tournament,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Pipeline,
    Oracle,
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn params_for(k: usize, zeta: Option<f64>, exact_cap: Option<usize>, seed: u64) -> Result<DecompositionParams> {
    let mut p = match zeta {
        Some(z) => DecompositionParams::new(k, z)?,
        None => DecompositionParams::desk(k),
    };
    if let Some(c) = exact_cap {
        p.exact_threshold = c;
    }
    p.seed = seed;
    Ok(p)
}

fn classes_from(path: &Path, n: usize) -> Result<Vec<VertexSet>> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let raw = v.pointer("/partition/classes").or_else(|| v.get("classes")).context("no classes in partition file")?;
    let lists: Vec<Vec<usize>> = serde_json::from_value(raw.clone())?;
    lists.iter().map(|m| VertexSet::from_members(n, m).map_err(anyhow::Error::msg)).collect()
}

fn real_main(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Generate { family, n, sizes, intra, noise, delta, random, seed, out } => {
            let need_n = || n.context("--n is required for this family");
            let spec = match family {
                FamilyArg::Complete => GenSpec::Complete { n: need_n()? },
                FamilyArg::BipartiteExtremal => GenSpec::BipartiteExtremal { n: need_n()? },
                FamilyArg::SplitCliques => GenSpec::SplitCliques { n: need_n()? },
                FamilyArg::G1 => GenSpec::G1 { sizes, intra, noise, seed },
                FamilyArg::RandomMinDegree => {
                    GenSpec::RandomMinDegree { n: need_n()?, delta: delta.context("--delta is required")?, seed }
                }
                FamilyArg::Tournament => GenSpec::Tournament {
                    n: need_n()?,
                    kind: if random { TournamentKind::Random { seed } } else { TournamentKind::Transitive },
                },
            };
            let g = spec.generate()?;
            let text = write_edge_list(&g, Some(&serde_json::to_string(&spec)?));
            match out {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Cmd::Partition { input, k, zeta, exact_cap, seed, out } => {
            let g = read_edge_list_file(&input)?;
            let p = params_for(k, zeta, exact_cap, seed)?;
            let sp = decompose(&g, &p)?;
            let report = verify_partition(&g, &sp.classes, &p);
            emit(&json!({ "params": p, "partition": sp, "report": report }), out.as_deref())?;
            Ok(true)
        }
        Cmd::Embed { input, pattern, partition, mode, k, deadline_ms, seed, out } => {
            let g = read_edge_list_file(&input)?;
            let c = CyclePattern::parse_with_len(&pattern, g.n())?;
            let (map, extra) = match mode {
                Mode::Oracle => {
                    let opts = OracleOptions::default().with_deadline(Some(Duration::from_millis(deadline_ms)));
                    match exact_embed(&g, PatternRef::Cycle(&c), &[], &opts)? {
                        OracleResult::Found(e) => (Some(e.map), json!({ "mode": "oracle" })),
                        OracleResult::None => (None, json!({ "mode": "oracle", "result": "none" })),
                        OracleResult::Timeout => (None, json!({ "mode": "oracle", "result": "timeout" })),
                    }
                }
                Mode::Pipeline => {
                    let params = EmbedParams { seed, deadline_ms, ..EmbedParams::default() };
                    let o = match partition {
                        Some(p) => {
                            let mut classes = classes_from(&p, g.n())?;
                            classes.reverse();
                            embed_with_classes(&g, &classes, &c, &params)?
                        }
                        None => {
                            let sp = decompose(&g, &DecompositionParams::desk(k))?;
                            embed_hamilton_orientation(&g, &sp, &c, &params)?
                        }
                    };
                    let audit = json!({
                        "mode": "pipeline", "case": o.case, "attempts": o.attempts,
                        "fallback_used": o.fallback_used, "flags": o.flags, "plan": o.plan,
                    });
                    (Some(o.embedding.map), audit)
                }
            };
            let check = map.as_ref().map(|m| check_embedding(&g, PatternRef::Cycle(&c), m, true));
            let pairs: Option<Vec<[usize; 2]>> = map.as_ref().map(|m| m.iter().enumerate().map(|(i, &v)| [i, v]).collect());
            let ok = check.as_ref().is_some_and(|r| r.valid);
            emit(
                &json!({ "pattern": c.to_signs(), "n": g.n(), "map": pairs, "check": check, "audit": extra }),
                out.as_deref(),
            )?;
            Ok(ok)
        }
        Cmd::Verify { what } => verify(what),
        Cmd::Experiment { config, out, trial } => {
            if let Some(t) = trial {
                let t: Trial = serde_json::from_str(&t).context("parsing --trial")?;
                let r = run_trial(&t, "replay");
                println!("{}", serde_json::to_string_pretty(&r)?);
                return Ok(r.outcome != Outcome::Fail);
            }
            let Some(path) = config else { bail!("either --config or --trial is required") };
            let cfg = ExperimentConfig::load(&path)?;
            let s = run(&cfg, &out)?;
            for x in &s.suites {
                println!(
                    "{:<14} {:>6} trials  pass {:>6}  fail {:>4}  inconclusive {:>4}  timeout {:>4}  -> {}",
                    x.suite, x.trials, x.pass, x.fail, x.inconclusive, x.timeout, x.csv
                );
            }
            Ok(!s.failed)
        }
    }
}

fn verify(what: Verify) -> Result<bool> {
    match what {
        Verify::Expander { input, nu, tau, trials, seed, out } => {
            let g = read_edge_list_file(&input)?;
            let mode = match trials {
                Some(t) => CheckMode::Sampled { trials: t, seed },
                None => CheckMode::Exact,
            };
            let v = certify_expander(&g, &ExpansionParams::new(nu, tau, mode)?)?;
            emit(&serde_json::to_value(CertificateJson::from_verdict(&v, nu, tau, None))?, out.as_deref())?;
            Ok(!v.is_violator())
        }
        Verify::Dichotomy { input, eta, alpha, tau, out } => {
            let g = read_edge_list_file(&input)?;
            let nu = dichotomy_nu(eta, alpha, tau);
            let (cert, ok) = match sparse_or_expander(&g, eta, alpha, tau, &DichotomyOptions::default())? {
                Dichotomy::Cut(c) => (CertificateJson::from_cut(&c, alpha, true, Some(nu), Some(tau)), true),
                Dichotomy::Expander(v) => (CertificateJson::from_verdict(&v, nu, tau, Some(alpha)), true),
                Dichotomy::Neither { verdict, .. } => {
                    let mut c = CertificateJson::from_verdict(&verdict, nu, tau, Some(alpha));
                    c.outcome = "neither".into();
                    (c, false)
                }
            };
            emit(&serde_json::to_value(cert)?, out.as_deref())?;
            Ok(ok)
        }
        Verify::Embedding { input, embedding } => {
            let g = read_edge_list_file(&input)?;
            let v: Value = serde_json::from_str(&std::fs::read_to_string(&embedding)?)?;
            let signs = v.get("pattern").and_then(Value::as_str).context("no pattern in embedding file")?;
            let c = CyclePattern::parse(signs)?;
            let pairs: Vec<[usize; 2]> =
                serde_json::from_value(v.get("map").cloned().unwrap_or(Value::Null)).context("no map in embedding file")?;
            let mut map = vec![usize::MAX; pairs.len()];
            for [i, x] in pairs {
                if i >= map.len() {
                    bail!("position {i} out of range");
                }
                map[i] = x;
            }
            let r = check_embedding(&g, PatternRef::Cycle(&c), &map, true);
            emit(&serde_json::to_value(&r)?, None)?;
            Ok(r.valid)
        }
        Verify::Partition { input, partition, k, zeta } => {
            let g: Digraph = read_edge_list_file(&input)?;
            let classes = classes_from(&partition, g.n())?;
            let p = params_for(k, zeta, None, 0)?;
            let r = verify_partition(&g, &classes, &p);
            emit(&serde_json::to_value(&r)?, None)?;
            Ok(r.clause1.pass && r.clause3.pass && r.clause4.pass)
        }
    }
}

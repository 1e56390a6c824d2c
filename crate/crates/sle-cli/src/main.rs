use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use sle_core::bench::{bench_instance, BenchReport, Verdict};
use sle_core::fpt::FptContext;
use sle_core::gen::{gen_random, GenParams};
use sle_core::io::{self, emit_instance, emit_solution, parse_instance, parse_solution, to_canonical_json};
use sle_core::oracle::default_cap;
use sle_core::reductions::{extract_certificate, reduce_3sat, reduce_mcc, Extracted, ReductionCertificate};
use sle_core::render::{render_instance, PageMode, RenderOptions};
use sle_core::{super_intervals, Algorithm, Error, Instance, SolveOptions};

/// Stack layout extension toolkit.
#[derive(Parser)]
#[command(name = "sle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the layout of H extends to G and write a solution if so.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Build a hardness instance from a 3-CNF formula or a colored graph.
    Reduce {
        #[command(subcommand)]
        source: ReduceSource,
    },
    /// Map a solution of a reduction instance back to its source.
    Extract { instance: PathBuf, solution: PathBuf, certificate: PathBuf },
    /// Draw the layout of H, or a solution, as an SVG arc diagram.
    Render(RenderArgs),
    /// Run several algorithms over a directory of instances and compare verdicts.
    Bench(BenchArgs),
    /// Print the size parameters of an instance.
    Stats { instance: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value = "auto")]
    algo: Algorithm,
    /// Time budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Accepted for reproducible scripts; every solver is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the solution here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print branch counters and the theoretical bound to stderr.
    #[arg(long)]
    emit_branch_stats: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n_h: usize,
    #[arg(long)]
    m_h: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, default_value_t = 0)]
    n_add: usize,
    #[arg(long, default_value_t = 0)]
    m_add: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceSource {
    /// From a DIMACS CNF file with exactly three literals per clause.
    #[command(name = "3sat")]
    Sat3 {
        input: PathBuf,
        #[command(flatten)]
        out: ReduceOut,
    },
    /// From a JSON colored graph: {"k", "vertices": [{"name","color"}], "edges": [{"u","v"}]}.
    Mcc {
        input: PathBuf,
        #[command(flatten)]
        out: ReduceOut,
    },
}

#[derive(Args)]
struct ReduceOut {
    /// Instance output file.
    #[arg(short, long)]
    output: PathBuf,
    /// Certificate output file.
    #[arg(short, long)]
    certificate: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    instance: PathBuf,
    /// Draw this solution instead of the layout of H.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// One band per page instead of alternating half-planes.
    #[arg(long)]
    stacked: bool,
    #[arg(long)]
    no_labels: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    corpus: PathBuf,
    /// Comma-separated algorithms; defaults to all of them.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<Algorithm>,
    /// Per-run time budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Write the JSON report here.
    #[arg(short, long)]
    report: Option<PathBuf>,
}

/// A definite negative answer: no extension exists, or a solution was rejected.
#[derive(Debug)]
struct Negative(String);

impl std::fmt::Display for Negative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Negative {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(n) = e.downcast_ref::<Negative>() {
                eprintln!("{n}");
                return ExitCode::from(1);
            }
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Timeout | Error::Capacity { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Solve(a) => solve(a),
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance)?;
            let raw = parse_solution(&read(&solution)?)?;
            match io::verify(&inst, &raw) {
                Ok(_) => {
                    println!("ok");
                    Ok(())
                }
                Err(v) => Err(Negative(format!("rejected: {v}")).into()),
            }
        }
        Command::Gen(a) => {
            let params = GenParams { n_h: a.n_h, m_h: a.m_h, ell: a.ell, n_add: a.n_add, m_add: a.m_add, seed: a.seed };
            write_out(a.output.as_deref(), &emit_instance(&gen_random(&params)?)?)
        }
        Command::Reduce { source } => {
            let (inst, cert, out) = match source {
                ReduceSource::Sat3 { input, out } => {
                    let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
                    let (inst, cert) = reduce_3sat(&io::parse_dimacs(&text)?)?;
                    (inst, cert, out)
                }
                ReduceSource::Mcc { input, out } => {
                    let (inst, cert) = reduce_mcc(&io::parse_mcc(&read(&input)?)?)?;
                    (inst, cert, out)
                }
            };
            write_out(Some(&out.output), &emit_instance(&inst)?)?;
            write_out(Some(&out.certificate), &to_canonical_json(&cert)?)
        }
        Command::Extract { instance, solution, certificate } => {
            let inst = load_instance(&instance)?;
            let layout = io::verify(&inst, &parse_solution(&read(&solution)?)?)?;
            let cert: ReductionCertificate =
                serde_json::from_slice(&read(&certificate)?).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
            match extract_certificate(&inst, &layout, &cert)? {
                Extracted::Assignment(values) => {
                    let lits: Vec<String> = values
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                        .collect();
                    println!("v {} 0", lits.join(" "));
                }
                Extracted::Clique(names) => println!("{}", names.join(" ")),
            }
            Ok(())
        }
        Command::Render(a) => {
            let inst = load_instance(&a.instance)?;
            let layout = match &a.solution {
                Some(p) => io::verify(&inst, &parse_solution(&read(p)?)?)?,
                None => inst.layout_h().clone(),
            };
            let opts = RenderOptions {
                mode: if a.stacked { PageMode::Stacked } else { PageMode::Alternate },
                labels: !a.no_labels,
                ..RenderOptions::default()
            };
            write_out(a.output.as_deref(), &render_instance(&inst, &layout, &opts))
        }
        Command::Bench(a) => bench(a),
        Command::Stats { instance } => {
            let inst = load_instance(&instance)?;
            let ctx = FptContext::new(&inst);
            println!("n_add {}", inst.n_add());
            println!("m_add {}", inst.m_add());
            println!("kappa {}", inst.kappa());
            println!("ell {}", inst.ell());
            println!("omega {}", ctx.omega());
            println!("super_intervals {}", super_intervals(&inst).len());
            Ok(())
        }
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let inst = load_instance(&a.instance)?;
    let opts = SolveOptions { algorithm: a.algo, timeout: timeout(a.timeout)?, oracle_cap: default_cap() };
    let out = sle_core::solve(&inst, &opts)?;
    if a.emit_branch_stats {
        let s = &out.stats;
        let bound = s.bound.map_or_else(|| "-".to_string(), |b| b.to_string());
        eprintln!(
            "algorithm {} branches {} rejected {} dp_cells {} bound {} elapsed_ms {:.3}",
            out.algorithm,
            s.branches,
            s.rejected,
            s.dp_cells,
            bound,
            s.elapsed.as_secs_f64() * 1e3
        );
    }
    match &out.layout {
        Some(layout) => write_out(a.output.as_deref(), &emit_solution(&inst, layout)?),
        None => Err(Negative("not extendable".into()).into()),
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let algos = if a.algos.is_empty() { Algorithm::ALL.to_vec() } else { a.algos };
    let budget = timeout(a.timeout)?;
    let mut files: Vec<PathBuf> = fs::read_dir(&a.corpus)
        .with_context(|| format!("reading {}", a.corpus.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "json"));
    files.sort();
    let mut report = BenchReport::default();
    for path in &files {
        let inst = load_instance(path)?;
        let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let entry = bench_instance(&name, &inst, &algos, budget, default_cap());
        let cells: Vec<String> =
            entry.runs.iter().map(|r| format!("{}={}", r.algorithm, verdict_tag(r.verdict))).collect();
        println!("{}{name} {}", if entry.discrepancy { "DISCREPANCY " } else { "" }, cells.join(" "));
        report.entries.push(entry);
    }
    if let Some(p) = &a.report {
        write_out(Some(p), &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    }
    let bad = report.discrepancies();
    println!("{} instances, {} discrepancies", report.entries.len(), bad);
    for (name, algo) in report.over_bound() {
        println!("over bound: {name} {algo}");
    }
    if bad > 0 {
        return Err(Negative(format!("{bad} instances with disagreeing verdicts")).into());
    }
    Ok(())
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Extendable => "yes",
        Verdict::NotExtendable => "no",
        Verdict::Timeout => "timeout",
        Verdict::Capacity => "capacity",
        Verdict::Skipped => "-",
        Verdict::Error => "error",
    }
}

fn timeout(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| Duration::try_from_secs_f64(s).context("timeout must be a non-negative number of seconds")).transpose()
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

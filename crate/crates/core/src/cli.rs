//! Command-line front end. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 ok (or verdict true), 1 verdict false under `--check`,
//! 2 input or usage error, 3 budget exceeded.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{self, Ray};
use crate::directsum::{self, GenMode};
use crate::error::{Error, Result};
use crate::gluing::{self, Decision, SearchOptions, DEFAULT_MAX_GENS};
use crate::io::{parse_instance, InstanceFile};
use crate::json::to_canonical_string;
use crate::report::{analyze, render_decision, AnalyzeOptions};
use crate::semigroup::GeneratorSet;
use crate::toric::{self, Budget, OracleConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toric-ci", version, about = "Complete-intersection decisions for affine semigroups and their cones")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Refuse inputs with more generators than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENS)]
    max_gens: usize,
    /// Reduction-step budget for the toric-ideal oracle.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Args, Debug)]
struct Output {
    /// Emit canonical JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: rays, both decisions, bipyramidality, ray bound.
    Analyze {
        file: String,
        #[command(flatten)]
        out: Output,
        /// Also run the toric-ideal oracle.
        #[arg(long)]
        oracle: bool,
        /// Exit 1 unless N A is a complete intersection.
        #[arg(long)]
        check: bool,
        /// Include wall-clock timings (not part of the canonical output).
        #[arg(long)]
        timings: bool,
    },
    /// Is N A a complete intersection?
    IsCi {
        file: String,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        check: bool,
    },
    /// Is pos(A) a complete intersection cone?
    IsCiCone {
        file: String,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        check: bool,
    },
    /// Extreme rays of pos(A).
    Rays {
        file: String,
        #[command(flatten)]
        out: Output,
    },
    /// Direct sum of two cones along their shared line.
    DirectSum {
        file1: String,
        file2: String,
        #[command(flatten)]
        out: Output,
    },
    /// The generators {e_i + e_n, -e_i + e_n : i < n}.
    Bipyramid {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Rescale two complete intersections so that their union glues.
    Witness {
        file1: String,
        file2: String,
        #[command(flatten)]
        out: Output,
    },
    /// A seeded random instance.
    RandomCi {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        out: Output,
    },
    /// Toric-ideal oracle: minimal generators against height.
    Oracle {
        file: String,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        check: bool,
    },
    /// Analyze many instances; output follows input order.
    Corpus {
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        oracle: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Gluing,
    SGluing,
}

impl From<Mode> for GenMode {
    fn from(m: Mode) -> GenMode {
        match m {
            Mode::Gluing => GenMode::Gluing,
            Mode::SGluing => GenMode::SGluing,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) | Error::TooManyGenerators { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let search = SearchOptions {
        max_gens: cli.global.max_gens,
    };
    let oracle_cfg = OracleConfig {
        budget: Budget {
            max_steps: cli.global.budget.unwrap_or(Budget::default().max_steps),
            ..Budget::default()
        },
        ..OracleConfig::default()
    };
    let code = match &cli.command {
        Command::Analyze {
            file,
            out: o,
            oracle,
            check,
            timings,
        } => {
            let a = load(file)?;
            let opts = AnalyzeOptions {
                search,
                oracle: oracle.then_some(oracle_cfg),
                timings: *timings,
            };
            let r = analyze(&a, &opts)?;
            emit(out, o.json, &r, || r.to_text())?;
            let verdict = r.is_ci.as_ref().is_some_and(|d| d.verdict);
            check_code(*check, verdict)
        }
        Command::IsCi { file, out: o, check } => {
            let a = load(file)?;
            let d = gluing::is_complete_intersection_with(&a, search)?;
            emit_decision(out, o.json, &a, "complete intersection", &d)?;
            check_code(*check, d.verdict)
        }
        Command::IsCiCone { file, out: o, check } => {
            let a = load(file)?;
            let d = gluing::is_ci_cone_with(&a, search)?;
            emit_decision(out, o.json, &a, "complete intersection cone", &d)?;
            check_code(*check, d.verdict)
        }
        Command::Rays { file, out: o } => {
            let a = load(file)?;
            let rays = cone::extreme_rays(&a)?;
            let r = RaysOutput {
                name: a.name().map(str::to_owned),
                dim: cone::cone_dim(&a),
                rays,
            };
            emit(out, o.json, &r, || {
                let mut s = format!("cone dimension {}, {} extreme rays\n", r.dim, r.rays.len());
                for ray in &r.rays {
                    s.push_str(&format!("  {ray}\n"));
                }
                s
            })?;
            EXIT_OK
        }
        Command::DirectSum { file1, file2, out: o } => {
            let (a1, a2) = (load(file1)?, load(file2)?);
            let r = directsum::direct_sum(&a1, &a2)?;
            emit(out, o.json, &r, || match &r {
                None => "no direct sum: the spans do not meet in a line inside both cones\n".to_owned(),
                Some(s) => {
                    let mut t = format!(
                        "direct sum along {} ({:?}{})\n",
                        s.a,
                        s.sum_type,
                        s.external_case.map(|c| format!(", {c:?}")).unwrap_or_default()
                    );
                    t.push_str(&format!(
                        "dimensions {} + {} -> {}; rays {} + {} -> {} (predicted {})\n",
                        s.dims.0,
                        s.dims.1,
                        s.dim,
                        s.ray_counts.0,
                        s.ray_counts.1,
                        s.actual_rays.len(),
                        s.predicted_rays
                    ));
                    t
                }
            })?;
            EXIT_OK
        }
        Command::Bipyramid { dim, out: o } => {
            emit_instance(out, o.json, &directsum::bipyramid(*dim)?)?;
            EXIT_OK
        }
        Command::Witness { file1, file2, out: o } => {
            let (a1, a2) = (load(file1)?, load(file2)?);
            let w = directsum::ci_witness(&a1, &a2)?;
            emit(out, o.json, &w, || {
                let mut t = format!("mu = {}, tau = {}, line {} (content {})\n", w.mu, w.tau, w.a, w.g);
                t.push_str(&InstanceFile::from_generator_set(&w.generators).to_text());
                t
            })?;
            EXIT_OK
        }
        Command::RandomCi {
            seed,
            dim,
            steps,
            mode,
            out: o,
        } => {
            emit_instance(out, o.json, &directsum::random_ci_instance(*seed, *dim, *steps, (*mode).into())?)?;
            EXIT_OK
        }
        Command::Oracle { file, out: o, check } => {
            let a = load(file)?;
            let r = toric::is_ci_oracle_with(&a, &oracle_cfg)?;
            emit(out, o.json, &r, || {
                let mut t = format!(
                    "mu = {}, height = {}, complete intersection: {}\nreduced Groebner basis ({}):\n",
                    r.mu,
                    r.height,
                    if r.is_ci { "yes" } else { "no" },
                    r.markov.len()
                );
                for b in &r.markov {
                    t.push_str(&format!("  {} - {}\n", monomial(&b.uplus), monomial(&b.uminus)));
                }
                t
            })?;
            check_code(*check, r.is_ci)
        }
        Command::Corpus {
            files,
            out: o,
            oracle,
            jobs,
        } => corpus(files, o.json, oracle.then_some(oracle_cfg), search, *jobs, out)?,
    };
    Ok(code)
}

fn check_code(check: bool, verdict: bool) -> i32 {
    if check && !verdict {
        EXIT_FALSE
    } else {
        EXIT_OK
    }
}

fn load(path: &str) -> Result<GeneratorSet> {
    parse_instance(path)?.to_generator_set()
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let s = if json { to_canonical_string(value) } else { text() };
    out.write_all(s.as_bytes())?;
    Ok(())
}

fn emit_instance(out: &mut dyn Write, json: bool, a: &GeneratorSet) -> Result<()> {
    let f = InstanceFile::from_generator_set(a);
    emit(out, json, &f, || f.to_text())
}

#[derive(Serialize)]
struct DecisionOutput<'a> {
    name: Option<&'a str>,
    #[serde(flatten)]
    decision: &'a Decision,
}

fn emit_decision(out: &mut dyn Write, json: bool, a: &GeneratorSet, label: &str, d: &Decision) -> Result<()> {
    let v = DecisionOutput {
        name: a.name(),
        decision: d,
    };
    emit(out, json, &v, || render_decision(label, d))
}

#[derive(Serialize)]
struct RaysOutput {
    name: Option<String>,
    dim: usize,
    rays: Vec<Ray>,
}

#[derive(Serialize)]
struct CorpusEntry {
    file: String,
    report: Option<crate::report::AnalysisReport>,
    error: Option<String>,
}

fn corpus(
    files: &[String],
    json: bool,
    oracle: Option<OracleConfig>,
    search: SearchOptions,
    jobs: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32> {
    let opts = AnalyzeOptions {
        search,
        oracle,
        timings: false,
    };
    let work = || -> Vec<(CorpusEntry, i32)> {
        files
            .par_iter()
            .map(|f| match load(f).and_then(|a| analyze(&a, &opts)) {
                Ok(r) => (
                    CorpusEntry {
                        file: f.clone(),
                        report: Some(r),
                        error: None,
                    },
                    EXIT_OK,
                ),
                Err(e) => (
                    CorpusEntry {
                        file: f.clone(),
                        report: None,
                        error: Some(e.to_string()),
                    },
                    exit_code(&e),
                ),
            })
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(work),
        None => work(),
    };
    let code = results.iter().map(|(_, c)| *c).max().unwrap_or(EXIT_OK);
    let entries: Vec<&CorpusEntry> = results.iter().map(|(e, _)| e).collect();
    emit(out, json, &entries, || {
        let mut t = String::new();
        for e in &entries {
            t.push_str(&format!("== {}\n", e.file));
            match (&e.report, &e.error) {
                (Some(r), _) => t.push_str(&r.to_text()),
                (None, Some(err)) => t.push_str(&format!("error: {err}\n")),
                (None, None) => {}
            }
        }
        t
    })?;
    Ok(code)
}

fn monomial(u: &crate::linalg::IntVector) -> String {
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != num_bigint::BigInt::from(0))
        .map(|(i, e)| {
            if *e == num_bigint::BigInt::from(1) {
                format!("x{i}")
            } else {
                format!("x{i}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_owned()
    } else {
        parts.join("*")
    }
}

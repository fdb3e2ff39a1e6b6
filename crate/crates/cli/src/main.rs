//! `macdonald`: compute polynomials and run verification checks, emitting
//! JSON.

mod checks;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use macdonald_core::jack::{jack_eig, JackParams};
use macdonald_core::macpoly::{macdonald_eig, macdonald_gs, MacParams};
use macdonald_core::rootdata::{build_root_system, RootSystem};
use macdonald_core::exactfield::Weight;

use checks::Check;

#[derive(Parser, Debug)]
#[command(name = "macdonald", version, about = "Exact Macdonald and Jack polynomial computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Compute one polynomial in the monomial symmetric basis.
    Compute(ComputeArgs),
    /// Run one check over a grid of weights.
    Verify(VerifyArgs),
    /// Run the standard battery of checks.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Macdonald,
    Jack,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Eig,
    Gs,
}

#[derive(Args, Debug)]
struct Common {
    /// Root system label: A1, A2, A3, B2, C2 or G2.
    #[arg(long = "type", default_value = "A1")]
    root_type: String,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "macdonald")]
    family: Family,
    /// Dominant weight in the coweight basis, e.g. `2` or `1,1`.
    #[arg(long)]
    weight: String,
    /// Macdonald parameters: `formal` or `q^<rational>` per root length, `;`-separated.
    #[arg(long)]
    t: Option<String>,
    /// `k` per root length (`t = q_nu^k` for Macdonald); `formal` allowed for Jack.
    #[arg(long)]
    k: Option<String>,
    #[arg(long, value_enum, default_value = "eig")]
    route: Route,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    check: Check,
    #[command(flatten)]
    common: Common,
    /// Integer shift `m` per root length.
    #[arg(long, default_value = "1")]
    m: String,
    /// Integer `k` for the operator identities.
    #[arg(long, default_value_t = 1)]
    k: i64,
    /// Single weight; otherwise every dominant weight up to `--max-height`.
    #[arg(long)]
    weight: Option<String>,
    /// Largest coordinate sum of the weights tried.
    #[arg(long, default_value_t = 2)]
    max_height: i64,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct ErrorJson {
    error: ErrorBody,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(m: impl std::fmt::Display) -> Failure {
        Failure { kind: "usage", message: m.to_string() }
    }

    fn internal(m: impl std::fmt::Display) -> Failure {
        Failure { kind: "computation", message: m.to_string() }
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad integer list {:?}", s))))
        .collect()
}

fn parse_weight(sys: &RootSystem, s: &str) -> Result<Weight, Failure> {
    let c = parse_ints(s)?;
    let w = sys.weight(&c).map_err(Failure::usage)?;
    if !w.is_dominant() {
        return Err(Failure::usage(format!("weight {} is not dominant", s)));
    }
    Ok(w)
}

/// One entry per class, a single entry meaning all classes.
fn per_class(sys: &RootSystem, v: Vec<i64>) -> Result<Vec<i64>, Failure> {
    match v.len() {
        1 => Ok(vec![v[0]; sys.num_classes()]),
        n if n == sys.num_classes() => Ok(v),
        _ => Err(Failure::usage(format!("expected 1 or {} entries", sys.num_classes()))),
    }
}

fn system(label: &str) -> Result<RootSystem, Failure> {
    build_root_system(label).map_err(Failure::usage)
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Failure::internal)?;
    s.push('\n');
    match out {
        Some(p) => std::fs::write(p, s).map_err(|e| Failure::usage(format!("{}: {}", p.display(), e))),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(Failure::internal),
    }
}

fn compute(a: &ComputeArgs) -> Result<u8, Failure> {
    let sys = system(&a.common.root_type)?;
    let b = parse_weight(&sys, &a.weight)?;
    let json = match a.family {
        Family::Macdonald => {
            let params = match (&a.t, &a.k) {
                (Some(_), Some(_)) => return Err(Failure::usage("give --t or --k, not both")),
                (Some(t), None) => MacParams::parse(&sys, t),
                (None, Some(k)) => MacParams::parse_k(&sys, k),
                (None, None) => Ok(MacParams::formal(&sys)),
            }
            .map_err(Failure::usage)?;
            let p = match a.route {
                Route::Eig => macdonald_eig(&sys, &b, &params),
                Route::Gs => macdonald_gs(&sys, &b, &params),
            }
            .map_err(Failure::internal)?;
            p.to_json(&sys)
        }
        Family::Jack => {
            if a.t.is_some() {
                return Err(Failure::usage("--t applies to the macdonald family"));
            }
            let k = match &a.k {
                Some(k) => JackParams::parse(&sys, k).map_err(Failure::usage)?,
                None => JackParams::formal(&sys),
            };
            jack_eig(&sys, &b, &k).map_err(Failure::internal)?.to_json(&sys)
        }
    };
    emit(&json, a.common.out.as_ref())?;
    Ok(0)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().map_err(Failure::internal)
}

fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let sys = system(&a.common.root_type)?;
    let m = per_class(&sys, parse_ints(&a.m)?)?;
    if m.iter().any(|&x| x < 0) {
        return Err(Failure::usage("--m must be nonnegative"));
    }
    if a.k < 1 && a.check.uses_k() {
        return Err(Failure::usage("--k must be at least 1"));
    }
    let weights = match &a.weight {
        Some(w) => vec![parse_weight(&sys, w)?],
        None => sys.dominant_up_to(a.max_height),
    };
    let jobs = checks::plan(&sys, a.check, &weights, &m, a.k);
    let verdicts = pool(a.jobs)?.install(|| checks::run(jobs));
    emit(&verdicts, a.common.out.as_ref())?;
    Ok(checks::exit_code(&verdicts))
}

fn suite(a: &SuiteArgs) -> Result<u8, Failure> {
    let jobs = checks::suite_plan().map_err(Failure::internal)?;
    let verdicts = pool(a.jobs)?.install(|| checks::run(jobs));
    emit(&verdicts, a.out.as_ref())?;
    Ok(checks::exit_code(&verdicts))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = emit(
                &ErrorJson { error: ErrorBody { kind: "usage".into(), message: e.to_string() } },
                None,
            );
            return ExitCode::from(2);
        }
    };
    let res = match &cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Suite(a) => suite(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = emit(&ErrorJson { error: ErrorBody { kind: f.kind.into(), message: f.message } }, None);
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcongruence::congruence::Strategy;
use qcongruence_cli::config::parse_list;
use qcongruence_cli::{cache, conjectures_only, run, CliError, Format, RunBlock, RunConfig};

#[derive(Parser)]
#[command(name = "qcongruence", version, about = "Exact verification of q-supercongruences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify catalog entries over a range of n (and integer entries over primes).
    Verify(VerifyArgs),
    /// Collect evidence for the open conjectures.
    Scan(ScanArgs),
    /// Check the integer congruences at given primes.
    Padic(PadicArgs),
    /// Write a cyclotomic polynomial cache file.
    Cache {
        #[arg(long, default_value_t = 200)]
        nmax: u64,
        #[arg(long)]
        path: PathBuf,
    },
    /// Print the catalog as JSON.
    Manifest,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// TOML config; flags given here override its top-level settings.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<Strategy>,
    #[arg(long)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    fail_fast: bool,
    /// Cyclotomic cache produced by `qcongruence cache`.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated ids, or `all`, `conjectures`, `integer`.
    #[arg(long)]
    ids: Option<String>,
    /// Odd n values, e.g. `3..21`, `5..17:4` or `5,9,13`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    r: Option<String>,
    /// Lower limit k0 of the inner harmonic sums in the two-sum entries.
    #[arg(long)]
    inner_sum_start: Option<i64>,
    /// Exponent multiplier e in the q^{e*d*k} factor of the parametric conjecture.
    #[arg(long)]
    conj5_q_multiplier: Option<i64>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    /// Restrict to these conjecture ids (default: all of them).
    #[arg(long)]
    conjectures: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    r: Option<String>,
}

#[derive(Args)]
struct PadicArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "integer")]
    ids: String,
    #[arg(long)]
    primes: String,
    #[arg(long)]
    r: Option<String>,
}

fn ids_of(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

fn block(ids: Vec<String>, n: Option<String>, primes: Option<&str>, r: Option<&str>) -> Result<RunBlock, CliError> {
    Ok(RunBlock {
        ids,
        n,
        primes: primes.map(parse_list).transpose()?.unwrap_or_default(),
        r: r.map(parse_list).transpose()?.unwrap_or_default(),
    })
}

fn base(common: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = common.strategy {
        cfg.strategy = s;
    }
    if let Some(f) = common.format {
        cfg.format = f;
    }
    if let Some(j) = common.jobs {
        cfg.jobs = j;
    }
    if common.fail_fast {
        cfg.fail_fast = true;
    }
    if let Some(c) = &common.cache {
        cfg.cache = Some(c.clone());
    }
    Ok(cfg)
}

fn execute(cfg: RunConfig, out: Option<&PathBuf>) -> Result<i32, CliError> {
    if cfg.runs.is_empty() {
        return Err(CliError::Usage("nothing to do: give --ids or a config with [[run]] blocks".into()));
    }
    let report = run(&cfg)?;
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            report.write(cfg.format, &mut f)?;
        }
        None => {
            let mut buf = Vec::new();
            report.write(cfg.format, &mut buf)?;
            to_stdout(&buf)?;
        }
    }
    Ok(report.exit_code())
}

/// Writes to stdout; a reader that hangs up early is not an error.
fn to_stdout(bytes: &[u8]) -> Result<(), CliError> {
    let mut lock = std::io::stdout().lock();
    match lock.write_all(bytes).and_then(|_| lock.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Verify(a) => {
            let mut cfg = base(&a.common)?;
            if let Some(k0) = a.inner_sum_start {
                cfg.options.inner_sum_start = k0;
            }
            if let Some(e) = a.conj5_q_multiplier {
                cfg.options.conj5_q_multiplier = e;
            }
            if let Some(ids) = &a.ids {
                cfg.runs = vec![block(ids_of(ids), a.n.clone(), a.primes.as_deref(), a.r.as_deref())?];
            } else if a.n.is_some() || a.primes.is_some() {
                return Err(CliError::Usage("--n and --primes need --ids".into()));
            }
            execute(cfg, a.common.out.as_ref())
        }
        Cmd::Scan(a) => {
            let mut cfg = base(&a.common)?;
            if a.n.is_some() || a.primes.is_some() || a.conjectures.is_some() || cfg.runs.is_empty() {
                let ids = a.conjectures.as_deref().map(ids_of).unwrap_or_default();
                cfg.runs = vec![block(ids, a.n.clone(), a.primes.as_deref(), a.r.as_deref())?];
            }
            execute(conjectures_only(cfg)?, a.common.out.as_ref())
        }
        Cmd::Padic(a) => {
            let mut cfg = base(&a.common)?;
            cfg.runs = vec![block(ids_of(&a.ids), None, Some(&a.primes), a.r.as_deref())?];
            execute(cfg, a.common.out.as_ref())
        }
        Cmd::Cache { nmax, path } => {
            let count = cache::write(&path, nmax)?;
            to_stdout(format!("wrote {count} cyclotomic polynomials to {}\n", path.display()).as_bytes())?;
            Ok(0)
        }
        Cmd::Manifest => {
            let json = serde_json::to_string_pretty(qcongruence::catalog::manifest()).map_err(|e| CliError::Io(e.to_string()))?;
            to_stdout(format!("{json}\n").as_bytes())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qcongruence: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

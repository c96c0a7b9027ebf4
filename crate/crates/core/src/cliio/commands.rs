//! The `bigindec` command line. Exit codes: 0 success / VALID, 1 INVALID or
//! failed verification, 2 input error, 3 search or resource exhaustion.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::homext::ext_module;
use crate::modlib::{depth, free_resolution, nu, punctured_rank, rank_punctured_certificate, truncation_module, MinorGuard};
use crate::pipeline::{
    canonical_seed, construct_big_indecomposable, decompose, ghp_fit, verify_certificate, ConstructOptions,
    ConstructionCertificate,
};

use super::workspace::{parse_spec_with, ModuleDecl, ParseOptions, WorkspaceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bigindec", version, about = "Large indecomposable graded modules with checkable certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a workspace file.
    Check { file: PathBuf },
    /// Minimal free resolution: Betti numbers and shifts.
    Resolve {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
        #[arg(short = 'l', default_value_t = 4)]
        length: usize,
    },
    /// `dim Ext^i(M, R/m^n)`.
    Ext {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'i', default_value_t = 1)]
        i: usize,
    },
    /// Growth of `Ext^1(M, R/m^n)` and the fitted polynomial.
    HilbertExt {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// `min{i : Ext^i(k, M) ≠ 0}`
    Depth {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
    },
    /// Punctured rank; with `-t`, the Fitting certificate for that rank.
    Rank {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
        #[arg(short = 't')]
        t: Option<usize>,
    },
    /// The canonical seed module of each ring.
    Seed { file: PathBuf },
    /// Splits a module into indecomposable summands.
    Decompose {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
    },
    /// Builds `X` and writes its certificate.
    Construct {
        file: PathBuf,
        #[arg(short = 'm')]
        module: String,
        #[arg(short = 'r')]
        r: usize,
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Re-checks a certificate.
    Verify { cert: PathBuf },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SearchExhausted(_) | Error::SizeGuard(_) | Error::CharacteristicGuard { .. } => EXIT_EXHAUSTED,
        Error::Internal(_) => EXIT_INVALID,
        _ => EXIT_INPUT,
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Env {
    pub prime: Option<u32>,
    pub seed: Option<u64>,
}

impl Env {
    /// Reads `BIGINDEC_PRIME` and `BIGINDEC_SEED`.
    pub fn from_process() -> Result<Self> {
        let read = |key: &str| -> Result<Option<u64>> {
            match std::env::var(key) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::InvalidArgument(format!("{key}={v} is not a non-negative integer"))),
                Err(_) => Ok(None),
            }
        };
        let prime = match read("BIGINDEC_PRIME")? {
            Some(p) => Some(u32::try_from(p).map_err(|_| Error::NotPrime(p))?),
            None => None,
        };
        Ok(Env { prime, seed: read("BIGINDEC_SEED")? })
    }
}

/// Parses `argv` (including the program name), runs one command and returns
/// the exit code. Nothing panics on bad input; errors go to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let env = match Env::from_process() {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    match run(&cli.command, env, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load(path: &Path, env: Env) -> Result<WorkspaceSpec> {
    let text = read(path)?;
    parse_spec_with(&text, &ParseOptions { prime: env.prime, seed: env.seed }).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}: {msg}", path.display()) },
        e => e,
    })
}

fn module<'a>(spec: &'a WorkspaceSpec, name: &str) -> Result<&'a ModuleDecl> {
    spec.module(name)
}

fn emit(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{s}").map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

pub fn run(cmd: &Command, env: Env, out: &mut dyn Write) -> Result<i32> {
    let guard = MinorGuard::default();
    match cmd {
        Command::Check { file } => {
            let spec = load(file, env)?;
            for r in &spec.rings {
                let ring = &r.ring;
                emit(
                    out,
                    format!(
                        "ring {}: char {}, {} variables, dimension {}",
                        r.name,
                        ring.field().characteristic(),
                        ring.nvars(),
                        ring.krull_dimension()
                    ),
                )?;
            }
            for m in &spec.modules {
                emit(
                    out,
                    format!(
                        "module {} over {}: {} generators, {} relations",
                        m.name,
                        m.ring,
                        m.module.degrees().len(),
                        m.module.relations().len()
                    ),
                )?;
            }
            for p in &spec.primes {
                emit(out, format!("prime {} in {}: {} generators", p.name, p.ring, p.ideal.generators().len()))?;
            }
            emit(out, "ok")?;
        }
        Command::Resolve { file, module: name, length } => {
            let spec = load(file, env)?;
            let res = free_resolution(&module(&spec, name)?.module, *length)?;
            for (i, d) in res.degrees.iter().enumerate() {
                let shifts: Vec<String> = d.iter().map(|s| s.to_string()).collect();
                emit(out, format!("F{i}: rank {} shifts [{}]", d.len(), shifts.join(", ")))?;
            }
            let betti: Vec<String> = res.betti().iter().map(|b| b.to_string()).collect();
            emit(out, format!("betti {}", betti.join(" ")))?;
        }
        Command::Ext { file, module: name, n, i } => {
            let spec = load(file, env)?;
            let m = &module(&spec, name)?.module;
            let t = truncation_module(m.ring(), *n)?;
            let e = ext_module(m, &t, *i)?;
            let dim = e.dim().ok_or_else(|| Error::Internal("Ext into a finite-length module has finite length".into()))?;
            emit(out, format!("dim Ext^{i}({name}, R/m^{n}) = {dim}"))?;
            emit(out, format!("generators {}", nu(&e.module)))?;
        }
        Command::HilbertExt { file, module: name, n_max, csv } => {
            let spec = load(file, env)?;
            let fit = ghp_fit(&module(&spec, name)?.module, *n_max)?;
            let mut table = String::from("n,length,nu_r\n");
            for row in &fit.table {
                table.push_str(&format!("{},{},{}\n", row.n, row.length, row.nu_r));
            }
            match csv {
                Some(path) => write_file(path, &table)?,
                None => out.write_all(table.as_bytes()).map_err(|e| Error::InvalidArgument(e.to_string()))?,
            }
            emit(
                out,
                format!(
                    "fit: degree {} from n = {}, leading coefficient {}, dim R - 1 = {}",
                    fit.degree,
                    fit.stable_from,
                    fit.slope,
                    fit.dim_ring.saturating_sub(1)
                ),
            )?;
        }
        Command::Depth { file, module: name } => {
            let spec = load(file, env)?;
            match depth(&module(&spec, name)?.module)? {
                Some(d) => emit(out, format!("depth {d}"))?,
                None => emit(out, "depth ∞ (zero module)")?,
            }
        }
        Command::Rank { file, module: name, t } => {
            let spec = load(file, env)?;
            let decl = module(&spec, name)?;
            match t {
                None => match punctured_rank(&decl.module, guard)? {
                    Some(r) => emit(out, format!("punctured rank {r}"))?,
                    None => {
                        emit(out, "not free of constant rank on the punctured spectrum")?;
                        return Ok(EXIT_INVALID);
                    }
                },
                Some(t) => {
                    let primes: Vec<_> =
                        spec.primes.iter().filter(|p| p.ring == decl.ring).map(|p| p.ideal.clone()).collect();
                    let cert = rank_punctured_certificate(&decl.module, *t, &primes, guard)?;
                    emit(out, serde_json::to_string_pretty(&cert).expect("serializable"))?;
                    return Ok(if cert.valid { EXIT_OK } else { EXIT_INVALID });
                }
            }
        }
        Command::Seed { file } => {
            let spec = load(file, env)?;
            for r in &spec.rings {
                match canonical_seed(&r.ring, spec.config.seed) {
                    Ok(rep) => {
                        emit(out, format!("ring {}:", r.name))?;
                        emit(out, serde_json::to_string_pretty(&rep.summary).expect("serializable"))?;
                        let degrees: Vec<String> = rep.module.degrees().iter().map(|d| d.to_string()).collect();
                        emit(out, format!("degrees {}", degrees.join(" ")))?;
                        for rel in rep.module.relations() {
                            emit(out, format!("  {}", super::vector_string(&r.ring, rel)))?;
                        }
                    }
                    Err(e) => emit(out, format!("ring {}: no seed ({e})", r.name))?,
                }
            }
        }
        Command::Decompose { file, module: name } => {
            let spec = load(file, env)?;
            let decl = module(&spec, name)?;
            let parts = decompose(&decl.module, spec.config.seed)?;
            emit(out, format!("{} indecomposable summand(s)", parts.len()))?;
            for (k, p) in parts.iter().enumerate() {
                let degrees: Vec<String> = p.module.degrees().iter().map(|d| d.to_string()).collect();
                emit(out, format!("summand {}: degrees [{}]", k + 1, degrees.join(", ")))?;
                for rel in p.module.relations() {
                    emit(out, format!("  {}", super::vector_string(p.module.ring(), rel)))?;
                }
            }
        }
        Command::Construct { file, module: name, r, n_max, trials, output } => {
            let spec = load(file, env)?;
            let m = &module(&spec, name)?.module;
            let opts = ConstructOptions {
                n_max: *n_max,
                seed: spec.config.seed,
                idempotent_trials: *trials,
                record_timings: false,
            };
            let c = construct_big_indecomposable(m, *r, &opts)?;
            let cert = &c.certificate;
            let json = cert.to_json();
            match output {
                Some(path) => write_file(path, &(json + "\n"))?,
                None => emit(out, json)?,
            }
            emit(
                out,
                format!(
                    "{}: n = {}, ν over End(M) = {}, X has {} generators",
                    cert.status,
                    cert.choice.n,
                    cert.choice.nu_a,
                    cert.modules.x.degrees.len()
                ),
            )?;
            if !cert.is_valid() {
                emit(out, format!("failed checks: {}", cert.failed_checks.join(", ")))?;
                return Ok(EXIT_INVALID);
            }
        }
        Command::Verify { cert } => {
            let text = read(cert)?;
            let cert = ConstructionCertificate::from_json(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", cert.display())))?;
            let rep = verify_certificate(&cert);
            for c in &rep.checks {
                emit(out, format!("{} {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail))?;
            }
            if !rep.ok() {
                let mut failed = rep.failed();
                failed.dedup();
                emit(out, format!("INVALID: failed checks {}", failed.join(", ")))?;
                return Ok(EXIT_INVALID);
            }
            emit(out, "VALID")?;
        }
    }
    Ok(EXIT_OK)
}

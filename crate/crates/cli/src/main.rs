//! `spinpath`: run the identity suites and emit CSV or JSON tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "spinpath",
    version,
    about = "Identity suites and tables for spacetime-path propagators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest spin label, in steps of 1/2.
    #[arg(long = "ell-max", global = true)]
    ell_max: Option<f64>,
    /// Tolerance applied to every residual of the suite.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Characters χ^ℓ(θ) and orthonormality residuals.
    /// Columns: ell, dim, chi_0, chi_half_pi, chi_pi, chi_three_half_pi, norm_residual,
    /// max_cross_residual, pass.
    Characters,
    /// Euclidean SU(2)/SO(4) kernels with semigroup, factorization and tail columns.
    /// Columns: tau, su2_re, su2_im, so4_re, so4_im, factorization_residual, semigroup_residual,
    /// tail_bound, deviation_from_one, pass.
    Kernel,
    /// Spin-frame and covariance residuals over seeded (Λ, n).
    /// Columns: rep, samples, normalization, idempotency, absorption, u_v_projector,
    /// covariance_u, covariance_v, pass.
    SpinCheck,
    /// Propagators against their on-shell decomposition on a grid.
    /// Columns: rep, t, x, y, z, interval, region, light_cone, feynman_re, feynman_im,
    /// onshell_re, onshell_im, residual, pass.
    Propagator,
    /// Multiparticle inner products against brute force, antisymmetry and the vertex peak.
    /// Columns: check, n, trial, value_re, value_im, reference_re, reference_im, residual, pass.
    Fock,
}

const EXIT_BREACH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn configure(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(ell_max) = cli.ell_max {
        cfg.ell_max = ell_max;
    }
    if let Some(tol) = cli.tol {
        cfg.tol = Some(tol);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn init_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("SPINPATH_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| format!("SPINPATH_THREADS must be a positive integer, got '{value}'"))?;
    if n == 0 {
        return Err("SPINPATH_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match configure(&cli).and_then(|c| init_threads().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("spinpath: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match cli.command {
        Command::Characters => commands::characters::run(&cfg),
        Command::Kernel => commands::kernel::run(&cfg),
        Command::SpinCheck => commands::spin_check::run(&cfg),
        Command::Propagator => commands::propagator::run(&cfg),
        Command::Fock => commands::fock::run(&cfg),
    };
    let written = match &cfg.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.table.write(cfg.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            outcome
                .table
                .write(cfg.format, &mut lock)
                .and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("spinpath: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(first) = outcome.breaches.first() {
        eprintln!(
            "spinpath: {} check(s) failed; first: {first}",
            outcome.breaches.len()
        );
        return ExitCode::from(EXIT_BREACH);
    }
    ExitCode::SUCCESS
}

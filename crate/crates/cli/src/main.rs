//! `hypack`: density of congruent saturated hyperball packings of
//! hyperbolic 4-space built on truncated regular simplices.
//!
//! Exit codes: 0 success, 1 check/computation failure, 2 usage or domain
//! error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypack_core::density::{self, DensityReport};
use hypack_core::numfmt::fmt17;
use hypack_core::truncation::{decompose, load_fixture, trace_jsonl};
use hypack_core::{acceptance, simplex, HypackError};

#[derive(Parser)]
#[command(
    name = "hypack",
    version,
    about = "Saturated hyperball packing density in hyperbolic 4-space",
    long_about = "Computes the packing density of congruent saturated \
                  hyperballs in hyperbolic 4-space over truncated regular \
                  simplices, parametrized by the face order p of the \
                  underlying {5,3,3,p} family on the open interval \
                  (5.1043, 6).  All floating-point output carries 17 \
                  significant digits."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the density report at one parameter (exactly one of --p, --s)
    Eval {
        /// Face order p in the open interval (5.1043, 6)
        #[arg(long)]
        p: Option<f64>,
        /// Edge parameter s in the open interval (1, sqrt(8/3))
        #[arg(long)]
        s: Option<f64>,
    },
    /// Locate the density maximum by golden-section search
    Optimize {
        /// Bracket tolerance in [1e-14, 1e-3]
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Write a CSV grid of density reports over a p-range
    Sweep {
        /// Left end of the p-range (clipped to the guarded domain)
        #[arg(long, default_value_t = 5.0)]
        from: f64,
        /// Right end of the p-range (clipped to the guarded domain)
        #[arg(long, default_value_t = 6.0)]
        to: f64,
        /// Number of grid points (at least 2)
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the simplex geometry (vertices, forms, Gram matrices) as JSON
    Geometry {
        /// Face order p (alternative to --s)
        #[arg(long)]
        p: Option<f64>,
        /// Edge parameter s (alternative to --p)
        #[arg(long)]
        s: Option<f64>,
        /// Output format (the geometry dump is JSON-only)
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decompose a fixture polytope into truncated simplices
    Decompose {
        /// Path to a fixture JSON file
        fixture: PathBuf,
    },
    /// Run the self-verification suite (one JSON line per check)
    Verify {
        /// Monte Carlo sample count (integer or float notation, e.g. 1e5)
        #[arg(long = "mc_samples", alias = "mc-samples",
              value_parser = parse_samples, default_value = "10000000")]
        mc_samples: u64,
        /// Monte Carlo seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Accepts both integer and scientific notation (`100000`, `1e5`).
fn parse_samples(text: &str) -> Result<u64, String> {
    let v: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if !(1.0..=1e12).contains(&v) {
        return Err(format!("sample count {text} outside [1, 1e12]"));
    }
    Ok(v as u64)
}

/// Exit-code policy: domain and fixture-validation problems are usage
/// errors (2), file problems are I/O errors (3), everything else that the
/// library reports is a failed computation (1).
fn exit_code_for(err: &HypackError) -> u8 {
    match err {
        HypackError::Io(_) => 3,
        HypackError::DomainError { .. }
        | HypackError::TolOutOfRange(_)
        | HypackError::InvalidFixture(_)
        | HypackError::NonFinite(_)
        | HypackError::UnsupportedDimension(_)
        | HypackError::TooFewHalfspaces { .. }
        | HypackError::DimensionMismatch(_, _)
        | HypackError::ZeroVector => 2,
        _ => 1,
    }
}

fn fail(err: HypackError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

/// Writes to standard output, exiting quietly when the downstream
/// consumer (e.g. `head`) has closed the pipe.
fn put(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn report_json(r: &DensityReport) -> String {
    format!(
        "{{\"p\":{},\"s\":{},\"h\":{},\"theta\":{},\"vol3_base\":{},\
         \"vol4_orthoscheme\":{},\"vol4_hyperball\":{},\"delta\":{}}}",
        fmt17(r.p),
        fmt17(r.s),
        fmt17(r.h),
        fmt17(r.theta),
        fmt17(r.vol3_base),
        fmt17(r.vol4_orthoscheme),
        fmt17(r.vol4_hyperball_piece),
        fmt17(r.delta),
    )
}

fn cmd_eval(p: Option<f64>, s: Option<f64>) -> ExitCode {
    let p = match (p, s) {
        (Some(p), None) => p,
        (None, Some(s)) => match simplex::s_to_p(s) {
            Ok(p) => p,
            Err(e) => {
                eprintln!(
                    "error: {e}; the admissible open interval is \
                     (5.1043, 6) for p, (1, 1.63299) for s"
                );
                return ExitCode::from(2);
            }
        },
        _ => {
            eprintln!("error: provide exactly one of --p or --s");
            return ExitCode::from(2);
        }
    };
    match density::density(p) {
        Ok(r) => {
            put(&format!("{}\n", report_json(&r)));
            ExitCode::SUCCESS
        }
        Err(e @ HypackError::DomainError { .. }) => {
            eprintln!("error: {e}; the admissible open interval is (5.1043, 6)");
            ExitCode::from(2)
        }
        Err(e) => fail(e),
    }
}

fn cmd_optimize(tol: f64) -> ExitCode {
    match density::maximize(tol) {
        Ok(o) => {
            put(&format!(
                "{{\"p_opt\":{},\"delta_opt\":{},\"iterations\":{},\
                 \"bracket_width\":{}}}\n",
                fmt17(o.p_opt),
                fmt17(o.delta_opt),
                o.iterations,
                fmt17(o.bracket_width),
            ));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_sweep(from: f64, to: f64, steps: usize, out: Option<PathBuf>) -> ExitCode {
    let csv = match density::sweep_csv(from, to, steps) {
        Ok(csv) => csv,
        Err(e) => return fail(e),
    };
    match out {
        None => {
            put(&csv);
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(&path, csv) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(3)
            }
        },
    }
}

fn cmd_geometry(p: Option<f64>, s: Option<f64>, format: Format) -> ExitCode {
    if format == Format::Csv {
        eprintln!("error: the geometry dump is JSON-only; use --format json");
        return ExitCode::from(2);
    }
    let s = match (p, s) {
        (Some(p), None) => match simplex::p_to_s(p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}; the admissible open interval is (5.1043, 6)");
                return ExitCode::from(2);
            }
        },
        (None, Some(s)) => s,
        _ => {
            eprintln!("error: provide exactly one of --p or --s");
            return ExitCode::from(2);
        }
    };
    match simplex::geometry_json(s) {
        Ok(json) => {
            put(&format!("{json}\n"));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_decompose(fixture: PathBuf) -> ExitCode {
    let run = || -> hypack_core::Result<String> {
        let fx = load_fixture(&fixture)?;
        let (poly, base, height) = fx.build()?;
        let d = decompose(&poly, &base, height)?;
        let mut out = trace_jsonl(&d.trace);
        let counts: Vec<String> = d
            .pieces
            .iter()
            .map(|p| p.vertices.len().to_string())
            .collect();
        let facets: Vec<String> = d
            .pieces
            .iter()
            .map(|p| p.facet_count().to_string())
            .collect();
        out.push_str(&format!(
            "{{\"pieces\":{},\"cuts\":{},\"vertex_counts\":[{}],\
             \"facet_counts\":[{}]}}\n",
            d.pieces.len(),
            d.trace.len(),
            counts.join(","),
            facets.join(","),
        ));
        Ok(out)
    };
    match run() {
        Ok(out) => {
            put(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error in {}: {e}", fixture.display());
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn cmd_verify(mc_samples: u64, seed: u64) -> ExitCode {
    let mut cfg = acceptance::AcceptanceConfig {
        mc_samples,
        seed,
        ..acceptance::AcceptanceConfig::default()
    };
    // Test-harness hook: HYPACK_TAMPER=delta_opt=<value> perturbs one
    // pinned expectation so the negative control can prove the checks are
    // live.
    if let Ok(spec) = std::env::var("HYPACK_TAMPER") {
        if let Some(v) = spec.strip_prefix("delta_opt=") {
            if let Ok(x) = v.parse::<f64>() {
                cfg.expectations.delta_opt = x;
            }
        }
    }
    let results = match acceptance::run_all(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut all_pass = true;
    for r in &results {
        all_pass &= r.pass;
        put(&format!(
            "{}\n",
            serde_json::json!({
                "id": r.id,
                "name": r.name,
                "pass": r.pass,
                "detail": r.detail,
            })
        ));
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("HYPACK_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
            _ => {
                eprintln!("error: HYPACK_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match Cli::parse().cmd {
        Cmd::Eval { p, s } => cmd_eval(p, s),
        Cmd::Optimize { tol } => cmd_optimize(tol),
        Cmd::Sweep {
            from,
            to,
            steps,
            out,
        } => cmd_sweep(from, to, steps, out),
        Cmd::Geometry { p, s, format } => cmd_geometry(p, s, format),
        Cmd::Decompose { fixture } => cmd_decompose(fixture),
        Cmd::Verify { mc_samples, seed } => cmd_verify(mc_samples, seed),
    }
}

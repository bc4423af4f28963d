//! Command line front end. `run` parses nothing itself; the binary hands it a
//! parsed [`Cli`] and turns the result into an exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info, warn};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::complement::{
    complete_b_outer, counting_n, enumerate_complements, flip_to_antiouter, is_outer_poly, roots_of_complement,
    RootMultiset,
};
use crate::config::{OUTER_MARGIN, PAIR_CHECK_TOL};
use crate::diagnostics::{
    bench, build_strip_matrices, instability_experiment, l_system_residual, lipschitz_checks, log_linear_slope,
    nonuniform_witness, norm_bounds_window, residual_on_circle, theta_map_bounds, InstabilityRow,
};
use crate::error::{NlftError, Result};
use crate::inverse::{inlfft_pair, layer_strip};
use crate::laurent::LaurentPoly;
use crate::nlft::{eta_of, forward_nlft_fast, forward_nlft_naive, pair_check, shift_support, ComplexSequence, NlftPair};
use crate::qsp::{solve_gqsp, solve_qsp, TargetPoly};
use crate::sampling::{random_complex, rng};

#[derive(Debug, Parser)]
#[command(name = "nlfft", version, about = "SU(2) nonlinear Fourier transform tools")]
pub struct Cli {
    /// Points of the unit-circle grid used for residuals (at least 4).
    #[arg(long, global = true, default_value_t = 1024, value_parser = parse_grid)]
    pub grid: usize,
    /// Seed of the random number generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override of the pair-check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_grid(s: &str) -> std::result::Result<usize, String> {
    let g: usize = s.parse().map_err(|e| format!("{e}"))?;
    if g < 4 {
        return Err("grid must be at least 4".into());
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ForwardMethod {
    Naive,
    Fast,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvertMethod {
    Layer,
    Fast,
}

#[derive(Debug, Args)]
pub struct Io {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sequence JSON to pair JSON.
    Forward {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = ForwardMethod::Fast)]
        method: ForwardMethod,
    },
    /// Pair JSON to sequence JSON.
    Invert {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = InvertMethod::Fast)]
        method: InvertMethod,
    },
    /// Complete a polynomial `b` to the pair with outer `a*`, or list every complement.
    Complete {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        enumerate: bool,
    },
    /// Replace `a*` by the complement with every zero inside the disk.
    Flip {
        #[command(flatten)]
        io: Io,
    },
    Qsp {
        #[command(subcommand)]
        action: SolveAction,
    },
    Gqsp {
        #[command(subcommand)]
        action: SolveAction,
    },
    Diagnose {
        #[command(subcommand)]
        what: Diagnose,
    },
    /// Timing table of layer stripping against the inverse nonlinear FFT.
    Bench {
        #[arg(long, default_value_t = 1024)]
        min: usize,
        #[arg(long, default_value_t = 16384)]
        max: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveAction {
    Solve {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Diagnose {
    /// Outer versus flipped layer stripping on a random real `b`.
    Instability {
        #[arg(long, default_value_t = 80)]
        n: usize,
        /// Also print the per-entry errors.
        #[arg(long)]
        entries: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factorization residuals and norm bounds of a pair.
    Structure {
        #[command(flatten)]
        io: Io,
    },
    /// Lipschitz inequalities on random sequences and the witness family.
    Lipschitz {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Output of a successful run: the bytes to write and a one-line summary.
struct Outcome {
    data: String,
    out: Option<PathBuf>,
    summary: String,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    debug!("reading {}", path.display());
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn emit(o: Outcome) -> Result<()> {
    match &o.out {
        Some(p) => {
            fs::write(p, &o.data)?;
            info!("wrote {}", p.display());
        }
        None => std::io::stdout().write_all(o.data.as_bytes())?,
    }
    Ok(())
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    match dispatch(&cli).and_then(|o| {
        let summary = o.summary.clone();
        emit(o)?;
        Ok(summary)
    }) {
        Ok(summary) => {
            eprintln!("{summary} time={:.3}s", start.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() }));
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol.unwrap_or(PAIR_CHECK_TOL);
    match &cli.command {
        Command::Forward { io, method } => {
            let g: ComplexSequence = read_json(&io.input)?;
            let p = match method {
                ForwardMethod::Naive => forward_nlft_naive(&g),
                ForwardMethod::Fast => forward_nlft_fast(&g),
            };
            let rep = pair_check(&p, tol);
            Ok(Outcome {
                data: to_json(&p)?,
                out: io.out.clone(),
                summary: format!("forward n={} pair_residual={:e}", g.len(), rep.residual),
            })
        }
        Command::Invert { io, method } => {
            let p: NlftPair = read_json(&io.input)?;
            let rep = pair_check(&p, tol);
            if !rep.pass {
                warn!("input fails the pair check (residual {:e}); stripping anyway", rep.residual);
            }
            // The solvers expect b to start at degree 0; restore the offset afterwards.
            let m = if p.b.is_zero() { 0 } else { p.b.low_deg() };
            let q = shift_support(&p, -m);
            let g = match method {
                InvertMethod::Layer => layer_strip(&q)?,
                InvertMethod::Fast => inlfft_pair(&q)?,
            };
            let g = ComplexSequence::new(m, g.into_values());
            let res = residual_on_circle(&p, &g, cli.grid);
            Ok(Outcome {
                data: to_json(&g)?,
                out: io.out.clone(),
                summary: format!("invert n={} pair_residual={:e} residual={res:e}", g.len(), rep.residual),
            })
        }
        Command::Complete { io, enumerate } => {
            let b: LaurentPoly = read_json(&io.input)?;
            if *enumerate {
                let all = enumerate_complements(&b)?;
                let roots = RootMultiset::from_values(&roots_of_complement(&b)?)?;
                let count = counting_n(&roots)?;
                let outer: Vec<bool> = all
                    .iter()
                    .map(|p| is_outer_poly(&p.a.star(), OUTER_MARGIN).map(|c| c.is_outer()))
                    .collect::<Result<_>>()?;
                let data = to_json(&json!({ "count": count, "roots": roots, "outer": outer, "pairs": all }))?;
                Ok(Outcome {
                    data,
                    out: io.out.clone(),
                    summary: format!("complete degree={} complements={}", b.len().saturating_sub(1), all.len()),
                })
            } else {
                let p = complete_b_outer(&b)?;
                let rep = pair_check(&p, tol);
                Ok(Outcome {
                    data: to_json(&p)?,
                    out: io.out.clone(),
                    summary: format!("complete degree={} pair_residual={:e}", b.len().saturating_sub(1), rep.residual),
                })
            }
        }
        Command::Flip { io } => {
            let p: NlftPair = read_json(&io.input)?;
            let q = flip_to_antiouter(&p)?;
            let rep = pair_check(&q, tol);
            Ok(Outcome { data: to_json(&q)?, out: io.out.clone(), summary: format!("flip pair_residual={:e}", rep.residual) })
        }
        Command::Qsp { action: SolveAction::Solve { target, out } } | Command::Gqsp { action: SolveAction::Solve { target, out } } => {
            let t: TargetPoly = read_json(target)?;
            let phases = match (&cli.command, &t) {
                (Command::Qsp { .. }, TargetPoly::Qsp { .. }) => solve_qsp(&t)?,
                (Command::Gqsp { .. }, TargetPoly::Gqsp { .. }) => solve_gqsp(&t)?,
                _ => return Err(NlftError::InvalidInput("target kind does not match the subcommand".into())),
            };
            Ok(Outcome {
                summary: format!("solve degree={} residual={:e}", t.degree(), phases.residual),
                data: to_json(&phases)?,
                out: out.clone(),
            })
        }
        Command::Diagnose { what } => diagnose(cli, what),
        Command::Bench { min, max, reps, out } => {
            let r = bench(*min, *max, *reps, cli.seed)?;
            let worst = r.rows.iter().map(|x| x.max_diff).fold(0.0, f64::max);
            Ok(Outcome {
                data: r.to_csv(),
                out: out.clone(),
                summary: format!(
                    "bench rows={} slope_layer={:.3} slope_fast={:.3} max_diff={worst:e}",
                    r.rows.len(),
                    r.slope_layer,
                    r.slope_fast
                ),
            })
        }
    }
}

fn diagnose(cli: &Cli, what: &Diagnose) -> Result<Outcome> {
    match what {
        Diagnose::Instability { n, entries, out } => {
            let row = instability_experiment(*n, cli.seed)?;
            let mut data = format!("{}\n{}\n", InstabilityRow::csv_header(), row.csv_line());
            if *entries {
                data.push_str("k,error_outer,error_flipped\n");
                for (k, (o, f)) in row.entry_error_outer.iter().zip(&row.entry_error_flipped).enumerate() {
                    data.push_str(&format!("{k},{o:e},{f:e}\n"));
                }
            }
            Ok(Outcome {
                data,
                out: out.clone(),
                summary: format!(
                    "instability n={n} seed={} residual_outer={:e} residual_flipped={:e} error_slope={:.3}",
                    cli.seed,
                    row.residual_outer,
                    row.residual_flipped,
                    log_linear_slope(&row.entry_error_flipped)
                ),
            })
        }
        Diagnose::Structure { io } => {
            let p: NlftPair = read_json(&io.input)?;
            let sm = build_strip_matrices(&p)?;
            let n = sm.n();
            let eta = eta_of(&p, Some(cli.grid.max(16 * n)));
            let outer = is_outer_poly(&p.a.star(), OUTER_MARGIN)?;
            let bounds = outer.is_closed_disk().then(|| norm_bounds_window(&sm, 0, n, eta));
            let data = to_json(&json!({
                "n": n,
                "eta": eta,
                "outer": outer,
                "ldl_residual": sm.ldl_residual(),
                "displacement_residual": sm.displacement_residual(),
                "l_system_residual": l_system_residual(&sm).residual,
                "norm_bounds": bounds,
            }))?;
            Ok(Outcome {
                data,
                out: io.out.clone(),
                summary: format!("structure n={n} ldl_residual={:e}", sm.ldl_residual()),
            })
        }
        Diagnose::Lipschitz { n, trials, out } => {
            if *n == 0 {
                return Err(NlftError::InvalidInput("n must be positive".into()));
            }
            let mut r = rng(cli.seed);
            let norms = [1.0, 2.0, f64::INFINITY];
            let mut reports = Vec::new();
            for t in 0..*trials {
                let g1 = ComplexSequence::new(0, random_complex(&mut r, *n, 0.5));
                let g2 = ComplexSequence::new(0, random_complex(&mut r, *n, 0.5));
                let pqr = (norms[t % 3], norms[(t / 3) % 3], norms[(t / 9) % 3]);
                reports.push(lipschitz_checks(&g1, &g2, pqr)?);
            }
            let theta: Vec<_> = (0..*trials)
                .map(|_| {
                    let v = random_complex(&mut r, 2, 1.0);
                    theta_map_bounds(v[0], v[1])
                })
                .collect();
            let witness: Vec<_> = (2..=40).map(|k| nonuniform_witness(k, 3)).collect::<Result<_>>()?;
            let pass = reports.iter().all(|x| x.holds) && theta.iter().all(|x| x.holds) && witness.iter().all(|x| x.holds);
            let data = to_json(&json!({ "pass": pass, "lipschitz": reports, "theta": theta, "witness": witness }))?;
            Ok(Outcome { data, out: out.clone(), summary: format!("lipschitz n={n} trials={trials} pass={pass}") })
        }
    }
}

/// Configure the logger from `NLFFT_LOG` (error, info or debug; default error).
pub fn init_logging() {
    env_logger::Builder::new()
        .parse_filters(&std::env::var("NLFFT_LOG").unwrap_or_else(|_| "error".into()))
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
}

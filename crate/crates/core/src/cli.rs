//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::alpha::{alpha, alpha_table, asymptotic_gap};
use crate::coulson::{energy_coulson, QuadratureConfig};
use crate::error::Error;
use crate::expansion::extremal_tree;
use crate::fmt::num;
use crate::matching::hosoya;
use crate::qpoly::{tau_complete_closed_form, tau_complete_recursion};
use crate::spectral::energy_spectral;
use crate::tree::{FreeTree, TreeClassParams};
use crate::verify::{default_x_samples, parse_rational, verify_minimizer, Status};

/// Environment variable holding the number of worker threads.
pub const WORKERS_ENV: &str = "ETREES_WORKERS";

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "etrees", version, about = "Energy-minimal bounded-degree trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Spectral,
    Coulson,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the edge list of the extremal tree T*(n, d).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Print the Hosoya index of a tree file.
    Hosoya {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Print the energy of a tree file.
    Energy {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, value_enum, default_value = "spectral")]
        method: Method,
    },
    /// Print tau of the complete d-ary tree C_h from the recursion and the closed form.
    Tau {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        x: f64,
    },
    /// Print alpha_d with its truncation error bound.
    Alpha {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1e-10)]
        precision: f64,
    },
    /// Exhaustively check that T*(n, d) is the unique minimizer; prints a JSON report.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Comma-separated positive rationals such as `1/4,1,2`.
        #[arg(long, value_delimiter = ',')]
        x_samples: Option<Vec<String>>,
    },
    /// Energy of T*(n, d) against alpha_d n, as CSV.
    Sweep {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
    /// Print the table of alpha_d as CSV.
    Table {
        #[arg(long, required = true)]
        alpha: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convergence { .. } | Error::Precision(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn read_tree(path: &PathBuf) -> Result<FreeTree, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    FreeTree::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn workers() -> Result<Option<usize>, String> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(format!("{WORKERS_ENV} must be a positive integer, got {s:?}")),
        },
    }
}

enum Outcome {
    Done(String),
    Failed(String, i32),
}

fn execute(command: Command, notes: &mut Vec<String>) -> Result<Outcome, (String, i32)> {
    let lib = |e: Error| (e.to_string(), exit_code(&e));
    let out = match command {
        Command::Gen { n, d } => extremal_tree(TreeClassParams::new(n, d).map_err(lib)?).map_err(lib)?.to_edge_list(),
        Command::Hosoya { tree } => {
            let t = read_tree(&tree).map_err(|e| (e, EXIT_USAGE))?;
            format!("{}\n", hosoya(&t))
        }
        Command::Energy { tree, method } => {
            let t = read_tree(&tree).map_err(|e| (e, EXIT_USAGE))?;
            let e = match method {
                Method::Spectral => energy_spectral(&t),
                Method::Coulson => energy_coulson(&t, &QuadratureConfig::default()).map_err(lib)?,
            };
            format!("{}\n", num(e.value))
        }
        Command::Tau { d, h, x } => {
            if d == 0 || !(x.is_finite() && x > 0.0) {
                return Err((format!("need d >= 1 and x > 0, got d={d}, x={x}"), EXIT_USAGE));
            }
            format!(
                "recursion {}\nclosed_form {}\n",
                num(tau_complete_recursion(d, h, x)),
                num(tau_complete_closed_form(d, h, x))
            )
        }
        Command::Alpha { d, precision } => {
            let a = alpha(d, precision).map_err(lib)?;
            format!("alpha {}\nerror_bound {:.3e}\nj_max {}\n", num(a.value), a.error_bound, a.truncation_j_max)
        }
        Command::Verify { n, d, x_samples } => {
            let xs = match x_samples {
                None => default_x_samples(),
                Some(v) => v.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(lib)?,
            };
            let report = verify_minimizer(n, d, &xs).map_err(lib)?;
            notes.push(format!("runtime {:.3}s", report.runtime.as_secs_f64()));
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            return Ok(match report.status {
                Status::Pass => Outcome::Done(json),
                Status::Fail => Outcome::Failed(json, EXIT_FAIL),
                Status::Ambiguous => Outcome::Failed(json, EXIT_NUMERICAL),
            });
        }
        Command::Sweep { d, n_list } => {
            let rows = asymptotic_gap(d, &n_list, &QuadratureConfig::default()).map_err(lib)?;
            let mut csv = String::from("n,d,energy,alpha_n,gap,gap_over_log_n\n");
            for r in rows {
                let g = r.gap_over_log_n.map(num).unwrap_or_default();
                let _ = writeln!(csv, "{},{},{},{},{},{g}", r.n, r.d, num(r.energy), num(r.alpha_n), num(r.gap));
            }
            csv
        }
        Command::Table { .. } => {
            let mut csv = String::from("d,alpha_d\n");
            for a in alpha_table(1e-10).map_err(lib)? {
                let _ = writeln!(csv, "{},{}", a.d, num(a.value));
            }
            csv
        }
    };
    Ok(Outcome::Done(out))
}

/// Runs the CLI, writing to the given streams. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    match workers() {
        Ok(Some(k)) => pool = pool.num_threads(k),
        Ok(None) => {}
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut notes = Vec::new();
    let result = pool.install(|| execute(cli.command, &mut notes));
    for note in notes {
        let _ = writeln!(err, "{note}");
    }
    match result {
        Ok(Outcome::Done(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Outcome::Failed(text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err((msg, code)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use nbcolor_cli::commands::{self, ColorOptions, Numerics, RChoice};
use nbcolor_cli::output::{render, TextReport};
use nbcolor_cli::sweep::{self, SweepConfig};
use nbcolor_cli::{exit, exit_code, load_graph, Format};
use serde::Serialize;

/// Vector chromatic number bounds and constructions for sparse graphs.
///
/// Graph arguments are edge-list files (`u v` per line, `#` comments, an
/// optional `n <N>` line), `-` for stdin, or `corpus:<name>`.
#[derive(Parser, Debug)]
#[command(name = "nbcolor", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance: r_star bracket width, or oracle bracket width.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Accept arbitrary integer vertex ids and relabel them densely.
    #[arg(long, global = true)]
    relabel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure, eligibility and spectral summary.
    Analyze { graph: String },
    /// Certify a lower bound on the vector chromatic number.
    Certify {
        graph: String,
        /// `auto` or an explicit negative value.
        #[arg(long, default_value = "auto", allow_negative_numbers = true)]
        r: RChoice,
        /// Write the certificate JSON here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Independently re-check a certificate.
    Verify { graph: String, certificate: PathBuf },
    /// Build and check the walk vector coloring.
    Color {
        graph: String,
        /// Walk radius: `auto` (girth cap) or a value.
        #[arg(long, default_value = "auto")]
        m: String,
        /// Also round to a cut with this many trials.
        #[arg(long)]
        maxcut: Option<usize>,
        /// Write gram.mtx and vectors.txt here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Hyperplane rounding of a vector coloring.
    Maxcut {
        graph: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value = "auto")]
        m: String,
        /// Round these vectors instead of constructing them.
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// Exact vector chromatic number by bisection (n <= 64).
    Oracle {
        graph: String,
        /// Write the feasible Gram matrix here.
        #[arg(long)]
        gram_out: Option<PathBuf>,
    },
    /// Check the determinant identity between B and L(z).
    IharaCheck {
        graph: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Erdos-Renyi reproduction sweep.
    ErSweep {
        #[arg(long, default_value_t = 4000)]
        n: usize,
        /// Comma separated average degrees.
        #[arg(long, value_delimiter = ',', default_values_t = vec![10.0, 15.0])]
        d: Vec<f64>,
        /// Number of seeds, starting at --seed.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// CSV output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one certificate per certified row here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Skip in-sweep certificate verification.
        #[arg(long)]
        no_verify: bool,
    },
}

fn parse_m(s: &str) -> anyhow::Result<Option<usize>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).with_context(|| format!("--m expects `auto` or an integer, got {s:?}"))
}

fn emit<R: Serialize + TextReport>(report: &R, format: Format) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(render(report, format)?.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring the thread pool")?;
    }
    let mut num = Numerics::default();
    if let Some(t) = cli.tol {
        anyhow::ensure!(t > 0.0, "--tol must be positive");
        num.scan_tol = t;
    }
    let load = |g: &str| load_graph(g, cli.relabel);
    macro_rules! finish {
        ($out:expr) => {{
            let o = $out;
            emit(&o.report, cli.format)?;
            Ok(o.code)
        }};
    }
    match &cli.command {
        Command::Analyze { graph } => finish!(commands::analyze(&load(graph)?, num)?),
        Command::Certify { graph, r, emit: path } => {
            finish!(commands::certify(&load(graph)?, *r, path.as_deref(), num)?)
        }
        Command::Verify { graph, certificate } => finish!(commands::verify(&load(graph)?, certificate)?),
        Command::Color { graph, m, maxcut, out_dir } => {
            let o = ColorOptions { m: parse_m(m)?, maxcut_trials: *maxcut, out_dir: out_dir.clone(), seed: cli.seed };
            finish!(commands::color(&load(graph)?, &o, num)?)
        }
        Command::Maxcut { graph, trials, m, vectors } => {
            finish!(commands::maxcut(&load(graph)?, *trials, parse_m(m)?, vectors.as_deref(), cli.seed, num)?)
        }
        Command::Oracle { graph, gram_out } => {
            finish!(commands::oracle(&load(graph)?, cli.tol.unwrap_or(1e-4), cli.seed, gram_out.as_deref())?)
        }
        Command::IharaCheck { graph, samples } => finish!(commands::ihara_check(&load(graph)?, *samples, cli.seed)?),
        Command::ErSweep { n, d, seeds, out, cert_dir, no_verify } => {
            let cfg = SweepConfig {
                n: *n,
                ds: d.clone(),
                seeds: (cli.seed..cli.seed + seeds).collect(),
                num,
                verify: !no_verify,
            };
            let res = sweep::er_sweep(&cfg);
            if let Some(dir) = cert_dir {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (row, cert) in res.rows.iter().zip(&res.certificates) {
                    if let Some(c) = cert {
                        let p = dir.join(format!("er_n{}_d{}_seed{}.json", row.n, row.d, row.seed));
                        std::fs::write(&p, c.to_json()?).with_context(|| format!("writing {}", p.display()))?;
                    }
                }
            }
            match out {
                Some(p) => {
                    let f = std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
                    sweep::write_csv(&res.rows, f)?;
                }
                None if cli.format == Format::Csv || cli.format == Format::Text => {
                    sweep::write_csv(&res.rows, std::io::stdout().lock())?;
                }
                None => {}
            }
            match cli.format {
                Format::Json => {
                    let body = serde_json::json!({ "rows": res.rows, "summary": res.summary });
                    println!("{}", serde_json::to_string_pretty(&body)?);
                }
                Format::Csv if out.is_some() => sweep::write_summary_csv(&res.summary, std::io::stdout().lock())?,
                _ => eprint!("{}", sweep::summary_lines(&res.summary)),
            }
            Ok(exit::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 rather than clap's 2, which means "ineligible" here.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::FAILURE } else { exit::SUCCESS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

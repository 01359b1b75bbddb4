//! Command-line solver for tensor eigenproblems over file-based tensors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use teneig::eig::{self, EigenPair, SolveMeta};
use teneig::tensor::DenseTensor;
use teneig::tracker::TrackerConfig;
use teneig_cli::fixtures;
use teneig_cli::io;

#[derive(Parser)]
#[command(
    name = "teneig",
    about = "Generalized tensor eigenpairs via homotopy continuation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolveArgs {
    /// Tensor file for A.
    #[arg(long)]
    input: PathBuf,
    /// Tensor file for B.
    #[arg(long = "B")]
    b: Option<PathBuf>,
    /// Contraction mode k (1-based).
    #[arg(long, default_value_t = 1)]
    mode: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the full result file here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Newton corrector tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Clone)]
struct RealArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Also report the complex classes the real pairs came from.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Mode-k B-eigenpairs for equal tensor orders (B defaults to the
    /// identity tensor of matching order).
    Teig(SolveArgs),
    /// Mode-k B-eigenpair classes for different tensor orders (--B required).
    Teneig(SolveArgs),
    /// E-eigenpair classes (B is the identity matrix).
    Eeig(SolveArgs),
    /// Real Z-eigenpairs of a real tensor.
    Zeig(RealArgs),
    /// Real H-eigenpairs of a real tensor.
    Heig(RealArgs),
    /// List bundled problems, or materialize one to a tensor file.
    Fixtures {
        name: Option<String>,
        /// Parameter value for parameterized families.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Dimension for entry-formula tensors.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tracker_config(n: usize, tol: Option<f64>) -> TrackerConfig {
    let mut cfg = TrackerConfig::for_dimension(n);
    if let Some(t) = tol {
        cfg.newton_tol = t;
    }
    if let Ok(threads) = std::env::var("TENEIG_THREADS") {
        if let Ok(workers) = threads.trim().parse::<usize>() {
            if workers > 0 {
                cfg.threads = Some(workers);
            }
        }
    }
    cfg
}

fn load_a(args: &SolveArgs) -> Result<DenseTensor> {
    io::read_tensor_file(&args.input)?.to_tensor()
}

fn load_b(args: &SolveArgs) -> Result<Option<DenseTensor>> {
    match &args.b {
        None => Ok(None),
        Some(path) => Ok(Some(io::read_tensor_file(path)?.to_tensor()?)),
    }
}

fn print_pairs(pairs: &[EigenPair]) {
    for p in pairs {
        let lam = if p.lambda.im.abs() < 1e-12 {
            format!("{:.6}", p.lambda.re)
        } else {
            format!("{:.6}{:+.6}i", p.lambda.re, p.lambda.im)
        };
        let vec: Vec<String> =
            p.x.iter()
                .map(|z| {
                    if z.im.abs() < 1e-12 {
                        format!("{:.4}", z.re)
                    } else {
                        format!("{:.4}{:+.4}i", z.re, z.im)
                    }
                })
                .collect();
        let comp = p
            .component_id
            .map(|id| format!(" component={id}"))
            .unwrap_or_default();
        println!(
            "  lambda = {lam}  mult = {}  residual = {:.2e}  [{:?}]{}  x = ({})",
            p.multiplicity,
            p.residual,
            p.classification,
            comp,
            vec.join(", ")
        );
    }
}

fn report(meta: &SolveMeta, pairs: &[EigenPair], out: &Option<PathBuf>, label: &str) -> Result<u8> {
    println!(
        "{label}: {} paths tracked, {} at infinity, {} failed, {} classes",
        meta.paths_tracked,
        meta.paths_at_infinity,
        meta.paths_failed,
        pairs.len()
    );
    print_pairs(pairs);
    if meta.curve_jump_warnings > 0 {
        println!(
            "  note: {} coincident path pair(s) kept after projective retracing",
            meta.curve_jump_warnings
        );
    }
    if let Some(path) = out {
        std::fs::write(path, io::result_file_string(meta, pairs))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("  wrote {}", path.display());
    }
    if meta.paths_failed > 0 {
        println!(
            "  warning: {} path(s) failed; the class list may be incomplete",
            meta.paths_failed
        );
        return Ok(2);
    }
    Ok(0)
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Teig(args) => {
            let a = load_a(&args)?;
            let b = match load_b(&args)? {
                Some(b) => b,
                None => DenseTensor::identity(a.order(), a.dim())?,
            };
            let cfg = tracker_config(a.dim(), args.tol);
            let res = eig::teig(&a, &b, args.mode, args.seed, &cfg)?;
            report(&res.meta, &res.pairs, &args.out, "teig")
        }
        Command::Teneig(args) => {
            let a = load_a(&args)?;
            let Some(b) = load_b(&args)? else {
                bail!("teneig requires --B");
            };
            let cfg = tracker_config(a.dim(), args.tol);
            let res = eig::teneig(&a, &b, args.mode, args.seed, &cfg)?;
            let pairs: Vec<EigenPair> = res
                .classes
                .iter()
                .map(|c| c.representative.clone())
                .collect();
            report(&res.meta, &pairs, &args.out, "teneig")
        }
        Command::Eeig(args) => {
            let a = load_a(&args)?;
            let cfg = tracker_config(a.dim(), args.tol);
            let res = eig::eeig(&a, args.mode, args.seed, &cfg)?;
            let pairs: Vec<EigenPair> = res
                .classes
                .iter()
                .map(|c| c.representative.clone())
                .collect();
            report(&res.meta, &pairs, &args.out, "eeig")
        }
        Command::Zeig(args) => {
            let a = load_a(&args.solve)?;
            let cfg = tracker_config(a.dim(), args.solve.tol);
            let res = eig::zeig(&a, args.solve.mode, args.solve.seed, &cfg)?;
            let mut pairs = res.pairs.clone();
            if args.all {
                pairs.extend(res.complex_pairs.iter().cloned());
            }
            report(&res.meta, &pairs, &args.solve.out, "zeig")
        }
        Command::Heig(args) => {
            let a = load_a(&args.solve)?;
            let cfg = tracker_config(a.dim(), args.solve.tol);
            let res = eig::heig(&a, args.solve.mode, args.solve.seed, &cfg)?;
            let mut pairs = res.pairs.clone();
            if args.all {
                pairs.extend(res.complex_pairs.iter().cloned());
            }
            report(&res.meta, &pairs, &args.solve.out, "heig")
        }
        Command::Fixtures { name, a, n, out } => {
            match name {
                None => {
                    for info in fixtures::list() {
                        let mut params = String::new();
                        if info.takes_a {
                            params.push_str(" [--a X]");
                        }
                        if info.takes_n {
                            params.push_str(" [--n N]");
                        }
                        println!("{:<14}{} — {}", info.name, params, info.summary);
                    }
                }
                Some(name) => {
                    let tensor = fixtures::materialize(&name, a, n)?;
                    let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
                    io::write_tensor_file(&path, &tensor)?;
                    println!("wrote {}", path.display());
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

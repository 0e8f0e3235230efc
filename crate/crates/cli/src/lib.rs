//! Command-line driver. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code:
//!
//! | code | meaning                               |
//! |------|---------------------------------------|
//! | 0    | success, or every bound check passed  |
//! | 1    | a bound check failed                  |
//! | 2    | usage or input error                  |
//! | 3    | I/O, parse or schema error            |

mod suites;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use concave_ot::analysis::displacement_stats;
use concave_ot::bounds::{beta_estimate, beta_lower_bound, corollary3_interval};
use concave_ot::experiment::{
    agreement_csv, agreement_experiment, crossover_scan, dimension_table, parse_grid, ratio_curve,
};
use concave_ot::instance::{self, generate};
use concave_ot::matching::{
    brute_force_match, dyck_match, greedy_match, matching_from_json, matching_to_json,
    optimal_match, sorted_match,
};
use concave_ot::render::render_matching;
use concave_ot::{CostSpec, Error, InstanceSpec, Method};

pub use suites::{run_suite, Suite};

pub const THREADS_ENV: &str = "CONCAVE_OT_THREADS";

#[derive(Parser)]
#[command(
    name = "concave-ot",
    version,
    about = "Matchings under concave transport costs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Uniform,
    Clusters,
    Alternating,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Greedy,
    Dyck,
    Optimal,
    Sorted,
    BruteForce,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cluster half-width (clusters only)
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Match an instance and print its total cost
    Match {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// pow:<p>, log or oddlog:<k>
        #[arg(long, default_value = "pow:1")]
        cost: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Mean cost ratio to the optimum across a grid of exponents
    RatioCurve {
        #[arg(long, default_value_t = 250)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value = "0.05:0.95:0.05")]
        p_grid: String,
        /// Comma-separated subset of greedy,dyck
        #[arg(long, default_value = "greedy,dyck")]
        methods: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy/optimal ratio table over dimensions and exponents
    Table {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value = "1,2,3,4,5,10")]
        dims: String,
        #[arg(long, default_value = "1,0.5,0.2,0.1")]
        p: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-step agreement of greedy with the optimal matching (d = 1)
    Agreement {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value = "pow:0.1")]
        cost: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent where the greedy and Dyck ratio curves cross (d = 1)
    Crossover {
        #[arg(long, default_value_t = 250)]
        n: usize,
        #[arg(long, default_value = "0.05:0.95:0.05")]
        p_grid: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of the limit constant of n^(p/d-1) W_p^p
    Beta {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check a family of inequalities on random instances
    VerifyBounds {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a matching file as SVG
    Render {
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Schema(_) | Error::Io(_) => 3,
        _ => 2,
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    ))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn emit(out: Option<&PathBuf>, contents: &str) -> Result<(), Error> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(Error::Io)
        }
    }
}

fn flag<T>(name: &str, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("--{name}: {m}")),
        other => other,
    })
}

fn parse_methods(s: &str) -> Result<Vec<Method>, Error> {
    s.split(',').map(|m| m.trim().parse::<Method>()).collect()
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("`{d}` is not a dimension")))
        })
        .collect()
}

fn thread_count() -> Result<usize, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("{THREADS_ENV}: `{v}` is not a nonnegative integer"))
        }),
        Err(_) => Ok(0),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command) -> Result<i32, Error> {
    match command {
        Command::Gen {
            family,
            n,
            d,
            seed,
            delta,
            out,
        } => {
            let spec = match family {
                FamilyArg::Uniform => InstanceSpec::uniform(n, d, seed),
                FamilyArg::Clusters => InstanceSpec {
                    d,
                    ..InstanceSpec::clusters(n, delta, seed)
                },
                FamilyArg::Alternating => InstanceSpec {
                    d,
                    seed,
                    ..InstanceSpec::alternating(n)
                },
            };
            let inst = generate(&spec)?;
            write_file(&out, &instance::to_json(&inst))?;
        }
        Command::Match {
            input,
            method,
            cost,
            out,
            svg,
        } => {
            let cost: CostSpec = flag("cost", cost.parse())?;
            let inst = instance::load(&input)?;
            let (x, y) = (&inst.x, &inst.y);
            let m = match method {
                MethodArg::Greedy => greedy_match(x, y)?.priced(cost)?,
                MethodArg::Dyck => dyck_match(x, y)?.priced(cost)?,
                MethodArg::Sorted => sorted_match(x, y)?.priced(cost)?,
                MethodArg::Optimal => optimal_match(x, y, cost)?,
                MethodArg::BruteForce => brute_force_match(x, y, cost)?,
            };
            println!("method {}", m.method);
            println!("cost {}", m.cost);
            println!("total_cost {:.12}", m.total_cost());
            let stats = displacement_stats(&m, m.n());
            println!("median_distance {:.12}", stats.median);
            if let Some(path) = out {
                write_file(&path, &matching_to_json(&m, x, y))?;
            }
            if let Some(path) = svg {
                write_file(&path, &render_matching(&m, x, y)?.to_svg())?;
            }
        }
        Command::RatioCurve {
            n,
            d,
            p_grid,
            methods,
            trials,
            seed,
            out,
        } => {
            let grid = flag("p-grid", parse_grid(&p_grid))?;
            let methods = flag("methods", parse_methods(&methods))?;
            let report = ratio_curve(n, d, &grid, &methods, trials, seed)?;
            emit(out.as_ref(), &report.to_csv())?;
        }
        Command::Table {
            n,
            dims,
            p,
            trials,
            seed,
            out,
        } => {
            let dims = flag("dims", parse_dims(&dims))?;
            let ps = flag("p", parse_grid(&p))?;
            let report = dimension_table(n, &dims, &ps, trials, seed)?;
            match out {
                Some(path) => {
                    write_file(&path, &report.to_csv())?;
                    print!("{}", report.to_pivot_csv());
                }
                None => print!("{}", report.to_csv()),
            }
        }
        Command::Agreement {
            n,
            cost,
            trials,
            seed,
            out,
        } => {
            let cost: CostSpec = flag("cost", cost.parse())?;
            let curve = agreement_experiment(n, cost, trials, seed)?;
            emit(out.as_ref(), &agreement_csv(&curve, cost))?;
            if out.is_some() {
                println!("step1_agreement {:.6}", curve.agreement[0]);
                println!("mean_agreement {:.6}", curve.overall_mean());
            }
        }
        Command::Crossover {
            n,
            p_grid,
            trials,
            seed,
            out,
        } => {
            let grid = flag("p-grid", parse_grid(&p_grid))?;
            let (report, crossing) = crossover_scan(n, &grid, trials, seed)?;
            if let Some(path) = out {
                write_file(&path, &report.to_csv())?;
            }
            match crossing {
                Some(c) => println!(
                    "p_star {:.6} interval [{:.6}, {:.6}]",
                    c.p_star, c.low, c.high
                ),
                None => println!("p_star none"),
            }
        }
        Command::Beta {
            p,
            d,
            n,
            trials,
            seed,
        } => {
            let est = beta_estimate(p, d, n, trials, seed)?;
            println!("mean {:.9}", est.mean);
            println!("stderr {:.9}", est.stderr);
            println!("lower_bound {:.9}", beta_lower_bound(p, d)?);
            if d == 1 && p < 0.5 {
                let (lo, hi) = corollary3_interval(p)?;
                println!("interval [{lo:.9}, {hi:.9}]");
            }
        }
        Command::VerifyBounds {
            suite,
            trials,
            seed,
        } => {
            let outcome = run_suite(suite, trials, seed)?;
            for r in outcome.failures() {
                println!(
                    "FAIL {} lhs={:.12e} rhs={:.12e} n={} d={} p={:?} step={:?} seed={:?}",
                    r.name,
                    r.lhs,
                    r.rhs,
                    r.context.n,
                    r.context.d,
                    r.context.p,
                    r.context.step,
                    r.context.seed
                );
            }
            println!(
                "{}: {}/{} checks passed",
                suite.name(),
                outcome.passed(),
                outcome.reports.len()
            );
            return Ok(if outcome.all_passed() { 0 } else { 1 });
        }
        Command::Render { matching, out } => {
            let text = fs::read_to_string(&matching).map_err(|e| io_err(&matching, e))?;
            let (m, x, y) = matching_from_json(&text).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("{}: {msg}", matching.display())),
                Error::Schema(msg) => Error::Schema(format!("{}: {msg}", matching.display())),
                other => other,
            })?;
            write_file(&out, &render_matching(&m, &x, &y)?.to_svg())?;
        }
    }
    Ok(0)
}

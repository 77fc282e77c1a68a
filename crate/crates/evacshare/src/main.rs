//! Command-line front end: solve instances, validate documents, export MIP
//! models, generate synthetic scenarios, run sweeps, and report metrics.
//!
//! Results go to stdout (machine-readable), diagnostics to stderr. Exit
//! codes: 0 success, 1 validation or runtime failure, 2 usage error.

use clap::{Args, Parser, Subcommand};
use evacshare::exact::{solve_exact, ExactConfig};
use evacshare::experiment::{
    export_csv, export_svg, generate_instance, run_sweep, GenConfig, Method,
};
use evacshare::heuristic::{greedy_construct, solve_local_search, LocalSearchConfig};
use evacshare::instance::Instance;
use evacshare::mip::{build_model, export_lp, MipMode};
use evacshare::oracle::{solve_brute_force, OracleLimits};
use evacshare::plan::{average_travel_distance, evacuation_percentage, Plan};
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "evacshare",
    version,
    about = "Deadline-bounded ridesharing evacuation toolkit"
)]
struct Cli {
    /// Cap the number of worker threads used by parallel sections.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance; plan JSON on stdout, status record on stderr.
    Solve {
        /// Instance document to read.
        #[arg(long)]
        instance: PathBuf,
        /// Solution method.
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Wall-clock budget in seconds (method exact).
        #[arg(long)]
        time_limit: Option<f64>,
        /// Search-node budget (method exact).
        #[arg(long)]
        node_limit: Option<u64>,
        /// RNG seed (method local-search).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Improvement pass budget (method local-search).
        #[arg(long, default_value_t = LocalSearchConfig::default().max_iterations)]
        max_iter: usize,
        /// Write the plan here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an instance document; prints violations and exits 1 on any.
    Validate {
        /// Instance document to read.
        #[arg(long)]
        instance: PathBuf,
    },
    /// Export the optimization model as LP text.
    ExportMip {
        /// Instance document to read.
        #[arg(long)]
        instance: PathBuf,
        /// Model emission mode.
        #[arg(long, default_value = "strengthened", value_parser = parse_mode)]
        mode: MipMode,
        /// Write the LP text here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic instance document.
    Gen {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Fraction of households owning a vehicle (0 < r < 1).
        #[arg(long)]
        ratio: f64,
        /// Evacuation deadline, minutes.
        #[arg(long, default_value_t = 15.0)]
        tmax: f64,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a ratio x deadline sweep and write a CSV (and optional SVG) report.
    Sweep {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Ownership ratios to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.4, 0.5, 0.6, 0.7])]
        ratios: Vec<f64>,
        /// Deadlines to sweep, minutes.
        #[arg(long, value_delimiter = ',', default_values_t = vec![5.0, 7.0, 9.0, 11.0, 13.0, 15.0])]
        tmaxes: Vec<f64>,
        /// Methods to run per cell.
        #[arg(long, value_delimiter = ',', value_parser = parse_method,
              default_values_t = vec![Method::Exact, Method::Greedy, Method::LocalSearch])]
        methods: Vec<Method>,
        /// Wall-clock budget per exact cell, seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Search-node budget per exact cell.
        #[arg(long)]
        node_limit: Option<u64>,
        /// CSV report path.
        #[arg(long, default_value = "report.csv")]
        out: PathBuf,
        /// Also write SVG charts here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print evacuation percentage and average travel distance for a plan.
    Metrics {
        /// Instance document to read.
        #[arg(long)]
        instance: PathBuf,
        /// Plan document to read.
        #[arg(long)]
        plan: PathBuf,
    },
}

/// Generator knobs shared by `gen` and `sweep`.
#[derive(Args)]
struct ShapeArgs {
    /// PRNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of households.
    #[arg(long, default_value_t = 14)]
    households: usize,
    /// Number of gathering places.
    #[arg(long, default_value_t = 8)]
    gatherings: usize,
    /// Persons per household.
    #[arg(long, default_value_t = 3)]
    household_size: i64,
    /// Vehicle capacities, cycled over owners in placement order.
    #[arg(long, value_delimiter = ',', default_values_t = vec![5, 7])]
    capacities: Vec<i64>,
    /// Side of the square sampling area, miles.
    #[arg(long, default_value_t = 4.0)]
    area: f64,
    /// Travel speed, miles per minute.
    #[arg(long, default_value_t = 0.5)]
    speed: f64,
    /// Boarding time per person, minutes.
    #[arg(long = "tp", default_value_t = 1.0)]
    t_p: f64,
}

impl ShapeArgs {
    fn to_config(&self, r_ratio: f64, t_max: f64) -> GenConfig {
        GenConfig {
            n_households: self.households,
            n_gathering: self.gatherings,
            r_ratio,
            household_size: self.household_size,
            capacities: self.capacities.clone(),
            area: self.area,
            speed: self.speed,
            t_p: self.t_p,
            t_max,
            seed: self.seed,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<MipMode, String> {
    s.parse()
}

enum Failure {
    /// Violations already printed; exit 1 without an extra message.
    Validation,
    Message(String),
}

fn fail<E: fmt::Display>(e: E) -> Failure {
    Failure::Message(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // The global pool can only be configured once per process; a
        // second attempt is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => ExitCode::from(1),
        Err(Failure::Message(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            instance,
            method,
            time_limit,
            node_limit,
            seed,
            max_iter,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let started = Instant::now();
            let (plan, exact_extra) = match method {
                Method::Brute => {
                    let plan =
                        solve_brute_force(&inst, &OracleLimits::default()).map_err(fail)?;
                    (plan, None)
                }
                Method::Exact => {
                    let config = ExactConfig {
                        time_limit_secs: time_limit,
                        node_limit,
                    };
                    let outcome = solve_exact(&inst, &config);
                    let extra = (outcome.status, outcome.best_bound, outcome.nodes);
                    (outcome.plan, Some(extra))
                }
                Method::Greedy => (greedy_construct(&inst), None),
                Method::LocalSearch => {
                    let config = LocalSearchConfig {
                        max_iterations: max_iter,
                        seed,
                        ..LocalSearchConfig::default()
                    };
                    (solve_local_search(&inst, &config), None)
                }
            };
            let seconds = started.elapsed().as_secs_f64();
            let status_line = match exact_extra {
                Some((status, best_bound, nodes)) => serde_json::json!({
                    "status": status,
                    "objective": plan.evacuated_total,
                    "best_bound": best_bound,
                    "nodes": nodes,
                    "seconds": seconds,
                }),
                None => serde_json::json!({
                    "status": if method == Method::Brute { "optimal" } else { "ok" },
                    "objective": plan.evacuated_total,
                    "seconds": seconds,
                }),
            };
            emit(out.as_deref(), &plan.to_json())?;
            eprintln!("{status_line}");
            Ok(())
        }
        Command::Validate { instance } => {
            let text = read_file(&instance)?;
            let parsed: Result<Instance, _> = serde_json::from_str(&text);
            match parsed {
                Err(e) => {
                    print_out(&format!("schema error: {e}\n"))?;
                    Err(Failure::Validation)
                }
                Ok(inst) => {
                    let violations = inst.validate();
                    if violations.is_empty() {
                        print_out("ok\n")
                    } else {
                        let mut lines = String::new();
                        for v in &violations {
                            lines.push_str(&v.to_string());
                            lines.push('\n');
                        }
                        print_out(&lines)?;
                        Err(Failure::Validation)
                    }
                }
            }
        }
        Command::ExportMip { instance, mode, out } => {
            let inst = load_instance(&instance)?;
            let model = build_model(&inst, mode);
            let text = export_lp(&model);
            emit(out.as_deref(), &text)?;
            eprintln!(
                "{} model: {} variables, {} constraints",
                model.mode,
                model.variables.len(),
                model.constraints.len()
            );
            Ok(())
        }
        Command::Gen { shape, ratio, tmax, out } => {
            let config = shape.to_config(ratio, tmax);
            let inst = generate_instance(&config).map_err(fail)?;
            emit(out.as_deref(), &inst.to_json())
        }
        Command::Sweep {
            shape,
            ratios,
            tmaxes,
            methods,
            time_limit,
            node_limit,
            out,
            svg,
        } => {
            let base = shape.to_config(0.5, 15.0);
            let exact_config = ExactConfig {
                time_limit_secs: time_limit,
                node_limit,
            };
            let report = run_sweep(&base, &ratios, &tmaxes, &methods, &exact_config);
            // Render everything before touching the filesystem so a late
            // failure cannot leave partial files behind.
            let csv = export_csv(&report).map_err(fail)?;
            let charts = match &svg {
                Some(_) => Some(export_svg(&report).map_err(fail)?),
                None => None,
            };
            write_file(&out, &csv)?;
            if let (Some(path), Some(text)) = (&svg, &charts) {
                write_file(path, text)?;
            }
            eprintln!("wrote {} rows to {}", report.rows.len(), out.display());
            Ok(())
        }
        Command::Metrics { instance, plan } => {
            let inst = load_instance(&instance)?;
            let plan = load_plan(&plan)?;
            ensure_resolvable(&inst, &plan)?;
            let ep = evacuation_percentage(&inst, &plan).ok();
            let atd = average_travel_distance(&inst, &plan).ok();
            print_out(&format!(
                "{{\"EP\": {}, \"ATD\": {}}}\n",
                json_number(ep),
                json_number(atd)
            ))
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Message(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Message(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Instance::from_json(&read_file(path)?).map_err(fail)
}

fn load_plan(path: &Path) -> Result<Plan, Failure> {
    Plan::from_json(&read_file(path)?).map_err(fail)
}

/// Distance metrics walk route ids unchecked, so refuse plans whose ids do
/// not resolve against the instance.
fn ensure_resolvable(inst: &Instance, plan: &Plan) -> Result<(), Failure> {
    for route in &plan.routes {
        if inst.index_of(&route.vehicle).is_none() {
            return Err(Failure::Message(format!("unknown vehicle {:?}", route.vehicle)));
        }
        if !route.used {
            continue;
        }
        for stop in &route.stops {
            if inst.index_of(&stop.location).is_none() {
                return Err(Failure::Message(format!("unknown location {:?}", stop.location)));
            }
        }
        match &route.destination {
            Some(dest) if inst.index_of(dest).is_some() => {}
            Some(dest) => {
                return Err(Failure::Message(format!("unknown destination {dest:?}")))
            }
            None => {
                return Err(Failure::Message(format!(
                    "used route {:?} has no destination",
                    route.vehicle
                )))
            }
        }
    }
    Ok(())
}

fn json_number(value: Option<f64>) -> String {
    match value {
        Some(v) => serde_json::json!(v).to_string(),
        None => "null".to_string(),
    }
}

/// Prints to stdout or writes the file, never both.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => print_out(text),
    }
}

/// Writes to stdout without panicking when the reader hangs up early
/// (e.g. piping into `head`).
fn print_out(text: &str) -> Result<(), Failure> {
    match io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Failure::Message(format!("stdout: {e}"))),
    }
}

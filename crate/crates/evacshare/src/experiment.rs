//! Synthetic instance generation, ratio × deadline sweeps, and report
//! emission (CSV for machines, SVG line charts for eyeballs).
//!
//! Instances are drawn uniformly in a square: households and gathering
//! places get their coordinates first, then the leading share of
//! households becomes vehicle owners, so the geometry stays identical
//! across ownership ratios and deadlines for a fixed seed. Distances are
//! Euclidean times a 1.3 circuity factor (a standard surrogate for road
//! networks); travel times divide distance by a constant speed.

use crate::exact::{solve_exact, ExactConfig};
use crate::heuristic::{greedy_construct, solve_local_search, LocalSearchConfig};
use crate::instance::{Instance, Location, LocationKind, DEFAULT_SPEED_MILES_PER_MINUTE};
use crate::oracle::{solve_brute_force, OracleLimits};
use crate::plan::{average_travel_distance, evacuation_percentage, Plan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// Road-network detour factor applied on top of Euclidean distances.
const CIRCUITY: f64 = 1.3;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n_households: usize,
    pub n_gathering: usize,
    /// Fraction of households that own a vehicle (0 < r < 1); the owner
    /// count is rounded half-up.
    pub r_ratio: f64,
    pub household_size: i64,
    /// Vehicle capacities cycled over owners in placement order.
    pub capacities: Vec<i64>,
    /// Side of the square sampling area, miles.
    pub area: f64,
    /// Converts distance to travel time, miles per minute.
    pub speed: f64,
    pub t_p: f64,
    pub t_max: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n_households: 14,
            n_gathering: 8,
            r_ratio: 0.5,
            household_size: 3,
            capacities: vec![5, 7],
            area: 4.0,
            speed: DEFAULT_SPEED_MILES_PER_MINUTE,
            t_p: 1.0,
            t_max: 15.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("r_ratio must lie strictly between 0 and 1, got {0}")]
    RatioOutOfRange(f64),
    #[error("need at least one household")]
    NoHouseholds,
    #[error("need at least one gathering place")]
    NoGatherings,
    #[error("capacities list must not be empty")]
    NoCapacities,
    #[error("area must be positive, got {0}")]
    BadArea(f64),
    #[error("speed must be positive, got {0}")]
    BadSpeed(f64),
    #[error("household_size must be non-negative, got {0}")]
    BadHouseholdSize(i64),
    #[error("t_p and t_max must be non-negative")]
    NegativeTimes,
}

fn validate_config(config: &GenConfig) -> Result<(), ConfigError> {
    if !(config.r_ratio > 0.0 && config.r_ratio < 1.0) {
        return Err(ConfigError::RatioOutOfRange(config.r_ratio));
    }
    if config.n_households < 1 {
        return Err(ConfigError::NoHouseholds);
    }
    if config.n_gathering < 1 {
        return Err(ConfigError::NoGatherings);
    }
    if config.capacities.is_empty() {
        return Err(ConfigError::NoCapacities);
    }
    if config.area <= 0.0 || config.area.is_nan() {
        return Err(ConfigError::BadArea(config.area));
    }
    if config.speed <= 0.0 || config.speed.is_nan() {
        return Err(ConfigError::BadSpeed(config.speed));
    }
    if config.household_size < 0 {
        return Err(ConfigError::BadHouseholdSize(config.household_size));
    }
    if config.t_p < 0.0 || config.t_max < 0.0 {
        return Err(ConfigError::NegativeTimes);
    }
    Ok(())
}

/// Owner count under the round-half-up rule.
pub fn owner_count(n_households: usize, r_ratio: f64) -> usize {
    (r_ratio * n_households as f64 + 0.5).floor() as usize
}

/// Draws a deterministic instance for the config; identical seeds give
/// byte-identical serializations.
pub fn generate_instance(config: &GenConfig) -> Result<Instance, ConfigError> {
    validate_config(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let total = config.n_households + config.n_gathering;
    let points: Vec<(f64, f64)> = (0..total)
        .map(|_| {
            (
                rng.random_range(0.0..config.area),
                rng.random_range(0.0..config.area),
            )
        })
        .collect();

    let n_owned = owner_count(config.n_households, config.r_ratio);
    let mut locations = Vec::with_capacity(total);
    for (i, &point) in points.iter().enumerate() {
        let (kind, id, demand, capacity) = if i < n_owned {
            (
                LocationKind::VehicleOwner,
                format!("r{}", i + 1),
                config.household_size,
                Some(config.capacities[i % config.capacities.len()]),
            )
        } else if i < config.n_households {
            (
                LocationKind::Carless,
                format!("h{}", i - n_owned + 1),
                config.household_size,
                None,
            )
        } else {
            (
                LocationKind::Gathering,
                format!("s{}", i - config.n_households + 1),
                0,
                None,
            )
        };
        locations.push(Location {
            id,
            kind,
            demand,
            capacity,
            coord: Some(point),
        });
    }

    let travel_distance: Vec<Vec<f64>> = points
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|b| {
                    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
                    (dx * dx + dy * dy).sqrt() * CIRCUITY
                })
                .collect()
        })
        .collect();
    let travel_time: Vec<Vec<f64>> = travel_distance
        .iter()
        .map(|row| row.iter().map(|miles| miles / config.speed).collect())
        .collect();

    Ok(Instance {
        name: format!("gen-{}-r{}-t{}", config.seed, config.r_ratio, config.t_max),
        t_p: config.t_p,
        t_max: config.t_max,
        locations,
        travel_time,
        travel_distance: Some(travel_distance),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Exact,
    Greedy,
    LocalSearch,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Brute => "brute",
            Method::Exact => "exact",
            Method::Greedy => "greedy",
            Method::LocalSearch => "local-search",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Method::Brute),
            "exact" => Ok(Method::Exact),
            "greedy" => Ok(Method::Greedy),
            "local-search" => Ok(Method::LocalSearch),
            other => Err(format!(
                "unknown method {other:?} (expected brute, exact, greedy, or local-search)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub r_ratio: f64,
    pub t_max: f64,
    pub method: Method,
    pub objective: Option<i64>,
    pub ep: Option<f64>,
    pub atd: Option<f64>,
    pub status: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

/// Runs every (ratio, deadline, method) cell and collects one row per
/// cell, in grid order regardless of scheduling. Solver failures land in
/// the row's status; the sweep itself never aborts.
pub fn run_sweep(
    base: &GenConfig,
    ratios: &[f64],
    t_maxes: &[f64],
    methods: &[Method],
    exact_config: &ExactConfig,
) -> SweepReport {
    let mut cells = Vec::new();
    for &r_ratio in ratios {
        for &t_max in t_maxes {
            for &method in methods {
                cells.push((r_ratio, t_max, method));
            }
        }
    }
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(r_ratio, t_max, method)| {
            let config = GenConfig {
                r_ratio,
                t_max,
                ..base.clone()
            };
            run_cell(&config, method, exact_config)
        })
        .collect();
    SweepReport { rows }
}

fn run_cell(config: &GenConfig, method: Method, exact_config: &ExactConfig) -> SweepRow {
    let mut row = SweepRow {
        r_ratio: config.r_ratio,
        t_max: config.t_max,
        method,
        objective: None,
        ep: None,
        atd: None,
        status: String::new(),
        seconds: 0.0,
    };
    let inst = match generate_instance(config) {
        Ok(inst) => inst,
        Err(e) => {
            row.status = format!("error: {e}");
            return row;
        }
    };
    let started = Instant::now();
    let solved: Result<(Plan, String), String> = match method {
        Method::Brute => solve_brute_force(&inst, &OracleLimits::default())
            .map(|plan| (plan, "optimal".to_string()))
            .map_err(|e| e.to_string()),
        Method::Exact => {
            let out = solve_exact(&inst, exact_config);
            let status = match out.status {
                crate::exact::SolveStatus::Optimal => "optimal",
                crate::exact::SolveStatus::LimitReached => "limit_reached",
            };
            Ok((out.plan, status.to_string()))
        }
        Method::Greedy => Ok((greedy_construct(&inst), "ok".to_string())),
        Method::LocalSearch => Ok((
            solve_local_search(&inst, &LocalSearchConfig::default()),
            "ok".to_string(),
        )),
    };
    row.seconds = started.elapsed().as_secs_f64();
    match solved {
        Ok((plan, status)) => {
            row.objective = Some(plan.evacuated_total);
            row.ep = evacuation_percentage(&inst, &plan).ok();
            row.atd = average_travel_distance(&inst, &plan).ok();
            row.status = status;
        }
        Err(e) => row.status = format!("error: {e}"),
    }
    row
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("report has no rows")]
    Empty,
}

pub const CSV_HEADER: &str = "r_ratio,t_max,method,objective,EP,ATD,status,seconds";

/// RFC-4180 CSV with one row per cell; optional metrics render as empty
/// fields.
pub fn export_csv(report: &SweepReport) -> Result<String, ReportError> {
    if report.rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(CSV_HEADER.split(','))
        .expect("writing to memory cannot fail");
    for row in &report.rows {
        writer
            .write_record([
                row.r_ratio.to_string(),
                row.t_max.to_string(),
                row.method.to_string(),
                row.objective.map(|v| v.to_string()).unwrap_or_default(),
                row.ep.map(|v| v.to_string()).unwrap_or_default(),
                row.atd.map(|v| v.to_string()).unwrap_or_default(),
                row.status.clone(),
                row.seconds.to_string(),
            ])
            .expect("writing to memory cannot fail");
    }
    let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad report CSV: {0}")]
pub struct ReportParseError(String);

/// Reads back a CSV produced by [`export_csv`].
pub fn parse_report_csv(text: &str) -> Result<SweepReport, ReportParseError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| ReportParseError(e.to_string()))?
        .clone();
    let expected: Vec<&str> = CSV_HEADER.split(',').collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(ReportParseError(format!("unexpected header {headers:?}")));
    }
    fn opt<T: FromStr>(field: &str, what: &str) -> Result<Option<T>, ReportParseError> {
        if field.is_empty() {
            return Ok(None);
        }
        field
            .parse::<T>()
            .map(Some)
            .map_err(|_| ReportParseError(format!("bad {what}: {field:?}")))
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ReportParseError(e.to_string()))?;
        if record.len() != expected.len() {
            return Err(ReportParseError(format!("short row {record:?}")));
        }
        rows.push(SweepRow {
            r_ratio: opt::<f64>(&record[0], "r_ratio")?
                .ok_or_else(|| ReportParseError("missing r_ratio".into()))?,
            t_max: opt::<f64>(&record[1], "t_max")?
                .ok_or_else(|| ReportParseError("missing t_max".into()))?,
            method: record[2]
                .parse::<Method>()
                .map_err(ReportParseError)?,
            objective: opt(&record[3], "objective")?,
            ep: opt(&record[4], "EP")?,
            atd: opt(&record[5], "ATD")?,
            status: record[6].to_string(),
            seconds: opt::<f64>(&record[7], "seconds")?
                .ok_or_else(|| ReportParseError("missing seconds".into()))?,
        });
    }
    Ok(SweepReport { rows })
}

/// Self-contained SVG with two stacked line charts — evacuation percentage
/// and average travel distance against the deadline — one polyline per
/// (ratio, method) series.
pub fn export_svg(report: &SweepReport) -> Result<String, ReportError> {
    if report.rows.is_empty() {
        return Err(ReportError::Empty);
    }
    const PALETTE: [&str; 10] = [
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
        "#bcbd22", "#17becf",
    ];
    const LEFT: f64 = 60.0;
    const WIDTH: f64 = 420.0;

    let mut series: Vec<(f64, Method)> = Vec::new();
    for row in &report.rows {
        if !series.iter().any(|&(r, m)| r == row.r_ratio && m == row.method) {
            series.push((row.r_ratio, row.method));
        }
    }
    let t_min = report.rows.iter().map(|r| r.t_max).fold(f64::INFINITY, f64::min);
    let t_max = report.rows.iter().map(|r| r.t_max).fold(f64::NEG_INFINITY, f64::max);
    let atd_max = report
        .rows
        .iter()
        .filter_map(|r| r.atd)
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let x = |t: f64| {
        if t_max > t_min {
            LEFT + (t - t_min) / (t_max - t_min) * WIDTH
        } else {
            LEFT + WIDTH / 2.0
        }
    };

    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"720\" height=\"780\" \
         viewBox=\"0 0 720 780\" font-family=\"sans-serif\" font-size=\"12\">\n",
    );
    svg.push_str("<rect width=\"720\" height=\"780\" fill=\"white\"/>\n");

    for (chart, (title, y_label, y_top, metric)) in [
        (
            "Evacuation percentage vs deadline",
            "EP",
            40.0,
            Box::new(|row: &SweepRow| row.ep) as Box<dyn Fn(&SweepRow) -> Option<f64>>,
        ),
        (
            "Average travel distance vs deadline",
            "ATD (miles)",
            430.0,
            Box::new(|row: &SweepRow| row.atd),
        ),
    ]
    .into_iter()
    .enumerate()
    {
        let y_bottom = y_top + 280.0;
        let scale_max = if chart == 0 { 1.0 } else { atd_max };
        let y = |v: f64| y_bottom - (v / scale_max) * 280.0;
        svg.push_str(&format!(
            "<text x=\"{LEFT}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\">{title}</text>\n",
            y_top - 16.0
        ));
        // Axes.
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{y_top}\" x2=\"{LEFT}\" y2=\"{y_bottom}\" stroke=\"black\"/>\n"
        ));
        svg.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{y_bottom}\" x2=\"{}\" y2=\"{y_bottom}\" stroke=\"black\"/>\n",
            LEFT + WIDTH
        ));
        svg.push_str(&format!(
            "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\">{y_label}</text>\n",
            (y_top + y_bottom) / 2.0,
            (y_top + y_bottom) / 2.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">deadline (minutes)</text>\n",
            LEFT + WIDTH / 2.0 - 50.0,
            y_bottom + 32.0
        ));
        // Y-axis extremes.
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">0</text>\n",
            LEFT - 6.0,
            y_bottom + 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{scale_max:.2}</text>\n",
            LEFT - 6.0,
            y_top + 4.0
        ));
        // X ticks at each distinct deadline.
        let mut ticks: Vec<f64> = report.rows.iter().map(|r| r.t_max).collect();
        ticks.sort_by(f64::total_cmp);
        ticks.dedup();
        for t in &ticks {
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{t}</text>\n",
                x(*t),
                y_bottom + 16.0
            ));
        }
        for (si, &(ratio, method)) in series.iter().enumerate() {
            let color = PALETTE[si % PALETTE.len()];
            let mut points = String::new();
            let mut rows: Vec<&SweepRow> = report
                .rows
                .iter()
                .filter(|r| r.r_ratio == ratio && r.method == method)
                .collect();
            rows.sort_by(|a, b| a.t_max.total_cmp(&b.t_max));
            for row in rows {
                if let Some(v) = metric(row) {
                    points.push_str(&format!("{:.2},{:.2} ", x(row.t_max), y(v)));
                }
            }
            if points.is_empty() {
                continue;
            }
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                points.trim_end()
            ));
            // Legend, drawn once per chart.
            let ly = y_top + 14.0 * si as f64;
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                LEFT + WIDTH + 20.0,
                LEFT + WIDTH + 44.0
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\">r={ratio} {method}</text>\n",
                LEFT + WIDTH + 50.0,
                ly + 4.0
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

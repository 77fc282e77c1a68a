//! Solution data model, feasibility checking, and evacuation metrics.
//!
//! A [`Plan`] holds one [`Route`] per vehicle-owning household. A used route
//! starts at the owner's home with the owner's own household aboard, visits
//! carless households in order (each stop records how many people board and
//! the departure timestamp), and ends at one gathering place. The checker in
//! [`check_feasibility`] re-derives every timestamp and load from the
//! instance and flags each divergence, so it accepts nothing a solver merely
//! claims.
//!
//! Clock rules: a vehicle leaves home at minute 0 (its own household is
//! already aboard), driving `i -> j` takes `travel_time[i][j]`, and boarding
//! `p` people takes `t_p * p`. The departure time stored at a stop is the
//! moment the vehicle leaves it. Arrival at the gathering place must not
//! exceed `t_max`. Each vehicle carries its own clock; vehicles never wait
//! for one another.

use crate::instance::{Instance, LocationKind};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Stored timestamps may drift from recomputed ones by at most this many
/// minutes before the checker flags them.
pub const TIMESTAMP_TOLERANCE: f64 = 1e-6;

/// Slack for floating-point deadline comparisons. Solvers apply the same
/// slack when testing candidate routes, so they and the checker agree on
/// borderline arithmetic.
pub const DEADLINE_EPS: f64 = 1e-9;

/// One pickup stop on a route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stop {
    /// Id of the carless household being visited.
    pub location: String,
    /// People boarding here; never more than the seats left.
    pub pickup: i64,
    /// Minute the vehicle pulls away from this stop.
    pub depart_time: f64,
}

/// The itinerary of one household vehicle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Route {
    /// Id of the vehicle-owning household.
    pub vehicle: String,
    /// False when the vehicle stays home (no stops, no destination).
    pub used: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stops: Vec<Stop>,
    /// Gathering place the route ends at; present iff `used`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destination: Option<String>,
    /// Minute the vehicle reaches the destination; present iff `used`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrival_time: Option<f64>,
}

/// A complete solution: one route per vehicle plus the evacuee count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub routes: Vec<Route>,
    pub evacuated_total: i64,
}

/// Machine-readable reason a plan is infeasible (or, for
/// [`PlanViolationCode::ZeroPickupStop`], merely wasteful).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanViolationCode {
    UnknownVehicle,
    DuplicateVehicle,
    MissingVehicle,
    UnknownLocation,
    WrongStopKind,
    WrongDestinationKind,
    UnusedRouteNotEmpty,
    MissingDestination,
    MissingArrival,
    RouteRevisit,
    InvalidPickup,
    CapacityExceeded,
    DemandExceeded,
    DeadlineViolated,
    TimestampMismatch,
    TotalMismatch,
    /// Warning only: a stop where nobody boards is legal but pointless.
    ZeroPickupStop,
}

impl fmt::Display for PlanViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).expect("code serializes");
        write!(f, "{}", s.trim_matches('"'))
    }
}

/// One checker finding with its anchor points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanViolation {
    pub code: PlanViolationCode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    pub detail: String,
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)?;
        if let Some(v) = &self.vehicle {
            write!(f, " vehicle={v}")?;
        }
        if let Some(l) = &self.location {
            write!(f, " location={l}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Outcome of a feasibility check. `violations` is empty exactly when the
/// plan is feasible; `notes` carries warnings that do not affect feasibility.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub violations: Vec<PlanViolation>,
    pub notes: Vec<PlanViolation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Why a metric could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("instance has zero total demand, evacuation percentage is undefined")]
    DegenerateInstance,
    #[error("plan uses no vehicle, average travel distance is undefined")]
    NoUsedVehicles,
}

impl Plan {
    /// Parses a plan document; unknown JSON keys are rejected.
    pub fn from_json(text: &str) -> Result<Plan, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plan serializes");
        s.push('\n');
        s
    }

    /// Number of used routes.
    pub fn used_count(&self) -> usize {
        self.routes.iter().filter(|r| r.used).count()
    }
}

/// Builds a used route for `vehicle` (location index) through `stops` of
/// `(carless location index, pickup)` ending at gathering index `dest`,
/// stamping departure and arrival times by the crate's clock rules.
pub fn build_route(inst: &Instance, vehicle: usize, stops: &[(usize, i64)], dest: usize) -> Route {
    let mut clock = 0.0;
    let mut prev = vehicle;
    let mut out_stops = Vec::with_capacity(stops.len());
    for &(loc, pickup) in stops {
        clock += inst.time(prev, loc) + inst.t_p * pickup as f64;
        out_stops.push(Stop {
            location: inst.locations[loc].id.clone(),
            pickup,
            depart_time: clock,
        });
        prev = loc;
    }
    let arrival = clock + inst.time(prev, dest);
    Route {
        vehicle: inst.locations[vehicle].id.clone(),
        used: true,
        stops: out_stops,
        destination: Some(inst.locations[dest].id.clone()),
        arrival_time: Some(arrival),
    }
}

/// Builds the stay-home route for `vehicle` (location index).
pub fn unused_route(inst: &Instance, vehicle: usize) -> Route {
    Route {
        vehicle: inst.locations[vehicle].id.clone(),
        used: false,
        stops: Vec::new(),
        destination: None,
        arrival_time: None,
    }
}

/// People evacuated by one route: the owner's household plus all pickups,
/// or zero for an unused route.
pub fn route_evacuees(inst: &Instance, route: &Route) -> i64 {
    if !route.used {
        return 0;
    }
    let own = inst
        .index_of(&route.vehicle)
        .map(|i| inst.locations[i].demand)
        .unwrap_or(0);
    own + route.stops.iter().map(|s| s.pickup).sum::<i64>()
}

/// Miles driven by one route (0 when unused). Ids must resolve.
pub fn route_distance(inst: &Instance, route: &Route) -> f64 {
    if !route.used {
        return 0.0;
    }
    let mut prev = inst.index_of(&route.vehicle).expect("known vehicle");
    let mut total = 0.0;
    for stop in &route.stops {
        let loc = inst.index_of(&stop.location).expect("known stop");
        total += inst.distance(prev, loc);
        prev = loc;
    }
    let dest = inst
        .index_of(route.destination.as_deref().expect("used route has destination"))
        .expect("known destination");
    total + inst.distance(prev, dest)
}

/// Total miles driven by all used routes.
pub fn total_distance(inst: &Instance, plan: &Plan) -> f64 {
    plan.routes.iter().map(|r| route_distance(inst, r)).sum()
}

/// Re-derives every load and timestamp of `plan` from `inst` and reports all
/// divergences. Structural breakage (unknown ids, wrong location kinds,
/// revisits) is reported as violations too, so the checker never panics on
/// untrusted input.
pub fn check_feasibility(inst: &Instance, plan: &Plan) -> FeasibilityReport {
    let mut report = FeasibilityReport::default();
    let mut picked_at: HashMap<usize, i64> = HashMap::new();
    let mut seen_vehicles: HashMap<String, usize> = HashMap::new();
    let mut recomputed_total = 0i64;

    for route in &plan.routes {
        *seen_vehicles.entry(route.vehicle.clone()).or_insert(0) += 1;
        let vehicle_idx = match inst.index_of(&route.vehicle) {
            Some(i) if inst.locations[i].kind == LocationKind::VehicleOwner => i,
            _ => {
                report.violations.push(PlanViolation {
                    code: PlanViolationCode::UnknownVehicle,
                    vehicle: Some(route.vehicle.clone()),
                    location: None,
                    detail: "route vehicle is not a vehicle-owning household".to_string(),
                });
                continue;
            }
        };

        if !route.used {
            if !route.stops.is_empty() || route.destination.is_some() || route.arrival_time.is_some()
            {
                report.violations.push(PlanViolation {
                    code: PlanViolationCode::UnusedRouteNotEmpty,
                    vehicle: Some(route.vehicle.clone()),
                    location: None,
                    detail: "unused route must have no stops, destination, or arrival".to_string(),
                });
            }
            continue;
        }

        recomputed_total += route_evacuees(inst, route);
        check_used_route(inst, route, vehicle_idx, &mut picked_at, &mut report);
    }

    for (vehicle, count) in &seen_vehicles {
        if *count > 1 {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::DuplicateVehicle,
                vehicle: Some(vehicle.clone()),
                location: None,
                detail: format!("{count} routes share this vehicle"),
            });
        }
    }
    for owner in inst.owners() {
        let id = &inst.locations[owner].id;
        if !seen_vehicles.contains_key(id) {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::MissingVehicle,
                vehicle: Some(id.clone()),
                location: None,
                detail: "plan has no route for this vehicle".to_string(),
            });
        }
    }

    // Pickups at a household, across all routes, cannot exceed the people
    // living there.
    let mut demand_hits: Vec<(usize, i64)> = picked_at.into_iter().collect();
    demand_hits.sort_unstable();
    for (loc, total) in demand_hits {
        let demand = inst.locations[loc].demand;
        if total > demand {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::DemandExceeded,
                vehicle: None,
                location: Some(inst.locations[loc].id.clone()),
                detail: format!("{total} people picked up but only {demand} live here"),
            });
        }
    }

    if plan.evacuated_total != recomputed_total {
        report.violations.push(PlanViolation {
            code: PlanViolationCode::TotalMismatch,
            vehicle: None,
            location: None,
            detail: format!(
                "plan claims {} evacuees, routes account for {recomputed_total}",
                plan.evacuated_total
            ),
        });
    }

    report
}

fn check_used_route(
    inst: &Instance,
    route: &Route,
    vehicle_idx: usize,
    picked_at: &mut HashMap<usize, i64>,
    report: &mut FeasibilityReport,
) {
    let vehicle = route.vehicle.clone();
    let capacity = inst.capacity_of(vehicle_idx);
    let mut load = inst.locations[vehicle_idx].demand;
    if load > capacity {
        report.violations.push(PlanViolation {
            code: PlanViolationCode::CapacityExceeded,
            vehicle: Some(vehicle.clone()),
            location: Some(vehicle.clone()),
            detail: format!("own household of {load} exceeds {capacity} seats"),
        });
    }

    let mut clock = 0.0;
    let mut prev = vehicle_idx;
    let mut visited = vec![vehicle_idx];
    for stop in &route.stops {
        let loc = match inst.index_of(&stop.location) {
            Some(i) => i,
            None => {
                report.violations.push(PlanViolation {
                    code: PlanViolationCode::UnknownLocation,
                    vehicle: Some(vehicle.clone()),
                    location: Some(stop.location.clone()),
                    detail: "stop location is not in the instance".to_string(),
                });
                return;
            }
        };
        if inst.locations[loc].kind != LocationKind::Carless {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::WrongStopKind,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: "stops may only visit carless households".to_string(),
            });
        }
        if visited.contains(&loc) {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::RouteRevisit,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: "route visits this location twice".to_string(),
            });
        }
        visited.push(loc);

        if stop.pickup < 0 {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::InvalidPickup,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: format!("pickup {} is negative", stop.pickup),
            });
        } else if stop.pickup == 0 {
            report.notes.push(PlanViolation {
                code: PlanViolationCode::ZeroPickupStop,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: "stop boards nobody".to_string(),
            });
        }
        *picked_at.entry(loc).or_insert(0) += stop.pickup.max(0);

        load += stop.pickup.max(0);
        if load > capacity {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::CapacityExceeded,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: format!("load {load} after boarding exceeds {capacity} seats"),
            });
        }

        clock += inst.time(prev, loc) + inst.t_p * stop.pickup.max(0) as f64;
        if (stop.depart_time - clock).abs() > TIMESTAMP_TOLERANCE {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::TimestampMismatch,
                vehicle: Some(vehicle.clone()),
                location: Some(stop.location.clone()),
                detail: format!(
                    "stored departure {} differs from recomputed {clock}",
                    stop.depart_time
                ),
            });
        }
        prev = loc;
    }

    let dest = match &route.destination {
        None => {
            report.violations.push(PlanViolation {
                code: PlanViolationCode::MissingDestination,
                vehicle: Some(vehicle.clone()),
                location: None,
                detail: "used route must end at a gathering place".to_string(),
            });
            return;
        }
        Some(id) => match inst.index_of(id) {
            Some(i) => {
                if inst.locations[i].kind != LocationKind::Gathering {
                    report.violations.push(PlanViolation {
                        code: PlanViolationCode::WrongDestinationKind,
                        vehicle: Some(vehicle.clone()),
                        location: Some(id.clone()),
                        detail: "destination must be a gathering place".to_string(),
                    });
                }
                i
            }
            None => {
                report.violations.push(PlanViolation {
                    code: PlanViolationCode::UnknownLocation,
                    vehicle: Some(vehicle.clone()),
                    location: Some(id.clone()),
                    detail: "destination is not in the instance".to_string(),
                });
                return;
            }
        },
    };

    let arrival = clock + inst.time(prev, dest);
    match route.arrival_time {
        None => report.violations.push(PlanViolation {
            code: PlanViolationCode::MissingArrival,
            vehicle: Some(vehicle.clone()),
            location: None,
            detail: "used route must record its arrival time".to_string(),
        }),
        Some(stored) => {
            if (stored - arrival).abs() > TIMESTAMP_TOLERANCE {
                report.violations.push(PlanViolation {
                    code: PlanViolationCode::TimestampMismatch,
                    vehicle: Some(vehicle.clone()),
                    location: route.destination.clone(),
                    detail: format!("stored arrival {stored} differs from recomputed {arrival}"),
                });
            }
        }
    }
    if arrival > inst.t_max + DEADLINE_EPS {
        report.violations.push(PlanViolation {
            code: PlanViolationCode::DeadlineViolated,
            vehicle: Some(vehicle.clone()),
            location: route.destination.clone(),
            detail: format!("arrives at {arrival} after the {} minute deadline", inst.t_max),
        });
    }
}

/// Share of the total demand the plan evacuates, in `[0, 1]` for feasible
/// plans. Fails on instances with zero total demand.
pub fn evacuation_percentage(inst: &Instance, plan: &Plan) -> Result<f64, MetricsError> {
    let demand = inst.total_demand();
    if demand <= 0 {
        return Err(MetricsError::DegenerateInstance);
    }
    Ok(plan.evacuated_total as f64 / demand as f64)
}

/// Mean miles driven per used route. Fails when no route is used.
pub fn average_travel_distance(inst: &Instance, plan: &Plan) -> Result<f64, MetricsError> {
    let used = plan.used_count();
    if used == 0 {
        return Err(MetricsError::NoUsedVehicles);
    }
    Ok(total_distance(inst, plan) / used as f64)
}

/// Solution rank in the crate-wide tie-break order: most evacuees first,
/// then fewest miles, then the lexicographically smallest route encoding.
/// Every solver resolves ties through this type, which is what lets their
/// plans be compared verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRank {
    pub evacuees: i64,
    pub distance: f64,
    pub key: Vec<u64>,
}

impl CandidateRank {
    pub fn better_than(&self, other: &CandidateRank) -> bool {
        if self.evacuees != other.evacuees {
            return self.evacuees > other.evacuees;
        }
        if self.distance != other.distance {
            return self.distance < other.distance;
        }
        self.key < other.key
    }
}

/// Ranks a plan for tie-breaking. The encoding walks vehicles in instance
/// order; an unused route contributes `[0]`, a used one `[1, #stops,
/// loc, pickup, ..., destination]`, all as location indices, so shorter
/// routes order before longer ones with the same prefix.
pub fn rank_plan(inst: &Instance, plan: &Plan) -> CandidateRank {
    let by_vehicle: HashMap<&str, &Route> =
        plan.routes.iter().map(|r| (r.vehicle.as_str(), r)).collect();
    let mut key = Vec::new();
    for owner in inst.owners() {
        let route = by_vehicle
            .get(inst.locations[owner].id.as_str())
            .expect("plan covers every vehicle");
        if !route.used {
            key.push(0);
            continue;
        }
        key.push(1);
        key.push(route.stops.len() as u64);
        for stop in &route.stops {
            key.push(inst.index_of(&stop.location).expect("known stop") as u64);
            key.push(stop.pickup as u64);
        }
        key.push(inst.index_of(route.destination.as_deref().unwrap()).expect("known dest") as u64);
    }
    CandidateRank {
        evacuees: plan.evacuated_total,
        distance: total_distance(inst, plan),
        key,
    }
}

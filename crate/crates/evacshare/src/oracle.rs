//! Exhaustive reference solver for tiny instances.
//!
//! [`solve_brute_force`] walks every combination of vehicle itineraries —
//! each vehicle is either unused or drives some ordered subset of carless
//! households to some gathering place — and, for each combination, computes
//! the best joint pickup allocation exactly. Because capacity only ever
//! binds on a route's total load (loads never decrease before the
//! destination) and the deadline only binds on a route's total boarding
//! time, the allocation subproblem is a small transportation problem solved
//! by augmenting paths; every integral pickup split across vehicles is
//! covered, including several vehicles drawing from one household.
//!
//! The result is canonical: most evacuees, then fewest total miles, then the
//! lexicographically smallest route encoding (see [`plan::rank_plan`]). This
//! module exists to certify the other solvers, so it favors a shape other
//! code can be checked against over speed.

use crate::instance::Instance;
use crate::plan::{self, build_route, unused_route, CandidateRank, Plan, DEADLINE_EPS};

/// Hard size limits for the exhaustive search. The defaults keep the walk
/// in the millions of combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vehicles: usize,
    pub max_carless: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vehicles: 3,
            max_carless: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance has {count} {what}, exhaustive limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        count: usize,
        limit: usize,
    },
}

/// One candidate itinerary for one vehicle: stop order and destination, with
/// the pickup quantities left open.
#[derive(Debug, Clone)]
struct Shape {
    stops: Vec<usize>,
    dest: usize,
    arc_time: f64,
    arc_dist: f64,
}

/// Finds the canonical optimum by total enumeration. Fails fast when the
/// instance exceeds `limits`.
pub fn solve_brute_force(inst: &Instance, limits: &OracleLimits) -> Result<Plan, OracleError> {
    let owners = inst.owners();
    let carless = inst.carless();
    if owners.len() > limits.max_vehicles {
        return Err(OracleError::LimitExceeded {
            what: "vehicles",
            count: owners.len(),
            limit: limits.max_vehicles,
        });
    }
    if carless.len() > limits.max_carless {
        return Err(OracleError::LimitExceeded {
            what: "carless households",
            count: carless.len(),
            limit: limits.max_carless,
        });
    }

    // Per-vehicle candidate shapes. Index 0 always means "unused".
    let shapes: Vec<Vec<Shape>> = owners
        .iter()
        .map(|&r| enumerate_shapes(inst, r, &carless))
        .collect();

    let mut best: Option<(CandidateRank, Plan)> = None;
    let mut choice = vec![0usize; owners.len()]; // 0 = unused, i+1 = shapes[k][i]

    loop {
        consider_combination(inst, &owners, &shapes, &choice, &mut best);

        // Odometer step over the joint shape space.
        let mut k = 0;
        loop {
            if k == owners.len() {
                let (_, plan) = best.expect("the all-unused combination always yields a plan");
                return Ok(plan);
            }
            choice[k] += 1;
            if choice[k] <= shapes[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// All deadline-feasible itineraries for vehicle `r`: every ordered subset
/// of carless households, ending at every gathering place, kept only if the
/// driving alone beats the deadline (boarding can only add time).
fn enumerate_shapes(inst: &Instance, r: usize, carless: &[usize]) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut stops = Vec::new();
    let mut in_use = vec![false; carless.len()];
    extend_shapes(inst, r, carless, &mut stops, &mut in_use, 0.0, 0.0, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_shapes(
    inst: &Instance,
    r: usize,
    carless: &[usize],
    stops: &mut Vec<usize>,
    in_use: &mut [bool],
    time_so_far: f64,
    dist_so_far: f64,
    out: &mut Vec<Shape>,
) {
    let last = *stops.last().unwrap_or(&r);
    for s in inst.gatherings() {
        let arc_time = time_so_far + inst.time(last, s);
        if arc_time <= inst.t_max + DEADLINE_EPS {
            out.push(Shape {
                stops: stops.clone(),
                dest: s,
                arc_time,
                arc_dist: dist_so_far + inst.distance(last, s),
            });
        }
    }
    for (idx, &h) in carless.iter().enumerate() {
        if in_use[idx] {
            continue;
        }
        let t = time_so_far + inst.time(last, h);
        // Even an empty-handed visit must still leave time to reach some
        // gathering place; the recursion's destination step enforces that.
        if t > inst.t_max + DEADLINE_EPS {
            continue;
        }
        in_use[idx] = true;
        stops.push(h);
        extend_shapes(inst, r, carless, stops, in_use, t, dist_so_far + inst.distance(last, h), out);
        stops.pop();
        in_use[idx] = false;
    }
}

/// Scores one joint choice of shapes and replaces `best` when it wins.
fn consider_combination(
    inst: &Instance,
    owners: &[usize],
    shapes: &[Vec<Shape>],
    choice: &[usize],
    best: &mut Option<(CandidateRank, Plan)>,
) {
    let picked: Vec<Option<&Shape>> = choice
        .iter()
        .enumerate()
        .map(|(k, &c)| if c == 0 { None } else { Some(&shapes[k][c - 1]) })
        .collect();

    let mut own_total = 0i64;
    let mut distance = 0.0;
    for (k, shape) in picked.iter().enumerate() {
        if let Some(shape) = shape {
            own_total += inst.locations[owners[k]].demand;
            distance += shape.arc_dist;
        }
    }

    let alloc = AllocationProblem::new(inst, owners, &picked);
    let objective = own_total + alloc.max_flow_value();

    if let Some((incumbent, _)) = best {
        if objective < incumbent.evacuees {
            return;
        }
        if objective == incumbent.evacuees && distance > incumbent.distance {
            return;
        }
    }

    let pickups = alloc.lexicographically_smallest_optimum();
    let plan = assemble_plan(inst, owners, &picked, &pickups);
    let rank = plan::rank_plan(inst, &plan);
    match best {
        Some((incumbent, _)) if !rank.better_than(incumbent) => {}
        _ => *best = Some((rank, plan)),
    }
}

/// Assembles routes from fixed shapes plus the chosen pickups, where
/// `pickups` has one entry per *used* vehicle, in vehicle order.
fn assemble_plan(
    inst: &Instance,
    owners: &[usize],
    picked: &[Option<&Shape>],
    pickups: &[Vec<i64>],
) -> Plan {
    let mut routes = Vec::with_capacity(owners.len());
    let mut slot = 0;
    for (k, shape) in picked.iter().enumerate() {
        match shape {
            None => routes.push(unused_route(inst, owners[k])),
            Some(shape) => {
                let stops: Vec<(usize, i64)> = shape
                    .stops
                    .iter()
                    .copied()
                    .zip(pickups[slot].iter().copied())
                    .collect();
                routes.push(build_route(inst, owners[k], &stops, shape.dest));
                slot += 1;
            }
        }
    }
    let evacuated_total = routes.iter().map(|r| plan::route_evacuees(inst, r)).sum();
    Plan {
        routes,
        evacuated_total,
    }
}

/// The pickup allocation left once shapes are fixed: how many people each
/// stop takes, bounded per vehicle by spare seats and boarding-time budget,
/// and per household by the people living there (shared across vehicles).
struct AllocationProblem {
    /// Remaining boardable people per used vehicle.
    supplies: Vec<i64>,
    /// Remaining people per location index.
    demands: Vec<i64>,
    /// One entry per stop, in vehicle-then-stop order: (vehicle slot,
    /// location index).
    positions: Vec<(usize, usize)>,
}

impl AllocationProblem {
    fn new(inst: &Instance, owners: &[usize], picked: &[Option<&Shape>]) -> AllocationProblem {
        let mut supplies = Vec::new();
        let mut positions = Vec::new();
        let mut demands = vec![0i64; inst.len()];
        for h in inst.carless() {
            demands[h] = inst.locations[h].demand.max(0);
        }
        for (k, shape) in picked.iter().enumerate() {
            let Some(shape) = shape else { continue };
            let spare = inst.capacity_of(owners[k]) - inst.locations[owners[k]].demand;
            let budget = if inst.t_p > 0.0 {
                (((inst.t_max + DEADLINE_EPS) - shape.arc_time) / inst.t_p).floor() as i64
            } else {
                i64::MAX
            };
            let slot = supplies.len();
            supplies.push(spare.min(budget).max(0));
            for &h in &shape.stops {
                positions.push((slot, h));
            }
        }
        AllocationProblem {
            supplies,
            demands,
            positions,
        }
    }

    /// Most people the fixed shapes can board in total.
    fn max_flow_value(&self) -> i64 {
        max_flow(&self.supplies, &self.demands, &self.positions)
    }

    /// The optimal allocation whose stop-by-stop pickup sequence is
    /// lexicographically smallest; this is the allocation the canonical
    /// route encoding prefers. Greedy per position: take the fewest people
    /// that still leaves the remaining positions able to reach the optimum.
    fn lexicographically_smallest_optimum(&self) -> Vec<Vec<i64>> {
        let total = self.max_flow_value();
        let mut supplies = self.supplies.clone();
        let mut demands = self.demands.clone();
        let mut fixed = 0i64;
        let mut per_position = Vec::with_capacity(self.positions.len());
        for (idx, &(slot, loc)) in self.positions.iter().enumerate() {
            let rest = &self.positions[idx + 1..];
            let cap = supplies[slot].min(demands[loc]);
            let mut chosen = cap;
            for q in 0..=cap {
                supplies[slot] -= q;
                demands[loc] -= q;
                let attainable = fixed + q + max_flow(&supplies, &demands, rest);
                supplies[slot] += q;
                demands[loc] += q;
                if attainable >= total {
                    chosen = q;
                    break;
                }
            }
            supplies[slot] -= chosen;
            demands[loc] -= chosen;
            fixed += chosen;
            per_position.push(chosen);
        }
        debug_assert_eq!(fixed, total);

        // Regroup flat positions into per-vehicle stop lists.
        let mut out: Vec<Vec<i64>> = vec![Vec::new(); self.supplies.len()];
        for (&(slot, _), &q) in self.positions.iter().zip(per_position.iter()) {
            out[slot].push(q);
        }
        out
    }
}

/// Transportation max-flow: `positions` are unit edges from a supply slot to
/// a location; returns the most flow the bipartite graph admits. Sizes here
/// are a handful of nodes, so plain augmenting DFS is plenty.
fn max_flow(supplies: &[i64], demands: &[i64], positions: &[(usize, usize)]) -> i64 {
    let mut supply_left: Vec<i64> = supplies.to_vec();
    let mut demand_left: Vec<i64> = demands.to_vec();
    // Arc flows are per position so parallel stops at one location stay
    // distinct; augmenting paths alternate slot -> location -> slot.
    let mut flow_on: Vec<i64> = vec![0; positions.len()];
    let mut total = 0;
    loop {
        // Greedy saturation pass first; then search for augmenting chains.
        let mut pushed = false;
        for (idx, &(slot, loc)) in positions.iter().enumerate() {
            let q = supply_left[slot].min(demand_left[loc]);
            if q > 0 {
                flow_on[idx] += q;
                supply_left[slot] -= q;
                demand_left[loc] -= q;
                total += q;
                pushed = true;
            }
        }
        if pushed {
            continue;
        }
        if !augment_once(
            supplies.len(),
            positions,
            &mut supply_left,
            &mut demand_left,
            &mut flow_on,
        ) {
            return total;
        }
        total += 1;
    }
}

/// Pushes one unit along an alternating chain slot -> loc -> (slot with flow
/// to withdraw) -> loc ... ending at a location with spare demand. Returns
/// false when no chain exists, i.e. the flow is maximum.
fn augment_once(
    n_slots: usize,
    positions: &[(usize, usize)],
    supply_left: &mut [i64],
    demand_left: &mut [i64],
    flow_on: &mut [i64],
) -> bool {
    for start in 0..n_slots {
        if supply_left[start] == 0 {
            continue;
        }
        let mut visited_slots = vec![false; n_slots];
        visited_slots[start] = true;
        let mut path = Vec::new();
        if find_chain(start, positions, demand_left, flow_on, &mut visited_slots, &mut path) {
            // path alternates forward edges (push) and backward edges (pull).
            supply_left[start] -= 1;
            for (step, &edge) in path.iter().enumerate() {
                if step % 2 == 0 {
                    flow_on[edge] += 1;
                } else {
                    flow_on[edge] -= 1;
                }
            }
            let &(_, final_loc) = &positions[*path.last().unwrap()];
            demand_left[final_loc] -= 1;
            return true;
        }
    }
    false
}

fn find_chain(
    slot: usize,
    positions: &[(usize, usize)],
    demand_left: &[i64],
    flow_on: &[i64],
    visited_slots: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    for (idx, &(s, loc)) in positions.iter().enumerate() {
        if s != slot {
            continue;
        }
        path.push(idx);
        if demand_left[loc] > 0 {
            return true;
        }
        // Location saturated: try to withdraw a unit some other slot sent
        // here and re-route that slot elsewhere.
        for (back, &(other, other_loc)) in positions.iter().enumerate() {
            if other_loc != loc || flow_on[back] == 0 || visited_slots[other] {
                continue;
            }
            visited_slots[other] = true;
            path.push(back);
            if find_chain(other, positions, demand_left, flow_on, visited_slots, path) {
                return true;
            }
            path.pop();
        }
        path.pop();
    }
    false
}

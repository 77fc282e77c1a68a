//! Greedy construction and local-search improvement for instances beyond
//! the exact solver's comfortable scale.
//!
//! The greedy pass handles vehicles one at a time (largest capacity first)
//! and repeatedly applies the insertion with the best marginal rate: added
//! evacuees per added minute of route time. Local search then walks four
//! move families with first-improvement acceptance on the lexicographic
//! objective (more evacuees, then fewer miles), in a fixed scan order so
//! results are reproducible. When the search stalls with demand still
//! unserved, one ejection round forces the largest leftover household into
//! the fleet at the cost of the smallest existing pickup, and the result
//! is kept only if it beats the stalled plan.

use crate::instance::Instance;
use crate::plan::{self, check_feasibility, FeasibilityReport, Plan, DEADLINE_EPS};
use serde::{Deserialize, Serialize};

/// Tie-break slack in the greedy marginal-rate score; keeps zero-minute
/// insertions from dividing by zero.
const RATE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighborhood {
    RelocatePickup,
    SwapPickups,
    IntraRouteTwoOpt,
    ChangeDestination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearchConfig {
    /// Upper bound on improvement passes; 0 returns the start plan as-is.
    pub max_iterations: usize,
    /// Move families to scan, in the given order.
    pub neighborhoods: Vec<Neighborhood>,
    /// Reserved for future randomized moves; the current neighborhoods
    /// scan in a fixed order, so the seed does not influence the result.
    pub seed: u64,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig {
            max_iterations: 200,
            neighborhoods: vec![
                Neighborhood::RelocatePickup,
                Neighborhood::SwapPickups,
                Neighborhood::IntraRouteTwoOpt,
                Neighborhood::ChangeDestination,
            ],
            seed: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LocalSearchError {
    #[error("start plan fails the feasibility check ({} violations)", report.violations.len())]
    InfeasibleStart { report: FeasibilityReport },
}

/// Stops and destination for one vehicle; `None` leaves it home.
type RouteState = Option<(Vec<(usize, i64)>, usize)>;

/// Builds a feasible plan by marginal-rate insertion.
pub fn greedy_construct(inst: &Instance) -> Plan {
    let owners = inst.owners();
    let mut order: Vec<usize> = (0..owners.len()).collect();
    order.sort_by_key(|&slot| (std::cmp::Reverse(inst.capacity_of(owners[slot])), slot));

    let mut residual: Vec<i64> = vec![0; inst.len()];
    for &h in &inst.carless() {
        residual[h] = inst.locations[h].demand.max(0);
    }

    let mut state: Vec<RouteState> = vec![None; owners.len()];
    for &slot in &order {
        let origin = owners[slot];
        let mut spare = (inst.capacity_of(origin) - inst.locations[origin].demand).max(0);
        let mut stops: Vec<(usize, i64)> = Vec::new();
        loop {
            let old_completion = nearest_close(inst, origin, &stops).map(|(_, t)| t).unwrap_or(0.0);
            let mut best: Option<(f64, usize, usize, i64)> = None;
            for (h, &left) in residual.iter().enumerate() {
                if left == 0 || stops.iter().any(|&(loc, _)| loc == h) {
                    continue;
                }
                if !matches!(inst.locations[h].kind, crate::instance::LocationKind::Carless) {
                    continue;
                }
                for pos in 0..=stops.len() {
                    let mut trial = stops.clone();
                    trial.insert(pos, (h, 0));
                    let Some((_, completion0)) = nearest_close(inst, origin, &trial) else {
                        continue;
                    };
                    let q_time = if inst.t_p > 0.0 {
                        ((inst.t_max + DEADLINE_EPS - completion0) / inst.t_p).floor() as i64
                    } else {
                        i64::MAX
                    };
                    let q = residual[h].min(spare).min(q_time);
                    if q < 1 {
                        continue;
                    }
                    let completion = completion0 + inst.t_p * q as f64;
                    let delta = (completion - old_completion).max(0.0);
                    let score = q as f64 / (delta + RATE_EPS);
                    if best.is_none_or(|(s, _, _, _)| score > s) {
                        best = Some((score, h, pos, q));
                    }
                }
            }
            match best {
                Some((_, h, pos, q)) => {
                    stops.insert(pos, (h, q));
                    residual[h] -= q;
                    spare -= q;
                }
                None => break,
            }
        }
        // Drive whenever some gathering place is reachable: the household
        // on board always counts, even with no pickups.
        if let Some((dest, _)) = nearest_close(inst, origin, &stops) {
            state[slot] = Some((stops, dest));
        }
    }
    plan_from_state(inst, &state)
}

/// First-improvement local search; see the module docs for the move set.
pub fn local_search(
    inst: &Instance,
    start: &Plan,
    config: &LocalSearchConfig,
) -> Result<Plan, LocalSearchError> {
    let report = check_feasibility(inst, start);
    if !report.is_feasible() {
        return Err(LocalSearchError::InfeasibleStart { report });
    }
    if config.max_iterations == 0 {
        return Ok(start.clone());
    }

    let owners = inst.owners();
    let mut state: Vec<RouteState> = owners
        .iter()
        .map(|&r| {
            let route = start
                .routes
                .iter()
                .find(|route| route.vehicle == inst.locations[r].id)
                .expect("feasible plans carry one route per vehicle");
            if route.used {
                let stops = route
                    .stops
                    .iter()
                    .map(|s| (inst.index_of(&s.location).unwrap(), s.pickup))
                    .collect();
                let dest = inst.index_of(route.destination.as_deref().unwrap()).unwrap();
                Some((stops, dest))
            } else {
                None
            }
        })
        .collect();

    let mut iters = 0usize;
    run_passes(inst, &mut state, config, &mut iters);

    // Ejection round: force the biggest unserved household in, paying with
    // the smallest existing pickup, then improve again; keep only if better.
    if iters < config.max_iterations {
        let before = state_rank(inst, &state);
        let mut trial = state.clone();
        if eject_and_insert(inst, &mut trial) {
            run_passes(inst, &mut trial, config, &mut iters);
            if rank_better(state_rank(inst, &trial), before) {
                state = trial;
            }
        }
    }

    Ok(plan_from_state(inst, &state))
}

/// Greedy construction followed by local search under `config`.
pub fn solve_local_search(inst: &Instance, config: &LocalSearchConfig) -> Plan {
    let start = greedy_construct(inst);
    local_search(inst, &start, config).expect("greedy output is always feasible")
}

fn run_passes(
    inst: &Instance,
    state: &mut Vec<RouteState>,
    config: &LocalSearchConfig,
    iters: &mut usize,
) {
    while *iters < config.max_iterations {
        *iters += 1;
        if !improve_once(inst, state, &config.neighborhoods) {
            break;
        }
    }
}

/// Scans the neighborhoods in order and applies the first strictly
/// improving move. Returns false at a local optimum.
fn improve_once(inst: &Instance, state: &mut Vec<RouteState>, neighborhoods: &[Neighborhood]) -> bool {
    let current = state_rank(inst, state);
    for nb in neighborhoods {
        let found = match nb {
            Neighborhood::RelocatePickup => try_relocate(inst, state, current),
            Neighborhood::SwapPickups => try_swap(inst, state, current),
            Neighborhood::IntraRouteTwoOpt => try_two_opt(inst, state, current),
            Neighborhood::ChangeDestination => try_change_destination(inst, state, current),
        };
        if let Some(next) = found {
            *state = next;
            return true;
        }
    }
    false
}

// ---- move families -------------------------------------------------------

fn try_relocate(inst: &Instance, state: &[RouteState], current: (i64, f64)) -> Option<Vec<RouteState>> {
    let owners = inst.owners();
    let residual = residuals(inst, state);

    // Pool insertions: put unserved demand on some vehicle.
    for h in inst.carless() {
        if residual[h] == 0 {
            continue;
        }
        for slot in 0..owners.len() {
            let stops_len = state[slot].as_ref().map_or(0, |(s, _)| s.len());
            if let Some((stops, _)) = &state[slot] {
                if stops.iter().any(|&(loc, _)| loc == h) {
                    continue;
                }
            }
            for pos in 0..=stops_len {
                let mut next = state.to_vec();
                if !insert_stop(inst, &mut next, slot, pos, h, residual[h]) {
                    continue;
                }
                if let Some(better) = accept(inst, &next, current) {
                    return Some(better);
                }
            }
        }
    }

    // Transfers: move an existing stop to another spot, possibly growing it
    // from the freed residual.
    for from in 0..owners.len() {
        let Some((stops, _)) = &state[from] else { continue };
        for (si, &(h, q)) in stops.iter().enumerate() {
            for to in 0..owners.len() {
                let to_len = state[to].as_ref().map_or(0, |(s, _)| s.len());
                let limit = if to == from { to_len - 1 } else { to_len };
                // Re-inserting at the original spot is allowed on purpose:
                // the reinsertion recomputes the boarding size, so the move
                // doubles as "grow this pickup from leftover demand".
                for pos in 0..=limit {
                    let mut next = state.to_vec();
                    remove_stop(inst, &mut next, from, si);
                    if to != from {
                        if let Some((s, _)) = &next[to] {
                            if s.iter().any(|&(loc, _)| loc == h) {
                                continue;
                            }
                        }
                    }
                    let available = residual[h] + q;
                    if !insert_stop(inst, &mut next, to, pos, h, available) {
                        continue;
                    }
                    if let Some(better) = accept(inst, &next, current) {
                        return Some(better);
                    }
                }
            }
        }
    }
    None
}

fn try_swap(inst: &Instance, state: &[RouteState], current: (i64, f64)) -> Option<Vec<RouteState>> {
    let n = state.len();
    for a in 0..n {
        let Some((stops_a, _)) = &state[a] else { continue };
        for b in a + 1..n {
            let Some((stops_b, _)) = &state[b] else { continue };
            for i in 0..stops_a.len() {
                for j in 0..stops_b.len() {
                    let mut next = state.to_vec();
                    let (sa, _) = next[a].as_mut().unwrap();
                    let stop_a = sa[i];
                    let (sb, _) = next[b].as_mut().unwrap();
                    let stop_b = sb[j];
                    if sb.iter().any(|&(loc, _)| loc == stop_a.0 && loc != stop_b.0) {
                        continue;
                    }
                    let (sa, _) = next[a].as_mut().unwrap();
                    if sa.iter().any(|&(loc, _)| loc == stop_b.0 && loc != stop_a.0) {
                        continue;
                    }
                    next[a].as_mut().unwrap().0[i] = stop_b;
                    next[b].as_mut().unwrap().0[j] = stop_a;
                    if !route_feasible(inst, &next, a) || !route_feasible(inst, &next, b) {
                        continue;
                    }
                    if let Some(better) = accept(inst, &next, current) {
                        return Some(better);
                    }
                }
            }
        }
    }
    None
}

fn try_two_opt(inst: &Instance, state: &[RouteState], current: (i64, f64)) -> Option<Vec<RouteState>> {
    for slot in 0..state.len() {
        let Some((stops, _)) = &state[slot] else { continue };
        for i in 0..stops.len() {
            for j in i + 1..stops.len() {
                let mut next = state.to_vec();
                next[slot].as_mut().unwrap().0[i..=j].reverse();
                if !route_feasible(inst, &next, slot) {
                    continue;
                }
                if let Some(better) = accept(inst, &next, current) {
                    return Some(better);
                }
            }
        }
    }
    None
}

fn try_change_destination(
    inst: &Instance,
    state: &[RouteState],
    current: (i64, f64),
) -> Option<Vec<RouteState>> {
    for slot in 0..state.len() {
        let Some((_, dest)) = &state[slot] else { continue };
        let dest = *dest;
        for s in inst.gatherings() {
            if s == dest {
                continue;
            }
            let mut next = state.to_vec();
            next[slot].as_mut().unwrap().1 = s;
            if !route_feasible(inst, &next, slot) {
                continue;
            }
            if let Some(better) = accept(inst, &next, current) {
                return Some(better);
            }
        }
    }
    None
}

// ---- state plumbing ------------------------------------------------------

/// Inserts `(h, q)` into `state[slot]` at `pos`, choosing the largest
/// feasible `q ≤ available`; activates an unused vehicle on the fly and
/// re-closes the route if its destination stops being reachable. False when
/// no boarding of at least one person fits.
fn insert_stop(
    inst: &Instance,
    state: &mut [RouteState],
    slot: usize,
    pos: usize,
    h: usize,
    available: i64,
) -> bool {
    let owners = inst.owners();
    let origin = owners[slot];
    let (mut stops, dest) = match state[slot].take() {
        Some((stops, dest)) => (stops, Some(dest)),
        None => (Vec::new(), None),
    };
    if pos > stops.len() {
        // The spot vanished: a preceding removal re-closed this route and
        // dropped it to unused (possible off-metric, where a shorter stop
        // list can still arrive later). Skip the candidate.
        state[slot] = dest.map(|d| (stops, d));
        return false;
    }
    let own = inst.locations[origin].demand;
    let load: i64 = own + stops.iter().map(|&(_, q)| q).sum::<i64>();
    let spare = inst.capacity_of(origin) - load;
    stops.insert(pos, (h, 0));
    let close = match dest {
        Some(d) if arrival(inst, origin, &stops, d) <= inst.t_max + DEADLINE_EPS => {
            Some((d, arrival(inst, origin, &stops, d)))
        }
        _ => nearest_close(inst, origin, &stops),
    };
    let Some((dest, completion0)) = close else {
        state[slot] = None;
        return false;
    };
    let q_time = if inst.t_p > 0.0 {
        ((inst.t_max + DEADLINE_EPS - completion0) / inst.t_p).floor() as i64
    } else {
        i64::MAX
    };
    let q = available.min(spare).min(q_time);
    if q < 1 {
        state[slot] = None;
        return false;
    }
    stops[pos].1 = q;
    state[slot] = Some((stops, dest));
    true
}

/// Removes a stop; an emptied route keeps driving directly when it can,
/// otherwise the vehicle goes home.
fn remove_stop(inst: &Instance, state: &mut [RouteState], slot: usize, si: usize) {
    let origin = inst.owners()[slot];
    let (mut stops, dest) = state[slot].take().expect("removing from a used route");
    stops.remove(si);
    state[slot] = if arrival(inst, origin, &stops, dest) <= inst.t_max + DEADLINE_EPS {
        Some((stops, dest))
    } else {
        nearest_close(inst, origin, &stops).map(|(d, _)| (stops, d))
    };
}

/// Checks one route's standalone feasibility (distinct stops, capacity,
/// deadline). Cross-route demand is checked by [`accept`].
fn route_feasible(inst: &Instance, state: &[RouteState], slot: usize) -> bool {
    let origin = inst.owners()[slot];
    let Some((stops, dest)) = &state[slot] else { return true };
    for (i, &(a, _)) in stops.iter().enumerate() {
        if stops[i + 1..].iter().any(|&(b, _)| a == b) {
            return false;
        }
    }
    let load: i64 = inst.locations[origin].demand + stops.iter().map(|&(_, q)| q).sum::<i64>();
    if load > inst.capacity_of(origin) {
        return false;
    }
    arrival(inst, origin, stops, *dest) <= inst.t_max + DEADLINE_EPS
}

/// Candidate acceptance: all routes standalone-feasible, demand never
/// overdrawn, and the rank strictly better than `current`.
fn accept(inst: &Instance, next: &[RouteState], current: (i64, f64)) -> Option<Vec<RouteState>> {
    for slot in 0..next.len() {
        if !route_feasible(inst, next, slot) {
            return None;
        }
    }
    if residuals(inst, next).iter().any(|&r| r < 0) {
        return None;
    }
    let rank = state_rank(inst, next);
    if rank_better(rank, current) {
        Some(next.to_vec())
    } else {
        None
    }
}

fn rank_better(candidate: (i64, f64), current: (i64, f64)) -> bool {
    candidate.0 > current.0 || (candidate.0 == current.0 && candidate.1 < current.1)
}

/// (evacuees, total distance) of a state.
fn state_rank(inst: &Instance, state: &[RouteState]) -> (i64, f64) {
    let owners = inst.owners();
    let mut evac = 0i64;
    let mut dist = 0.0f64;
    for (slot, route) in state.iter().enumerate() {
        let origin = owners[slot];
        if let Some((stops, dest)) = route {
            evac += inst.locations[origin].demand;
            let mut prev = origin;
            for &(h, q) in stops {
                evac += q;
                dist += inst.distance(prev, h);
                prev = h;
            }
            dist += inst.distance(prev, *dest);
        }
    }
    (evac, dist)
}

/// Demand left unserved at each location under `state`.
fn residuals(inst: &Instance, state: &[RouteState]) -> Vec<i64> {
    let mut residual: Vec<i64> = inst.locations.iter().map(|l| l.demand.max(0)).collect();
    for i in inst.owners() {
        residual[i] = 0;
    }
    for i in inst.gatherings() {
        residual[i] = 0;
    }
    for route in state.iter().flatten() {
        for &(h, q) in &route.0 {
            residual[h] -= q;
        }
    }
    residual
}

/// One forced-diversification step: insert the largest unserved household
/// after ejecting the smallest pickup anywhere in the fleet. True when the
/// state changed.
fn eject_and_insert(inst: &Instance, state: &mut Vec<RouteState>) -> bool {
    let residual = residuals(inst, state);
    let target = inst
        .carless()
        .into_iter()
        .filter(|&h| residual[h] > 0)
        .max_by_key(|&h| (residual[h], std::cmp::Reverse(h)));
    let Some(target) = target else { return false };

    let mut smallest: Option<(i64, usize, usize)> = None;
    for (slot, route) in state.iter().enumerate() {
        if let Some((stops, _)) = route {
            for (si, &(_, q)) in stops.iter().enumerate() {
                if smallest.is_none_or(|(bq, bs, bi)| (q, slot, si) < (bq, bs, bi)) {
                    smallest = Some((q, slot, si));
                }
            }
        }
    }
    let backup = state.clone();
    if let Some((_, slot, si)) = smallest {
        if state[slot].as_ref().map(|(s, _)| s[si].0) == Some(target) {
            return false; // the smallest pickup already serves the target
        }
        remove_stop(inst, state, slot, si);
    }

    // Greedy-style forced insertion at the best marginal rate.
    let residual = residuals(inst, state);
    let mut best: Option<(f64, usize, usize)> = None;
    for slot in 0..state.len() {
        if let Some((stops, _)) = &state[slot] {
            if stops.iter().any(|&(loc, _)| loc == target) {
                continue;
            }
        }
        let len = state[slot].as_ref().map_or(0, |(s, _)| s.len());
        for pos in 0..=len {
            let mut trial = state.clone();
            if !insert_stop(inst, &mut trial, slot, pos, target, residual[target]) {
                continue;
            }
            let q = trial[slot].as_ref().unwrap().0[pos].1;
            let delta = (state_rank(inst, &trial).1 - state_rank(inst, state).1).max(0.0);
            let score = q as f64 / (delta + RATE_EPS);
            if best.is_none_or(|(s, _, _)| score > s) {
                best = Some((score, slot, pos));
            }
        }
    }
    match best {
        Some((_, slot, pos)) => {
            let residual = residuals(inst, state);
            if insert_stop(inst, state, slot, pos, target, residual[target]) {
                true
            } else {
                *state = backup;
                false
            }
        }
        None => {
            *state = backup;
            false
        }
    }
}

/// Final clock at the destination for a candidate route.
fn arrival(inst: &Instance, origin: usize, stops: &[(usize, i64)], dest: usize) -> f64 {
    let mut clock = 0.0;
    let mut prev = origin;
    for &(h, q) in stops {
        clock += inst.time(prev, h) + inst.t_p * q as f64;
        prev = h;
    }
    clock + inst.time(prev, dest)
}

/// Deadline-feasible gathering place with the earliest arrival (smallest
/// index on ties), or `None` when the deadline kills every choice.
fn nearest_close(inst: &Instance, origin: usize, stops: &[(usize, i64)]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for s in inst.gatherings() {
        let t = arrival(inst, origin, stops, s);
        if t > inst.t_max + DEADLINE_EPS {
            continue;
        }
        if best.is_none_or(|(_, bt)| t < bt) {
            best = Some((s, t));
        }
    }
    best
}

fn plan_from_state(inst: &Instance, state: &[RouteState]) -> Plan {
    let owners = inst.owners();
    let mut routes = Vec::with_capacity(owners.len());
    for (slot, entry) in state.iter().enumerate() {
        match entry {
            Some((stops, dest)) => routes.push(plan::build_route(inst, owners[slot], stops, *dest)),
            None => routes.push(plan::unused_route(inst, owners[slot])),
        }
    }
    let evacuated_total = routes.iter().map(|r| plan::route_evacuees(inst, r)).sum();
    Plan { routes, evacuated_total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_exact, ExactConfig};
    use crate::testkit::{random_micro_instance, t1};

    #[test]
    fn t1_deadline_ladder() {
        let plan = greedy_construct(&t1());
        assert_eq!(plan.evacuated_total, 6);
        assert_eq!(plan.routes[0].stops.len(), 1);
        assert_eq!(plan.routes[0].stops[0].pickup, 3);
        assert!(check_feasibility(&t1(), &plan).is_feasible());

        let mut inst = t1();
        inst.t_max = 6.0;
        let plan = greedy_construct(&inst);
        assert_eq!(plan.evacuated_total, 5, "a partial boarding still fits the deadline");
        assert!(check_feasibility(&inst, &plan).is_feasible());

        inst.t_max = 2.0;
        let plan = greedy_construct(&inst);
        assert_eq!(plan.evacuated_total, 0);
        assert!(plan.routes.iter().all(|r| !r.used));
    }

    #[test]
    fn full_vehicle_drives_direct() {
        let mut inst = t1();
        inst.locations[0].capacity = Some(3);
        let plan = greedy_construct(&inst);
        assert_eq!(plan.evacuated_total, 3);
        assert!(plan.routes[0].stops.is_empty());
        assert_eq!(plan.routes[0].destination.as_deref(), Some("s1"));
    }

    #[test]
    fn local_search_leaves_the_optimum_alone() {
        let inst = t1();
        let start = greedy_construct(&inst);
        let improved = local_search(&inst, &start, &LocalSearchConfig::default()).unwrap();
        assert_eq!(improved, start);
    }

    #[test]
    fn zero_iterations_returns_start_unchanged() {
        let inst = t1();
        // A deliberately lazy start: drive directly, ignore the household.
        let start = Plan {
            routes: vec![plan::build_route(&inst, 0, &[], 2)],
            evacuated_total: 3,
        };
        let config = LocalSearchConfig {
            max_iterations: 0,
            ..Default::default()
        };
        let same = local_search(&inst, &start, &config).unwrap();
        assert_eq!(same, start);
    }

    #[test]
    fn relocate_rescues_unserved_demand() {
        let inst = t1();
        let start = Plan {
            routes: vec![plan::build_route(&inst, 0, &[], 2)],
            evacuated_total: 3,
        };
        let improved = local_search(&inst, &start, &LocalSearchConfig::default()).unwrap();
        assert_eq!(improved.evacuated_total, 6, "pool insertion must pick up the household");
        assert!(check_feasibility(&inst, &improved).is_feasible());
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let inst = t1();
        let mut start = greedy_construct(&inst);
        start.routes[0].stops[0].pickup = 9;
        let err = local_search(&inst, &start, &LocalSearchConfig::default());
        assert!(matches!(err, Err(LocalSearchError::InfeasibleStart { .. })));
    }

    #[test]
    fn never_beats_exact_and_always_validates() {
        let config = LocalSearchConfig::default();
        for seed in 0..60u64 {
            let inst = random_micro_instance(seed, 3, 4, 2);
            let greedy = greedy_construct(&inst);
            assert!(
                check_feasibility(&inst, &greedy).is_feasible(),
                "greedy infeasible on seed {seed}"
            );
            let improved = local_search(&inst, &greedy, &config).unwrap();
            assert!(
                check_feasibility(&inst, &improved).is_feasible(),
                "local search broke feasibility on seed {seed}"
            );
            assert!(
                improved.evacuated_total >= greedy.evacuated_total,
                "local search regressed on seed {seed}"
            );
            let exact = solve_exact(&inst, &ExactConfig::default());
            assert!(
                improved.evacuated_total <= exact.plan.evacuated_total,
                "heuristic beat the optimum on seed {seed}: {} > {}",
                improved.evacuated_total,
                exact.plan.evacuated_total
            );
        }
    }

    #[test]
    fn is_deterministic() {
        let inst = random_micro_instance(7, 3, 4, 2);
        let config = LocalSearchConfig::default();
        let a = solve_local_search(&inst, &config);
        let b = solve_local_search(&inst, &config);
        assert_eq!(a, b);
    }
}

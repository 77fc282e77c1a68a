//! Certified-optimal solver: depth-first branch and bound.
//!
//! The search commits vehicles one at a time, in instance order. Within a
//! vehicle it either extends the route by one carless stop (branching over
//! boarding quantities), closes the route at the cheapest reachable
//! gathering place, or leaves the vehicle home. Leaves are complete plans,
//! compared with the crate-wide tie-break ([`plan::rank_plan`]): most
//! evacuees, then fewest miles, then smallest route encoding. The returned
//! plan therefore matches [`crate::oracle`] exactly, not only in objective.
//!
//! Pruning keeps each canonical co-optimum alive: a subtree dies only when
//! its evacuee bound is strictly below the incumbent, or when it ties the
//! incumbent's evacuee count but provably needs strictly more distance.
//! The evacuee bound is `current + min(residual demand, residual seats)`
//! plus the unstarted vehicles' own households; the distance bound adds
//! shortest-path closings for every vehicle the evacuee bound cannot spare.

use crate::instance::Instance;
use crate::plan::{self, CandidateRank, Plan, DEADLINE_EPS};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Slack when comparing accumulated distances during pruning; final
/// comparisons recompute distances canonically, so this only needs to stop
/// float drift from killing true ties.
const DIST_EPS: f64 = 1e-9;

/// Resource limits for the search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExactConfig {
    pub time_limit_secs: Option<f64>,
    pub node_limit: Option<u64>,
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// The plan is the canonical optimum.
    Optimal,
    /// A limit fired first; the plan is the best found and `best_bound`
    /// caps what any completion could still reach.
    LimitReached,
}

/// Search result: the best plan found plus the optimality certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOutcome {
    pub plan: Plan,
    pub status: SolveStatus,
    /// Upper bound on the true optimum; equals the plan's objective when
    /// `status` is [`SolveStatus::Optimal`].
    pub best_bound: i64,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// Runs the branch-and-bound search to completion or to a limit.
pub fn solve_exact(inst: &Instance, config: &ExactConfig) -> ExactOutcome {
    Searcher::new(inst, config).run()
}

struct Searcher<'a> {
    inst: &'a Instance,
    config: ExactConfig,
    owners: Vec<usize>,
    carless: Vec<usize>,
    /// Own-household size per vehicle slot.
    own: Vec<i64>,
    /// Spare seats per vehicle slot once its own household is aboard.
    spare: Vec<i64>,
    /// Suffix sums over vehicle slots, one entry past the end.
    own_from: Vec<i64>,
    spare_from: Vec<i64>,
    /// Cheapest way to finish from each location: shortest time (for
    /// feasibility) and shortest distance (for bounding), hopping only
    /// through carless households into some gathering place.
    finish_time: Vec<f64>,
    finish_dist: Vec<f64>,
    /// True when both matrices satisfy the triangle inequality; detours
    /// that board nobody can then never belong to the canonical optimum.
    metric: bool,

    residual: Vec<i64>,
    residual_total: i64,
    finished: Vec<RouteChoice>,
    committed_evac: i64,
    committed_dist: f64,
    cur_stops: Vec<(usize, i64)>,
    cur_clock: f64,
    cur_picks: i64,
    cur_dist: f64,
    cur_visited: u64,

    incumbent: Option<(CandidateRank, Plan)>,
    nodes: u64,
    started: Instant,
    hit_limit: bool,
    open_bound: i64,
}

#[derive(Clone)]
enum RouteChoice {
    Pending,
    Unused,
    Used { stops: Vec<(usize, i64)>, dest: usize },
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a Instance, config: &ExactConfig) -> Searcher<'a> {
        let owners = inst.owners();
        let carless = inst.carless();
        let own: Vec<i64> = owners.iter().map(|&r| inst.locations[r].demand).collect();
        let spare: Vec<i64> = owners
            .iter()
            .map(|&r| (inst.capacity_of(r) - inst.locations[r].demand).max(0))
            .collect();
        let mut own_from = vec![0i64; owners.len() + 1];
        let mut spare_from = vec![0i64; owners.len() + 1];
        for k in (0..owners.len()).rev() {
            own_from[k] = own_from[k + 1] + own[k];
            spare_from[k] = spare_from[k + 1] + spare[k];
        }

        let (finish_time, finish_dist) = finish_costs(inst, &carless);

        let mut residual = vec![0i64; inst.len()];
        let mut residual_total = 0;
        for &h in &carless {
            residual[h] = inst.locations[h].demand.max(0);
            residual_total += residual[h];
        }

        Searcher {
            inst,
            config: *config,
            metric: is_metric(inst),
            finished: vec![RouteChoice::Pending; owners.len()],
            owners,
            carless,
            own,
            spare,
            own_from,
            spare_from,
            finish_time,
            finish_dist,
            residual,
            residual_total,
            committed_evac: 0,
            committed_dist: 0.0,
            cur_stops: Vec::new(),
            cur_clock: 0.0,
            cur_picks: 0,
            cur_dist: 0.0,
            cur_visited: 0,
            incumbent: None,
            nodes: 0,
            started: Instant::now(),
            hit_limit: false,
            open_bound: 0,
        }
    }

    fn run(mut self) -> ExactOutcome {
        self.vehicle(0);
        let (rank, plan) = match self.incumbent {
            Some(found) => found,
            None => {
                // A limit fired before the first leaf; fall back to the
                // always-feasible stay-home plan.
                let routes = self.owners.iter().map(|&r| plan::unused_route(self.inst, r)).collect();
                let plan = Plan {
                    routes,
                    evacuated_total: 0,
                };
                let rank = plan::rank_plan(self.inst, &plan);
                (rank, plan)
            }
        };
        let status = if self.hit_limit {
            SolveStatus::LimitReached
        } else {
            SolveStatus::Optimal
        };
        let best_bound = if self.hit_limit {
            self.open_bound.max(rank.evacuees)
        } else {
            rank.evacuees
        };
        ExactOutcome {
            plan,
            status,
            best_bound,
            nodes: self.nodes,
        }
    }

    /// Expands the decision tree for vehicle slot `k` (route currently in
    /// `cur_*`, empty on first entry). Returns after exhausting the subtree.
    fn vehicle(&mut self, k: usize) {
        if k == self.owners.len() {
            self.leaf();
            return;
        }
        if !self.enter_node(k) {
            return;
        }

        let origin = self.owners[k];
        let last = self.cur_stops.last().map(|&(h, _)| h).unwrap_or(origin);

        // Candidate stops, nearest first so the leftmost dive already
        // resembles a good plan.
        let mut candidates: Vec<(f64, usize)> = Vec::new();
        for (idx, &h) in self.carless.iter().enumerate() {
            if self.cur_visited & (1 << idx) != 0 {
                continue;
            }
            if self.metric && self.residual[h] == 0 {
                continue; // an empty-handed detour can never win under the triangle inequality
            }
            let arrive = self.cur_clock + self.inst.time(last, h);
            if arrive + self.finish_time[h] > self.inst.t_max + DEADLINE_EPS {
                continue;
            }
            candidates.push((self.inst.time(last, h), idx));
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (_, idx) in candidates {
            let h = self.carless[idx];
            let arrive = self.cur_clock + self.inst.time(last, h);
            let slack = self.inst.t_max + DEADLINE_EPS - arrive - self.finish_time[h];
            let q_time = if self.inst.t_p > 0.0 {
                (slack / self.inst.t_p).floor() as i64
            } else {
                i64::MAX
            };
            let q_max = self.residual[h]
                .min(self.spare[k] - self.cur_picks)
                .min(q_time)
                .max(0);
            for q in quantity_order(q_max, self.metric) {
                let delta_t = self.inst.time(last, h) + self.inst.t_p * q as f64;
                let delta_d = self.inst.distance(last, h);
                self.cur_stops.push((h, q));
                self.cur_clock += delta_t;
                self.cur_picks += q;
                self.cur_dist += delta_d;
                self.cur_visited |= 1 << idx;
                self.residual[h] -= q;
                self.residual_total -= q;

                self.vehicle(k);

                self.residual_total += q;
                self.residual[h] += q;
                self.cur_visited &= !(1 << idx);
                self.cur_dist -= delta_d;
                self.cur_picks -= q;
                self.cur_clock -= delta_t;
                self.cur_stops.pop();
            }
        }

        // Close at the cheapest reachable gathering place (fewest miles,
        // smallest index on a tie) — the same destination the canonical
        // tie-break would select among all reachable ones.
        if let Some(dest) = self.best_destination(last) {
            let stops = std::mem::take(&mut self.cur_stops);
            let (clock, picks, dist, visited) =
                (self.cur_clock, self.cur_picks, self.cur_dist, self.cur_visited);
            let arc_d = self.inst.distance(last, dest);

            self.finished[k] = RouteChoice::Used {
                stops: stops.clone(),
                dest,
            };
            self.committed_evac += self.own[k] + picks;
            self.committed_dist += dist + arc_d;
            self.cur_stops = Vec::new();
            self.cur_clock = 0.0;
            self.cur_picks = 0;
            self.cur_dist = 0.0;
            self.cur_visited = 0;

            self.vehicle(k + 1);

            self.cur_visited = visited;
            self.cur_dist = dist;
            self.cur_picks = picks;
            self.cur_clock = clock;
            self.cur_stops = stops;
            self.committed_dist -= dist + arc_d;
            self.committed_evac -= self.own[k] + picks;
            self.finished[k] = RouteChoice::Pending;
        }

        if self.cur_stops.is_empty() {
            self.finished[k] = RouteChoice::Unused;
            self.vehicle(k + 1);
            self.finished[k] = RouteChoice::Pending;
        }
    }

    /// Books the node, enforces limits, and applies the two pruning rules.
    /// Returns false when the subtree must not be expanded.
    fn enter_node(&mut self, k: usize) -> bool {
        self.nodes += 1;
        if !self.hit_limit {
            if let Some(limit) = self.config.node_limit {
                if self.nodes > limit {
                    self.hit_limit = true;
                }
            }
            if let Some(secs) = self.config.time_limit_secs {
                if self.nodes.is_multiple_of(256) && self.started.elapsed().as_secs_f64() > secs {
                    self.hit_limit = true;
                }
            }
        }
        let bound = self.evac_bound(k);
        if self.hit_limit {
            self.open_bound = self.open_bound.max(bound);
            return false;
        }
        if let Some((inc, _)) = &self.incumbent {
            if bound < inc.evacuees {
                return false;
            }
            if bound == inc.evacuees && self.dist_bound(k, inc.evacuees) > inc.distance + DIST_EPS {
                return false;
            }
        }
        true
    }

    /// Upper bound on evacuees for any completion of the current node.
    fn evac_bound(&self, k: usize) -> i64 {
        let seats = self.current_seat_bound(k) + self.spare_from[k + 1];
        self.committed_evac
            + self.own[k]
            + self.cur_picks
            + self.own_from[k + 1]
            + self.residual_total.min(seats)
    }

    /// Seats the current vehicle can still fill, also capped by the boarding
    /// time left before its cheapest possible closing.
    fn current_seat_bound(&self, k: usize) -> i64 {
        let mut cap = self.spare[k] - self.cur_picks;
        if self.inst.t_p > 0.0 {
            let last = self.cur_stops.last().map(|&(h, _)| h).unwrap_or(self.owners[k]);
            let slack = self.inst.t_max + DEADLINE_EPS - self.cur_clock - self.finish_time[last];
            cap = cap.min(if slack < 0.0 {
                0
            } else {
                (slack / self.inst.t_p).floor() as i64
            });
        }
        cap.max(0)
    }

    /// Lower bound on total distance for completions that still reach
    /// `target` evacuees. Vehicles whose absence would drop the evacuee
    /// bound below the target must drive, so their cheapest closing counts.
    fn dist_bound(&self, k: usize, target: i64) -> f64 {
        let mut lb = self.committed_dist + self.cur_dist;
        let started = !self.cur_stops.is_empty();
        let last = self.cur_stops.last().map(|&(h, _)| h).unwrap_or(self.owners[k]);
        if started {
            lb += self.finish_dist[last];
        } else if self.bound_without(k, k) < target {
            lb += self.finish_dist[self.owners[k]];
        }
        for future in k + 1..self.owners.len() {
            if self.bound_without(k, future) < target {
                lb += self.finish_dist[self.owners[future]];
            }
        }
        lb
    }

    /// Evacuee bound if vehicle `skip` stayed home, evaluated at slot `k`.
    fn bound_without(&self, k: usize, skip: usize) -> i64 {
        let mut seats = self.current_seat_bound(k) + self.spare_from[k + 1];
        let mut owns = self.own[k] + self.cur_picks + self.own_from[k + 1];
        if skip == k {
            seats -= self.current_seat_bound(k);
            owns -= self.own[k] + self.cur_picks;
        } else {
            seats -= self.spare[skip];
            owns -= self.own[skip];
        }
        self.committed_evac + owns + self.residual_total.min(seats)
    }

    fn best_destination(&self, last: usize) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for s in self.inst.gatherings() {
            if self.cur_clock + self.inst.time(last, s) > self.inst.t_max + DEADLINE_EPS {
                continue;
            }
            let d = self.inst.distance(last, s);
            let better = match best {
                None => true,
                Some((bd, bs)) => d < bd || (d == bd && s < bs),
            };
            if better {
                best = Some((d, s));
            }
        }
        best.map(|(_, s)| s)
    }

    fn leaf(&mut self) {
        let mut routes = Vec::with_capacity(self.owners.len());
        for (k, choice) in self.finished.iter().enumerate() {
            match choice {
                RouteChoice::Pending => unreachable!("leaf with undecided vehicle"),
                RouteChoice::Unused => routes.push(plan::unused_route(self.inst, self.owners[k])),
                RouteChoice::Used { stops, dest } => {
                    routes.push(plan::build_route(self.inst, self.owners[k], stops, *dest));
                }
            }
        }
        let evacuated_total = routes.iter().map(|r| plan::route_evacuees(self.inst, r)).sum();
        let candidate = Plan {
            routes,
            evacuated_total,
        };
        let rank = plan::rank_plan(self.inst, &candidate);
        match &self.incumbent {
            Some((best, _)) if !rank.better_than(best) => {}
            _ => self.incumbent = Some((rank, candidate)),
        }
    }
}

/// Branching order for boarding quantities: everyone possible first (the
/// leftmost dive then fills seats), then a single person, then the rest
/// descending, with the empty-handed visit last. Under the triangle
/// inequality the empty-handed visit is skipped entirely.
fn quantity_order(q_max: i64, metric: bool) -> Vec<i64> {
    let mut order = Vec::with_capacity(q_max as usize + 1);
    if q_max > 0 {
        order.push(q_max);
        if q_max > 1 {
            order.push(1);
        }
        for q in (2..q_max).rev() {
            order.push(q);
        }
    }
    if !metric {
        order.push(0);
    }
    order
}

/// Cheapest completion costs per location: minimum time and minimum
/// distance to reach any gathering place, allowed to pass through carless
/// households (the only places a route may stop). Computed independently on
/// each matrix; both are admissible bounds for their dimension.
fn finish_costs(inst: &Instance, carless: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let n = inst.len();
    let mut time = vec![vec![f64::INFINITY; n]; n];
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        for j in 0..n {
            time[i][j] = inst.time(i, j);
            dist[i][j] = inst.distance(i, j);
        }
    }
    for &mid in carless {
        for i in 0..n {
            for j in 0..n {
                if time[i][mid] + time[mid][j] < time[i][j] {
                    time[i][j] = time[i][mid] + time[mid][j];
                }
                if dist[i][mid] + dist[mid][j] < dist[i][j] {
                    dist[i][j] = dist[i][mid] + dist[mid][j];
                }
            }
        }
    }
    let gatherings = inst.gatherings();
    let mut finish_time = vec![f64::INFINITY; n];
    let mut finish_dist = vec![f64::INFINITY; n];
    for i in 0..n {
        for &s in &gatherings {
            finish_time[i] = finish_time[i].min(time[i][s]);
            finish_dist[i] = finish_dist[i].min(dist[i][s]);
        }
    }
    (finish_time, finish_dist)
}

/// True when both matrices satisfy the triangle inequality (up to float
/// noise), which licenses skipping empty-handed detours.
fn is_metric(inst: &Instance) -> bool {
    let n = inst.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if inst.time(a, b) + inst.time(b, c) < inst.time(a, c) - 1e-12 {
                    return false;
                }
                if inst.distance(a, b) + inst.distance(b, c) < inst.distance(a, c) - 1e-12 {
                    return false;
                }
            }
        }
    }
    true
}

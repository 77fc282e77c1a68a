//! Toolkit for planning short-notice ridesharing evacuations.
//!
//! The setting: a neighborhood must reach public-transport gathering places
//! before a hard deadline. Households that own a vehicle drive themselves and
//! may detour to pick up carless households along the way, subject to seat
//! capacity and per-person boarding time. The goal is to evacuate as many
//! people as possible.
//!
//! The crate provides:
//!
//! * [`instance`] — problem data model, JSON parsing/validation, big-M values.
//! * [`plan`] — solution data model, an independent feasibility checker, and
//!   the evacuation-percentage / average-travel-distance metrics.
//! * [`mip`] — construction of the mixed-integer model and LP-file export.
//! * [`oracle`] — exhaustive reference solver for tiny instances.
//! * [`exact`] — branch-and-bound solver producing certified optima.
//! * [`heuristic`] — greedy construction plus local search for larger cases.
//! * [`experiment`] — seeded instance generator, parameter sweeps, CSV/SVG
//!   reports.
//!
//! All solvers resolve ties identically (most evacuees, then least total
//! distance, then lexicographically smallest route encoding), so any two of
//! them can be compared plan-for-plan, not just objective-for-objective.

pub mod exact;
pub mod experiment;
pub mod heuristic;
pub mod instance;
pub mod mip;
pub mod oracle;
pub mod plan;

#[cfg(test)]
pub(crate) mod testkit;

//! Problem data model: locations, travel matrices, deadline parameters.
//!
//! An instance plays three kinds of locations on one directed travel graph:
//! vehicle-owning households (`R`), carless households (`H`), and gathering
//! places (`S`). Travel times are minutes, distances are miles, and both
//! matrices may be asymmetric. If `travel_distance` is omitted it is derived
//! from `travel_time` at 30 miles/hour.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

/// Speed used to derive distances from travel times when the instance does
/// not carry an explicit distance matrix: 30 mph = 0.5 miles per minute.
pub const DEFAULT_SPEED_MILES_PER_MINUTE: f64 = 0.5;

/// Role a location plays in the evacuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationKind {
    /// Household that owns a vehicle and drives itself (set `R`).
    VehicleOwner,
    /// Household without a vehicle, waiting for a pickup (set `H`).
    Carless,
    /// Evacuation gathering place (set `S`).
    Gathering,
}

/// One location: a household or a gathering place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Location {
    pub id: String,
    pub kind: LocationKind,
    /// Number of people waiting here (0 for gathering places).
    pub demand: i64,
    /// Seat capacity of the household vehicle; owners only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<i64>,
    /// Optional planar coordinates in miles, kept for plotting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coord: Option<(f64, f64)>,
}

/// A complete problem instance.
///
/// `travel_time[i][j]` is the driving time in minutes from location `i` to
/// location `j` (indices follow `locations` order). `t_p` is the boarding
/// time per person in minutes and `t_max` the hard deadline in minutes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub name: String,
    pub t_p: f64,
    pub t_max: f64,
    pub locations: Vec<Location>,
    pub travel_time: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub travel_distance: Option<Vec<Vec<f64>>>,
}

/// Big-M constants sized per constraint family rather than one global value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigM {
    /// Bound for load/pickup linking: the largest vehicle capacity.
    pub load: f64,
    /// Bound for clock propagation: deadline + longest arc + time to board a
    /// full vehicle.
    pub time: f64,
}

/// Machine-readable reason an instance is malformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    DuplicateId,
    NoGatheringPlace,
    MissingCapacity,
    UnexpectedCapacity,
    NonPositiveCapacity,
    CapacityBelowDemand,
    NegativeDemand,
    GatheringWithDemand,
    NonSquareMatrix,
    NegativeTravelTime,
    NegativeDistance,
    NonzeroDiagonal,
    NegativeBoardingTime,
    NegativeDeadline,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).expect("code serializes");
        write!(f, "{}", s.trim_matches('"'))
    }
}

/// One validation finding, pointing at the offending location when there is
/// one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(id) => write!(f, "{} at {}: {}", self.code, id, self.detail),
            None => write!(f, "{}: {}", self.code, self.detail),
        }
    }
}

/// Why a JSON document failed to become an [`Instance`].
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    /// The document is not valid JSON or does not match the schema
    /// (wrong types, unknown keys, missing fields).
    #[error("schema error: {0}")]
    Schema(String),
    /// The document parsed but the instance breaks an invariant.
    #[error("invalid instance: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

impl Instance {
    /// Parses and validates an instance document. Unknown JSON keys are
    /// rejected, and any invariant violation fails the parse.
    pub fn from_json(text: &str) -> Result<Instance, ParseError> {
        let inst: Instance =
            serde_json::from_str(text).map_err(|e| ParseError::Schema(e.to_string()))?;
        let violations = inst.validate();
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(ParseError::Invalid(violations))
        }
    }

    /// Serializes the instance back to JSON. `from_json(to_json(i))` yields a
    /// value equal to `i`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    /// Indices of vehicle-owning households, in declaration order.
    pub fn owners(&self) -> Vec<usize> {
        self.kind_indices(LocationKind::VehicleOwner)
    }

    /// Indices of carless households, in declaration order.
    pub fn carless(&self) -> Vec<usize> {
        self.kind_indices(LocationKind::Carless)
    }

    /// Indices of gathering places, in declaration order.
    pub fn gatherings(&self) -> Vec<usize> {
        self.kind_indices(LocationKind::Gathering)
    }

    fn kind_indices(&self, kind: LocationKind) -> Vec<usize> {
        self.locations
            .iter()
            .enumerate()
            .filter(|(_, l)| l.kind == kind)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.locations.iter().position(|l| l.id == id)
    }

    /// Travel time in minutes from location `i` to location `j`.
    pub fn time(&self, i: usize, j: usize) -> f64 {
        self.travel_time[i][j]
    }

    /// Travel distance in miles from `i` to `j`, derived from travel time at
    /// 30 mph when the instance has no explicit distance matrix.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match &self.travel_distance {
            Some(m) => m[i][j],
            None => self.travel_time[i][j] * DEFAULT_SPEED_MILES_PER_MINUTE,
        }
    }

    /// Total number of people asking to be evacuated (households of both
    /// kinds; gathering places hold no demand).
    pub fn total_demand(&self) -> i64 {
        self.locations
            .iter()
            .filter(|l| l.kind != LocationKind::Gathering)
            .map(|l| l.demand)
            .sum()
    }

    /// Seat capacity of the owner at location index `i`.
    pub fn capacity_of(&self, i: usize) -> i64 {
        self.locations[i].capacity.unwrap_or(0)
    }

    /// Checks every structural invariant and returns all findings. An empty
    /// list means the instance is well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.locations.len();

        let mut seen = HashSet::new();
        for loc in &self.locations {
            if !seen.insert(loc.id.as_str()) {
                out.push(Violation {
                    code: ViolationCode::DuplicateId,
                    location: Some(loc.id.clone()),
                    detail: format!("location id {:?} appears more than once", loc.id),
                });
            }
        }

        if !self.locations.iter().any(|l| l.kind == LocationKind::Gathering) {
            out.push(Violation {
                code: ViolationCode::NoGatheringPlace,
                location: None,
                detail: "instance has no gathering place".to_string(),
            });
        }

        for loc in &self.locations {
            if loc.demand < 0 {
                out.push(Violation {
                    code: ViolationCode::NegativeDemand,
                    location: Some(loc.id.clone()),
                    detail: format!("demand {} is negative", loc.demand),
                });
            }
            match loc.kind {
                LocationKind::VehicleOwner => match loc.capacity {
                    None => out.push(Violation {
                        code: ViolationCode::MissingCapacity,
                        location: Some(loc.id.clone()),
                        detail: "vehicle owner has no capacity".to_string(),
                    }),
                    Some(c) if c <= 0 => out.push(Violation {
                        code: ViolationCode::NonPositiveCapacity,
                        location: Some(loc.id.clone()),
                        detail: format!("capacity {c} must be positive"),
                    }),
                    Some(c) if c < loc.demand => out.push(Violation {
                        code: ViolationCode::CapacityBelowDemand,
                        location: Some(loc.id.clone()),
                        detail: format!(
                            "vehicle seats {c} but its own household numbers {}",
                            loc.demand
                        ),
                    }),
                    Some(_) => {}
                },
                LocationKind::Carless | LocationKind::Gathering => {
                    if loc.capacity.is_some() {
                        out.push(Violation {
                            code: ViolationCode::UnexpectedCapacity,
                            location: Some(loc.id.clone()),
                            detail: "only vehicle owners carry a capacity".to_string(),
                        });
                    }
                    if loc.kind == LocationKind::Gathering && loc.demand != 0 {
                        out.push(Violation {
                            code: ViolationCode::GatheringWithDemand,
                            location: Some(loc.id.clone()),
                            detail: format!("gathering place has demand {}", loc.demand),
                        });
                    }
                }
            }
        }

        self.validate_matrix(&self.travel_time, "travel_time", n, false, &mut out);
        if let Some(dist) = &self.travel_distance {
            self.validate_matrix(dist, "travel_distance", n, true, &mut out);
        }

        if self.t_p < 0.0 {
            out.push(Violation {
                code: ViolationCode::NegativeBoardingTime,
                location: None,
                detail: format!("t_p = {} minutes", self.t_p),
            });
        }
        if self.t_max < 0.0 {
            out.push(Violation {
                code: ViolationCode::NegativeDeadline,
                location: None,
                detail: format!("t_max = {} minutes", self.t_max),
            });
        }

        out
    }

    fn validate_matrix(
        &self,
        m: &[Vec<f64>],
        name: &str,
        n: usize,
        is_distance: bool,
        out: &mut Vec<Violation>,
    ) {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            out.push(Violation {
                code: ViolationCode::NonSquareMatrix,
                location: None,
                detail: format!("{name} must be {n}x{n} to match the location list"),
            });
            return;
        }
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 0.0 {
                    out.push(Violation {
                        code: ViolationCode::NonzeroDiagonal,
                        location: Some(self.locations[i].id.clone()),
                        detail: format!("{name}[{i}][{i}] = {v}, diagonal must be 0"),
                    });
                }
                if v < 0.0 {
                    out.push(Violation {
                        code: if is_distance {
                            ViolationCode::NegativeDistance
                        } else {
                            ViolationCode::NegativeTravelTime
                        },
                        location: None,
                        detail: format!("{name}[{i}][{j}] = {v} is negative"),
                    });
                }
            }
        }
    }
}

/// Computes per-family big-M constants for an instance.
///
/// * `load` bounds any vehicle load or pickup quantity, so the largest seat
///   capacity suffices.
/// * `time` bounds any clock difference: deadline plus the longest single arc
///   plus the time to board a full vehicle.
pub fn compute_big_m(inst: &Instance) -> BigM {
    let max_capacity = inst
        .owners()
        .into_iter()
        .map(|i| inst.capacity_of(i))
        .max()
        .unwrap_or(0) as f64;
    let max_arc = inst
        .travel_time
        .iter()
        .flatten()
        .copied()
        .fold(0.0_f64, f64::max);
    BigM {
        load: max_capacity,
        time: inst.t_max + max_arc + inst.t_p * max_capacity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{arb_instance, t1};
    use proptest::prelude::*;

    #[test]
    fn parses_and_roundtrips_t1() {
        let inst = t1();
        let text = inst.to_json();
        let back = Instance::from_json(&text).expect("fixture parses");
        assert_eq!(back, inst);
        assert_eq!(back.owners(), vec![0]);
        assert_eq!(back.carless(), vec![1]);
        assert_eq!(back.gatherings(), vec![2]);
        assert_eq!(back.total_demand(), 6);
    }

    #[test]
    fn rejects_unknown_keys() {
        let mut doc: serde_json::Value = serde_json::from_str(&t1().to_json()).unwrap();
        doc.as_object_mut()
            .unwrap()
            .insert("surprise".to_string(), serde_json::json!(1));
        let err = Instance::from_json(&doc.to_string()).unwrap_err();
        assert!(matches!(err, ParseError::Schema(_)), "got {err:?}");
    }

    #[test]
    fn derives_distance_at_thirty_mph() {
        let inst = t1();
        assert_eq!(inst.distance(0, 1), 1.0);
        assert_eq!(inst.distance(1, 2), 1.0);
        assert_eq!(inst.distance(0, 2), 1.5);
    }

    #[test]
    fn explicit_distance_matrix_wins() {
        let mut inst = t1();
        inst.travel_distance = Some(vec![
            vec![0.0, 9.0, 9.0],
            vec![9.0, 0.0, 9.0],
            vec![9.0, 9.0, 0.0],
        ]);
        assert!(inst.validate().is_empty());
        assert_eq!(inst.distance(0, 1), 9.0);
    }

    #[test]
    fn owner_smaller_than_its_household_is_invalid() {
        let mut inst = t1();
        inst.locations[0].capacity = Some(2);
        let err = Instance::from_json(&inst.to_json()).unwrap_err();
        match err {
            ParseError::Invalid(vs) => {
                assert!(vs.iter().any(|v| v.code == ViolationCode::CapacityBelowDemand));
                assert_eq!(vs[0].location.as_deref(), Some("r1"));
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    type Corruption = (Box<dyn Fn(&mut Instance)>, ViolationCode);

    #[test]
    fn single_field_corruptions_are_all_caught() {
        // Every corruption below breaks exactly one documented invariant and
        // must surface the matching code.
        let cases: Vec<Corruption> = vec![
            (
                Box::new(|i: &mut Instance| i.locations[1].id = "r1".to_string()),
                ViolationCode::DuplicateId,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[2].kind = LocationKind::Carless),
                ViolationCode::NoGatheringPlace,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[0].capacity = None),
                ViolationCode::MissingCapacity,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[1].capacity = Some(4)),
                ViolationCode::UnexpectedCapacity,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[0].capacity = Some(0)),
                ViolationCode::NonPositiveCapacity,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[0].demand = 9),
                ViolationCode::CapacityBelowDemand,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[1].demand = -1),
                ViolationCode::NegativeDemand,
            ),
            (
                Box::new(|i: &mut Instance| i.locations[2].demand = 2),
                ViolationCode::GatheringWithDemand,
            ),
            (
                Box::new(|i: &mut Instance| {
                    i.travel_time[1].pop();
                }),
                ViolationCode::NonSquareMatrix,
            ),
            (
                Box::new(|i: &mut Instance| i.travel_time[0][1] = -2.0),
                ViolationCode::NegativeTravelTime,
            ),
            (
                Box::new(|i: &mut Instance| i.travel_time[1][1] = 5.0),
                ViolationCode::NonzeroDiagonal,
            ),
            (
                Box::new(|i: &mut Instance| i.t_p = -1.0),
                ViolationCode::NegativeBoardingTime,
            ),
            (
                Box::new(|i: &mut Instance| i.t_max = -1.0),
                ViolationCode::NegativeDeadline,
            ),
        ];
        for (idx, (corrupt, expected)) in cases.iter().enumerate() {
            let mut inst = t1();
            corrupt(&mut inst);
            let violations = inst.validate();
            assert!(
                violations.iter().any(|v| v.code == *expected),
                "case {idx}: expected {expected:?} in {violations:?}"
            );
        }
        assert!(t1().validate().is_empty(), "uncorrupted fixture must be clean");
    }

    #[test]
    fn big_m_values_for_t1() {
        let m = compute_big_m(&t1());
        assert_eq!(m.load, 7.0);
        assert_eq!(m.time, 18.0); // 8 + 3 + 1 * 7
    }

    #[test]
    fn big_m_degenerate_zero_instance() {
        let mut inst = t1();
        inst.t_p = 0.0;
        inst.t_max = 0.0;
        inst.travel_time = vec![vec![0.0; 3]; 3];
        inst.locations[0].capacity = Some(1);
        inst.locations[0].demand = 1;
        let m = compute_big_m(&inst);
        assert_eq!(m.load, 1.0);
        assert_eq!(m.time, 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parse_serialize_is_identity(inst in arb_instance()) {
            prop_assert!(inst.validate().is_empty(), "generator must emit valid instances");
            let back = Instance::from_json(&inst.to_json()).expect("round-trip parses");
            prop_assert_eq!(back, inst);
        }

        #[test]
        fn big_m_is_monotone_in_inputs(inst in arb_instance(), bump in 0.5f64..10.0) {
            let base = compute_big_m(&inst);
            let mut grown = inst.clone();
            grown.t_max += bump;
            grown.travel_time[0].iter_mut().for_each(|v| *v += bump);
            if let Some(d) = grown.travel_distance.as_mut() {
                d[0].iter_mut().for_each(|v| *v += bump);
            }
            let m = compute_big_m(&grown);
            prop_assert!(m.load >= base.load);
            prop_assert!(m.time >= base.time);
        }
    }
}

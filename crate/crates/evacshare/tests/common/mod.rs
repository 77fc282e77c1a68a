//! Fixtures shared by the integration suites.
#![allow(dead_code)]

use evacshare::instance::{Instance, Location, LocationKind};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

/// Reference three-location scenario: one vehicle-owning household (3
/// people, 7 seats), one carless household (3 people), one gathering place;
/// boarding 1 min/person, deadline 8 min, distances = times × 0.5 mi/min.
pub fn t1() -> Instance {
    Instance::from_json(&t1_document()).expect("reference fixture is valid")
}

/// The same scenario as a JSON document, for CLI-level tests.
pub fn t1_document() -> String {
    serde_json::json!({
        "name": "t1",
        "t_p": 1.0,
        "t_max": 8.0,
        "locations": [
            {"id": "r1", "kind": "vehicle_owner", "demand": 3, "capacity": 7},
            {"id": "h1", "kind": "carless", "demand": 3},
            {"id": "s1", "kind": "gathering", "demand": 0}
        ],
        "travel_time": [[0.0, 2.0, 3.0], [2.0, 0.0, 2.0], [3.0, 2.0, 0.0]]
    })
    .to_string()
}

/// Seeded random micro-instance: 1..=max_r owners, 0..=max_h carless
/// households, 1..=max_s gathering places, demands 1..=3, capacities 5 or
/// 7, integer travel times in 1..=9 minutes. Half the deadlines hug the
/// direct-trip scale (binding), half leave room for multi-stop tours.
pub fn random_micro_instance(seed: u64, max_r: usize, max_h: usize, max_s: usize) -> Instance {
    let mut rng = SmallRng::seed_from_u64(seed);
    let nr = rng.random_range(1..=max_r);
    let nh = rng.random_range(0..=max_h);
    let ns = rng.random_range(1..=max_s);
    let n = nr + nh + ns;

    let mut travel_time = vec![vec![0.0; n]; n];
    for (i, row) in travel_time.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                *cell = rng.random_range(1..=9) as f64;
            }
        }
    }

    let mut locations = Vec::new();
    for k in 0..nr {
        locations.push(Location {
            id: format!("r{}", k + 1),
            kind: LocationKind::VehicleOwner,
            demand: rng.random_range(1..=3),
            capacity: Some(if rng.random_bool(0.5) { 5 } else { 7 }),
            coord: None,
        });
    }
    for k in 0..nh {
        locations.push(Location {
            id: format!("h{}", k + 1),
            kind: LocationKind::Carless,
            demand: rng.random_range(1..=3),
            capacity: None,
            coord: None,
        });
    }
    for k in 0..ns {
        locations.push(Location {
            id: format!("s{}", k + 1),
            kind: LocationKind::Gathering,
            demand: 0,
            capacity: None,
            coord: None,
        });
    }

    let t_max = if rng.random_bool(0.5) {
        rng.random_range(4..=12) as f64
    } else {
        rng.random_range(18..=40) as f64
    };

    let inst = Instance {
        name: format!("micro{seed}"),
        t_p: 1.0,
        t_max,
        locations,
        travel_time,
        travel_distance: None,
    };
    assert!(inst.validate().is_empty());
    inst
}

//! Shared fixtures for the crate's unit tests.

use crate::instance::{Instance, Location, LocationKind};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

/// Canonical three-location fixture used across the crate's tests: one owner
/// (3 people, 7 seats), one carless household (3 people), one gathering
/// place, boarding 1 min/person, deadline 8 min. Distances derive from times
/// at 0.5 miles/minute.
pub(crate) fn t1() -> Instance {
    Instance {
        name: "t1".to_string(),
        t_p: 1.0,
        t_max: 8.0,
        locations: vec![
            Location {
                id: "r1".to_string(),
                kind: LocationKind::VehicleOwner,
                demand: 3,
                capacity: Some(7),
                coord: None,
            },
            Location {
                id: "h1".to_string(),
                kind: LocationKind::Carless,
                demand: 3,
                capacity: None,
                coord: None,
            },
            Location {
                id: "s1".to_string(),
                kind: LocationKind::Gathering,
                demand: 0,
                capacity: None,
                coord: None,
            },
        ],
        travel_time: vec![
            vec![0.0, 2.0, 3.0],
            vec![2.0, 0.0, 2.0],
            vec![3.0, 2.0, 0.0],
        ],
        travel_distance: None,
    }
}

/// Strategy for structurally valid instances with small, varied shapes.
pub(crate) fn arb_instance() -> impl Strategy<Value = Instance> {
    (1usize..=3, 0usize..=3, 1usize..=2).prop_flat_map(|(nr, nh, ns)| {
        let n = nr + nh + ns;
        let times = proptest::collection::vec(proptest::collection::vec(0.0f64..30.0, n), n);
        let demands = proptest::collection::vec(0i64..=3, nr + nh);
        let caps = proptest::collection::vec(3i64..=8, nr);
        (times, demands, caps, proptest::bool::ANY).prop_map(
            move |(mut times, demands, caps, with_dist)| {
                for (i, row) in times.iter_mut().enumerate() {
                    row[i] = 0.0;
                }
                let mut locations = Vec::new();
                for k in 0..nr {
                    locations.push(Location {
                        id: format!("r{}", k + 1),
                        kind: LocationKind::VehicleOwner,
                        demand: demands[k].min(caps[k]),
                        capacity: Some(caps[k]),
                        coord: None,
                    });
                }
                for k in 0..nh {
                    locations.push(Location {
                        id: format!("h{}", k + 1),
                        kind: LocationKind::Carless,
                        demand: demands[nr + k],
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
                let travel_distance = if with_dist {
                    Some(times.iter().map(|r| r.iter().map(|v| v * 0.4).collect()).collect())
                } else {
                    None
                };
                Instance {
                    name: "prop".to_string(),
                    t_p: 1.0,
                    t_max: 20.0,
                    locations,
                    travel_time: times,
                    travel_distance,
                }
            },
        )
    })
}

/// Seeded random micro-instance for solver cross-checks: up to `max_r`
/// owners, `max_h` carless households, `max_s` gathering places; integer-ish
/// travel times; deadlines drawn so a fair share of instances are binding.
pub(crate) fn random_micro_instance(
    seed: u64,
    max_r: usize,
    max_h: usize,
    max_s: usize,
) -> Instance {
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

    // Half the draws sit near the shortest direct trip (binding deadline),
    // the other half leave room for multi-stop tours.
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
    debug_assert!(inst.validate().is_empty());
    inst
}

//! Networks and games shared across module test suites.

use crate::game::{CharacteristicFunction, Coalition};
use crate::net::{build_network, FlowSession, Network, NetworkSpec, Node, Params};

/// Two providers with interleaved chains along the x axis: each session
/// needs 3 hops alone but only 2 with the other provider's relays, so
/// cooperation lifts the per-Kbps margin from 7 to 8.
///
/// Values: v({1}) = 231, v({2}) = 385, v({1,2}) = 704.
pub(crate) fn interleaved() -> Network {
    let mut nodes = Vec::new();
    for (i, x) in [0.0, 100.0, 200.0, 300.0].iter().enumerate() {
        nodes.push(Node { id: i as u32 + 1, owner: 1, x: *x, y: 0.0 });
    }
    for (i, x) in [50.0, 150.0, 250.0, 350.0].iter().enumerate() {
        nodes.push(Node { id: i as u32 + 5, owner: 2, x: *x, y: 0.0 });
    }
    let spec = NetworkSpec {
        params: Params::default(),
        nodes,
        sessions: vec![
            FlowSession { id: "s1".into(), owner: 1, source: 1, destination: 4, rate_req_kbps: 33.0 },
            FlowSession { id: "s2".into(), owner: 2, source: 5, destination: 8, rate_req_kbps: 55.0 },
        ],
        capacity_overrides: vec![],
    };
    build_network(spec).unwrap()
}

/// Three-provider game used as a cross-module regression anchor:
/// standalone (767, 1101, 976), pairs (1901, 1835, 2207), grand 3062.
pub(crate) fn reference_game() -> CharacteristicFunction {
    let c = Coalition::from_members;
    CharacteristicFunction::from_values(
        3,
        &[
            (c(&[1]), 767.0),
            (c(&[2]), 1101.0),
            (c(&[3]), 976.0),
            (c(&[1, 2]), 1901.0),
            (c(&[1, 3]), 1835.0),
            (c(&[2, 3]), 2207.0),
            (c(&[1, 2, 3]), 3062.0),
        ],
    )
    .unwrap()
}

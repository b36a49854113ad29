//! The two demand regimes. Elastic mode lets the optimizer choose any
//! served rate up to the request; strict mode pins each session to the
//! rate it could reach with the whole coalition network to itself, and
//! reports infeasibility when those pinned rates cannot coexist.

use meshgame::net::{build_network, CapacityOverride, FlowSession, Node, NetworkSpec};
use meshgame::{characteristic_function, generate_random, Coalition, DemandMode, Error, Params};

fn main() -> meshgame::Result<()> {
    // On a comfortably provisioned deployment the two modes agree: every
    // session can be served in full either way.
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let elastic = characteristic_function(&net, DemandMode::Elastic)?;
    let strict = characteristic_function(&net, DemandMode::Strict)?;
    println!("generated deployment, grand coalition:");
    println!("  elastic {:.4}", elastic.value(elastic.grand()));
    println!("  strict  {:.4}", strict.value(strict.grand()));

    // Two sessions share one squeezed relay link. Alone, either could
    // push 40 Kbps, so strict mode pins both at their full 30 Kbps
    // request; together that needs 60 Kbps through a 40 Kbps link.
    let spec = NetworkSpec {
        params: Params::default(),
        nodes: vec![
            Node { id: 1, owner: 1, x: 0.0, y: 0.0 },
            Node { id: 2, owner: 1, x: 100.0, y: 0.0 },
            Node { id: 3, owner: 1, x: 200.0, y: 0.0 },
        ],
        sessions: vec![
            FlowSession { id: "a".into(), owner: 1, source: 1, destination: 3, rate_req_kbps: 30.0 },
            FlowSession { id: "b".into(), owner: 1, source: 1, destination: 3, rate_req_kbps: 30.0 },
        ],
        capacity_overrides: vec![
            CapacityOverride { from: 1, to: 2, capacity_kbps: 40.0 },
            CapacityOverride { from: 2, to: 3, capacity_kbps: 40.0 },
        ],
    };
    let tight = build_network(spec)?;
    let coalition = Coalition::singleton(1);

    let elastic = meshgame::game::coalition_value(&tight, coalition, DemandMode::Elastic)?;
    println!("\nsqueezed link, elastic: value {:.4}, served rates:", elastic.value);
    for (sid, rate) in &elastic.routing.served {
        println!("  {sid}: {rate:.4} Kbps");
    }

    match meshgame::game::coalition_value(&tight, coalition, DemandMode::Strict) {
        Err(Error::StrictInfeasible { coalition, sessions }) => {
            println!("squeezed link, strict: coalition {coalition} infeasible, blocked by {sessions:?}");
        }
        other => println!("unexpected outcome: {other:?}"),
    }
    Ok(())
}

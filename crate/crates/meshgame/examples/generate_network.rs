//! Generates a seeded random deployment, builds it, and shows the JSON
//! schema the file-based commands consume.

use meshgame::format::network_to_string;
use meshgame::net::{build_network, generate_random, Params};

fn main() -> meshgame::Result<()> {
    // Three providers, twenty nodes and three sessions each, on the
    // default 600 m x 600 m area. The same seed always yields the same
    // deployment.
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    println!(
        "{} nodes, {} sessions, {} directed links",
        net.nodes().len(),
        net.sessions().len(),
        net.links().len()
    );
    for s in net.sessions() {
        println!(
            "  {:5} SP{}  {:2} -> {:2}  {:7.3} Kbps",
            s.id, s.owner, s.source, s.destination, s.rate_req_kbps
        );
    }

    // A small instance keeps the schema readable; every field of "params"
    // is optional in hand-written files.
    let small = generate_random(1, 3, 1, Params::default(), 7)?;
    println!("\n{}", network_to_string(&small));
    Ok(())
}

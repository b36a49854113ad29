//! Compares both allocation rules across every way the providers could
//! organize, from everyone alone to the grand coalition.

use meshgame::net::build_network;
use meshgame::table::structure_matrix_table;
use meshgame::{
    characteristic_function, generate_random, structure_table, DemandMode, Params,
};

fn main() -> meshgame::Result<()> {
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let cf = characteristic_function(&net, DemandMode::Elastic)?;

    let matrix = structure_table(&net, &cf)?;
    print!("{}", structure_matrix_table(&matrix));

    let grand = matrix.grand_row();
    let best = matrix
        .rows
        .iter()
        .all(|row| row.total <= grand.total + 1e-9);
    println!(
        "\ngrand coalition aggregates the most payoff: {}",
        if best { "yes" } else { "no" }
    );
    Ok(())
}

//! Evaluates every provider coalition of one deployment and checks the
//! game's shape: cooperation should never hurt.

use meshgame::game::{check_monotone, check_superadditive};
use meshgame::net::build_network;
use meshgame::table::cf_table;
use meshgame::{characteristic_function, generate_random, DemandMode, Params};

fn main() -> meshgame::Result<()> {
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let cf = characteristic_function(&net, DemandMode::Elastic)?;

    print!("{}", cf_table(&cf));

    let gain = cf.value(cf.grand()) - (1..=3).map(|m| cf.standalone(m)).sum::<f64>();
    println!("\ncooperation gain over going alone: {gain:.4}");
    println!(
        "superadditivity violations: {}",
        check_superadditive(&cf).len()
    );
    println!("monotonicity violations: {}", check_monotone(&cf).len());
    Ok(())
}

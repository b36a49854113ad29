//! Tests payoff vectors for stability: a vector is in the core when no
//! coalition could do better by leaving and routing on its own.

use meshgame::net::build_network;
use meshgame::table::core_report_text;
use meshgame::{
    characteristic_function, dual_payoff, generate_random, in_core, shapley, DemandMode, Params,
};

fn main() -> meshgame::Result<()> {
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let cf = characteristic_function(&net, DemandMode::Elastic)?;

    let mu = dual_payoff(&net, &cf)?;
    println!("dual payoff:");
    print!("{}", core_report_text(&in_core(&cf, &mu.payoffs)));

    let phi = shapley(&cf)?;
    println!("\nshapley value:");
    print!("{}", core_report_text(&in_core(&cf, &phi.payoffs)));

    // Hand provider 1 everything above the others' standalone worth: still
    // efficient, but intermediate coalitions are starved.
    let grand = cf.value(cf.grand());
    let greedy = [
        grand - cf.standalone(2) - cf.standalone(3),
        cf.standalone(2),
        cf.standalone(3),
    ];
    println!("\neverything-to-SP1:");
    print!("{}", core_report_text(&in_core(&cf, &greedy)));
    Ok(())
}

//! Splits the grand coalition's worth by averaged marginal contributions,
//! and shows the marginal contributions behind one provider's share.

use meshgame::allocation::marginal_contribution;
use meshgame::net::build_network;
use meshgame::table::allocation_table;
use meshgame::{
    characteristic_function, generate_random, shapley, Coalition, DemandMode, Params,
};

fn main() -> meshgame::Result<()> {
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let cf = characteristic_function(&net, DemandMode::Elastic)?;

    let phi = shapley(&cf)?;
    print!("{}", allocation_table(&phi));
    println!(
        "\nefficient: pays out v(grand) = {:.4} exactly",
        cf.value(cf.grand())
    );

    println!("\nprovider 1 joining each coalition adds:");
    for others in [
        Coalition::empty(),
        Coalition::singleton(2),
        Coalition::singleton(3),
        Coalition::from_members(&[2, 3]),
    ] {
        println!(
            "  {:7} + 1 -> {:9.4}",
            others.to_string(),
            marginal_contribution(&cf, 1, others)?
        );
    }
    Ok(())
}

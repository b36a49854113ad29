//! Draws the three-provider imputation triangle with the unstable region
//! shaded and both allocations marked, then writes it as an SVG file.

use meshgame::net::build_network;
use meshgame::plot::{core_upper_bounds, render_barycentric, BarycentricPoint};
use meshgame::{
    characteristic_function, dual_payoff, generate_random, shapley, DemandMode, Params,
};

fn main() -> meshgame::Result<()> {
    let spec = generate_random(3, 20, 3, Params::default(), 42)?;
    let net = build_network(spec)?;
    let cf = characteristic_function(&net, DemandMode::Elastic)?;

    let points = vec![
        BarycentricPoint::from_payoffs(&cf, "dual", &dual_payoff(&net, &cf)?.payoffs)?,
        BarycentricPoint::from_payoffs(&cf, "shapley", &shapley(&cf)?.payoffs)?,
    ];
    for p in &points {
        println!(
            "{:8} simplex coordinates ({:.4}, {:.4}, {:.4})",
            p.label, p.lambda[0], p.lambda[1], p.lambda[2]
        );
    }
    let bounds = core_upper_bounds(&cf)?;
    println!(
        "core ceilings        ({:.4}, {:.4}, {:.4})",
        bounds[0], bounds[1], bounds[2]
    );

    let svg = render_barycentric(&cf, &points)?;
    std::fs::write("core_plot.svg", &svg).expect("writable working directory");
    println!("wrote core_plot.svg ({} bytes)", svg.len());
    Ok(())
}

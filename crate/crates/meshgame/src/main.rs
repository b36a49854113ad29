use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use meshgame::allocation::{dual_payoff, in_core, shapley};
use meshgame::format::{parse_network, write_network};
use meshgame::game::{
    characteristic_function, coalition_value, payoff_breakdown, DemandMode,
};
use meshgame::net::{generate_random, Coalition, Network, Params, ProviderId};
use meshgame::partition::structure_table;
use meshgame::plot::{render_barycentric, BarycentricPoint};
use meshgame::table;
use meshgame::{Error, Result};

#[derive(Parser)]
#[command(
    name = "meshgame",
    version,
    about = "Coalition analysis for multi-provider wireless mesh networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Elastic,
    Strict,
}

impl From<ModeArg> for DemandMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Elastic => DemandMode::Elastic,
            ModeArg::Strict => DemandMode::Strict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dual,
    Shapley,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a randomly generated network description
    Gen {
        /// Number of service providers
        #[arg(long, default_value_t = 3)]
        sps: u32,
        /// Nodes per provider
        #[arg(long, default_value_t = 20)]
        nodes: u32,
        /// Flow sessions per provider
        #[arg(long, default_value_t = 3)]
        sessions: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Serving price per Kbps (default 10)
        #[arg(long)]
        price: Option<f64>,
        /// Forwarding cost per Kbps per hop (default 1)
        #[arg(long)]
        cost: Option<f64>,
        /// Side of the square deployment area in meters (default 600)
        #[arg(long)]
        area: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Coalition values: the whole game, or one coalition
    Value {
        file: PathBuf,
        /// Providers forming the coalition, e.g. 1,2
        #[arg(long)]
        coalition: Option<String>,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
        #[arg(long)]
        csv: bool,
    },
    /// Divide the grand coalition's worth among the providers
    Allocate {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
        #[arg(long)]
        csv: bool,
    },
    /// Test a payoff vector for core membership
    Core {
        file: PathBuf,
        /// Payoffs per provider, e.g. 855,1149,1058
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
        /// Emit the blocking coalitions as CSV instead of the report
        #[arg(long)]
        csv: bool,
    },
    /// Payoff matrix over every coalition structure
    Structures {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
        #[arg(long)]
        csv: bool,
    },
    /// Render the imputation simplex with both allocations marked
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
    },
    /// Revenue, forwarding cost and net payoff per provider at the
    /// grand-coalition optimum
    Breakdown {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "elastic")]
        mode: ModeArg,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_coalition(s: &str, net: &Network) -> Result<Coalition> {
    let mut members: Vec<ProviderId> = Vec::new();
    for part in s.split(',') {
        let m: ProviderId = part.trim().parse().map_err(|_| {
            Error::InvalidCoalition(format!("{part:?} is not a provider id"))
        })?;
        if m == 0 || m > net.providers() {
            return Err(Error::InvalidCoalition(format!(
                "provider {m} is outside 1..={}",
                net.providers()
            )));
        }
        members.push(m);
    }
    if members.is_empty() {
        return Err(Error::InvalidCoalition("empty coalition".into()));
    }
    Ok(Coalition::from_members(&members))
}

fn parse_payoffs(s: &str, net: &Network) -> Result<Vec<f64>> {
    let payoffs: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidAllocation(format!("{p:?} is not a number")))
        })
        .collect::<Result<_>>()?;
    if payoffs.len() != net.providers() as usize {
        return Err(Error::InvalidAllocation(format!(
            "expected {} payoffs, got {}",
            net.providers(),
            payoffs.len()
        )));
    }
    Ok(payoffs)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen {
            sps,
            nodes,
            sessions,
            seed,
            price,
            cost,
            area,
            output,
        } => {
            let mut params = Params::default();
            if let Some(p) = price {
                params.price_per_rate = p;
            }
            if let Some(c) = cost {
                params.cost_per_rate = c;
            }
            if let Some(a) = area {
                params.area_side_m = a;
            }
            let spec = generate_random(sps, nodes, sessions, params, seed)?;
            write_network(&output, &spec)?;
            eprintln!("wrote {}", output.display());
        }
        Cmd::Value {
            file,
            coalition,
            mode,
            csv,
        } => {
            let net = parse_network(&file)?;
            match coalition {
                Some(s) => {
                    let c = parse_coalition(&s, &net)?;
                    let sol = coalition_value(&net, c, mode.into())?;
                    println!("{}", table::fmt4(sol.value));
                }
                None => {
                    let cf = characteristic_function(&net, mode.into())?;
                    let out = if csv {
                        table::cf_csv(&cf)
                    } else {
                        table::cf_table(&cf)
                    };
                    print!("{out}");
                }
            }
        }
        Cmd::Allocate {
            file,
            method,
            mode,
            csv,
        } => {
            let net = parse_network(&file)?;
            let cf = characteristic_function(&net, mode.into())?;
            let allocation = match method {
                MethodArg::Dual => dual_payoff(&net, &cf)?,
                MethodArg::Shapley => shapley(&cf)?,
            };
            let out = if csv {
                table::allocation_csv(&allocation)
            } else {
                table::allocation_table(&allocation)
            };
            print!("{out}");
        }
        Cmd::Core { file, x, mode, csv } => {
            let net = parse_network(&file)?;
            let payoffs = parse_payoffs(&x, &net)?;
            let cf = characteristic_function(&net, mode.into())?;
            let report = in_core(&cf, &payoffs);
            let out = if csv {
                table::core_violations_csv(&report)
            } else {
                table::core_report_text(&report)
            };
            print!("{out}");
            // The exit status carries the verdict, grep-style.
            if !report.in_core {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Structures { file, mode, csv } => {
            let net = parse_network(&file)?;
            let cf = characteristic_function(&net, mode.into())?;
            let matrix = structure_table(&net, &cf)?;
            let out = if csv {
                table::structure_matrix_csv(&matrix)
            } else {
                table::structure_matrix_table(&matrix)
            };
            print!("{out}");
        }
        Cmd::Plot { file, output, mode } => {
            let net = parse_network(&file)?;
            let cf = characteristic_function(&net, mode.into())?;
            let points = vec![
                BarycentricPoint::from_payoffs(&cf, "dual", &dual_payoff(&net, &cf)?.payoffs)?,
                BarycentricPoint::from_payoffs(&cf, "shapley", &shapley(&cf)?.payoffs)?,
            ];
            let svg = render_barycentric(&cf, &points)?;
            std::fs::write(&output, svg).map_err(|source| Error::Io {
                path: output.display().to_string(),
                source,
            })?;
            eprintln!("wrote {}", output.display());
        }
        Cmd::Breakdown { file, mode, csv } => {
            let net = parse_network(&file)?;
            let grand = Coalition::grand(net.providers());
            let sol = coalition_value(&net, grand, mode.into())?;
            let breakdown = payoff_breakdown(&net, &sol.routing)?;
            let out = if csv {
                table::breakdown_csv(&breakdown)
            } else {
                table::breakdown_table(&breakdown)
            };
            print!("{out}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

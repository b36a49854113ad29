//! Cooperative payoff analysis for multi-provider wireless mesh networks.
//!
//! Providers own mesh nodes and flow sessions; a coalition of providers
//! pools its nodes and routes jointly. The best payoff a coalition can
//! reach — serving revenue minus forwarding cost — is the optimum of a
//! multi-commodity flow program, so the providers play a linear
//! programming game. This crate evaluates every coalition, divides the
//! grand coalition's worth by shadow prices or by Shapley value, tests
//! core stability, compares all coalition structures, and renders the
//! three-provider imputation simplex.
//!
//! Start from [`net::generate_random`] or [`format::parse_network`] to
//! obtain a [`Network`], then [`game::characteristic_function`] for the
//! game itself; the `examples/` directory walks through each step.

pub mod allocation;
pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod format;
pub mod game;
pub mod lp;
pub mod net;
pub mod partition;
pub mod plot;
pub mod table;

pub use allocation::{
    dual_payoff, in_core, is_imputation, shapley, Allocation, AllocationMethod, CoreReport,
};
pub use error::{Error, Result};
pub use game::{characteristic_function, CharacteristicFunction, DemandMode};
pub use net::{build_network, generate_random, Coalition, Network, NetworkSpec, Params};
pub use partition::{enumerate_partitions, structure_table, CoalitionStructure, PayoffMatrix};

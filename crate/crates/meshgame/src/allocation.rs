//! Dividing the grand coalition's worth among providers: marginal
//! contributions, the Shapley value, the dual-price payoff read from the
//! routing program's shadow prices, and imputation / core membership tests.

use crate::error::{Error, Result};
use crate::game::{CharacteristicFunction, Coalition, DemandMode};
use crate::lp::hybrid_tol;
use crate::net::{Network, ProviderId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AllocationMethod {
    DualPayoff,
    Shapley,
}

impl AllocationMethod {
    pub fn label(self) -> &'static str {
        match self {
            AllocationMethod::DualPayoff => "dual",
            AllocationMethod::Shapley => "shapley",
        }
    }
}

/// A full division of the grand coalition's worth; `payoffs[i]` belongs to
/// provider `i + 1`.
#[derive(Clone, Debug)]
pub struct Allocation {
    pub method: AllocationMethod,
    pub payoffs: Vec<f64>,
}

impl Allocation {
    pub fn total(&self) -> f64 {
        self.payoffs.iter().sum()
    }

    pub fn payoff(&self, m: ProviderId) -> f64 {
        self.payoffs[m as usize - 1]
    }
}

/// How much `m` adds on arrival: `v(S + m) - v(S)`. `S` must not already
/// contain `m`.
pub fn marginal_contribution(
    cf: &CharacteristicFunction,
    m: ProviderId,
    s: Coalition,
) -> Result<f64> {
    let grand = cf.grand();
    if !grand.contains(m) {
        return Err(Error::InvalidCoalition(format!(
            "provider {m} is not part of the {}-provider game",
            cf.providers()
        )));
    }
    if s.contains(m) {
        return Err(Error::InvalidCoalition(format!(
            "coalition {s} already contains provider {m}"
        )));
    }
    if !s.is_subset_of(grand) {
        return Err(Error::InvalidCoalition(format!(
            "coalition {s} is not a subset of the {}-provider game",
            cf.providers()
        )));
    }
    Ok(cf.value(s.with(m)) - cf.value(s))
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Shapley payoffs inside `block`, ordered by member id: each member's
/// arrival-order-averaged marginal contribution, using only coalitions
/// within the block.
pub fn shapley_within(
    cf: &CharacteristicFunction,
    block: Coalition,
) -> Result<Vec<(ProviderId, f64)>> {
    if block.is_empty() || !block.is_subset_of(cf.grand()) {
        return Err(Error::InvalidCoalition(format!(
            "block {block} is not a nonempty subset of the {}-provider game",
            cf.providers()
        )));
    }
    let b = block.size();
    let denom = factorial(b) as f64;
    let mut out = Vec::with_capacity(b as usize);
    for m in block.members() {
        let rest = block.without(m).mask();
        let mut phi = 0.0;
        let mut t = rest;
        loop {
            let s = Coalition::from_mask(t);
            let weight = (factorial(s.size()) * factorial(b - s.size() - 1)) as f64;
            phi += weight * (cf.value(s.with(m)) - cf.value(s));
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        out.push((m, phi / denom));
    }
    Ok(out)
}

/// The Shapley value of the whole game.
pub fn shapley(cf: &CharacteristicFunction) -> Result<Allocation> {
    let payoffs = shapley_within(cf, cf.grand())?
        .into_iter()
        .map(|(_, phi)| phi)
        .collect();
    Ok(Allocation {
        method: AllocationMethod::Shapley,
        payoffs,
    })
}

/// Dual-price payoff of `block`'s members at `block`'s own optimum: each
/// provider earns its links' capacities at the capacity shadow prices plus
/// its sessions' demands at the demand shadow prices (elastic), or the
/// source prices plus serving price times the fixed served rates (strict).
pub fn dual_payoff_within(
    network: &Network,
    cf: &CharacteristicFunction,
    block: Coalition,
) -> Result<Vec<(ProviderId, f64)>> {
    let sol = cf.solution(block).ok_or_else(|| {
        Error::InvalidAllocation(format!(
            "no stored routing solution for coalition {block}; dual payoffs need a game computed from a network"
        ))
    })?;
    let mut payoff: std::collections::BTreeMap<ProviderId, f64> =
        block.members().map(|m| (m, 0.0)).collect();

    for (&(from, to), &price) in &sol.duals.capacity {
        if price == 0.0 {
            continue;
        }
        let k = network.link_between(from, to).ok_or_else(|| {
            Error::InvalidRouting(format!("priced link {from}->{to} is not in the network"))
        })?;
        let owner = network.owner_of(from).unwrap();
        *payoff.get_mut(&owner).ok_or_else(|| {
            Error::InvalidRouting(format!("link owner {owner} is outside coalition {block}"))
        })? += price * network.links()[k].capacity_kbps;
    }

    let session_owner = |sid: &str| -> Result<ProviderId> {
        network
            .sessions()
            .iter()
            .find(|s| s.id == sid)
            .map(|s| s.owner)
            .ok_or_else(|| Error::InvalidRouting(format!("priced session {sid:?} is not in the network")))
    };
    match sol.mode {
        DemandMode::Elastic => {
            for (sid, &delta) in &sol.duals.demand {
                let owner = session_owner(sid)?;
                let rate = network
                    .sessions()
                    .iter()
                    .find(|s| &s.id == sid)
                    .unwrap()
                    .rate_req_kbps;
                *payoff.get_mut(&owner).unwrap() += delta * rate;
            }
        }
        DemandMode::Strict => {
            let price = network.params().price_per_rate;
            for (sid, &eps) in &sol.duals.source {
                let owner = session_owner(sid)?;
                let served = sol.routing.served.get(sid).copied().unwrap_or(0.0);
                *payoff.get_mut(&owner).unwrap() += (eps + price) * served;
            }
        }
    }
    Ok(payoff.into_iter().collect())
}

/// Dual-price payoff of the grand coalition.
pub fn dual_payoff(network: &Network, cf: &CharacteristicFunction) -> Result<Allocation> {
    let payoffs = dual_payoff_within(network, cf, cf.grand())?
        .into_iter()
        .map(|(_, mu)| mu)
        .collect();
    Ok(Allocation {
        method: AllocationMethod::DualPayoff,
        payoffs,
    })
}

/// Efficiency plus individual rationality: pays out exactly `v(grand)` and
/// no provider below its standalone worth (within tolerance).
pub fn is_imputation(cf: &CharacteristicFunction, payoffs: &[f64]) -> bool {
    if payoffs.len() != cf.providers() as usize {
        return false;
    }
    let grand_value = cf.value(cf.grand());
    let total: f64 = payoffs.iter().sum();
    if (total - grand_value).abs() > hybrid_tol(grand_value) {
        return false;
    }
    (1..=cf.providers()).all(|m| {
        let own = cf.standalone(m);
        payoffs[m as usize - 1] >= own - hybrid_tol(own)
    })
}

/// A coalition that would gain by walking away from `payoffs`.
#[derive(Clone, Copy, Debug)]
pub struct CoreViolation {
    pub coalition: Coalition,
    pub coalition_value: f64,
    pub payoff_sum: f64,
}

impl CoreViolation {
    pub fn shortfall(&self) -> f64 {
        self.coalition_value - self.payoff_sum
    }
}

#[derive(Clone, Debug)]
pub struct CoreReport {
    pub payoffs: Vec<f64>,
    pub is_imputation: bool,
    /// `sum(payoffs) - v(grand)`.
    pub efficiency_gap: f64,
    pub violations: Vec<CoreViolation>,
    pub in_core: bool,
}

/// Full core membership test: every nonempty proper coalition must be paid
/// at least its standalone worth, on top of the imputation conditions.
pub fn in_core(cf: &CharacteristicFunction, payoffs: &[f64]) -> CoreReport {
    let imputation = is_imputation(cf, payoffs);
    let grand_value = cf.value(cf.grand());
    let total: f64 = payoffs.iter().sum();
    let mut violations = Vec::new();
    if payoffs.len() == cf.providers() as usize {
        let grand_mask = cf.grand().mask();
        for mask in 1..grand_mask {
            let c = Coalition::from_mask(mask);
            let v = cf.value(c);
            let x: f64 = c.members().map(|m| payoffs[m as usize - 1]).sum();
            if x < v - hybrid_tol(v) {
                violations.push(CoreViolation {
                    coalition: c,
                    coalition_value: v,
                    payoff_sum: x,
                });
            }
        }
    }
    CoreReport {
        payoffs: payoffs.to_vec(),
        is_imputation: imputation,
        efficiency_gap: total - grand_value,
        in_core: imputation && violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{interleaved, reference_game as reference_cf};
    use crate::game::{characteristic_function, coalition_value, payoff_breakdown};
    use crate::net::{build_network, Node, NetworkSpec, Params};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn shapley_matches_hand_computed_fractions() {
        let cf = reference_cf();
        let phi = shapley(&cf).unwrap();
        assert!(close(phi.payoffs[0], 4903.0 / 6.0));
        assert!(close(phi.payoffs[1], 7021.0 / 6.0));
        assert!(close(phi.payoffs[2], 3224.0 / 3.0));
        assert!(close(phi.total(), 3062.0));
    }

    #[test]
    fn shapley_splits_symmetric_games_equally() {
        let c = Coalition::from_members;
        let cf = CharacteristicFunction::from_values(
            2,
            &[(c(&[1]), 5.0), (c(&[2]), 5.0), (c(&[1, 2]), 14.0)],
        )
        .unwrap();
        let phi = shapley(&cf).unwrap();
        assert!(close(phi.payoffs[0], 7.0));
        assert!(close(phi.payoffs[1], 7.0));
    }

    #[test]
    fn shapley_pays_dummies_their_standalone_worth() {
        let c = Coalition::from_members;
        // Provider 3 adds exactly 4.0 to any coalition it joins.
        let cf = CharacteristicFunction::from_values(
            3,
            &[
                (c(&[1]), 1.0),
                (c(&[2]), 2.0),
                (c(&[3]), 4.0),
                (c(&[1, 2]), 6.0),
                (c(&[1, 3]), 5.0),
                (c(&[2, 3]), 6.0),
                (c(&[1, 2, 3]), 10.0),
            ],
        )
        .unwrap();
        let phi = shapley(&cf).unwrap();
        assert!(close(phi.payoffs[2], 4.0));
    }

    #[test]
    fn marginal_contribution_guards_membership() {
        let cf = reference_cf();
        let c = Coalition::from_members;
        assert!(close(
            marginal_contribution(&cf, 1, c(&[2, 3])).unwrap(),
            3062.0 - 2207.0
        ));
        assert!(marginal_contribution(&cf, 1, c(&[1, 2])).is_err());
        assert!(marginal_contribution(&cf, 7, c(&[2])).is_err());
    }

    #[test]
    fn shapley_within_uses_only_the_block() {
        let cf = reference_cf();
        let inside = shapley_within(&cf, Coalition::from_members(&[1, 2])).unwrap();
        // Two-player split: v1 + (v12 - v2 - v1) / 2.
        assert_eq!(inside[0].0, 1);
        assert!(close(inside[0].1, 783.5));
        assert!(close(inside[1].1, 1117.5));
    }

    #[test]
    fn reference_core_membership() {
        let cf = reference_cf();
        assert!(is_imputation(&cf, &[855.0, 1149.0, 1058.0]));
        let report = in_core(&cf, &[855.0, 1149.0, 1058.0]);
        assert!(report.in_core);
        assert!(report.violations.is_empty());
        assert!(report.efficiency_gap.abs() < 1e-9);

        let phi = shapley(&cf).unwrap();
        assert!(in_core(&cf, &phi.payoffs).in_core);

        // Standalone values alone under-pay: not even an imputation.
        assert!(!is_imputation(&cf, &[767.0, 1101.0, 976.0]));
        assert!(!in_core(&cf, &[767.0, 1101.0, 976.0]).in_core);
        assert!(!is_imputation(&cf, &[1.0, 2.0]));
    }

    #[test]
    fn core_report_names_blocking_coalitions() {
        let cf = reference_cf();
        // A valid imputation that still starves {2,3}: 2207 needed, 2100 paid.
        let report = in_core(&cf, &[962.0, 1101.0, 999.0]);
        assert!(report.is_imputation);
        assert!(!report.in_core);
        assert_eq!(report.violations.len(), 1);
        let v = report.violations[0];
        assert_eq!(v.coalition, Coalition::from_members(&[2, 3]));
        assert!((v.shortfall() - 107.0).abs() < 1e-9);
    }

    #[test]
    fn dual_payoff_prices_the_interleaved_network() {
        let net = interleaved();
        let cf = characteristic_function(&net, DemandMode::Elastic).unwrap();
        let mu = dual_payoff(&net, &cf).unwrap();
        let lpc = |a: f64, b: f64| (a - b).abs() <= hybrid_tol(b);
        // Capacities are slack, so each provider earns its demand dual:
        // 8 per Kbps at 2 hops.
        assert!(lpc(mu.payoffs[0], 264.0));
        assert!(lpc(mu.payoffs[1], 440.0));
        assert!(lpc(mu.total(), cf.value(cf.grand())));
        assert!(in_core(&cf, &mu.payoffs).in_core);

        // Per-block dual payoffs on a singleton block equal its value.
        let own = dual_payoff_within(&net, &cf, Coalition::singleton(2)).unwrap();
        assert_eq!(own.len(), 1);
        assert!(lpc(own[0].1, cf.standalone(2)));

        // The grand routing's breakdown is efficient too.
        let sol = cf.solution(cf.grand()).unwrap();
        let b = payoff_breakdown(&net, &sol.routing).unwrap();
        assert!(lpc(b.total_net(), cf.value(cf.grand())));
        let _ = coalition_value(&net, Coalition::singleton(1), DemandMode::Elastic).unwrap();
    }

    #[test]
    fn dual_payoff_needs_stored_solutions() {
        let cf = reference_cf();
        let spec = NetworkSpec {
            params: Params::default(),
            nodes: vec![
                Node { id: 1, owner: 1, x: 0.0, y: 0.0 },
                Node { id: 2, owner: 2, x: 100.0, y: 0.0 },
                Node { id: 3, owner: 3, x: 200.0, y: 0.0 },
            ],
            sessions: vec![],
            capacity_overrides: vec![],
        };
        let net = build_network(spec).unwrap();
        assert!(matches!(
            dual_payoff(&net, &cf),
            Err(Error::InvalidAllocation(_))
        ));
    }
}

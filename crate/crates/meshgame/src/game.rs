//! Coalition worth from cooperative routing: each provider subset is priced
//! by a multi-commodity flow program on its joint sub-network, maximizing
//! serving revenue minus per-hop forwarding cost.
//!
//! Per session the flow variables live on the coalition's directed links,
//! except links into the session's source or out of its destination. A
//! source-balance equality ties total source outflow to the served rate,
//! intermediate nodes conserve each session's flow separately, links carry a
//! shared capacity bound, and served rates are demand-capped. In
//! [`DemandMode::Elastic`] the served rate is a decision variable in
//! `[0, R]`; in [`DemandMode::Strict`] it is pinned to `min(R, F*)`, where
//! `F*` is the session's max-flow when alone on the sub-network, and the
//! program may then be infeasible because fixed demands can collide on
//! shared links.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{self, hybrid_tol, LpProblem, LpSolution, SparseRow, Status};
use crate::net::{Network, NodeId, ProviderId};

pub use crate::net::Coalition;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DemandMode {
    #[default]
    Elastic,
    Strict,
}

impl DemandMode {
    pub fn label(self) -> &'static str {
        match self {
            DemandMode::Elastic => "elastic",
            DemandMode::Strict => "strict",
        }
    }
}

/// Per-session link flows and served rates at a coalition optimum, in Kbps.
/// Flows below 1e-9 are omitted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Routing {
    pub flows: BTreeMap<String, BTreeMap<(NodeId, NodeId), f64>>,
    pub served: BTreeMap<String, f64>,
}

/// Shadow prices of the coalition program: `capacity` per directed link,
/// `demand` per session cap (elastic mode only), `source` per
/// source-balance equality.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoalitionDuals {
    pub capacity: BTreeMap<(NodeId, NodeId), f64>,
    pub demand: BTreeMap<String, f64>,
    pub source: BTreeMap<String, f64>,
}

#[derive(Clone, Debug)]
pub struct CoalitionSolution {
    pub coalition: Coalition,
    pub mode: DemandMode,
    pub value: f64,
    pub routing: Routing,
    pub duals: CoalitionDuals,
    /// Some basic variable sat at zero: alternate optimal bases (and hence
    /// alternate dual prices) may exist.
    pub degenerate: bool,
}

impl CoalitionSolution {
    fn trivial(coalition: Coalition, mode: DemandMode) -> Self {
        CoalitionSolution {
            coalition,
            mode,
            value: 0.0,
            routing: Routing::default(),
            duals: CoalitionDuals::default(),
            degenerate: false,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum VarKind {
    Flow { session: usize, link: usize },
    Served { session: usize },
}

enum BuildKind {
    Elastic,
    Strict { rates: Vec<f64> },
    /// Feasibility probe: maximize total served rate under per-session caps
    /// `rates`, used to name the sessions a strict program cannot fit.
    Probe { rates: Vec<f64> },
}

/// A coalition program together with the index maps needed to read a
/// solution back in network terms.
pub struct CoalitionLp {
    pub lp: LpProblem,
    pub mode: DemandMode,
    /// Constant added to the LP optimum to get the coalition value (strict
    /// mode books its fixed revenue here).
    pub value_offset: f64,
    net: Network,
    cols: Vec<VarKind>,
    cap_rows: Vec<usize>,
    demand_rows: Vec<usize>,
    fixed_rates: Vec<f64>,
}

impl CoalitionLp {
    pub fn network(&self) -> &Network {
        &self.net
    }
}

fn eligible(net: &Network, session: usize, link: usize) -> bool {
    let s = &net.sessions()[session];
    let l = &net.links()[link];
    l.from != s.destination && l.to != s.source
}

fn assemble(net: Network, kind: BuildKind) -> CoalitionLp {
    let sessions = net.sessions();
    let links = net.links();
    let price = net.params().price_per_rate;
    let cost = net.params().cost_per_rate;

    let mut cols = Vec::new();
    let mut col_labels = Vec::new();
    let mut col_of = vec![vec![None; links.len()]; sessions.len()];
    for (s, sess) in sessions.iter().enumerate() {
        for (k, l) in links.iter().enumerate() {
            if eligible(&net, s, k) {
                col_of[s][k] = Some(cols.len());
                cols.push(VarKind::Flow { session: s, link: k });
                col_labels.push(format!("f[{}]({}->{})", sess.id, l.from, l.to));
            }
        }
    }
    let served_col: Vec<Option<usize>> = sessions
        .iter()
        .enumerate()
        .map(|(s, sess)| match kind {
            BuildKind::Strict { .. } => None,
            _ => {
                cols.push(VarKind::Served { session: s });
                col_labels.push(format!("r[{}]", sess.id));
                Some(cols.len() - 1)
            }
        })
        .collect();

    let mut objective = vec![0.0; cols.len()];
    for (j, kind_j) in cols.iter().enumerate() {
        objective[j] = match (kind_j, &kind) {
            (VarKind::Flow { .. }, BuildKind::Probe { .. }) => 0.0,
            (VarKind::Flow { .. }, _) => -cost,
            (VarKind::Served { .. }, BuildKind::Probe { .. }) => 1.0,
            (VarKind::Served { .. }, _) => price,
        };
    }

    let mut lp = LpProblem::maximize(objective);
    let mut row_labels = Vec::new();

    let mut cap_rows = Vec::new();
    for (k, l) in links.iter().enumerate() {
        let row: SparseRow = (0..sessions.len())
            .filter_map(|s| col_of[s][k].map(|j| (j, 1.0)))
            .collect();
        if !row.is_empty() {
            lp.add_ineq(row, l.capacity_kbps);
            row_labels.push(format!("cap({}->{})", l.from, l.to));
            cap_rows.push(k);
        }
    }

    let mut demand_rows = Vec::new();
    for (s, sess) in sessions.iter().enumerate() {
        if let Some(j) = served_col[s] {
            let cap = match &kind {
                BuildKind::Probe { rates } => rates[s],
                _ => sess.rate_req_kbps,
            };
            lp.add_ineq(vec![(j, 1.0)], cap);
            row_labels.push(format!("dem({})", sess.id));
            demand_rows.push(s);
        }
    }

    for (s, sess) in sessions.iter().enumerate() {
        let mut row: SparseRow = net
            .out_links(sess.source)
            .iter()
            .filter_map(|&k| col_of[s][k].map(|j| (j, 1.0)))
            .collect();
        let rhs = match &kind {
            BuildKind::Strict { rates } => rates[s],
            _ => {
                row.push((served_col[s].unwrap(), -1.0));
                0.0
            }
        };
        lp.add_eq(row, rhs);
        row_labels.push(format!("src({})", sess.id));
    }

    for (s, sess) in sessions.iter().enumerate() {
        for node in net.nodes() {
            if node.id == sess.source || node.id == sess.destination {
                continue;
            }
            let mut row: SparseRow = net
                .out_links(node.id)
                .iter()
                .filter_map(|&k| col_of[s][k].map(|j| (j, 1.0)))
                .collect();
            row.extend(
                net.in_links(node.id)
                    .iter()
                    .filter_map(|&k| col_of[s][k].map(|j| (j, -1.0))),
            );
            if !row.is_empty() {
                lp.add_eq(row, 0.0);
                row_labels.push(format!("con({},{})", sess.id, node.id));
            }
        }
    }

    lp.row_labels = row_labels;
    lp.col_labels = col_labels;

    let (mode, value_offset, fixed_rates) = match kind {
        BuildKind::Elastic | BuildKind::Probe { .. } => (DemandMode::Elastic, 0.0, Vec::new()),
        BuildKind::Strict { rates } => {
            let offset = price * rates.iter().sum::<f64>();
            (DemandMode::Strict, offset, rates)
        }
    };

    CoalitionLp {
        lp,
        mode,
        value_offset,
        net,
        cols,
        cap_rows,
        demand_rows,
        fixed_rates,
    }
}

/// Max-flow of one session alone on the (already restricted) network,
/// ignoring its demand cap.
fn isolation_max_rate(net: &Network, session: usize) -> Result<f64> {
    let sess = &net.sessions()[session];
    let links = net.links();
    let mut col_of = vec![None; links.len()];
    let mut objective = Vec::new();
    for (k, _) in links.iter().enumerate() {
        if eligible(net, session, k) {
            col_of[k] = Some(objective.len());
            objective.push(0.0);
        }
    }
    for &k in net.out_links(sess.source) {
        if let Some(j) = col_of[k] {
            objective[j] = 1.0;
        }
    }
    let mut lp = LpProblem::maximize(objective);
    for (k, l) in links.iter().enumerate() {
        if let Some(j) = col_of[k] {
            lp.add_ineq(vec![(j, 1.0)], l.capacity_kbps);
        }
    }
    for node in net.nodes() {
        if node.id == sess.source || node.id == sess.destination {
            continue;
        }
        let mut row: SparseRow = net
            .out_links(node.id)
            .iter()
            .filter_map(|&k| col_of[k].map(|j| (j, 1.0)))
            .collect();
        row.extend(
            net.in_links(node.id)
                .iter()
                .filter_map(|&k| col_of[k].map(|j| (j, -1.0))),
        );
        if !row.is_empty() {
            lp.add_eq(row, 0.0);
        }
    }
    let sol = lp::solve(&lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::NumericFailure(format!(
            "isolation max-flow for session {:?} ended {:?}",
            sess.id, sol.status
        )));
    }
    Ok(sol.value)
}

/// Largest rate session `session_id` can carry on `coalition`'s sub-network
/// with no other traffic present, ignoring its demand cap.
pub fn session_max_rate(network: &Network, coalition: Coalition, session_id: &str) -> Result<f64> {
    let net = network.restrict(coalition)?;
    let idx = net
        .sessions()
        .iter()
        .position(|s| s.id == session_id)
        .ok_or_else(|| {
            Error::InvalidCoalition(format!(
                "session {session_id:?} is not owned by coalition {coalition}"
            ))
        })?;
    isolation_max_rate(&net, idx)
}

/// Builds the coalition's routing program. In strict mode the per-session
/// fixed rates are computed first via isolation max-flows.
pub fn build_coalition_lp(
    network: &Network,
    coalition: Coalition,
    mode: DemandMode,
) -> Result<CoalitionLp> {
    let net = network.restrict(coalition)?;
    let kind = match mode {
        DemandMode::Elastic => BuildKind::Elastic,
        DemandMode::Strict => {
            let rates = (0..net.sessions().len())
                .map(|s| {
                    isolation_max_rate(&net, s)
                        .map(|f| f.min(net.sessions()[s].rate_req_kbps))
                })
                .collect::<Result<Vec<f64>>>()?;
            BuildKind::Strict { rates }
        }
    };
    Ok(assemble(net, kind))
}

fn extract_solution(clp: &CoalitionLp, coalition: Coalition, sol: &LpSolution) -> CoalitionSolution {
    let net = &clp.net;
    let sessions = net.sessions();
    let mut routing = Routing::default();
    for sess in sessions {
        routing.flows.insert(sess.id.clone(), BTreeMap::new());
    }
    for (j, kind) in clp.cols.iter().enumerate() {
        match *kind {
            VarKind::Flow { session, link } if sol.primal[j] > 1e-9 => {
                let l = &net.links()[link];
                routing
                    .flows
                    .get_mut(&sessions[session].id)
                    .unwrap()
                    .insert((l.from, l.to), sol.primal[j]);
            }
            VarKind::Served { session } => {
                routing.served.insert(sessions[session].id.clone(), sol.primal[j]);
            }
            _ => {}
        }
    }
    if clp.mode == DemandMode::Strict {
        for (s, sess) in sessions.iter().enumerate() {
            routing.served.insert(sess.id.clone(), clp.fixed_rates[s]);
        }
    }

    let mut duals = CoalitionDuals::default();
    for (row, &k) in clp.cap_rows.iter().enumerate() {
        let l = &net.links()[k];
        duals.capacity.insert((l.from, l.to), sol.dual_ineq[row]);
    }
    for (i, &s) in clp.demand_rows.iter().enumerate() {
        duals
            .demand
            .insert(sessions[s].id.clone(), sol.dual_ineq[clp.cap_rows.len() + i]);
    }
    for (s, sess) in sessions.iter().enumerate() {
        duals.source.insert(sess.id.clone(), sol.dual_eq[s]);
    }

    CoalitionSolution {
        coalition,
        mode: clp.mode,
        value: sol.value + clp.value_offset,
        routing,
        duals,
        degenerate: sol.degenerate,
    }
}

/// Sessions a strict program cannot serve at their fixed rates: solve the
/// relaxed max-total-served probe and report the under-served ones.
fn blocking_sessions(net: &Network, rates: &[f64]) -> Result<Vec<String>> {
    let probe = assemble(net.clone(), BuildKind::Probe { rates: rates.to_vec() });
    let sol = lp::solve(&probe.lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::NumericFailure(format!(
            "feasibility probe ended {:?}",
            sol.status
        )));
    }
    let mut blocked = Vec::new();
    for (j, kind) in probe.cols.iter().enumerate() {
        if let VarKind::Served { session } = *kind {
            let want = rates[session];
            if sol.primal[j] < want - hybrid_tol(want) {
                blocked.push(net.sessions()[session].id.clone());
            }
        }
    }
    blocked.sort();
    Ok(blocked)
}

/// The coalition's worth: optimal serving revenue minus forwarding cost on
/// its own sub-network, with the optimal routing and shadow prices.
/// `v(empty) = 0` by convention.
pub fn coalition_value(
    network: &Network,
    coalition: Coalition,
    mode: DemandMode,
) -> Result<CoalitionSolution> {
    if coalition.is_empty() {
        return Ok(CoalitionSolution::trivial(coalition, mode));
    }
    let clp = build_coalition_lp(network, coalition, mode)?;
    let sol = lp::solve(&clp.lp)?;
    match sol.status {
        Status::Optimal => Ok(extract_solution(&clp, coalition, &sol)),
        Status::Infeasible => match mode {
            DemandMode::Strict => Err(Error::StrictInfeasible {
                coalition: coalition.to_string(),
                sessions: blocking_sessions(&clp.net, &clp.fixed_rates)?,
            }),
            DemandMode::Elastic => Err(Error::NumericFailure(
                "elastic program reported infeasible; zero routing is always feasible".to_string(),
            )),
        },
        Status::Unbounded => Err(Error::NumericFailure(
            "coalition program reported unbounded; link capacities should bound it".to_string(),
        )),
    }
}

/// The complete coalition-worth map for a game, one LP per provider subset.
#[derive(Clone, Debug)]
pub struct CharacteristicFunction {
    providers: u32,
    mode: DemandMode,
    values: Vec<f64>,
    solutions: Vec<Option<CoalitionSolution>>,
}

/// Evaluates every nonempty coalition of the network's providers.
/// Coalitions are independent programs, so they are dispatched to parallel
/// workers; results are ordered by bitmask, making the outcome
/// deterministic regardless of scheduling.
pub fn characteristic_function(network: &Network, mode: DemandMode) -> Result<CharacteristicFunction> {
    let m = network.providers();
    const GUARD: u32 = 20;
    if m > GUARD {
        return Err(Error::TooManyProviders(m, GUARD));
    }
    let n_masks = 1usize << m;
    let computed: Vec<Result<CoalitionSolution>> = (1..n_masks)
        .into_par_iter()
        .map(|mask| coalition_value(network, Coalition::from_mask(mask as u32), mode))
        .collect();

    let mut values = vec![0.0; n_masks];
    let mut solutions: Vec<Option<CoalitionSolution>> = vec![None; n_masks];
    for (mask, outcome) in computed.into_iter().enumerate() {
        let sol = outcome?;
        values[mask + 1] = sol.value;
        solutions[mask + 1] = Some(sol);
    }
    Ok(CharacteristicFunction {
        providers: m,
        mode,
        values,
        solutions,
    })
}

impl CharacteristicFunction {
    /// Builds a game directly from `(coalition, value)` pairs; every
    /// nonempty coalition of `providers` must appear exactly once.
    pub fn from_values(providers: u32, pairs: &[(Coalition, f64)]) -> Result<Self> {
        if providers == 0 || providers > 20 {
            return Err(Error::TooManyProviders(providers, 20));
        }
        let n_masks = 1usize << providers;
        let mut values = vec![f64::NAN; n_masks];
        values[0] = 0.0;
        for &(c, v) in pairs {
            let mask = c.mask() as usize;
            if mask == 0 || mask >= n_masks {
                return Err(Error::InvalidCoalition(format!(
                    "coalition {c} is not a nonempty subset of the {providers} providers"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidAllocation(format!("v({c}) = {v} is not finite")));
            }
            if !values[mask].is_nan() {
                return Err(Error::InvalidCoalition(format!("coalition {c} given twice")));
            }
            values[mask] = v;
        }
        let missing: Vec<String> = (1..n_masks)
            .filter(|&mask| values[mask].is_nan())
            .map(|mask| Coalition::from_mask(mask as u32).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteGame(missing));
        }
        Ok(CharacteristicFunction {
            providers,
            mode: DemandMode::Elastic,
            values,
            solutions: vec![None; n_masks],
        })
    }

    pub fn providers(&self) -> u32 {
        self.providers
    }

    pub fn mode(&self) -> DemandMode {
        self.mode
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.providers)
    }

    pub fn value(&self, c: Coalition) -> f64 {
        self.values[c.mask() as usize]
    }

    pub fn standalone(&self, m: ProviderId) -> f64 {
        self.value(Coalition::singleton(m))
    }

    pub fn solution(&self, c: Coalition) -> Option<&CoalitionSolution> {
        self.solutions.get(c.mask() as usize).and_then(|s| s.as_ref())
    }

    /// Nonempty coalitions in bitmask order with their values.
    pub fn entries(&self) -> impl Iterator<Item = (Coalition, f64)> + '_ {
        (1..self.values.len()).map(|mask| (Coalition::from_mask(mask as u32), self.values[mask]))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuperadditivityViolation {
    pub left: Coalition,
    pub right: Coalition,
    pub merged_value: f64,
    pub parts_sum: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct MonotonicityViolation {
    pub subset: Coalition,
    pub superset: Coalition,
    pub subset_value: f64,
    pub superset_value: f64,
}

/// All disjoint pairs whose merged coalition is worth tolerably less than
/// the pair separately. Empty means the game is superadditive.
pub fn check_superadditive(cf: &CharacteristicFunction) -> Vec<SuperadditivityViolation> {
    let grand = cf.grand().mask();
    let mut violations = Vec::new();
    for a in 1..=grand {
        let comp = grand & !a;
        let mut b = comp;
        while b != 0 {
            if b > a {
                let left = Coalition::from_mask(a);
                let right = Coalition::from_mask(b);
                let merged = cf.value(left.union(right));
                let parts = cf.value(left) + cf.value(right);
                if merged < parts - hybrid_tol(merged.abs().max(parts.abs())) {
                    violations.push(SuperadditivityViolation {
                        left,
                        right,
                        merged_value: merged,
                        parts_sum: parts,
                    });
                }
            }
            b = (b - 1) & comp;
        }
    }
    violations
}

/// All subset/superset pairs where growing the coalition tolerably lowers
/// its worth. Empty means the game is monotone.
pub fn check_monotone(cf: &CharacteristicFunction) -> Vec<MonotonicityViolation> {
    let grand = cf.grand().mask();
    let mut violations = Vec::new();
    for s in 1..=grand {
        let comp = grand & !s;
        let mut e = comp;
        while e != 0 {
            let sub = Coalition::from_mask(s);
            let sup = Coalition::from_mask(s | e);
            let vs = cf.value(sub);
            let vt = cf.value(sup);
            if vt < vs - hybrid_tol(vs.abs().max(vt.abs())) {
                violations.push(MonotonicityViolation {
                    subset: sub,
                    superset: sup,
                    subset_value: vs,
                    superset_value: vt,
                });
            }
            e = (e - 1) & comp;
        }
    }
    violations
}

/// One provider's earnings split: serving revenue for its own sessions,
/// forwarding cost for traffic its nodes transmit, and the difference.
#[derive(Clone, Copy, Debug)]
pub struct ProviderShare {
    pub provider: ProviderId,
    pub revenue: f64,
    pub forwarding_cost: f64,
    pub net: f64,
}

#[derive(Clone, Debug)]
pub struct PayoffBreakdown {
    pub shares: Vec<ProviderShare>,
}

impl PayoffBreakdown {
    pub fn share(&self, m: ProviderId) -> Option<&ProviderShare> {
        self.shares.iter().find(|s| s.provider == m)
    }

    pub fn total_net(&self) -> f64 {
        self.shares.iter().map(|s| s.net).sum()
    }
}

/// Splits a routing's revenue and forwarding cost by provider. The routing
/// must reference only links and sessions of `network`.
pub fn payoff_breakdown(network: &Network, routing: &Routing) -> Result<PayoffBreakdown> {
    let m = network.providers();
    let mut revenue = vec![0.0; m as usize + 1];
    let mut cost = vec![0.0; m as usize + 1];
    let price = network.params().price_per_rate;
    let unit_cost = network.params().cost_per_rate;

    for (sid, rate) in &routing.served {
        let sess = network
            .sessions()
            .iter()
            .find(|s| &s.id == sid)
            .ok_or_else(|| Error::InvalidRouting(format!("unknown session {sid:?}")))?;
        if !rate.is_finite() || *rate < -1e-9 {
            return Err(Error::InvalidRouting(format!(
                "session {sid:?} served rate {rate} is not a nonnegative number"
            )));
        }
        revenue[sess.owner as usize] += price * rate;
    }
    for (sid, links) in &routing.flows {
        if !network.sessions().iter().any(|s| &s.id == sid) {
            return Err(Error::InvalidRouting(format!("unknown session {sid:?}")));
        }
        for (&(from, to), &f) in links {
            if network.link_between(from, to).is_none() {
                return Err(Error::InvalidRouting(format!(
                    "session {sid:?} routes over nonexistent link {from}->{to}"
                )));
            }
            if !f.is_finite() || f < -1e-9 {
                return Err(Error::InvalidRouting(format!(
                    "flow on {from}->{to} is {f}, not a nonnegative number"
                )));
            }
            let owner = network.owner_of(from).unwrap();
            cost[owner as usize] += unit_cost * f;
        }
    }

    let shares = (1..=m)
        .map(|p| ProviderShare {
            provider: p,
            revenue: revenue[p as usize],
            forwarding_cost: cost[p as usize],
            net: revenue[p as usize] - cost[p as usize],
        })
        .collect();
    Ok(PayoffBreakdown { shares })
}

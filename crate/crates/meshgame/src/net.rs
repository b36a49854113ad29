//! Multi-provider wireless mesh model: node placement, Shannon-capacity
//! links, flow sessions, and deterministic random instance generation.
//!
//! A [`NetworkSpec`] is the serializable description (what lives in a JSON
//! file); a [`Network`] is the derived object with concrete links and
//! adjacency, produced by [`build_network`].

use std::collections::HashMap;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = u32;
pub type ProviderId = u32;

/// Radio and market parameters shared by every node in an instance.
///
/// Rates are in Kbps, distances in meters, powers in watts. `price_per_rate`
/// is revenue per Kbps of served demand; `cost_per_rate` is the forwarding
/// cost per Kbps per hop.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub price_per_rate: f64,
    pub cost_per_rate: f64,
    pub bandwidth_hz: f64,
    pub tx_range_m: f64,
    pub gain_coeff: f64,
    pub gain_exponent: f64,
    pub tx_power_w: f64,
    pub noise_power_w: f64,
    pub area_side_m: f64,
    pub rate_req_range_kbps: (f64, f64),
}

impl Default for Params {
    fn default() -> Self {
        Params {
            price_per_rate: 10.0,
            cost_per_rate: 1.0,
            bandwidth_hz: 200_000.0,
            tx_range_m: 150.0,
            gain_coeff: 62.5,
            gain_exponent: 4.0,
            tx_power_w: 1.0,
            noise_power_w: 1e-10,
            area_side_m: 600.0,
            rate_req_range_kbps: (20.0, 80.0),
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let positive = [
            ("price_per_rate", self.price_per_rate),
            ("bandwidth_hz", self.bandwidth_hz),
            ("tx_range_m", self.tx_range_m),
            ("gain_coeff", self.gain_coeff),
            ("gain_exponent", self.gain_exponent),
            ("tx_power_w", self.tx_power_w),
            ("noise_power_w", self.noise_power_w),
            ("area_side_m", self.area_side_m),
        ];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                problems.push(format!("{name} must be positive and finite, got {v}"));
            }
        }
        if !self.cost_per_rate.is_finite() || self.cost_per_rate < 0.0 {
            problems.push(format!(
                "cost_per_rate must be nonnegative and finite, got {}",
                self.cost_per_rate
            ));
        }
        let (lo, hi) = self.rate_req_range_kbps;
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi < lo {
            problems.push(format!(
                "rate_req_range_kbps must satisfy 0 < lo <= hi, got ({lo}, {hi})"
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(problems.join("; ")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: NodeId,
    pub owner: ProviderId,
    pub x: f64,
    pub y: f64,
}

/// An end-to-end traffic demand between two nodes of one provider.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSession {
    pub id: String,
    pub owner: ProviderId,
    pub source: NodeId,
    pub destination: NodeId,
    pub rate_req_kbps: f64,
}

/// Pins the capacity of one directed link to a fixed value instead of the
/// Shannon formula. The pair must still be within transmission range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityOverride {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity_kbps: f64,
}

/// The serializable instance description: parameters, nodes, sessions, and
/// optional per-link capacity overrides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default)]
    pub params: Params,
    pub nodes: Vec<Node>,
    pub sessions: Vec<FlowSession>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub capacity_overrides: Vec<CapacityOverride>,
}

/// A set of providers, stored as a bitmask (bit `m-1` for provider `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u32);

impl Coalition {
    pub const fn empty() -> Self {
        Coalition(0)
    }

    /// All providers `1..=m`.
    pub fn grand(m: u32) -> Self {
        assert!(m <= 32, "provider count out of range");
        if m == 0 {
            Coalition(0)
        } else {
            Coalition(u32::MAX >> (32 - m))
        }
    }

    pub fn singleton(m: ProviderId) -> Self {
        assert!((1..=32).contains(&m), "provider id out of range");
        Coalition(1 << (m - 1))
    }

    pub fn from_members(members: &[ProviderId]) -> Self {
        members
            .iter()
            .fold(Coalition::empty(), |c, &m| c.with(m))
    }

    pub const fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn with(self, m: ProviderId) -> Self {
        Coalition(self.0 | Coalition::singleton(m).0)
    }

    pub fn without(self, m: ProviderId) -> Self {
        Coalition(self.0 & !Coalition::singleton(m).0)
    }

    pub const fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub const fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn contains(self, m: ProviderId) -> bool {
        m >= 1 && m <= 32 && self.0 & (1 << (m - 1)) != 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn members(self) -> impl Iterator<Item = ProviderId> {
        (1..=32).filter(move |&m| self.0 & (1 << (m - 1)) != 0)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// A directed radio link with its usable capacity in Kbps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity_kbps: f64,
}

/// A built instance: the spec plus derived links and adjacency indexes.
#[derive(Clone, Debug)]
pub struct Network {
    spec: NetworkSpec,
    links: Vec<Link>,
    node_pos: HashMap<NodeId, usize>,
    link_pos: HashMap<(NodeId, NodeId), usize>,
    out_links: Vec<Vec<usize>>,
    in_links: Vec<Vec<usize>>,
}

/// Capacity of a directed link over `distance_m` meters, or `None` when the
/// receiver is out of transmission range. Uses the Shannon formula over the
/// distance-power path-gain model; result is in Kbps.
pub fn link_capacity(distance_m: f64, params: &Params) -> Result<Option<f64>> {
    params.validate()?;
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(Error::Domain(format!(
            "link distance must be positive and finite, got {distance_m}"
        )));
    }
    if distance_m > params.tx_range_m {
        return Ok(None);
    }
    let gain = params.gain_coeff * distance_m.powf(-params.gain_exponent);
    let snr = params.tx_power_w * gain / params.noise_power_w;
    Ok(Some(params.bandwidth_hz * (1.0 + snr).log2() / 1000.0))
}

fn distance(a: &Node, b: &Node) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

impl NetworkSpec {
    /// Number of providers, i.e. the largest node owner id.
    pub fn providers(&self) -> u32 {
        self.nodes.iter().map(|n| n.owner).max().unwrap_or(0)
    }

    /// Checks every structural constraint and reports all offenders at once.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if let Err(Error::InvalidParams(msg)) = self.params.validate() {
            problems.push(format!("params: {msg}"));
        }
        if self.nodes.is_empty() {
            problems.push("no nodes".to_string());
        }

        let mut node_owner: HashMap<NodeId, ProviderId> = HashMap::new();
        for n in &self.nodes {
            if node_owner.insert(n.id, n.owner).is_some() {
                problems.push(format!("duplicate node id {}", n.id));
            }
            if n.owner == 0 || n.owner > 32 {
                problems.push(format!("node {} has invalid owner {}", n.id, n.owner));
            }
            if !n.x.is_finite()
                || !n.y.is_finite()
                || n.x < 0.0
                || n.y < 0.0
                || n.x > self.params.area_side_m
                || n.y > self.params.area_side_m
            {
                problems.push(format!(
                    "node {} position ({}, {}) outside [0, {}]^2",
                    n.id, n.x, n.y, self.params.area_side_m
                ));
            }
        }

        let m = self.providers();
        if m > 0 && m <= 32 {
            for p in 1..=m {
                if !self.nodes.iter().any(|n| n.owner == p) {
                    problems.push(format!(
                        "provider ids must be contiguous from 1: provider {p} owns no node"
                    ));
                }
            }
        }

        let mut session_ids = std::collections::HashSet::new();
        for s in &self.sessions {
            if !session_ids.insert(s.id.clone()) {
                problems.push(format!("duplicate session id {:?}", s.id));
            }
            if s.owner == 0 || s.owner > m {
                problems.push(format!(
                    "session {:?} owner {} is not a known provider",
                    s.id, s.owner
                ));
            }
            for (role, id) in [("source", s.source), ("destination", s.destination)] {
                match node_owner.get(&id) {
                    None => problems.push(format!("session {:?} {role} node {id} does not exist", s.id)),
                    Some(&owner) if owner != s.owner => problems.push(format!(
                        "session {:?} {role} node {id} belongs to provider {owner}, not {}",
                        s.id, s.owner
                    )),
                    _ => {}
                }
            }
            if s.source == s.destination {
                problems.push(format!("session {:?} has source == destination", s.id));
            }
            if !s.rate_req_kbps.is_finite() || s.rate_req_kbps <= 0.0 {
                problems.push(format!(
                    "session {:?} rate requirement must be positive, got {}",
                    s.id, s.rate_req_kbps
                ));
            }
        }

        let mut seen_overrides = std::collections::HashSet::new();
        for ov in &self.capacity_overrides {
            if !seen_overrides.insert((ov.from, ov.to)) {
                problems.push(format!("duplicate capacity override for ({}, {})", ov.from, ov.to));
            }
            if ov.from == ov.to {
                problems.push(format!("capacity override ({}, {}) is a self-loop", ov.from, ov.to));
            }
            if !ov.capacity_kbps.is_finite() || ov.capacity_kbps <= 0.0 {
                problems.push(format!(
                    "capacity override ({}, {}) must be positive, got {}",
                    ov.from, ov.to, ov.capacity_kbps
                ));
            }
            let a = self.nodes.iter().find(|n| n.id == ov.from);
            let b = self.nodes.iter().find(|n| n.id == ov.to);
            match (a, b) {
                (Some(a), Some(b)) => {
                    if distance(a, b) > self.params.tx_range_m {
                        problems.push(format!(
                            "capacity override ({}, {}) refers to a pair outside transmission range",
                            ov.from, ov.to
                        ));
                    }
                }
                _ => problems.push(format!(
                    "capacity override ({}, {}) refers to unknown nodes",
                    ov.from, ov.to
                )),
            }
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidNetwork(problems))
        }
    }
}

/// Validates a spec and derives its directed links (Shannon capacity, with
/// overrides applied) and adjacency indexes.
pub fn build_network(spec: NetworkSpec) -> Result<Network> {
    spec.validate()?;
    let overrides: HashMap<(NodeId, NodeId), f64> = spec
        .capacity_overrides
        .iter()
        .map(|ov| ((ov.from, ov.to), ov.capacity_kbps))
        .collect();
    let mut links = Vec::new();
    for a in &spec.nodes {
        for b in &spec.nodes {
            if a.id == b.id {
                continue;
            }
            if let Some(shannon) = link_capacity(distance(a, b), &spec.params)? {
                let capacity_kbps = overrides.get(&(a.id, b.id)).copied().unwrap_or(shannon);
                links.push(Link {
                    from: a.id,
                    to: b.id,
                    capacity_kbps,
                });
            }
        }
    }
    Ok(Network::assemble(spec, links))
}

impl Network {
    fn assemble(spec: NetworkSpec, links: Vec<Link>) -> Network {
        let node_pos: HashMap<NodeId, usize> =
            spec.nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
        let mut out_links = vec![Vec::new(); spec.nodes.len()];
        let mut in_links = vec![Vec::new(); spec.nodes.len()];
        let mut link_pos = HashMap::new();
        for (k, l) in links.iter().enumerate() {
            out_links[node_pos[&l.from]].push(k);
            in_links[node_pos[&l.to]].push(k);
            link_pos.insert((l.from, l.to), k);
        }
        Network {
            spec,
            links,
            node_pos,
            link_pos,
            out_links,
            in_links,
        }
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn params(&self) -> &Params {
        &self.spec.params
    }

    pub fn nodes(&self) -> &[Node] {
        &self.spec.nodes
    }

    pub fn sessions(&self) -> &[FlowSession] {
        &self.spec.sessions
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn providers(&self) -> u32 {
        self.spec.providers()
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.node_pos.get(&id).map(|&i| &self.spec.nodes[i])
    }

    pub fn owner_of(&self, id: NodeId) -> Option<ProviderId> {
        self.node(id).map(|n| n.owner)
    }

    /// Indexes into [`Network::links`] of links transmitted by `id`.
    pub fn out_links(&self, id: NodeId) -> &[usize] {
        self.node_pos
            .get(&id)
            .map(|&i| self.out_links[i].as_slice())
            .unwrap_or(&[])
    }

    /// Indexes into [`Network::links`] of links received by `id`.
    pub fn in_links(&self, id: NodeId) -> &[usize] {
        self.node_pos
            .get(&id)
            .map(|&i| self.in_links[i].as_slice())
            .unwrap_or(&[])
    }

    pub fn link_between(&self, from: NodeId, to: NodeId) -> Option<usize> {
        self.link_pos.get(&(from, to)).copied()
    }

    /// Sub-network owned by `coalition`: its nodes, the links between them
    /// (capacities kept as built, overrides included), and its sessions.
    pub fn restrict(&self, coalition: Coalition) -> Result<Network> {
        let m = self.providers();
        if coalition.is_empty() {
            return Err(Error::InvalidCoalition(
                "cannot restrict to the empty coalition".to_string(),
            ));
        }
        if !coalition.is_subset_of(Coalition::grand(m)) {
            return Err(Error::InvalidCoalition(format!(
                "coalition {coalition} is not a subset of the {m} providers"
            )));
        }
        let keep = |id: NodeId| self.owner_of(id).map(|o| coalition.contains(o)).unwrap_or(false);
        let spec = NetworkSpec {
            params: self.spec.params,
            nodes: self
                .spec
                .nodes
                .iter()
                .filter(|n| coalition.contains(n.owner))
                .copied()
                .collect(),
            sessions: self
                .spec
                .sessions
                .iter()
                .filter(|s| coalition.contains(s.owner))
                .cloned()
                .collect(),
            capacity_overrides: self
                .spec
                .capacity_overrides
                .iter()
                .filter(|ov| keep(ov.from) && keep(ov.to))
                .copied()
                .collect(),
        };
        let links = self
            .links
            .iter()
            .filter(|l| keep(l.from) && keep(l.to))
            .copied()
            .collect();
        Ok(Network::assemble(spec, links))
    }
}

fn uniform_f64(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    lo + u * (hi - lo)
}

fn uniform_usize(rng: &mut ChaCha8Rng, n: usize) -> usize {
    let n = n as u64;
    let limit = u64::MAX - u64::MAX % n;
    loop {
        let v = rng.next_u64();
        if v < limit {
            return (v % n) as usize;
        }
    }
}

/// Deterministic random instance: `providers * nodes_per_provider` nodes
/// placed uniformly in the square, then `sessions_per_provider` sessions per
/// provider between distinct own nodes with uniform rate requirements.
///
/// The draw order is fixed (all node positions first, x before y, in node id
/// order; then per session its source, destination — redrawn while equal to
/// the source — and rate), so a seed pins the instance exactly.
pub fn generate_random(
    providers: u32,
    nodes_per_provider: u32,
    sessions_per_provider: u32,
    params: Params,
    seed: u64,
) -> Result<NetworkSpec> {
    params.validate()?;
    if providers == 0 || providers > 32 {
        return Err(Error::Domain(format!(
            "provider count must be in 1..=32, got {providers}"
        )));
    }
    if nodes_per_provider == 0 {
        return Err(Error::Domain("nodes_per_provider must be positive".to_string()));
    }
    if sessions_per_provider > 0 && nodes_per_provider < 2 {
        return Err(Error::Domain(
            "sessions need at least 2 nodes per provider for distinct endpoints".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::new();
    for m in 1..=providers {
        for k in 0..nodes_per_provider {
            let x = uniform_f64(&mut rng, 0.0, params.area_side_m);
            let y = uniform_f64(&mut rng, 0.0, params.area_side_m);
            nodes.push(Node {
                id: (m - 1) * nodes_per_provider + k + 1,
                owner: m,
                x,
                y,
            });
        }
    }

    let (lo, hi) = params.rate_req_range_kbps;
    let mut sessions = Vec::new();
    for m in 1..=providers {
        let base = (m - 1) * nodes_per_provider + 1;
        for k in 1..=sessions_per_provider {
            let src = uniform_usize(&mut rng, nodes_per_provider as usize);
            let dst = loop {
                let d = uniform_usize(&mut rng, nodes_per_provider as usize);
                if d != src {
                    break d;
                }
            };
            sessions.push(FlowSession {
                id: format!("s{m}_{k}"),
                owner: m,
                source: base + src as u32,
                destination: base + dst as u32,
                rate_req_kbps: uniform_f64(&mut rng, lo, hi),
            });
        }
    }

    Ok(NetworkSpec {
        params,
        nodes,
        sessions,
        capacity_overrides: Vec::new(),
    })
}

//! Fixtures and an independent brute-force optimum shared by the
//! integration suites.
//!
//! The brute-force route works on explicit path flows instead of edge
//! flows: enumerate every simple path a session could take, pose the
//! resulting small program, and take the best vertex of its feasible
//! region by exhaustive active-set enumeration. It shares no code with
//! the production simplex, which is the point of keeping it around.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use meshgame::game::DemandMode;
use meshgame::lp::LpProblem;
use meshgame::net::{CapacityOverride, FlowSession, Node};
use meshgame::{build_network, CharacteristicFunction, Coalition, Network, NetworkSpec, Params};

/// Three-provider game used as a cross-suite regression anchor:
/// standalone (767, 1101, 976), pairs (1901, 1835, 2207), grand 3062.
pub fn reference_game() -> CharacteristicFunction {
    let c = Coalition::from_members;
    CharacteristicFunction::from_values(
        3,
        &[
            (c(&[1]), 767.0),
            (c(&[2]), 1101.0),
            (c(&[3]), 976.0),
            (c(&[1, 2]), 1901.0),
            (c(&[1, 3]), 1835.0),
            (c(&[2, 3]), 2207.0),
            (c(&[1, 2, 3]), 3062.0),
        ],
    )
    .unwrap()
}

/// Two providers with interleaved chains along the x axis: each session
/// needs 3 hops alone but only 2 with the other provider's relays.
///
/// Values: v({1}) = 231, v({2}) = 385, v({1,2}) = 704.
pub fn interleaved() -> Network {
    let mut nodes = Vec::new();
    for (i, x) in [0.0, 100.0, 200.0, 300.0].iter().enumerate() {
        nodes.push(Node { id: i as u32 + 1, owner: 1, x: *x, y: 0.0 });
    }
    for (i, x) in [50.0, 150.0, 250.0, 350.0].iter().enumerate() {
        nodes.push(Node { id: i as u32 + 5, owner: 2, x: *x, y: 0.0 });
    }
    let spec = NetworkSpec {
        params: Params::default(),
        nodes,
        sessions: vec![
            FlowSession { id: "s1".into(), owner: 1, source: 1, destination: 4, rate_req_kbps: 33.0 },
            FlowSession { id: "s2".into(), owner: 2, source: 5, destination: 8, rate_req_kbps: 55.0 },
        ],
        capacity_overrides: vec![],
    };
    build_network(spec).unwrap()
}

/// One provider, three disjoint relay chains far enough apart that no
/// cross-chain links form: sessions of 33, 42 and 55 Kbps over 3, 3 and
/// 4 hops with slack capacity everywhere. At the default price 10 and
/// hop cost 1 the per-Kbps margins are 7, 7 and 6, so the value is 855
/// from 1300 revenue and 445 forwarding cost.
pub fn own_routes_network() -> Network {
    let mut nodes = Vec::new();
    for i in 0..4u32 {
        nodes.push(Node { id: 1 + i, owner: 1, x: 100.0 * i as f64, y: 0.0 });
    }
    for i in 0..4u32 {
        nodes.push(Node { id: 5 + i, owner: 1, x: 100.0 * i as f64, y: 200.0 });
    }
    for i in 0..5u32 {
        nodes.push(Node { id: 9 + i, owner: 1, x: 100.0 * i as f64, y: 400.0 });
    }
    let spec = NetworkSpec {
        params: Params::default(),
        nodes,
        sessions: vec![
            FlowSession { id: "a".into(), owner: 1, source: 1, destination: 4, rate_req_kbps: 33.0 },
            FlowSession { id: "b".into(), owner: 1, source: 5, destination: 8, rate_req_kbps: 42.0 },
            FlowSession { id: "c".into(), owner: 1, source: 9, destination: 13, rate_req_kbps: 55.0 },
        ],
        capacity_overrides: vec![],
    };
    build_network(spec).unwrap()
}

/// Two 30 Kbps sessions forced through one relay chain whose links are
/// pinned to 40 Kbps. Either session alone could push 40, so strict mode
/// pins both to their full request; together that needs 60 through 40.
pub fn squeezed_link_network() -> Network {
    let spec = NetworkSpec {
        params: Params::default(),
        nodes: vec![
            Node { id: 1, owner: 1, x: 0.0, y: 0.0 },
            Node { id: 2, owner: 1, x: 100.0, y: 0.0 },
            Node { id: 3, owner: 1, x: 200.0, y: 0.0 },
        ],
        sessions: vec![
            FlowSession { id: "a".into(), owner: 1, source: 1, destination: 3, rate_req_kbps: 30.0 },
            FlowSession { id: "b".into(), owner: 1, source: 1, destination: 3, rate_req_kbps: 30.0 },
        ],
        capacity_overrides: vec![
            CapacityOverride { from: 1, to: 2, capacity_kbps: 40.0 },
            CapacityOverride { from: 2, to: 3, capacity_kbps: 40.0 },
        ],
    };
    build_network(spec).unwrap()
}

/// A dense program: maximize `c . x` subject to `ineq` rows `a . x <= b`,
/// `eq` rows `a . x = b`, and `x >= 0`.
pub struct DenseLp {
    pub maximize: Vec<f64>,
    pub ineq: Vec<(Vec<f64>, f64)>,
    pub eq: Vec<(Vec<f64>, f64)>,
}

pub enum VertexMax {
    Optimal(f64),
    /// No vertex satisfies every constraint.
    Empty,
    /// More candidate active sets than the enumeration budget allows.
    TooBig,
}

const MAX_BASES: u64 = 500_000;

fn dot(a: &[f64], x: &[f64]) -> f64 {
    a.iter().zip(x).map(|(c, v)| c * v).sum()
}

fn binomial(pool: usize, k: usize) -> u64 {
    let k = k.min(pool - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (pool - i) as u128 / (i as u128 + 1);
        if acc > 2 * MAX_BASES as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-9 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

fn next_combination(pick: &mut [usize], pool: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] != pool - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Maximum of a bounded program over the vertices of its feasible region.
/// Every equality row is kept active; the remaining active constraints are
/// chosen from the inequality rows and the `x_i = 0` bounds in every
/// possible way.
pub fn vertex_max(lp: &DenseLp) -> VertexMax {
    let n = lp.maximize.len();
    if n == 0 {
        let ok = lp.eq.iter().all(|(_, b)| b.abs() <= 1e-7)
            && lp.ineq.iter().all(|(_, b)| *b >= -1e-7);
        return if ok { VertexMax::Optimal(0.0) } else { VertexMax::Empty };
    }
    if lp.eq.len() > n {
        return VertexMax::TooBig;
    }
    let mut rows: Vec<(Vec<f64>, f64)> = lp.eq.clone();
    let fixed = rows.len();
    for (a, b) in &lp.ineq {
        rows.push((a.clone(), *b));
    }
    for i in 0..n {
        let mut a = vec![0.0; n];
        a[i] = 1.0;
        rows.push((a, 0.0));
    }
    let pool = rows.len() - fixed;
    let k = n - fixed;
    if binomial(pool, k) > MAX_BASES {
        return VertexMax::TooBig;
    }
    let feasible = |x: &[f64]| {
        x.iter().all(|&v| v >= -1e-7)
            && lp.ineq.iter().all(|(a, b)| dot(a, x) <= b + 1e-7 * (1.0 + b.abs()))
            && lp.eq.iter().all(|(a, b)| (dot(a, x) - b).abs() <= 1e-7 * (1.0 + b.abs()))
    };
    let mut best: Option<f64> = None;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for row in rows.iter().take(fixed) {
            a.push(row.0.clone());
            b.push(row.1);
        }
        for &p in &pick {
            a.push(rows[fixed + p].0.clone());
            b.push(rows[fixed + p].1);
        }
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let v = dot(&lp.maximize, &x);
                best = Some(best.map_or(v, |cur: f64| cur.max(v)));
            }
        }
        if !next_combination(&mut pick, pool) {
            break;
        }
    }
    match best {
        Some(v) => VertexMax::Optimal(v),
        None => VertexMax::Empty,
    }
}

/// Rebuilds a dense program in the production solver's sparse form.
pub fn to_lp_problem(lp: &DenseLp) -> LpProblem {
    let mut out = LpProblem::maximize(lp.maximize.clone());
    for (a, b) in &lp.ineq {
        let row = a.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(j, c)| (j, *c)).collect();
        out.add_ineq(row, *b);
    }
    for (a, b) in &lp.eq {
        let row = a.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(j, c)| (j, *c)).collect();
        out.add_eq(row, *b);
    }
    out
}

fn collect_paths(
    adj: &BTreeMap<u32, Vec<u32>>,
    dst: u32,
    cap: usize,
    path: &mut Vec<u32>,
    seen: &mut BTreeSet<u32>,
    found: &mut Vec<Vec<(u32, u32)>>,
) -> bool {
    let here = *path.last().unwrap();
    if here == dst {
        if found.len() == cap {
            return false;
        }
        found.push(path.windows(2).map(|w| (w[0], w[1])).collect());
        return true;
    }
    if let Some(nexts) = adj.get(&here) {
        for &nx in nexts {
            if seen.insert(nx) {
                path.push(nx);
                let ok = collect_paths(adj, dst, cap, path, seen, found);
                path.pop();
                seen.remove(&nx);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Every simple path from `src` to `dst` as a link sequence, or `None`
/// once more than `cap` exist.
fn simple_paths(net: &Network, src: u32, dst: u32, cap: usize) -> Option<Vec<Vec<(u32, u32)>>> {
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for l in net.links() {
        adj.entry(l.from).or_default().push(l.to);
    }
    let mut found = Vec::new();
    let mut path = vec![src];
    let mut seen: BTreeSet<u32> = [src].into_iter().collect();
    if collect_paths(&adj, dst, cap, &mut path, &mut seen, &mut found) {
        Some(found)
    } else {
        None
    }
}

pub enum Oracle {
    Value(f64),
    /// Strict demands cannot all be met.
    Infeasible,
    /// Too many paths or candidate active sets to brute-force.
    TooBig,
}

const MAX_PATHS: usize = 10;

/// Coalition optimum recomputed from scratch over explicit path flows.
pub fn brute_force_value(net: &Network, coalition: Coalition, mode: DemandMode) -> Oracle {
    let sub = net.restrict(coalition).expect("coalition must be valid for the network");
    let price = sub.spec().params.price_per_rate;
    let cost = sub.spec().params.cost_per_rate;
    let mut session_paths: Vec<(f64, Vec<Vec<(u32, u32)>>)> = Vec::new();
    let mut total = 0usize;
    for s in sub.sessions() {
        let Some(paths) = simple_paths(&sub, s.source, s.destination, MAX_PATHS) else {
            return Oracle::TooBig;
        };
        total += paths.len();
        if total > MAX_PATHS {
            return Oracle::TooBig;
        }
        session_paths.push((s.rate_req_kbps, paths));
    }
    let cap_of: BTreeMap<(u32, u32), f64> =
        sub.links().iter().map(|l| ((l.from, l.to), l.capacity_kbps)).collect();

    // Column layout: one variable per (session, path), in session order.
    let columns: Vec<(usize, usize)> = session_paths
        .iter()
        .enumerate()
        .flat_map(|(l, (_, paths))| (0..paths.len()).map(move |p| (l, p)))
        .collect();
    let n = columns.len();
    let path_of = |col: usize| -> &[(u32, u32)] {
        let (l, p) = columns[col];
        &session_paths[l].1[p]
    };
    let capacity_rows = || -> Vec<(Vec<f64>, f64)> {
        let mut used: BTreeSet<(u32, u32)> = BTreeSet::new();
        for col in 0..n {
            used.extend(path_of(col).iter().copied());
        }
        used.into_iter()
            .map(|link| {
                let mut a = vec![0.0; n];
                for (col, coeff) in a.iter_mut().enumerate() {
                    if path_of(col).contains(&link) {
                        *coeff = 1.0;
                    }
                }
                (a, cap_of[&link])
            })
            .collect()
    };

    match mode {
        DemandMode::Elastic => {
            if n == 0 {
                return Oracle::Value(0.0);
            }
            let mut ineq = capacity_rows();
            for (l, (rate, paths)) in session_paths.iter().enumerate() {
                if paths.is_empty() {
                    continue;
                }
                let mut a = vec![0.0; n];
                for (col, coeff) in a.iter_mut().enumerate() {
                    if columns[col].0 == l {
                        *coeff = 1.0;
                    }
                }
                ineq.push((a, *rate));
            }
            let maximize = (0..n)
                .map(|col| price - cost * path_of(col).len() as f64)
                .collect();
            match vertex_max(&DenseLp { maximize, ineq, eq: vec![] }) {
                VertexMax::Optimal(v) => Oracle::Value(v),
                VertexMax::Empty => unreachable!("zero flow is always allowed"),
                VertexMax::TooBig => Oracle::TooBig,
            }
        }
        DemandMode::Strict => {
            // Each session is pinned to the rate it could reach with the
            // whole coalition network to itself.
            let mut pinned = Vec::new();
            for (l, (rate, paths)) in session_paths.iter().enumerate() {
                if paths.is_empty() {
                    pinned.push(0.0);
                    continue;
                }
                let own: Vec<usize> = (0..n).filter(|c| columns[*c].0 == l).collect();
                let mut used: BTreeSet<(u32, u32)> = BTreeSet::new();
                for &col in &own {
                    used.extend(path_of(col).iter().copied());
                }
                let ineq = used
                    .into_iter()
                    .map(|link| {
                        let mut a = vec![0.0; own.len()];
                        for (j, &col) in own.iter().enumerate() {
                            if path_of(col).contains(&link) {
                                a[j] = 1.0;
                            }
                        }
                        (a, cap_of[&link])
                    })
                    .collect();
                let lp = DenseLp { maximize: vec![1.0; own.len()], ineq, eq: vec![] };
                match vertex_max(&lp) {
                    VertexMax::Optimal(flow) => pinned.push(flow.min(*rate)),
                    VertexMax::Empty => unreachable!("zero flow is always allowed"),
                    VertexMax::TooBig => return Oracle::TooBig,
                }
            }
            let booked: f64 = price * pinned.iter().sum::<f64>();
            if n == 0 {
                return Oracle::Value(booked);
            }
            let mut eq = Vec::new();
            for (l, (_, paths)) in session_paths.iter().enumerate() {
                if paths.is_empty() {
                    continue;
                }
                let mut a = vec![0.0; n];
                for (col, coeff) in a.iter_mut().enumerate() {
                    if columns[col].0 == l {
                        *coeff = 1.0;
                    }
                }
                eq.push((a, pinned[l]));
            }
            let maximize: Vec<f64> =
                (0..n).map(|col| -cost * path_of(col).len() as f64).collect();
            match vertex_max(&DenseLp { maximize, ineq: capacity_rows(), eq }) {
                VertexMax::Optimal(v) => Oracle::Value(booked + v),
                VertexMax::Empty => Oracle::Infeasible,
                VertexMax::TooBig => Oracle::TooBig,
            }
        }
    }
}

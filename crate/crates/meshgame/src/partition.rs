//! Set partitions of the provider set ("coalition structures") and the
//! payoff matrix comparing both allocation rules across all of them.

use crate::allocation::{dual_payoff_within, shapley_within};
use crate::error::{Error, Result};
use crate::game::CharacteristicFunction;
use crate::net::{Coalition, Network, ProviderId};
use std::fmt;

/// A partition of providers into disjoint nonempty coalitions. Blocks are
/// kept sorted by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionStructure {
    blocks: Vec<Coalition>,
}

impl CoalitionStructure {
    pub fn new(mut blocks: Vec<Coalition>) -> Result<Self> {
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidCoalition(
                "a coalition structure may not contain an empty block".into(),
            ));
        }
        let mut seen = Coalition::empty();
        for &b in &blocks {
            if !seen.is_disjoint(b) {
                return Err(Error::InvalidCoalition(format!(
                    "structure blocks overlap at {}",
                    seen.intersection(b)
                )));
            }
            seen = seen.union(b);
        }
        blocks.sort_by_key(|b| b.members().next().unwrap());
        Ok(CoalitionStructure { blocks })
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn block_of(&self, m: ProviderId) -> Option<Coalition> {
        self.blocks.iter().copied().find(|b| b.contains(m))
    }

    /// Union of every block.
    pub fn covered(&self) -> Coalition {
        self.blocks
            .iter()
            .fold(Coalition::empty(), |a, &b| a.union(b))
    }

    fn sort_key(&self) -> (usize, Vec<Vec<ProviderId>>) {
        (
            usize::MAX - self.blocks.len(),
            self.blocks.iter().map(|b| b.members().collect()).collect(),
        )
    }
}

impl fmt::Display for CoalitionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// Number of set partitions of `m` elements, by the Bell triangle.
/// Overflows u64 past `m = 25`, far beyond the enumeration guard.
pub fn bell_number(m: u32) -> u64 {
    assert!(m <= 25, "Bell number overflows u64");
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// Every partition of providers `1..=m`, in canonical order: most blocks
/// first, ties broken lexicographically by sorted block contents. The
/// all-singleton structure is therefore first and the grand coalition
/// last.
pub fn enumerate_partitions(m: u32) -> Result<Vec<CoalitionStructure>> {
    if m == 0 {
        return Err(Error::InvalidParams(
            "cannot partition an empty provider set".into(),
        ));
    }
    const GUARD: u32 = 12;
    if m > GUARD {
        return Err(Error::TooManyProviders(m, GUARD));
    }
    let n = m as usize;
    let mut out = Vec::with_capacity(bell_number(m) as usize);
    // Walk restricted growth strings: rgs[0] = 0 and each later entry may
    // exceed the running maximum by at most one.
    let mut rgs = vec![0u32; n];
    loop {
        let n_blocks = *rgs.iter().max().unwrap() as usize + 1;
        let mut masks = vec![0u32; n_blocks];
        for (i, &b) in rgs.iter().enumerate() {
            masks[b as usize] |= 1 << i;
        }
        out.push(CoalitionStructure::new(
            masks.into_iter().map(Coalition::from_mask).collect(),
        )?);

        let mut i = n - 1;
        loop {
            if i == 0 {
                out.sort_by_cached_key(CoalitionStructure::sort_key);
                return Ok(out);
            }
            let prefix_max = *rgs[..i].iter().max().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                rgs[i + 1..].fill(0);
                break;
            }
            i -= 1;
        }
    }
}

/// One row of the payoff matrix: a structure, both per-provider
/// allocations under it, and its aggregated worth.
#[derive(Clone, Debug)]
pub struct StructureRow {
    pub structure: CoalitionStructure,
    /// Dual-price payoff by provider id, each block priced by its own
    /// routing program.
    pub dual: Vec<f64>,
    /// Shapley payoff by provider id, each block treated as a standalone
    /// sub-game.
    pub shapley: Vec<f64>,
    /// Sum of the blocks' values.
    pub total: f64,
}

#[derive(Clone, Debug)]
pub struct PayoffMatrix {
    pub providers: u32,
    pub rows: Vec<StructureRow>,
}

impl PayoffMatrix {
    /// The row whose structure is the single grand-coalition block.
    pub fn grand_row(&self) -> &StructureRow {
        self.rows.last().unwrap()
    }
}

/// Evaluates every coalition structure of the game: blocks do not trade
/// with each other, so each is allocated independently and the structure
/// is worth the sum of its blocks.
pub fn structure_table(network: &Network, cf: &CharacteristicFunction) -> Result<PayoffMatrix> {
    let m = cf.providers();
    if network.providers() != m {
        return Err(Error::InvalidParams(format!(
            "network has {} providers but the game has {m}",
            network.providers()
        )));
    }
    let structures = enumerate_partitions(m)?;
    let mut rows = Vec::with_capacity(structures.len());
    for structure in structures {
        let mut dual = vec![0.0; m as usize];
        let mut shapley = vec![0.0; m as usize];
        let mut total = 0.0;
        for &block in structure.blocks() {
            total += cf.value(block);
            for (p, mu) in dual_payoff_within(network, cf, block)? {
                dual[p as usize - 1] = mu;
            }
            for (p, phi) in shapley_within(cf, block)? {
                shapley[p as usize - 1] = phi;
            }
        }
        rows.push(StructureRow {
            structure,
            dual,
            shapley,
            total,
        });
    }
    Ok(PayoffMatrix { providers: m, rows })
}

//! Balanced bin packing: put `mu` items into `B` bins of capacity `C`, each
//! bin holding exactly `mu / B` items.
//!
//! Game layout: bag agents come in pairs, `2j` and `2j + 1` for bin `j`;
//! item agent `2B + i` stands for value `i`.

use crate::game::{Game, Mode, SizeBound};
use crate::reductions::ReductionError;

pub const SOURCE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinPackingInstance {
    values: Vec<u64>,
    bins: usize,
    capacity: u64,
}

impl BinPackingInstance {
    /// Requires the values to fill all bins exactly and the item count to
    /// be a multiple of the bin count.
    pub fn new(values: Vec<u64>, bins: usize, capacity: u64) -> Result<Self, ReductionError> {
        if values.is_empty() {
            return Err(ReductionError::Empty);
        }
        if values.contains(&0) {
            return Err(ReductionError::NonPositiveValue);
        }
        if bins == 0 {
            return Err(ReductionError::NoBins);
        }
        let sum: u64 = values.iter().try_fold(0u64, |a, &v| a.checked_add(v)).ok_or(ReductionError::Overflow)?;
        let expected = (bins as u64).checked_mul(capacity).ok_or(ReductionError::Overflow)?;
        if sum != expected {
            return Err(ReductionError::SumMismatch { sum, bins, capacity, expected });
        }
        if values.len() % bins != 0 {
            return Err(ReductionError::Unbalanced { items: values.len(), bins });
        }
        Ok(BinPackingInstance { values, bins, capacity })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn per_bin(&self) -> usize {
        self.values.len() / self.bins
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinPackingVariant {
    /// Exactly `B` coalitions, no size bounds.
    KAshg,
    /// `lb = ub = mu / B`. No structure fits these bounds, since the `2B` bag
    /// agents need room too, so construction fails.
    SccVerbatim,
    /// `lb = ub = mu / B + 2`: every coalition holds one bag pair and its
    /// share of items.
    SccCorrected,
}

pub fn gen_bin_packing(inst: &BinPackingInstance, variant: BinPackingVariant) -> Result<Game, ReductionError> {
    let b = inst.bins;
    let c = i64::try_from(inst.capacity).map_err(|_| ReductionError::Overflow)?;
    let cross = (b as i64).checked_mul(c).and_then(|x| x.checked_add(1)).ok_or(ReductionError::Overflow)?;
    let n = 2 * b + inst.values.len();
    let mut edges = Vec::new();
    for x in 0..2 * b {
        for y in x + 1..2 * b {
            edges.push((x, y, if x / 2 == y / 2 { -c } else { -cross }));
        }
    }
    for (i, &v) in inst.values.iter().enumerate() {
        let w = i64::try_from(v).map_err(|_| ReductionError::Overflow)?;
        for bag in 0..2 * b {
            edges.push((bag, 2 * b + i, w));
        }
    }
    let mode = match variant {
        BinPackingVariant::KAshg => Mode::KAshg,
        BinPackingVariant::SccVerbatim => Mode::Scc(vec![SizeBound::new(inst.per_bin(), inst.per_bin()); b]),
        BinPackingVariant::SccCorrected => Mode::Scc(vec![SizeBound::new(inst.per_bin() + 2, inst.per_bin() + 2); b]),
    };
    Ok(Game::symmetric(n, b, mode, edges)?)
}

/// Exhaustive search over bin labels for every item. With `balanced`,
/// every bin must also get exactly `mu / B` items.
pub fn source_oracle_bin_packing(inst: &BinPackingInstance, balanced: bool) -> Result<bool, ReductionError> {
    let mu = inst.values.len();
    if mu > SOURCE_LIMIT {
        return Err(ReductionError::TooLarge { what: "item list", size: mu, limit: SOURCE_LIMIT });
    }
    Ok(crate::partition::LabeledAssignments::new(mu, inst.bins).any(|labels| {
        let mut load = vec![0u64; inst.bins];
        let mut count = vec![0usize; inst.bins];
        for (i, &j) in labels.iter().enumerate() {
            load[j] += inst.values[i];
            count[j] += 1;
        }
        load.iter().all(|&l| l <= inst.capacity) && (!balanced || count.iter().all(|&c| c == inst.per_bin()))
    }))
}

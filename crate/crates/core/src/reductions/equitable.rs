//! Equitable partition: split `2l` positive values into two halves of `l`
//! values each with equal sums.
//!
//! Game layout: agents 0..4 are the set agents `x_S, y_S, x_notS, y_notS`,
//! agent `4 + i` is the item agent of value `i`.

use crate::game::{Game, Mode, SizeBound};
use crate::reductions::ReductionError;

pub const SOURCE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitablePartitionInstance {
    values: Vec<u64>,
}

impl EquitablePartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self, ReductionError> {
        if values.is_empty() {
            return Err(ReductionError::Empty);
        }
        if values.contains(&0) {
            return Err(ReductionError::NonPositiveValue);
        }
        if values.len() % 2 == 1 {
            return Err(ReductionError::OddCount(values.len()));
        }
        let sum: u64 = values.iter().try_fold(0u64, |a, &v| a.checked_add(v)).ok_or(ReductionError::Overflow)?;
        if sum % 2 == 1 {
            return Err(ReductionError::OddSum(sum));
        }
        Ok(EquitablePartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Half the number of values.
    pub fn ell(&self) -> usize {
        self.values.len() / 2
    }

    /// Half the total.
    pub fn t(&self) -> u64 {
        self.values.iter().sum::<u64>() / 2
    }

    /// Every subset of at most `l - 1` values sums to less than `t`. With
    /// positive values it suffices to look at the `l - 1` largest.
    pub fn check_promise(&self) -> Result<(), ReductionError> {
        let mut sorted = self.values.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let limit = self.ell() - 1;
        let sum: u64 = sorted[..limit].iter().sum();
        if sum >= self.t() {
            return Err(ReductionError::PromiseViolated { size: limit, sum });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EquitableOptions {
    /// Generate even when small subsets reach half the total.
    pub skip_promise_check: bool,
    /// Emit the size-constrained form with bounds `[1, n]` on both coalitions.
    pub scc: bool,
}

pub fn gen_equitable_partition(inst: &EquitablePartitionInstance, opts: EquitableOptions) -> Result<Game, ReductionError> {
    if !opts.skip_promise_check {
        inst.check_promise()?;
    }
    let t = i64::try_from(inst.t()).map_err(|_| ReductionError::Overflow)?;
    let heavy = t.checked_mul(-3).ok_or(ReductionError::Overflow)?;
    let n = 4 + inst.values.len();
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let designated = (a, b) == (0, 1) || (a, b) == (2, 3);
            edges.push((a, b, if designated { -t } else { heavy }));
        }
    }
    for (i, &v) in inst.values.iter().enumerate() {
        let w = i64::try_from(v).map_err(|_| ReductionError::Overflow)?;
        for s in 0..4 {
            edges.push((s, 4 + i, w));
        }
    }
    let mode = if opts.scc { Mode::Scc(vec![SizeBound::new(1, n); 2]) } else { Mode::KAshg };
    Ok(Game::symmetric(n, 2, mode, edges)?)
}

/// Exhaustive search over subsets of size `l`.
pub fn source_oracle_equitable(inst: &EquitablePartitionInstance) -> Result<bool, ReductionError> {
    let m = inst.values.len();
    if m > SOURCE_LIMIT {
        return Err(ReductionError::TooLarge { what: "multiset", size: m, limit: SOURCE_LIMIT });
    }
    let t = inst.t();
    Ok((0u32..1 << m).any(|mask| {
        mask.count_ones() as usize == inst.ell()
            && (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| inst.values[i]).sum::<u64>() == t
    }))
}

//! Exact feasibility by depth-first branch and bound with row-wise bound
//! propagation over integer boxes.

use crate::ilp::model::{IlpModel, Row};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    Feasible(Vec<i64>),
    Infeasible,
}

impl IlpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, IlpOutcome::Feasible(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BnbStats {
    pub nodes: u64,
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Tightens `dom` against one row. Returns `false` if the row cannot hold.
fn propagate_row(row: &Row, dom: &mut [(i64, i64)], changed: &mut bool) -> bool {
    let mut min_act: i128 = 0;
    let mut max_act: i128 = 0;
    for &(v, c) in &row.terms {
        let (lo, hi) = (dom[v].0 as i128, dom[v].1 as i128);
        let c = c as i128;
        if c > 0 {
            min_act += c * lo;
            max_act += c * hi;
        } else {
            min_act += c * hi;
            max_act += c * lo;
        }
    }
    if row.upper.is_some_and(|u| min_act > u as i128) || row.lower.is_some_and(|l| max_act < l as i128) {
        return false;
    }
    for &(v, c) in &row.terms {
        let (lo, hi) = (dom[v].0 as i128, dom[v].1 as i128);
        let c = c as i128;
        let (own_min, own_max) = if c > 0 { (c * lo, c * hi) } else { (c * hi, c * lo) };
        let mut new_lo = lo;
        let mut new_hi = hi;
        if let Some(u) = row.upper {
            // c·x <= u - (min_act - own_min)
            let slack = u as i128 - (min_act - own_min);
            if c > 0 {
                new_hi = new_hi.min(floor_div(slack, c));
            } else {
                new_lo = new_lo.max(ceil_div(slack, c));
            }
        }
        if let Some(l) = row.lower {
            // c·x >= l - (max_act - own_max)
            let need = l as i128 - (max_act - own_max);
            if c > 0 {
                new_lo = new_lo.max(ceil_div(need, c));
            } else {
                new_hi = new_hi.min(floor_div(need, c));
            }
        }
        if new_lo > new_hi {
            return false;
        }
        if new_lo != lo || new_hi != hi {
            dom[v] = (new_lo as i64, new_hi as i64);
            *changed = true;
            // activities are stale now; the caller loops to a fixpoint
            return true;
        }
    }
    true
}

fn propagate(rows: &[&Row], dom: &mut [(i64, i64)]) -> bool {
    loop {
        let mut changed = false;
        for row in rows {
            if !propagate_row(row, dom, &mut changed) {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn branch(rows: &[&Row], dom: &mut Vec<(i64, i64)>, stats: &mut BnbStats) -> bool {
    stats.nodes += 1;
    if !propagate(rows, dom) {
        return false;
    }
    let Some(v) = dom.iter().position(|&(lo, hi)| lo < hi) else {
        return true;
    };
    let (lo, hi) = dom[v];
    let mid = lo + (hi - lo) / 2;
    for part in [(mid + 1, hi), (lo, mid)] {
        let saved = dom.clone();
        dom[v] = part;
        if branch(rows, dom, stats) {
            return true;
        }
        *dom = saved;
    }
    false
}

pub fn solve_model_with_stats(model: &IlpModel) -> (IlpOutcome, BnbStats) {
    let mut stats = BnbStats::default();
    let rows: Vec<&Row> = model.rows().collect();
    let mut dom: Vec<(i64, i64)> = model.vars.iter().map(|v| (v.lower, v.upper)).collect();
    if dom.iter().any(|&(lo, hi)| lo > hi) || !branch(&rows, &mut dom, &mut stats) {
        return (IlpOutcome::Infeasible, stats);
    }
    let x: Vec<i64> = dom.iter().map(|&(lo, _)| lo).collect();
    assert!(model.is_satisfied(&x), "branch and bound returned an assignment violating the model");
    (IlpOutcome::Feasible(x), stats)
}

pub fn solve_model(model: &IlpModel) -> IlpOutcome {
    solve_model_with_stats(model).0
}

//! Enumeration of set partitions (restricted growth strings) and of labeled
//! assignments, both in lexicographic order.

/// Restricted growth strings of length `n` using at most `max_blocks` block
/// labels: `a[0] = 0` and `a[i] <= max(a[..i]) + 1`. Each unlabeled partition
/// into at most `max_blocks` blocks appears exactly once.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize, max_blocks: usize) -> Self {
        RestrictedGrowth { current: vec![0; n], max_blocks, started: false, done: n > 0 && max_blocks == 0 }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        // prefix maxima
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.current[i - 1]);
        }
        for i in (1..n).rev() {
            let cap = (prefix_max[i] + 1).min(self.max_blocks - 1);
            if self.current[i] < cap {
                self.current[i] += 1;
                for x in &mut self.current[i + 1..] {
                    *x = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Every map `0..n -> 0..k`, lexicographically (`k^n` items).
#[derive(Debug, Clone)]
pub struct LabeledAssignments {
    current: Vec<usize>,
    k: usize,
    started: bool,
    done: bool,
}

impl LabeledAssignments {
    pub fn new(n: usize, k: usize) -> Self {
        LabeledAssignments { current: vec![0; n], k, started: false, done: n > 0 && k == 0 }
    }
}

impl Iterator for LabeledAssignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started {
            let mut i = self.current.len();
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.current[i] + 1 < self.k {
                    self.current[i] += 1;
                    for x in &mut self.current[i + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Number of blocks used by a restricted growth string.
pub fn block_count(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |m| m + 1)
}

/// Guesses for how vertex-cover agents split across `k` coalitions. When
/// labels are interchangeable (exactly-k games) unlabeled partitions into at
/// most `k` blocks suffice; size-constrained games need every labeling.
pub fn cover_guesses(theta: usize, k: usize, labeled: bool) -> Box<dyn Iterator<Item = Vec<usize>>> {
    if labeled {
        Box::new(LabeledAssignments::new(theta, k))
    } else {
        Box::new(RestrictedGrowth::new(theta, k))
    }
}

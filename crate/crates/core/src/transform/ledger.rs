use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

/// Which part of an algorithm a transform is charged to.
///
/// `Base` covers the base-case computations (`g_[0]`, `h`), `Block` the
/// blockwise iteration whose counts are checked exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    Block,
    Base,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Counts of forward and inverse transforms by length, split by [`Phase`].
///
/// Counters only ever increase. Pass one ledger per task and merge afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformLedger {
    phase: Phase,
    counts: BTreeMap<(Phase, Direction, usize), u64>,
}

impl Default for TransformLedger {
    fn default() -> Self {
        TransformLedger::new()
    }
}

impl TransformLedger {
    pub fn new() -> Self {
        TransformLedger {
            phase: Phase::Block,
            counts: BTreeMap::new(),
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn record(&mut self, direction: Direction, len: usize) {
        *self.counts.entry((self.phase, direction, len)).or_insert(0) += 1;
    }

    /// Runs `f` with transforms charged to `phase`, restoring the previous phase.
    pub fn scoped<T>(&mut self, phase: Phase, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = std::mem::replace(&mut self.phase, phase);
        let out = f(self);
        self.phase = saved;
        out
    }

    pub fn count(&self, phase: Phase, direction: Direction, len: usize) -> u64 {
        self.counts
            .get(&(phase, direction, len))
            .copied()
            .unwrap_or(0)
    }

    /// Block-phase forward transforms of length `len`.
    pub fn forward(&self, len: usize) -> u64 {
        self.count(Phase::Block, Direction::Forward, len)
    }

    /// Block-phase inverse transforms of length `len`.
    pub fn inverse(&self, len: usize) -> u64 {
        self.count(Phase::Block, Direction::Inverse, len)
    }

    pub fn total(&self, phase: Phase, direction: Direction) -> u64 {
        self.counts
            .iter()
            .filter(|((p, d, _), _)| *p == phase && *d == direction)
            .map(|(_, c)| c)
            .sum()
    }

    /// Total count over both directions and phases.
    pub fn total_transforms(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Per-length counts for one phase and direction.
    pub fn by_length(&self, phase: Phase, direction: Direction) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .filter(|((p, d, _), _)| *p == phase && *d == direction)
            .map(|((_, _, len), c)| (*len, *c))
            .collect()
    }

    /// Transform lengths touched in `phase`.
    pub fn lengths(&self, phase: Phase) -> Vec<usize> {
        let lengths: BTreeSet<usize> = self
            .counts
            .keys()
            .filter(|(p, _, _)| *p == phase)
            .map(|(_, _, len)| *len)
            .collect();
        lengths.into_iter().collect()
    }

    /// `sum(len * log2(len))` over the transforms of `phase`.
    pub fn weighted_cost(&self, phase: Phase) -> f64 {
        self.counts
            .iter()
            .filter(|((p, _, _), _)| *p == phase)
            .fold(0.0, |acc, ((_, _, len), c)| {
                acc + *c as f64 * transform_weight(*len)
            })
    }

    pub fn merge(&mut self, other: &TransformLedger) {
        for (key, c) in &other.counts {
            *self.counts.entry(*key).or_insert(0) += c;
        }
    }

    /// Counts accumulated since `earlier`, which must be a prior snapshot of `self`.
    pub fn since(&self, earlier: &TransformLedger) -> TransformLedger {
        let mut counts = BTreeMap::new();
        for (key, c) in &self.counts {
            let before = earlier.counts.get(key).copied().unwrap_or(0);
            debug_assert!(before <= *c, "ledger counts went backwards");
            if *c > before {
                counts.insert(*key, c - before);
            }
        }
        TransformLedger {
            phase: self.phase,
            counts,
        }
    }
}

/// Weight of one transform of length `len` in cost units: `len * log2(len)`.
pub fn transform_weight(len: usize) -> f64 {
    let n = len as f64;
    n * n.log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_phase_restores() {
        let mut l = TransformLedger::new();
        l.record(Direction::Forward, 8);
        l.scoped(Phase::Base, |l| l.record(Direction::Inverse, 4));
        l.record(Direction::Inverse, 8);
        assert_eq!(l.forward(8), 1);
        assert_eq!(l.inverse(8), 1);
        assert_eq!(l.inverse(4), 0);
        assert_eq!(l.count(Phase::Base, Direction::Inverse, 4), 1);
        assert_eq!(l.phase(), Phase::Block);
    }

    #[test]
    fn since_subtracts_snapshot() {
        let mut l = TransformLedger::new();
        l.record(Direction::Forward, 8);
        let snap = l.clone();
        l.record(Direction::Forward, 8);
        l.record(Direction::Inverse, 16);
        let d = l.since(&snap);
        assert_eq!(d.forward(8), 1);
        assert_eq!(d.inverse(16), 1);
        assert_eq!(d.total_transforms(), 2);
    }

    #[test]
    fn weighted_cost_is_len_log_len() {
        let mut l = TransformLedger::new();
        l.record(Direction::Forward, 8);
        l.record(Direction::Inverse, 8);
        assert_eq!(l.weighted_cost(Phase::Block), 48.0);
        assert_eq!(l.weighted_cost(Phase::Base), 0.0);
    }
}

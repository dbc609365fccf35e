use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finitely supported vector of Betti numbers indexed by `i ≥ -2`.
///
/// Only nonzero entries are stored, so two vectors are equal iff they agree
/// at every index. Index `-1` carries the empty space `S^-1`, index `-2` the
/// formal symbol `S^-2` attached to the zero grade.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(BTreeMap<i32, u64>);

impl BettiVector {
    pub fn new() -> Self {
        BettiVector::default()
    }

    /// Betti vector of `S^-1`, the empty complex.
    pub fn empty_space() -> Self {
        BettiVector::delta(-1)
    }

    /// Betti vector of the formal symbol `S^-2`.
    pub fn formal_minus_two() -> Self {
        BettiVector::delta(-2)
    }

    /// A single 1 at index `i`.
    pub fn delta(i: i32) -> Self {
        let mut v = BettiVector::new();
        v.set(i, 1);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, u64)>) -> Self {
        let mut v = BettiVector::new();
        for (i, b) in pairs {
            v.set(i, v.get(i) + b);
        }
        v
    }

    pub fn get(&self, i: i32) -> u64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: i32, value: u64) {
        if value == 0 {
            self.0.remove(&i);
        } else {
            self.0.insert(i, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Nonzero entries in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(&i, &b)| (i, b))
    }

    /// `v'_i = v_{i - by}`; suspension shifts by one.
    pub fn shift(&self, by: i32) -> Self {
        BettiVector(self.0.iter().map(|(&i, &b)| (i + by, b)).collect())
    }

    pub fn add_assign(&mut self, other: &BettiVector) {
        for (i, b) in other.iter() {
            self.set(i, self.get(i) + b);
        }
    }

    /// `Σ (-1)^i v_i`.
    pub fn alternating_sum(&self) -> i64 {
        self.iter()
            .map(|(i, b)| {
                if i.rem_euclid(2) == 0 {
                    b as i64
                } else {
                    -(b as i64)
                }
            })
            .sum()
    }

    pub fn max_index(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, b)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

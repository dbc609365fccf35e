//! Finite posets carried with an explicit strict-order relation.

use crate::complexes::{order_complex, SimplicialComplex};
use crate::error::Result;

/// A finite poset, typically an open interval `(0, λ)` of a monoid.
///
/// Elements are stored in a linear extension of the order (for monoid
/// intervals, lexicographic order), and the strict relation is kept as a
/// dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval<E> {
    elements: Vec<E>,
    less: Vec<bool>,
}

impl<E> Interval<E> {
    /// Builds the poset from a strict-order predicate.
    pub fn from_strict_order(elements: Vec<E>, lt: impl Fn(&E, &E) -> bool) -> Self {
        let n = elements.len();
        let mut less = vec![false; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                if i != j && lt(a, b) {
                    less[i * n + j] = true;
                }
            }
        }
        Interval { elements, less }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.less[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    /// Number of strictly comparable pairs.
    pub fn relation_count(&self) -> usize {
        self.less.iter().filter(|&&b| b).count()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        let idx: Vec<usize> = (0..self.len()).collect();
        order_complex(&idx, |&a, &b| self.leq(a, b))
    }
}

//! Slow, independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's order, interval or homology code:
//! membership is by enumerating generator combinations, the order on pairs
//! `(λ, k)` is by searching for a summand, chains are enumerated explicitly and
//! ranks come from dense Gaussian elimination.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// All elements of `⟨gens⟩ ⊆ ℕ` up to `bound`, by enumerating combinations.
pub fn numerical_elements(gens: &[u64], bound: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    fn go(gens: &[u64], bound: u64, acc: u64, out: &mut BTreeSet<u64>) {
        out.insert(acc);
        let Some((&g, rest)) = gens.split_first() else {
            return;
        };
        let mut x = acc;
        loop {
            go(rest, bound, x, out);
            x += g;
            if x > bound {
                break;
            }
        }
    }
    go(gens, bound, 0, &mut out);
    out
}

/// All elements of a submonoid of `ℕ^d` inside the box `≤ bound`.
pub fn affine_elements(gens: &[Vec<u64>], bound: &[u64]) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![vec![0; bound.len()]];
    while let Some(x) = frontier.pop() {
        if !out.insert(x.clone()) {
            continue;
        }
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if y.iter().zip(bound).all(|(a, b)| a <= b) {
                frontier.push(y);
            }
        }
    }
    out
}

/// A finite poset given by its elements and a `≤` predicate on indices.
pub struct Poset {
    pub size: usize,
    pub le: Vec<Vec<bool>>,
}

/// The open interval `(0, x)` of a numerical semigroup, as an explicit poset.
pub fn numerical_interval(gens: &[u64], x: u64) -> Poset {
    let set = numerical_elements(gens, x);
    let elems: Vec<u64> = set
        .iter()
        .copied()
        .filter(|&y| y > 0 && y < x && set.contains(&(x - y)))
        .collect();
    let le = elems
        .iter()
        .map(|&a| {
            elems
                .iter()
                .map(|&b| b >= a && set.contains(&(b - a)))
                .collect()
        })
        .collect();
    Poset {
        size: elems.len(),
        le,
    }
}

/// The open interval `(0, x)` of an affine monoid in `ℕ^d`.
pub fn affine_interval(gens: &[Vec<u64>], x: &[u64]) -> Poset {
    let set = affine_elements(gens, x);
    let sub = |a: &[u64], b: &[u64]| -> Option<Vec<u64>> {
        a.iter().zip(b).map(|(p, q)| p.checked_sub(*q)).collect()
    };
    let zero = vec![0; x.len()];
    let elems: Vec<Vec<u64>> = set
        .iter()
        .filter(|y| **y != zero && y.as_slice() != x)
        .filter(|y| sub(x, y).is_some_and(|d| set.contains(&d)))
        .cloned()
        .collect();
    let le = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| sub(b, a).is_some_and(|d| set.contains(&d)))
                .collect()
        })
        .collect();
    Poset {
        size: elems.len(),
        le,
    }
}

/// `(λ, k) + (μ, j)` in `Λ[ρ/r]` for numerical `Λ`.
fn ext_add(rho: u64, r: u32, a: (u64, u32), b: (u64, u32)) -> (u64, u32) {
    let k = a.1 + b.1;
    if k >= r {
        (a.0 + b.0 + rho, k - r)
    } else {
        (a.0 + b.0, k)
    }
}

/// The open interval below `(x, kx)` in `⟨gens⟩[ρ/r]`, with `≤` decided by
/// searching for a summand rather than by the closed-form order.
pub fn ext_interval(gens: &[u64], rho: u64, r: u32, x: (u64, u32)) -> Poset {
    let set = numerical_elements(gens, x.0 + rho);
    let pairs: Vec<(u64, u32)> = set
        .iter()
        .filter(|&&l| l <= x.0)
        .flat_map(|&l| (0..r).map(move |k| (l, k)))
        .collect();
    let le_pair = |a: (u64, u32), b: (u64, u32)| pairs.iter().any(|&m| ext_add(rho, r, a, m) == b);
    let elems: Vec<(u64, u32)> = pairs
        .iter()
        .copied()
        .filter(|&p| p != (0, 0) && p != x && le_pair(p, x))
        .collect();
    let le = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| le_pair(a, b)).collect())
        .collect();
    Poset {
        size: elems.len(),
        le,
    }
}

/// Every nonempty chain, as a list of element indices in increasing order.
pub fn chains(poset: &Poset) -> Vec<Vec<usize>> {
    let n = poset.size;
    let lt = |a: usize, b: usize| a != b && poset.le[a][b];
    let mut out = Vec::new();
    fn extend(
        chain: &mut Vec<usize>,
        n: usize,
        lt: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chain.clone());
        let last = *chain.last().unwrap();
        for next in 0..n {
            if lt(last, next) {
                chain.push(next);
                extend(chain, n, lt, out);
                chain.pop();
            }
        }
    }
    for start in 0..n {
        extend(&mut vec![start], n, &lt, &mut out);
    }
    out
}

/// Faces grouped by dimension, each sorted by vertex set.
fn by_dimension(simplices: Vec<Vec<usize>>) -> Vec<Vec<Vec<usize>>> {
    let mut levels: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for mut s in simplices {
        s.sort_unstable();
        levels.entry(s.len() - 1).or_default().insert(s);
    }
    levels
        .into_values()
        .map(|l| l.into_iter().collect())
        .collect()
}

/// Coefficient ring for dense elimination: a prime field, or ℚ when `p = 0`.
#[derive(Clone, Copy)]
pub enum Coeffs {
    Mod(i64),
    Q,
}

fn rank_mod(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(p) != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = (1..p)
            .find(|&x| (x * m[rank][c]).rem_euclid(p) == 1)
            .unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c].rem_euclid(p) != 0 {
                let f = (m[r][c] * inv).rem_euclid(p);
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_q(m: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = BigRational::one() / m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() * inv.clone();
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank(m: Vec<Vec<i64>>, coeffs: Coeffs) -> usize {
    match coeffs {
        Coeffs::Mod(p) => rank_mod(m, p),
        Coeffs::Q => rank_q(m),
    }
}

/// Reduced Betti numbers of a complex given by all of its simplices, as a
/// sparse map. The empty complex gives `{-1: 1}`.
pub fn reduced_betti(simplices: Vec<Vec<usize>>, coeffs: Coeffs) -> BTreeMap<i32, u64> {
    let mut out = BTreeMap::new();
    if simplices.is_empty() {
        out.insert(-1, 1);
        return out;
    }
    let levels = by_dimension(simplices);
    // ranks[i] = rank of ∂_i : C_i → C_{i-1}; ∂_0 is the augmentation.
    let mut ranks = vec![1usize];
    for dim in 1..levels.len() {
        let rows = &levels[dim - 1];
        let index: BTreeMap<&Vec<usize>, usize> =
            rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = vec![vec![0i64; levels[dim].len()]; rows.len()];
        for (c, s) in levels[dim].iter().enumerate() {
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                m[index[&face]][c] = if skip % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks.push(rank(m, coeffs));
    }
    for (i, level) in levels.iter().enumerate() {
        let b = level.len() - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0);
        if b != 0 {
            out.insert(i as i32, b as u64);
        }
    }
    out
}

/// Reduced Betti numbers of the order complex of `poset`.
pub fn poset_betti(poset: &Poset, coeffs: Coeffs) -> BTreeMap<i32, u64> {
    reduced_betti(chains(poset), coeffs)
}

/// Frobenius-complex Betti numbers of a numerical semigroup at `x`, with the
/// `{-2: 1}` convention at zero.
pub fn numerical_frobenius(gens: &[u64], x: u64, coeffs: Coeffs) -> BTreeMap<i32, u64> {
    if x == 0 {
        return BTreeMap::from([(-2, 1)]);
    }
    poset_betti(&numerical_interval(gens, x), coeffs)
}

/// Truncated Poincaré series of `⟨gens⟩`, keyed by `(grade, i)`.
pub fn numerical_series(gens: &[u64], cap: u64, coeffs: Coeffs) -> BTreeMap<(u64, u32), u64> {
    let mut out = BTreeMap::new();
    for x in numerical_elements(gens, cap) {
        for (i, b) in numerical_frobenius(gens, x, coeffs) {
            out.insert((x, (i + 2) as u32), b);
        }
    }
    out
}

/// Coefficients of `∏(1 + t^a z^g) / ∏(1 - t^a z^g)` up to `cap` by naive
/// polynomial multiplication in `ℕ`.
pub fn naive_expand(num: &[(u32, u64)], den: &[(u32, u64)], cap: u64) -> BTreeMap<(u64, u32), u64> {
    let mut acc: BTreeMap<(u64, u32), u64> = BTreeMap::from([((0, 0), 1)]);
    let mul = |acc: &BTreeMap<(u64, u32), u64>, factor: &[(u64, u32)]| {
        let mut out = BTreeMap::new();
        for (&(g, i), &c) in acc {
            for &(h, j) in factor {
                if g + h <= cap {
                    *out.entry((g + h, i + j)).or_insert(0) += c;
                }
            }
        }
        out
    };
    for &(a, g) in num {
        acc = mul(&acc, &[(0, 0), (g, a)]);
    }
    for &(a, g) in den {
        let geo: Vec<(u64, u32)> = (0..)
            .map(|j| (j * g, j as u32 * a))
            .take_while(|&(h, _)| h <= cap)
            .collect();
        acc = mul(&acc, &geo);
    }
    acc
}

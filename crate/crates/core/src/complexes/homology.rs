//! Reduced homology by exact rank computation on boundary matrices.
//!
//! Boundary matrices are reduced column by column (increasing column index,
//! pivot = largest row index). Dimensions are processed from the top down so
//! that columns already known to be pivot rows of the next boundary map can be
//! skipped ("clearing"): such a column is a combination of earlier columns and
//! contributes nothing to the rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BettiVector, Field, SimplicialComplex};

const NO_PIVOT: u32 = u32::MAX;

/// Reduced Betti numbers of `complex` over `field`.
///
/// The empty complex yields `{-1: 1}`; otherwise the augmented chain complex
/// is used, so `β̃_0` is the number of components minus one.
pub fn reduced_betti(complex: &SimplicialComplex, field: Field) -> BettiVector {
    let Some(top) = complex.dimension() else {
        return BettiVector::empty_space();
    };
    let ranks = boundary_ranks(complex, field);
    let mut betti = BettiVector::new();
    for i in 0..=top {
        let kernel = complex.count(i) - ranks[i];
        let image = ranks.get(i + 1).copied().unwrap_or(0);
        betti.set(i as i32, (kernel - image) as u64);
    }
    betti
}

/// `rank ∂_i` for `i = 0..=top`, where `∂_0` is the augmentation.
pub fn boundary_ranks(complex: &SimplicialComplex, field: Field) -> Vec<usize> {
    let Some(top) = complex.dimension() else {
        return Vec::new();
    };
    let mut ranks = vec![0; top + 1];
    ranks[0] = 1;
    let mut cleared: Vec<bool> = Vec::new();
    for dim in (1..=top).rev() {
        let (rank, pivots) = match field {
            Field::Gf2 => reduce_gf2(complex, dim, &cleared),
            Field::Prime(p) => reduce_generic(complex, dim, &cleared, &ModP(p as u64)),
            Field::Rational => reduce_generic(complex, dim, &cleared, &Rationals),
        };
        ranks[dim] = rank;
        cleared = pivots;
    }
    ranks
}

/// Reduced Euler characteristic `Σ_{i≥0} (-1)^i f_i - 1`.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    let mut chi = -1i64;
    for (i, f) in complex.f_vector().into_iter().enumerate() {
        if i % 2 == 0 {
            chi += f as i64;
        } else {
            chi -= f as i64;
        }
    }
    chi
}

/// Reduces `∂_dim` over GF(2). Returns the rank and the rows hit by pivots.
fn reduce_gf2(complex: &SimplicialComplex, dim: usize, cleared: &[bool]) -> (usize, Vec<bool>) {
    let rows = complex.count(dim - 1);
    let mut owner = vec![NO_PIVOT; rows];
    let mut stored: Vec<Vec<u32>> = Vec::new();
    let mut is_pivot = vec![false; rows];
    let (mut prefix, mut face_rows) = (Vec::new(), Vec::new());
    let mut col: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();

    for (c, simplex) in complex.simplices(dim).enumerate() {
        if cleared.get(c).copied().unwrap_or(false) {
            continue;
        }
        complex.face_indices(simplex, &mut prefix, &mut face_rows);
        col.clear();
        col.extend(face_rows.iter().map(|&(r, _)| r));
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == NO_PIVOT {
                owner[low as usize] = stored.len() as u32;
                is_pivot[low as usize] = true;
                stored.push(col.clone());
                break;
            }
            xor_into(&col, &stored[o as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
    }
    (stored.len(), is_pivot)
}

/// Symmetric difference of two sorted index lists.
fn xor_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

trait Coefficients {
    type Elem: Clone;

    fn sign(&self, negative: bool) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg_mul(&self, f: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct ModP(u64);

impl ModP {
    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (a % self.0, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            exp >>= 1;
        }
        acc
    }
}

impl Coefficients for ModP {
    type Elem = u64;

    fn sign(&self, negative: bool) -> u64 {
        if negative {
            self.0 - 1
        } else {
            1
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn div(&self, a: &u64, b: &u64) -> u64 {
        a * self.inv(*b) % self.0
    }

    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        (a + self.0 - f * b % self.0) % self.0
    }

    fn neg_mul(&self, f: &u64, b: &u64) -> u64 {
        (self.0 - f * b % self.0) % self.0
    }
}

struct Rationals;

impl Coefficients for Rationals {
    type Elem = BigRational;

    fn sign(&self, negative: bool) -> BigRational {
        if negative {
            -BigRational::one()
        } else {
            BigRational::from_integer(BigInt::one())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }

    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }

    fn neg_mul(&self, f: &BigRational, b: &BigRational) -> BigRational {
        -(f * b)
    }
}

fn reduce_generic<C: Coefficients>(
    complex: &SimplicialComplex,
    dim: usize,
    cleared: &[bool],
    field: &C,
) -> (usize, Vec<bool>) {
    let rows = complex.count(dim - 1);
    let mut owner = vec![NO_PIVOT; rows];
    let mut stored: Vec<Vec<(u32, C::Elem)>> = Vec::new();
    let mut is_pivot = vec![false; rows];
    let (mut prefix, mut face_rows) = (Vec::new(), Vec::new());

    for (c, simplex) in complex.simplices(dim).enumerate() {
        if cleared.get(c).copied().unwrap_or(false) {
            continue;
        }
        complex.face_indices(simplex, &mut prefix, &mut face_rows);
        let mut col: Vec<(u32, C::Elem)> = face_rows
            .iter()
            .map(|&(r, skip)| (r, field.sign(skip % 2 == 1)))
            .collect();
        while let Some((low, low_coeff)) = col.last() {
            let o = owner[*low as usize];
            if o == NO_PIVOT {
                owner[*low as usize] = stored.len() as u32;
                is_pivot[*low as usize] = true;
                stored.push(col);
                break;
            }
            let pivot = &stored[o as usize];
            let factor = field.div(low_coeff, &pivot.last().expect("nonzero pivot column").1);
            col = sub_scaled(&col, &factor, pivot, field);
        }
    }
    (stored.len(), is_pivot)
}

/// `a - f * b` on sorted sparse columns.
fn sub_scaled<C: Coefficients>(
    a: &[(u32, C::Elem)],
    f: &C::Elem,
    b: &[(u32, C::Elem)],
    field: &C,
) -> Vec<(u32, C::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg_mul(f, &b[j].1)));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, f, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

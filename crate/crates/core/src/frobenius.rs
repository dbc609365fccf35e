//! Frobenius complexes, their Betti numbers and the verification harnesses
//! for the wedge decomposition of `Λ[ρ/r]`.
//!
//! The Frobenius complex of a nonzero grade `x` is the order complex of the
//! open interval `(0, x)`; the zero grade carries the formal symbol `S^-2`,
//! handled here before any complex is built. Tor dimensions follow from
//! `β_i(x) = β̃_{i-2}(F(x))`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complexes::{reduced_betti, BettiVector, Field, SimplicialComplex};
use crate::error::{Error, Result};
use crate::extension::{ExtElement, ExtMonoid};
use crate::interval::Interval;
use crate::monoid::{AffineMonoid, Element};

/// A monoid whose open intervals below each grade are computable.
pub trait FrobeniusSource: Sync {
    type Grade: Clone + Ord + Send + Sync + fmt::Display + fmt::Debug + Serialize;

    fn validate(&self, x: &Self::Grade) -> Result<()>;
    fn is_zero_grade(&self, x: &Self::Grade) -> bool;
    fn open_interval(&self, x: &Self::Grade) -> Result<Interval<Self::Grade>>;
    /// Every grade whose `ℕ^d` part lies below `cap`, in sorted order.
    fn grades_up_to(&self, cap: &Element) -> Result<Vec<Self::Grade>>;
    fn ambient_dim(&self) -> usize;
}

impl FrobeniusSource for AffineMonoid {
    type Grade = Element;

    fn validate(&self, x: &Element) -> Result<()> {
        self.require_member(x)
    }

    fn is_zero_grade(&self, x: &Element) -> bool {
        x.is_zero()
    }

    fn open_interval(&self, x: &Element) -> Result<Interval<Element>> {
        AffineMonoid::open_interval(self, x)
    }

    fn grades_up_to(&self, cap: &Element) -> Result<Vec<Element>> {
        self.elements_up_to(cap)
    }

    fn ambient_dim(&self) -> usize {
        self.dim()
    }
}

impl FrobeniusSource for ExtMonoid {
    type Grade = ExtElement;

    fn validate(&self, x: &ExtElement) -> Result<()> {
        self.check(x)
    }

    fn is_zero_grade(&self, x: &ExtElement) -> bool {
        x.is_zero()
    }

    fn open_interval(&self, x: &ExtElement) -> Result<Interval<ExtElement>> {
        ExtMonoid::open_interval(self, x)
    }

    fn grades_up_to(&self, cap: &Element) -> Result<Vec<ExtElement>> {
        self.elements_up_to(cap)
    }

    fn ambient_dim(&self) -> usize {
        self.base().dim()
    }
}

/// The Frobenius complex at `x`, or `None` for the formal `S^-2` at zero.
pub fn frobenius_complex<S: FrobeniusSource>(
    source: &S,
    x: &S::Grade,
) -> Result<Option<SimplicialComplex>> {
    source.validate(x)?;
    if source.is_zero_grade(x) {
        return Ok(None);
    }
    source.open_interval(x)?.order_complex().map(Some)
}

/// Reduced Betti numbers of the Frobenius complex at `x` (indices `≥ -2`).
pub fn frobenius_betti<S: FrobeniusSource>(
    source: &S,
    x: &S::Grade,
    field: Field,
) -> Result<BettiVector> {
    Ok(match frobenius_complex(source, x)? {
        None => BettiVector::formal_minus_two(),
        Some(complex) => reduced_betti(&complex, field),
    })
}

/// `β_i(x) = dim Tor_{i,x}(K, K)`, obtained as `β̃_{i-2}` of the Frobenius complex.
pub fn tor_betti<S: FrobeniusSource>(
    source: &S,
    x: &S::Grade,
    field: Field,
) -> Result<BettiVector> {
    Ok(frobenius_betti(source, x, field)?.shift(2))
}

fn check_cap(dim: usize, cap: &Element) -> Result<()> {
    if cap.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: cap.dim(),
        });
    }
    Ok(())
}

/// Tor dimensions for every grade below a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable<G: Ord> {
    pub field: Field,
    pub cap: Element,
    pub entries: BTreeMap<G, BettiVector>,
}

impl<G: Ord + Clone + fmt::Display> BettiTable<G> {
    pub fn get(&self, grade: &G) -> Option<&BettiVector> {
        self.entries.get(grade)
    }

    /// Grades with a nonzero Tor dimension.
    pub fn support(&self) -> impl Iterator<Item = &G> {
        self.entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, _)| g)
    }

    /// Relabels grades, e.g. through a realization isomorphism.
    pub fn map_grades<H: Ord>(&self, f: impl Fn(&G) -> H) -> BettiTable<H> {
        BettiTable {
            field: self.field,
            cap: self.cap.clone(),
            entries: self
                .entries
                .iter()
                .map(|(g, v)| (f(g), v.clone()))
                .collect(),
        }
    }

    /// Tab-separated `grade, i, betti` rows for the nonzero entries.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("grade\ti\tbetti\n");
        for (g, v) in &self.entries {
            for (i, b) in v.iter() {
                writeln!(out, "{g}\t{i}\t{b}").expect("writing to a String");
            }
        }
        out
    }
}

impl<G: Ord + Serialize> Serialize for BettiTable<G> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a, G> {
            grade: &'a G,
            betti: &'a BettiVector,
        }
        #[derive(Serialize)]
        struct Table<'a, G> {
            field: String,
            cap: &'a Element,
            entries: Vec<Entry<'a, G>>,
        }
        Table {
            field: self.field.to_string(),
            cap: &self.cap,
            entries: self
                .entries
                .iter()
                .map(|(grade, betti)| Entry { grade, betti })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Tor-indexed Betti vectors at every grade below `cap`.
pub fn betti_table<S: FrobeniusSource>(
    source: &S,
    cap: &Element,
    field: Field,
) -> Result<BettiTable<S::Grade>> {
    check_cap(source.ambient_dim(), cap)?;
    let grades = source.grades_up_to(cap)?;
    let values: Vec<BettiVector> = grades
        .par_iter()
        .map(|g| tor_betti(source, g, field))
        .collect::<Result<_>>()?;
    Ok(BettiTable {
        field,
        cap: cap.clone(),
        entries: grades.into_iter().zip(values).collect(),
    })
}

/// Reduced Betti numbers at `(λ, k)` predicted from the base monoid:
/// `Σ_{ℓ=0}^{ℓ_ρ(λ)} β̃_{i-2ℓ-k}(F(λ - ℓρ; Λ))` for `k ≤ 1`, zero for `k ≥ 2`.
pub fn predicted_ext_betti(ext: &ExtMonoid, x: &ExtElement, field: Field) -> Result<BettiVector> {
    ext.check(x)?;
    let mut total = BettiVector::new();
    if x.k >= 2 {
        return Ok(total);
    }
    let base = ext.base();
    let top = ext.ell_rho(&x.lambda)?;
    for ell in 0..=top {
        let step = ext.rho().times(ell);
        let rest = base
            .subtract(&x.lambda, &step)?
            .expect("ℓρ ≤ λ for every ℓ up to ℓ_ρ(λ)");
        let term = frobenius_betti(base, &rest, field)?;
        total.add_assign(&term.shift(2 * ell as i32 + x.k as i32));
    }
    Ok(total)
}

fn serialize_field<S: Serializer>(field: &Field, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&field.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeCheck {
    pub grade: ExtElement,
    pub direct: BettiVector,
    pub predicted: BettiVector,
    pub equal: bool,
}

/// Outcome of comparing direct homology with the wedge prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub extension: crate::extension::ExtSpec,
    pub cap: Element,
    #[serde(serialize_with = "serialize_field")]
    pub field: Field,
    pub grades: Vec<GradeCheck>,
    pub checked: usize,
    pub mismatches: usize,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &GradeCheck> {
        self.grades.iter().filter(|g| !g.equal)
    }
}

/// Compares, at every grade below `cap`, the Betti vector of the directly
/// built Frobenius complex of `Λ[ρ/r]` with [`predicted_ext_betti`]. The
/// sweep does not stop at the first mismatch.
pub fn verify_extension(
    ext: &ExtMonoid,
    cap: &Element,
    field: Field,
) -> Result<VerificationReport> {
    check_cap(ext.base().dim(), cap)?;
    let grades = ext.elements_up_to(cap)?;
    let checks: Vec<GradeCheck> = grades
        .into_par_iter()
        .map(|grade| {
            let direct = frobenius_betti(ext, &grade, field)?;
            let predicted = predicted_ext_betti(ext, &grade, field)?;
            let equal = direct == predicted;
            Ok(GradeCheck {
                grade,
                direct,
                predicted,
                equal,
            })
        })
        .collect::<Result<_>>()?;
    let mismatches = checks.iter().filter(|c| !c.equal).count();
    Ok(VerificationReport {
        extension: ext.to_spec(),
        cap: cap.clone(),
        field,
        checked: checks.len(),
        mismatches,
        pass: mismatches == 0,
        grades: checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionCheck {
    pub lambda: Element,
    /// Betti vector at `λ + ρ/2`.
    pub upper: BettiVector,
    /// Betti vector at `λ`.
    pub lower: BettiVector,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionReport {
    pub extension: crate::extension::ExtSpec,
    pub cap: Element,
    #[serde(serialize_with = "serialize_field")]
    pub field: Field,
    pub checks: Vec<SuspensionCheck>,
    pub mismatches: usize,
    pub pass: bool,
}

/// For `r = 2`: checks `β̃_i(F(λ + ρ/2)) = β̃_{i-1}(F(λ))` for every `λ ≤ cap`,
/// both sides by direct homology in `Λ[ρ/2]`.
pub fn check_suspension_prop(
    ext: &ExtMonoid,
    cap: &Element,
    field: Field,
) -> Result<SuspensionReport> {
    if ext.r() != 2 {
        return Err(Error::invalid(format!(
            "suspension check needs r = 2, got r = {}",
            ext.r()
        )));
    }
    check_cap(ext.base().dim(), cap)?;
    let lambdas = ext.base().elements_up_to(cap)?;
    let checks: Vec<SuspensionCheck> = lambdas
        .into_par_iter()
        .map(|lambda| {
            let upper = frobenius_betti(
                ext,
                &ExtElement {
                    lambda: lambda.clone(),
                    k: 1,
                },
                field,
            )?;
            let lower = frobenius_betti(
                ext,
                &ExtElement {
                    lambda: lambda.clone(),
                    k: 0,
                },
                field,
            )?;
            let equal = upper == lower.shift(1);
            Ok(SuspensionCheck {
                lambda,
                upper,
                lower,
                equal,
            })
        })
        .collect::<Result<_>>()?;
    let mismatches = checks.iter().filter(|c| !c.equal).count();
    Ok(SuspensionReport {
        extension: ext.to_spec(),
        cap: cap.clone(),
        field,
        mismatches,
        pass: mismatches == 0,
        checks,
    })
}

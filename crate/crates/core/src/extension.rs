//! The monoid `Λ[ρ/r]` obtained by adjoining an `r`-th part of a reducible
//! element `ρ`.
//!
//! Elements are pairs `(λ, k)` with `λ ∈ Λ` and `0 ≤ k < r`, standing for
//! `λ + kρ/r`; this pair form is a bijection onto `Λ[ρ/r]`. The order is
//!
//! ```text
//! (λ, k) ≤ (λ', k')  iff  λ ≤ λ'       when k ≤ k'
//!                         λ + ρ ≤ λ'   when k > k'
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::monoid::{AffineMonoid, Element, MonoidSpec};

/// `λ + kρ/r` in pair form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtElement {
    pub lambda: Element,
    pub k: u32,
}

impl ExtElement {
    pub fn new(lambda: impl Into<Element>, k: u32) -> Self {
        ExtElement {
            lambda: lambda.into(),
            k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.lambda.is_zero()
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.lambda, self.k)
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMonoid {
    base: AffineMonoid,
    rho: Element,
    r: u32,
}

impl ExtMonoid {
    /// Validates that `ρ` is a reducible element of `base` and `r ≥ 2`.
    pub fn adjoin(base: AffineMonoid, rho: Element, r: u32) -> Result<Self> {
        base.check_dim(&rho)?;
        if r < 2 {
            return Err(Error::invalid(format!("r must be at least 2, got {r}")));
        }
        if !base.contains(&rho)? {
            return Err(Error::invalid(format!(
                "ρ = {rho} is not an element of {base}"
            )));
        }
        if !base.is_reducible(&rho)? {
            return Err(Error::invalid(format!(
                "ρ = {rho} is irreducible in {base}"
            )));
        }
        Ok(ExtMonoid { base, rho, r })
    }

    pub fn base(&self) -> &AffineMonoid {
        &self.base
    }

    pub fn rho(&self) -> &Element {
        &self.rho
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            lambda: self.base.zero(),
            k: 0,
        }
    }

    pub fn check(&self, x: &ExtElement) -> Result<()> {
        if x.k >= self.r {
            return Err(Error::invalid(format!(
                "k = {} must be below r = {}",
                x.k, self.r
            )));
        }
        self.base.require_member(&x.lambda)
    }

    pub fn add(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let k = x.k + y.k;
        let mut lambda = x.lambda.add(&y.lambda);
        if k >= self.r {
            lambda = lambda.add(&self.rho);
        }
        ExtElement {
            lambda,
            k: k % self.r,
        }
    }

    /// `x ≤ y` in `Λ[ρ/r]`, for valid elements.
    pub fn leq(&self, x: &ExtElement, y: &ExtElement) -> bool {
        if x.k <= y.k {
            self.base.divides(&x.lambda, &y.lambda)
        } else {
            self.base.divides(&x.lambda.add(&self.rho), &y.lambda)
        }
    }

    pub fn lt(&self, x: &ExtElement, y: &ExtElement) -> bool {
        x != y && self.leq(x, y)
    }

    /// All `(λ, k)` with `λ ≤ cap` componentwise, lexicographically sorted.
    pub fn elements_up_to(&self, cap: &Element) -> Result<Vec<ExtElement>> {
        let lambdas = self.base.elements_up_to(cap)?;
        Ok(lambdas
            .into_iter()
            .flat_map(|lambda| {
                (0..self.r).map(move |k| ExtElement {
                    lambda: lambda.clone(),
                    k,
                })
            })
            .collect())
    }

    /// The open interval `(0, x)` with its induced order.
    pub fn open_interval(&self, x: &ExtElement) -> Result<Interval<ExtElement>> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::invalid(
                "the open interval below 0 is undefined (formal S^-2)",
            ));
        }
        // Anything below (λ, k) has its Λ-part componentwise below λ.
        let elements: Vec<ExtElement> = self
            .elements_up_to(&x.lambda)?
            .into_iter()
            .filter(|y| !y.is_zero() && y != x && self.leq(y, x))
            .collect();
        Ok(Interval::from_strict_order(elements, |a, b| self.lt(a, b)))
    }

    pub fn ell_rho(&self, lambda: &Element) -> Result<u64> {
        self.base.ell_rho(&self.rho, lambda)
    }

    /// The isomorphism `Λ[ρ/r] ≅ ⟨a_1, …, a_g, b⟩` for `Λ ⊆ ⟨r⟩ ⊆ ℕ`,
    /// `ρ = rb` and `gcd(r, b) = 1`; `None` when these do not hold.
    pub fn numerical_realization(&self) -> Option<Realization> {
        if self.base.dim() != 1 {
            return None;
        }
        let r = self.r as u64;
        if self
            .base
            .generators()
            .iter()
            .any(|g| g.coords()[0] % r != 0)
        {
            return None;
        }
        let rho = self.rho.coords()[0];
        if !rho.is_multiple_of(r) {
            return None;
        }
        let b = rho / r;
        if gcd(r, b) != 1 {
            return None;
        }
        let mut gens: Vec<Element> = self.base.generators().to_vec();
        gens.push(Element::scalar(b));
        let monoid = AffineMonoid::new(1, gens).ok()?;
        Some(Realization {
            base: self.base.clone(),
            monoid,
            b,
            r: self.r,
        })
    }

    pub fn to_spec(&self) -> ExtSpec {
        ExtSpec {
            base: self.base.to_spec(),
            rho: self.rho.clone(),
            r: self.r,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A numerical semigroup isomorphic to some `Λ[ρ/r]`, with the grade map
/// `(λ, k) ↦ λ + kb`.
#[derive(Clone, Debug)]
pub struct Realization {
    base: AffineMonoid,
    monoid: AffineMonoid,
    b: u64,
    r: u32,
}

impl Realization {
    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    /// The image of `ρ/r`.
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Smallest bound covering the images of all pairs with `λ ≤ cap`.
    pub fn image_cap(&self, cap: &Element) -> Element {
        Element::scalar(cap.coords()[0] + (self.r as u64 - 1) * self.b)
    }

    pub fn map(&self, x: &ExtElement) -> Element {
        Element::scalar(x.lambda.coords()[0] + x.k as u64 * self.b)
    }

    /// The unique pair mapping to `g`, if `g` lies in the realized monoid.
    pub fn preimage(&self, g: &Element) -> Option<ExtElement> {
        let g = *g.coords().first()?;
        let r = self.r as u64;
        (0..self.r).find_map(|k| {
            let lambda = g.checked_sub(k as u64 * self.b)?;
            let lambda = Element::scalar(lambda);
            (lambda.coords()[0].is_multiple_of(r) && self.base.contains(&lambda).ok()?)
                .then_some(ExtElement { lambda, k })
        })
    }
}

/// JSON form `{"base": <monoid spec>, "rho": ..., "r": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExtSpec {
    pub base: MonoidSpec,
    pub rho: Element,
    pub r: u32,
}

impl ExtSpec {
    pub fn build(&self) -> Result<ExtMonoid> {
        ExtMonoid::adjoin(self.base.build()?, self.rho.clone(), self.r)
    }
}

//! Finitely generated submonoids of ℕ^d and their divisibility order.
//!
//! A submonoid of ℕ^d is cancellative and has no nonzero invertible element,
//! so every instance of [`AffineMonoid`] is an affine monoid without further
//! checks. The partial order is `λ ≤ μ` iff `μ - λ` is again an element.
//! Membership is decided by reachability dynamic programming over the
//! componentwise box `[0, μ]`, memoized per monoid.

use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Upper bound on the number of cells in a membership table.
const MAX_TABLE_CELLS: u128 = 1 << 31;

/// A grade vector in ℕ^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn new(coords: Vec<u64>) -> Self {
        Element(coords)
    }

    pub fn scalar(value: u64) -> Self {
        Element(vec![value])
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self ≤ other` in ℕ^d.
    pub fn le_componentwise(&self, other: &Element) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference, if nonnegative.
    pub fn checked_sub(&self, other: &Element) -> Option<Element> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Element)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times(&self, factor: u64) -> Element {
        Element(self.0.iter().map(|c| c * factor).collect())
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Element) -> Element {
        Element(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Element) -> Element {
        Element(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Exact componentwise division, if `self = divisor * q` for a common q.
    pub fn div_exact(&self, divisor: u64) -> Option<Element> {
        if divisor == 0 || self.0.iter().any(|c| c % divisor != 0) {
            return None;
        }
        Some(Element(self.0.iter().map(|c| c / divisor).collect()))
    }
}

impl From<u64> for Element {
    fn from(value: u64) -> Self {
        Element::scalar(value)
    }
}

impl From<Vec<u64>> for Element {
    fn from(coords: Vec<u64>) -> Self {
        Element(coords)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.0.as_slice() {
            return write!(f, "{c}");
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// One-dimensional grades serialize as bare integers, others as arrays.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.as_slice() {
            [c] => serializer.serialize_u64(*c),
            coords => coords.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Scalar(u64),
            Vector(Vec<u64>),
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Scalar(c) => Element::scalar(c),
            Repr::Vector(v) => Element(v),
        })
    }
}

/// Dense reachability table over the box `[0, bound]`.
#[derive(Clone, Debug)]
struct MemberTable {
    bound: Vec<u64>,
    strides: Vec<usize>,
    member: Vec<bool>,
}

impl MemberTable {
    fn empty(dim: usize) -> Self {
        MemberTable {
            bound: vec![0; dim],
            strides: vec![1; dim],
            member: vec![true],
        }
    }

    fn build(generators: &[Element], bound: Vec<u64>) -> Result<Self> {
        let cells: u128 = bound.iter().map(|&b| b as u128 + 1).product();
        if cells > MAX_TABLE_CELLS {
            return Err(Error::invalid(format!(
                "membership box {bound:?} is too large ({cells} cells)"
            )));
        }
        let dim = bound.len();
        let mut strides = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bound[i + 1] as usize + 1);
        }
        let offsets: Vec<Option<usize>> = generators
            .iter()
            .map(|g| {
                g.le_componentwise(&Element(bound.clone())).then(|| {
                    g.coords()
                        .iter()
                        .zip(&strides)
                        .map(|(&c, &s)| c as usize * s)
                        .sum()
                })
            })
            .collect();

        let mut member = vec![false; cells as usize];
        member[0] = true;
        // Row-major order visits x - g before x for every generator g <= x.
        let mut coords = vec![0u64; dim];
        for idx in 1..member.len() {
            for i in (0..dim).rev() {
                if coords[i] < bound[i] {
                    coords[i] += 1;
                    break;
                }
                coords[i] = 0;
            }
            member[idx] = generators.iter().zip(&offsets).any(|(g, off)| match off {
                Some(off) => {
                    g.coords().iter().zip(&coords).all(|(a, b)| a <= b) && member[idx - off]
                }
                None => false,
            });
        }
        Ok(MemberTable {
            bound,
            strides,
            member,
        })
    }

    fn lookup(&self, x: &Element) -> Option<bool> {
        if !x.coords().iter().zip(&self.bound).all(|(a, b)| a <= b) {
            return None;
        }
        let idx: usize = x
            .coords()
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum();
        Some(self.member[idx])
    }
}

/// A finitely generated submonoid of ℕ^d.
pub struct AffineMonoid {
    dim: usize,
    generators: Vec<Element>,
    table: RwLock<MemberTable>,
}

impl Clone for AffineMonoid {
    fn clone(&self) -> Self {
        AffineMonoid {
            dim: self.dim,
            generators: self.generators.clone(),
            table: RwLock::new(
                self.table
                    .read()
                    .expect("membership table poisoned")
                    .clone(),
            ),
        }
    }
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Display for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl AffineMonoid {
    pub fn new(dim: usize, generators: Vec<Element>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(Error::invalid("generators must be nonzero"));
            }
        }
        Ok(AffineMonoid {
            dim,
            generators,
            table: RwLock::new(MemberTable::empty(dim)),
        })
    }

    /// Submonoid of ℕ generated by `gens`.
    pub fn numerical(gens: &[u64]) -> Result<Self> {
        AffineMonoid::new(1, gens.iter().map(|&g| Element::scalar(g)).collect())
    }

    /// ℕ^d with its standard basis.
    pub fn free(dim: usize) -> Result<Self> {
        let gens = (0..dim)
            .map(|i| {
                let mut c = vec![0; dim];
                c[i] = 1;
                Element(c)
            })
            .collect();
        AffineMonoid::new(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    pub(crate) fn check_dim(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn member(&self, x: &Element) -> bool {
        if let Some(hit) = self
            .table
            .read()
            .expect("membership table poisoned")
            .lookup(x)
        {
            return hit;
        }
        let mut table = self.table.write().expect("membership table poisoned");
        if let Some(hit) = table.lookup(x) {
            return hit;
        }
        let mut bound: Vec<u64> = table
            .bound
            .iter()
            .zip(x.coords())
            .map(|(a, b)| *a.max(b))
            .collect();
        if self.dim == 1 {
            bound[0] = bound[0].max(2 * table.bound[0]).max(64);
        }
        // Oversized boxes fall back to an uncached search.
        match MemberTable::build(&self.generators, bound) {
            Ok(fresh) => {
                *table = fresh;
                table.lookup(x).expect("table covers the query")
            }
            Err(_) => {
                drop(table);
                self.sparse_member(x)
            }
        }
    }

    fn sparse_member(&self, x: &Element) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            if y.is_zero() {
                return true;
            }
            for g in &self.generators {
                if let Some(z) = y.checked_sub(g) {
                    if seen.insert(z.clone()) {
                        stack.push(z);
                    }
                }
            }
        }
        false
    }

    /// Whether `mu` is a nonnegative integer combination of the generators.
    pub fn contains(&self, mu: &Element) -> Result<bool> {
        self.check_dim(mu)?;
        Ok(self.member(mu))
    }

    pub(crate) fn require_member(&self, x: &Element) -> Result<()> {
        if !self.contains(x)? {
            return Err(Error::invalid(format!("{x} is not an element of {self}")));
        }
        Ok(())
    }

    /// `λ ≤ μ` in the divisibility order, for elements already known to be members.
    pub(crate) fn divides(&self, lambda: &Element, mu: &Element) -> bool {
        lambda.le_componentwise(mu) && self.member(&mu.checked_sub(lambda).expect("componentwise"))
    }

    /// The difference `μ - λ` when `λ ≤ μ` in the divisibility order.
    pub fn subtract(&self, mu: &Element, lambda: &Element) -> Result<Option<Element>> {
        self.require_member(mu)?;
        self.require_member(lambda)?;
        Ok(mu.checked_sub(lambda).filter(|d| self.member(d)))
    }

    /// `λ ≤ μ` in the divisibility order.
    pub fn leq(&self, lambda: &Element, mu: &Element) -> Result<bool> {
        Ok(self.subtract(mu, lambda)?.is_some())
    }

    /// All elements below `cap` componentwise, in lexicographic order.
    pub fn elements_up_to(&self, cap: &Element) -> Result<Vec<Element>> {
        self.check_dim(cap)?;
        let mut out = Vec::new();
        let mut coords = vec![0u64; self.dim];
        loop {
            let x = Element(coords.clone());
            if self.member(&x) {
                out.push(x);
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if coords[i] < cap.0[i] {
                    coords[i] += 1;
                    break;
                }
                coords[i] = 0;
            }
        }
    }

    /// The open interval `(0, λ)` with its induced order.
    pub fn open_interval(&self, lambda: &Element) -> Result<Interval<Element>> {
        self.require_member(lambda)?;
        if lambda.is_zero() {
            return Err(Error::invalid(
                "the open interval below 0 is undefined (formal S^-2)",
            ));
        }
        let elements: Vec<Element> = self
            .elements_up_to(lambda)?
            .into_iter()
            .filter(|mu| !mu.is_zero() && mu != lambda && self.divides(mu, lambda))
            .collect();
        Ok(Interval::from_strict_order(elements, |a, b| {
            a != b && self.divides(a, b)
        }))
    }

    /// Largest `ℓ` with `ℓρ ≤ λ`.
    pub fn ell_rho(&self, rho: &Element, lambda: &Element) -> Result<u64> {
        self.require_member(rho)?;
        self.require_member(lambda)?;
        if rho.is_zero() {
            return Err(Error::invalid("ℓ_ρ requires a nonzero ρ"));
        }
        // ℓρ ≤ λ componentwise bounds the search.
        let mut best = 0;
        let mut multiple = rho.clone();
        let mut ell = 1;
        while multiple.le_componentwise(lambda) {
            if self.divides(&multiple, lambda) {
                best = ell;
            }
            multiple = multiple.add(rho);
            ell += 1;
        }
        Ok(best)
    }

    /// Whether `ρ = σ + τ` for some nonzero `σ, τ`.
    pub fn is_reducible(&self, rho: &Element) -> Result<bool> {
        self.require_member(rho)?;
        Ok(self
            .elements_up_to(rho)?
            .iter()
            .any(|s| !s.is_zero() && s != rho && self.divides(s, rho)))
    }

    /// The monoid `pΛ`.
    pub fn scale(&self, p: u64) -> Result<AffineMonoid> {
        if p == 0 {
            return Err(Error::invalid("scale factor must be positive"));
        }
        AffineMonoid::new(
            self.dim,
            self.generators.iter().map(|g| g.times(p)).collect(),
        )
    }

    pub fn to_spec(&self) -> MonoidSpec {
        MonoidSpec {
            dim: Some(self.dim),
            generators: self.generators.clone(),
        }
    }
}

/// JSON form `{"dim": d, "generators": [[...], ...]}`; `dim` may be omitted
/// when the generators are plain integers.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonoidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub generators: Vec<Element>,
}

impl MonoidSpec {
    pub fn build(&self) -> Result<AffineMonoid> {
        let dim = match (self.dim, self.generators.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.dim(),
            (None, None) => 1,
        };
        AffineMonoid::new(dim, self.generators.clone())
    }
}

impl TryFrom<&MonoidSpec> for AffineMonoid {
    type Error = Error;

    fn try_from(spec: &MonoidSpec) -> Result<Self> {
        spec.build()
    }
}

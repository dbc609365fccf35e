//! Multigraded Poincaré series `P(t, z) = Σ β_i(g) t^i z^g`, truncated at a
//! grade bound.
//!
//! A term is kept iff the `ℕ^d` part of its grade lies componentwise below the
//! cap; the homological degree is never bounded. Grades of `Λ[ρ/r]` stay in
//! pair form `(λ, k)`, so `z^{ρ/r}` never needs a fractional exponent.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use crate::complexes::Field;
use crate::error::{Error, Result};
use crate::extension::{ExtElement, Realization};
use crate::frobenius::{betti_table, BettiTable, FrobeniusSource};
use crate::monoid::{AffineMonoid, Element};

/// A grade with an `ℕ^d` part used for truncation.
pub trait Graded: Clone + Ord + fmt::Display + Serialize {
    fn lambda_part(&self) -> &Element;
    fn is_zero_grade(&self) -> bool;
}

impl Graded for Element {
    fn lambda_part(&self) -> &Element {
        self
    }

    fn is_zero_grade(&self) -> bool {
        self.is_zero()
    }
}

impl Graded for ExtElement {
    fn lambda_part(&self) -> &Element {
        &self.lambda
    }

    fn is_zero_grade(&self) -> bool {
        self.is_zero()
    }
}

/// Truncated power series with nonnegative integer coefficients, keyed by
/// `(grade, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries<G: Ord> {
    cap: Element,
    terms: BTreeMap<(G, u32), u64>,
}

impl<G: Graded> GradedSeries<G> {
    pub fn new(cap: Element) -> Self {
        GradedSeries {
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn cap(&self) -> &Element {
        &self.cap
    }

    pub fn within_cap(&self, grade: &G) -> bool {
        grade.lambda_part().le_componentwise(&self.cap)
    }

    /// Adds `coeff · t^i z^grade`; terms beyond the cap are dropped.
    pub fn add_term(&mut self, grade: G, i: u32, coeff: u64) {
        if coeff == 0 || !self.within_cap(&grade) {
            return;
        }
        *self.terms.entry((grade, i)).or_insert(0) += coeff;
    }

    pub fn coeff(&self, grade: &G, i: u32) -> u64 {
        self.terms.get(&(grade.clone(), i)).copied().unwrap_or(0)
    }

    /// `(grade, i, coeff)` sorted by grade, then `i`.
    pub fn terms(&self) -> impl Iterator<Item = (&G, u32, u64)> {
        self.terms.iter().map(|((g, i), &c)| (g, *i, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Restriction to a smaller cap (the meet of both caps).
    pub fn truncate(&self, cap: &Element) -> Result<Self> {
        check_dim(&self.cap, cap)?;
        let mut out = GradedSeries::new(self.cap.meet(cap));
        for (g, i, c) in self.terms() {
            out.add_term(g.clone(), i, c);
        }
        Ok(out)
    }

    /// Human-readable form such as `1 + t z^2 + t^2 z^5`.
    pub fn to_polynomial_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (g, i, c)) in self.terms().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let mut parts = Vec::new();
            if c != 1 || (i == 0 && g.is_zero_grade()) {
                parts.push(c.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("t".to_string()),
                _ => parts.push(format!("t^{i}")),
            }
            if !g.is_zero_grade() {
                let shown = g.to_string();
                parts.push(if shown == "1" {
                    "z".to_string()
                } else {
                    format!("z^{shown}")
                });
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

impl GradedSeries<Element> {
    pub fn one(cap: Element) -> Self {
        let mut s = GradedSeries::new(cap.clone());
        s.add_term(Element::zero(cap.dim()), 0, 1);
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(&self.cap, &other.cap)?;
        let mut out = GradedSeries::new(self.cap.meet(&other.cap));
        for (g, i, c) in self.terms().chain(other.terms()) {
            out.add_term(g.clone(), i, c);
        }
        Ok(out)
    }

    /// Product truncated at the meet of both caps.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(&self.cap, &other.cap)?;
        let mut out = GradedSeries::new(self.cap.meet(&other.cap));
        for (g, i, c) in self.terms() {
            for (h, j, e) in other.terms() {
                let sum = g.add(h);
                if out.within_cap(&sum) {
                    out.add_term(sum, i + j, c * e);
                }
            }
        }
        Ok(out)
    }

    /// `P(t, z) ↦ P(t, z^p)`; the cap is multiplied by `p` as well.
    pub fn scale(&self, p: u64) -> Result<Self> {
        check_scale(p)?;
        let mut out = GradedSeries::new(self.cap.times(p));
        for (g, i, c) in self.terms() {
            out.add_term(g.times(p), i, c);
        }
        Ok(out)
    }

    /// Re-indexes a series of a realized numerical semigroup by pairs `(λ, k)`,
    /// keeping the grades with `λ ≤ cap`. The series must reach
    /// [`Realization::image_cap`] of `cap`.
    pub fn pull_back(
        &self,
        realization: &Realization,
        cap: &Element,
    ) -> Result<GradedSeries<ExtElement>> {
        check_dim(&self.cap, cap)?;
        let needed = realization.image_cap(cap);
        if !needed.le_componentwise(&self.cap) {
            return Err(Error::invalid(format!(
                "series cap {} is below {needed}, the image of cap {cap}",
                self.cap
            )));
        }
        let mut out = GradedSeries::new(cap.clone());
        for (g, i, c) in self.terms() {
            let pair = realization.preimage(g).ok_or_else(|| {
                Error::invalid(format!("grade {g} is not in the realized monoid"))
            })?;
            out.add_term(pair, i, c);
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct Entry<'a, G> {
    i: u32,
    grade: &'a G,
    coeff: u64,
}

impl<G: Graded> Serialize for GradedSeries<G> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.terms()
                .map(|(grade, i, coeff)| Entry { i, grade, coeff }),
        )
    }
}

impl<G: Graded> fmt::Display for GradedSeries<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_polynomial_string())
    }
}

fn check_dim(a: &Element, b: &Element) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

fn check_scale(p: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::invalid("scale factor must be positive"));
    }
    Ok(())
}

/// The series read off a Tor table.
pub fn series_from_table<G: Graded>(table: &BettiTable<G>) -> GradedSeries<G> {
    let mut out = GradedSeries::new(table.cap.clone());
    for (grade, betti) in &table.entries {
        for (i, b) in betti.iter() {
            let i = u32::try_from(i).expect("Tor degrees are nonnegative");
            out.add_term(grade.clone(), i, b);
        }
    }
    out
}

/// `Σ_i Σ_{g ≤ cap} β_i(g) t^i z^g` by direct homology at every grade.
pub fn direct_series<S>(source: &S, cap: &Element, field: Field) -> Result<GradedSeries<S::Grade>>
where
    S: FrobeniusSource,
    S::Grade: Graded,
{
    Ok(series_from_table(&betti_table(source, cap, field)?))
}

/// `P · (1 + t z^{ρ/r}) / (1 - t² z^ρ)` in pair grades, truncated at `cap`.
///
/// `base` must have been computed up to at least `cap`.
pub fn extension_series(
    base: &GradedSeries<Element>,
    rho: &Element,
    r: u32,
    cap: &Element,
) -> Result<GradedSeries<ExtElement>> {
    check_dim(base.cap(), cap)?;
    check_dim(base.cap(), rho)?;
    if r < 2 {
        return Err(Error::invalid(format!("r must be at least 2, got {r}")));
    }
    if rho.is_zero() {
        return Err(Error::invalid("rho must be nonzero"));
    }
    if !cap.le_componentwise(base.cap()) {
        return Err(Error::invalid(format!(
            "target cap {cap} exceeds the cap {} of the base series",
            base.cap()
        )));
    }
    let mut out = GradedSeries::new(cap.clone());
    for (lambda, i, c) in base.terms() {
        let mut shifted = lambda.clone();
        let mut ell = 0u32;
        while shifted.le_componentwise(cap) {
            for k in 0..2 {
                out.add_term(
                    ExtElement {
                        lambda: shifted.clone(),
                        k,
                    },
                    i + 2 * ell + k,
                    c,
                );
            }
            shifted = shifted.add(rho);
            ell += 1;
        }
    }
    Ok(out)
}

/// `(1 + t^a z^g)` in a numerator or `(1 - t^a z^g)` in a denominator,
/// raised to `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub t_exp: u32,
    pub grade: Element,
    pub multiplicity: u32,
}

impl Factor {
    pub fn new(t_exp: u32, grade: impl Into<Element>, multiplicity: u32) -> Self {
        Factor {
            t_exp,
            grade: grade.into(),
            multiplicity,
        }
    }
}

/// `∏ (1 + t^a z^g) / ∏ (1 - t^a z^g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSeriesExpr {
    pub numerator: Vec<Factor>,
    pub denominator: Vec<Factor>,
}

impl RationalSeriesExpr {
    /// `z ↦ z^p` in every factor.
    pub fn scale(&self, p: u64) -> Result<Self> {
        check_scale(p)?;
        let scale = |fs: &[Factor]| {
            fs.iter()
                .map(|f| Factor {
                    grade: f.grade.times(p),
                    ..f.clone()
                })
                .collect()
        };
        Ok(RationalSeriesExpr {
            numerator: scale(&self.numerator),
            denominator: scale(&self.denominator),
        })
    }
}

fn write_factor(out: &mut String, sign: char, f: &Factor) {
    let t = match f.t_exp {
        0 => String::new(),
        1 => "t".to_string(),
        a => format!("t^{a}"),
    };
    let z = format!("z^{}", f.grade);
    let mono = [t, z]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    let _ = write!(out, "(1 {sign} {mono})");
    if f.multiplicity != 1 {
        let _ = write!(out, "^{}", f.multiplicity);
    }
}

impl fmt::Display for RationalSeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.numerator.is_empty() {
            out.push('1');
        }
        for factor in &self.numerator {
            write_factor(&mut out, '+', factor);
        }
        if !self.denominator.is_empty() {
            out.push_str(" / ");
            for factor in &self.denominator {
                write_factor(&mut out, '-', factor);
            }
        }
        f.write_str(&out)
    }
}

/// Expands numerator polynomials and truncated geometric series of the
/// denominators, exactly, up to `cap`.
pub fn expand_closed_form(
    expr: &RationalSeriesExpr,
    cap: &Element,
) -> Result<GradedSeries<Element>> {
    for f in expr.numerator.iter().chain(&expr.denominator) {
        check_dim(cap, &f.grade)?;
    }
    if let Some(f) = expr.denominator.iter().find(|f| f.grade.is_zero()) {
        return Err(Error::invalid(format!(
            "denominator factor (1 - t^{} z^0) has zero grade",
            f.t_exp
        )));
    }
    let mut acc = GradedSeries::one(cap.clone());
    for f in &expr.numerator {
        let mut poly = GradedSeries::one(cap.clone());
        poly.add_term(f.grade.clone(), f.t_exp, 1);
        for _ in 0..f.multiplicity {
            acc = acc.mul(&poly)?;
        }
    }
    for f in &expr.denominator {
        let mut geo = GradedSeries::new(cap.clone());
        let (mut g, mut a) = (Element::zero(cap.dim()), 0u32);
        while g.le_componentwise(cap) {
            geo.add_term(g.clone(), a, 1);
            g = g.add(&f.grade);
            a += f.t_exp;
        }
        for _ in 0..f.multiplicity {
            acc = acc.mul(&geo)?;
        }
    }
    Ok(acc)
}

/// Families of numerical semigroups with a closed-form Poincaré series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `⟨a, b⟩`
    TwoGen { a: u64, b: u64 },
    /// `⟨pq, pr, qr⟩`
    Pqr { p: u64, q: u64, r: u64 },
    /// `⟨a, a + d, a + 2d⟩`
    Arithmetic { a: u64, d: u64 },
    /// `⟨p^n, p^{n-1}q, …, q^n⟩`
    Geometric { p: u64, q: u64, n: u32 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> Result<u64> {
    (a / gcd(a, b)).checked_mul(b).ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::invalid("family parameters overflow u64")
}

fn product(factors: &[u64]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(overflow)
}

fn pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or_else(overflow)
}

fn require(cond: bool, family: &str, what: impl fmt::Display) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(format!("{family}: {what}")))
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::TwoGen { .. } => "two_gen",
            Family::Pqr { .. } => "pqr",
            Family::Arithmetic { .. } => "arithmetic",
            Family::Geometric { .. } => "geometric",
        }
    }

    /// Checks the hypotheses under which the closed form holds.
    pub fn check(&self) -> Result<()> {
        let name = self.name();
        match *self {
            Family::TwoGen { a, b } => {
                require(
                    2 <= a && a < b,
                    name,
                    format_args!("need 2 <= a < b, got a = {a}, b = {b}"),
                )?;
                require(
                    b % a != 0,
                    name,
                    format_args!("b = {b} must not lie in <{a}>"),
                )
            }
            Family::Pqr { p, q, r } => {
                require(
                    2 <= p && p < q && q < r,
                    name,
                    format_args!("need 2 <= p < q < r, got p = {p}, q = {q}, r = {r}"),
                )?;
                require(
                    gcd(p, q) == 1 && gcd(p, r) == 1 && gcd(q, r) == 1,
                    name,
                    format_args!("p = {p}, q = {q}, r = {r} must be pairwise coprime"),
                )
            }
            Family::Arithmetic { a, d } => {
                require(
                    a >= 2 && a % 2 == 0,
                    name,
                    format_args!("a = {a} must be even and at least 2"),
                )?;
                require(d % 2 == 1, name, format_args!("d = {d} must be odd"))?;
                let top = d
                    .checked_mul(2)
                    .and_then(|x| x.checked_add(a))
                    .ok_or_else(overflow)?;
                require(
                    top % a != 0,
                    name,
                    format_args!("a + 2d = {top} must not lie in <{a}>"),
                )
            }
            Family::Geometric { p, q, n } => {
                require(
                    2 <= p && p < q,
                    name,
                    format_args!("need 2 <= p < q, got p = {p}, q = {q}"),
                )?;
                require(
                    gcd(p, q) == 1,
                    name,
                    format_args!("gcd(p, q) = {} must be 1", gcd(p, q)),
                )?;
                require(n >= 1, name, "n must be at least 1")?;
                pow(p.max(q), n).map(|_| ())
            }
        }
    }

    /// Generators of the semigroup the family describes.
    pub fn generators(&self) -> Result<Vec<u64>> {
        self.check()?;
        match *self {
            Family::TwoGen { a, b } => Ok(vec![a, b]),
            Family::Pqr { p, q, r } => Ok(vec![
                product(&[p, q])?,
                product(&[p, r])?,
                product(&[q, r])?,
            ]),
            Family::Arithmetic { a, d } => Ok(vec![a, a + d, a + 2 * d]),
            Family::Geometric { p, q, n } => {
                (0..=n).map(|i| Ok(pow(p, n - i)? * pow(q, i)?)).collect()
            }
        }
    }

    pub fn monoid(&self) -> Result<AffineMonoid> {
        AffineMonoid::numerical(&self.generators()?)
    }

    pub fn closed_form(&self) -> Result<RationalSeriesExpr> {
        closed_form(self)
    }
}

/// The rational Poincaré series of a family member.
pub fn closed_form(family: &Family) -> Result<RationalSeriesExpr> {
    let gens = family.generators()?;
    let plus = |g: u64| Factor::new(1, g, 1);
    let (numerator, denominator) = match *family {
        Family::TwoGen { a, b } => (vec![plus(a), plus(b)], vec![Factor::new(2, lcm(a, b)?, 1)]),
        Family::Pqr { p, q, r } => (
            gens.iter().map(|&g| plus(g)).collect(),
            vec![Factor::new(2, product(&[p, q, r])?, 2)],
        ),
        Family::Arithmetic { a, d } => (
            vec![plus(a), plus(a + 2 * d)],
            vec![
                Factor::new(2, lcm(a, a + 2 * d)?, 1),
                Factor::new(1, a + d, 1),
            ],
        ),
        Family::Geometric { p, q, n } => {
            let den = (1..=n)
                .map(|i| {
                    Ok(Factor::new(
                        2,
                        product(&[pow(p, n - i + 1)?, pow(q, i)?])?,
                        1,
                    ))
                })
                .collect::<Result<_>>()?;
            (gens.iter().map(|&g| plus(g)).collect(), den)
        }
    };
    Ok(RationalSeriesExpr {
        numerator,
        denominator,
    })
}

/// The simplified geometric form for `p = 2`:
/// `(1 + t z^{2^n}) / ∏_{i=1}^n (1 - t z^{2^{n-i} q^i})`.
pub fn geometric_p2_form(q: u64, n: u32) -> Result<RationalSeriesExpr> {
    Family::Geometric { p: 2, q, n }.check()?;
    let denominator = (1..=n)
        .map(|i| Ok(Factor::new(1, product(&[pow(2, n - i)?, pow(q, i)?])?, 1)))
        .collect::<Result<_>>()?;
    Ok(RationalSeriesExpr {
        numerator: vec![Factor::new(1, pow(2, n)?, 1)],
        denominator,
    })
}

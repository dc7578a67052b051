use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gauss::GaussianRational;
use crate::error::{Error, Result};

/// Which pair of variables a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "xy")]
    XY,
    #[serde(rename = "zzbar")]
    ZZbar,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::XY => "xy",
            Basis::ZZbar => "zzbar",
        })
    }
}

/// First or second variable of the polynomial's basis (`x`/`y` or `z`/`z̄`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    First,
    Second,
}

impl Axis {
    pub const X: Axis = Axis::First;
    pub const Y: Axis = Axis::Second;
    pub const Z: Axis = Axis::First;
    pub const ZBAR: Axis = Axis::Second;
}

/// Exponent pair ordered by total degree, then by first exponent (graded lex).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub u32, pub u32);

impl Monomial {
    pub fn degree(self) -> u32 {
        self.0 + self.1
    }

    fn divides(self, other: Monomial) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse bivariate polynomial with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their bases and term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    basis: Basis,
    terms: BTreeMap<Monomial, GaussianRational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

/// `i^k` as a Gaussian integer.
fn i_pow(k: u32) -> GaussianRational {
    match k % 4 {
        0 => GaussianRational::from_int(1),
        1 => GaussianRational::i(),
        2 => GaussianRational::from_int(-1),
        _ => -GaussianRational::i(),
    }
}

impl ExactPoly {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, terms: BTreeMap::new() }
    }

    pub fn constant(basis: Basis, c: GaussianRational) -> Self {
        Self::monomial(basis, 0, 0, c)
    }

    pub fn monomial(basis: Basis, i: u32, j: u32, c: GaussianRational) -> Self {
        let mut p = Self::zero(basis);
        p.add_term(Monomial(i, j), c);
        p
    }

    /// Builds a polynomial from `(i, j, coeff)` triples; repeated exponents are summed.
    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, GaussianRational)>,
    {
        let mut p = Self::zero(basis);
        for (i, j, c) in terms {
            p.add_term(Monomial(i, j), c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(basis: Basis, terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(basis, terms.iter().map(|&(i, j, c)| (i, j, GaussianRational::from_int(c))))
    }

    pub fn x() -> Self {
        Self::monomial(Basis::XY, 1, 0, GaussianRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(Basis::XY, 0, 1, GaussianRational::one())
    }

    /// `x² + y²` in the XY basis.
    pub fn radius_squared() -> Self {
        Self::from_int_terms(Basis::XY, &[(2, 0, 1), (0, 2, 1)])
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &GaussianRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.terms.get(&Monomial(i, j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Largest exponent of the given axis over all stored terms.
    pub fn degree_in(&self, axis: Axis) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match axis {
                Axis::First => m.0,
                Axis::Second => m.1,
            })
            .max()
    }

    pub fn leading(&self) -> Option<(Monomial, &GaussianRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sub_term(&mut self, m: Monomial, c: &GaussianRational) {
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(-c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() -= c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { left: self.basis, right: other.basis });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.sub_term(*m, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { basis: self.basis, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.basis);
        }
        Self { basis: self.basis, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(self.mul_same_basis(other))
    }

    pub(crate) fn mul_same_basis(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.basis);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(Monomial(m1.0 + m2.0, m1.1 + m2.1), c1 * c2);
            }
        }
        out
    }

    /// In-place `self += other`; caller guarantees matching bases.
    pub(crate) fn accumulate(&mut self, other: &Self) {
        debug_assert_eq!(self.basis, other.basis);
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.basis, GaussianRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same_basis(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same_basis(&base);
            }
        }
        acc
    }

    /// Partial derivative of the given order along one of the basis's own variables.
    pub fn diff(&self, axis: Axis, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut out = Self::zero(self.basis);
        for (m, c) in &self.terms {
            let (e, other) = match axis {
                Axis::First => (m.0, m.1),
                Axis::Second => (m.1, m.0),
            };
            if e < order {
                continue;
            }
            let f = GaussianRational::from_bigint(falling(e, order));
            let nm = match axis {
                Axis::First => Monomial(e - order, other),
                Axis::Second => Monomial(other, e - order),
            };
            out.add_term(nm, c * &f);
        }
        out
    }

    /// Mixed partial `∂₁^a ∂₂^b`.
    pub fn diff2(&self, a: u32, b: u32) -> Self {
        self.diff(Axis::First, a).diff(Axis::Second, b)
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            basis: self.basis,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Rewrites an XY polynomial in `z = x + iy`, `z̄ = x − iy` via
    /// `x = (z + z̄)/2`, `y = (z − z̄)/(2i)`.
    pub fn to_zzbar(&self) -> Result<Self> {
        if self.basis != Basis::XY {
            return Err(Error::BasisMismatch { left: self.basis, right: Basis::XY });
        }
        let mut out = Self::zero(Basis::ZZbar);
        let half = GaussianRational::from_frac(1, 2);
        // y = (-i/2)(z - z̄)
        let minus_i_half = GaussianRational::new(BigRational::zero(), -BigRational::new(1.into(), 2.into()));
        for (m, c) in &self.terms {
            let (i, j) = (m.0, m.1);
            let pref = &(c * &half.pow(i)) * &minus_i_half.pow(j);
            for s in 0..=i {
                let cs = binomial(i, s);
                for t in 0..=j {
                    let mut k = &cs * &binomial(j, t);
                    if (j - t) % 2 == 1 {
                        k = -k;
                    }
                    let coeff = &pref * &GaussianRational::from_bigint(k);
                    out.add_term(Monomial(s + t, (i - s) + (j - t)), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`to_zzbar`](Self::to_zzbar): substitutes `z = x + iy`, `z̄ = x − iy`.
    pub fn to_xy(&self) -> Result<Self> {
        if self.basis != Basis::ZZbar {
            return Err(Error::BasisMismatch { left: self.basis, right: Basis::ZZbar });
        }
        let mut out = Self::zero(Basis::XY);
        for (m, c) in &self.terms {
            let (a, b) = (m.0, m.1);
            for s in 0..=a {
                let cs = binomial(a, s);
                for t in 0..=b {
                    // z^a: C(a,s) x^s (iy)^(a-s);  z̄^b: C(b,t) x^t (-iy)^(b-t)
                    let mut k = &cs * &binomial(b, t);
                    if (b - t) % 2 == 1 {
                        k = -k;
                    }
                    let unit = i_pow((a - s) + (b - t));
                    let coeff = &(c * &unit) * &GaussianRational::from_bigint(k);
                    out.add_term(Monomial(s + t, (a - s) + (b - t)), coeff);
                }
            }
        }
        Ok(out)
    }

    /// In the ZZbar basis: the coefficient of `z^a z̄^b` is the conjugate of that of `z^b z̄^a`.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.terms.iter().all(|(m, c)| self.terms.get(&Monomial(m.1, m.0)).is_some_and(|d| *d == c.conj()))
    }

    /// Exact quotient `f / g`; fails with the remainder when `g` does not divide `f`.
    pub fn divide_exact(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(g)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision { remainder: Box::new(r) });
        }
        Ok(q)
    }

    /// Division by a single polynomial under the graded monomial order. Since a
    /// single polynomial is a Gröbner basis of the ideal it generates, the
    /// remainder vanishes exactly when `g` divides `self`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_basis(g)?;
        let (g_lead, g_coeff) =
            g.leading().ok_or_else(|| Error::Precondition("division by the zero polynomial".into()))?;
        let g_inv = g_coeff.inv().expect("nonzero leading coefficient");
        let mut work = self.clone();
        let mut quotient = Self::zero(self.basis);
        let mut remainder = Self::zero(self.basis);
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if g_lead.divides(m) {
                let t = &c * &g_inv;
                let shift = Monomial(m.0 - g_lead.0, m.1 - g_lead.1);
                for (gm, gc) in &g.terms {
                    work.sub_term(Monomial(gm.0 + shift.0, gm.1 + shift.1), &(&t * gc));
                }
                quotient.add_term(shift, t);
            } else {
                work.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Evaluates after replacing `x²` and `y²` by the given scalars; every
    /// exponent must be even.
    pub fn substitute_squares(&self, x2: &GaussianRational, y2: &GaussianRational) -> Result<GaussianRational> {
        if self.basis != Basis::XY {
            return Err(Error::BasisMismatch { left: self.basis, right: Basis::XY });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            if m.0 % 2 == 1 || m.1 % 2 == 1 {
                return Err(Error::OddExponent { x_exp: m.0, y_exp: m.1 });
            }
            acc += &(&(c * &x2.pow(m.0 / 2)) * &y2.pow(m.1 / 2));
        }
        Ok(acc)
    }

    /// Substitutes `x → √sx·x`, `y → √sy·y` for rational squares `sx`, `sy`.
    /// An axis with a factor other than 1 must carry only even exponents.
    pub fn stretch_squares(&self, sx: &BigRational, sy: &BigRational) -> Result<Self> {
        let mut out = Self::zero(self.basis);
        for (m, c) in &self.terms {
            if (!sx.is_one() && m.0 % 2 == 1) || (!sy.is_one() && m.1 % 2 == 1) {
                return Err(Error::OddExponent { x_exp: m.0, y_exp: m.1 });
            }
            let fx = num_traits::pow(sx.clone(), (m.0 / 2) as usize);
            let fy = num_traits::pow(sy.clone(), (m.1 / 2) as usize);
            let f = if sx.is_one() && sy.is_one() { BigRational::one() } else { fx * fy };
            out.add_term(*m, c * &GaussianRational::real(f));
        }
        Ok(out)
    }

    /// Even in each variable separately.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.0 % 2 == 0 && m.1 % 2 == 0)
    }

    pub fn eval_complex(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.terms.iter().map(|(m, c)| c.to_complex() * a.powu(m.0) * b.powu(m.1)).sum()
    }

    pub fn eval(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        self.terms.iter().map(|(m, c)| &(c * &a.pow(m.0)) * &b.pow(m.1)).sum()
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let (v1, v2) = match self.basis {
            Basis::XY => ("x", "y"),
            Basis::ZZbar => ("z", "zbar"),
        };
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in [(v1, m.0), (v2, m.1)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

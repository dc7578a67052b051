//! Hirota bilinear derivatives and residuals of bilinear forms.
//!
//! `D₁^a D₂^b f·g = Σ_{p≤a, q≤b} (−1)^{p+q} C(a,p) C(b,q) (∂₁^{a−p}∂₂^{b−q} f)(∂₁^p ∂₂^q g)`

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{parse_rational, Basis, ExactPoly, GaussianRational};

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Falling factorial `e (e−1) ⋯ (e−k+1)` for a formal (possibly negative) exponent.
fn falling(e: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, t| acc * BigInt::from(e - t))
}

pub fn hirota_d(a: u32, b: u32, f: &ExactPoly, g: &ExactPoly) -> Result<ExactPoly> {
    if f.basis() != g.basis() {
        return Err(Error::BasisMismatch { left: f.basis(), right: g.basis() });
    }
    let mut out = ExactPoly::zero(f.basis());
    for p in 0..=a {
        let fa = f.diff(crate::polyring::Axis::First, a - p);
        let ga = g.diff(crate::polyring::Axis::First, p);
        if fa.is_zero() || ga.is_zero() {
            continue;
        }
        for q in 0..=b {
            let fd = fa.diff(crate::polyring::Axis::Second, b - q);
            let gd = ga.diff(crate::polyring::Axis::Second, q);
            if fd.is_zero() || gd.is_zero() {
                continue;
            }
            let mut w = binomial(a, p) * binomial(b, q);
            if (p + q) % 2 == 1 {
                w = -w;
            }
            out.accumulate(&fd.mul_same_basis(&gd).scale(&GaussianRational::from_bigint(w)));
        }
    }
    Ok(out)
}

/// One-variable factor of the bilinear derivative of two monomials:
/// the coefficient of `t^{a+c−p}` in `D_t^p (t^a · t^c)`.
pub fn monomial_factor(p: u32, a: i64, c: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=p {
        let term = binomial(p, s) * falling(a, p - s) * falling(c, s);
        if s % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// Coefficient of `z^{a+c−p} z̄^{b+d−q}` in `D_z^p D_z̄^q (z^a z̄^b)·(z^c z̄^d)`.
///
/// Exponents are formal: the falling-factorial expression is a polynomial
/// identity, so negative exponents (monomials past the end of a chain) are
/// accepted and give the value the recursion formulas need.
pub fn hirota_monomial_zz(a: i64, b: i64, c: i64, d: i64, p: u32, q: u32) -> BigInt {
    monomial_factor(p, a, c) * monomial_factor(q, b, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTerm {
    pub weight: GaussianRational,
    pub a: u32,
    pub b: u32,
}

/// `Σ weight · D₁^a D₂^b` acting on `τ·τ`, in a declared basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    basis: Basis,
    terms: Vec<FormTerm>,
}

/// Named bilinear forms accepted by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormPreset {
    /// `D_x⁴ − D_x² − D_y²`
    Standard,
    /// `D_x² + D_y² − D_x⁴`
    EvenSection,
    /// `D_x⁴ − 3D_x² − 3D_y²`
    Yang,
    /// `3D_x⁴ − 3D_x² − D_y²`, the form behind `q = (3/2)∂_x² ln τ` with `q_yy = 3(q_xx + 4q² − q)_xx`
    Bnew,
}

impl FormPreset {
    pub const ALL: [FormPreset; 4] =
        [FormPreset::Standard, FormPreset::EvenSection, FormPreset::Yang, FormPreset::Bnew];

    pub fn name(self) -> &'static str {
        match self {
            FormPreset::Standard => "standard",
            FormPreset::EvenSection => "even-section",
            FormPreset::Yang => "yang",
            FormPreset::Bnew => "bnew",
        }
    }

    pub fn form(self) -> BilinearForm {
        let t = |w: i64, a, b| (GaussianRational::from_int(w), a, b);
        let terms = match self {
            FormPreset::Standard => vec![t(1, 4, 0), t(-1, 2, 0), t(-1, 0, 2)],
            FormPreset::EvenSection => vec![t(1, 2, 0), t(1, 0, 2), t(-1, 4, 0)],
            FormPreset::Yang => vec![t(1, 4, 0), t(-3, 2, 0), t(-3, 0, 2)],
            FormPreset::Bnew => vec![t(3, 4, 0), t(-3, 2, 0), t(-1, 0, 2)],
        };
        BilinearForm::new(Basis::XY, terms).expect("presets are valid")
    }
}

impl fmt::Display for FormPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormPreset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownForm(s.to_string()))
    }
}

impl BilinearForm {
    /// Rejects zero weights and odd total orders (those annihilate `τ·τ`).
    /// Terms with equal orders are merged.
    pub fn new(basis: Basis, terms: impl IntoIterator<Item = (GaussianRational, u32, u32)>) -> Result<Self> {
        let mut merged: Vec<FormTerm> = Vec::new();
        for (weight, a, b) in terms {
            if weight.is_zero() {
                return Err(Error::ZeroWeight { a, b });
            }
            if (a + b) % 2 == 1 {
                return Err(Error::OddOrder { a, b });
            }
            match merged.iter_mut().find(|t| t.a == a && t.b == b) {
                Some(t) => t.weight += &weight,
                None => merged.push(FormTerm { weight, a, b }),
            }
        }
        merged.retain(|t| !t.weight.is_zero());
        Ok(Self { basis, terms: merged })
    }

    /// Parses a custom form such as `"1:4:0,-1:2:0,-1:0:2"` (weight:a:b, comma separated).
    pub fn parse_custom(basis: Basis, spec: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            let [w, a, b] = parts.as_slice() else {
                return Err(Error::Format(format!("form term `{item}` is not weight:a:b")));
            };
            let order = |s: &str| s.trim().parse::<u32>().map_err(|_| Error::Format(format!("bad order `{s}`")));
            terms.push((GaussianRational::real(parse_rational(w)?), order(a)?, order(b)?));
        }
        Self::new(basis, terms)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            basis: self.basis,
            terms: self.terms.iter().map(|t| FormTerm { weight: &t.weight * s, a: t.a, b: t.b }).collect(),
        }
    }

    /// Rewrites an XY form in `(z, z̄)` using `D_x = D_z + D_z̄`, `D_y = i(D_z − D_z̄)`.
    pub fn to_zzbar(&self) -> Result<Self> {
        if self.basis != Basis::XY {
            return Err(Error::BasisMismatch { left: self.basis, right: Basis::XY });
        }
        let mut out: Vec<(GaussianRational, u32, u32)> = Vec::new();
        for t in &self.terms {
            let unit = GaussianRational::i().pow(t.b);
            for s in 0..=t.a {
                for u in 0..=t.b {
                    let mut k = binomial(t.a, s) * binomial(t.b, u);
                    if (t.b - u) % 2 == 1 {
                        k = -k;
                    }
                    let w = &(&t.weight * &unit) * &GaussianRational::from_bigint(k);
                    out.push((w, s + u, (t.a - s) + (t.b - u)));
                }
            }
        }
        // Merging may cancel whole terms, so drop zeros before validation.
        let mut merged: Vec<(GaussianRational, u32, u32)> = Vec::new();
        for (w, a, b) in out {
            match merged.iter_mut().find(|(_, a2, b2)| *a2 == a && *b2 == b) {
                Some(e) => e.0 += &w,
                None => merged.push((w, a, b)),
            }
        }
        merged.retain(|(w, _, _)| !w.is_zero());
        Self::new(Basis::ZZbar, merged)
    }

    /// Applies the form to `f·g`.
    pub fn apply(&self, f: &ExactPoly, g: &ExactPoly) -> Result<ExactPoly> {
        if f.basis() != self.basis {
            return Err(Error::BasisMismatch { left: self.basis, right: f.basis() });
        }
        let mut out = ExactPoly::zero(self.basis);
        for t in &self.terms {
            out.accumulate(&hirota_d(t.a, t.b, f, g)?.scale(&t.weight));
        }
        Ok(out)
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v1, v2) = match self.basis {
            Basis::XY => ("x", "y"),
            Basis::ZZbar => ("z", "zbar"),
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = format!("({})", t.weight);
                if t.a > 0 {
                    s.push_str(&format!("*D{v1}^{}", t.a));
                }
                if t.b > 0 {
                    s.push_str(&format!("*D{v2}^{}", t.b));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ weight · D₁^a D₂^b τ·τ`; the zero polynomial means `τ` solves the bilinear equation.
pub fn residual(form: &BilinearForm, tau: &ExactPoly) -> Result<ExactPoly> {
    form.apply(tau, tau)
}

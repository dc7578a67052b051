//! Closed-form spectral data of the constant-coefficient Lax system
//! `U' = T(k) U`: eigenvalues, the eigenvector matrix `E = n(k) P(k)`, the
//! phases `Λ_j = λ_j x + σ_j y` at the four collision points, and the entries
//! of `Φ = E e^{Mx} E^{-1}`.
//!
//! `√(3k² + 8)` is the principal branch throughout.

mod exact;

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

pub use exact::Q6;

use crate::error::{Error, Result};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

pub fn eigenvalues(k: C) -> [C; 3] {
    let s = (3.0 * k * k + 8.0).sqrt();
    [I * k, (-I * k + s) / 2.0, (-I * k - s) / 2.0]
}

/// `σ_j = i(3λ_j² − 4)`.
pub fn sigmas(k: C) -> [C; 3] {
    eigenvalues(k).map(|l| I * (3.0 * l * l - 4.0))
}

/// The points where eigenvalues collide and `n(k)` blows up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpectralPoint {
    #[serde(rename = "k1+")]
    K1Plus,
    #[serde(rename = "k1-")]
    K1Minus,
    #[serde(rename = "k2+")]
    K2Plus,
    #[serde(rename = "k2-")]
    K2Minus,
}

impl SpectralPoint {
    pub const ALL: [SpectralPoint; 4] =
        [SpectralPoint::K1Plus, SpectralPoint::K1Minus, SpectralPoint::K2Plus, SpectralPoint::K2Minus];

    pub fn name(self) -> &'static str {
        match self {
            SpectralPoint::K1Plus => "k1+",
            SpectralPoint::K1Minus => "k1-",
            SpectralPoint::K2Plus => "k2+",
            SpectralPoint::K2Minus => "k2-",
        }
    }

    /// `κ` with `k = iκ√6`.
    fn kappa(self) -> (i64, i64) {
        match self {
            SpectralPoint::K1Plus => (1, 3),
            SpectralPoint::K1Minus => (-1, 3),
            SpectralPoint::K2Plus => (2, 3),
            SpectralPoint::K2Minus => (-2, 3),
        }
    }

    pub fn k(self) -> C {
        let (p, q) = self.kappa();
        I * (p as f64 / q as f64) * 6f64.sqrt()
    }

    /// `k` as `(√6-coefficient of Im k)`, exactly.
    pub fn k_exact(self) -> Q6 {
        let (p, q) = self.kappa();
        Q6::surd(p, q)
    }
}

impl fmt::Display for SpectralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpectralPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpectralPoint::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown spectral point `{s}` (expected k1+, k1-, k2+, k2-)")))
    }
}

/// `Λ_j = λ_j x + σ_j y` with `λ_j` real and `σ_j` imaginary; `sigma_im` is `σ_j / i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase {
    pub point: SpectralPoint,
    pub j: usize,
    pub lambda: Q6,
    pub sigma_im: Q6,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}({}) = ({})x + ({})iy", self.j, self.point, self.lambda, self.sigma_im)
    }
}

/// Exact `λ_j` at a collision point: with `k = iκ√6`, `ik = −κ√6` and
/// `3k² + 8 = 8 − 18κ²` is `6` or `0`, so every quantity lies in `Q(√6)`.
pub fn exact_eigenvalues(p: SpectralPoint) -> [Q6; 3] {
    let ik = -&p.k_exact();
    let root = match p {
        SpectralPoint::K1Plus | SpectralPoint::K1Minus => Q6::surd(1, 1),
        SpectralPoint::K2Plus | SpectralPoint::K2Minus => Q6::int(0),
    };
    let minus_ik = -&ik;
    [ik.clone(), (&minus_ik + &root).half(), (&minus_ik - &root).half()]
}

/// The twelve phases, computed exactly.
pub fn phase_table() -> Vec<Phase> {
    let mut out = Vec::with_capacity(12);
    for p in SpectralPoint::ALL {
        for (j, l) in exact_eigenvalues(p).into_iter().enumerate() {
            let sigma_im = &(&Q6::int(3) * &(&l * &l)) - &Q6::int(4);
            out.push(Phase { point: p, j: j + 1, lambda: l, sigma_im });
        }
    }
    out
}

/// Reference values the computed table is compared against, as `(point, j, λ, σ/i)`.
pub fn reference_phase_table() -> Vec<Phase> {
    use SpectralPoint::*;
    let e = |point, j, lx: (i64, i64), sy: i64| Phase { point, j, lambda: Q6::surd(lx.0, lx.1), sigma_im: Q6::int(sy) };
    vec![
        e(K1Plus, 1, (-1, 3), -2),
        e(K1Plus, 2, (2, 3), 4),
        e(K1Plus, 3, (-1, 3), -2),
        e(K1Minus, 1, (1, 3), -2),
        e(K1Minus, 2, (1, 3), 4),
        e(K1Minus, 3, (-2, 3), -2),
        e(K2Plus, 1, (-2, 3), 4),
        e(K2Plus, 2, (1, 3), -2),
        e(K2Plus, 3, (1, 3), -2),
        e(K2Minus, 1, (2, 3), 4),
        e(K2Minus, 2, (-1, 3), -2),
        e(K2Minus, 3, (-1, 3), -2),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseComparison {
    pub computed: Phase,
    pub reference: Phase,
    pub matches: bool,
}

pub fn compare_phase_table() -> Vec<PhaseComparison> {
    phase_table()
        .into_iter()
        .zip(reference_phase_table())
        .map(|(c, r)| {
            let matches = c == r;
            PhaseComparison { computed: c, reference: r, matches }
        })
        .collect()
}

/// `P(k)`: the Vandermonde matrix of `(λ₁, λ₂, λ₃)`.
pub fn p_matrix(k: C) -> Matrix3<C> {
    let l = eigenvalues(k);
    Matrix3::from_fn(|r, c| l[c].powu(r as u32))
}

/// `n(k) = ((3k²+2)√(3k²+8))^{-1}`.
pub fn normalization(k: C) -> Result<C> {
    let a = 3.0 * k * k + 2.0;
    let b = (3.0 * k * k + 8.0).sqrt();
    if a.norm() == 0.0 {
        return Err(Error::SingularPoint("3k²+2"));
    }
    if b.norm() == 0.0 {
        return Err(Error::SingularPoint("3k²+8"));
    }
    Ok((a * b).inv())
}

fn near_singular(k: C) -> Result<()> {
    // exact float zeros are rare at the irrational points, so test against a relative threshold
    let tol = 1e-12 * (1.0 + k.norm_sqr());
    if (3.0 * k * k + 2.0).norm() < tol {
        return Err(Error::SingularPoint("3k²+2"));
    }
    if (3.0 * k * k + 8.0).norm() < tol {
        return Err(Error::SingularPoint("3k²+8"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EMatrix {
    pub n: C,
    pub e: Matrix3<C>,
}

impl EMatrix {
    pub fn det(&self) -> C {
        self.e.determinant()
    }
}

/// `E(k) = n(k) P(k)`. Note `det P = (3k²+2)√(3k²+8) = 1/n`, so `det E = n²`.
pub fn e_matrix(k: C) -> Result<EMatrix> {
    near_singular(k)?;
    let n = normalization(k)?;
    Ok(EMatrix { n, e: p_matrix(k) * n })
}

/// `cosh t` and `sinh t / t` as entire functions of `t`.
fn cosh_sinhc(t: C) -> (C, C) {
    if t.norm() < 1e-4 {
        let t2 = t * t;
        (1.0 + t2 / 2.0 + t2 * t2 / 24.0, 1.0 + t2 / 6.0 + t2 * t2 / 120.0)
    } else {
        (t.cosh(), t.sinh() / t)
    }
}

/// `(Φ₁₂, Φ₂₂)` from their closed forms, with `t = (x/2)√(3k²+8)`.
///
/// Only `t²` enters `cosh t` and `x · sinh t / t`, so the branch of the root is irrelevant.
pub fn phi_entries(k: C, x: f64) -> Result<(C, C)> {
    let a = 3.0 * k * k + 2.0;
    if a.norm() == 0.0 {
        return Err(Error::SingularPoint("3k²+2"));
    }
    let t = x / 2.0 * (3.0 * k * k + 8.0).sqrt();
    let (ch, shc) = cosh_sinhc(t);
    let half = (-I * k * x / 2.0).exp();
    let full = (I * k * x).exp();
    let ki = k * I;
    let phi12 = ki / a * half * ch + (3.0 * k * k + 4.0) / (6.0 * k * k + 4.0) * x * half * shc - ki / a * full;
    let phi22 = (2.0 * k * k + 2.0) / a * half * ch + ki / a * x * half * shc + k * k / a * full;
    Ok((phi12, phi22))
}

/// `Φ = P e^{Mx} P^{-1}` by direct matrix algebra (generic `k` only).
pub fn phi_matrix(k: C, x: f64) -> Result<Matrix3<C>> {
    near_singular(k)?;
    let p = p_matrix(k);
    let inv = p.try_inverse().ok_or(Error::SingularPoint("det P"))?;
    let l = eigenvalues(k);
    let m = Matrix3::from_diagonal(&Vector3::new((l[0] * x).exp(), (l[1] * x).exp(), (l[2] * x).exp()));
    Ok(p * m * inv)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub eps: f64,
    pub phi12: [f64; 2],
    pub phi22: [f64; 2],
    /// Distance to the previous row's `(Φ₁₂, Φ₂₂)`.
    pub step: Option<f64>,
}

/// `Φ₁₂, Φ₂₂` at `k = k_p (1 + ε)` for each `ε`; a removable singularity shows as steps shrinking like `ε`.
pub fn removable_probe(point: SpectralPoint, x: f64, eps: &[f64]) -> Result<Vec<ProbeRow>> {
    let mut rows: Vec<ProbeRow> = Vec::with_capacity(eps.len());
    let mut prev: Option<(C, C)> = None;
    for &e in eps {
        let (a, b) = phi_entries(point.k() * (1.0 + e), x)?;
        let step = prev.map(|(pa, pb)| ((a - pa).norm_sqr() + (b - pb).norm_sqr()).sqrt());
        rows.push(ProbeRow { eps: e, phi12: [a.re, a.im], phi22: [b.re, b.im], step });
        prev = Some((a, b));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn samples() -> Vec<C> {
        (0..50)
            .map(|i| {
                let t = i as f64;
                c((1.3 * t).sin() * 2.0 + 0.1, (0.7 * t).cos() * 1.5 - 0.05)
            })
            .collect()
    }

    #[test]
    fn eigenvalues_at_zero() {
        let l = eigenvalues(c(0.0, 0.0));
        assert!(l[0].norm() < 1e-15);
        assert!((l[1] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((l[2] + c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn trace_free_and_characteristic_polynomial() {
        for k in samples() {
            let l = eigenvalues(k);
            assert!((l[0] + l[1] + l[2]).norm() < 1e-12);
            // λ₁λ₂λ₃ = −ik(k²+2)
            assert!((l[0] * l[1] * l[2] + I * k * (k * k + 2.0)).norm() < 1e-10 * (1.0 + k.norm().powi(3)));
        }
    }

    #[test]
    fn exact_table_entries() {
        let t = phase_table();
        assert_eq!(t[0].lambda, Q6::surd(-1, 3));
        assert_eq!(t[0].sigma_im, Q6::int(-2));
        assert_eq!(t[9].lambda, Q6::surd(2, 3));
        assert_eq!(t[9].sigma_im, Q6::int(4));
        for p in &t {
            assert!(num_traits::Zero::is_zero(&p.sigma_im.s));
        }
    }

    #[test]
    fn exact_table_agrees_with_floating_point() {
        for p in phase_table() {
            let l = eigenvalues(p.point.k())[p.j - 1];
            let s = sigmas(p.point.k())[p.j - 1];
            // at k₂,± the root √(3k²+8) vanishes, so rounding in 3k²+8 is amplified to ~1e−8
            assert!((l - c(p.lambda.to_f64(), 0.0)).norm() < 1e-6, "{p}");
            assert!((s - c(0.0, p.sigma_im.to_f64())).norm() < 1e-6, "{p}");
        }
    }

    #[test]
    fn reference_comparison_pinpoints_the_swapped_row() {
        let cmp = compare_phase_table();
        let bad: Vec<(SpectralPoint, usize)> =
            cmp.iter().filter(|c| !c.matches).map(|c| (c.computed.point, c.computed.j)).collect();
        assert_eq!(bad, vec![(SpectralPoint::K1Minus, 2), (SpectralPoint::K1Minus, 3)]);
        // the λ parts agree; the σ parts are exchanged
        assert_eq!(cmp[4].computed.lambda, cmp[4].reference.lambda);
        assert_eq!(cmp[4].computed.sigma_im, cmp[5].reference.sigma_im);
    }

    #[test]
    fn determinant_of_e_is_n_squared() {
        for k in samples() {
            let e = e_matrix(k).unwrap();
            let det_p = p_matrix(k).determinant();
            assert!((e.n * det_p - 1.0).norm() < 1e-10);
            assert!((e.det() - e.n * e.n).norm() < 1e-10 * e.n.norm_sqr().max(1.0));
        }
        let e1 = e_matrix(c(1.0, 0.0)).unwrap();
        assert!((e1.det() - c(1.0 / (25.0 * 11.0), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_points_are_named() {
        assert!(matches!(e_matrix(SpectralPoint::K1Plus.k()), Err(Error::SingularPoint("3k²+2"))));
        assert!(matches!(e_matrix(SpectralPoint::K2Minus.k()), Err(Error::SingularPoint("3k²+8"))));
    }

    #[test]
    fn phi_is_identity_at_origin() {
        for k in samples() {
            let (a, b) = phi_entries(k, 0.0).unwrap();
            assert!(a.norm() < 1e-14 && (b - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn closed_forms_match_matrix_exponential() {
        for k in samples().into_iter().take(20) {
            for x in [0.3, 1.0, -0.8] {
                let m = phi_matrix(k, x).unwrap();
                let (a, b) = phi_entries(k, x).unwrap();
                let scale = 1.0 + m[(0, 1)].norm() + m[(1, 1)].norm();
                assert!((m[(0, 1)] - a).norm() < 1e-9 * scale, "k = {k}, x = {x}");
                assert!((m[(1, 1)] - b).norm() < 1e-9 * scale, "k = {k}, x = {x}");
            }
        }
    }

    #[test]
    fn removable_singularities() {
        for p in SpectralPoint::ALL {
            let rows = removable_probe(p, 1.0, &[1e-2, 1e-3, 1e-4]).unwrap();
            let s1 = rows[1].step.unwrap();
            let s2 = rows[2].step.unwrap();
            assert!(s1.is_finite() && s2.is_finite());
            // steps shrink at least linearly in ε (faster where ∂Φ/∂k happens to vanish)
            assert!(s1 / s2 > 5.0, "{p}: {s1} / {s2}");
        }
    }

    #[test]
    fn points_parse() {
        assert_eq!("k2-".parse::<SpectralPoint>().unwrap(), SpectralPoint::K2Minus);
        assert!("k3".parse::<SpectralPoint>().is_err());
    }
}

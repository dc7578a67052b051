//! Simultaneous root finding for univariate polynomials with complex
//! coefficients: Aberth–Ehrlich iteration with Newton polish, falling back to
//! companion-matrix eigenvalues for real coefficients.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ROOT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 500;

type Method = fn(&[Complex64]) -> Option<Vec<Complex64>>;

/// `p(z)` and `p'(z)` for ascending coefficients.
pub fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

/// `|p(z)| / (Σ |c_k| |z|^k)`: the relative backward error of `z` as a root.
pub fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(c, z);
    let scale = c.iter().rev().fold(0.0, |acc, ck| acc * z.norm() + ck.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

fn trim(c: &[Complex64]) -> Result<&[Complex64]> {
    let d = c
        .iter()
        .rposition(|v| *v != Complex64::new(0.0, 0.0))
        .ok_or_else(|| Error::Precondition("the zero polynomial has no isolated roots".into()))?;
    Ok(&c[..=d])
}

fn polish(c: &[Complex64], z: &mut Complex64) {
    for _ in 0..4 {
        let (p, dp) = eval_with_derivative(c, *z);
        if dp.norm() == 0.0 {
            return;
        }
        let step = p / dp;
        if !step.is_finite() {
            return;
        }
        *z -= step;
    }
}

fn worst(c: &[Complex64], zs: &[Complex64]) -> f64 {
    zs.iter().map(|&z| backward_error(c, z)).fold(0.0, f64::max)
}

fn aberth(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d];
    let r0 = if c[0].norm() > 0.0 { (c[0] / lead).norm().powf(1.0 / d as f64) } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0.max(1e-3), 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut biggest = 0.0f64;
        for k in 0..d {
            let (p, dp) = eval_with_derivative(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            biggest = biggest.max(w.norm() / (1.0 + z[k].norm()));
        }
        if biggest < 1e-15 {
            return Some(z);
        }
    }
    Some(z)
}

/// Eigenvalues of the companion matrix; only used for real coefficients.
/// `None` when the Schur iteration does not settle.
fn companion(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d].re;
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i].re / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, MAX_ITER)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// All roots of the polynomial with ascending coefficients `c`, each with backward
/// error at most [`ROOT_TOL`].
pub fn roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trim(c)?;
    if c.len() == 1 {
        return Ok(Vec::new());
    }
    let real = c.iter().all(|v| v.im == 0.0);
    let methods: &[Method] = if real { &[aberth, companion] } else { &[aberth] };
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for method in methods {
        let Some(mut zs) = method(c) else { continue };
        for z in zs.iter_mut() {
            polish(c, z);
        }
        let err = worst(c, &zs);
        if err <= ROOT_TOL {
            return Ok(zs);
        }
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, zs));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER, residual: best.map_or(f64::INFINITY, |b| b.0) })
}

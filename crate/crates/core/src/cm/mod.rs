//! Calogero–Moser description of the poles of `q = (3/2) ∂_x² ln τ̃`:
//! `q = −(3/2) Σ 1/(x − η_j(y))²` with `∂_y η_j = β_j`.
//!
//! All routines are in double precision. The constants `36`, `3` and `72`
//! belong to the `q_yy = 3(q_xx + 4q² − q)_xx` normalization, so τ must be
//! rescaled (see [`crate::catalog::to_bnew`]) before its poles are taken.

pub mod roots;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Axis, ExactPoly, RealPoly};

pub const LOCUS_TOL: f64 = 1e-9;
/// Poles closer than this are treated as coincident.
pub const MIN_POLE_GAP: f64 = 1e-8;

type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct PoleConfig {
    pub eta: Vec<C>,
    pub beta: Vec<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub a: Vec<C>,
    pub b: Vec<C>,
}

/// The two per-pole residual vectors of the locus (or tangent-space) equations.
#[derive(Clone, Debug, PartialEq)]
pub struct Residuals {
    pub first: Vec<C>,
    pub second: Vec<C>,
}

impl Residuals {
    pub fn max_modulus(&self) -> f64 {
        self.first.iter().chain(&self.second).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl PoleConfig {
    pub fn new(eta: Vec<C>, beta: Vec<C>) -> Result<Self> {
        if eta.len() != beta.len() {
            return Err(Error::Precondition(format!("{} positions but {} velocities", eta.len(), beta.len())));
        }
        Ok(Self { eta, beta })
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn min_gap(&self) -> f64 {
        let mut g = f64::INFINITY;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                g = g.min((self.eta[i] - self.eta[j]).norm());
            }
        }
        g
    }

    fn check_distinct(&self) -> Result<()> {
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let distance = (self.eta[i] - self.eta[j]).norm();
                if distance < MIN_POLE_GAP {
                    return Err(Error::CoincidentPoles { i, j, distance });
                }
            }
        }
        Ok(())
    }
}

impl TangentVector {
    pub fn zero(n: usize) -> Self {
        Self { a: vec![C::new(0.0, 0.0); n], b: vec![C::new(0.0, 0.0); n] }
    }
}

/// `Σ_{k≠j} (β_j+β_k)/Δ³` and `β_j² + Σ_{k≠j} 36/Δ² + 3`, `Δ = η_j − η_k`.
pub fn locus_residual(cfg: &PoleConfig) -> Result<Residuals> {
    cfg.check_distinct()?;
    let n = cfg.n();
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for j in 0..n {
        let mut s1 = C::new(0.0, 0.0);
        let mut s2 = C::new(0.0, 0.0);
        for k in (0..n).filter(|&k| k != j) {
            let d = cfg.eta[j] - cfg.eta[k];
            s1 += (cfg.beta[j] + cfg.beta[k]) / (d * d * d);
            s2 += 36.0 / (d * d);
        }
        first.push(s1);
        second.push(cfg.beta[j] * cfg.beta[j] + s2 + 3.0);
    }
    Ok(Residuals { first, second })
}

/// The linearized locus equations at `cfg` applied to `(a, b)`.
pub fn tangent_residual(cfg: &PoleConfig, v: &TangentVector) -> Result<Residuals> {
    cfg.check_distinct()?;
    let n = cfg.n();
    if v.a.len() != n || v.b.len() != n {
        return Err(Error::Precondition("tangent vector length does not match the configuration".into()));
    }
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for j in 0..n {
        let mut s1 = C::new(0.0, 0.0);
        let mut s2 = C::new(0.0, 0.0);
        for k in (0..n).filter(|&k| k != j) {
            let d = cfg.eta[j] - cfg.eta[k];
            let d3 = d * d * d;
            let da = v.a[j] - v.a[k];
            s1 += (v.b[j] + v.b[k]) / d3 - 3.0 * (cfg.beta[j] + cfg.beta[k]) * da / (d3 * d);
            s2 += 36.0 * da / d3;
        }
        first.push(s1);
        second.push(cfg.beta[j] * v.b[j] - s2);
    }
    Ok(Residuals { first, second })
}

/// The flow `∂_y η_j = β_j`, `∂_y β_j = Σ_{k≠j} 72/(η_j − η_k)³`.
pub fn cm_rhs(cfg: &PoleConfig) -> Result<TangentVector> {
    cfg.check_distinct()?;
    let n = cfg.n();
    let b = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| k != j)
                .map(|k| {
                    let d = cfg.eta[j] - cfg.eta[k];
                    72.0 / (d * d * d)
                })
                .sum()
        })
        .collect();
    Ok(TangentVector { a: cfg.beta.clone(), b })
}

fn horner_c(c: &[f64], z: C) -> (C, C) {
    let cc: Vec<C> = c.iter().map(|&v| C::new(v, 0.0)).collect();
    roots::eval_with_derivative(&cc, z)
}

/// Positions: the `x`-roots of `τ(·, y)`; velocities `β = −τ_y/τ_x` at each root.
pub fn poles_from_tau(tau: &ExactPoly, y: f64) -> Result<PoleConfig> {
    let t = RealPoly::from_exact(tau)?;
    let ty = RealPoly::from_exact(&tau.diff(Axis::Y, 1))?;
    let row = t.row(y);
    let row_y = ty.row(y);
    let coeffs: Vec<C> = row.iter().map(|&v| C::new(v, 0.0)).collect();
    let eta = roots::roots(&coeffs)?;
    let beta = eta
        .iter()
        .map(|&z| {
            let (_, tx) = horner_c(&row, z);
            let (tyv, _) = horner_c(&row_y, z);
            -tyv / tx
        })
        .collect();
    let cfg = PoleConfig::new(eta, beta)?;
    cfg.check_distinct()?;
    Ok(cfg)
}

/// Whether the multiset of `eta` is closed under conjugation (each match within `tol`).
pub fn conjugation_closed(eta: &[C], tol: f64) -> bool {
    matching(eta, &eta.iter().map(|z| z.conj()).collect::<Vec<_>>(), tol).is_ok()
}

/// Greedy nearest-neighbour bijection `from[i] ↦ to[perm[i]]`. Fails when a nearest match is
/// farther than `tol`, or when the runner-up is within twice the nearest distance.
pub fn matching(from: &[C], to: &[C], tol: f64) -> Result<Vec<usize>> {
    if from.len() != to.len() {
        return Err(Error::AmbiguousPairing(format!("{} roots vs {}", from.len(), to.len())));
    }
    let mut used = vec![false; to.len()];
    let mut perm = Vec::with_capacity(from.len());
    for (i, z) in from.iter().enumerate() {
        let mut d: Vec<(f64, usize)> = to.iter().enumerate().map(|(k, w)| ((z - w).norm(), k)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (d1, k1) = d[0];
        if d1 > tol {
            return Err(Error::AmbiguousPairing(format!("root {i} has no partner within {tol:e} (nearest {d1:e})")));
        }
        if d.len() > 1 && d[1].0 < 2.0 * d1 {
            return Err(Error::AmbiguousPairing(format!("root {i} is equidistant from two candidates")));
        }
        if used[k1] {
            return Err(Error::AmbiguousPairing(format!("root {i} maps onto an already matched root")));
        }
        used[k1] = true;
        perm.push(k1);
    }
    Ok(perm)
}

/// Largest `|β_j − (η_j(y+ε) − η_j(y−ε))/2ε|` after nearest-neighbour pairing of the roots.
pub fn finite_difference_beta_error(tau: &ExactPoly, y: f64, eps: f64) -> Result<f64> {
    let mid = poles_from_tau(tau, y)?;
    let up = poles_from_tau(tau, y + eps)?;
    let down = poles_from_tau(tau, y - eps)?;
    let tol = 0.25 * mid.min_gap();
    let pu = matching(&mid.eta, &up.eta, tol)?;
    let pd = matching(&mid.eta, &down.eta, tol)?;
    Ok((0..mid.n()).map(|j| (mid.beta[j] - (up.eta[pu[j]] - down.eta[pd[j]]) / (2.0 * eps)).norm()).fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmCheckRow {
    pub y: f64,
    pub n_poles: usize,
    pub max_locus_residual: f64,
    pub max_tangent_residual_of_flow: f64,
}

/// Locus and flow-tangency residuals of the poles of `τ̃` at each `y`, computed in parallel.
pub fn cm_check(tau: &ExactPoly, ys: &[f64]) -> Result<Vec<CmCheckRow>> {
    ys.par_iter()
        .map(|&y| {
            let cfg = poles_from_tau(tau, y)?;
            let locus = locus_residual(&cfg)?;
            let flow = tangent_residual(&cfg, &cm_rhs(&cfg)?)?;
            Ok(CmCheckRow {
                y,
                n_poles: cfg.n(),
                max_locus_residual: locus.max_modulus(),
                max_tangent_residual_of_flow: flow.max_modulus(),
            })
        })
        .collect()
}

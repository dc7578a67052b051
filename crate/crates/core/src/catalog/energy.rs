use rayon::prelude::*;
use serde::Serialize;

use super::{to_bnew, Bindings, TauRecord};
use crate::error::{Error, Result};
use crate::polyring::{horner_derivs, Axis, ExactPoly, RealPoly};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyEstimate {
    pub value: f64,
    pub half_width: f64,
    pub step: f64,
    pub nodes_per_axis: usize,
    /// Whether the quadrant symmetry of an even τ was used.
    pub quadrant_symmetric: bool,
}

/// `H(q)` for `q = (3/2) ∂_x² ln τ̃` with `τ̃` the `(x, √3 y)` rescaling of a standard-form record.
pub fn energy(rec: &TauRecord, bindings: &Bindings, half_width: f64, step: f64) -> Result<EnergyEstimate> {
    energy_of_tau(&to_bnew(rec, bindings)?, half_width, step)
}

/// Midpoint-rule estimate over `[−R, R]²` of
/// `∫ 3/2 q_x² + 4q³ − 3/2 q² − w²`, `q = (3/2) L_xx`, `w = (3/2) L_xy`, `L = ln τ`.
///
/// `w` is the closed form of `∂_x^{−1} ∂_y q`. The integrand is assembled from
/// `τ, τ_x, τ_xx, τ_xxx, τ_y, τ_xy`, each row evaluated by univariate Horner.
pub fn energy_of_tau(tau: &ExactPoly, half_width: f64, step: f64) -> Result<EnergyEstimate> {
    quadrature(tau, half_width, step, true)
}

fn quadrature(tau: &ExactPoly, half_width: f64, step: f64, use_symmetry: bool) -> Result<EnergyEstimate> {
    if !(half_width > 0.0 && step > 0.0 && step <= half_width) {
        return Err(Error::Precondition(format!("need 0 < h <= R (got R = {half_width}, h = {step})")));
    }
    let n = (2.0 * half_width / step).round() as usize;
    let h = 2.0 * half_width / n as f64;
    let t = RealPoly::from_exact(tau)?;
    let ty = RealPoly::from_exact(&tau.diff(Axis::Y, 1))?;
    let symmetric = use_symmetry && tau.is_even() && n.is_multiple_of(2);

    let node = |k: usize| -half_width + (k as f64 + 0.5) * h;
    let (rows, cols): (Vec<usize>, Vec<usize>) =
        if symmetric { ((n / 2..n).collect(), (n / 2..n).collect()) } else { ((0..n).collect(), (0..n).collect()) };

    let total: f64 = rows
        .par_iter()
        .map(|&ky| {
            let y = node(ky);
            let row = t.row(y);
            let row_y = ty.row(y);
            let mut acc = 0.0;
            for &kx in &cols {
                acc += integrand(&row, &row_y, node(kx));
            }
            acc
        })
        .sum();
    let value = total * h * h * if symmetric { 4.0 } else { 1.0 };
    Ok(EnergyEstimate { value, half_width, step: h, nodes_per_axis: n, quadrant_symmetric: symmetric })
}

fn integrand(row: &[f64], row_y: &[f64], x: f64) -> f64 {
    let [f, fx, fxx, fxxx] = horner_derivs::<4>(row, x);
    let [fy, fxy] = horner_derivs::<2>(row_y, x);
    let (a, b, c) = (fx / f, fxx / f, fxxx / f);
    let lxx = b - a * a;
    let lxxx = c - 3.0 * a * b + 2.0 * a * a * a;
    let lxy = fxy / f - a * fy / f;
    let q = 1.5 * lxx;
    let qx = 1.5 * lxxx;
    let w = 1.5 * lxy;
    1.5 * qx * qx + 4.0 * q * q * q - 1.5 * q * q - w * w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Basis, GaussianRational};

    #[test]
    fn constant_tau_has_zero_energy() {
        let c = ExactPoly::constant(Basis::XY, GaussianRational::from_int(7));
        assert_eq!(energy_of_tau(&c, 10.0, 0.5).unwrap().value, 0.0);
    }

    #[test]
    fn symmetric_and_full_grids_agree() {
        let t = ExactPoly::from_int_terms(Basis::XY, &[(2, 0, 1), (0, 2, 3), (0, 0, 3)]);
        let a = quadrature(&t, 20.0, 0.1, true).unwrap();
        let b = quadrature(&t, 20.0, 0.1, false).unwrap();
        assert!(a.quadrant_symmetric && !b.quadrant_symmetric);
        assert!((a.value - b.value).abs() < 1e-10 * a.value.abs());
    }

    #[test]
    fn rejects_bad_grid() {
        let t = ExactPoly::radius_squared();
        assert!(energy_of_tau(&t, 1.0, 0.0).is_err());
        assert!(energy_of_tau(&t, 1.0, 2.0).is_err());
    }
}

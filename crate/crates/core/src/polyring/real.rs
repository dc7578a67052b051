//! Double-precision snapshots of real `(x, y)` polynomials for the numeric
//! stages (quadrature, root finding, sampling).

use super::gauss::rat_to_f64;
use super::poly::{Basis, ExactPoly};
use crate::error::{Error, Result};

/// Dense `c[i][j]` for `x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<Vec<f64>>,
}

impl RealPoly {
    pub fn from_exact(p: &ExactPoly) -> Result<Self> {
        if p.basis() != Basis::XY {
            return Err(Error::BasisMismatch { left: p.basis(), right: Basis::XY });
        }
        if !p.is_real() {
            return Err(Error::Precondition("numeric evaluation needs real coefficients".into()));
        }
        let dx = p.degree_in(super::Axis::First).unwrap_or(0) as usize;
        let dy = p.degree_in(super::Axis::Second).unwrap_or(0) as usize;
        let mut coeffs = vec![vec![0.0; dy + 1]; dx + 1];
        for (m, c) in p.terms() {
            coeffs[m.0 as usize][m.1 as usize] = rat_to_f64(&c.re);
        }
        Ok(Self { coeffs })
    }

    /// Degree in `x`.
    pub fn degree_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `p(·, y)` in ascending powers of `x`.
    pub fn row(&self, y: f64) -> Vec<f64> {
        self.coeffs.iter().map(|col| col.iter().rev().fold(0.0, |acc, c| acc * y + c)).collect()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.row(y).iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// `p(x), p'(x), …, p^{(K-1)}(x)` for ascending coefficients, by repeated synthetic division.
pub fn horner_derivs<const K: usize>(coeffs: &[f64], x: f64) -> [f64; K] {
    let mut out = [0.0; K];
    for &c in coeffs.iter().rev() {
        for k in (1..K).rev() {
            out[k] = out[k] * x + out[k - 1];
        }
        out[0] = out[0] * x + c;
    }
    let mut fact = 1.0;
    for (k, v) in out.iter_mut().enumerate().skip(1) {
        fact *= k as f64;
        *v *= fact;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_and_eval() {
        let p = ExactPoly::from_int_terms(Basis::XY, &[(2, 0, 1), (0, 2, 3), (0, 0, 3), (1, 1, -2)]);
        let r = RealPoly::from_exact(&p).unwrap();
        assert_eq!(r.row(2.0), vec![15.0, -4.0, 1.0]);
        assert_eq!(r.eval(1.0, 2.0), 12.0);
        assert_eq!(r.degree_x(), 2);
    }

    #[test]
    fn derivatives() {
        // x³ − 2x + 5 at x = 2: 9, 10, 12, 6
        let d = horner_derivs::<4>(&[5.0, -2.0, 0.0, 1.0], 2.0);
        assert_eq!(d, [9.0, 10.0, 12.0, 6.0]);
    }

    #[test]
    fn rejects_complex() {
        let p = ExactPoly::x().to_zzbar().unwrap();
        assert!(RealPoly::from_exact(&p).is_err());
    }
}

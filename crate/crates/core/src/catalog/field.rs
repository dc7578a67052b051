use num_rational::BigRational;
use serde::Serialize;

use super::{Bindings, TauRecord};
use crate::error::Result;
use crate::polyring::{Axis, ExactPoly, GaussianRational, RealPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: ExactPoly,
    pub denominator: ExactPoly,
}

impl RationalFunction {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// `u = c ∂_x² ln τ = c (τ τ_xx − τ_x²) / τ²`.
pub fn u_from_tau(rec: &TauRecord, bindings: &Bindings) -> Result<RationalFunction> {
    let tau = rec.tau(bindings)?;
    field_of(&tau, &rec.scale_c)
}

pub(crate) fn field_of(tau: &ExactPoly, c: &BigRational) -> Result<RationalFunction> {
    let tx = tau.diff(Axis::X, 1);
    let txx = tau.diff(Axis::X, 2);
    let numerator = tau.mul(&txx)?.sub(&tx.mul(&tx)?)?.scale(&GaussianRational::real(c.clone()));
    Ok(RationalFunction { numerator, denominator: tau.mul(tau)? })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusBound {
    pub radius: f64,
    /// `max |u| r²` over the accepted samples on this circle.
    pub bound: f64,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub radii: Vec<RadiusBound>,
    /// `max |u| r²` over all circles.
    pub bound: f64,
}

/// Samples `|u| r²` on circles. Samples where the denominator vanishes or
/// leaves the floating-point range are skipped and counted.
pub fn decay_check(u: &RationalFunction, radii: &[f64], samples_per_circle: usize) -> Result<DecayReport> {
    let num = RealPoly::from_exact(&u.numerator)?;
    let den = RealPoly::from_exact(&u.denominator)?;
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut bound = 0.0f64;
        let mut skipped = 0;
        for s in 0..samples_per_circle {
            let th = 2.0 * std::f64::consts::PI * (s as f64 + 0.5) / samples_per_circle as f64;
            let (x, y) = (r * th.cos(), r * th.sin());
            let d = den.eval(x, y);
            if !d.is_finite() || d.abs() <= f64::MIN_POSITIVE {
                skipped += 1;
                continue;
            }
            bound = bound.max((num.eval(x, y) / d).abs() * r * r);
        }
        out.push(RadiusBound { radius: r, bound, skipped });
    }
    let bound = out.iter().map(|b| b.bound).fold(0.0, f64::max);
    Ok(DecayReport { radii: out, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::polyring::{rat, Basis};

    #[test]
    fn lump_field_closed_form() {
        let rec = Catalog::builtin().get("lump2").unwrap();
        let u = u_from_tau(rec, &Bindings::new()).unwrap();
        // 2(2τ − 4x²) = 4(y² − x² + 3)
        assert_eq!(u.numerator, ExactPoly::from_int_terms(Basis::XY, &[(2, 0, -4), (0, 2, 4), (0, 0, 12)]));
        assert_eq!(u.denominator, rec.tau_unbound().unwrap().pow(2));
    }

    #[test]
    fn constant_tau_has_zero_field() {
        let u = field_of(&ExactPoly::constant(Basis::XY, GaussianRational::from_int(5)), &rat(2, 1)).unwrap();
        assert!(u.is_zero());
        let d = decay_check(&u, &[1.0, 10.0], 16).unwrap();
        assert_eq!(d.bound, 0.0);
    }

    #[test]
    fn numerator_degree_is_two_below_denominator() {
        for rec in Catalog::builtin().records() {
            let b: Bindings = rec.params.iter().map(|p| (p.clone(), rat(1, 1))).collect();
            let u = u_from_tau(rec, &b).unwrap();
            assert_eq!(u.numerator.degree().unwrap() + 2, u.denominator.degree().unwrap(), "{}", rec.id);
        }
    }

    #[test]
    fn lump_decay_bound() {
        let u = u_from_tau(Catalog::builtin().get("lump2").unwrap(), &Bindings::new()).unwrap();
        let d = decay_check(&u, &[10.0, 100.0, 1000.0], 720).unwrap();
        // along the y axis |u| r² → 4; the x axis gives the same limit
        for b in &d.radii {
            assert!(b.bound <= 4.0 + 1e-9 && b.bound > 3.5, "{b:?}");
            assert_eq!(b.skipped, 0);
        }
        assert!((d.radii[2].bound - 4.0).abs() < 1e-3);
    }

    #[test]
    fn pelin6_decay_is_bounded() {
        let u = u_from_tau(Catalog::builtin().get("pelin6").unwrap(), &Bindings::new()).unwrap();
        let d = decay_check(&u, &[10.0, 100.0, 1000.0], 360).unwrap();
        assert!(d.bound.is_finite());
        assert!(d.radii[2].bound <= d.radii[1].bound * 1.01);
    }
}

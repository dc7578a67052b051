use lumpcheck_core::catalog::{to_bnew, Bindings, Catalog};
use lumpcheck_core::cm::{
    cm_check, conjugation_closed, finite_difference_beta_error, locus_residual, matching, poles_from_tau, LOCUS_TOL,
};
use num_complex::Complex64;

const YS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

fn rescaled(id: &str) -> lumpcheck_core::polyring::ExactPoly {
    let cat = Catalog::builtin();
    to_bnew(cat.get(id).unwrap(), &Bindings::new()).unwrap()
}

#[test]
fn catalog_poles_lie_on_the_locus() {
    for id in ["lump2", "pelin6", "pelin12-corrected"] {
        let tau = rescaled(id);
        for row in cm_check(&tau, &YS).unwrap() {
            assert!(row.max_locus_residual <= LOCUS_TOL, "{id} y={} locus {:e}", row.y, row.max_locus_residual);
            assert!(
                row.max_tangent_residual_of_flow <= LOCUS_TOL,
                "{id} y={} tangent {:e}",
                row.y,
                row.max_tangent_residual_of_flow
            );
        }
    }
}

#[test]
fn pole_counts_are_the_x_degree() {
    for (id, n) in [("lump2", 2), ("pelin6", 6), ("pelin12-corrected", 12)] {
        let cfg = poles_from_tau(&rescaled(id), 0.5).unwrap();
        assert_eq!(cfg.n(), n, "{id}");
    }
}

#[test]
fn lump_poles_are_analytic() {
    // τ̃ = x² + 3y² + 3 after the rescaling
    let tau = rescaled("lump2");
    for y in YS {
        let cfg = poles_from_tau(&tau, y).unwrap();
        let want = (3.0 * y * y + 3.0).sqrt();
        for w in [Complex64::new(0.0, want), Complex64::new(0.0, -want)] {
            assert!(cfg.eta.iter().any(|e| (e - w).norm() < 1e-10), "y={y}: {:?}", cfg.eta);
        }
    }
}

#[test]
fn real_tau_poles_come_in_conjugate_pairs() {
    for id in ["lump2", "pelin6", "pelin12-corrected"] {
        let tau = rescaled(id);
        for y in YS {
            let cfg = poles_from_tau(&tau, y).unwrap();
            let tol = 0.25 * cfg.min_gap();
            assert!(conjugation_closed(&cfg.eta, tol), "{id} y={y}");
        }
    }
}

#[test]
fn pelin6_poles_are_symmetric_under_negation() {
    let tau = rescaled("pelin6");
    for y in YS {
        let cfg = poles_from_tau(&tau, y).unwrap();
        let neg: Vec<Complex64> = cfg.eta.iter().map(|z| -z).collect();
        assert!(matching(&cfg.eta, &neg, 0.25 * cfg.min_gap()).is_ok(), "y={y}");
    }
}

#[test]
fn velocities_match_finite_differences() {
    for id in ["lump2", "pelin6"] {
        let tau = rescaled(id);
        for y in [0.5, 1.0, 2.0] {
            let err = finite_difference_beta_error(&tau, y, 1e-5).unwrap();
            assert!(err < 1e-5, "{id} y={y}: {err:e}");
        }
    }
}

#[test]
fn perturbed_configuration_leaves_the_locus() {
    let mut cfg = poles_from_tau(&rescaled("lump2"), 1.0).unwrap();
    cfg.beta[0] += Complex64::new(0.1, 0.0);
    assert!(locus_residual(&cfg).unwrap().max_modulus() > 1e-3);
}

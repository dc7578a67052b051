#![allow(dead_code)]

pub mod shift;

use lumpcheck_core::polyring::{rat, Basis, ExactPoly, GaussianRational};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = num_rational::BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn coeff(complex: bool) -> BoxedStrategy<GaussianRational> {
    if complex {
        (small_rational(), small_rational()).prop_map(|(re, im)| GaussianRational::new(re, im)).boxed()
    } else {
        small_rational().prop_map(GaussianRational::real).boxed()
    }
}

/// Up to `max_terms` terms of total degree at most `max_deg`.
pub fn poly(basis: Basis, max_deg: u32, max_terms: usize, complex: bool) -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), coeff(complex)), 0..=max_terms)
        .prop_map(move |ts| ExactPoly::from_terms(basis, ts.into_iter().filter(|(i, j, _)| i + j <= max_deg)))
}

pub fn any_basis() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::XY), Just(Basis::ZZbar)]
}

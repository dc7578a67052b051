//! Independent route: `D_x^a D_y^b f·g` is `a! b!` times the coefficient of
//! `h1^a h2^b` in `f(x+h1, y+h2) g(x−h1, y−h2)`.
//!
//! Polynomials in (x, y, h1, h2) are kept as maps from exponent tuples.

use std::collections::BTreeMap;

use lumpcheck_core::polyring::{Basis, ExactPoly, GaussianRational};
use num_traits::Zero;

type P4 = BTreeMap<[u32; 4], GaussianRational>;

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

/// `f(x + s h1, y + s h2)` with `s = ±1`.
fn shifted(f: &ExactPoly, s: i64) -> P4 {
    let mut out = P4::new();
    for (m, c) in f.terms() {
        for p in 0..=m.0 {
            for q in 0..=m.1 {
                let sign = if (p + q) % 2 == 1 { s } else { 1 };
                let w = GaussianRational::from_int(binom(m.0, p) * binom(m.1, q) * sign);
                *out.entry([m.0 - p, m.1 - q, p, q]).or_insert_with(GaussianRational::zero) += &(c * &w);
            }
        }
    }
    out
}

fn mul(a: &P4, b: &P4) -> P4 {
    let mut out = P4::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            *out.entry(e).or_insert_with(GaussianRational::zero) += &(ca * cb);
        }
    }
    out
}

fn fact(n: u32) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

pub fn hirota_by_shift(a: u32, b: u32, f: &ExactPoly, g: &ExactPoly) -> ExactPoly {
    let prod = mul(&shifted(f, 1), &shifted(g, -1));
    let w = GaussianRational::from_int(fact(a) * fact(b));
    let terms =
        prod.into_iter().filter(|(e, c)| e[2] == a && e[3] == b && !c.is_zero()).map(|(e, c)| (e[0], e[1], &c * &w));
    ExactPoly::from_terms(Basis::XY, terms)
}

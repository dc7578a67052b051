//! Exact arithmetic in `Q(√6)` for the phases at the four distinguished
//! spectral points `k = ±(√6/3)i`, `±(2√6/3)i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::polyring::{format_rational, rat};

/// `r + s√6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q6 {
    pub r: BigRational,
    pub s: BigRational,
}

impl Q6 {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Self { r, s }
    }

    pub fn rational(r: BigRational) -> Self {
        Self { r, s: BigRational::zero() }
    }

    /// `(p/q)√6`.
    pub fn surd(p: i64, q: i64) -> Self {
        Self { r: BigRational::zero(), s: rat(p, q) }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn half(&self) -> Self {
        Self { r: &self.r / rat(2, 1), s: &self.s / rat(2, 1) }
    }

    pub fn to_f64(&self) -> f64 {
        crate::polyring::rat_to_f64(&self.r) + crate::polyring::rat_to_f64(&self.s) * 6f64.sqrt()
    }
}

impl Add for &Q6 {
    type Output = Q6;
    fn add(self, o: &Q6) -> Q6 {
        Q6 { r: &self.r + &o.r, s: &self.s + &o.s }
    }
}

impl Sub for &Q6 {
    type Output = Q6;
    fn sub(self, o: &Q6) -> Q6 {
        Q6 { r: &self.r - &o.r, s: &self.s - &o.s }
    }
}

impl Mul for &Q6 {
    type Output = Q6;
    fn mul(self, o: &Q6) -> Q6 {
        Q6 { r: &self.r * &o.r + rat(6, 1) * &self.s * &o.s, s: &self.r * &o.s + &self.s * &o.r }
    }
}

impl Neg for &Q6 {
    type Output = Q6;
    fn neg(self) -> Q6 {
        Q6 { r: -&self.r, s: -&self.s }
    }
}

fn fmt_surd(s: &BigRational) -> String {
    let (p, q) = (s.numer(), s.denom());
    let head = if p.is_one() {
        "√6".to_string()
    } else if *p == BigInt::from(-1) {
        "-√6".to_string()
    } else {
        format!("{p}√6")
    };
    if q.is_one() {
        head
    } else {
        format!("{head}/{q}")
    }
}

impl fmt::Display for Q6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s.is_zero()) {
            (_, true) => f.write_str(&format_rational(&self.r)),
            (true, false) => f.write_str(&fmt_surd(&self.s)),
            (false, false) => {
                let sign = if self.s.is_negative() { "-" } else { "+" };
                write!(f, "{} {sign} {}", format_rational(&self.r), fmt_surd(&self.s.abs()))
            }
        }
    }
}

impl Serialize for Q6 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

//! Leading-order balance of the hierarchy vector fields at `x → ∞`, which
//! quantizes the coefficient `m` of `q ~ m/x²` and hence the τ degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyBalance {
    pub j: u64,
    #[serde(serialize_with = "crate::classifier::ser_rat")]
    pub m: BigRational,
    /// `(D³ + qD + Dq)(x^{−j})` coefficient of `x^{−j−3}`.
    #[serde(serialize_with = "crate::classifier::ser_rat")]
    pub b: BigRational,
    /// `(−(5/4)D³ − 2(qD + Dq))(x^{−j})` coefficient of `x^{−j−3}`.
    #[serde(rename = "B", serialize_with = "crate::classifier::ser_rat")]
    pub big_b: BigRational,
    pub balanced: bool,
}

/// `b_m(j) = −(j+1)(j(j+2) + 2m)`, `B_m(j) = (j+1)(10j(j+2) + 32m)/8`; balanced when `b/4 − B/4 = 0`.
pub fn hierarchy_degree(j: u64, m: &BigRational) -> HierarchyBalance {
    let jj = r(j as i64);
    let jj2 = &jj * (&jj + r(2));
    let b = -(&jj + r(1)) * (&jj2 + r(2) * m);
    let big_b = (&jj + r(1)) * (r(10) * &jj2 + r(32) * m) / r(8);
    let balanced = (&b / r(4) - &big_b / r(4)).is_zero();
    HierarchyBalance { j, m: m.clone(), b, big_b, balanced }
}

/// The unique `m` balancing order `j`: `m = −3j(j+2)/8`.
pub fn balancing_mass(j: u64) -> BigRational {
    let jj = r(j as i64);
    -r(3) * &jj * (&jj + r(2)) / r(8)
}

/// `m = −(3/2) k (k+1)`, i.e. the balance at `j = 2k`.
pub fn solve_degree(k: u64) -> BigRational {
    let kk = r(k as i64);
    -r(3) * &kk * (&kk + r(1)) / r(2)
}

/// Elements `c0 + c1·a` with `(3a)² + 1/48 = 0`, i.e. `a² = −1/432`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WithA {
    pub c0: BigRational,
    pub c1: BigRational,
}

impl WithA {
    fn new(c0: BigRational, c1: BigRational) -> Self {
        Self { c0, c1 }
    }

    fn mul(&self, o: &Self) -> Self {
        let a2 = BigRational::new((-1).into(), 432.into());
        Self::new(&self.c0 * &o.c0 + &self.c1 * &o.c1 * a2, &self.c0 * &o.c1 + &self.c1 * &o.c0)
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
}

fn mat_mul(x: &[[WithA; 2]; 2], y: &[[WithA; 2]; 2]) -> [[WithA; 2]; 2] {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Symbol-level product `[[−1/4, −3a], [−3a, 1/12]]·[[0, 1], [1, 0]]·[[−1/4, 3a], [3a, 1/12]]`
/// (the `D`, `D⁻¹`, `D` factors cancel); it vanishes because `(3a)² + 1/48 = 0`.
pub fn leading_symbol_product() -> [[WithA; 2]; 2] {
    let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
    let c = |v: BigRational| WithA::new(v, BigRational::zero());
    let a = |k: i64| WithA::new(BigRational::zero(), r(k));
    let left = [[c(q(-1, 4)), a(-3)], [a(-3), c(q(1, 12))]];
    let swap = [[c(r(0)), c(r(1))], [c(r(1)), c(r(0))]];
    let right = [[c(q(-1, 4)), a(3)], [a(3), c(q(1, 12))]];
    mat_mul(&mat_mul(&left, &swap), &right)
}

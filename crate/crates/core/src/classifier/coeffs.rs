//! The pairing constants `d_{i,j}` and `p_{i,j}` of the even-solution
//! recursion, both in closed form and through their defining polynomial
//! quotients.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hirota::BilinearForm;
use crate::polyring::{Basis, ExactPoly, GaussianRational};

fn sign(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `d_{i,j} = −12 (i−j)² (−1)^{i+j}`.
pub fn d_ij(i: u64, j: u64) -> BigInt {
    let diff = BigInt::from(i) - BigInt::from(j);
    BigInt::from(-12) * &diff * &diff * sign(i + j)
}

/// `p_{i,j}(n)`: the quartic in `(i, j, n)` times `(−1)^{i+j}`.
pub fn p_ij(n: u64, i: u64, j: u64) -> BigInt {
    let (n, i, j) = (BigInt::from(n), BigInt::from(i), BigInt::from(j));
    let c = |k: i64| BigInt::from(k);
    let i2 = &i * &i;
    let j2 = &j * &j;
    let quartic = c(1296) * &i2 * &i2 - c(5184) * &i2 * &i * &j + c(7776) * &i2 * &j2 - c(5184) * &i * &j2 * &j
        + c(1296) * &j2 * &j2
        + c(2592) * &i2 * &i
        - c(2592) * &i2 * &j
        - c(1728) * &i2 * &n
        - c(2592) * &i * &j2
        + c(3456) * &i * &j * &n
        + c(2592) * &j2 * &j
        - c(1728) * &j2 * &n
        + c(1584) * &i2
        - c(1440) * &i * &j
        - c(576) * &i * &n
        + c(1584) * &j2
        - c(576) * &j * &n
        + c(192) * &n * &n
        + c(288) * &i
        + c(288) * &j
        - c(192) * &n;
    let parity: u64 = ((&i + &j) % 2u32).try_into().expect("small");
    quartic * sign(parity)
}

/// `g_j = (x²+y²)^{n−3j} x^{2j} y^{2j}`.
pub fn g_j(n: u64, j: u64) -> Result<ExactPoly> {
    if 3 * j > n {
        return Err(Error::Precondition(format!("g_{j} needs n - 3j >= 0 (n = {n})")));
    }
    let r = ExactPoly::radius_squared().pow((n - 3 * j) as u32);
    let mono = ExactPoly::monomial(Basis::XY, 2 * j as u32, 2 * j as u32, GaussianRational::one());
    r.mul(&mono)
}

fn quotient_at_square_point(f: &ExactPoly, power: i64, what: &str) -> Result<BigInt> {
    if power < 0 {
        return Err(Error::Precondition(format!("{what}: divisor exponent {power} is negative")));
    }
    let q = f.divide_exact(&ExactPoly::radius_squared().pow(power as u32))?;
    let v = q.substitute_squares(&GaussianRational::from_int(-1), &GaussianRational::from_int(1))?;
    if !v.is_real() || !v.re.is_integer() {
        return Err(Error::Precondition(format!("{what}: quotient value {v} is not an integer")));
    }
    Ok(v.re.to_integer())
}

fn laplacian_form() -> BilinearForm {
    BilinearForm::new(Basis::XY, [(GaussianRational::from_int(1), 2, 0), (GaussianRational::from_int(1), 0, 2)])
        .expect("valid form")
}

fn x4_form() -> BilinearForm {
    BilinearForm::new(Basis::XY, [(GaussianRational::from_int(1), 4, 0)]).expect("valid form")
}

/// `(D_x²+D_y²) g_i·g_j / (x²+y²)^{2n−3i−3j−1}` evaluated at `x² = −1, y² = 1`.
pub fn d_ij_definitional(n: u64, i: u64, j: u64) -> Result<BigInt> {
    let xi = laplacian_form().apply(&g_j(n, i)?, &g_j(n, j)?)?;
    quotient_at_square_point(&xi, 2 * n as i64 - 3 * i as i64 - 3 * j as i64 - 1, "d_ij")
}

/// `D_x⁴ g_i·g_j / (x²+y²)^{2n−3i−3j−4}` evaluated at `x² = −1, y² = 1`.
pub fn p_ij_definitional(n: u64, i: u64, j: u64) -> Result<BigInt> {
    let f = x4_form().apply(&g_j(n, i)?, &g_j(n, j)?)?;
    quotient_at_square_point(&f, 2 * n as i64 - 3 * i as i64 - 3 * j as i64 - 4, "p_ij")
}

/// Whether `p_ij_definitional(n, i, j)` is defined.
pub fn p_definitional_domain(n: u64, i: u64, j: u64) -> bool {
    3 * i <= n && 3 * j <= n && 2 * n >= 3 * i + 3 * j + 4
}

/// Whether `d_ij_definitional(n, i, j)` is defined.
pub fn d_definitional_domain(n: u64, i: u64, j: u64) -> bool {
    3 * i <= n && 3 * j <= n && 2 * n > 3 * i + 3 * j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_examples() {
        assert_eq!(d_ij(0, 1), BigInt::from(12));
        assert_eq!(d_ij(4, 4), BigInt::from(0));
        assert_eq!(d_ij(0, 2), BigInt::from(-48));
    }

    #[test]
    fn p_special_cases() {
        // i = j: 192 (3j−n+1)(3j−n)
        for n in 0..20u64 {
            for j in 0..8u64 {
                let (jn, nn) = (j as i64, n as i64);
                assert_eq!(p_ij(n, j, j), BigInt::from(192 * (3 * jn - nn + 1) * (3 * jn - nn)));
                if j >= 1 {
                    // i = j−1: −192 (3j−n+7)(3j−n)
                    assert_eq!(p_ij(n, j - 1, j), BigInt::from(-192 * (3 * jn - nn + 7) * (3 * jn - nn)));
                }
                if j >= 2 {
                    // i = j−2: 192 (3j−n+30)(3j−n+1)
                    assert_eq!(p_ij(n, j - 2, j), BigInt::from(192 * (3 * jn - nn + 30) * (3 * jn - nn + 1)));
                }
                // i = 0
                let expected = 1296 * jn.pow(4) + 2592 * jn.pow(3) - 1728 * jn * jn * nn + 1584 * jn * jn
                    - 576 * jn * nn
                    + 192 * nn * nn
                    + 288 * jn
                    - 192 * nn;
                assert_eq!(p_ij(n, 0, j) * sign(j), BigInt::from(expected));
            }
        }
        assert_eq!(p_ij(3, 1, 1), BigInt::from(0));
        assert_eq!(p_ij(2, 0, 0), BigInt::from(384));
    }

    #[test]
    fn p_is_symmetric() {
        for n in 0..12 {
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(p_ij(n, i, j), p_ij(n, j, i));
                }
            }
        }
    }

    #[test]
    fn definitional_examples() {
        assert_eq!(d_ij_definitional(6, 0, 1).unwrap(), BigInt::from(12));
        assert_eq!(p_ij_definitional(6, 0, 0).unwrap(), BigInt::from(5760));
        assert_eq!(d_ij_definitional(10, 1, 2).unwrap(), d_ij(1, 2));
        assert_eq!(p_ij_definitional(10, 1, 2).unwrap(), p_ij(10, 1, 2));
    }

    #[test]
    fn definitional_preconditions() {
        assert!(d_ij_definitional(3, 2, 0).is_err());
        assert!(p_ij_definitional(3, 1, 1).is_err());
    }
}

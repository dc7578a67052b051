//! Scalar recursions behind the even-solution analysis: `a_m` and `J_n` in
//! the `(x, y)` picture, the `σ_j` chain and the `β_j(q)` chains in `(z, z̄)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeffs::{d_ij, p_ij};
use crate::error::{Error, Result};
use crate::hirota::{hirota_monomial_zz, BilinearForm};
use crate::polyring::{Basis, GaussianRational};

/// How sums over `i + j = m` count their index pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairCounting {
    /// Every ordered pair `(i, j)`, so off-diagonal products appear twice.
    #[default]
    Ordered,
    /// Each unordered pair `{i, j}` once.
    Unordered,
}

impl PairCounting {
    fn pairs(self, m: u64) -> impl Iterator<Item = (u64, u64)> {
        let top = match self {
            PairCounting::Ordered => m,
            PairCounting::Unordered => m / 2,
        };
        (0..=top).map(move |i| (i, m - i))
    }
}

fn big(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `a_0 = 1` and `Σ_{i+j=m} a_i a_j d_{i,j} = Σ_{i+j=m−1} a_i a_j p_{i,j}` solved for `a_m`.
pub fn a_seq(n: u64, m_max: u64, counting: PairCounting) -> Result<Vec<BigRational>> {
    if m_max > n / 3 {
        return Err(Error::Precondition(format!("a_m needs m <= [n/3] = {} (got {m_max})", n / 3)));
    }
    let mut a = vec![BigRational::one()];
    for m in 1..=m_max {
        let mut known = BigRational::zero();
        let mut unknown_coeff = BigRational::zero();
        for (i, j) in counting.pairs(m) {
            if i == m || j == m {
                unknown_coeff += big(d_ij(i, j)) * &a[0];
            } else {
                known += big(d_ij(i, j)) * &a[i as usize] * &a[j as usize];
            }
        }
        let rhs: BigRational =
            counting.pairs(m - 1).map(|(i, j)| big(p_ij(n, i, j)) * &a[i as usize] * &a[j as usize]).sum();
        if unknown_coeff.is_zero() {
            return Err(Error::DegenerateStep { n, step: m });
        }
        a.push((rhs - known) / unknown_coeff);
    }
    Ok(a)
}

/// `J_n = Σ_{i,j≤[n/3], i+j=[n/3]+1} a_i a_j d_{i,j} − Σ_{i+j=[n/3]} a_i a_j p_{i,j}`.
pub fn j_from_a(n: u64, a: &[BigRational], counting: PairCounting) -> BigRational {
    let top = n / 3;
    let d_part: BigRational = counting
        .pairs(top + 1)
        .filter(|&(i, j)| i <= top && j <= top)
        .map(|(i, j)| big(d_ij(i, j)) * &a[i as usize] * &a[j as usize])
        .sum();
    let p_part: BigRational =
        counting.pairs(top).map(|(i, j)| big(p_ij(n, i, j)) * &a[i as usize] * &a[j as usize]).sum();
    d_part - p_part
}

pub fn j_n(n: u64, counting: PairCounting) -> Result<BigRational> {
    let a = a_seq(n, n / 3, counting)?;
    Ok(j_from_a(n, &a, counting))
}

/// `D_x⁴` and `D_x² + D_y² = 4 D_z D_z̄`, rewritten in `(z, z̄)` with real integer weights.
struct ChainOperators {
    x4: Vec<(BigRational, u32, u32)>,
    lap: Vec<(BigRational, u32, u32)>,
}

impl ChainOperators {
    fn new() -> Self {
        let real_terms = |form: BilinearForm| -> Vec<(BigRational, u32, u32)> {
            form.to_zzbar()
                .expect("xy form")
                .terms()
                .iter()
                .map(|t| {
                    assert!(t.weight.is_real(), "x4 and laplacian have real weights in (z, zbar)");
                    (t.weight.re.clone(), t.a, t.b)
                })
                .collect()
        };
        let one = GaussianRational::from_int(1);
        Self {
            x4: real_terms(BilinearForm::new(Basis::XY, [(one.clone(), 4, 0)]).expect("valid")),
            lap: real_terms(BilinearForm::new(Basis::XY, [(one.clone(), 2, 0), (one, 0, 2)]).expect("valid")),
        }
    }

    /// Coefficient of `z^{target.0} z̄^{target.1}` in `form (z^f.0 z̄^f.1)·(z^g.0 z̄^g.1)`.
    fn coeff(form: &[(BigRational, u32, u32)], f: (i64, i64), g: (i64, i64), target: (i64, i64)) -> BigRational {
        form.iter()
            .filter(|(_, p, q)| f.0 + g.0 - *p as i64 == target.0 && f.1 + g.1 - *q as i64 == target.1)
            .map(|(w, p, q)| w * big(hirota_monomial_zz(f.0, f.1, g.0, g.1, *p, *q)))
            .sum()
    }
}

fn sigma_mono(n: u64, k: u64) -> (i64, i64) {
    (n as i64 + k as i64, n as i64 - 3 * k as i64)
}

fn beta_mono(n: u64, q: u64, m: u64) -> (i64, i64) {
    (n as i64 + m as i64, n as i64 - 2 * q as i64 - 3 * m as i64)
}

/// `σ_0 … σ_{[n/3]+1}`: coefficients of the lowest-`z̄` monomials `z^{n+j} z̄^{n−3j}`
/// of the homogeneous parts of an even τ. The last entry is the existence
/// obstruction.
///
/// At step `j` the coefficient of `z^{2n+j−1} z̄^{2n−3j−1}` is matched in
///
/// `8 D_z D_z̄ T_{n,0}·σ_j z^{n+j}z̄^{n−3j} = Σ_{k+m=j−1} D_x⁴ (σ_k …)·(σ_m …) − 4 Σ_{k+m=j; k,m≥1} D_z D_z̄ (σ_k …)·(σ_m …)`
///
/// with ordered index pairs.
pub fn sigma_seq(n: u64) -> Result<Vec<BigRational>> {
    let ops = ChainOperators::new();
    let j0 = n / 3 + 1;
    let mut sigma = vec![BigRational::one()];
    for j in 1..=j0 {
        let target = (2 * n as i64 + j as i64 - 1, 2 * n as i64 - 3 * j as i64 - 1);
        let mut rhs = BigRational::zero();
        for k in 0..j {
            let m = j - 1 - k;
            rhs += ChainOperators::coeff(&ops.x4, sigma_mono(n, k), sigma_mono(n, m), target)
                * &sigma[k as usize]
                * &sigma[m as usize];
        }
        for k in 1..j {
            let m = j - k;
            rhs -= ChainOperators::coeff(&ops.lap, sigma_mono(n, k), sigma_mono(n, m), target)
                * &sigma[k as usize]
                * &sigma[m as usize];
        }
        // Both orderings of T_{n,0}·T_{n,j} carry the unknown.
        let eig = ChainOperators::coeff(&ops.lap, sigma_mono(n, 0), sigma_mono(n, j), target)
            * BigRational::from_integer(2.into());
        if eig.is_zero() {
            return Err(Error::DegenerateStep { n, step: j });
        }
        sigma.push(rhs / eig);
    }
    Ok(sigma)
}

/// `j̄ = [(n−2q)/3] + 1`, the first step whose `z̄` exponent falls below `n − 1`.
pub fn beta_terminal_index(n: u64, q: u64) -> u64 {
    (n - 2 * q) / 3 + 1
}

/// `β_0 … β_{j̄}` for the chain seeded by the kernel monomial `z^n z̄^{n−2q}`:
///
/// `4 D_z D_z̄ (z^n z̄^n)·β_j z^{n+j}z̄^{n−2q−3j} = Σ_{k+m=j−1} D_x⁴ (σ_k …)·(β_m …) − 4 Σ_{k+m=j; k,m≥1} D_z D_z̄ (σ_k …)·(β_m …)`
pub fn beta_seq(n: u64, q: u64, sigma: &[BigRational]) -> Result<Vec<BigRational>> {
    if q == 0 || q > n / 2 {
        return Err(Error::Precondition(format!("beta chain needs 1 <= q <= [n/2] = {} (got {q})", n / 2)));
    }
    let jbar = beta_terminal_index(n, q);
    if sigma.len() < jbar as usize {
        return Err(Error::Precondition(format!("beta chain needs sigma_0..sigma_{}", jbar - 1)));
    }
    let ops = ChainOperators::new();
    let mut beta = vec![BigRational::one()];
    for j in 1..=jbar {
        let target = (2 * n as i64 + j as i64 - 1, 2 * n as i64 - 2 * q as i64 - 3 * j as i64 - 1);
        let mut rhs = BigRational::zero();
        for k in 0..j {
            let m = j - 1 - k;
            rhs += ChainOperators::coeff(&ops.x4, sigma_mono(n, k), beta_mono(n, q, m), target)
                * &sigma[k as usize]
                * &beta[m as usize];
        }
        for k in 1..j {
            let m = j - k;
            rhs -= ChainOperators::coeff(&ops.lap, sigma_mono(n, k), beta_mono(n, q, m), target)
                * &sigma[k as usize]
                * &beta[m as usize];
        }
        let eig = ChainOperators::coeff(&ops.lap, sigma_mono(n, 0), beta_mono(n, q, j), target);
        if eig.is_zero() {
            return Err(Error::DegenerateStep { n, step: j });
        }
        beta.push(rhs / eig);
    }
    Ok(beta)
}

/// `γ_q = β_{j̄}`.
pub fn gamma(n: u64, q: u64, sigma: &[BigRational]) -> Result<BigRational> {
    let beta = beta_seq(n, q, sigma)?;
    Ok(beta.last().cloned().expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn r(p: i64, q: i64) -> BigRational {
        rat(p, q)
    }

    #[test]
    fn a1_under_both_conventions() {
        for n in 3..30u64 {
            let nn = n as i64;
            let ordered = a_seq(n, 1, PairCounting::Ordered).unwrap();
            assert_eq!(ordered[1], r(8 * nn * (nn - 1), 1));
            // Single-counted instance a_0² p_{0,0} − a_0 a_1 d_{0,1} = 0.
            let unordered = a_seq(n, 1, PairCounting::Unordered).unwrap();
            assert_eq!(unordered[1], r(16 * nn * (nn - 1), 1));
        }
    }

    #[test]
    fn a2_solves_the_second_balance() {
        // a_0 a_1 p_{0,1} − a_1² d_{1,1} − a_0 a_2 d_{0,2} = 0 under single counting.
        let n = 6;
        let a = a_seq(n, 2, PairCounting::Unordered).unwrap();
        let lhs = big(p_ij(n, 0, 1)) * &a[1] - &a[1] * &a[1] * big(d_ij(1, 1)) - &a[2] * big(d_ij(0, 2));
        assert!(lhs.is_zero());
        assert_eq!(a[0], BigRational::one());
    }

    #[test]
    fn a_seq_rejects_large_m() {
        assert!(a_seq(5, 2, PairCounting::Ordered).is_err());
    }

    #[test]
    fn j_small_values() {
        assert!(j_n(1, PairCounting::Ordered).unwrap().is_zero());
        assert_eq!(j_n(2, PairCounting::Ordered).unwrap(), r(-384, 1));
        assert!(j_n(3, PairCounting::Ordered).unwrap().is_zero());
        assert_eq!(j_n(4, PairCounting::Ordered).unwrap(), r(-221184, 1));
        assert!(j_n(6, PairCounting::Ordered).unwrap().is_zero());
        // Single counting loses the triangular law already at n = 6.
        assert!(!j_n(6, PairCounting::Unordered).unwrap().is_zero());
    }

    #[test]
    fn sigma_first_terms() {
        for n in 2..=50u64 {
            let s = sigma_seq(n).unwrap();
            assert_eq!(s[0], BigRational::one());
            let nn = n as i64;
            assert_eq!(s[1], r(nn - nn * nn, 2));
        }
    }

    #[test]
    fn sigma_matches_degree_twelve_tau() {
        // Lowest-z̄ coefficients of the homogeneous parts of the degree-12 even τ:
        // z^6 z̄^6, −15 z^7 z̄^3, −45 z^8; the obstruction vanishes at n = 6.
        let s = sigma_seq(6).unwrap();
        assert_eq!(s, vec![r(1, 1), r(-15, 1), r(-45, 1), r(0, 1)]);
    }

    #[test]
    fn sigma_obstruction_small_n() {
        assert!(sigma_seq(3).unwrap().last().unwrap().is_zero());
        assert!(!sigma_seq(4).unwrap().last().unwrap().is_zero());
        assert!(!sigma_seq(2).unwrap().last().unwrap().is_zero());
    }

    #[test]
    fn gamma_fifteen_table() {
        let s = sigma_seq(15).unwrap();
        let expected = [
            r(3219950475, 374),
            r(-800391375, 416),
            r(24045525, 4),
            r(34505100, 187),
            r(-74025, 52),
            r(55335, 2),
            r(-5460, 17),
        ];
        for (q, e) in (1..=7).zip(expected) {
            assert_eq!(gamma(15, q, &s).unwrap(), e, "q = {q}");
        }
    }

    #[test]
    fn beta_preconditions() {
        let s = sigma_seq(6).unwrap();
        assert!(beta_seq(6, 0, &s).is_err());
        assert!(beta_seq(6, 4, &s).is_err());
        assert_eq!(beta_seq(6, 1, &s).unwrap()[0], BigRational::one());
    }
}

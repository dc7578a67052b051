//! Degree classification of even τ functions: the `J_n` obstruction, the
//! `σ` chain, the `γ_q` uniqueness certificates and the hierarchy balance
//! that quantizes the degree.
//!
//! Everything here is exact. A scan over `n` runs each `n` independently on
//! the rayon pool; within one `n` the recursions are sequential.

pub mod coeffs;
pub mod hierarchy;
pub mod recursion;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use coeffs::{d_definitional_domain, d_ij, d_ij_definitional, g_j, p_definitional_domain, p_ij, p_ij_definitional};
pub use hierarchy::{hierarchy_degree, solve_degree, HierarchyBalance};
pub use recursion::{a_seq, beta_seq, gamma, j_n, sigma_seq, PairCounting};

use crate::error::{Error, Result};
use crate::polyring::format_rational;

pub(crate) fn ser_rat<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

fn ser_rat_opt<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&format_rational(v)),
        None => s.serialize_none(),
    }
}

fn ser_rat_vec_opt<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.iter().map(format_rational).collect::<Vec<_>>()),
        None => s.serialize_none(),
    }
}

fn ser_rat_map_opt<S: Serializer>(
    v: &Option<BTreeMap<u64, BigRational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(m) => s.serialize_some(&m.iter().map(|(k, v)| (*k, format_rational(v))).collect::<BTreeMap<_, _>>()),
        None => s.serialize_none(),
    }
}

pub fn is_triangular(n: u64) -> bool {
    // n = k(k+1)/2  ⇔  8n + 1 is a perfect square
    let d = 8 * n + 1;
    let r = d.isqrt();
    r * r == d
}

/// Which independent computations a scan performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Routes {
    pub j: bool,
    pub sigma: bool,
    pub gamma: bool,
}

impl Routes {
    pub const ALL: Routes = Routes { j: true, sigma: true, gamma: true };
}

impl FromStr for Routes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut r = Routes { j: false, sigma: false, gamma: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "j" => r.j = true,
                "sigma" => r.sigma = true,
                "gamma" => r.gamma = true,
                other => return Err(Error::Format(format!("unknown route `{other}` (expected J, sigma, gamma)"))),
            }
        }
        if !(r.j || r.sigma || r.gamma) {
            return Err(Error::Format("no route selected".into()));
        }
        Ok(r)
    }
}

impl fmt::Display for Routes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.j, "J"), (self.sigma, "sigma"), (self.gamma, "gamma")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// `J_n = 0`.
    pub degree_admissible: Option<bool>,
    /// `σ_{[n/3]+1} = 0`.
    pub sigma_obstruction_zero: Option<bool>,
    /// Every `γ_q` is nonzero (only evaluated for triangular `n`).
    pub unique_even: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionTable {
    pub n: u64,
    pub is_triangular: bool,
    #[serde(serialize_with = "ser_rat_vec_opt")]
    pub a_seq: Option<Vec<BigRational>>,
    #[serde(rename = "J", serialize_with = "ser_rat_opt")]
    pub j: Option<BigRational>,
    #[serde(serialize_with = "ser_rat_vec_opt")]
    pub sigma_seq: Option<Vec<BigRational>>,
    #[serde(serialize_with = "ser_rat_map_opt")]
    pub gamma: Option<BTreeMap<u64, BigRational>>,
    pub verdicts: Verdicts,
}

impl ObstructionTable {
    /// `σ_{[n/3]+1}`, when the σ route ran.
    pub fn sigma_obstruction(&self) -> Option<&BigRational> {
        self.sigma_seq.as_ref().and_then(|s| s.last())
    }

    /// Every obstruction that was computed vanishes.
    pub fn is_zero(&self) -> bool {
        self.verdicts.degree_admissible.unwrap_or(true) && self.verdicts.sigma_obstruction_zero.unwrap_or(true)
    }
}

/// Runs the requested routes for one `n`, enforcing agreement of the `J` and `σ` verdicts.
pub fn obstruction_table(n: u64, routes: Routes, counting: PairCounting) -> Result<ObstructionTable> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let tri = is_triangular(n);
    let mut table = ObstructionTable {
        n,
        is_triangular: tri,
        a_seq: None,
        j: None,
        sigma_seq: None,
        gamma: None,
        verdicts: Verdicts::default(),
    };
    if routes.j {
        let a = a_seq(n, n / 3, counting)?;
        let j = recursion::j_from_a(n, &a, counting);
        table.verdicts.degree_admissible = Some(j.is_zero());
        table.a_seq = Some(a);
        table.j = Some(j);
    }
    let sigma = if routes.sigma || (routes.gamma && tri) { Some(sigma_seq(n)?) } else { None };
    if routes.sigma {
        let s = sigma.as_ref().expect("computed");
        table.verdicts.sigma_obstruction_zero = Some(s.last().expect("non-empty").is_zero());
        table.sigma_seq = Some(s.clone());
    }
    if let (Some(a), Some(b)) = (table.verdicts.degree_admissible, table.verdicts.sigma_obstruction_zero) {
        if a != b {
            return Err(Error::RouteDisagreement { n });
        }
    }
    if routes.gamma && tri {
        let s = sigma.as_ref().expect("computed");
        let gammas = (1..=n / 2).map(|q| gamma(n, q, s).map(|g| (q, g))).collect::<Result<BTreeMap<_, _>>>()?;
        table.verdicts.unique_even = Some(gammas.values().all(|g| !g.is_zero()));
        table.gamma = Some(gammas);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessCertificate {
    pub n: u64,
    /// `(q, γ_q)` for `q = 1..[n/2]`.
    #[serde(serialize_with = "ser_gamma_list")]
    pub gammas: Vec<(u64, BigRational)>,
    pub all_nonzero: bool,
}

fn ser_gamma_list<S: Serializer>(v: &[(u64, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        q: u64,
        gamma: String,
    }
    s.collect_seq(v.iter().map(|(q, g)| Entry { q: *q, gamma: format_rational(g) }))
}

/// All `γ_q ≠ 0` for `q = 1..[n/2]` certifies that the even solution of degree `2n` is unique.
pub fn uniqueness_certificate(n: u64) -> Result<UniquenessCertificate> {
    if n == 0 || !is_triangular(n) {
        return Err(Error::Precondition(format!("uniqueness certificates need triangular n (got {n})")));
    }
    let sigma = sigma_seq(n)?;
    let gammas = (1..=n / 2).map(|q| gamma(n, q, &sigma).map(|g| (q, g))).collect::<Result<Vec<_>>>()?;
    let all_nonzero = gammas.iter().all(|(_, g)| !g.is_zero());
    Ok(UniquenessCertificate { n, gammas, all_nonzero })
}

/// One scan row; a failed `n` keeps its diagnostic instead of aborting the scan.
#[derive(Debug)]
pub struct ScanRow {
    pub n: u64,
    pub outcome: std::result::Result<ObstructionTable, String>,
}

/// Obstruction tables for `n = 1..=max_n`, computed in parallel on the current rayon pool.
pub fn scan(max_n: u64, routes: Routes, counting: PairCounting) -> Vec<ScanRow> {
    (1..=max_n)
        .into_par_iter()
        .map(|n| ScanRow { n, outcome: obstruction_table(n, routes, counting).map_err(|e| e.to_string()) })
        .collect()
}

//! The built-in τ functions, each pinned to its own scaling constant and
//! bilinear form, plus the machinery that checks them: exact residuals, the
//! reconstructed field `u = c ∂_x² ln τ`, decay sampling and the energy
//! quadrature.

mod energy;
mod field;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use energy::{energy, energy_of_tau, EnergyEstimate};
pub use field::{decay_check, u_from_tau, DecayReport, RadiusBound, RationalFunction};

use crate::error::{Error, Result};
use crate::hirota::{residual, BilinearForm, FormPreset};
use crate::polyring::interchange::{from_json, CoeffDoc};
use crate::polyring::{parse_rational, Basis, ExactPoly, GaussianRational};

pub type Bindings = BTreeMap<String, BigRational>;

/// Parses `name=p/q`.
pub fn parse_binding(s: &str) -> Result<(String, BigRational)> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| Error::Format(format!("parameter binding `{s}` is not name=value")))?;
    Ok((name.trim().to_string(), parse_rational(value)?))
}

/// One summand `Π param^power · poly` of a parametrized τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPart {
    pub factor: Vec<(String, u32)>,
    pub poly: ExactPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauRecord {
    pub id: String,
    /// `u = c · ∂_x² ln τ`.
    pub scale_c: BigRational,
    pub form_name: String,
    pub form: BilinearForm,
    pub params: Vec<String>,
    pub parts: Vec<TauPart>,
    pub note: Option<String>,
}

impl TauRecord {
    /// A parameter-free record around an arbitrary polynomial.
    pub fn from_poly(id: &str, tau: ExactPoly, scale_c: BigRational, form_name: &str, form: BilinearForm) -> Self {
        Self {
            id: id.to_string(),
            scale_c,
            form_name: form_name.to_string(),
            form,
            params: Vec::new(),
            parts: vec![TauPart { factor: Vec::new(), poly: tau }],
            note: None,
        }
    }

    /// τ with every parameter replaced by its bound value.
    pub fn tau(&self, bindings: &Bindings) -> Result<ExactPoly> {
        if let Some(extra) = bindings.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::Precondition(format!("`{}` has no parameter named `{extra}`", self.id)));
        }
        if let Some(missing) = self.params.iter().find(|p| !bindings.contains_key(*p)) {
            return Err(Error::UnboundParameter(missing.clone()));
        }
        let basis = self.parts.first().map_or(Basis::XY, |p| p.poly.basis());
        let mut tau = ExactPoly::zero(basis);
        for part in &self.parts {
            let mut w = BigRational::one();
            for (name, power) in &part.factor {
                w *= num_traits::pow(bindings[name].clone(), *power as usize);
            }
            if !w.is_zero() {
                tau = tau.add(&part.poly.scale(&GaussianRational::real(w)))?;
            }
        }
        Ok(tau)
    }

    /// τ for a parameter-free record.
    pub fn tau_unbound(&self) -> Result<ExactPoly> {
        self.tau(&Bindings::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub id: String,
    pub form: String,
    pub is_solution: bool,
    pub residual: ExactPoly,
}

impl Verification {
    /// The first `limit` residual terms, lowest degree first, as interchange triples.
    pub fn residual_terms(&self, limit: usize) -> Vec<(u32, u32, CoeffDoc)> {
        self.residual.terms().take(limit).map(|(m, c)| (m.0, m.1, CoeffDoc::from_coeff(c))).collect()
    }
}

pub fn verify_tau(rec: &TauRecord, bindings: &Bindings) -> Result<Verification> {
    verify_tau_with(rec, bindings, &rec.form_name, &rec.form)
}

/// Verification under a form other than the record's own.
pub fn verify_tau_with(
    rec: &TauRecord,
    bindings: &Bindings,
    form_name: &str,
    form: &BilinearForm,
) -> Result<Verification> {
    let tau = rec.tau(bindings)?;
    let res = residual(form, &tau)?;
    Ok(Verification { id: rec.id.clone(), form: form_name.to_string(), is_solution: res.is_zero(), residual: res })
}

/// `τ̃(x, y) = τ(x, √3 y)`, turning a solution of `D_x⁴ − D_x² − D_y²` into one of
/// `3D_x⁴ − 3D_x² − D_y²`, whose field is `q = (3/2) ∂_x² ln τ̃`.
pub fn to_bnew(rec: &TauRecord, bindings: &Bindings) -> Result<ExactPoly> {
    let standard = FormPreset::Standard.form();
    let negated = standard.scale(&GaussianRational::from_int(-1));
    if rec.form != standard && rec.form != negated {
        return Err(Error::Precondition(format!(
            "`{}` uses form {}; the (x, √3 y) rescaling applies to the standard form only",
            rec.id, rec.form_name
        )));
    }
    rec.tau(bindings)?.stretch_squares(&BigRational::one(), &BigRational::from_integer(3.into()))
}

#[derive(Deserialize)]
struct Manifest {
    records: Vec<ManifestRecord>,
}

#[derive(Deserialize)]
struct ManifestRecord {
    id: String,
    scale_c: String,
    form: String,
    params: Vec<String>,
    parts: Vec<ManifestPart>,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct ManifestPart {
    factor: Vec<(String, u32)>,
    file: String,
}

fn builtin_file(name: &str) -> Option<&'static str> {
    Some(match name {
        "lump2.json" => include_str!("../../catalog/lump2.json"),
        "pelin6.json" => include_str!("../../catalog/pelin6.json"),
        "yang6.json" => include_str!("../../catalog/yang6.json"),
        "yang6-a.json" => include_str!("../../catalog/yang6-a.json"),
        "yang6-b.json" => include_str!("../../catalog/yang6-b.json"),
        "unit.json" => include_str!("../../catalog/unit.json"),
        "pelin12.json" => include_str!("../../catalog/pelin12.json"),
        "pelin12-corrected.json" => include_str!("../../catalog/pelin12-corrected.json"),
        "pelin12-zzbar.json" => include_str!("../../catalog/pelin12-zzbar.json"),
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry<'a> {
    pub id: &'a str,
    pub scale_c: String,
    pub form: &'a str,
    pub params: &'a [String],
    pub note: Option<&'a str>,
}

#[derive(Debug)]
pub struct Catalog {
    records: Vec<TauRecord>,
}

impl Catalog {
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            Catalog::from_manifest(include_str!("../../catalog/manifest.json"), |f| {
                builtin_file(f).map(str::to_string).ok_or_else(|| Error::Format(format!("missing catalog file {f}")))
            })
            .expect("built-in catalog is well-formed")
        })
    }

    /// Builds a catalog from a manifest, resolving part files through `load`.
    pub fn from_manifest(manifest: &str, load: impl Fn(&str) -> Result<String>) -> Result<Catalog> {
        let m: Manifest = serde_json::from_str(manifest)?;
        let mut records = Vec::with_capacity(m.records.len());
        for r in m.records {
            let preset: FormPreset = r.form.parse()?;
            let parts = r
                .parts
                .iter()
                .map(|p| Ok(TauPart { factor: p.factor.clone(), poly: from_json(&load(&p.file)?)? }))
                .collect::<Result<Vec<_>>>()?;
            for part in &parts {
                if let Some((name, _)) = part.factor.iter().find(|(n, _)| !r.params.contains(n)) {
                    return Err(Error::Format(format!("record {} uses undeclared parameter {name}", r.id)));
                }
            }
            records.push(TauRecord {
                id: r.id,
                scale_c: parse_rational(&r.scale_c)?,
                form_name: preset.name().to_string(),
                form: preset.form(),
                params: r.params,
                parts,
                note: r.note,
            });
        }
        Ok(Catalog { records })
    }

    pub fn get(&self, id: &str) -> Result<&TauRecord> {
        self.records.iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownTau(id.to_string()))
    }

    pub fn records(&self) -> &[TauRecord] {
        &self.records
    }

    pub fn entries(&self) -> Vec<CatalogEntry<'_>> {
        self.records
            .iter()
            .map(|r| CatalogEntry {
                id: &r.id,
                scale_c: crate::polyring::format_rational(&r.scale_c),
                form: &r.form_name,
                params: &r.params,
                note: r.note.as_deref(),
            })
            .collect()
    }
}

/// The reference degree-12 τ in the `(z, z̄)` basis.
pub fn pelin12_zzbar_reference() -> ExactPoly {
    from_json(builtin_file("pelin12-zzbar.json").expect("bundled")).expect("bundled file is well-formed")
}

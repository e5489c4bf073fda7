//! Explicit and symbolic map constructions.

mod covering;
mod l2q;
mod parallel;
mod seeds;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mapcore::{self, MapTriple, MapType, WilsonClass};
use crate::permgroup::{elements_of, Permutation};

pub use covering::{cover_preset, covering_by_character, Cover, CoverPreset};
pub use l2q::{
    auto_useful_generator, build_l2q_class3, l2q_map, theorem_matrices, verify_wilson_relations,
    GeneratorChoice,
};
pub use parallel::{
    parallel_product_explicit, parallel_product_symbolic, sigma_plus_closure, sigma_plus_product,
    CoverSubgroup, ParityVector,
};
pub use seeds::{
    an_triple, build_an_map, build_l2p_map, build_pgl2_7_map, build_sn_map, l2p_matrices,
    sn_triple, AnVariant, Seed,
};

/// Default upper bound on the number of blades built explicitly.
pub const DEFAULT_BLADE_CAP: usize = 2_000_000;

/// How the Wilson class of a record is known.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Certificate {
    /// The explicit map was classified.
    #[serde(rename = "explicit-classified")]
    Explicit,
    /// Class III follows from the `L₂(2^e)` construction with a useful generator.
    #[serde(rename = "l2q-useful-generator")]
    L2qConstruction,
    /// Class III follows from the `Σ⁺`-product of a class-I almost simple map.
    #[serde(rename = "theorem-5.2")]
    SigmaPlusProduct,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub params: serde_json::Value,
}

/// A constructed map, explicit or only described by its invariants.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionRecord {
    #[serde(skip)]
    pub map: Option<MapTriple>,
    /// The generating triple inside the automorphism group, when there is one.
    #[serde(skip)]
    pub witness: Option<[Permutation; 3]>,
    pub group_order: u128,
    #[serde(rename = "type")]
    pub map_type: MapType,
    pub chi: i128,
    pub orientable: Option<bool>,
    pub certificate: Certificate,
    /// Set when the class was computed from the explicit map.
    pub class: Option<WilsonClass>,
    pub provenance: Provenance,
}

/// The sidecar written next to a map file.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub construction: String,
    pub params: serde_json::Value,
    #[serde(rename = "type")]
    pub map_type: MapType,
    pub chi: i128,
    pub orientable: Option<bool>,
    pub class: Option<String>,
    pub group_order: u128,
    pub degree: Option<usize>,
}

impl ConstructionRecord {
    /// Record for an explicit regular map; invariants and class are computed from it.
    pub fn from_explicit(
        map: MapTriple,
        witness: Option<[Permutation; 3]>,
        construction: &str,
        params: serde_json::Value,
    ) -> Result<Self> {
        let report = mapcore::classify(&map)?;
        let chi = mapcore::euler_characteristic(&map) as i128;
        Ok(ConstructionRecord {
            group_order: map.degree() as u128,
            map_type: mapcore::map_type(&map),
            chi,
            orientable: Some(mapcore::orientability(&map)),
            certificate: Certificate::Explicit,
            class: Some(report.wilson_class),
            provenance: Provenance {
                construction: construction.into(),
                params,
            },
            witness,
            map: Some(map),
        })
    }

    /// `"I"`..`"IV"` for explicitly classified maps, `"certified-III"` for certificates.
    pub fn class_label(&self) -> Option<String> {
        match self.certificate {
            Certificate::Explicit => self.class.map(|c| c.to_string()),
            Certificate::L2qConstruction | Certificate::SigmaPlusProduct => {
                Some("certified-III".into())
            }
            Certificate::None => None,
        }
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            construction: self.provenance.construction.clone(),
            params: self.provenance.params.clone(),
            map_type: self.map_type,
            chi: self.chi,
            orientable: self.orientable,
            class: self.class_label(),
            group_order: self.group_order,
            degree: self.map.as_ref().map(|m| m.degree()),
        }
    }

    /// Recomputes type, χ, orientability and order from the map, if present.
    pub fn check_consistency(&self) -> Result<()> {
        let Some(m) = &self.map else { return Ok(()) };
        let mismatch = |what: &str| {
            Err(Error::Internal(format!(
                "record {what} disagrees with its map"
            )))
        };
        if self.group_order != m.degree() as u128 {
            return mismatch("group order");
        }
        if self.map_type != mapcore::map_type(m) {
            return mismatch("type");
        }
        if self.chi != mapcore::euler_characteristic(m) as i128 {
            return mismatch("chi");
        }
        if self
            .orientable
            .is_some_and(|o| o != mapcore::orientability(m))
        {
            return mismatch("orientability");
        }
        Ok(())
    }
}

/// The blade map of the group generated by `triple`, acting on itself by right multiplication.
///
/// Blades are numbered in the breadth-first element order of [`elements_of`].
pub fn regular_map(triple: &[Permutation; 3], cap: usize) -> Result<MapTriple> {
    let elements = elements_of(triple, cap)?;
    let [r0, r1, r2] = [0, 1, 2].map(|i| elements.right_regular(&triple[i]));
    MapTriple::new(r0?, r1?, r2?)
}

/// `V − E + F = N/2q − N/4 + N/2p` for a regular map of type `{p,q}` with `N` blades.
pub fn chi_from_type(group_order: u128, t: MapType) -> Result<i128> {
    let n = group_order as i128;
    let parts = [(n, 2 * t.q as i128), (n, 4), (n, 2 * t.p as i128)];
    if parts.iter().any(|(a, b)| a % b != 0) {
        return Err(Error::Internal(format!(
            "|G| = {group_order} is not divisible as type {t} requires"
        )));
    }
    Ok(n / (2 * t.q as i128) - n / 4 + n / (2 * t.p as i128))
}

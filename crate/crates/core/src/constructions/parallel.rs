//! Parallel products, explicit on blades and symbolic via the `Σ⁺`-closure of a character.

use serde::Serialize;
use serde_json::json;

use super::{Certificate, ConstructionRecord, Provenance};
use crate::error::{Error, Result};
use crate::mapcore::{
    admits_character, chi_formula, sigma_apply, MapTriple, MapType, SigmaElement, WilsonClass,
};
use crate::permgroup::Permutation;

/// The orbit of the all-zero point under the componentwise action on `Ω₁ × … × Ω_k`.
///
/// `cap` bounds the size of the full product. Blades are numbered in breadth-first
/// discovery order.
pub fn parallel_product_explicit(maps: &[MapTriple], cap: usize) -> Result<MapTriple> {
    if maps.is_empty() {
        return Err(Error::InvalidParameter("empty product".into()));
    }
    let degrees: Vec<usize> = maps.iter().map(|m| m.degree()).collect();
    let total = degrees
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&x| x <= cap))
        .ok_or_else(|| Error::CapExceeded {
            what: format!("product of degrees {degrees:?}"),
            cap: cap as u128,
        })?;
    // a point is its mixed-radix key; coordinates are decoded on the fly
    let step = |key: usize, i: usize| {
        let (mut rest, mut out, mut scale) = (key, 0usize, 1usize);
        for (m, &d) in maps.iter().zip(&degrees).rev() {
            let c = rest % d;
            rest /= d;
            out += m.act(c, i) * scale;
            scale *= d;
        }
        out
    };
    let mut label = vec![u32::MAX; total];
    let mut points: Vec<usize> = vec![0];
    label[0] = 0;
    let mut r: [Vec<u32>; 3] = Default::default();
    let mut head = 0;
    while head < points.len() {
        let key = points[head];
        head += 1;
        for i in 0..3 {
            let next = step(key, i);
            if label[next] == u32::MAX {
                label[next] = points.len() as u32;
                points.push(next);
            }
            r[i].push(label[next]);
        }
    }
    let [r0, r1, r2] = r.map(Permutation::from_images);
    MapTriple::new(r0?, r1?, r2?)
}

/// The product of `m`, `DP(m)` and `PD(m)`.
pub fn sigma_plus_product(m: &MapTriple, cap: usize) -> Result<MapTriple> {
    let factors: Vec<MapTriple> = [SigmaElement::Id, SigmaElement::DP, SigmaElement::PD]
        .iter()
        .map(|&s| sigma_apply(m, s))
        .collect();
    parallel_product_explicit(&factors, cap)
}

/// Which generators lie in the simple normal subgroup `S` of index 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ParityVector {
    pub in_s: [bool; 3],
}

impl ParityVector {
    /// The character of `Γ` with kernel `θ⁻¹(S)`.
    pub fn character(&self) -> [bool; 3] {
        self.in_s.map(|x| !x)
    }
}

/// The `Σ⁺`-core `H` of a subgroup of index at most 2 containing `Γ′`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CoverSubgroup {
    Gamma,
    Gamma02,
    GammaStar,
    GammaPrime,
}

impl CoverSubgroup {
    pub fn index(self) -> u128 {
        match self {
            CoverSubgroup::Gamma => 1,
            CoverSubgroup::Gamma02 => 2,
            CoverSubgroup::GammaStar => 4,
            CoverSubgroup::GammaPrime => 8,
        }
    }
}

fn bits(c: [bool; 3]) -> u8 {
    c[0] as u8 | (c[1] as u8) << 1 | (c[2] as u8) << 2
}

/// The GF(2)-span (as bit-masks, sorted) of the `Σ⁺`-orbit of a character.
///
/// The rotation acts on characters by `(c0, c1, c2) ↦ (c2, c1, c0 + c2)`.
pub fn sigma_plus_closure(c: [bool; 3]) -> Vec<u8> {
    let rotate = |c: [bool; 3]| [c[2], c[1], c[0] ^ c[2]];
    let orbit = [c, rotate(c), rotate(rotate(c))];
    let mut span = vec![0u8];
    for v in orbit.map(bits) {
        if !span.contains(&v) {
            let shifted: Vec<u8> = span.iter().map(|s| s ^ v).collect();
            span.extend(shifted);
        }
    }
    span.sort_unstable();
    span
}

fn subgroup_of_span(span: &[u8]) -> Result<CoverSubgroup> {
    match span {
        [0] => Ok(CoverSubgroup::Gamma),
        [0, 0b010] => Ok(CoverSubgroup::Gamma02),
        [0, 0b001, 0b100, 0b101] => Ok(CoverSubgroup::GammaStar),
        s if s.len() == 8 => Ok(CoverSubgroup::GammaPrime),
        other => Err(Error::Internal(format!(
            "Σ⁺-closed span {other:?} is not one of the four subgroups"
        ))),
    }
}

/// Type, order, χ and orientability of `N_{Σ⁺}` for a class-I map `N` with almost simple `Aut N`.
///
/// `parity` is `None` when `Aut N` is simple, otherwise the position of the `r_i`
/// relative to `S`. `|Aut M| = |Γ : H|·|S|³`, and `M` is orientable exactly when the
/// all-ones character lies in the closure span.
pub fn parallel_product_symbolic(
    base: &ConstructionRecord,
    simple_order: u128,
    parity: Option<ParityVector>,
) -> Result<ConstructionRecord> {
    if base.certificate != Certificate::Explicit || base.class != Some(WilsonClass::I) {
        return Err(Error::InvalidParameter(
            "the base map must be explicitly classified as class I".into(),
        ));
    }
    let (subgroup, span) = match parity {
        None => {
            if base.group_order != simple_order {
                return Err(Error::InvalidParameter(format!(
                    "|Aut N| = {} but the simple group has order {simple_order}",
                    base.group_order
                )));
            }
            (CoverSubgroup::Gamma, vec![0])
        }
        Some(pv) => {
            if base.group_order != 2 * simple_order {
                return Err(Error::InvalidParameter(format!(
                    "|Aut N| = {} is not twice |S| = {simple_order}",
                    base.group_order
                )));
            }
            if pv.in_s.iter().all(|&x| x) {
                return Err(Error::InvalidParameter(
                    "all r_i in S would generate only S".into(),
                ));
            }
            if let Some(m) = &base.map {
                if !admits_character(m, pv.character()) {
                    return Err(Error::InvalidParameter(format!(
                        "parity vector {:?} is not a character of Aut N",
                        pv.in_s
                    )));
                }
            }
            let span = sigma_plus_closure(pv.character());
            (subgroup_of_span(&span)?, span)
        }
    };
    let n = base.map_type.lcm();
    let order = simple_order
        .checked_pow(3)
        .and_then(|x| x.checked_mul(subgroup.index()))
        .ok_or_else(|| Error::CapExceeded {
            what: "|Aut M|".into(),
            cap: u128::MAX,
        })?;
    let chi = chi_formula(order, n)?;
    Ok(ConstructionRecord {
        map: None,
        witness: None,
        group_order: order,
        map_type: MapType { p: n, q: n, r: n },
        chi,
        orientable: Some(span.contains(&0b111)),
        certificate: Certificate::SigmaPlusProduct,
        class: None,
        provenance: Provenance {
            construction: "sigma-plus-product".into(),
            params: json!({
                "base": base.provenance,
                "base_type": base.map_type,
                "simple_order": simple_order,
                "parity": parity,
                "subgroup": subgroup,
            }),
        },
    })
}

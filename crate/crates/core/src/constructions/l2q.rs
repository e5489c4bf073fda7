//! Class-III maps with automorphism group `L₂(2^e)`, `3 | e`.

use serde::Serialize;
use serde_json::json;

use super::{regular_map, Certificate, ConstructionRecord, Provenance};
use crate::error::{Error, Result};
use crate::gf2field::{
    enumerate_useful_generators, fe_mul, find_root_of, frobenius_power, is_useful_generator,
    FieldElement, FieldSpec,
};
use crate::linfrac::{
    l2q_generation_check, order_from_trace, projective_line_permutation, ProjMatrix2,
};
use crate::mapcore::{chi_formula, MapTriple, MapType, WilsonClass};
use crate::permgroup::Permutation;

/// How the useful generator was picked.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorChoice {
    Given,
    /// `t`, a root of `t³ + t + 1` (the case `e = 3`).
    T,
    /// `t·u` with `u` a root of the least irreducible polynomial of degree `e/3`.
    TU,
    LeastUseful,
}

/// Picks a useful generator of GF(2^e).
pub fn auto_useful_generator(e: u32) -> Result<(FieldElement, GeneratorChoice)> {
    if !e.is_multiple_of(3) {
        return Err(Error::InvalidParameter(format!(
            "e = {e} is not divisible by 3"
        )));
    }
    let spec = FieldSpec::new(e)?;
    let t = find_root_of(0b1011, &spec)?;
    let (x, choice) = if e == 3 {
        (t, GeneratorChoice::T)
    } else if !e.is_multiple_of(9) {
        let f = FieldSpec::new(e / 3)?;
        let u = find_root_of(f.modulus(), &spec)?;
        (fe_mul(t, u)?, GeneratorChoice::TU)
    } else {
        let least = enumerate_useful_generators(&spec)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal(format!("GF(2^{e}) has no useful generator")))?;
        (least, GeneratorChoice::LeastUseful)
    };
    if !is_useful_generator(x)? {
        return Err(Error::Internal(format!(
            "auto-selected {x} is not a useful generator"
        )));
    }
    Ok((x, choice))
}

/// `r0 = (1 x; 0 1)`, `r1 = (1 0; 1 1)`, `r2 = (1 xʳ; 0 1)` with `r = 2^(e/3)`.
pub fn theorem_matrices(x: FieldElement) -> Result<[ProjMatrix2; 3]> {
    let s = *x.spec();
    let f = s
        .f()
        .ok_or_else(|| Error::InvalidParameter(format!("e = {} is not divisible by 3", s.e())))?;
    let xr = frobenius_power(x, f);
    Ok([
        ProjMatrix2::over_binary([s.one(), x, s.zero(), s.one()])?,
        ProjMatrix2::over_binary([s.one(), s.zero(), s.one(), s.one()])?,
        ProjMatrix2::over_binary([s.one(), xr, s.zero(), s.one()])?,
    ])
}

fn checked_matrices(x: FieldElement) -> Result<[ProjMatrix2; 3]> {
    if !is_useful_generator(x)? {
        return Err(Error::InvalidParameter(format!(
            "{x} is not a useful generator"
        )));
    }
    let m = theorem_matrices(x)?;
    let check = l2q_generation_check(&m[0], &m[1], &m[2])?;
    if !check.generates() {
        return Err(Error::Internal(format!(
            "useful generator {x} failed the generation check: {check:?}"
        )));
    }
    Ok(m)
}

fn line_triple(m: &[ProjMatrix2; 3]) -> [Permutation; 3] {
    [0, 1, 2].map(|i| projective_line_permutation(&m[i]))
}

/// The explicit map `M(x)` on `q(q² − 1)` blades.
pub fn l2q_map(x: FieldElement) -> Result<MapTriple> {
    let q = x.spec().q() as usize;
    regular_map(&line_triple(&checked_matrices(x)?), q * (q * q - 1))
}

/// The class-III map of a useful generator `x` (auto-selected when `None`).
///
/// The blade map is built when `|G| ≤ blade_cap`; otherwise the record is derived
/// from the trace recurrence alone.
pub fn build_l2q_class3(
    e: u32,
    x: Option<FieldElement>,
    blade_cap: usize,
) -> Result<ConstructionRecord> {
    if !e.is_multiple_of(3) {
        return Err(Error::InvalidParameter(format!(
            "e = {e} is not divisible by 3"
        )));
    }
    let (x, choice) = match x {
        Some(x) if x.spec().e() != e => {
            return Err(Error::InvalidParameter(format!(
                "{x} does not lie in GF(2^{e})"
            )));
        }
        Some(x) => (x, GeneratorChoice::Given),
        None => auto_useful_generator(e)?,
    };
    let matrices = checked_matrices(x)?;
    let spec = x.spec();
    let q = spec.q() as u128;
    let group_order = q * (q * q - 1);
    let n = order_from_trace(x);
    let map_type = MapType { p: n, q: n, r: n };
    let chi = chi_formula(group_order, n)?;
    let params = json!({
        "e": e,
        "modulus": spec.modulus(),
        "x": x.value(),
        "x_poly": x.to_string(),
        "selection": choice,
    });
    if group_order <= blade_cap as u128 {
        let triple = line_triple(&matrices);
        let map = regular_map(&triple, blade_cap)?;
        let rec = ConstructionRecord::from_explicit(map, Some(triple), "l2q-class3", params)?;
        if rec.map_type != map_type || rec.chi != chi || rec.class != Some(WilsonClass::III) {
            return Err(Error::Internal(format!(
                "explicit map disagrees with the trace data: {} χ={} class {:?}",
                rec.map_type, rec.chi, rec.class
            )));
        }
        return Ok(rec);
    }
    Ok(ConstructionRecord {
        map: None,
        witness: None,
        group_order,
        map_type,
        chi,
        // L₂(2^e) is perfect for e ≥ 2, so no character reaches it
        orientable: Some(false),
        certificate: Certificate::L2qConstruction,
        class: None,
        provenance: Provenance {
            construction: "l2q-class3".into(),
            params,
        },
    })
}

/// Checks the nine relators in `R = r0r1`, `S = r2r1`, `T = r0r2r1`.
pub fn verify_wilson_relations(m: &MapTriple) -> bool {
    let r = m.r0().then(m.r1());
    let s = m.r2().then(m.r1());
    let t = m.r0().then(m.r2()).then(m.r1());
    let cube = |x: &Permutation| x.pow(3);
    let is_one = |x: &Permutation, k: u64| x.pow(k).is_identity();
    is_one(&r, 9)
        && is_one(&s, 9)
        && is_one(&t, 9)
        && is_one(&r.then(&cube(&s)), 3)
        && is_one(&s.then(&cube(&t)), 3)
        && is_one(&t.then(&cube(&r)), 3)
        && is_one(&s.then(&cube(&r)), 7)
        && is_one(&t.then(&cube(&s)), 7)
        && is_one(&r.then(&cube(&t)), 7)
}

//! Class-I seed maps on `S_n`, `A_n`, `L₂(p)` and `PGL₂(7)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use super::{
    chi_from_type, regular_map, Certificate, ConstructionRecord, ParityVector, Provenance,
};
use crate::census::{enumerate_maps, CensusQuery};
use crate::error::{Error, Result};
use crate::linfrac::{
    l2p_generators, pgl2p_generators, projective_line_permutation, PrimeField, ProjMatrix2,
};
use crate::mapcore::{MapType, WilsonClass};
use crate::permgroup::{group_order, order_of, PermGroup, Permutation};

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    // 1-indexed rule on 0-indexed storage
    Permutation::from_images((1..=n).map(|i| (f(i) - 1) as u32).collect())
        .expect("rule is a bijection")
}

/// `r0 = (1,n)(2,n−1)…`, `r1 = (2,n)(3,n−1)…`, `r2 = (1,n)`.
pub fn sn_triple(n: usize) -> [Permutation; 3] {
    let r0 = perm_from_fn(n, |i| n + 1 - i);
    let r1 = perm_from_fn(n, |i| if i == 1 { 1 } else { n + 2 - i });
    let r2 = Permutation::from_cycles(n, &[&[1, n]]).expect("transposition");
    [r0, r1, r2]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum AnVariant {
    /// `r2 = (1,n)(3,n−2)`.
    A,
    /// `r2 = (1,2)(n−1,n)`.
    B,
}

impl FromStr for AnVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AnVariant::A),
            "B" | "b" => Ok(AnVariant::B),
            _ => Err(Error::InvalidParameter(format!(
                "variant {s:?} is not A or B"
            ))),
        }
    }
}

pub fn an_triple(n: usize, variant: AnVariant) -> Result<[Permutation; 3]> {
    if n % 4 != 1 || n <= 5 {
        return Err(Error::InvalidParameter(format!(
            "A_n maps need n ≡ 1 mod 4 and n > 5, got {n}"
        )));
    }
    let [r0, r1, _] = sn_triple(n);
    let r2 = match variant {
        AnVariant::A => Permutation::from_cycles(n, &[&[1, n], &[3, n - 2]])?,
        AnVariant::B => Permutation::from_cycles(n, &[&[1, 2], &[n - 1, n]])?,
    };
    Ok([r0, r1, r2])
}

fn triple_type(t: &[Permutation; 3]) -> MapType {
    let r0r1 = t[0].then(&t[1]);
    MapType {
        p: order_of(&r0r1),
        q: order_of(&t[1].then(&t[2])),
        r: order_of(&r0r1.then(&t[2])),
    }
}

/// Explicit record when `|G| ≤ cap`, else invariants from the triple.
fn seed_record(
    triple: [Permutation; 3],
    expected_order: u128,
    orientable: bool,
    cap: usize,
    construction: &str,
    params: serde_json::Value,
) -> Result<ConstructionRecord> {
    let order = group_order(&triple)?;
    if order != expected_order {
        return Err(Error::Internal(format!(
            "{construction}: generated a group of order {order}, not {expected_order}"
        )));
    }
    if order <= cap as u128 {
        let map = regular_map(&triple, cap)?;
        let rec = ConstructionRecord::from_explicit(map, Some(triple), construction, params)?;
        if rec.orientable != Some(orientable) {
            return Err(Error::Internal(format!(
                "{construction}: orientability disagrees with the group characters"
            )));
        }
        return Ok(rec);
    }
    let map_type = triple_type(&triple);
    Ok(ConstructionRecord {
        map: None,
        chi: chi_from_type(order, map_type)?,
        witness: Some(triple),
        group_order: order,
        map_type,
        orientable: Some(orientable),
        certificate: Certificate::None,
        class: None,
        provenance: Provenance {
            construction: construction.into(),
            params,
        },
    })
}

/// The `S_n` map of type `{n,6}_{n−1}`.
pub fn build_sn_map(n: usize, cap: usize) -> Result<ConstructionRecord> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "S_n maps need n >= 5, got {n}"
        )));
    }
    let triple = sn_triple(n);
    // the sign is the only character of S_n
    let orientable = triple.iter().all(|r| !r.is_even());
    seed_record(
        triple,
        factorial(n),
        orientable,
        cap,
        "sn",
        json!({ "n": n }),
    )
}

/// The `A_n` maps of types `{n,12}_{n−5}` (variant A) and `{n,10}_{n−2}` (variant B).
pub fn build_an_map(n: usize, variant: AnVariant, cap: usize) -> Result<ConstructionRecord> {
    let triple = an_triple(n, variant)?;
    if let Some(i) = (0..3).find(|&i| !triple[i].is_even()) {
        return Err(Error::InvalidParameter(format!("r{i} is odd")));
    }
    seed_record(
        triple,
        factorial(n) / 2,
        false,
        cap,
        "an",
        json!({ "n": n, "variant": variant }),
    )
}

/// `r0 = ±(0 i; i 0)`, `r1 = ±(i i; 0 −i)`, `r2 = ±(i 0; 0 −i)` with `i` the least root of −1.
pub fn l2p_matrices(p: u64) -> Result<[ProjMatrix2; 3]> {
    let f = PrimeField::new(p)?;
    if p % 4 != 1 || p <= 5 {
        return Err(Error::InvalidParameter(format!(
            "need a prime p ≡ 1 mod 4 with p > 5, got {p}"
        )));
    }
    let i = f.sqrt(p - 1).expect("-1 is a square for p ≡ 1 mod 4") as i64;
    Ok([
        ProjMatrix2::over_prime(f, [0, i, i, 0])?,
        ProjMatrix2::over_prime(f, [i, i, 0, -i])?,
        ProjMatrix2::over_prime(f, [i, 0, 0, -i])?,
    ])
}

/// The `L₂(p)` map of type `{3,p}_r`.
pub fn build_l2p_map(p: u64, cap: usize) -> Result<ConstructionRecord> {
    let m = l2p_matrices(p)?;
    let triple = m.map(|x| projective_line_permutation(&x));
    let p128 = p as u128;
    seed_record(
        triple,
        p128 * (p128 * p128 - 1) / 2,
        false,
        cap,
        "l2p",
        json!({ "p": p }),
    )
}

fn pgl2_7_line() -> Result<(Vec<Permutation>, PermGroup)> {
    let f = PrimeField::new(7)?;
    let g: Vec<Permutation> = pgl2p_generators(f)
        .iter()
        .map(projective_line_permutation)
        .collect();
    let s: Vec<Permutation> = l2p_generators(f)
        .iter()
        .map(projective_line_permutation)
        .collect();
    Ok((g, PermGroup::new(&s)?))
}

/// The orientable `PGL₂(7)` map of type `{3,7}_8` with every `r_i` outside `L₂(7)`.
///
/// Found as the first suitable class-I entry of the census of `PGL₂(7)` on the projective line.
pub fn build_pgl2_7_map() -> Result<ConstructionRecord> {
    let (gens, s) = pgl2_7_line()?;
    let query = CensusQuery::new(gens).with_type(MapType { p: 3, q: 7, r: 8 });
    let census = enumerate_maps(&query)?;
    let entry = census
        .entries
        .iter()
        .find(|e| {
            e.classification.wilson_class == WilsonClass::I
                && e.witness.iter().all(|r| !s.contains(r))
        })
        .ok_or_else(|| {
            Error::Internal("PGL2(7) has no class-I map of type {3,7}_8 outside L2(7)".into())
        })?;
    let triple = entry.witness.clone();
    seed_record(triple, 336, true, 336, "pgl2-7", json!({ "p": 7 }))
}

/// A class-I seed for the `Σ⁺`-product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Seed {
    Sn(usize),
    An(usize, AnVariant),
    L2p(u64),
    Pgl27,
}

impl FromStr for Seed {
    type Err = Error;

    /// `sn:<n>`, `an:<n>:<A|B>`, `l2p:<p>` or `pgl2-7`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown seed {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        match parts[..] {
            ["sn", n] => Ok(Seed::Sn(num(n)? as usize)),
            ["an", n, v] => Ok(Seed::An(num(n)? as usize, v.parse()?)),
            ["l2p", p] => Ok(Seed::L2p(num(p)?)),
            ["pgl2-7"] => Ok(Seed::Pgl27),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Sn(n) => write!(f, "sn:{n}"),
            Seed::An(n, v) => write!(f, "an:{n}:{v:?}"),
            Seed::L2p(p) => write!(f, "l2p:{p}"),
            Seed::Pgl27 => write!(f, "pgl2-7"),
        }
    }
}

impl Seed {
    pub fn build(&self, cap: usize) -> Result<ConstructionRecord> {
        match *self {
            Seed::Sn(n) => build_sn_map(n, cap),
            Seed::An(n, v) => build_an_map(n, v, cap),
            Seed::L2p(p) => build_l2p_map(p, cap),
            Seed::Pgl27 => build_pgl2_7_map(),
        }
    }

    /// `|S|` for the simple socle `S`, and the parity vector when `|A/S| = 2`.
    pub fn simple_structure(
        &self,
        rec: &ConstructionRecord,
    ) -> Result<(u128, Option<ParityVector>)> {
        let witness = rec.witness.as_ref().ok_or_else(|| {
            Error::InvalidParameter("seed record has no generating triple".into())
        })?;
        match *self {
            Seed::Sn(n) => Ok((
                factorial(n) / 2,
                Some(ParityVector {
                    in_s: witness.clone().map(|r| r.is_even()),
                }),
            )),
            Seed::An(..) | Seed::L2p(_) => Ok((rec.group_order, None)),
            Seed::Pgl27 => {
                let (_, s) = pgl2_7_line()?;
                Ok((
                    168,
                    Some(ParityVector {
                        in_s: witness.clone().map(|r| s.contains(&r)),
                    }),
                ))
            }
        }
    }
}

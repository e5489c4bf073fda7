//! Wilson's operations: the group `Σ ≅ S₃` permuting `{r0, r2, r0r2}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{are_isomorphic, is_regular, MapTriple};
use crate::error::{Error, Result};

/// An element of `Σ`, named by the word in `D` (duality) and `P` (Petrie duality).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SigmaElement {
    Id,
    D,
    P,
    DPD,
    DP,
    PD,
}

impl SigmaElement {
    /// The fixed reporting order.
    pub const ALL: [SigmaElement; 6] = [
        SigmaElement::Id,
        SigmaElement::D,
        SigmaElement::P,
        SigmaElement::DPD,
        SigmaElement::DP,
        SigmaElement::PD,
    ];

    /// Slot permutation `π` on `(r0, r2, r0r2)`: the new slot `j` holds the old slot `π[j]`.
    pub fn slots(self) -> [usize; 3] {
        match self {
            SigmaElement::Id => [0, 1, 2],
            SigmaElement::D => [1, 0, 2],
            SigmaElement::P => [2, 1, 0],
            SigmaElement::DPD => [0, 2, 1],
            SigmaElement::DP => [2, 0, 1],
            SigmaElement::PD => [1, 2, 0],
        }
    }

    fn from_slots(s: [usize; 3]) -> SigmaElement {
        *SigmaElement::ALL
            .iter()
            .find(|x| x.slots() == s)
            .expect("S3 is closed")
    }

    /// `self` followed by `other`: applying `self` then `other` equals applying the product.
    pub fn then(self, other: SigmaElement) -> SigmaElement {
        let (a, b) = (self.slots(), other.slots());
        SigmaElement::from_slots([a[b[0]], a[b[1]], a[b[2]]])
    }

    pub fn inverse(self) -> SigmaElement {
        *SigmaElement::ALL
            .iter()
            .find(|x| self.then(**x) == SigmaElement::Id)
            .unwrap()
    }

    /// Whether the element lies in the rotation subgroup `Σ⁺ = {Id, DP, PD}`.
    pub fn is_even(self) -> bool {
        matches!(self, SigmaElement::Id | SigmaElement::DP | SigmaElement::PD)
    }
}

impl fmt::Display for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for SigmaElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SigmaElement::ALL
            .into_iter()
            .find(|x| x.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown operation {s:?}")))
    }
}

/// `(s(r0), r1, s(r2))`.
pub fn sigma_apply(m: &MapTriple, s: SigmaElement) -> MapTriple {
    if s == SigmaElement::Id {
        return m.clone();
    }
    let r0r2 = m.r0().then(m.r2());
    let old = [m.r0(), m.r2(), &r0r2];
    let pi = s.slots();
    MapTriple::new_unchecked([old[pi[0]].clone(), m.r1().clone(), old[pi[1]].clone()])
}

/// The six direct derivates in the order of [`SigmaElement::ALL`].
pub fn derivates(m: &MapTriple) -> Vec<MapTriple> {
    SigmaElement::ALL
        .iter()
        .map(|&s| sigma_apply(m, s))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum WilsonClass {
    I,
    II,
    III,
    IV,
}

impl WilsonClass {
    pub fn from_derivate_count(n: usize) -> Option<WilsonClass> {
        match n {
            6 => Some(WilsonClass::I),
            3 => Some(WilsonClass::II),
            2 => Some(WilsonClass::III),
            1 => Some(WilsonClass::IV),
            _ => None,
        }
    }

    pub fn derivate_count(self) -> usize {
        match self {
            WilsonClass::I => 6,
            WilsonClass::II => 3,
            WilsonClass::III => 2,
            WilsonClass::IV => 1,
        }
    }
}

impl fmt::Display for WilsonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "class")]
    pub wilson_class: WilsonClass,
    #[serde(rename = "derivates")]
    pub derivate_count: usize,
    /// Parts listed in order of first member; members in the fixed order.
    pub iso_partition: Vec<Vec<SigmaElement>>,
}

impl ClassificationReport {
    /// The part containing `s`.
    pub fn part_of(&self, s: SigmaElement) -> &[SigmaElement] {
        self.iso_partition
            .iter()
            .find(|p| p.contains(&s))
            .expect("partition covers Σ")
    }
}

/// Partitions the six derivates of a regular map by isomorphism.
pub fn classify(m: &MapTriple) -> Result<ClassificationReport> {
    let reg = is_regular(m);
    if !reg.regular {
        return Err(Error::NotRegular {
            aut: reg.aut_order,
            degree: m.degree(),
        });
    }
    classify_regular(m)
}

/// [`classify`] without the regularity check.
pub(crate) fn classify_regular(m: &MapTriple) -> Result<ClassificationReport> {
    let ds = derivates(m);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for i in 0..6 {
        match parts
            .iter_mut()
            .find(|p| are_isomorphic(&ds[i], &ds[p[0]], true))
        {
            Some(p) => p.push(i),
            None => parts.push(vec![i]),
        }
    }
    let count = parts.len();
    let wilson_class = WilsonClass::from_derivate_count(count).ok_or_else(|| {
        Error::Internal(format!(
            "{count} derivate classes is not an orbit size of S3"
        ))
    })?;
    Ok(ClassificationReport {
        wilson_class,
        derivate_count: count,
        iso_partition: parts
            .into_iter()
            .map(|p| p.into_iter().map(|i| SigmaElement::ALL[i]).collect())
            .collect(),
    })
}

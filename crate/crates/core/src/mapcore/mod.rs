//! Maps as blade triples `(r0, r1, r2)` and their invariants.

mod iso;
mod sigma;

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, MapViolation, Result};
use crate::permgroup::{lcm, orbit_labels, order_of, Permutation};

pub use iso::{are_isomorphic, is_regular, rooted_isomorphism, Regularity};
pub(crate) use sigma::classify_regular;
pub use sigma::{
    classify, derivates, sigma_apply, ClassificationReport, SigmaElement, WilsonClass,
};

/// Degree above which the all-roots isomorphism fallback is refused.
pub const FULL_ROOT_FALLBACK_CAP: usize = 5000;

/// Three involutions on `0..degree` satisfying the map relations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct MapTriple {
    r: [Permutation; 3],
}

/// The on-disk form, checked by [`validate`] on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawMap {
    pub degree: usize,
    pub r0: Vec<u32>,
    pub r1: Vec<u32>,
    pub r2: Vec<u32>,
}

impl TryFrom<RawMap> for MapTriple {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        validate(raw)
    }
}

impl From<MapTriple> for RawMap {
    fn from(m: MapTriple) -> RawMap {
        let degree = m.degree();
        let [r0, r1, r2] = m.r;
        RawMap {
            degree,
            r0: r0.into(),
            r1: r1.into(),
            r2: r2.into(),
        }
    }
}

const NAMES: [&str; 3] = ["r0", "r1", "r2"];

/// Checks every defining relation and reports all that fail.
pub fn validate(raw: RawMap) -> Result<MapTriple> {
    let n = raw.degree;
    if n == 0 {
        return Err(Error::InvalidMap(vec![MapViolation::EmptyMap]));
    }
    let mut violations = Vec::new();
    let mut perms = Vec::new();
    for (name, images) in NAMES.into_iter().zip([raw.r0, raw.r1, raw.r2]) {
        if images.len() != n {
            violations.push(MapViolation::DegreeMismatch {
                generator: name,
                len: images.len(),
            });
            continue;
        }
        match Permutation::from_images(images) {
            Ok(p) => perms.push(p),
            Err(_) => violations.push(MapViolation::NotAPermutation(name)),
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidMap(violations));
    }
    let r: [Permutation; 3] = perms.try_into().expect("three generators");
    let m = MapTriple { r };
    let violations = m.violations();
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(Error::InvalidMap(violations))
    }
}

impl MapTriple {
    /// Validated construction from three permutations.
    pub fn new(r0: Permutation, r1: Permutation, r2: Permutation) -> Result<Self> {
        let n = r0.degree();
        for (name, p) in [("r1", &r1), ("r2", &r2)] {
            if p.degree() != n {
                return Err(Error::InvalidMap(vec![MapViolation::DegreeMismatch {
                    generator: name,
                    len: p.degree(),
                }]));
            }
        }
        let m = MapTriple { r: [r0, r1, r2] };
        let violations = m.violations();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidMap(violations))
        }
    }

    /// Skips validation; callers guarantee the relations.
    pub(crate) fn new_unchecked(r: [Permutation; 3]) -> Self {
        let m = MapTriple { r };
        debug_assert!(m.violations().is_empty(), "{:?}", m.violations());
        m
    }

    fn violations(&self) -> Vec<MapViolation> {
        let mut out = Vec::new();
        for (name, p) in NAMES.into_iter().zip(&self.r) {
            if !p.then(p).is_identity() {
                out.push(MapViolation::NotAnInvolution(name));
            }
        }
        let r0r2 = self.r0().then(self.r2());
        if !r0r2.then(&r0r2).is_identity() {
            out.push(MapViolation::R0R2NotInvolution);
        }
        for (name, p) in NAMES.into_iter().zip(&self.r).chain([("r0r2", &r0r2)]) {
            if (0..p.degree()).any(|i| p.apply(i) == i) {
                out.push(MapViolation::HasFixedPoint(name));
            }
        }
        let orbit = crate::permgroup::orbit(0, &self.r);
        if orbit.len() != self.degree() {
            out.push(MapViolation::NotTransitive {
                orbit_of_zero: orbit.len(),
            });
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.r[0].degree()
    }

    pub fn r0(&self) -> &Permutation {
        &self.r[0]
    }

    pub fn r1(&self) -> &Permutation {
        &self.r[1]
    }

    pub fn r2(&self) -> &Permutation {
        &self.r[2]
    }

    pub fn generators(&self) -> &[Permutation; 3] {
        &self.r
    }

    /// `ω·r_i`.
    #[inline]
    pub fn act(&self, blade: usize, i: usize) -> usize {
        self.r[i].apply(blade)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("maps serialize")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Type `{p,q}_r` as the orders of `r0r1`, `r1r2`, `r0r1r2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct MapType {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

impl From<[u64; 3]> for MapType {
    fn from([p, q, r]: [u64; 3]) -> Self {
        MapType { p, q, r }
    }
}

impl From<MapType> for [u64; 3] {
    fn from(t: MapType) -> Self {
        t.as_array()
    }
}

impl MapType {
    pub fn as_array(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }

    pub fn lcm(&self) -> u64 {
        lcm(lcm(self.p, self.q), self.r)
    }

    pub fn is_uniform(&self) -> bool {
        self.p == self.q && self.q == self.r
    }
}

impl std::fmt::Display for MapType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}_{}", self.p, self.q, self.r)
    }
}

impl std::str::FromStr for MapType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParameter(format!("type {s:?} is not p,q,r")))?;
        match parts[..] {
            [p, q, r] if p > 0 && q > 0 && r > 0 => Ok(MapType { p, q, r }),
            _ => Err(Error::InvalidParameter(format!("type {s:?} is not p,q,r"))),
        }
    }
}

pub fn map_type(m: &MapTriple) -> MapType {
    let r0r1 = m.r0().then(m.r1());
    let r1r2 = m.r1().then(m.r2());
    let r0r1r2 = r0r1.then(m.r2());
    MapType {
        p: order_of(&r0r1),
        q: order_of(&r1r2),
        r: order_of(&r0r1r2),
    }
}

/// Vertex, edge, face and Petrie polygon counts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "Pe")]
    pub pe: usize,
}

fn vertex_labels(m: &MapTriple) -> (Vec<u32>, usize) {
    orbit_labels(m.degree(), &[m.r1(), m.r2()])
}

fn edge_labels(m: &MapTriple) -> (Vec<u32>, usize) {
    orbit_labels(m.degree(), &[m.r0(), m.r2()])
}

fn face_labels(m: &MapTriple) -> (Vec<u32>, usize) {
    orbit_labels(m.degree(), &[m.r0(), m.r1()])
}

pub fn counts(m: &MapTriple) -> Counts {
    let r0r2 = m.r0().then(m.r2());
    Counts {
        v: vertex_labels(m).1,
        e: edge_labels(m).1,
        f: face_labels(m).1,
        pe: orbit_labels(m.degree(), &[&r0r2, m.r1()]).1,
    }
}

pub fn euler_characteristic(m: &MapTriple) -> i64 {
    let c = counts(m);
    c.v as i64 - c.e as i64 + c.f as i64
}

/// `|G|(4 − n)/4n`, which must be an integer.
pub fn chi_formula(group_order: u128, n: u64) -> Result<i128> {
    if n == 0 || group_order == 0 {
        return Err(Error::InvalidParameter(
            "group order and n must be positive".into(),
        ));
    }
    let num = (group_order as i128)
        .checked_mul(4 - n as i128)
        .ok_or_else(|| Error::CapExceeded {
            what: "chi numerator".into(),
            cap: i128::MAX as u128,
        })?;
    let den = 4 * n as i128;
    if num % den != 0 {
        return Err(Error::Internal(format!(
            "|G| = {group_order}, n = {n}: chi is not an integer"
        )));
    }
    Ok(num / den)
}

/// Whether the character of `Γ` sending `R_i` to `c[i]` factors through the monodromy group.
///
/// Equivalently, the blades can be two-colored so that `r_i` swaps colors exactly when `c[i]`.
pub fn admits_character(m: &MapTriple, c: [bool; 3]) -> bool {
    let n = m.degree();
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut stack = vec![0usize];
    while let Some(w) = stack.pop() {
        for i in 0..3 {
            let v = m.act(w, i);
            let want = color[w] ^ c[i] as u8;
            if color[v] == u8::MAX {
                color[v] = want;
                stack.push(v);
            } else if color[v] != want {
                return false;
            }
        }
    }
    true
}

/// Orientable iff every `r_i` can reverse a two-coloring of the blades.
pub fn orientability(m: &MapTriple) -> bool {
    admits_character(m, [true; 3])
}

/// Edge multiplicities `(mV, mF)` between the vertices and the faces at an edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Multiplicities {
    #[serde(rename = "mV")]
    pub m_v: usize,
    #[serde(rename = "mF")]
    pub m_f: usize,
}

/// Counts, per unordered pair of end labels, how many edges join that pair.
fn pair_counts(
    m: &MapTriple,
    edge: &[u32],
    ends: &[u32],
    other: usize,
) -> HashMap<(u32, u32), usize> {
    let mut seen = vec![false; edge.iter().map(|&x| x as usize + 1).max().unwrap_or(0)];
    let mut out = HashMap::new();
    for w in 0..m.degree() {
        let e = edge[w] as usize;
        if seen[e] {
            continue;
        }
        seen[e] = true;
        let (a, b) = (ends[w], ends[m.act(w, other)]);
        *out.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    out
}

fn multiplicity_at(
    m: &MapTriple,
    blade: usize,
    ends: &[u32],
    other: usize,
    side: &'static str,
    table: &HashMap<(u32, u32), usize>,
) -> Result<usize> {
    let (a, b) = (ends[blade], ends[m.act(blade, other)]);
    if a == b {
        return Err(Error::DegenerateEdge { side, blade });
    }
    Ok(table[&(a.min(b), a.max(b))])
}

/// `(mV, mF)` at the edge of blade 0, checked for uniformity on sample edges.
///
/// The ends of the edge through `ω` are the vertices of `ω` and `ω·r0`; its sides
/// are the faces of `ω` and `ω·r2`.
pub fn multiplicities(m: &MapTriple) -> Result<Multiplicities> {
    let (edge, _) = edge_labels(m);
    let (vert, _) = vertex_labels(m);
    let (face, _) = face_labels(m);
    let vtab = pair_counts(m, &edge, &vert, 0);
    let ftab = pair_counts(m, &edge, &face, 2);
    let at = |b: usize| -> Result<Multiplicities> {
        Ok(Multiplicities {
            m_v: multiplicity_at(m, b, &vert, 0, "vertex", &vtab)?,
            m_f: multiplicity_at(m, b, &face, 2, "face", &ftab)?,
        })
    };
    let first = at(0)?;
    let n = m.degree();
    for k in 1..=10 {
        let b = k * n / 11;
        let here = at(b)?;
        if here != first {
            return Err(Error::Internal(format!(
                "multiplicities differ between blade 0 ({first:?}) and blade {b} ({here:?})"
            )));
        }
    }
    Ok(first)
}

/// Everything `analyze` reports about a map.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub degree: usize,
    #[serde(rename = "type")]
    pub map_type: MapType,
    #[serde(flatten)]
    pub counts: Counts,
    pub chi: i64,
    pub orientable: bool,
    /// `1 − χ/2` when orientable, `2 − χ` otherwise.
    pub genus: i64,
    /// Absent when an edge is a loop or the map is not edge-uniform.
    #[serde(flatten)]
    pub multiplicities: Option<Multiplicities>,
}

pub fn invariants(m: &MapTriple) -> InvariantsReport {
    let counts = counts(m);
    let chi = counts.v as i64 - counts.e as i64 + counts.f as i64;
    let orientable = orientability(m);
    InvariantsReport {
        degree: m.degree(),
        map_type: map_type(m),
        counts,
        chi,
        orientable,
        genus: if orientable { 1 - chi / 2 } else { 2 - chi },
        multiplicities: multiplicities(m).ok(),
    }
}

#[cfg(test)]
pub(crate) mod tests;

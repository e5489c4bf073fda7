//! Enumeration of all regular maps with a given automorphism group.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2field::FieldSpec;
use crate::linfrac::{
    l2p_generators, l2q_generators, matrix_order, pgl2p_generators, pm_mul, pm_trace,
    projective_line_permutation, PrimeField, ProjMatrix2, ProjTrace,
};
use crate::mapcore::{
    admits_character, are_isomorphic, classify_regular, invariants, is_regular, map_type,
    multiplicities, sigma_apply, ClassificationReport, InvariantsReport, MapTriple, MapType,
    SigmaElement,
};
use crate::permgroup::{alternating_generators, elements_of, symmetric_generators, Permutation};

/// Default bound on `|G|`.
pub const DEFAULT_GROUP_CAP: u128 = 10_000;

/// A group given by name, realized as permutations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    /// `L₂(2^e)` on the projective line.
    L2q(u32),
    /// `L₂(p)` on the projective line.
    L2p(u64),
    /// `PGL₂(p)` on the projective line.
    Pgl2p(u64),
    Sym(usize),
    Alt(usize),
    /// A JSON array of permutation image arrays.
    File(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown group spec {s:?}"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let num = || arg.parse::<u64>().map_err(|_| bad());
        match kind {
            "l2q" => Ok(GroupSpec::L2q(num()? as u32)),
            "l2p" => Ok(GroupSpec::L2p(num()?)),
            "pgl2p" => Ok(GroupSpec::Pgl2p(num()?)),
            "sym" => Ok(GroupSpec::Sym(num()? as usize)),
            "alt" => Ok(GroupSpec::Alt(num()? as usize)),
            "file" => Ok(GroupSpec::File(arg.into())),
            _ => Err(bad()),
        }
    }
}

impl GroupSpec {
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        let line = |ms: Vec<ProjMatrix2>| ms.iter().map(projective_line_permutation).collect();
        match self {
            GroupSpec::L2q(e) => Ok(line(l2q_generators(&FieldSpec::new(*e)?))),
            GroupSpec::L2p(p) => Ok(line(l2p_generators(PrimeField::new(*p)?))),
            GroupSpec::Pgl2p(p) => Ok(line(pgl2p_generators(PrimeField::new(*p)?))),
            GroupSpec::Sym(n) => symmetric_generators(*n),
            GroupSpec::Alt(n) => alternating_generators(*n),
            GroupSpec::File(path) => {
                let gens: Vec<Permutation> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                match gens.first() {
                    None => Err(Error::InvalidParameter("generator file is empty".into())),
                    Some(g) if gens.iter().any(|h| h.degree() != g.degree()) => Err(
                        Error::InvalidParameter("generators have different degrees".into()),
                    ),
                    Some(_) => Ok(gens),
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusQuery {
    pub generators: Vec<Permutation>,
    pub type_filter: Option<MapType>,
    pub cap: u128,
}

impl CensusQuery {
    pub fn new(generators: Vec<Permutation>) -> Self {
        CensusQuery {
            generators,
            type_filter: None,
            cap: DEFAULT_GROUP_CAP,
        }
    }

    pub fn with_type(mut self, t: MapType) -> Self {
        self.type_filter = Some(t);
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub map: MapTriple,
    pub invariants: InvariantsReport,
    pub classification: ClassificationReport,
    pub sigma_orbit_id: usize,
    /// `(r0, r1, r2)` as elements of the input group.
    pub witness: [Permutation; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    pub group_order: u128,
    /// Generating triples that passed the type filter, before deduplication.
    pub triples: usize,
    pub entries: Vec<CensusEntry>,
}

impl CensusResult {
    /// Entry indices grouped by `Σ`-orbit, in orbit-id order.
    pub fn sigma_orbits(&self) -> Vec<Vec<usize>> {
        let count = self
            .entries
            .iter()
            .map(|e| e.sigma_orbit_id + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (i, e) in self.entries.iter().enumerate() {
            out[e.sigma_orbit_id].push(i);
        }
        out
    }
}

type BucketKey = (MapType, [usize; 4], bool, Option<(usize, usize)>);

fn bucket_key(inv: &InvariantsReport) -> BucketKey {
    let c = inv.counts;
    (
        inv.map_type,
        [c.v, c.e, c.f, c.pe],
        inv.orientable,
        inv.multiplicities.map(|m| (m.m_v, m.m_f)),
    )
}

/// All regular maps with automorphism group `G = ⟨generators⟩`, up to isomorphism.
///
/// Triples `(a0, a1, a2)` of involutions with `a0 a2 = a2 a0`, `a2 ∉ {1, a0}` are tried
/// in element order; a triple yields a map when its right-regular action is transitive,
/// i.e. when it generates `G`.
pub fn enumerate_maps(q: &CensusQuery) -> Result<CensusResult> {
    if q.generators.is_empty() {
        return Err(Error::InvalidParameter("no generators".into()));
    }
    let order = crate::permgroup::group_order(&q.generators)?;
    if order > q.cap {
        return Err(Error::CapExceeded {
            what: format!("group of order {order}"),
            cap: q.cap,
        });
    }
    let elements = elements_of(&q.generators, order as usize)?;
    let involutions: Vec<usize> = (0..elements.len())
        .filter(|&i| elements.get(i).is_involution())
        .collect();
    // right multiplication by each involution, as a blade permutation
    let mut right: HashMap<usize, Permutation> = HashMap::new();
    for &i in &involutions {
        right.insert(i, elements.right_regular(elements.get(i))?);
    }
    let passes = |t: MapType| q.type_filter.is_none_or(|f| f == t);

    let mut entries: Vec<(MapTriple, InvariantsReport, [usize; 3])> = Vec::new();
    let mut buckets: HashMap<BucketKey, Vec<usize>> = HashMap::new();
    let mut triples = 0;
    for &a0 in &involutions {
        let g0 = elements.get(a0);
        for &a2 in &involutions {
            let g2 = elements.get(a2);
            if a2 == a0 || g0.then(g2) != g2.then(g0) {
                continue;
            }
            for &a1 in &involutions {
                let g1 = elements.get(a1);
                let r0r1 = g0.then(g1);
                let t = MapType {
                    p: crate::permgroup::order_of(&r0r1),
                    q: crate::permgroup::order_of(&g1.then(g2)),
                    r: crate::permgroup::order_of(&r0r1.then(g2)),
                };
                if !passes(t) {
                    continue;
                }
                let gens = [right[&a0].clone(), right[&a1].clone(), right[&a2].clone()];
                if !crate::permgroup::is_transitive(&gens, elements.len()) {
                    continue;
                }
                triples += 1;
                let m = MapTriple::new_unchecked(gens);
                let inv = invariants(&m);
                let bucket = buckets.entry(bucket_key(&inv)).or_default();
                if bucket
                    .iter()
                    .any(|&j| are_isomorphic(&m, &entries[j].0, true))
                {
                    continue;
                }
                bucket.push(entries.len());
                entries.push((m, inv, [a0, a1, a2]));
            }
        }
    }

    // Σ-orbits by union-find over the derivates of each representative
    let mut parent: Vec<usize> = (0..entries.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..entries.len() {
        for s in [SigmaElement::D, SigmaElement::P] {
            let d = sigma_apply(&entries[i].0, s);
            let key = bucket_key(&invariants(&d));
            if let Some(b) = buckets.get(&key) {
                if let Some(&j) = b.iter().find(|&&j| are_isomorphic(&d, &entries[j].0, true)) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut orbit_ids: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(entries.len());
    for (i, (m, inv, w)) in entries.into_iter().enumerate() {
        let root = find(&mut parent, i);
        let next = orbit_ids.len();
        let sigma_orbit_id = *orbit_ids.entry(root).or_insert(next);
        let classification = classify_regular(&m)?;
        let witness = w.map(|k| elements.get(k).clone());
        out.push(CensusEntry {
            map: m,
            invariants: inv,
            classification,
            sigma_orbit_id,
            witness,
        });
    }
    Ok(CensusResult {
        group_order: order,
        triples,
        entries: out,
    })
}

/// Why a map of type `{n,n}_n` cannot be in class III.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Exclusion {
    /// The edge multiplicities between vertices and between faces differ.
    MultiplicitiesDiffer { m_v: usize, m_f: usize },
    /// `m ≅ D(m)`.
    SelfDual,
    /// The characters of `Γ` that factor through `G` are not those of `Γ`, `Γ₀₂`, `Γ*` or `Γ′`.
    Abelianization { characters: Vec<[u8; 3]> },
}

/// Characters `c ∈ GF(2)³` (bit `i` = value on `R_i`) that factor through the map's group.
pub fn factoring_characters(m: &MapTriple) -> Vec<u8> {
    (0u8..8)
        .filter(|&c| admits_character(m, [c & 1 != 0, c & 2 != 0, c & 4 != 0]))
        .collect()
}

/// The three class-III screens. An empty list means no screen fires.
pub fn exclusion_screen(m: &MapTriple) -> Result<Vec<Exclusion>> {
    let reg = is_regular(m);
    if !reg.regular {
        return Err(Error::NotRegular {
            aut: reg.aut_order,
            degree: m.degree(),
        });
    }
    let t = map_type(m);
    if !t.is_uniform() {
        return Err(Error::InvalidParameter(format!(
            "screens need a type {{n,n}}_n, got {t}"
        )));
    }
    let mut out = Vec::new();
    match multiplicities(m) {
        Ok(mu) if mu.m_v != mu.m_f => out.push(Exclusion::MultiplicitiesDiffer {
            m_v: mu.m_v,
            m_f: mu.m_f,
        }),
        Ok(_) => {}
        Err(Error::DegenerateEdge { .. }) => {}
        Err(e) => return Err(e),
    }
    if are_isomorphic(m, &sigma_apply(m, SigmaElement::D), true) {
        out.push(Exclusion::SelfDual);
    }
    let chars = factoring_characters(m);
    let allowed: [&[u8]; 4] = [
        &[0],
        &[0, 0b010],
        &[0, 0b001, 0b100, 0b101],
        &[0, 1, 2, 3, 4, 5, 6, 7],
    ];
    if !allowed.contains(&chars.as_slice()) {
        out.push(Exclusion::Abelianization {
            characters: chars
                .iter()
                .map(|&c| [c & 1, (c >> 1) & 1, (c >> 2) & 1])
                .collect(),
        });
    }
    Ok(out)
}

/// A solution `r1 = ±(a b; c −a)` over GF(13), with `r0 = ±(5 0; 0 −5)` and `r2 = ±(0 1; −1 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct L213Solution {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// Traces (up to sign, in `0..=6`) of `r0r1`, `r1r2`, `r0r1r2`.
    pub traces: [u64; 3],
}

fn sym13(x: i64) -> i64 {
    let v = x.rem_euclid(13);
    if v > 6 {
        v - 13
    } else {
        v
    }
}

fn pm13(x: i64) -> u64 {
    let v = x.rem_euclid(13) as u64;
    v.min(13 - v) % 13
}

impl L213Solution {
    /// The eight triples related by a global sign and conjugation by `⟨r0, r2⟩`.
    pub fn equivalents(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for (a, b, c) in [(self.a, self.b, self.c), (self.a, self.c, self.b)] {
            for (b, c) in [(b, c), (-b, -c)] {
                for s in [1, -1] {
                    out.push((sym13(s * a), sym13(s * b), sym13(s * c)));
                }
            }
        }
        out
    }

    pub fn is_equivalent(&self, a: i64, b: i64, c: i64) -> bool {
        self.equivalents().contains(&(sym13(a), sym13(b), sym13(c)))
    }

    pub fn matrices(&self) -> Result<[ProjMatrix2; 3]> {
        l213_matrices(self.a, self.b, self.c)
    }
}

pub fn l213_matrices(a: i64, b: i64, c: i64) -> Result<[ProjMatrix2; 3]> {
    let f = PrimeField::new(13)?;
    Ok([
        ProjMatrix2::over_prime(f, [5, 0, 0, -5])?,
        ProjMatrix2::over_prime(f, [a, b, c, -a])?,
        ProjMatrix2::over_prime(f, [0, 1, -1, 0])?,
    ])
}

/// The regular map of an `(a, b, c)` triple, on `|L₂(13)| = 1092` blades.
pub fn l213_map(a: i64, b: i64, c: i64) -> Result<MapTriple> {
    if (a * a + b * c + 1).rem_euclid(13) != 0 {
        return Err(Error::InvalidParameter(format!(
            "a² + bc ≠ −1 for ({a}, {b}, {c})"
        )));
    }
    let m = l213_matrices(a, b, c)?;
    for (i, x) in m.iter().enumerate() {
        if !x.is_involution() {
            return Err(Error::InvalidParameter(format!(
                "r{i} = {x} is not an involution"
            )));
        }
    }
    crate::constructions::regular_map(&m.map(|x| projective_line_permutation(&x)), 1092)
}

/// Triples with `a² + bc = −1` whose traces `±3a`, `±(b−c)`, `±5(b+c)` all lie in
/// `{±3, ±5, ±6}`, one per equivalence class.
///
/// The representative has `a` in `0..=6`, then `b` in `1..=6` when possible, then the least `c`.
pub fn solve_l213_traces() -> Vec<L213Solution> {
    let seven = [3u64, 5, 6];
    let mut out: Vec<L213Solution> = Vec::new();
    for a in -6..=6i64 {
        for b in -6..=6i64 {
            for c in -6..=6i64 {
                if (a * a + b * c + 1).rem_euclid(13) != 0 {
                    continue;
                }
                let traces = [pm13(3 * a), pm13(b - c), pm13(5 * (b + c))];
                if !traces.iter().all(|t| seven.contains(t)) {
                    continue;
                }
                if out.iter().any(|s| s.is_equivalent(a, b, c)) {
                    continue;
                }
                let sol = L213Solution { a, b, c, traces };
                let rep = sol
                    .equivalents()
                    .into_iter()
                    .min_by_key(|&(a, b, c)| (a < 0, a.abs(), b <= 0, b.abs(), c))
                    .unwrap();
                out.push(L213Solution {
                    a: rep.0,
                    b: rep.1,
                    c: rep.2,
                    traces,
                });
            }
        }
    }
    out
}

/// Traces of `r0r1`, `r1r2`, `r0r1r2` and their orders, from the matrices themselves.
pub fn l213_direct_traces(a: i64, b: i64, c: i64) -> Result<[(u64, u64); 3]> {
    let [r0, r1, r2] = l213_matrices(a, b, c)?;
    let r0r1 = pm_mul(&r0, &r1)?;
    let prods = [r0r1, pm_mul(&r1, &r2)?, pm_mul(&r0r1, &r2)?];
    let mut out = [(0, 0); 3];
    for (k, p) in prods.iter().enumerate() {
        let ProjTrace::PlusMinus(t) = pm_trace(p) else {
            unreachable!()
        };
        out[k] = (t.value(), matrix_order(p)?);
    }
    Ok(out)
}

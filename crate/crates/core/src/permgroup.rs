//! Permutations of `{0..n-1}` and the groups they generate.
//!
//! Composition is left to right: `a * b` applies `a` first, then `b`, so a
//! point `i` is sent to `b[a[i]]`. This matches the right action of the
//! monodromy generators on blades (`α r0 r2` means "apply r0, then r2").
//! Points are 0-indexed everywhere except in cycle notation, which is written
//! 1-indexed for humans.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of group elements [`elements_of`] will materialize.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Checks that `images` is a bijection on `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidParameter(format!(
                    "image list of length {n} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from 1-indexed cycles, e.g. `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if p == 0 || p > n || next == 0 || next > n || touched[p - 1] {
                    return Err(Error::InvalidParameter(format!(
                        "bad cycle {cycle:?} for degree {n}"
                    )));
                }
                touched[p - 1] = true;
                images[p - 1] = (next - 1) as u32;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`. Panics on a degree mismatch; see [`compose`] for the checked form.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &x)| self.images[x as usize] as usize == i)
    }

    /// Nontrivial cycles, each starting at its least point, 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// Left-to-right product: apply `a`, then `b`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(a.then(b))
}

/// The order of `a`: the lcm of its cycle lengths.
pub fn order_of(a: &Permutation) -> u64 {
    a.cycle_lengths()
        .into_iter()
        .fold(1u64, |acc, l| lcm(acc, l as u64))
}

pub fn is_fixed_point_free(a: &Permutation) -> bool {
    a.images.iter().enumerate().all(|(i, &x)| i != x as usize)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The orbit of `point` under `gens`, in increasing order.
pub fn orbit(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let n = gens.first().map_or(point + 1, Permutation::degree);
    let mut seen = vec![false; n.max(point + 1)];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| i)
        .collect()
}

pub fn is_transitive(gens: &[Permutation], degree: usize) -> bool {
    degree > 0 && gens.iter().all(|g| g.degree() == degree) && {
        let mut gens = gens.to_vec();
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        orbit(0, &gens).len() == degree
    }
}

/// Labels every point with the index of its orbit under `gens`; returns the labels and the orbit count.
pub fn orbit_labels(degree: usize, gens: &[&Permutation]) -> (Vec<u32>, usize) {
    const UNSEEN: u32 = u32::MAX;
    let mut label = vec![UNSEEN; degree];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..degree {
        if label[start] != UNSEEN {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = g.apply(p);
                if label[q] == UNSEEN {
                    label[q] = count;
                    stack.push(q);
                }
            }
        }
        count += 1;
    }
    (label, count as usize)
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[β] = (u, u⁻¹)` with `base · u = β`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().0.then(s);
                    let u_inv = u.inverse();
                    self.transversal[gamma] = Some((u, u_inv));
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group held as a base and strong generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("base", &self.base())
            .finish()
    }
}

impl PermGroup {
    /// Deterministic Schreier–Sims; each new base point is the first point moved by the residue that needs it.
    pub fn new(generators: &[Permutation]) -> Result<Self> {
        let degree = generators.first().map(Permutation::degree).ok_or_else(|| {
            Error::InvalidParameter("a group needs at least one generator".into())
        })?;
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut group = PermGroup {
            degree,
            generators: generators.to_vec(),
            levels: Vec::new(),
        };
        let nontrivial: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if let Some(first) = nontrivial.first() {
            let base = first
                .images
                .iter()
                .enumerate()
                .position(|(i, &x)| i != x as usize)
                .unwrap();
            let mut level = Level::new(base, degree);
            level.gens = nontrivial;
            level.rebuild(degree);
            group.levels.push(level);
            group.complete();
        }
        Ok(group)
    }

    fn complete(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let level = &self.levels[i];
                for &beta in &level.orbit {
                    let u_beta = &level.transversal[beta].as_ref().unwrap().0;
                    for s in &level.gens {
                        let gamma = s.apply(beta);
                        let u_gamma_inv = &level.transversal[gamma].as_ref().unwrap().1;
                        let h = u_beta.then(s).then(u_gamma_inv);
                        let (residue, fail) = self.sift(h, i + 1);
                        if residue.is_identity() {
                            continue;
                        }
                        if fail == self.levels.len() {
                            let base = (0..self.degree).find(|&p| residue.apply(p) != p).unwrap();
                            self.levels.push(Level::new(base, self.degree));
                        }
                        for j in i + 1..=fail {
                            self.levels[j].gens.push(residue.clone());
                            self.levels[j].rebuild(self.degree);
                        }
                        continue 'restart;
                    }
                }
            }
            break;
        }
    }

    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base);
            match &level.transversal[beta] {
                Some((_, u_inv)) => g = g.then(u_inv),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }
}

/// Order of the group generated by `gens`.
pub fn group_order(gens: &[Permutation]) -> Result<u128> {
    Ok(PermGroup::new(gens)?.order())
}

/// Materializes a group as a list of elements, breadth-first by word length in the generators.
///
/// Ties are broken by generator order, so the numbering is reproducible.
pub fn elements_of(gens: &[Permutation], cap: usize) -> Result<GroupElements> {
    let order = group_order(gens)?;
    if order > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("group of order {order}"),
            cap: cap as u128,
        });
    }
    let degree = gens[0].degree();
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::with_capacity(order as usize);
    index.insert(id, 0u32);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let h = elements[i].then(g);
            if !index.contains_key(&h) {
                index.insert(h.clone(), elements.len() as u32);
                elements.push(h);
            }
        }
        i += 1;
    }
    if elements.len() as u128 != order {
        return Err(Error::Internal(format!(
            "enumerated {} elements for a group of order {order}",
            elements.len()
        )));
    }
    Ok(GroupElements {
        generators: gens.to_vec(),
        elements,
        index,
    })
}

/// Generators `(1 2)` and `(1 2 … n)` of `S_n`.
pub fn symmetric_generators(n: usize) -> Result<Vec<Permutation>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("S_{n} needs n >= 2")));
    }
    let cycle: Vec<usize> = (1..=n).collect();
    Ok(vec![
        Permutation::from_cycles(n, &[&[1, 2]])?,
        Permutation::from_cycles(n, &[&cycle])?,
    ])
}

/// Generators of `A_n`: `(1 2 3)` with `(1 2 … n)` for odd `n`, or `(2 3 … n)` for even `n`.
pub fn alternating_generators(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("A_{n} needs n >= 3")));
    }
    let first = if n % 2 == 1 { 1 } else { 2 };
    let cycle: Vec<usize> = (first..=n).collect();
    Ok(vec![
        Permutation::from_cycles(n, &[&[1, 2, 3]])?,
        Permutation::from_cycles(n, &[&cycle])?,
    ])
}

/// The elements of a finite permutation group, with a lookup table.
pub struct GroupElements {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    /// The right-regular action of `g`: element `i` goes to the index of `elements[i] · g`.
    pub fn right_regular(&self, g: &Permutation) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.elements.len());
        for x in &self.elements {
            let y = x.then(g);
            let j = self.index.get(&y).ok_or_else(|| {
                Error::InvalidParameter(format!("{g} is not an element of the group"))
            })?;
            images.push(*j);
        }
        Ok(Permutation::from_images_unchecked(images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn sym_gens(n: usize) -> Vec<Permutation> {
        let full: Vec<usize> = (1..=n).collect();
        vec![cyc(n, &[&[1, 2]]), cyc(n, &[&full])]
    }

    #[test]
    fn named_generators() {
        for n in 3..=7u128 {
            let fact: u128 = (1..=n).product();
            assert_eq!(
                group_order(&symmetric_generators(n as usize).unwrap()).unwrap(),
                fact
            );
            assert_eq!(
                group_order(&alternating_generators(n as usize).unwrap()).unwrap(),
                fact / 2
            );
        }
    }

    #[test]
    fn composition() {
        let a = cyc(5, &[&[1, 2, 3, 4, 5]]);
        assert!(compose(&a, &a.inverse()).unwrap().is_identity());
        assert_eq!(compose(&a, &a).unwrap(), cyc(5, &[&[1, 3, 5, 2, 4]]));
        // r0 r2 for the n = 5 polygon seed: (1,5)(2,4) then (1,5)
        let r0 = cyc(5, &[&[1, 5], &[2, 4]]);
        let r2 = cyc(5, &[&[1, 5]]);
        let r0r2 = compose(&r0, &r2).unwrap();
        assert_eq!(r0r2, cyc(5, &[&[2, 4]]));
        assert_eq!(r0r2.to_string(), "(2,4)");
        assert!(matches!(
            compose(&a, &Permutation::identity(3)),
            Err(Error::DegreeMismatch(5, 3))
        ));
    }

    #[test]
    fn left_to_right_convention() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        // point 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!((&a * &b).apply(0), 2);
    }

    #[test]
    fn orders() {
        assert_eq!(order_of(&Permutation::identity(4)), 1);
        assert_eq!(order_of(&cyc(7, &[&[1, 2], &[3, 4, 5]])), 6);
        for n in [5, 7, 9] {
            let full: Vec<usize> = (1..=n).collect();
            assert_eq!(order_of(&cyc(n, &[&full])), n as u64);
        }
    }

    #[test]
    fn orbits_and_transitivity() {
        let a = cyc(4, &[&[1, 2, 3, 4]]);
        assert_eq!(orbit(2, &[]), vec![2]);
        assert_eq!(orbit(0, std::slice::from_ref(&a)), vec![0, 1, 2, 3]);
        assert!(!is_transitive(&[Permutation::identity(2)], 2));
        assert!(is_transitive(&[a], 4));
        let (labels, count) = orbit_labels(4, &[&cyc(4, &[&[1, 2]])]);
        assert_eq!(count, 3);
        assert_eq!(labels[0], labels[1]);
    }

    #[test]
    fn fixed_points() {
        assert!(!is_fixed_point_free(&Permutation::identity(3)));
        assert!(is_fixed_point_free(&cyc(2, &[&[1, 2]])));
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let expected: u128 = (1..=n as u128).product();
            assert_eq!(group_order(&sym_gens(n)).unwrap(), expected, "S_{n}");
        }
        let a7 = [cyc(7, &[&[1, 2, 3]]), cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]])];
        assert_eq!(group_order(&a7).unwrap(), 2520);
        assert_eq!(group_order(&[Permutation::identity(5)]).unwrap(), 1);
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::new(&[cyc(5, &[&[1, 2, 3]]), cyc(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&cyc(5, &[&[1, 2], &[3, 4]])));
        assert!(!a5.contains(&cyc(5, &[&[1, 2]])));
    }

    #[test]
    fn element_enumeration() {
        let trivial = elements_of(&[Permutation::identity(3)], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(trivial.len(), 1);
        let c2 = elements_of(&[cyc(2, &[&[1, 2]])], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(c2.len(), 2);
        let s4 = elements_of(&sym_gens(4), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s4.len(), 24);
        assert!(s4.get(0).is_identity());
        assert_eq!(s4.get(1), &sym_gens(4)[0]);
        assert!(matches!(
            elements_of(&sym_gens(6), 100),
            Err(Error::CapExceeded { .. })
        ));
        let reg = s4.right_regular(&sym_gens(4)[1]).unwrap();
        assert!(is_fixed_point_free(&reg));
        assert_eq!(order_of(&reg), 4);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_is_associative(a in perm_strategy(9), b in perm_strategy(9), c in perm_strategy(9)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }

        #[test]
        fn order_is_least_trivial_power(a in perm_strategy(12)) {
            let ord = order_of(&a);
            let mut p = a.clone();
            let mut k = 1;
            while !p.is_identity() {
                p = p.then(&a);
                k += 1;
            }
            prop_assert_eq!(ord, k);
        }

        #[test]
        fn order_matches_enumeration(a in perm_strategy(6), b in perm_strategy(6)) {
            let gens = vec![a, b];
            let els = elements_of(&gens, DEFAULT_ELEMENT_CAP).unwrap();
            prop_assert_eq!(group_order(&gens).unwrap(), els.len() as u128);
        }

        #[test]
        fn json_round_trip(a in perm_strategy(10)) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), a);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(serde_json::from_str::<Permutation>("[0,0,1]").is_err());
        assert!(serde_json::from_str::<Permutation>("[0,3,1]").is_err());
    }
}

//! 2×2 matrices over finite fields up to scalars, i.e. linear fractional maps.
//!
//! Binary fields give `PSL₂(2^e) = SL₂(2^e)`; odd prime fields give `PGL₂(p)`
//! with `PSL₂(p)` as the determinant-square subgroup. Every matrix is stored in
//! a canonical representative:
//!
//! * characteristic 2: the unique scalar multiple of determinant 1;
//! * odd `p`: determinant 1 when the determinant is a square, otherwise the
//!   least non-square; the remaining sign ambiguity `±M` is fixed by making
//!   the first nonzero entry lie in `1..=(p-1)/2`.
//!
//! The traces of these representatives are what the class-III arguments use,
//! so derived `PartialEq` is projective equality.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2field::{generates_field, FieldElement, FieldSpec};
use crate::permgroup::Permutation;

/// The prime field GF(p) for an odd prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
        }
        if p > 1 << 20 {
            return Err(Error::CapExceeded {
                what: format!("prime {p}"),
                cap: 1 << 20,
            });
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Least square root in `0..p`, if any.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }

    fn least_non_square(&self) -> u64 {
        (2..self.p)
            .find(|&x| !self.is_square(x))
            .expect("odd prime fields have non-squares")
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// An element of GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PrimeFieldElement {
    value: u64,
    p: u64,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Representative in `-(p-1)/2 ..= (p-1)/2`.
    pub fn symmetric(&self) -> i64 {
        if self.value > self.p / 2 {
            self.value as i64 - self.p as i64
        } else {
            self.value as i64
        }
    }

    pub fn neg(&self) -> PrimeFieldElement {
        PrimeFieldElement {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

/// The field a [`ProjMatrix2`] lives over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BaseField {
    Binary(FieldSpec),
    Prime(PrimeField),
}

impl BaseField {
    /// Number of field elements.
    pub fn order(&self) -> u64 {
        match self {
            BaseField::Binary(s) => s.q(),
            BaseField::Prime(f) => f.p,
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            BaseField::Binary(_) => a ^ b,
            BaseField::Prime(f) => f.add(a, b),
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        match self {
            BaseField::Binary(_) => a ^ b,
            BaseField::Prime(f) => f.add(a, f.neg(b)),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            BaseField::Binary(s) => s.mul_raw(a, b),
            BaseField::Prime(f) => f.mul(a, b),
        }
    }

    fn inv(&self, a: u64) -> u64 {
        match self {
            BaseField::Binary(s) => s.inv_raw(a),
            BaseField::Prime(f) => f.inv(a),
        }
    }
}

/// A trace read off the canonical representative.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjTrace {
    Binary(FieldElement),
    /// The pair `{t, -t}`; `t` is the member in `0..=(p-1)/2`.
    PlusMinus(PrimeFieldElement),
}

impl ProjTrace {
    /// Whether `v` is one of the admissible signs of the trace.
    pub fn matches(&self, v: i64) -> bool {
        match self {
            ProjTrace::Binary(x) => x.value() as i64 == v,
            ProjTrace::PlusMinus(t) => {
                let m = v.rem_euclid(t.p as i64) as u64;
                m == t.value || m == (t.p - t.value) % t.p
            }
        }
    }
}

/// A 2×2 matrix up to scalar multiplication, held in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjMatrix2 {
    entries: [u64; 4],
    field: BaseField,
}

impl fmt::Debug for ProjMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        match self.field {
            BaseField::Binary(_) => write!(f, "({a:#b} {b:#b}; {c:#b} {d:#b})"),
            BaseField::Prime(pf) => {
                let s = |v: u64| pf.element(v as i64).symmetric();
                write!(f, "±({} {}; {} {})", s(a), s(b), s(c), s(d))
            }
        }
    }
}

impl ProjMatrix2 {
    /// The matrix `(a b; c d)`; entries are reduced into the field.
    pub fn new(field: BaseField, entries: [u64; 4]) -> Result<Self> {
        let entries = match field {
            BaseField::Binary(s) => entries.map(|x| s.element(x).value()),
            BaseField::Prime(pf) => entries.map(|x| x % pf.p),
        };
        let m = ProjMatrix2 { entries, field };
        if m.det() == 0 {
            return Err(Error::InvalidParameter(format!(
                "singular matrix {entries:?}"
            )));
        }
        Ok(m.normalized())
    }

    /// Convenience constructor over GF(p) with signed entries.
    pub fn over_prime(field: PrimeField, entries: [i64; 4]) -> Result<Self> {
        ProjMatrix2::new(
            BaseField::Prime(field),
            entries.map(|x| field.element(x).value()),
        )
    }

    /// Convenience constructor over GF(2^e) from field elements.
    pub fn over_binary(entries: [FieldElement; 4]) -> Result<Self> {
        let spec = *entries[0].spec();
        if entries.iter().any(|x| *x.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        ProjMatrix2::new(BaseField::Binary(spec), entries.map(|x| x.value()))
    }

    pub fn identity(field: BaseField) -> Self {
        ProjMatrix2 {
            entries: [1, 0, 0, 1],
            field,
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    /// Entries `[a, b, c, d]` of the canonical representative.
    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    fn det(&self) -> u64 {
        let [a, b, c, d] = self.entries;
        self.field.sub(self.field.mul(a, d), self.field.mul(b, c))
    }

    fn scaled(&self, lambda: u64) -> Self {
        ProjMatrix2 {
            entries: self.entries.map(|x| self.field.mul(x, lambda)),
            field: self.field,
        }
    }

    fn normalized(self) -> Self {
        let det = self.det();
        match self.field {
            BaseField::Binary(s) => self.scaled(s.sqrt_raw(s.inv_raw(det))),
            BaseField::Prime(pf) => {
                let target = if pf.is_square(det) {
                    1
                } else {
                    pf.least_non_square()
                };
                let lambda = pf
                    .sqrt(pf.mul(target, pf.inv(det)))
                    .expect("target/det is a square");
                let m = self.scaled(lambda);
                let first = m.entries.iter().copied().find(|&x| x != 0).unwrap();
                if first > (pf.p - 1) / 2 {
                    m.scaled(pf.p - 1)
                } else {
                    m
                }
            }
        }
    }

    /// True for elements of `PSL₂` (always, in characteristic 2).
    pub fn is_special(&self) -> bool {
        self.det() == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjMatrix2::identity(self.field)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.mul_unchecked(self).is_identity()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        let [a, b, c, d] = self.entries;
        let [e, g, h, k] = other.entries;
        ProjMatrix2 {
            entries: [
                f.add(f.mul(a, e), f.mul(b, h)),
                f.add(f.mul(a, g), f.mul(b, k)),
                f.add(f.mul(c, e), f.mul(d, h)),
                f.add(f.mul(c, g), f.mul(d, k)),
            ],
            field: f,
        }
        .normalized()
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = ProjMatrix2::identity(self.field);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        let f = self.field;
        let [a, b, c, d] = self.entries;
        let neg = |x| f.sub(0, x);
        ProjMatrix2 {
            entries: [d, neg(b), neg(c), a],
            field: f,
        }
        .normalized()
    }
}

/// Matrix product `A·B`.
pub fn pm_mul(a: &ProjMatrix2, b: &ProjMatrix2) -> Result<ProjMatrix2> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(a.mul_unchecked(b))
}

/// Scalar-insensitive equality: the entry vectors are proportional.
pub fn pm_eq(a: &ProjMatrix2, b: &ProjMatrix2) -> bool {
    if a.field != b.field {
        return false;
    }
    let f = a.field;
    (0..4).all(|i| {
        (0..4).all(|j| f.mul(a.entries[i], b.entries[j]) == f.mul(a.entries[j], b.entries[i]))
    })
}

/// Trace of the canonical representative.
pub fn pm_trace(a: &ProjMatrix2) -> ProjTrace {
    let t = a.field.add(a.entries[0], a.entries[3]);
    match a.field {
        BaseField::Binary(s) => ProjTrace::Binary(s.element(t)),
        BaseField::Prime(pf) => {
            let t = t.min(pf.neg(t));
            ProjTrace::PlusMinus(PrimeFieldElement { value: t, p: pf.p })
        }
    }
}

/// The companion matrix `(0 1; 1 x)` of trace `x`.
pub fn companion(x: FieldElement) -> ProjMatrix2 {
    ProjMatrix2::new(BaseField::Binary(*x.spec()), [0, 1, 1, x.value()]).expect("determinant is 1")
}

/// `Aⁿ` for `A = (0 1; 1 x)` over GF(2^e), by square-and-multiply on raw entries.
fn companion_pow(x: FieldElement, mut n: u64) -> [u64; 4] {
    let s = x.spec();
    let mul = |a: [u64; 4], b: [u64; 4]| {
        [
            s.mul_raw(a[0], b[0]) ^ s.mul_raw(a[1], b[2]),
            s.mul_raw(a[0], b[1]) ^ s.mul_raw(a[1], b[3]),
            s.mul_raw(a[2], b[0]) ^ s.mul_raw(a[3], b[2]),
            s.mul_raw(a[2], b[1]) ^ s.mul_raw(a[3], b[3]),
        ]
    };
    let (mut acc, mut base) = ([1, 0, 0, 1], [0, 1, 1, x.value()]);
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        n >>= 1;
    }
    acc
}

/// `Tr(Aⁿ)` for `A = (0 1; 1 x)`, which satisfies `t_n = t_{n-2} + x t_{n-1}` with `t_0 = 0`, `t_1 = x`.
pub fn trace_power(x: FieldElement, n: u64) -> FieldElement {
    let p = companion_pow(x, n);
    x.spec().element(p[0] ^ p[3])
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1 + (d > 2) as u64;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Order of `(0 1; 1 x)` in `SL₂(2^e)`.
///
/// `x = 0` gives an involution. Otherwise the order divides `q − 1` when
/// `z² + xz + 1` splits and `q + 1` when it does not; whichever exponent kills
/// `A` is then reduced prime by prime.
pub fn order_from_trace(x: FieldElement) -> u64 {
    if x.is_zero() {
        return 2;
    }
    let q = x.spec().q();
    let is_one = |n: u64| companion_pow(x, n) == [1, 0, 0, 1];
    let mut n = if is_one(q - 1) { q - 1 } else { q + 1 };
    assert!(is_one(n), "element order divides neither q - 1 nor q + 1");
    for p in prime_factors(n) {
        while n % p == 0 && is_one(n / p) {
            n /= p;
        }
    }
    n
}

/// Least `n ≥ 1` with `Aⁿ = I` projectively, by repeated multiplication.
pub fn matrix_order(a: &ProjMatrix2) -> Result<u64> {
    let cap = a.field.order() + 1;
    let mut p = *a;
    for n in 1..=cap {
        if p.is_identity() {
            return Ok(n);
        }
        p = p.mul_unchecked(a);
    }
    Err(Error::Internal(format!("{a} has no order up to {cap}")))
}

/// The action on the projective line `{0..q-1} ∪ {∞ = q}`, points numbered by field value.
///
/// A point is the row vector `(1, z)` and moves to `(1, z)·A`, that is
/// `z ↦ (b + dz)/(a + cz)`. This is a right action, so
/// `perm(A·B) = perm(A)` followed by `perm(B)`.
pub fn projective_line_permutation(a: &ProjMatrix2) -> Permutation {
    let f = a.field;
    let q = f.order();
    let [ea, eb, ec, ed] = a.entries;
    let ratio = |num: u64, den: u64| if den == 0 { q } else { f.mul(num, f.inv(den)) };
    let mut images: Vec<u32> = (0..q)
        .map(|z| ratio(f.add(eb, f.mul(ed, z)), f.add(ea, f.mul(ec, z))) as u32)
        .collect();
    images.push(ratio(ed, ec) as u32);
    Permutation::from_images_unchecked(images)
}

/// Which maximal-subgroup elimination fails for a candidate generating triple of `L₂(2^e)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GenerationCheck {
    Generates,
    /// `r0` and `r1` commute, so all three could sit in a Sylow 2-normalizer.
    R0R1Commute,
    /// `⟨r0, r2⟩` is not a Klein four-group, so a dihedral maximal subgroup is not excluded.
    NoKleinFourGroup,
    /// The trace of `r0 r1` lies in a proper subfield.
    TraceInSubfield,
}

impl GenerationCheck {
    pub fn generates(&self) -> bool {
        matches!(self, GenerationCheck::Generates)
    }
}

/// Decides whether involutions `r0, r1, r2` with `r0 r2 = r2 r0` generate `L₂(2^e)`.
pub fn l2q_generation_check(
    r0: &ProjMatrix2,
    r1: &ProjMatrix2,
    r2: &ProjMatrix2,
) -> Result<GenerationCheck> {
    let BaseField::Binary(_) = r0.field else {
        return Err(Error::InvalidParameter(
            "generation check needs a binary field".into(),
        ));
    };
    if r1.field != r0.field || r2.field != r0.field {
        return Err(Error::FieldMismatch);
    }
    for (name, m) in [("r0", r0), ("r1", r1), ("r2", r2)] {
        if !m.is_involution() {
            return Err(Error::InvalidParameter(format!(
                "{name} = {m} is not an involution"
            )));
        }
    }
    if r0.mul_unchecked(r2) != r2.mul_unchecked(r0) {
        return Err(Error::InvalidParameter("r0 and r2 do not commute".into()));
    }
    if r0.mul_unchecked(r1) == r1.mul_unchecked(r0) {
        return Ok(GenerationCheck::R0R1Commute);
    }
    if r0 == r2 {
        return Ok(GenerationCheck::NoKleinFourGroup);
    }
    let ProjTrace::Binary(x) = pm_trace(&r0.mul_unchecked(r1)) else {
        unreachable!()
    };
    if !generates_field(x) {
        return Ok(GenerationCheck::TraceInSubfield);
    }
    Ok(GenerationCheck::Generates)
}

/// Generators of `SL₂(2^e)`: `(1 1; 0 1)`, `(0 1; 1 0)` and `diag(ω, ω⁻¹)` for a primitive `ω`.
pub fn l2q_generators(spec: &FieldSpec) -> Vec<ProjMatrix2> {
    let field = BaseField::Binary(*spec);
    let mut gens = vec![
        ProjMatrix2::new(field, [1, 1, 0, 1]).unwrap(),
        ProjMatrix2::new(field, [0, 1, 1, 0]).unwrap(),
    ];
    if spec.q() > 2 {
        let omega = spec
            .elements()
            .find(|x| x.multiplicative_order() == Some(spec.q() - 1))
            .expect("multiplicative group is cyclic");
        gens.push(
            ProjMatrix2::new(field, [omega.value(), 0, 0, spec.inv_raw(omega.value())]).unwrap(),
        );
    }
    gens
}

/// Generators `(1 1; 0 1)` and `(0 -1; 1 0)` of `PSL₂(p)`.
pub fn l2p_generators(field: PrimeField) -> Vec<ProjMatrix2> {
    vec![
        ProjMatrix2::over_prime(field, [1, 1, 0, 1]).unwrap(),
        ProjMatrix2::over_prime(field, [0, -1, 1, 0]).unwrap(),
    ]
}

/// Generators of `PGL₂(p)`: those of `PSL₂(p)` plus `diag(ν, 1)` for the least non-square `ν`.
pub fn pgl2p_generators(field: PrimeField) -> Vec<ProjMatrix2> {
    let mut gens = l2p_generators(field);
    gens.push(ProjMatrix2::over_prime(field, [field.least_non_square() as i64, 0, 0, 1]).unwrap());
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::{fe_add, fe_mul, find_root_of, frobenius_power};
    use crate::permgroup::{group_order, order_of};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    fn theorem_matrices(x: FieldElement) -> [ProjMatrix2; 3] {
        let s = *x.spec();
        let f = s.f().unwrap();
        let xr = frobenius_power(x, f);
        [
            ProjMatrix2::over_binary([s.one(), x, s.zero(), s.one()]).unwrap(),
            ProjMatrix2::over_binary([s.one(), s.zero(), s.one(), s.one()]).unwrap(),
            ProjMatrix2::over_binary([s.one(), xr, s.zero(), s.one()]).unwrap(),
        ]
    }

    fn gf64_t_u() -> (FieldSpec, FieldElement, FieldElement) {
        let g = FieldSpec::new(6).unwrap();
        (
            g,
            find_root_of(0b1011, &g).unwrap(),
            find_root_of(0b111, &g).unwrap(),
        )
    }

    fn p13() -> PrimeField {
        PrimeField::new(13).unwrap()
    }

    /// The three matrices of the L2(p) seed with i the least square root of -1.
    fn l2p_seed(p: u64) -> [ProjMatrix2; 3] {
        let f = PrimeField::new(p).unwrap();
        let i = f.sqrt(p - 1).unwrap() as i64;
        [
            ProjMatrix2::over_prime(f, [0, i, i, 0]).unwrap(),
            ProjMatrix2::over_prime(f, [i, i, 0, -i]).unwrap(),
            ProjMatrix2::over_prime(f, [i, 0, 0, -i]).unwrap(),
        ]
    }

    #[test]
    fn products() {
        let s = gf8();
        let a = ProjMatrix2::new(BaseField::Binary(s), [3, 5, 1, 7]).unwrap();
        assert!(pm_mul(&a, &a.inverse()).unwrap().is_identity());
        let [r0, _, r2] = theorem_matrices(s.generator());
        // r0 r2 = (1 x^(r^2); 0 1)
        let x_r2 = frobenius_power(s.generator(), 2);
        let expected = ProjMatrix2::over_binary([s.one(), x_r2, s.zero(), s.one()]).unwrap();
        assert_eq!(pm_mul(&r0, &r2).unwrap(), expected);
        let [_, r1, r2] = l2p_seed(13);
        let upper = ProjMatrix2::over_prime(p13(), [1, -1, 0, 1]).unwrap();
        assert!(pm_eq(&pm_mul(&r1, &r2).unwrap(), &upper));
        assert!(pm_mul(&a, &r1).is_err());
    }

    #[test]
    fn traces() {
        let s = gf8();
        assert_eq!(
            pm_trace(&ProjMatrix2::identity(BaseField::Binary(s))),
            ProjTrace::Binary(s.zero())
        );
        let [r0, r1, _] = theorem_matrices(s.generator());
        assert_eq!(
            pm_trace(&pm_mul(&r0, &r1).unwrap()),
            ProjTrace::Binary(s.generator())
        );
        let [q0, q1, _] = l2p_seed(13);
        let r0r1 = pm_mul(&q0, &q1).unwrap();
        // direct product: (0 i; i 0)(i i; 0 -i) = (0 1; -1 -1) since i^2 = -1
        let direct = ProjMatrix2::over_prime(p13(), [0, 1, -1, -1]).unwrap();
        assert_eq!(r0r1, direct);
        assert!(pm_trace(&r0r1).matches(1) && pm_trace(&r0r1).matches(-1));
        assert_eq!(matrix_order(&r0r1).unwrap(), 3);
    }

    #[test]
    fn trace_powers() {
        let s = gf8();
        let t = s.generator();
        assert_eq!(trace_power(t, 1), t);
        assert_eq!(trace_power(t, 3), s.one());
        let (_, t, u) = gf64_t_u();
        let tu = fe_mul(t, u).unwrap();
        assert_eq!(trace_power(tu, 13), fe_add(u, u.spec().one()).unwrap());
        let x = fe_add(t.square(), tu).unwrap();
        assert_eq!(trace_power(x, 7), fe_add(t.square(), t).unwrap());
    }

    #[test]
    fn orders_from_traces() {
        let s = gf8();
        assert_eq!(order_from_trace(s.zero()), 2);
        assert_eq!(order_from_trace(s.generator()), 9);
        let (_, t, u) = gf64_t_u();
        let tu = fe_mul(t, u).unwrap();
        assert_eq!(order_from_trace(tu), 65);
        assert_eq!(order_from_trace(fe_add(t.square(), tu).unwrap()), 63);
    }

    #[test]
    fn explicit_orders() {
        assert_eq!(
            matrix_order(&ProjMatrix2::identity(BaseField::Prime(p13()))).unwrap(),
            1
        );
        let [r0, r1, r2] = l2p_seed(13);
        assert_eq!(matrix_order(&pm_mul(&r1, &r2).unwrap()).unwrap(), 13);
        let r0r1r2 = pm_mul(&pm_mul(&r0, &r1).unwrap(), &r2).unwrap();
        assert_eq!(matrix_order(&r0r1r2).unwrap(), 7);
    }

    #[test]
    fn projective_line() {
        let gf2 = FieldSpec::new(1).unwrap();
        let id = ProjMatrix2::identity(BaseField::Binary(gf2));
        assert!(projective_line_permutation(&id).is_identity());
        let shift = ProjMatrix2::new(BaseField::Binary(gf2), [1, 1, 0, 1]).unwrap();
        let p = projective_line_permutation(&shift);
        assert_eq!(p.images(), &[1, 0, 2]);
        let perms: Vec<Permutation> = l2q_generators(&gf8())
            .iter()
            .map(projective_line_permutation)
            .collect();
        assert!(perms.iter().all(|p| p.degree() == 9));
        assert_eq!(group_order(&perms).unwrap(), 504);
        let l2_13: Vec<Permutation> = l2p_generators(p13())
            .iter()
            .map(projective_line_permutation)
            .collect();
        assert_eq!(group_order(&l2_13).unwrap(), 13 * (169 - 1) / 2);
        let pgl7: Vec<Permutation> = pgl2p_generators(PrimeField::new(7).unwrap())
            .iter()
            .map(projective_line_permutation)
            .collect();
        assert_eq!(group_order(&pgl7).unwrap(), 336);
    }

    #[test]
    fn generation_criteria() {
        let s = gf8();
        let [r0, r1, r2] = theorem_matrices(s.generator());
        assert_eq!(
            l2q_generation_check(&r0, &r1, &r2).unwrap(),
            GenerationCheck::Generates
        );
        assert_eq!(
            l2q_generation_check(&r0, &r1, &r0).unwrap(),
            GenerationCheck::NoKleinFourGroup
        );
        // x = 1 lies in GF(2) and is not useful, but the matrices are still involutions
        let g = FieldSpec::new(6).unwrap();
        let t = find_root_of(0b1011, &g).unwrap();
        let [a0, a1, a2] = theorem_matrices(t);
        assert_eq!(
            l2q_generation_check(&a0, &a1, &a2).unwrap(),
            GenerationCheck::TraceInSubfield
        );
        assert_eq!(
            l2q_generation_check(&r0, &r0, &r2).unwrap(),
            GenerationCheck::R0R1Commute
        );
        let not_inv = ProjMatrix2::new(BaseField::Binary(s), [0, 1, 1, 1]).unwrap();
        assert!(l2q_generation_check(&not_inv, &r1, &r2).is_err());
        for x in crate::gf2field::enumerate_useful_generators(&g).unwrap() {
            let [a0, a1, a2] = theorem_matrices(x);
            assert!(l2q_generation_check(&a0, &a1, &a2).unwrap().generates());
            let perms: Vec<Permutation> = [a0, a1, a2]
                .iter()
                .map(projective_line_permutation)
                .collect();
            assert_eq!(group_order(&perms).unwrap(), 64 * (64 * 64 - 1));
        }
    }

    #[test]
    fn normalization_is_scalar_insensitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = p13();
        for _ in 0..200 {
            let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..13));
            let Ok(m) = ProjMatrix2::over_prime(f, e) else {
                continue;
            };
            let lambda = rng.gen_range(1..13);
            let scaled = ProjMatrix2::over_prime(f, e.map(|x| x * lambda)).unwrap();
            assert_eq!(m, scaled);
            assert!(pm_eq(&m, &scaled));
        }
        let s = FieldSpec::new(6).unwrap();
        for _ in 0..200 {
            let e: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..64));
            let Ok(m) = ProjMatrix2::new(BaseField::Binary(s), e) else {
                continue;
            };
            let lambda = rng.gen_range(1..64);
            let scaled =
                ProjMatrix2::new(BaseField::Binary(s), e.map(|x| s.mul_raw(x, lambda))).unwrap();
            assert_eq!(m, scaled);
        }
    }

    #[test]
    fn companion_order_matches_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in [gf8(), FieldSpec::new(6).unwrap()] {
            for _ in 0..200 {
                let x = spec.element(rng.gen_range(0..spec.q()));
                assert_eq!(
                    order_from_trace(x),
                    matrix_order(&companion(x)).unwrap(),
                    "x = {x}"
                );
                assert_eq!(
                    order_from_trace(x),
                    order_of(&projective_line_permutation(&companion(x)))
                );
            }
        }
    }

    #[test]
    fn trace_recurrence_matches_powers() {
        let (g, t, u) = gf64_t_u();
        for x in [t, u, fe_mul(t, u).unwrap(), g.element(0b101101)] {
            let a = companion(x);
            for n in 0..=100 {
                assert_eq!(
                    ProjTrace::Binary(trace_power(x, n)),
                    pm_trace(&a.pow(n)),
                    "x = {x}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn line_action_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fields = [
            BaseField::Binary(FieldSpec::new(4).unwrap()),
            BaseField::Prime(p13()),
        ];
        for field in fields {
            let q = field.order();
            let mut random = || loop {
                let e: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..q));
                if let Ok(m) = ProjMatrix2::new(field, e) {
                    return m;
                }
            };
            for _ in 0..100 {
                let (a, b) = (random(), random());
                let lhs = projective_line_permutation(&pm_mul(&a, &b).unwrap());
                let rhs = projective_line_permutation(&a).then(&projective_line_permutation(&b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

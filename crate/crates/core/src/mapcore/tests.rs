use super::*;
use crate::constructions::{build_sn_map, l2q_map, regular_map, DEFAULT_BLADE_CAP};
use crate::gf2field::FieldSpec;
use crate::permgroup::elements_of;

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

/// The tetrahedron: `(1 2)`, `(2 3)`, `(3 4)` in `S₄`.
pub(crate) fn tetrahedron() -> MapTriple {
    regular_map(
        &[
            perm(4, &[&[1, 2]]),
            perm(4, &[&[2, 3]]),
            perm(4, &[&[3, 4]]),
        ],
        24,
    )
    .unwrap()
}

pub(crate) fn wilson() -> MapTriple {
    l2q_map(FieldSpec::new(3).unwrap().generator()).unwrap()
}

fn s5_map() -> MapTriple {
    build_sn_map(5, DEFAULT_BLADE_CAP).unwrap().map.unwrap()
}

/// The Wilson triple acting on the 56 cosets of `⟨r0r1⟩ ≅ C₉`.
fn coset_map() -> MapTriple {
    use crate::constructions::theorem_matrices;
    use crate::linfrac::projective_line_permutation;
    let x = FieldSpec::new(3).unwrap().generator();
    let triple = theorem_matrices(x)
        .unwrap()
        .map(|m| projective_line_permutation(&m));
    let g = elements_of(&triple, 504).unwrap();
    let h = triple[0].then(&triple[1]);
    let mut coset = vec![u32::MAX; g.len()];
    let mut count = 0;
    for i in 0..g.len() {
        if coset[i] != u32::MAX {
            continue;
        }
        let mut y = g.get(i).clone();
        for _ in 0..9 {
            coset[g.index_of(&y).unwrap()] = count;
            y = h.then(&y);
        }
        count += 1;
    }
    let reps: Vec<usize> = (0..count)
        .map(|c| coset.iter().position(|&x| x == c).unwrap())
        .collect();
    let act = |r: &Permutation| {
        let images = reps
            .iter()
            .map(|&i| coset[g.index_of(&g.get(i).then(r)).unwrap()])
            .collect();
        Permutation::from_images(images).unwrap()
    };
    MapTriple::new(act(&triple[0]), act(&triple[1]), act(&triple[2])).unwrap()
}

#[test]
fn tetrahedron_invariants() {
    let m = tetrahedron();
    assert_eq!(m.degree(), 24);
    assert_eq!(map_type(&m), MapType { p: 3, q: 3, r: 4 });
    assert_eq!(
        counts(&m),
        Counts {
            v: 4,
            e: 6,
            f: 4,
            pe: 3
        }
    );
    assert_eq!(euler_characteristic(&m), 2);
    assert!(orientability(&m));
    assert_eq!(
        multiplicities(&m).unwrap(),
        Multiplicities { m_v: 1, m_f: 1 }
    );
    let inv = invariants(&m);
    assert_eq!(inv.genus, 0);
}

#[test]
fn wilson_invariants() {
    let m = wilson();
    assert_eq!(map_type(&m), MapType { p: 9, q: 9, r: 9 });
    let c = counts(&m);
    assert_eq!((c.v, c.e, c.f), (504 / 18, 504 / 4, 504 / 18));
    assert_eq!(euler_characteristic(&m), -70);
    assert!(!orientability(&m));
    assert_eq!(
        is_regular(&m),
        Regularity {
            regular: true,
            aut_order: 504
        }
    );
    let mu = multiplicities(&m).unwrap();
    assert_eq!(mu.m_v, mu.m_f);
}

#[test]
fn validation_reports_each_relation() {
    let n = 4;
    let id = Permutation::identity(n);
    let fpf = perm(n, &[&[1, 2], &[3, 4]]);
    let err = MapTriple::new(id.clone(), fpf.clone(), perm(n, &[&[1, 3], &[2, 4]])).unwrap_err();
    let Error::InvalidMap(v) = err else { panic!() };
    assert!(v.contains(&MapViolation::HasFixedPoint("r0")));

    let r0 = perm(6, &[&[1, 2], &[3, 4], &[5, 6]]);
    let r2 = perm(6, &[&[2, 3], &[4, 5], &[6, 1]]);
    let r1 = perm(6, &[&[1, 4], &[2, 5], &[3, 6]]);
    let Error::InvalidMap(v) = MapTriple::new(r0, r1, r2).unwrap_err() else {
        panic!()
    };
    assert!(v.contains(&MapViolation::R0R2NotInvolution));

    let raw = RawMap {
        degree: 4,
        r0: vec![1, 0, 3, 2],
        r1: vec![1, 2, 3, 0],
        r2: vec![0, 0, 1, 2],
    };
    let Error::InvalidMap(v) = validate(raw).unwrap_err() else {
        panic!()
    };
    assert_eq!(v, vec![MapViolation::NotAPermutation("r2")]);

    let raw = RawMap {
        degree: 4,
        r0: vec![1, 0],
        r1: vec![1, 0, 3, 2],
        r2: vec![1, 0, 3, 2],
    };
    assert!(
        matches!(validate(raw), Err(Error::InvalidMap(v)) if matches!(v[0], MapViolation::DegreeMismatch { .. }))
    );

    // two disjoint tetrahedra are not connected
    let t = tetrahedron();
    let double = |p: &Permutation| {
        let mut im: Vec<u32> = p.images().to_vec();
        im.extend(p.images().iter().map(|x| x + 24));
        im
    };
    let raw = RawMap {
        degree: 48,
        r0: double(t.r0()),
        r1: double(t.r1()),
        r2: double(t.r2()),
    };
    let Error::InvalidMap(v) = validate(raw).unwrap_err() else {
        panic!()
    };
    assert_eq!(v, vec![MapViolation::NotTransitive { orbit_of_zero: 24 }]);
}

#[test]
fn json_round_trip() {
    let m = tetrahedron();
    let s = m.to_json();
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["degree"], 24);
    assert_eq!(v["r0"].as_array().unwrap().len(), 24);
    assert_eq!(MapTriple::from_json(&s).unwrap(), m);
    let broken = s.replacen("\"r0\":[", "\"r0\":[0,", 1);
    assert!(MapTriple::from_json(&broken).is_err());
    let t: MapType = "9, 9,9".parse().unwrap();
    assert_eq!(serde_json::to_string(&t).unwrap(), "[9,9,9]");
    assert!("9,9".parse::<MapType>().is_err());
}

#[test]
fn chi_formula_values() {
    assert_eq!(chi_formula(504, 9).unwrap(), -70);
    assert_eq!(chi_formula(12345 * 4, 4).unwrap(), 0);
    assert_eq!(chi_formula(336u128.pow(3), 168).unwrap(), -9257472);
    assert!(chi_formula(10, 3).unwrap_err().is_internal());
    assert!(chi_formula(10, 0).is_err());
}

#[test]
fn sigma_group_table() {
    use SigmaElement::*;
    for s in SigmaElement::ALL {
        assert_eq!(s.then(Id), s);
        assert_eq!(s.then(s.inverse()), Id);
        for t in SigmaElement::ALL {
            for u in SigmaElement::ALL {
                assert_eq!(s.then(t).then(u), s.then(t.then(u)));
            }
        }
    }
    assert_eq!(D.then(P), DP);
    assert_eq!(P.then(D), PD);
    assert_eq!(D.then(P).then(D), DPD);
    assert_eq!(DP.then(DP).then(DP), Id);
    assert!(SigmaElement::ALL.iter().filter(|s| s.is_even()).count() == 3);
}

#[test]
fn sigma_action_is_compatible_with_products() {
    for m in [tetrahedron(), s5_map()] {
        for s in SigmaElement::ALL {
            for t in SigmaElement::ALL {
                assert_eq!(
                    sigma_apply(&sigma_apply(&m, s), t),
                    sigma_apply(&m, s.then(t)),
                    "{s} {t}"
                );
            }
        }
    }
}

#[test]
fn sigma_type_bookkeeping() {
    let m = s5_map();
    let t = map_type(&m);
    assert_eq!(t.as_array(), [5, 6, 4]);
    assert_eq!(
        map_type(&sigma_apply(&m, SigmaElement::D)).as_array(),
        [6, 5, 4]
    );
    assert_eq!(
        map_type(&sigma_apply(&m, SigmaElement::P)).as_array(),
        [4, 6, 5]
    );
    let d = sigma_apply(&m, SigmaElement::D);
    assert_eq!(sigma_apply(&d, SigmaElement::D), m);
    let mut x = m.clone();
    for _ in 0..3 {
        x = sigma_apply(&x, SigmaElement::DP);
    }
    assert_eq!(x, m);
}

#[test]
fn duality_swaps_multiplicities() {
    for m in [tetrahedron(), s5_map(), wilson()] {
        let d = sigma_apply(&m, SigmaElement::D);
        let (a, b) = (multiplicities(&m).unwrap(), multiplicities(&d).unwrap());
        assert_eq!((a.m_v, a.m_f), (b.m_f, b.m_v));
    }
}

#[test]
fn isomorphism_basics() {
    let w = wilson();
    assert!(are_isomorphic(&w, &w, true));
    assert!(are_isomorphic(&w, &w, false));
    let d = sigma_apply(&w, SigmaElement::D);
    assert!(!are_isomorphic(&w, &d, true));
    assert!(!are_isomorphic(&w, &tetrahedron(), false));
    // relabelled copy
    let shift = Permutation::from_images((0..504u32).map(|i| (i + 17) % 504).collect()).unwrap();
    let inv = shift.inverse();
    let conj = |p: &Permutation| inv.then(p).then(&shift);
    let moved = MapTriple::new(conj(w.r0()), conj(w.r1()), conj(w.r2())).unwrap();
    assert!(are_isomorphic(&w, &moved, true));
    assert!(are_isomorphic(&moved, &w, false));
}

#[test]
fn non_regular_map() {
    let m = coset_map();
    assert_eq!(m.degree(), 56);
    let reg = is_regular(&m);
    assert!(!reg.regular);
    assert_eq!(reg.aut_order, 2);
    assert!(matches!(
        classify(&m),
        Err(Error::NotRegular { aut: 2, degree: 56 })
    ));
    // a relabelling is found only by the all-roots search
    let shift = Permutation::from_images((0..56u32).map(|i| (i + 5) % 56).collect()).unwrap();
    let inv = shift.inverse();
    let conj = |p: &Permutation| inv.then(p).then(&shift);
    let moved = MapTriple::new(conj(m.r0()), conj(m.r1()), conj(m.r2())).unwrap();
    assert!(are_isomorphic(&m, &moved, false));
}

#[test]
fn wilson_classification() {
    let w = wilson();
    let c = classify(&w).unwrap();
    assert_eq!(c.wilson_class, WilsonClass::III);
    assert_eq!(c.derivate_count, 2);
    assert_eq!(
        c.part_of(SigmaElement::Id),
        &[SigmaElement::Id, SigmaElement::DP, SigmaElement::PD]
    );
    let ds = derivates(&w);
    assert_eq!(ds.len(), 6);
    for s in SigmaElement::ALL {
        assert_eq!(
            classify(&sigma_apply(&w, s)).unwrap().wilson_class,
            WilsonClass::III
        );
    }
}

#[test]
fn tetrahedron_classification() {
    // {3,3}_4: D fixes the type, P does not
    let c = classify(&tetrahedron()).unwrap();
    assert_eq!(c.wilson_class, WilsonClass::II);
    assert_eq!(
        c.part_of(SigmaElement::Id),
        &[SigmaElement::Id, SigmaElement::D]
    );
}

#[test]
fn invariants_json_shape() {
    let v = serde_json::to_value(invariants(&tetrahedron())).unwrap();
    for key in [
        "type",
        "V",
        "E",
        "F",
        "Pe",
        "chi",
        "orientable",
        "mV",
        "mF",
        "genus",
        "degree",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

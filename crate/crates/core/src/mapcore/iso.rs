//! Rooted isomorphism tests and automorphism counting.

use super::{MapTriple, FULL_ROOT_FALLBACK_CAP};

const UNSET: u32 = u32::MAX;

/// The isomorphism `m1 → m2` sending blade 0 to `root`, if one exists.
pub fn rooted_isomorphism(m1: &MapTriple, m2: &MapTriple, root: usize) -> Option<Vec<u32>> {
    let n = m1.degree();
    if m2.degree() != n || root >= n {
        return None;
    }
    let mut phi = vec![UNSET; n];
    phi[0] = root as u32;
    let mut stack = vec![0usize];
    while let Some(w) = stack.pop() {
        let image = phi[w] as usize;
        for i in 0..3 {
            let v = m1.act(w, i);
            let target = m2.act(image, i) as u32;
            if phi[v] == UNSET {
                phi[v] = target;
                stack.push(v);
            } else if phi[v] != target {
                return None;
            }
        }
    }
    Some(phi)
}

/// Whether `m1 ≅ m2`.
///
/// With `assume_regular`, `m2` is taken to be regular and only root 0 is tried.
/// Otherwise every root is tried, up to a degree of [`FULL_ROOT_FALLBACK_CAP`];
/// beyond it the maps are tested for regularity first.
pub fn are_isomorphic(m1: &MapTriple, m2: &MapTriple, assume_regular: bool) -> bool {
    if m1.degree() != m2.degree() {
        return false;
    }
    if assume_regular {
        return rooted_isomorphism(m1, m2, 0).is_some();
    }
    if m1.degree() > FULL_ROOT_FALLBACK_CAP && is_regular(m2).regular {
        return rooted_isomorphism(m1, m2, 0).is_some();
    }
    (0..m2.degree()).any(|root| rooted_isomorphism(m1, m2, root).is_some())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Regularity {
    pub regular: bool,
    pub aut_order: usize,
}

/// Counts the roots reachable by a self-isomorphism from blade 0; that count is `|Aut m|`.
///
/// Found automorphisms are kept; the blades they reach from 0 are known successes,
/// and the blades they reach from a failed root are known failures.
pub fn is_regular(m: &MapTriple) -> Regularity {
    const UNKNOWN: u8 = 0;
    const YES: u8 = 1;
    const NO: u8 = 2;
    let n = m.degree();
    let mut state = vec![UNKNOWN; n];
    let mut autos: Vec<Vec<u32>> = Vec::new();
    state[0] = YES;
    let mut yes = vec![0usize];

    let close =
        |state: &mut Vec<u8>, autos: &[Vec<u32>], from: Vec<usize>, mark: u8| -> Vec<usize> {
            let mut seen = from.clone();
            let mut stack = from;
            while let Some(w) = stack.pop() {
                for a in autos {
                    let v = a[w] as usize;
                    if state[v] != mark {
                        state[v] = mark;
                        seen.push(v);
                        stack.push(v);
                    }
                }
            }
            seen
        };

    for root in 1..n {
        if state[root] != UNKNOWN {
            continue;
        }
        match rooted_isomorphism(m, m, root) {
            Some(phi) => {
                state[root] = YES;
                autos.push(phi);
                yes.push(root);
                yes = close(&mut state, &autos, yes, YES);
                if yes.len() == n {
                    break;
                }
            }
            None => {
                state[root] = NO;
                close(&mut state, &autos, vec![root], NO);
            }
        }
    }
    let aut_order = state.iter().filter(|&&s| s == YES).count();
    Regularity {
        regular: aut_order == n,
        aut_order,
    }
}

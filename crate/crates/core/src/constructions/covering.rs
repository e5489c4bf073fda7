//! Elementary abelian 2-coverings given by a character `Γ → GF(2)^k`.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mapcore::MapTriple;
use crate::permgroup::Permutation;

/// The `Σ⁺`-invariant normal subgroups used as covering kernels.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverPreset {
    /// Quotient `C₂` with `R1` odd and `R0`, `R2` even.
    Gamma02,
    /// Quotient `V₄` with `R1` trivial.
    GammaStar,
    /// Quotient `V₈`, the full abelianization.
    GammaPrime,
}

impl CoverPreset {
    pub const ALL: [CoverPreset; 3] = [
        CoverPreset::Gamma02,
        CoverPreset::GammaStar,
        CoverPreset::GammaPrime,
    ];

    /// `(k, images)` with images as bit-vectors in GF(2)^k.
    pub fn character(self) -> (u32, [u32; 3]) {
        match self {
            CoverPreset::Gamma02 => (1, [0, 1, 0]),
            CoverPreset::GammaStar => (2, [0b01, 0b00, 0b10]),
            CoverPreset::GammaPrime => (3, [0b001, 0b010, 0b100]),
        }
    }
}

impl FromStr for CoverPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma02" | "g02" => Ok(CoverPreset::Gamma02),
            "gamma-star" | "gstar" => Ok(CoverPreset::GammaStar),
            "gamma-prime" | "gprime" => Ok(CoverPreset::GammaPrime),
            _ => Err(Error::InvalidParameter(format!(
                "unknown preset {s:?} (expected gamma02, gamma-star or gamma-prime)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub map: MapTriple,
    /// False when the product action splits and only the constituent of `(0, 0)` was kept.
    pub full_product_transitive: bool,
}

/// `(ω, v)·r_i = (ω·r_i, v + images[i])`, restricted to the orbit of `(0, 0)`.
///
/// Blades are numbered in breadth-first discovery order.
pub fn covering_by_character(m: &MapTriple, k: u32, images: [u32; 3]) -> Result<Cover> {
    if k > 3 {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds 3")));
    }
    if images.iter().any(|&v| v >> k != 0) {
        return Err(Error::InvalidParameter(format!(
            "images {images:?} do not lie in GF(2)^{k}"
        )));
    }
    let n = m.degree();
    let width = 1usize << k;
    let encode = |w: usize, v: u32| w * width + v as usize;
    let mut label = vec![u32::MAX; n * width];
    let mut points = Vec::new();
    let mut queue = VecDeque::new();
    label[0] = 0;
    points.push((0usize, 0u32));
    queue.push_back(0usize);
    let mut r: [Vec<u32>; 3] = Default::default();
    for img in r.iter_mut() {
        img.reserve(n * width);
    }
    // images are filled in label order, which is also the queue order
    while let Some(idx) = queue.pop_front() {
        let (w, v) = points[idx];
        for i in 0..3 {
            let (w2, v2) = (m.act(w, i), v ^ images[i]);
            let key = encode(w2, v2);
            if label[key] == u32::MAX {
                label[key] = points.len() as u32;
                points.push((w2, v2));
                queue.push_back(points.len() - 1);
            }
            r[i].push(label[key]);
        }
    }
    let full = points.len() == n * width;
    let [r0, r1, r2] = r.map(Permutation::from_images);
    Ok(Cover {
        map: MapTriple::new(r0?, r1?, r2?)?,
        full_product_transitive: full,
    })
}

pub fn cover_preset(m: &MapTriple, preset: CoverPreset) -> Result<Cover> {
    let (k, images) = preset.character();
    covering_by_character(m, k, images)
}

//! Regular maps as blade permutation triples: invariants, Wilson's operations and
//! classes, the class-III maps over `L₂(2^e)`, coverings, parallel products and a
//! census of maps on small groups.

pub mod census;
pub mod constructions;
pub mod error;
pub mod gf2field;
pub mod linfrac;
pub mod mapcore;
pub mod permgroup;

pub use error::{Error, MapViolation, Result};
pub use gf2field::{FieldElement, FieldSpec};
pub use linfrac::{BaseField, PrimeField, ProjMatrix2};
pub use mapcore::{
    ClassificationReport, InvariantsReport, MapTriple, MapType, SigmaElement, WilsonClass,
};
pub use permgroup::{PermGroup, Permutation};

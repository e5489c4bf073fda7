use std::fmt;

/// A violated defining relation of a map triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapViolation {
    DegreeMismatch { generator: &'static str, len: usize },
    NotAPermutation(&'static str),
    NotAnInvolution(&'static str),
    R0R2NotInvolution,
    HasFixedPoint(&'static str),
    NotTransitive { orbit_of_zero: usize },
    EmptyMap,
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::DegreeMismatch { generator, len } => {
                write!(f, "{generator} has {len} images, expected the map degree")
            }
            MapViolation::NotAPermutation(g) => write!(f, "{g} is not a bijection"),
            MapViolation::NotAnInvolution(g) => write!(f, "{g}^2 != 1"),
            MapViolation::R0R2NotInvolution => write!(f, "(r0 r2)^2 != 1"),
            MapViolation::HasFixedPoint(g) => write!(f, "{g} has a fixed blade"),
            MapViolation::NotTransitive { orbit_of_zero } => {
                write!(
                    f,
                    "monodromy group is not transitive (orbit of blade 0 has size {orbit_of_zero})"
                )
            }
            MapViolation::EmptyMap => write!(f, "map has no blades"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid map: {}", join(.0))]
    InvalidMap(Vec<MapViolation>),
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: u128 },
    #[error("polynomial has no root in the field")]
    NoRoot,
    #[error("edge at blade {blade} joins a {side} to itself")]
    DegenerateEdge { side: &'static str, blade: usize },
    #[error("map is not regular (|Aut| = {aut} < {degree} blades)")]
    NotRegular { aut: usize, degree: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error signals broken internal bookkeeping rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

fn join(v: &[MapViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

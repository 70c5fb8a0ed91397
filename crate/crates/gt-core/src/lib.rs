//! Exact computations in the Goldman-Turaev Lie bialgebra of a punctured
//! oriented surface.
//!
//! A surface of genus `g` with `n + 1` punctures is modelled as a ribbon
//! graph with one vertex: a round disk with `2g + n` bands attached to its
//! boundary circle. Free homotopy classes of loops are cyclically reduced
//! cyclic words in the generators `x_1, y_1, ..., x_g, y_g, z_1, ..., z_n`
//! of the fundamental group. Every operation is exact: coefficients are
//! arbitrary-precision rationals and rotation numbers are integers obtained
//! from rational turning sums, so there is no floating point anywhere.
//!
//! The main entry points are:
//! * [`Surface::build`] and word parsing,
//! * [`bialgebra::goldman_bracket`] and [`bialgebra::turaev_cobracket`],
//! * [`Framing`] with rotation numbers and local degrees,
//! * [`classify`] for mapping class group orbits of framings,
//! * [`autos`] for free group automorphisms, point pushes and the framing
//!   cocycle,
//! * [`series`] and [`expansion`] for truncated group-like expansions and
//!   filtration checks.

pub mod autos;
pub mod bialgebra;
pub mod check;
pub mod classify;
pub mod expansion;
pub mod framing;
pub(crate) mod geom;
pub mod intersect;
pub mod io;
pub mod oracle;
pub mod series;
pub mod surface;
pub mod taut;
pub mod words;

pub use autos::FreeGroupAuto;
pub use bialgebra::{BiLoopCombo, LoopCombo};
pub use framing::Framing;
pub use intersect::{DoublePoint, SelfDoublePoint};
pub use surface::Surface;
pub use words::{CyclicWord, Letter, Word};

/// Errors surfaced to callers. Violations of internal geometric invariants
/// (non-integer rotation numbers, Poincare-Hopf failures) are bugs and panic
/// instead of returning a variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// `2g - 1 + n > 0` is required so that the surface carries taut
    /// representatives and a hyperbolic structure.
    #[error("surface of genus {g} with {n} extra punctures is not hyperbolic")]
    NonHyperbolic { g: u32, n: u32 },
    #[error("unknown generator `{0}` for this surface")]
    UnknownGenerator(String),
    #[error("the constant class has no rotation number")]
    ConstantClass,
    #[error("inputs live on different surfaces")]
    SurfaceMismatch,
    #[error("invariant is not defined here: {0}")]
    NotDefined(&'static str),
    #[error("not a mapping class: {0}")]
    NotMappingClass(String),
    #[error("puncture index {0} is out of range (need 1..=n)")]
    InvalidPuncture(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonHyperbolic { .. } => "NonHyperbolic",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::ConstantClass => "ConstantClass",
            Error::SurfaceMismatch => "SurfaceMismatch",
            Error::NotDefined(_) => "NotDefined",
            Error::NotMappingClass(_) => "NotMappingClass",
            Error::InvalidPuncture(_) => "InvalidPuncture",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;
use core::fmt;

use crate::dynkin::Family;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank outside the admissible range for the family.
    InvalidRank { family: Family, rank: u32 },
    /// The requested diagram automorphism does not exist (E7, E8).
    NoSuchAutomorphism { family: Family, rank: u32 },
    /// Two automorphisms live on different diagrams.
    DiagramMismatch,
    /// An orbit quiver was requested for an automorphism that does not move
    /// every vertex strictly to the right.
    NotRightward { row: u32, shift: i64 },
    /// A deletion set is not closed under the translation.
    NotTauStable { witness: usize },
    /// A vertex id does not exist in the quiver.
    UnknownVertex(usize),
    /// Malformed quiver data (bad arrow endpoint, non-bijective translation, ...).
    InvalidQuiver(String),
    /// The mesh property fails at the given vertex.
    MeshViolation { vertex: usize },
    /// Two arrows between the same pair of vertices.
    ArrowMultiplicity { from: usize, to: usize },
    /// Hom computation through the covering was requested on a quiver that
    /// carries no covering data (e.g. a deletion output).
    MissingCoveringData,
    /// The bounded-window path computation did not stabilise.
    WindowTooSmall,
    /// The computed orbit structure disagrees with the stored cluster spec.
    SpecMismatch(String),
    /// A named hypothesis of a quotient theorem is violated.
    HypothesisViolated(String),
    /// Rank below 4 in a type-D statement.
    RankTooSmall { rank: u32, min: u32 },
    /// Exhaustive witness search found nothing.
    NoWitness,
    /// Cluster level must be at least 1.
    InvalidLevel(u32),
    /// A family or case name that does not parse.
    Unrecognized(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank { family, rank } => {
                write!(f, "invalid rank {rank} for Dynkin family {family}")
            }
            Error::NoSuchAutomorphism { family, rank } => {
                write!(f, "{family}{rank} has no nontrivial diagram automorphism")
            }
            Error::DiagramMismatch => f.write_str("automorphisms act on different diagrams"),
            Error::NotRightward { row, shift } => {
                write!(
                    f,
                    "row {row} is shifted by {shift}, expected a shift of at least 1"
                )
            }
            Error::NotTauStable { witness } => {
                write!(f, "deletion set is not tau-stable: vertex {witness} is deleted but its translate is not")
            }
            Error::UnknownVertex(v) => write!(f, "unknown vertex id {v}"),
            Error::InvalidQuiver(msg) => write!(f, "invalid quiver: {msg}"),
            Error::MeshViolation { vertex } => write!(f, "mesh property fails at vertex {vertex}"),
            Error::ArrowMultiplicity { from, to } => {
                write!(f, "multiple arrows {from} -> {to}")
            }
            Error::MissingCoveringData => {
                f.write_str("quiver carries no covering data; use the path-space oracle")
            }
            Error::WindowTooSmall => {
                f.write_str("path computation did not stabilise on the window")
            }
            Error::SpecMismatch(msg) => write!(f, "shape does not match cluster spec: {msg}"),
            Error::HypothesisViolated(name) => write!(f, "hypothesis violated: {name}"),
            Error::RankTooSmall { rank, min } => {
                write!(f, "rank {rank} is below the minimum {min}")
            }
            Error::NoWitness => f.write_str("no deletion witness found"),
            Error::Unrecognized(name) => write!(f, "unrecognized name {name:?}"),
            Error::InvalidLevel(u) => write!(f, "invalid cluster level {u}, expected at least 1"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

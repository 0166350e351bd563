use alloc::string::String;

use crate::lattice::Weight;

/// Everything that can go wrong while building or evaluating the objects of
/// this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Cartan matrix must be non-empty")]
    EmptyCartan,
    #[error("Cartan matrix row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("Cartan matrix entry ({index}, {index}) is {value}, expected 2")]
    BadDiagonal { index: usize, value: i64 },
    #[error("Cartan matrix entry ({row}, {col}) is {value}, off-diagonal entries must be <= 0")]
    PositiveOffDiagonal { row: usize, col: usize, value: i64 },
    #[error("Cartan matrix entries ({row}, {col}) and ({col}, {row}) must vanish together")]
    ZeroPattern { row: usize, col: usize },
    #[error("Cartan matrix is not symmetrizable (component containing node {node})")]
    NotSymmetrizable { node: usize },
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("Weyl group exceeds the enumeration cap of {cap} elements")]
    WeylGroupTooLarge { cap: usize },
    #[error("rank mismatch in {context}: expected {expected}, found {found}")]
    RankMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} is not dominant")]
    NotDominant(Weight),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("character is not Weyl-invariant: multiplicity of {weight} is {multiplicity} but its reflection {reflected} has {reflected_multiplicity}")]
    NotWeylInvariant {
        weight: Weight,
        multiplicity: i64,
        reflected: Weight,
        reflected_multiplicity: i64,
    },
    #[error("invalid real form configuration: {0}")]
    InvalidConfig(String),
    #[error("the K-nilpotent cone formula is only established for real forms split modulo center; this configuration is not flagged split")]
    NotSplit,
    #[error("invalid torus table: {0}")]
    InvalidTorus(String),
    #[error("invalid cone model: {0}")]
    InvalidModel(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

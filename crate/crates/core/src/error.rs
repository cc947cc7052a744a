use thiserror::Error;

use crate::geometry::GeometryClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed Schläfli symbol {{{p},{q}}}: both entries must be at least 3")]
    MalformedPair { p: u32, q: u32 },

    #[error("{{{p},{q}}} is {class}, not hyperbolic")]
    NotHyperbolic {
        p: u32,
        q: u32,
        class: GeometryClass,
    },

    #[error("genus {genus} is out of range (need g >= {min})")]
    GenusOutOfRange { genus: u32, min: u32 },

    #[error("census of {{{p},{q}}} at genus {genus} is infeasible: {reason}")]
    Infeasible {
        p: u32,
        q: u32,
        genus: u32,
        reason: String,
    },

    #[error("invalid torus spec: {0}")]
    InvalidSpec(String),

    #[error(
        "edge-scaled hexagonal torus with lambda = {lambda}: n_f = lambda^2/3 and n_f* = 2 lambda^2/3 \
         are integers only if 3 divides lambda"
    )]
    Integrality { lambda: u32 },

    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },

    #[error("face {face} references unknown edge {edge}")]
    UnknownEdge { face: usize, edge: usize },

    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: usize },

    #[error("two-slot invariant violated: edge {edge} borders {slots} face slot(s), expected 2")]
    EdgeSlots { edge: usize, slots: usize },

    #[error("face {face}: consecutive edges at positions {position} and {next} share no vertex")]
    BrokenFace {
        face: usize,
        position: usize,
        next: usize,
    },

    #[error("face {face} has an empty boundary")]
    EmptyFace { face: usize },

    #[error("Euler characteristic V - E + F = {chi} does not match 2 - 2g = {expected} for genus {genus}")]
    EulerMismatch { chi: i64, expected: i64, genus: u32 },

    #[error("genus must be at least 1, got {0}")]
    ZeroGenus(u32),

    #[error("surface is not connected")]
    Disconnected,

    #[error("vertex {vertex}: the faces around it do not close into a single disk")]
    NotASurface { vertex: usize },

    #[error("faces cannot be oriented consistently (edge {edge})")]
    NonOrientable { edge: usize },

    #[error("complex integrity: betti1 = {betti1} but 2g = {expected}")]
    BettiMismatch { betti1: usize, expected: usize },

    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    Dimension {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("edge set is not a cycle (odd degree at vertex {vertex})")]
    NotACycle { vertex: usize },

    #[error("surface has trivial first homology; no nontrivial cycle exists")]
    NoHomology,

    #[error("construction bug: {0}")]
    Construction(String),

    #[error("stabilizer check failed: {0}")]
    Stabilizer(String),

    #[error("logical quotient has dimension {found}, expected {expected}")]
    LogicalDimension { expected: usize, found: usize },

    #[error("cocycle pairing matrix is singular")]
    SingularPairing,

    #[error("oracle refuses n = {n} above the ceiling {ceiling}")]
    OracleCeiling { n: usize, ceiling: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the failure came from the outside world rather than the data.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Json(e) => e.is_io(),
            Error::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(_)),
            _ => false,
        }
    }
}

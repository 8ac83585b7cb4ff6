use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("vertex {vertex:?} is not an element of Z_{orders:?}")]
    VertexOutOfRange { vertex: Vec<u64>, orders: Vec<u64> },

    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("walk does not live in this digraph: {0}")]
    HostMismatch(String),

    #[error("cut value {d} is not in the Hamiltonian cut set of (k={k}, a={a})")]
    NotInCutSet { k: u64, a: u64, d: u64 },

    /// A structural fact that a theorem guarantees did not hold.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("construction failed: {0}")]
    BuildFailed(String),

    /// A search ran out of nodes before deciding.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("malformed witness file: {0}")]
    MalformedWitness(String),
}

//! Exact X-basis factorization of graph states.

pub mod bias;
pub mod error;
pub mod gf2;
pub mod graphs;
pub mod localize;
pub mod oracle;
pub mod schmidt;
pub mod sign;
pub mod stab;
pub mod verify;
pub mod xchains;

pub use bias::DyadicReal;
pub use error::{Error, Result};
pub use gf2::{Basis, BitMatrix, BitVec, VertexSet};
pub use graphs::{Bipartition, Graph};
pub use sign::Sign;
pub use xchains::{XBasisExpansion, XChainData};

/// Dense state with machine-word amplitudes.
pub type IntState = oracle::DenseState<i64>;
/// Dense state with unbounded amplitudes.
pub type BigState = oracle::DenseState<num_bigint::BigInt>;

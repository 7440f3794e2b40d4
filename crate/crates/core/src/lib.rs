//! Statevector simulation and Monte Carlo checks for anticoncentration of
//! random quantum circuits.

pub mod bits;
pub mod ensembles;
pub mod error;
pub mod experiment;
pub mod quench;
pub mod random_matrix;
pub mod rng;
pub mod statevector;
pub mod stats;

pub use bits::Bitstring;
pub use error::{Error, Result};
pub use rng::Rng;
pub use statevector::{Circuit, GateMatrix, State};

//! Random circuit families.

mod brickwork;
mod diagonal;
mod gate_set;
mod iqp;

pub use brickwork::{
    design_depth, sample_brickwork_circuit, sample_brickwork_layers, BrickLayer, BrickworkSpec, GateSource,
    DEFAULT_DESIGN_CONSTANT,
};
pub use diagonal::{
    sample_diagonal_circuit, sample_diagonal_draw, DiagonalDraw, DiagonalSpec, DiagonalStructure, PAIR_PHASES,
    SITE_PHASES,
};
pub use gate_set::{gate_set_bis, gate_set_by_name, GateSet, NamedGate};
pub use iqp::{sample_dense_iqp, IqpCircuit};

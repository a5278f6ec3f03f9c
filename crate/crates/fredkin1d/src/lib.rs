//! Coloured deformed Fredkin chain.
//!
//! Ground states are colour-correlated Dyck walks weighted by `q^{area}`;
//! the holographic network reproduces those weights exactly from five tiles.

mod chain;
mod hamiltonian;
mod network;

pub use chain::{
    enumerate_ground_basis, fredkin_move, ground_state, ground_state_exact, height_profile, is_ground_basis, matching,
    ColoredSpin, SpinChain, WalkProfile,
};
pub use hamiltonian::{
    build_hamiltonian, fredkin_only_components, hamiltonian_terms, kernel_report, move_graph_components, neighbours,
    verify_annihilation, AnnihilationReport, KernelReport, SparseMatrix, Term, DIM_CAP,
};
pub use network::{assignment, build_network, leg_alphabet, spin_symbol, tile_tensor, tower_heights, TILE_WEIGHTS12};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FredkinError {
    #[error("chain length {0} must be even and at least 2")]
    BadLength(usize),
    #[error("colour count {0} must be positive")]
    BadColors(u8),
    #[error("colour {color} outside 1..={s}")]
    ColorOutOfRange { color: u8, s: u8 },
    #[error("cannot parse spin token `{0}`")]
    Parse(String),
    #[error("Hilbert space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error(transparent)]
    State(#[from] statevec::StateError),
    #[error(transparent)]
    Tensor(#[from] tensor_core::TensorError),
}

//! Exact sparse-tensor algebra with monomial-in-`q` entries.
//!
//! Entries are `c · q^(p/12)` with exact rational `c`; contraction sums are
//! only allowed between equal exponents, so every amplitude of a network with
//! a one-tiling-per-configuration structure stays a single monomial.

mod alphabet;
mod error;
mod network;
mod qmono;
mod tensor;

pub use alphabet::{Component, Label, LegAlphabet};
pub use error::TensorError;
pub use network::{
    contract_network, contract_network_with_stats, enumerate_terms, evaluate_amplitude, execute_plan,
    fix_physical, plan_contraction, ContractionPlan, ContractionStats, LegRef, LegRole, NetworkGraph, Node,
    PlanStep,
};
pub use qmono::{Coeff, QMonomial, Weight};
pub use tensor::{contract_pair, Leg, SparseTensor};

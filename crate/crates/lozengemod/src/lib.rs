//! Coloured lozenge tilings of triangular-lattice domains, coupled to Fredkin
//! chains along their de Bruijn lines.
//!
//! Ground states weight tilings by `q^{volume}` of the stepped surface; a
//! network of triangular-prism tiles reproduces those amplitudes exactly.

mod domain;
mod hamiltonian;
mod network;
mod tiling;
mod weights;

pub use domain::{
    boundary_steps_ok, edge_class, height_step, hexagon_covers, hexagon_peel, hexagon_ring, hexagon_tilings, is_tileable,
    ring_outer_class, strong_boundary_ok, DomainJson, Tri, TriDomain, TriKind, Vertex, MAX_FACES,
};
pub use hamiltonian::{
    dimer_energy, is_raised, lozenge_fredkin_move, move_graph_components, move_projectors, neighbours,
    peak_projectors, verify_annihilation, verify_state, AnnihilationReport,
};
pub use network::{
    all_prism_tiles, build_network, build_network_with, check_continuity, config_from_tiling, four_arrow_hexagons,
    leg_alphabet, phys_label, prism_legs, prism_tensor, tiling_from_config, tower_counts, tower_levels, PrismNetwork,
    PrismTileId, PrismTiling, Sub, PRISM_WEIGHTS12,
};
pub use tiling::{
    boundary_energy, boundary_lozenges, check_colors, color_groups, colorings_count, enumerate_ground_basis,
    ground_state, ground_state_exact, ground_tilings, height_field, is_ground_basis, matched_pairs, nth_coloring,
    tilings, tracks, HeightFieldTri, LozengeTiling, Track, MAX_BASIS,
};
pub use weights::{solve_tile_weights, WeightReport};

use thiserror::Error;

/// Colour count limit: a face label packs `diag·s² + …` into one byte.
pub const MAX_COLORS: u8 = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LozengeError {
    #[error("bad domain: {0}")]
    BadDomain(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("boundary height {0} is not a half-odd integer")]
    BadHeight(f64),
    #[error("no boundary height given for vertex {0:?}")]
    MissingHeight(Vertex),
    #[error("height given for non-boundary vertex {0:?}")]
    ExtraHeight(Vertex),
    #[error("boundary heights inconsistent: {0}")]
    BoundaryLoop(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("colour count {0} outside 1..=9")]
    BadColors(u8),
    #[error("colour {color} outside 1..={s}")]
    ColorOutOfRange { color: u8, s: u8 },
    #[error("not a lozenge tiling: {0}")]
    Matching(String),
    #[error("height field: {0}")]
    Heights(String),
    #[error("boundary heights differ by more than one")]
    NotStrong,
    #[error("hexagon peeling stuck with {} faces left", .0.len())]
    PeelStuck(Vec<Tri>),
    #[error("bad label: {0}")]
    BadLabel(String),
    #[error("expected exactly one prism tiling, found {0}")]
    TilingCount(usize),
    #[error("arrow discontinuity: {0}")]
    Discontinuity(String),
    #[error("tile weights: {0}")]
    Weights(String),
    #[error(transparent)]
    State(#[from] statevec::StateError),
    #[error(transparent)]
    Tensor(#[from] tensor_core::TensorError),
}

pub(crate) fn check_colors_count(s: u8) -> Result<(), LozengeError> {
    if s == 0 || s > MAX_COLORS {
        return Err(LozengeError::BadColors(s));
    }
    Ok(())
}

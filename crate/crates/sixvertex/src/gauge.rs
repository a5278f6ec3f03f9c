//! U(1) pull-through identities of the six-leg tiles.
//!
//! With `D_α = q^{α n/4}` on a leg carrying `n` arrows of the tile's own
//! family, every tile must satisfy
//! `w · D_α(k1) = w̃ · Π_out D_α · Π_{in ≠ k1} D_α⁻¹`, where `w̃` is
//! `q^{1/8}` per own-family arrow on the four walls. Exponents are exact
//! rationals (eighths are finer than the twelfths of the tensor weights).

use num_rational::Ratio;

use crate::network::{all_tiles, tile_legs, TILE_WEIGHTS12};
use crate::{Kind, TileId};

/// Own family index and `(inputs, outputs)` leg indices for a sublattice.
fn io(kind: Kind) -> (usize, [usize; 3], [usize; 3]) {
    match kind {
        // dashed: in k1,k3,k4; out k2,k5,k6
        Kind::H => (0, [0, 2, 3], [1, 4, 5]),
        // solid: in k1,k2,k3; out k4,k5,k6
        Kind::V => (1, [0, 1, 2], [3, 4, 5]),
    }
}

/// Per-tile outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTileCheck {
    pub tile: TileId,
    pub conserved: bool,
    /// log_q of both sides.
    pub lhs: Ratio<i64>,
    pub rhs: Ratio<i64>,
}

impl GaugeTileCheck {
    pub fn holds(&self) -> bool {
        self.conserved && self.lhs == self.rhs
    }
}

/// Checks every tile with the given weights (twelfths) at exponent `alpha`.
pub fn gauge_report(alpha: Ratio<i64>, weights12: &[i64; 5]) -> Vec<GaugeTileCheck> {
    let mut out = Vec::new();
    for kind in [Kind::H, Kind::V] {
        let (fam, ins, outs) = io(kind);
        for tile in all_tiles(kind, 2) {
            let legs = tile_legs(&tile);
            let n = |k: usize| legs[k].0[fam].arrows();
            let conserved = ins.iter().map(|&k| n(k)).sum::<i64>() == outs.iter().map(|&k| n(k)).sum::<i64>();
            let d = |k: usize| alpha * Ratio::new(n(k), 4);
            let w = Ratio::new(weights12[tile.index as usize - 1], 12);
            let walls: i64 = (1..=4).map(|k| n(k).abs()).sum();
            let lhs = w + d(0);
            let rhs = Ratio::new(walls, 8) + outs.iter().map(|&k| d(k)).sum::<Ratio<i64>>()
                - ins[1..].iter().map(|&k| d(k)).sum::<Ratio<i64>>();
            out.push(GaugeTileCheck { tile, conserved, lhs, rhs });
        }
    }
    out
}

/// True iff the identity holds for all ten tile kinds (every colouring).
/// `q` only fixes the base of the monomials; equality is exact in the exponent.
pub fn gauge_identity_check(q: f64, alpha: Ratio<i64>) -> bool {
    q > 0.0 && gauge_report(alpha, &TILE_WEIGHTS12).iter().all(GaugeTileCheck::holds)
}

/// Same check with `H₃`/`V₃` weights replaced (negative control).
pub fn gauge_identity_check_weighted(q: f64, alpha: Ratio<i64>, weights12: &[i64; 5]) -> bool {
    q > 0.0 && gauge_report(alpha, weights12).iter().all(GaugeTileCheck::holds)
}

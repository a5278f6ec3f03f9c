//! Exact tile weights that make every tower contribute its share of the volume.
//!
//! A tower of `M_r` levels over a face with spin height `φ` holds
//! `M_r − φ − 1` two-arrow tiles, one three-arrow tile and `φ` four-arrow
//! tiles; its weight must equal `φ/2 + 1/4`. Single-level towers instead carry
//! the fixed share `Σ_v w_v φ_v` of their corner heights.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::domain::TriDomain;
use crate::network::tower_levels;
use crate::tiling::{ground_tilings, height_field};
use crate::LozengeError;

type Q = Ratio<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightReport {
    pub x2: Q,
    pub x4: Q,
    /// Three-arrow weight for each tower height `M_r ≥ 2`.
    pub x3: BTreeMap<usize, Q>,
    /// Three-arrow weight of every single-level tower, by face.
    pub boundary_x3: BTreeMap<usize, Q>,
    /// `(Σ tower weights, volume)` for every ground tiling.
    pub totals: Vec<(Q, Q)>,
}

impl WeightReport {
    pub fn consistent(&self) -> bool {
        self.totals.iter().all(|(a, b)| a == b)
    }

    /// Distinct single-level weights.
    pub fn boundary_values(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.boundary_x3.values().copied().collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Solves the tower equations for a chosen two-arrow weight `x2` and checks
/// that the weights reproduce the volume of every ground tiling.
pub fn solve_tile_weights(d: &TriDomain, x2: Q) -> Result<WeightReport, LozengeError> {
    let (top, lo) = tower_levels(d)?;
    let levels: Vec<usize> = lo.iter().map(|&l| top - l + 1).collect();
    let x4 = x2 + Q::new(1, 2);
    let mut x3 = BTreeMap::new();
    for &m in levels.iter().filter(|&&m| m >= 2) {
        let v = Q::new(1, 4) - Q::from_integer(m as i64 - 1) * x2;
        // every φ in 0..m must satisfy the same equation
        for phi in 0..m as i64 {
            let lhs = Q::from_integer(m as i64 - phi - 1) * x2 + v + Q::from_integer(phi) * x4;
            if lhs != Q::new(phi, 2) + Q::new(1, 4) {
                return Err(LozengeError::Weights(format!("tower of height {m} inconsistent at φ = {phi}")));
            }
        }
        x3.insert(m, v);
    }
    // corner shares: 1/6 per face around interior vertices; boundary vertices
    // split what the taller towers leave among the single-level ones
    let faces = d.faces();
    let share = |v| -> Option<Q> {
        if d.degree(v) == 6 {
            return Some(Q::new(1, 6));
        }
        let around: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].verts().contains(&v)).collect();
        let tall = around.iter().filter(|&&i| levels[i] >= 2).count() as i64;
        let short = around.len() as i64 - tall;
        (short > 0).then(|| (Q::from_integer(1) - Q::new(tall, 6)) / Q::from_integer(short))
    };
    let mut boundary_x3 = BTreeMap::new();
    let mut totals = Vec::new();
    for diag in ground_tilings(d)? {
        let hf = height_field(d, &diag)?;
        let mut total = Q::from_integer(0);
        for i in 0..faces.len() {
            if levels[i] >= 2 {
                let phi = hf.spin_height(d, i);
                total += Q::from_integer(levels[i] as i64 - phi - 1) * x2 + x3[&levels[i]] + Q::from_integer(phi) * x4;
            } else {
                let mut w = Q::from_integer(0);
                for v in faces[i].verts() {
                    let s = share(v).ok_or_else(|| LozengeError::Weights(format!("no share at {v:?}")))?;
                    w += s * hf.phi(v);
                }
                if let Some(prev) = boundary_x3.insert(i, w) {
                    if prev != w {
                        return Err(LozengeError::Weights(format!("single-level tower {i} varies between tilings")));
                    }
                }
                total += w;
            }
        }
        totals.push((total, hf.volume()));
    }
    Ok(WeightReport { x2, x4, x3, boundary_x3, totals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_weights() {
        let d = TriDomain::named("hex3").unwrap();
        let r = solve_tile_weights(&d, Q::from_integer(0)).unwrap();
        assert!(r.consistent());
        assert_eq!(r.x4, Q::new(1, 2));
        assert_eq!(r.x3[&2], Q::new(1, 4));
        assert_eq!(r.boundary_values(), [Q::new(1, 6), Q::new(1, 4)]);
    }

    #[test]
    fn other_gauge_is_consistent() {
        let d = TriDomain::named("hex6").unwrap();
        let r = solve_tile_weights(&d, Q::new(-1, 3)).unwrap();
        assert!(r.consistent());
        assert_eq!(r.x4, Q::new(1, 6));
    }
}

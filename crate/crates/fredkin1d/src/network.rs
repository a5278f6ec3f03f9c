//! The inverse-step-pyramid network of rank-4 tiles.
//!
//! Leg order of every tile: `[k1 bottom, k2 left, k3 top, k4 right]`.
//! Towers are top-aligned; tower `i` has `min(i+1, N−i)` levels and its
//! bottom leg is the physical spin.

use std::sync::Arc;

use tensor_core::{Component, Label, Leg, LegAlphabet, LegRef, LegRole, NetworkGraph, QMonomial, SparseTensor};

use crate::{ColoredSpin, FredkinError, SpinChain};

/// The five tiles (per colour) with their weights in twelfths of a power of q.
pub const TILE_WEIGHTS12: [(&str, i64); 5] = [("A1", 0), ("A2", 6), ("A3", 12), ("A4", 6), ("A5", 0)];

pub fn leg_alphabet(s: u8) -> Arc<LegAlphabet> {
    let labels = (1..=s).flat_map(|c| [Label(vec![Component::plus(c)]), Label(vec![Component::minus(c)])]);
    Arc::new(LegAlphabet::new(1, labels).expect("distinct labels"))
}

/// Symbol of a physical spin on the bottom leg.
pub fn spin_symbol(alpha: &LegAlphabet, sp: ColoredSpin) -> u32 {
    let comp = if sp.up { Component::plus(sp.color) } else { Component::minus(sp.color) };
    alpha.symbol(&Label(vec![comp])).expect("colour in range")
}

/// The rank-4 tile tensor `A(q)` for `s` colours.
pub fn tile_tensor(s: u8) -> SparseTensor {
    let a = leg_alphabet(s);
    let legs = ["k1", "k2", "k3", "k4"].iter().map(|n| Leg::new(*n, a.clone())).collect();
    let mut t = SparseTensor::new(legs);
    let sym = |c: Component| a.symbol(&Label(vec![c])).unwrap();
    for c in 1..=s {
        let (p, m) = (sym(Component::plus(c)), sym(Component::minus(c)));
        let entries = [
            ([p, 0, p, 0], 0),  // A1: up arrow passes
            ([p, 0, 0, p], 6),  // A2: up arrow turns right
            ([0, p, 0, p], 12), // A3: arrow passes horizontally
            ([m, p, 0, 0], 6),  // A4: arrow from the left turns down
            ([m, 0, m, 0], 0),  // A5: down arrow passes
        ];
        for (k, e) in entries {
            t.insert(k.to_vec(), QMonomial::q_pow12(e)).expect("valid tile");
        }
    }
    t
}

pub fn tower_heights(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1).min(n - i)).collect()
}

/// Pyramid network; physical legs in site order. `q` only labels the network
/// (weights are symbolic).
pub fn build_network(n: usize, s: u8) -> Result<NetworkGraph, FredkinError> {
    if n < 2 || n % 2 != 0 {
        return Err(FredkinError::BadLength(n));
    }
    let alpha = leg_alphabet(s);
    let tile = Arc::new(tile_tensor(s));
    let zero = Arc::new(SparseTensor::delta(Leg::new("cap", alpha.clone()), 0, QMonomial::one()).unwrap());
    let top = n / 2;
    let heights = tower_heights(n);
    // node[i][l] for global level l in 1..=top
    let mut node = vec![vec![None; top + 1]; n];
    let mut net = NetworkGraph::new();
    for i in 0..n {
        for l in (top + 1 - heights[i])..=top {
            node[i][l] = Some(net.add_node(tile.clone(), format!("A[{i},{l}]")));
        }
    }
    for i in 0..n {
        let lo = top + 1 - heights[i];
        for l in lo..=top {
            let id = node[i][l].unwrap();
            if l == lo {
                net.open_leg(LegRef::new(id, 0), LegRole::Physical);
            }
            if l == top {
                net.cap(LegRef::new(id, 2), zero.clone(), "cap");
            } else {
                net.connect(LegRef::new(id, 2), LegRef::new(node[i][l + 1].unwrap(), 0));
            }
            match (i + 1 < n).then(|| node[i + 1][l]).flatten() {
                Some(r) => net.connect(LegRef::new(id, 3), LegRef::new(r, 1)),
                None => {
                    net.cap(LegRef::new(id, 3), zero.clone(), "cap");
                }
            }
            if i == 0 || node[i - 1][l].is_none() {
                net.cap(LegRef::new(id, 1), zero.clone(), "cap");
            }
        }
    }
    // Physical legs were opened tower by tower, i.e. in site order.
    Ok(net)
}

/// Physical assignment for a chain.
pub fn assignment(chain: &SpinChain) -> Vec<u32> {
    let a = leg_alphabet(chain.s);
    chain.spins.iter().map(|&sp| spin_symbol(&a, sp)).collect()
}

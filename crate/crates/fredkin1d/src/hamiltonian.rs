//! Parent Hamiltonian: boundary, colour-mixing and Fredkin projector terms.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use statevec::{apply_local_operator, BasisLabel, LocalOp};

use crate::{enumerate_ground_basis, fredkin_move, ground_state, ColoredSpin, FredkinError, SpinChain};

/// Largest full Hilbert-space dimension `build_hamiltonian` accepts.
pub const DIM_CAP: usize = 1 << 20;

fn code(up: bool, c: u8) -> u8 {
    ColoredSpin { up, color: c }.code()
}

/// A Hamiltonian term acting on a fixed list of sites.
#[derive(Clone, Debug)]
pub struct Term {
    pub name: String,
    pub support: Vec<usize>,
    pub op: LocalOp,
}

fn f_state(q: f64, high: [u8; 3], low: [u8; 3]) -> Vec<(Vec<u8>, f64)> {
    let n = (q.powi(-2) + q.powi(2)).sqrt();
    vec![(high.to_vec(), q.recip() / n), (low.to_vec(), -q / n)]
}

/// All terms of `H_∂ + H_C + Σ_i H_i(q)`.
pub fn hamiltonian_terms(n: usize, s: u8, q: f64) -> Vec<Term> {
    let mut terms = Vec::new();
    let colors = 1..=s;
    terms.push(Term {
        name: "boundary-left".into(),
        support: vec![0],
        op: LocalOp::diagonal(colors.clone().map(|c| (vec![code(false, c)], 1.0))),
    });
    terms.push(Term {
        name: "boundary-right".into(),
        support: vec![n - 1],
        op: LocalOp::diagonal(colors.clone().map(|c| (vec![code(true, c)], 1.0))),
    });
    for i in 0..n - 1 {
        let mut op = LocalOp::default();
        for c1 in colors.clone() {
            for c2 in colors.clone() {
                if c1 != c2 {
                    let t = vec![code(true, c1), code(false, c2)];
                    op.add(t.clone(), t, 1.0);
                }
            }
        }
        // ½ Σ_{c1,c2} (|c1c1⟩ − |c2c2⟩)(⟨c1c1| − ⟨c2c2|)
        for c1 in colors.clone() {
            for c2 in colors.clone() {
                if c1 == c2 {
                    continue;
                }
                let a = vec![code(true, c1), code(false, c1)];
                let b = vec![code(true, c2), code(false, c2)];
                op.add(a.clone(), a.clone(), 0.5);
                op.add(b.clone(), b.clone(), 0.5);
                op.add(a.clone(), b.clone(), -0.5);
                op.add(b, a, -0.5);
            }
        }
        terms.push(Term { name: format!("color-{i}"), support: vec![i, i + 1], op });
    }
    for i in 1..n - 1 {
        let mut vecs = Vec::new();
        for c1 in colors.clone() {
            for c2 in colors.clone() {
                for c3 in colors.clone() {
                    let (u1, u2) = (code(true, c1), code(true, c2));
                    let (d2, d3) = (code(false, c2), code(false, c3));
                    vecs.push(f_state(q, [u1, u2, d3], [u2, d3, u1]));
                    vecs.push(f_state(q, [u1, d2, d3], [d3, u1, d2]));
                }
            }
        }
        terms.push(Term { name: format!("fredkin-{i}"), support: vec![i - 1, i, i + 1], op: LocalOp::from_projectors(&vecs) });
    }
    terms
}

/// Real symmetric sparse matrix in the product basis (site 0 most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), f64>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(i, j), &v) in &self.entries {
            m[(i, j)] = v;
        }
        m
    }
}

fn label_index(label: &[u8], d: usize) -> usize {
    label.iter().fold(0, |acc, &x| acc * d + x as usize)
}

fn index_label(mut idx: usize, n: usize, d: usize) -> BasisLabel {
    let mut l = vec![0u8; n];
    for k in (0..n).rev() {
        l[k] = (idx % d) as u8;
        idx /= d;
    }
    l
}

pub fn build_hamiltonian(n: usize, s: u8, q: f64) -> Result<SparseMatrix, FredkinError> {
    let d = 2 * s as usize;
    let dim = (d as f64).powi(n as i32);
    if dim > DIM_CAP as f64 {
        return Err(FredkinError::DimensionCap { dim: dim as u128, cap: DIM_CAP });
    }
    let dim = dim as usize;
    let terms = hamiltonian_terms(n, s, q);
    let mut entries: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for col in 0..dim {
        let label = index_label(col, n, d);
        for t in &terms {
            let local: Vec<u8> = t.support.iter().map(|&k| label[k]).collect();
            for (row, c) in t.op.column(&local) {
                let mut l = label.clone();
                for (&k, &v) in t.support.iter().zip(row) {
                    l[k] = v;
                }
                *entries.entry((label_index(&l, d), col)).or_default() += c;
            }
        }
    }
    entries.retain(|_, v| v.abs() > 1e-15);
    Ok(SparseMatrix { dim, entries })
}

/// Largest residual `‖H_term |GS⟩‖` over all terms.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub terms_checked: usize,
    pub max_residual: f64,
    pub worst_term: String,
}

pub fn verify_annihilation(n: usize, s: u8, q: f64) -> Result<AnnihilationReport, FredkinError> {
    let gs = ground_state(n, s, q)?;
    let mut rep = AnnihilationReport { terms_checked: 0, max_residual: 0.0, worst_term: String::new() };
    for t in hamiltonian_terms(n, s, q) {
        let r = apply_local_operator(&gs, &t.support, &t.op)?.norm();
        rep.terms_checked += 1;
        if r >= rep.max_residual {
            rep.max_residual = r;
            rep.worst_term = t.name.clone();
        }
    }
    Ok(rep)
}

/// Low-lying spectrum from full diagonalisation.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    pub ground_energy: f64,
    pub kernel_dim: usize,
    pub gap: f64,
    /// `|⟨ground vector | ground_state⟩|`.
    pub overlap: f64,
}

pub fn kernel_report(n: usize, s: u8, q: f64, tol: f64) -> Result<KernelReport, FredkinError> {
    let h = build_hamiltonian(n, s, q)?;
    let eig = SymmetricEigen::new(h.to_dense());
    let mut order: Vec<usize> = (0..h.dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let e0 = eig.eigenvalues[order[0]];
    let kernel_dim = order.iter().filter(|&&k| eig.eigenvalues[k] < e0 + tol).count();
    let gap = order.iter().map(|&k| eig.eigenvalues[k]).find(|&e| e >= e0 + tol).unwrap_or(f64::INFINITY) - e0;
    let gs = ground_state(n, s, q)?;
    let d = 2 * s as usize;
    let mut v = DVector::zeros(h.dim);
    for (l, a) in gs.numeric_terms() {
        v[label_index(l, d)] = a;
    }
    let overlap = eig.eigenvectors.column(order[0]).dot(&v).abs();
    Ok(KernelReport { ground_energy: e0, kernel_dim, gap, overlap })
}

/// BFS over the ground basis using Fredkin moves plus the colour swaps of
/// `H_C` (adjacent `↑c↓c → ↑c'↓c'`). Returns the number of components.
pub fn move_graph_components(n: usize, s: u8) -> Result<usize, FredkinError> {
    let basis = enumerate_ground_basis(n, s)?;
    let index: HashMap<SpinChain, usize> = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = HashSet::new();
    let mut comps = 0;
    for start in 0..basis.len() {
        if !seen.insert(start) {
            continue;
        }
        comps += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for nb in neighbours(&basis[k]) {
                let j = *index.get(&nb).expect("moves stay in the ground basis");
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(comps)
}

/// Configurations one Fredkin move or colour swap away.
pub fn neighbours(chain: &SpinChain) -> Vec<SpinChain> {
    let mut out = Vec::new();
    for i in 1..chain.len() - 1 {
        for v in [1, 2] {
            out.extend(fredkin_move(chain, i, v));
        }
    }
    for i in 0..chain.len() - 1 {
        let (a, b) = (chain.spins[i], chain.spins[i + 1]);
        if a.up && !b.up && a.color == b.color {
            for c in 1..=chain.s {
                if c != a.color {
                    let mut x = chain.clone();
                    x.spins[i].color = c;
                    x.spins[i + 1].color = c;
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Fredkin-move-only reachability graph components (colour multiset is conserved).
pub fn fredkin_only_components(n: usize, s: u8) -> Result<usize, FredkinError> {
    let basis = enumerate_ground_basis(n, s)?;
    let index: HashMap<SpinChain, usize> = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = HashSet::new();
    let mut comps = 0;
    for start in 0..basis.len() {
        if !seen.insert(start) {
            continue;
        }
        comps += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for i in 1..n - 1 {
                for v in [1, 2] {
                    if let Some(nb) = fredkin_move(&basis[k], i, v) {
                        let j = index[&nb];
                        if seen.insert(j) {
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
    }
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonian_is_symmetric() {
        let h = build_hamiltonian(4, 2, 2.0).unwrap();
        for (&(i, j), &v) in &h.entries {
            let w = h.entries.get(&(j, i)).copied().unwrap_or(0.0);
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn two_site_kernel() {
        let r = kernel_report(2, 1, 1.0, 1e-9).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert!((r.overlap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn four_site_kernel_and_gap() {
        let r = kernel_report(4, 1, 1.0, 1e-9).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert!(r.gap > 0.0);
        let r = kernel_report(4, 2, 2.0, 1e-9).unwrap();
        assert!(r.ground_energy.abs() < 1e-10);
        assert!((r.overlap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn annihilation() {
        for (n, s, q) in [(6, 2, 2.0), (8, 1, 1.0), (6, 1, 0.5)] {
            let rep = verify_annihilation(n, s, q).unwrap();
            assert!(rep.max_residual < 1e-12, "{n} {s} {q}: {rep:?}");
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(build_hamiltonian(12, 4, 1.0), Err(FredkinError::DimensionCap { .. })));
    }

    #[test]
    fn connectivity() {
        for n in [2, 4, 6, 8] {
            assert_eq!(move_graph_components(n, 1).unwrap(), 1);
            assert_eq!(move_graph_components(n, 2).unwrap(), 1);
        }
    }
}

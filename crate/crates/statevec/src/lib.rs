//! Sparse superpositions over canonical configuration labels.
//!
//! Labels are byte strings, one byte per site, produced by each model's
//! serializer. Amplitudes are exact monomials until a numeric `q` is needed.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use tensor_core::QMonomial;
use thiserror::Error;

/// Canonical configuration label, one byte per site.
pub type BasisLabel = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("cannot normalize the zero state")]
    ZeroState,
    #[error("splitter maps two basis states to the same (left, right) pair")]
    NonInjectiveSplit,
    #[error("support site {site} outside a configuration of {len} sites")]
    SupportOutOfRange { site: usize, len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Amplitude {
    Exact(QMonomial),
    Numeric(f64),
}

impl Amplitude {
    pub fn value(&self, q: f64) -> f64 {
        match self {
            Amplitude::Exact(m) => m.eval(q),
            Amplitude::Numeric(x) => *x,
        }
    }
}

/// `Σ_label a(label) |label⟩` evaluated at deformation `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedState {
    terms: BTreeMap<BasisLabel, Amplitude>,
    q: f64,
    normalized: bool,
}

impl WeightedState {
    pub fn from_exact(q: f64, terms: impl IntoIterator<Item = (BasisLabel, QMonomial)>) -> Self {
        let terms = terms.into_iter().filter(|(_, m)| !m.is_zero()).map(|(l, m)| (l, Amplitude::Exact(m))).collect();
        WeightedState { terms, q, normalized: false }
    }

    pub fn from_numeric(terms: impl IntoIterator<Item = (BasisLabel, f64)>) -> Self {
        let mut map: BTreeMap<BasisLabel, f64> = BTreeMap::new();
        for (l, a) in terms {
            *map.entry(l).or_default() += a;
        }
        let terms = map.into_iter().filter(|(_, a)| *a != 0.0).map(|(l, a)| (l, Amplitude::Numeric(a))).collect();
        WeightedState { terms, q: 1.0, normalized: false }
    }

    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn get(&self, label: &[u8]) -> Option<Amplitude> {
        self.terms.get(label).copied()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Amplitude)> {
        self.terms.iter()
    }
    /// Numeric amplitude of a label (0 if absent).
    pub fn value(&self, label: &[u8]) -> f64 {
        self.terms.get(label).map_or(0.0, |a| a.value(self.q))
    }
    pub fn numeric_terms(&self) -> impl Iterator<Item = (&BasisLabel, f64)> + '_ {
        self.terms.iter().map(|(l, a)| (l, a.value(self.q)))
    }

    pub fn norm(&self) -> f64 {
        self.numeric_terms().map(|(_, a)| a * a).sum::<f64>().sqrt()
    }

    /// Unit-norm numeric copy.
    pub fn normalize(&self) -> Result<WeightedState, StateError> {
        // Scale by the largest amplitude first so large exponents do not overflow.
        let max = self.numeric_terms().map(|(_, a)| a.abs()).fold(0.0, f64::max);
        if max == 0.0 || !max.is_finite() {
            return Err(StateError::ZeroState);
        }
        let n = self.numeric_terms().map(|(_, a)| (a / max).powi(2)).sum::<f64>().sqrt() * max;
        let terms = self.numeric_terms().map(|(l, a)| (l.clone(), Amplitude::Numeric(a / n))).collect();
        Ok(WeightedState { terms, q: self.q, normalized: true })
    }

    /// Real inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &WeightedState) -> f64 {
        self.numeric_terms().map(|(l, a)| a * other.value(l)).sum()
    }

    /// `self + c · other`, numeric.
    pub fn add_scaled(&self, other: &WeightedState, c: f64) -> WeightedState {
        let terms = self.numeric_terms().map(|(l, a)| (l.clone(), a)).chain(other.numeric_terms().map(|(l, a)| (l.clone(), c * a)));
        let mut s = WeightedState::from_numeric(terms);
        s.q = self.q;
        s
    }
}

/// Normalized Schmidt weights, descending, each tagged with the dominant left label.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    pub values: Vec<(BasisLabel, f64)>,
}

impl SchmidtSpectrum {
    pub fn probabilities(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.1).collect()
    }
    /// `−Σ p ln p`.
    pub fn entropy(&self) -> f64 {
        self.values.iter().filter(|v| v.1 > 0.0).map(|v| -v.1 * v.1.ln()).sum()
    }
}

pub fn normalize(state: &WeightedState) -> Result<WeightedState, StateError> {
    state.normalize()
}

/// Schmidt spectrum for the bipartition given by `split`.
pub fn schmidt_spectrum(
    state: &WeightedState,
    split: impl Fn(&[u8]) -> (BasisLabel, BasisLabel),
) -> Result<SchmidtSpectrum, StateError> {
    let state = state.normalize()?;
    let mut left: BTreeMap<BasisLabel, usize> = BTreeMap::new();
    let mut right: BTreeMap<BasisLabel, usize> = BTreeMap::new();
    let mut cells: HashMap<(usize, usize), f64> = HashMap::new();
    let split_terms: Vec<(BasisLabel, BasisLabel, f64)> =
        state.numeric_terms().map(|(l, a)| {
            let (x, y) = split(l);
            (x, y, a)
        }).collect();
    for (x, y, _) in &split_terms {
        let n = left.len();
        left.entry(x.clone()).or_insert(n);
        let n = right.len();
        right.entry(y.clone()).or_insert(n);
    }
    // Sorted order for determinism.
    for (i, v) in left.values_mut().enumerate() {
        *v = i;
    }
    for (i, v) in right.values_mut().enumerate() {
        *v = i;
    }
    for (x, y, a) in &split_terms {
        let key = (left[x], right[y]);
        if cells.insert(key, *a).is_some() {
            return Err(StateError::NonInjectiveSplit);
        }
    }
    let (nl, nr) = (left.len(), right.len());
    let mut m = DMatrix::<f64>::zeros(nl, nr);
    for ((i, j), a) in cells {
        m[(i, j)] = a;
    }
    let left_keys: Vec<BasisLabel> = left.into_keys().collect();
    let use_left = nl <= nr;
    let gram = if use_left { &m * m.transpose() } else { m.transpose() * &m };
    let eig = SymmetricEigen::new(gram);
    let trace: f64 = eig.eigenvalues.iter().map(|x| x.max(0.0)).sum();
    let mut values = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let p = lambda.max(0.0) / trace;
        if p <= 1e-15 {
            continue;
        }
        let vec = eig.eigenvectors.column(k).into_owned();
        let lvec = if use_left { vec } else { &m * vec };
        let mut best = 0;
        for i in 0..lvec.len() {
            if lvec[i].abs() > lvec[best].abs() + 1e-12 {
                best = i;
            }
        }
        values.push((left_keys[best].clone(), p));
    }
    let total: f64 = values.iter().map(|v| v.1).sum();
    for v in &mut values {
        v.1 /= total;
    }
    values.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    Ok(SchmidtSpectrum { values })
}

/// Sparse operator on a fixed list of sites: column (input local tuple) → rows.
#[derive(Clone, Debug, Default)]
pub struct LocalOp {
    identity: bool,
    columns: HashMap<Vec<u8>, Vec<(Vec<u8>, f64)>>,
}

impl LocalOp {
    pub fn identity() -> Self {
        LocalOp { identity: true, columns: HashMap::new() }
    }

    /// Adds `c |row⟩⟨col|`.
    pub fn add(&mut self, row: Vec<u8>, col: Vec<u8>, c: f64) {
        self.columns.entry(col).or_default().push((row, c));
    }

    /// `Σ_v |v⟩⟨v|` for the given local vectors.
    pub fn from_projectors(vectors: &[Vec<(Vec<u8>, f64)>]) -> Self {
        let mut op = LocalOp::default();
        for v in vectors {
            for (col, a) in v {
                for (row, b) in v {
                    op.add(row.clone(), col.clone(), a * b);
                }
            }
        }
        op
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Nonzero rows of the column for input tuple `local`.
    pub fn column(&self, local: &[u8]) -> &[(Vec<u8>, f64)] {
        self.columns.get(local).map_or(&[], |v| v.as_slice())
    }

    /// Diagonal operator `Σ c |t⟩⟨t|`.
    pub fn diagonal(entries: impl IntoIterator<Item = (Vec<u8>, f64)>) -> Self {
        let mut op = LocalOp::default();
        for (t, c) in entries {
            op.add(t.clone(), t, c);
        }
        op
    }
}

/// `op` acting on `support` sites of every basis label.
pub fn apply_local_operator(state: &WeightedState, support: &[usize], op: &LocalOp) -> Result<WeightedState, StateError> {
    let mut out: Vec<(BasisLabel, f64)> = Vec::new();
    for (label, a) in state.numeric_terms() {
        if let Some(&site) = support.iter().find(|&&s| s >= label.len()) {
            return Err(StateError::SupportOutOfRange { site, len: label.len() });
        }
        if op.identity {
            out.push((label.clone(), a));
            continue;
        }
        let local: Vec<u8> = support.iter().map(|&s| label[s]).collect();
        if let Some(rows) = op.columns.get(&local) {
            for (row, c) in rows {
                let mut l = label.clone();
                for (&s, &v) in support.iter().zip(row) {
                    l[s] = v;
                }
                out.push((l, a * c));
            }
        }
    }
    let mut s = WeightedState::from_numeric(out);
    s.q = state.q;
    Ok(s)
}

/// `Σ_v |v⟩⟨v|state⟩` over the projector vectors generated from each basis
/// label (vectors generated several times count once).
pub fn apply_projectors(state: &WeightedState, gen: impl Fn(&[u8]) -> Vec<Vec<(BasisLabel, f64)>>) -> WeightedState {
    let mut overlaps: BTreeMap<Vec<(BasisLabel, u64)>, (Vec<(BasisLabel, f64)>, f64)> = BTreeMap::new();
    for (label, _) in state.numeric_terms() {
        for v in gen(label) {
            let mut key: Vec<(BasisLabel, u64)> = v.iter().map(|(l, c)| (l.clone(), c.to_bits())).collect();
            key.sort();
            if overlaps.contains_key(&key) {
                continue;
            }
            let ov: f64 = v.iter().map(|(l, c)| c * state.value(l)).sum();
            overlaps.insert(key, (v, ov));
        }
    }
    let out = overlaps.into_values().flat_map(|(v, ov)| v.into_iter().map(move |(l, c)| (l, c * ov)));
    let mut s = WeightedState::from_numeric(out);
    s.q = state.q;
    s
}

/// Diagonal operator `Σ f(label) |label⟩⟨label|`.
pub fn apply_diagonal(state: &WeightedState, f: impl Fn(&[u8]) -> f64) -> WeightedState {
    let mut s = WeightedState::from_numeric(state.numeric_terms().map(|(l, a)| (l.clone(), a * f(l))));
    s.q = state.q;
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> BasisLabel {
        s.bytes().collect()
    }

    #[test]
    fn normalize_two_terms() {
        let s = WeightedState::from_numeric([(lab("UUDD"), 1.0), (lab("UDUD"), 1.0)]).normalize().unwrap();
        assert!((s.value(b"UUDD") - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(s.is_normalized());
    }

    #[test]
    fn normalize_exact_amplitudes() {
        let s = WeightedState::from_exact(2.0, [(lab("UUDD"), QMonomial::q_pow12(48)), (lab("UDUD"), QMonomial::q_pow12(24))]);
        let n = s.normalize().unwrap();
        assert!((n.value(b"UUDD") - 16.0 / 272f64.sqrt()).abs() < 1e-15);
        assert!((n.value(b"UDUD") - 4.0 / 272f64.sqrt()).abs() < 1e-15);
        let again = n.normalize().unwrap();
        for (l, a) in n.numeric_terms() {
            assert!((a - again.value(l)).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_state_rejected() {
        assert_eq!(WeightedState::from_numeric([]).normalize(), Err(StateError::ZeroState));
    }

    fn half(l: &[u8]) -> (BasisLabel, BasisLabel) {
        let h = l.len() / 2;
        (l[..h].to_vec(), l[h..].to_vec())
    }

    #[test]
    fn two_walk_spectrum() {
        let s = WeightedState::from_numeric([(lab("UUDD"), 1.0), (lab("UDUD"), 1.0)]);
        let sp = schmidt_spectrum(&s, half).unwrap();
        let p = sp.probabilities();
        assert_eq!(p.len(), 2);
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        assert!((sp.entropy() - 2f64.ln()).abs() < 1e-12);
        assert_eq!(sp.values[0].0, lab("UD"));
    }

    #[test]
    fn product_state_has_no_entanglement() {
        let s = WeightedState::from_numeric([(lab("ab"), 1.0), (lab("ac"), 2.0)]);
        let sp = schmidt_spectrum(&s, half).unwrap();
        assert_eq!(sp.values.len(), 1);
        assert!(sp.entropy().abs() < 1e-12);
    }

    #[test]
    fn non_injective_split_detected() {
        let s = WeightedState::from_numeric([(lab("ab"), 1.0), (lab("ba"), 2.0)]);
        assert_eq!(schmidt_spectrum(&s, |_| (vec![0], vec![0])), Err(StateError::NonInjectiveSplit));
    }

    #[test]
    fn local_operator_application() {
        let s = WeightedState::from_numeric([(lab("ab"), 1.0), (lab("bb"), 2.0)]);
        assert_eq!(apply_local_operator(&s, &[0], &LocalOp::identity()).unwrap(), s);
        let mut flip = LocalOp::default();
        flip.add(vec![b'b'], vec![b'a'], 1.0);
        let t = apply_local_operator(&s, &[0], &flip).unwrap();
        assert_eq!(t.value(b"bb"), 1.0);
        assert_eq!(t.len(), 1);
        assert!(matches!(apply_local_operator(&s, &[5], &flip), Err(StateError::SupportOutOfRange { .. })));
    }

    #[test]
    fn projector_family_counts_each_vector_once() {
        let v = vec![(lab("a"), 0.6), (lab("b"), 0.8)];
        let s = WeightedState::from_numeric([(lab("a"), 1.0), (lab("b"), 1.0)]);
        let out = apply_projectors(&s, |_| vec![v.clone()]);
        assert!((out.value(b"a") - 0.6 * 1.4).abs() < 1e-15);
    }
}

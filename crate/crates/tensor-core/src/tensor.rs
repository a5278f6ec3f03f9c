//! Sparse tensors keyed by symbol tuples.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::{LegAlphabet, QMonomial, TensorError, Weight};

/// A named leg over a shared alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Leg {
    pub name: String,
    pub alphabet: Arc<LegAlphabet>,
}

impl Leg {
    pub fn new(name: impl Into<String>, alphabet: Arc<LegAlphabet>) -> Self {
        Leg { name: name.into(), alphabet }
    }

    fn same_alphabet(&self, other: &Leg) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }
}

/// Index tuple → nonzero value. Entries are kept sorted for reproducibility.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseTensor<W = QMonomial> {
    legs: Vec<Leg>,
    entries: BTreeMap<Vec<u32>, W>,
}

impl<W: Weight> SparseTensor<W> {
    pub fn new(legs: Vec<Leg>) -> Self {
        SparseTensor { legs, entries: BTreeMap::new() }
    }

    /// The rank-0 tensor holding `w`.
    pub fn scalar(w: W) -> Self {
        let mut t = Self::new(Vec::new());
        if !w.is_zero() {
            t.entries.insert(Vec::new(), w);
        }
        t
    }

    /// `δ_{k,symbol}` on a single leg.
    pub fn delta(leg: Leg, symbol: u32, w: W) -> Result<Self, TensorError> {
        let mut t = Self::new(vec![leg]);
        t.insert(vec![symbol], w)?;
        Ok(t)
    }

    /// Stores an entry; the tuple must not be present yet.
    pub fn insert(&mut self, index: Vec<u32>, w: W) -> Result<(), TensorError> {
        self.check(&index)?;
        if w.is_zero() {
            return Err(TensorError::ZeroEntry);
        }
        self.entries.insert(index, w);
        Ok(())
    }

    /// Adds into an entry (exact sum rules apply).
    pub fn accumulate(&mut self, index: Vec<u32>, w: W) -> Result<(), TensorError> {
        self.check(&index)?;
        accumulate(&mut self.entries, index, w)
    }

    fn check(&self, index: &[u32]) -> Result<(), TensorError> {
        if index.len() != self.legs.len() {
            return Err(TensorError::Arity { got: index.len(), rank: self.legs.len() });
        }
        for (leg, &i) in self.legs.iter().zip(index) {
            if i as usize >= leg.alphabet.len() {
                return Err(TensorError::IndexOutOfRange {
                    leg: leg.name.clone(),
                    index: i,
                    size: leg.alphabet.len(),
                });
            }
        }
        Ok(())
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }
    pub fn rank(&self) -> usize {
        self.legs.len()
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn get(&self, index: &[u32]) -> Option<&W> {
        self.entries.get(index)
    }
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &W)> {
        self.entries.iter()
    }
    pub fn leg_position(&self, name: &str) -> Option<usize> {
        self.legs.iter().position(|l| l.name == name)
    }

    /// Value of a rank-0 tensor (zero if it has no entry).
    pub fn scalar_value(&self) -> Result<Option<W>, TensorError> {
        if self.rank() != 0 {
            return Err(TensorError::NotScalar(self.rank()));
        }
        Ok(self.entries.get(&Vec::new()).cloned())
    }

    /// Reorders legs: new leg `i` is old leg `order[i]`.
    pub fn permute(&self, order: &[usize]) -> SparseTensor<W> {
        let legs = order.iter().map(|&i| self.legs[i].clone()).collect();
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (order.iter().map(|&i| k[i]).collect(), v.clone()))
            .collect();
        SparseTensor { legs, entries }
    }

    /// Entry-wise conversion (e.g. exact → numeric); zero images are dropped.
    pub fn map_values<V: Weight>(&self, f: impl Fn(&W) -> V) -> SparseTensor<V> {
        let entries = self
            .entries
            .iter()
            .filter_map(|(k, v)| {
                let w = f(v);
                (!w.is_zero()).then(|| (k.clone(), w))
            })
            .collect();
        SparseTensor { legs: self.legs.clone(), entries }
    }

    /// Keeps the entries whose leg `leg` equals `symbol`.
    pub fn restrict(&self, leg: usize, symbol: u32) -> SparseTensor<W> {
        let entries =
            self.entries.iter().filter(|(k, _)| k[leg] == symbol).map(|(k, v)| (k.clone(), v.clone())).collect();
        SparseTensor { legs: self.legs.clone(), entries }
    }

    /// Distinct symbols used on each leg.
    pub fn support_sizes(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                let mut seen: Vec<u32> = self.entries.keys().map(|k| k[i]).collect();
                seen.sort_unstable();
                seen.dedup();
                seen.len()
            })
            .collect()
    }
}

fn accumulate<W: Weight>(map: &mut BTreeMap<Vec<u32>, W>, index: Vec<u32>, w: W) -> Result<(), TensorError> {
    match map.get_mut(&index) {
        Some(old) => {
            let sum = old.try_add(&w)?;
            if sum.is_zero() {
                map.remove(&index);
            } else {
                *old = sum;
            }
        }
        None => {
            if !w.is_zero() {
                map.insert(index, w);
            }
        }
    }
    Ok(())
}

/// Sums over the paired legs `(leg of a, leg of b)`. Result legs: unpaired legs of `a`, then of `b`.
pub fn contract_pair<W: Weight>(
    a: &SparseTensor<W>,
    b: &SparseTensor<W>,
    pairs: &[(usize, usize)],
) -> Result<SparseTensor<W>, TensorError> {
    for &(i, j) in pairs {
        let (la, lb) = match (a.legs.get(i), b.legs.get(j)) {
            (Some(la), Some(lb)) => (la, lb),
            _ => {
                return Err(TensorError::BadLeg {
                    node: usize::MAX,
                    leg: i.max(j),
                    problem: "paired leg index out of range".into(),
                })
            }
        };
        if !la.same_alphabet(lb) {
            return Err(TensorError::AlphabetMismatch { a: la.name.clone(), b: lb.name.clone() });
        }
    }
    let a_keep: Vec<usize> = (0..a.rank()).filter(|i| !pairs.iter().any(|p| p.0 == *i)).collect();
    let b_keep: Vec<usize> = (0..b.rank()).filter(|j| !pairs.iter().any(|p| p.1 == *j)).collect();
    let legs: Vec<Leg> =
        a_keep.iter().map(|&i| a.legs[i].clone()).chain(b_keep.iter().map(|&j| b.legs[j].clone())).collect();

    let mut index: HashMap<Vec<u32>, Vec<(Vec<u32>, &W)>> = HashMap::new();
    for (k, v) in &b.entries {
        let shared: Vec<u32> = pairs.iter().map(|p| k[p.1]).collect();
        let rest: Vec<u32> = b_keep.iter().map(|&j| k[j]).collect();
        index.entry(shared).or_default().push((rest, v));
    }
    let mut entries = BTreeMap::new();
    for (k, v) in &a.entries {
        let shared: Vec<u32> = pairs.iter().map(|p| k[p.0]).collect();
        let Some(matches) = index.get(&shared) else { continue };
        let head: Vec<u32> = a_keep.iter().map(|&i| k[i]).collect();
        for (rest, w) in matches {
            let mut key = head.clone();
            key.extend_from_slice(rest);
            accumulate(&mut entries, key, v.mul(w))?;
        }
    }
    Ok(SparseTensor { legs, entries })
}

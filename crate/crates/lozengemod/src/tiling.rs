//! Lozenge tilings, their height functions, de Bruijn tracks and colourings.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use statevec::WeightedState;
use tensor_core::QMonomial;

use crate::domain::{height_step, TriDomain, Vertex};
use crate::{check_colors_count, LozengeError};

/// Cap on raw tilings produced by [`tilings`].
const MAX_TILINGS: usize = 1 << 18;
/// Cap on coloured ground-basis states produced by [`enumerate_ground_basis`].
pub const MAX_BASIS: usize = 1 << 20;

/// A lozenge tiling with one colour per (lozenge, de Bruijn line).
///
/// `diag[i]` is the class of the edge face `i` shares with its partner;
/// `colors[i][k]` is the colour of the class-`k` line through that lozenge
/// (`0` in the diagonal slot). Both faces of a lozenge carry the same colours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LozengeTiling {
    pub diag: Vec<u8>,
    pub colors: Vec<[u8; 3]>,
}

impl LozengeTiling {
    /// Every line coloured 1.
    pub fn uncolored(diag: Vec<u8>) -> Self {
        let colors = diag.iter().map(|&m| std::array::from_fn(|k| u8::from(k as u8 != m))).collect();
        LozengeTiling { diag, colors }
    }

    pub fn partner(&self, d: &TriDomain, i: usize) -> Option<usize> {
        d.index_of(&d.faces()[i].across(*self.diag.get(i)?))
    }

    /// Lozenges as `(smaller face, larger face)`.
    pub fn lozenges(&self, d: &TriDomain) -> Vec<(usize, usize)> {
        (0..self.diag.len()).filter_map(|i| self.partner(d, i).filter(|&j| j > i).map(|j| (i, j))).collect()
    }

    /// Dimer structure only (ignores colours).
    pub fn check_matching(&self, d: &TriDomain) -> Result<(), LozengeError> {
        if self.diag.len() != d.len() || self.colors.len() != d.len() {
            return Err(LozengeError::Matching(format!("{} faces expected", d.len())));
        }
        for i in 0..d.len() {
            if self.diag[i] > 2 {
                return Err(LozengeError::Matching(format!("edge class {} at face {i}", self.diag[i])));
            }
            match self.partner(d, i) {
                Some(j) if self.diag[j] == self.diag[i] => {}
                _ => return Err(LozengeError::Matching(format!("face {} has no partner", d.faces()[i]))),
            }
        }
        Ok(())
    }

    /// Matching plus colour bookkeeping (range, diagonal slot, agreement within lozenges).
    pub fn validate(&self, d: &TriDomain, s: u8) -> Result<(), LozengeError> {
        check_colors_count(s)?;
        self.check_matching(d)?;
        for i in 0..d.len() {
            let j = self.partner(d, i).expect("checked");
            if self.colors[i] != self.colors[j] {
                return Err(LozengeError::Matching(format!("faces {i} and {j} of one lozenge disagree on colours")));
            }
            for k in 0..3u8 {
                let c = self.colors[i][k as usize];
                if k == self.diag[i] {
                    if c != 0 {
                        return Err(LozengeError::Matching(format!("colour on the diagonal slot of face {i}")));
                    }
                } else if c == 0 || c > s {
                    return Err(LozengeError::ColorOutOfRange { color: c, s });
                }
            }
        }
        Ok(())
    }

    /// One byte per face: `diag·s² + (c_a − 1)·s + (c_b − 1)` with `a < b` the
    /// two non-diagonal classes.
    pub fn label(&self, s: u8) -> Vec<u8> {
        self.diag
            .iter()
            .zip(&self.colors)
            .map(|(&m, c)| {
                let [a, b] = other_classes(m);
                m * s * s + (c[a as usize].max(1) - 1) * s + (c[b as usize].max(1) - 1)
            })
            .collect()
    }

    pub fn from_label(d: &TriDomain, s: u8, label: &[u8]) -> Result<Self, LozengeError> {
        check_colors_count(s)?;
        if label.len() != d.len() {
            return Err(LozengeError::BadLabel(format!("{} bytes for {} faces", label.len(), d.len())));
        }
        let mut diag = Vec::with_capacity(label.len());
        let mut colors = Vec::with_capacity(label.len());
        for &x in label {
            let m = x / (s * s);
            if m > 2 {
                return Err(LozengeError::BadLabel(format!("byte {x}")));
            }
            let [a, b] = other_classes(m);
            let mut c = [0u8; 3];
            c[a as usize] = (x % (s * s)) / s + 1;
            c[b as usize] = x % s + 1;
            diag.push(m);
            colors.push(c);
        }
        let t = LozengeTiling { diag, colors };
        t.validate(d, s)?;
        Ok(t)
    }
}

pub(crate) fn other_classes(m: u8) -> [u8; 2] {
    match m {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// Every lozenge tiling of `d`, as diagonal-class vectors, in lexicographic order.
pub fn tilings(d: &TriDomain) -> Result<Vec<Vec<u8>>, LozengeError> {
    fn rec(d: &TriDomain, diag: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) -> Result<(), LozengeError> {
        let Some(i) = diag.iter().position(|&m| m == u8::MAX) else {
            if out.len() >= MAX_TILINGS {
                return Err(LozengeError::TooLarge(format!("more than {MAX_TILINGS} tilings")));
            }
            out.push(diag.clone());
            return Ok(());
        };
        for k in 0..3u8 {
            if let Some(j) = d.index_of(&d.faces()[i].across(k)) {
                if diag[j] == u8::MAX {
                    diag[i] = k;
                    diag[j] = k;
                    rec(d, diag, out)?;
                    diag[i] = u8::MAX;
                    diag[j] = u8::MAX;
                }
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(d, &mut vec![u8::MAX; d.len()], &mut out)?;
    Ok(out)
}

/// Integer heights `h = φ + ½` on every vertex of a tiled domain.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightFieldTri {
    h: BTreeMap<Vertex, i64>,
}

impl HeightFieldTri {
    pub fn get(&self, v: Vertex) -> i64 {
        self.h[&v]
    }

    pub fn phi(&self, v: Vertex) -> Ratio<i64> {
        Ratio::from_integer(self.h[&v]) - Ratio::new(1, 2)
    }

    pub fn min(&self) -> i64 {
        *self.h.values().min().expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &i64)> {
        self.h.iter()
    }

    /// Spin height of a face: the lowest of its corners (integer convention).
    pub fn spin_height(&self, d: &TriDomain, face: usize) -> i64 {
        d.faces()[face].verts().iter().map(|v| self.h[v]).min().expect("three corners")
    }

    /// `h_u + h_v` for an edge (twice its midpoint height, plus one).
    pub fn edge_sum(&self, e: [Vertex; 2]) -> i64 {
        self.h[&e[0]] + self.h[&e[1]]
    }

    /// `12 Σ_v φ_v`.
    pub fn volume12(&self) -> i64 {
        12 * self.h.values().sum::<i64>() - 6 * self.h.len() as i64
    }

    pub fn volume(&self) -> Ratio<i64> {
        Ratio::new(self.volume12(), 12)
    }
}

/// Heights of a tiling, anchored at the domain's boundary values.
pub fn height_field(d: &TriDomain, diag: &[u8]) -> Result<HeightFieldTri, LozengeError> {
    LozengeTiling::uncolored(diag.to_vec()).check_matching(d)?;
    let mut adj: HashMap<Vertex, Vec<(Vertex, i64)>> = HashMap::new();
    for (i, t) in d.faces().iter().enumerate() {
        for k in 0..3u8 {
            let [u, v] = t.edge(k);
            let dg = diag[i] == k;
            adj.entry(u).or_default().push((v, height_step(u, v, dg)));
            adj.entry(v).or_default().push((u, height_step(v, u, dg)));
        }
    }
    let (&root, &h0) = d.boundary_heights().iter().next().ok_or(LozengeError::Heights("no boundary".into()))?;
    let mut h = BTreeMap::from([(root, h0)]);
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &(v, dh) in &adj[&u] {
            match h.get(&v) {
                Some(&hv) if hv != h[&u] + dh => return Err(LozengeError::Heights(format!("inconsistent at {v:?}"))),
                Some(_) => {}
                None => {
                    h.insert(v, h[&u] + dh);
                    stack.push(v);
                }
            }
        }
    }
    for (v, &hb) in d.boundary_heights() {
        if h[v] != hb {
            return Err(LozengeError::Heights(format!("boundary mismatch at {v:?}")));
        }
    }
    Ok(HeightFieldTri { h })
}

/// Tilings compatible with the boundary heights and with every height `≥ 0`.
pub fn ground_tilings(d: &TriDomain) -> Result<Vec<Vec<u8>>, LozengeError> {
    Ok(tilings(d)?.into_iter().filter(|t| height_field(d, t).is_ok_and(|h| h.min() >= 0)).collect())
}

/// A de Bruijn line of class `class`: the lozenges it crosses, boundary to
/// boundary, as `(entry face, exit face)`, and the edge sums `h_u + h_v` of
/// the `steps + 1` class-`class` edges it passes.
#[derive(Clone, Debug, PartialEq)]
pub struct Track {
    pub class: u8,
    pub lozenges: Vec<(usize, usize)>,
    pub heights: Vec<i64>,
}

/// All de Bruijn lines of a tiling, each started at its first boundary end in face order.
pub fn tracks(d: &TriDomain, diag: &[u8], hf: &HeightFieldTri) -> Result<Vec<Track>, LozengeError> {
    let t = LozengeTiling::uncolored(diag.to_vec());
    t.check_matching(d)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, f) in d.faces().iter().enumerate() {
        for k in 0..3u8 {
            if d.contains(&f.across(k)) || seen.contains(&(i, k)) {
                continue;
            }
            let mut lozenges = Vec::new();
            let mut heights = vec![hf.edge_sum(f.edge(k))];
            let mut cur = i;
            loop {
                if diag[cur] == k {
                    return Err(LozengeError::Matching(format!("line {k} runs along a diagonal at face {cur}")));
                }
                let p = t.partner(d, cur).expect("matched");
                lozenges.push((cur, p));
                heights.push(hf.edge_sum(d.faces()[p].edge(k)));
                match d.index_of(&d.faces()[p].across(k)) {
                    Some(n) => cur = n,
                    None => {
                        seen.insert((p, k));
                        break;
                    }
                }
            }
            seen.insert((i, k));
            out.push(Track { class: k, lozenges, heights });
        }
    }
    Ok(out)
}

/// Matched (up, down) step pairs of a height sequence; steps that find no
/// partner are returned separately.
pub fn matched_pairs(heights: &[i64]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut stack = Vec::new();
    let mut pairs = Vec::new();
    let mut single = Vec::new();
    for i in 0..heights.len().saturating_sub(1) {
        if heights[i + 1] > heights[i] {
            stack.push(i);
        } else {
            match stack.pop() {
                Some(j) => pairs.push((j, i)),
                None => single.push(i),
            }
        }
    }
    single.extend(stack);
    single.sort();
    (pairs, single)
}

/// Colour slots `(face, class)` that must share one colour; one group per
/// matched pair (or unmatched step). Slots use the smaller face of each lozenge.
pub fn color_groups(d: &TriDomain, diag: &[u8]) -> Result<Vec<Vec<(usize, u8)>>, LozengeError> {
    let hf = height_field(d, diag)?;
    let mut groups = Vec::new();
    for tr in tracks(d, diag, &hf)? {
        let slot = |i: usize| {
            let (a, b) = tr.lozenges[i];
            (a.min(b), tr.class)
        };
        let (pairs, single) = matched_pairs(&tr.heights);
        groups.extend(pairs.into_iter().map(|(a, b)| vec![slot(a), slot(b)]));
        groups.extend(single.into_iter().map(|a| vec![slot(a)]));
    }
    groups.sort();
    Ok(groups)
}

/// `s^{#groups}`, saturating.
pub fn colorings_count(d: &TriDomain, diag: &[u8], s: u8) -> Result<u128, LozengeError> {
    let g = color_groups(d, diag)?.len() as u32;
    Ok((s as u128).checked_pow(g).unwrap_or(u128::MAX))
}

/// The `n`-th valid colouring (mixed radix, last group fastest).
pub fn nth_coloring(d: &TriDomain, diag: &[u8], groups: &[Vec<(usize, u8)>], s: u8, mut n: u128) -> LozengeTiling {
    let mut t = LozengeTiling::uncolored(diag.to_vec());
    for g in groups.iter().rev() {
        let c = (n % s as u128) as u8 + 1;
        n /= s as u128;
        for &(f, k) in g {
            t.colors[f][k as usize] = c;
            let p = t.partner(d, f).expect("matched");
            t.colors[p][k as usize] = c;
        }
    }
    t
}

/// Matched steps carry equal colours along every line.
pub fn check_colors(d: &TriDomain, t: &LozengeTiling) -> Result<bool, LozengeError> {
    Ok(color_groups(d, &t.diag)?
        .iter()
        .all(|g| g.iter().all(|&(f, k)| t.colors[f][k as usize] == t.colors[g[0].0][g[0].1 as usize])))
}

pub fn is_ground_basis(d: &TriDomain, s: u8, t: &LozengeTiling) -> bool {
    t.validate(d, s).is_ok()
        && height_field(d, &t.diag).is_ok_and(|h| h.min() >= 0)
        && check_colors(d, t).unwrap_or(false)
}

/// All coloured ground-basis states, tiling by tiling.
pub fn enumerate_ground_basis(d: &TriDomain, s: u8) -> Result<Vec<LozengeTiling>, LozengeError> {
    check_colors_count(s)?;
    let mut out = Vec::new();
    for diag in ground_tilings(d)? {
        let groups = color_groups(d, &diag)?;
        let n = (s as u128).checked_pow(groups.len() as u32).unwrap_or(u128::MAX);
        if n > (MAX_BASIS - out.len()) as u128 {
            return Err(LozengeError::TooLarge(format!("more than {MAX_BASIS} coloured states")));
        }
        out.extend((0..n).map(|k| nth_coloring(d, &diag, &groups, s, k)));
    }
    Ok(out)
}

/// `(label, q^{V})` for every ground-basis state.
pub fn ground_state_exact(d: &TriDomain, s: u8) -> Result<Vec<(Vec<u8>, QMonomial)>, LozengeError> {
    let mut vols = HashMap::new();
    let mut out = Vec::new();
    for t in enumerate_ground_basis(d, s)? {
        let v = match vols.get(&t.diag) {
            Some(&v) => v,
            None => {
                let v = height_field(d, &t.diag)?.volume12();
                vols.insert(t.diag.clone(), v);
                v
            }
        };
        out.push((t.label(s), QMonomial::q_pow12(v)));
    }
    Ok(out)
}

pub fn ground_state(d: &TriDomain, s: u8, q: f64) -> Result<WeightedState, LozengeError> {
    Ok(WeightedState::from_exact(q, ground_state_exact(d, s)?).normalize()?)
}

/// Diagonal class forced on faces with a boundary edge: of the two ways to
/// place the apex height, the one that keeps it non-negative (when only one does).
pub fn boundary_lozenges(d: &TriDomain) -> BTreeMap<usize, u8> {
    let hb = d.boundary_heights();
    let mut out = BTreeMap::new();
    for (i, k) in d.boundary_edges() {
        let t = d.faces()[i];
        let [u, v] = t.edge(k);
        let w = t.apex(k);
        let cls = |x: Vertex| crate::domain::edge_class(x, w).expect("triangle edge");
        // diagonal on u–w: w reached from v by an ordinary step, and vice versa
        let opts = [(cls(u), hb[&v] + height_step(v, w, false)), (cls(v), hb[&u] + height_step(u, w, false))];
        let ok: Vec<u8> = opts.iter().filter(|o| o.1 >= 0).map(|o| o.0).collect();
        if ok.len() == 1 {
            out.entry(i).or_insert(ok[0]);
        }
    }
    out
}

/// Number of boundary edges whose face violates its forced lozenge.
pub fn boundary_energy(d: &TriDomain, forced: &BTreeMap<usize, u8>, diag: &[u8]) -> usize {
    d.boundary_edges().iter().filter(|(i, _)| forced.get(i).is_some_and(|&m| diag[*i] != m)).count()
}

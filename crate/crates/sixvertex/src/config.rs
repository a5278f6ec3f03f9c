//! Spin configurations on the L×L lattice, their height fields and the ground basis.
//!
//! `Sʰ[x][y]` lives at `(x, y+½)` for `x ∈ 0..L`, `y ∈ 0..L−1`; `Sᵛ[x][y]` at
//! `(x+½, y)` for `x ∈ 0..L−1`, `y ∈ 0..L`. Heights sit on dual points
//! `(x+½, y+½)`, addressed by `(x, y) ∈ [−1, L−1]²`; the outer ring is fixed.

use std::collections::BTreeMap;

use fredkin1d::{is_ground_basis as chain_ok, matching, ColoredSpin, SpinChain};
use serde::{Deserialize, Serialize};
use statevec::{BasisLabel, WeightedState};
use tensor_core::QMonomial;

use crate::SixVertexError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SixVertexConfig {
    l: usize,
    s: u8,
    h: Vec<ColoredSpin>,
    v: Vec<ColoredSpin>,
}

/// Which sublattice a spin belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Kind {
    H,
    V,
}

/// Address of a physical spin.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Site {
    pub kind: Kind,
    pub x: usize,
    pub y: usize,
}

impl Site {
    pub fn h(x: usize, y: usize) -> Self {
        Site { kind: Kind::H, x, y }
    }
    pub fn v(x: usize, y: usize) -> Self {
        Site { kind: Kind::V, x, y }
    }
    /// Chain index and position along it.
    pub fn chain_pos(&self) -> (usize, usize) {
        match self.kind {
            Kind::H => (self.y, self.x),
            Kind::V => (self.x, self.y),
        }
    }
    /// The two adjacent dual points, lower coordinate first.
    pub fn duals(&self) -> [(i64, i64); 2] {
        let (x, y) = (self.x as i64, self.y as i64);
        match self.kind {
            Kind::H => [(x - 1, y), (x, y)],
            Kind::V => [(x, y - 1), (x, y)],
        }
    }
}

pub fn check_size(l: usize, s: u8) -> Result<(), SixVertexError> {
    if l < 2 || l % 2 != 0 {
        return Err(SixVertexError::BadSize(l));
    }
    if s == 0 {
        return Err(SixVertexError::BadColors(s));
    }
    Ok(())
}

/// Fixed height of an outer-ring dual point.
pub fn ring_height(x: i64, y: i64) -> i64 {
    (x + y).rem_euclid(2)
}

/// Does chain `j` carry virtual raising spins at its ends?
pub fn chain_raised(j: usize) -> bool {
    j % 2 == 0
}

impl SixVertexConfig {
    pub fn new(l: usize, s: u8, h: Vec<ColoredSpin>, v: Vec<ColoredSpin>) -> Result<Self, SixVertexError> {
        check_size(l, s)?;
        if h.len() != l * (l - 1) || v.len() != l * (l - 1) {
            return Err(SixVertexError::Shape(format!("expected {} spins per sublattice", l * (l - 1))));
        }
        if let Some(sp) = h.iter().chain(&v).find(|sp| sp.color == 0 || sp.color > s) {
            return Err(SixVertexError::ColorOutOfRange { color: sp.color, s });
        }
        Ok(SixVertexConfig { l, s, h, v })
    }

    pub fn l(&self) -> usize {
        self.l
    }
    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn sites(l: usize) -> impl Iterator<Item = Site> {
        let hs = (0..l).flat_map(move |x| (0..l - 1).map(move |y| Site::h(x, y)));
        let vs = (0..l - 1).flat_map(move |x| (0..l).map(move |y| Site::v(x, y)));
        hs.chain(vs)
    }

    /// Position of a site in the basis label (all `Sʰ` x-major, then all `Sᵛ`).
    pub fn site_index(l: usize, site: Site) -> usize {
        match site.kind {
            Kind::H => site.x * (l - 1) + site.y,
            Kind::V => l * (l - 1) + site.x * l + site.y,
        }
    }

    pub fn get(&self, site: Site) -> ColoredSpin {
        match site.kind {
            Kind::H => self.h[site.x * (self.l - 1) + site.y],
            Kind::V => self.v[site.x * self.l + site.y],
        }
    }

    pub fn set(&mut self, site: Site, sp: ColoredSpin) {
        let l = self.l;
        match site.kind {
            Kind::H => self.h[site.x * (l - 1) + site.y] = sp,
            Kind::V => self.v[site.x * l + site.y] = sp,
        }
    }

    /// `2Sʰ_{x,y}`, including the fictitious rows `y = −1` and `y = L−1`.
    pub fn sh2(&self, x: i64, y: i64) -> i64 {
        let l = self.l as i64;
        if y < 0 || y >= l - 1 {
            ring_height(x, y) - ring_height(x - 1, y)
        } else if self.get(Site::h(x as usize, y as usize)).up {
            1
        } else {
            -1
        }
    }

    /// `2Sᵛ_{x,y}`, including the fictitious columns `x = −1` and `x = L−1`.
    pub fn sv2(&self, x: i64, y: i64) -> i64 {
        let l = self.l as i64;
        if x < 0 || x >= l - 1 {
            ring_height(x, y) - ring_height(x, y - 1)
        } else if self.get(Site::v(x as usize, y as usize)).up {
            1
        } else {
            -1
        }
    }

    /// Physical spins of chain `j` (rows for `H`, columns for `V`).
    pub fn chain(&self, kind: Kind, j: usize) -> Vec<ColoredSpin> {
        (0..self.l)
            .map(|i| match kind {
                Kind::H => self.get(Site::h(i, j)),
                Kind::V => self.get(Site::v(j, i)),
            })
            .collect()
    }

    /// Chain with its virtual raising spins (colour 1) when it has them.
    pub fn extended_chain(&self, kind: Kind, j: usize) -> Vec<ColoredSpin> {
        let mut c = self.chain(kind, j);
        if chain_raised(j) {
            c.insert(0, ColoredSpin::up(1));
            c.push(ColoredSpin::down(1));
        }
        c
    }

    pub fn label(&self) -> BasisLabel {
        self.h.iter().chain(&self.v).map(|sp| sp.code()).collect()
    }

    pub fn from_label(l: usize, s: u8, label: &[u8]) -> Result<Self, SixVertexError> {
        check_size(l, s)?;
        let n = l * (l - 1);
        if label.len() != 2 * n {
            return Err(SixVertexError::Shape(format!("label of length {} for L={l}", label.len())));
        }
        let spins: Vec<ColoredSpin> = label.iter().map(|&c| ColoredSpin::from_code(c)).collect();
        Self::new(l, s, spins[..n].to_vec(), spins[n..].to_vec())
    }

    /// Same configuration with every colour set to 1.
    pub fn uncolored(&self) -> Self {
        let strip = |v: &[ColoredSpin]| v.iter().map(|sp| ColoredSpin { up: sp.up, color: 1 }).collect();
        SixVertexConfig { l: self.l, s: self.s, h: strip(&self.h), v: strip(&self.v) }
    }
}

/// Ice-rule violation at vertex `(x, y)`.
fn vertex_charge(c: &SixVertexConfig, x: i64, y: i64) -> i64 {
    c.sh2(x, y - 1) - c.sh2(x, y) - c.sv2(x - 1, y) + c.sv2(x, y)
}

pub fn ice_rule_ok(c: &SixVertexConfig) -> bool {
    ice_violations(c).is_empty()
}

/// Vertices where the ice rule fails.
pub fn ice_violations(c: &SixVertexConfig) -> Vec<(usize, usize)> {
    let l = c.l as i64;
    let mut out = Vec::new();
    for x in 0..l {
        for y in 0..l {
            if vertex_charge(c, x, y) != 0 {
                out.push((x as usize, y as usize));
            }
        }
    }
    out
}

/// φ on all dual points `(x, y) ∈ [−1, L−1]²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightField2D {
    l: usize,
    phi: Vec<i64>,
}

impl HeightField2D {
    pub fn get(&self, x: i64, y: i64) -> i64 {
        let w = self.l as i64 + 1;
        self.phi[((x + 1) * w + (y + 1)) as usize]
    }
    fn set(&mut self, x: i64, y: i64, v: i64) {
        let w = self.l as i64 + 1;
        self.phi[((x + 1) * w + (y + 1)) as usize] = v;
    }
    /// Interior points `x, y ∈ [0, L−2]`.
    pub fn interior(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        let m = self.l as i64 - 1;
        (0..m).flat_map(move |x| (0..m).map(move |y| ((x, y), self.get(x, y))))
    }
    pub fn min_interior(&self) -> i64 {
        self.interior().map(|(_, v)| v).min().unwrap_or(0)
    }
    pub fn volume(&self) -> i64 {
        self.interior().map(|(_, v)| v).sum()
    }
    /// Height of a spin: the lower of its two dual points.
    pub fn spin_height(&self, site: Site) -> i64 {
        let [a, b] = site.duals();
        self.get(a.0, a.1).min(self.get(b.0, b.1))
    }
}

/// Integrates the height relations from the fixed ring; every relation is
/// then re-checked, so a returned field is path-independent.
pub fn height_field(c: &SixVertexConfig) -> Result<HeightField2D, SixVertexError> {
    let l = c.l as i64;
    let mut f = HeightField2D { l: c.l, phi: vec![0; ((l + 1) * (l + 1)) as usize] };
    for x in -1..l {
        for y in -1..l {
            if x < 0 || y < 0 || x == l - 1 || y == l - 1 {
                f.set(x, y, ring_height(x, y));
            }
        }
    }
    for y in 0..l - 1 {
        for x in 0..l - 1 {
            let v = f.get(x - 1, y) + c.sh2(x, y);
            f.set(x, y, v);
        }
    }
    for x in 0..l {
        for y in -1..l {
            if f.get(x, y) - f.get(x - 1, y) != c.sh2(x, y) {
                return Err(SixVertexError::IceRule { x: x as usize, y: (y + 1) as usize });
            }
        }
    }
    for x in -1..l {
        for y in 0..l {
            if f.get(x, y) - f.get(x, y - 1) != c.sv2(x, y) {
                return Err(SixVertexError::IceRule { x: (x + 1) as usize, y: y as usize });
            }
        }
    }
    Ok(f)
}

pub fn volume(c: &SixVertexConfig) -> Result<i64, SixVertexError> {
    Ok(height_field(c)?.volume())
}

/// Expectation of the boundary term, constant `4L − 6` included.
pub fn boundary_energy(c: &SixVertexConfig) -> f64 {
    let l = c.l as i64;
    let (sh, sv) = (|x, y| c.sh2(x, y) as f64 / 2.0, |x, y| c.sv2(x, y) as f64 / 2.0);
    let mut e = (4 * l - 6) as f64;
    for y in 0..l - 1 {
        e += sh(l - 1, y) - sh(0, y);
    }
    for x in 1..l - 1 {
        let sign = if x % 2 == 1 { 1.0 } else { -1.0 };
        e += sign * (sh(x, 0) + sh(x, l - 2));
    }
    for x in 0..l - 1 {
        e += sv(x, l - 1) - sv(x, 0);
    }
    for y in 1..l - 1 {
        let sign = if y % 2 == 1 { 1.0 } else { -1.0 };
        e += sign * (sv(0, y) + sv(l - 2, y));
    }
    e
}

pub fn is_ground_basis(c: &SixVertexConfig) -> bool {
    let Ok(f) = height_field(c) else {
        return false;
    };
    if f.min_interior() < 0 || boundary_energy(c) != 0.0 {
        return false;
    }
    [Kind::H, Kind::V].iter().all(|&k| {
        (0..c.l - 1).all(|j| {
            chain_ok(&SpinChain { spins: c.extended_chain(k, j), s: c.s })
        })
    })
}

/// Uncoloured ground-basis configurations (colour 1 everywhere), sorted by label.
pub fn enumerate_surfaces(l: usize) -> Result<Vec<SixVertexConfig>, SixVertexError> {
    check_size(l, 1)?;
    if l > 6 {
        return Err(SixVertexError::TooLarge(l));
    }
    let li = l as i64;
    let m = li - 1;
    let mut f = HeightField2D { l, phi: vec![0; ((li + 1) * (li + 1)) as usize] };
    for x in -1..li {
        for y in -1..li {
            f.set(x, y, ring_height(x, y));
        }
    }
    let mut out = Vec::new();
    let pts: Vec<(i64, i64)> = (0..m).flat_map(|y| (0..m).map(move |x| (x, y))).collect();
    fill(&pts, 0, &mut f, &mut out);
    out.sort_by_key(|c| c.label());
    Ok(out)
}

fn fill(pts: &[(i64, i64)], k: usize, f: &mut HeightField2D, out: &mut Vec<SixVertexConfig>) {
    if k == pts.len() {
        let c = from_heights(f);
        if boundary_energy(&c) == 0.0 {
            out.push(c);
        }
        return;
    }
    let (x, y) = pts[k];
    let m = f.l as i64 - 1;
    let left = f.get(x - 1, y);
    for v in [left - 1, left + 1] {
        if v < 0 || (v - f.get(x, y - 1)).abs() != 1 {
            continue;
        }
        if x == m - 1 && (v - f.get(m, y)).abs() != 1 {
            continue;
        }
        if y == m - 1 && (v - f.get(x, m)).abs() != 1 {
            continue;
        }
        f.set(x, y, v);
        fill(pts, k + 1, f, out);
    }
}

fn from_heights(f: &HeightField2D) -> SixVertexConfig {
    let l = f.l;
    let spin = |up| if up { ColoredSpin::up(1) } else { ColoredSpin::down(1) };
    let mut c = SixVertexConfig {
        l,
        s: 1,
        h: vec![ColoredSpin::up(1); l * (l - 1)],
        v: vec![ColoredSpin::up(1); l * (l - 1)],
    };
    for site in SixVertexConfig::sites(l) {
        let [a, b] = site.duals();
        c.set(site, spin(f.get(b.0, b.1) > f.get(a.0, a.1)));
    }
    c
}

/// Matched pairs of physical spins in every chain, as site pairs.
pub fn physical_pairs(c: &SixVertexConfig) -> Vec<(Site, Site)> {
    let mut out = Vec::new();
    for kind in [Kind::H, Kind::V] {
        for j in 0..c.l - 1 {
            let ext = c.extended_chain(kind, j);
            let off = usize::from(chain_raised(j));
            let m = matching(&ext);
            for (i, p) in m.iter().enumerate() {
                if let Some(p) = *p {
                    if ext[i].up && i >= off && p >= off && i - off < c.l && p - off < c.l {
                        let site = |pos: usize| match kind {
                            Kind::H => Site::h(pos, j),
                            Kind::V => Site::v(j, pos),
                        };
                        out.push((site(i - off), site(p - off)));
                    }
                }
            }
        }
    }
    out
}

/// Every colouring of an uncoloured surface with `s` colours.
pub fn colorings(surface: &SixVertexConfig, s: u8) -> Vec<SixVertexConfig> {
    let pairs = physical_pairs(surface);
    let mut base = surface.uncolored();
    base.s = s;
    let mut out = vec![base];
    for (a, b) in pairs {
        out = out
            .into_iter()
            .flat_map(|c| {
                (1..=s).map(move |col| {
                    let mut d = c.clone();
                    let (sa, sb) = (d.get(a), d.get(b));
                    d.set(a, ColoredSpin { up: sa.up, color: col });
                    d.set(b, ColoredSpin { up: sb.up, color: col });
                    d
                })
            })
            .collect();
    }
    out
}

/// All coloured ground-basis configurations, sorted by label.
pub fn enumerate_ground_basis(l: usize, s: u8) -> Result<Vec<SixVertexConfig>, SixVertexError> {
    check_size(l, s)?;
    let mut out: Vec<SixVertexConfig> = enumerate_surfaces(l)?.iter().flat_map(|c| colorings(c, s)).collect();
    out.sort_by_key(|c| c.label());
    Ok(out)
}

/// `Σ q^{V} |S⟩` with exact amplitudes (unnormalized).
pub fn ground_state_exact(l: usize, s: u8, q: f64) -> Result<WeightedState, SixVertexError> {
    let basis = enumerate_ground_basis(l, s)?;
    let mut terms = Vec::with_capacity(basis.len());
    for c in &basis {
        terms.push((c.label(), QMonomial::q_pow12(12 * volume(c)?)));
    }
    Ok(WeightedState::from_exact(q, terms))
}

pub fn ground_state(l: usize, s: u8, q: f64) -> Result<WeightedState, SixVertexError> {
    Ok(ground_state_exact(l, s, q)?.normalize()?)
}

/// JSON form: `Sh[x][y]`, `Sv[x][y]` are ±0.5.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    #[serde(rename = "L")]
    pub l: usize,
    pub s: u8,
    #[serde(rename = "Sh")]
    pub sh: Vec<Vec<f64>>,
    #[serde(rename = "Sv")]
    pub sv: Vec<Vec<f64>>,
    pub colors_h: Vec<Vec<u8>>,
    pub colors_v: Vec<Vec<u8>>,
}

impl SixVertexConfig {
    pub fn to_json(&self) -> String {
        let l = self.l;
        let grid = |kind: Kind, nx: usize, ny: usize| -> (Vec<Vec<f64>>, Vec<Vec<u8>>) {
            let site = |x, y| Site { kind, x, y };
            let spins: Vec<Vec<ColoredSpin>> =
                (0..nx).map(|x| (0..ny).map(|y| self.get(site(x, y))).collect()).collect();
            (
                spins.iter().map(|r| r.iter().map(|sp| if sp.up { 0.5 } else { -0.5 }).collect()).collect(),
                spins.iter().map(|r| r.iter().map(|sp| sp.color).collect()).collect(),
            )
        };
        let (sh, colors_h) = grid(Kind::H, l, l - 1);
        let (sv, colors_v) = grid(Kind::V, l - 1, l);
        serde_json::to_string(&ConfigJson { l, s: self.s, sh, sv, colors_h, colors_v }).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, SixVertexError> {
        let j: ConfigJson = serde_json::from_str(text).map_err(|e| SixVertexError::Json(e.to_string()))?;
        check_size(j.l, j.s)?;
        if j.l > 64 {
            return Err(SixVertexError::TooLarge(j.l));
        }
        let l = j.l;
        let read = |vals: &[Vec<f64>], cols: &[Vec<u8>], nx: usize, ny: usize, what: &str| {
            let shape_ok = vals.len() == nx
                && cols.len() == nx
                && vals.iter().all(|r| r.len() == ny)
                && cols.iter().all(|r| r.len() == ny);
            if !shape_ok {
                return Err(SixVertexError::Shape(format!("{what} must be {nx}×{ny}")));
            }
            let mut out = Vec::with_capacity(nx * ny);
            for x in 0..nx {
                for y in 0..ny {
                    let up = match vals[x][y] {
                        v if v == 0.5 => true,
                        v if v == -0.5 => false,
                        v => return Err(SixVertexError::Shape(format!("{what}[{x}][{y}] = {v} is not ±1/2"))),
                    };
                    out.push(ColoredSpin { up, color: cols[x][y] });
                }
            }
            Ok(out)
        };
        let h = read(&j.sh, &j.colors_h, l, l - 1, "Sh")?;
        let v = read(&j.sv, &j.colors_v, l - 1, l, "Sv")?;
        Self::new(l, j.s, h, v)
    }
}

/// Count of basis states per volume.
pub fn volume_histogram(basis: &[SixVertexConfig]) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for c in basis {
        *h.entry(volume(c).expect("basis configs obey the ice rule")).or_default() += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_single_surface() {
        let b = enumerate_surfaces(2).unwrap();
        assert_eq!(b.len(), 1);
        let f = height_field(&b[0]).unwrap();
        assert_eq!(f.get(0, 0), 2);
        assert_eq!(volume(&b[0]).unwrap(), 2);
        assert_eq!(enumerate_ground_basis(2, 3).unwrap().len(), 9);
    }

    #[test]
    fn l4_two_surfaces() {
        let b = enumerate_surfaces(4).unwrap();
        assert_eq!(b.len(), 2);
        let centres: Vec<i64> = b.iter().map(|c| height_field(c).unwrap().get(1, 1)).collect();
        assert!(centres.contains(&0) && centres.contains(&2));
        assert!(b.iter().all(is_ground_basis));
    }

    #[test]
    fn crossing_a_spin_changes_height_by_two_s() {
        let c = &enumerate_surfaces(4).unwrap()[0];
        let f = height_field(c).unwrap();
        for site in SixVertexConfig::sites(4) {
            let [a, b] = site.duals();
            let two_s = if c.get(site).up { 1 } else { -1 };
            assert_eq!(f.get(b.0, b.1) - f.get(a.0, a.1), two_s);
        }
    }

    #[test]
    fn all_up_violates_ice() {
        let n = 4 * 3;
        let c = SixVertexConfig::new(4, 1, vec![ColoredSpin::up(1); n], vec![ColoredSpin::up(1); n]).unwrap();
        assert!(!ice_rule_ok(&c));
        // Equal spins cancel in the vertex charge; only vertices touching the
        // fixed boundary spins fail.
        let bad = ice_violations(&c);
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|&(x, y)| x == 0 || y == 0 || x == 3 || y == 3));
        assert!(height_field(&c).is_err());
    }

    #[test]
    fn json_round_trip() {
        for c in enumerate_ground_basis(4, 2).unwrap().iter().step_by(97) {
            assert_eq!(&SixVertexConfig::from_json(&c.to_json()).unwrap(), c);
        }
        assert!(SixVertexConfig::from_json(r#"{"L":3,"s":1,"Sh":[],"Sv":[],"colors_h":[],"colors_v":[]}"#).is_err());
    }

    #[test]
    fn boundary_term_vanishes_on_basis() {
        for c in enumerate_surfaces(6).unwrap() {
            assert_eq!(boundary_energy(&c), 0.0);
        }
    }
}

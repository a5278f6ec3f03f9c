//! Coloured spin chains and their Dyck walks.

use std::fmt;
use std::str::FromStr;

use statevec::{BasisLabel, WeightedState};
use tensor_core::QMonomial;

use crate::FredkinError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColoredSpin {
    pub up: bool,
    /// 1-based colour.
    pub color: u8,
}

impl ColoredSpin {
    pub fn up(color: u8) -> Self {
        ColoredSpin { up: true, color }
    }
    pub fn down(color: u8) -> Self {
        ColoredSpin { up: false, color }
    }
    /// Site byte used in basis labels.
    pub fn code(&self) -> u8 {
        (self.color - 1) * 2 + u8::from(!self.up)
    }
    pub fn from_code(code: u8) -> Self {
        ColoredSpin { up: code % 2 == 0, color: code / 2 + 1 }
    }
    pub fn step(&self) -> i64 {
        if self.up {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for ColoredSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.up { 'U' } else { 'D' }, self.color)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpinChain {
    pub spins: Vec<ColoredSpin>,
    pub s: u8,
}

impl SpinChain {
    pub fn new(spins: Vec<ColoredSpin>, s: u8) -> Result<Self, FredkinError> {
        if spins.len() < 2 || spins.len() % 2 != 0 {
            return Err(FredkinError::BadLength(spins.len()));
        }
        if s == 0 {
            return Err(FredkinError::BadColors(0));
        }
        if let Some(sp) = spins.iter().find(|sp| sp.color == 0 || sp.color > s) {
            return Err(FredkinError::ColorOutOfRange { color: sp.color, s });
        }
        Ok(SpinChain { spins, s })
    }

    /// Parses `"U1 U2 D2 D1"`; a bare `U`/`D` means colour 1.
    pub fn parse(text: &str, s: u8) -> Result<Self, FredkinError> {
        let mut spins = Vec::new();
        for tok in text.split_whitespace() {
            let mut chars = tok.chars();
            let up = match chars.next() {
                Some('U') | Some('u') => true,
                Some('D') | Some('d') => false,
                _ => return Err(FredkinError::Parse(tok.to_string())),
            };
            let rest = chars.as_str();
            let color = if rest.is_empty() { 1 } else { rest.parse::<u8>().map_err(|_| FredkinError::Parse(tok.to_string()))? };
            spins.push(ColoredSpin { up, color });
        }
        Self::new(spins, s)
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }
    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn label(&self) -> BasisLabel {
        self.spins.iter().map(ColoredSpin::code).collect()
    }

    pub fn from_label(label: &[u8], s: u8) -> Result<Self, FredkinError> {
        Self::new(label.iter().map(|&c| ColoredSpin::from_code(c)).collect(), s)
    }
}

impl fmt::Display for SpinChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, sp) in self.spins.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sp}")?;
        }
        Ok(())
    }
}

impl FromStr for SpinChain {
    type Err = FredkinError;
    /// Colour count is taken as the largest colour present.
    fn from_str(text: &str) -> Result<Self, FredkinError> {
        let probe = SpinChain::parse(text, u8::MAX)?;
        let s = probe.spins.iter().map(|sp| sp.color).max().unwrap_or(1);
        SpinChain::new(probe.spins, s)
    }
}

/// Heights at the `N + 1` lattice points and the trapezoid area.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalkProfile {
    pub heights: Vec<i64>,
    pub area: i64,
}

impl WalkProfile {
    pub fn is_dyck(&self) -> bool {
        self.heights.iter().all(|&h| h >= 0) && self.heights.last() == Some(&0)
    }
}

pub fn height_profile(chain: &SpinChain) -> WalkProfile {
    let mut heights = vec![0i64];
    for sp in &chain.spins {
        heights.push(heights.last().unwrap() + sp.step());
    }
    // Σ (φ_i + φ_{i+1})/2; the numerator is even for even N.
    let twice: i64 = heights.windows(2).map(|w| w[0] + w[1]).sum();
    WalkProfile { heights, area: twice / 2 }
}

/// Partner index of every spin under the nearest-unmatched rule (`None` if unmatched).
pub fn matching(spins: &[ColoredSpin]) -> Vec<Option<usize>> {
    let mut partner = vec![None; spins.len()];
    let mut stack = Vec::new();
    for (i, sp) in spins.iter().enumerate() {
        if sp.up {
            stack.push(i);
        } else if let Some(j) = stack.pop() {
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
    }
    partner
}

pub fn is_ground_basis(chain: &SpinChain) -> bool {
    if !height_profile(chain).is_dyck() {
        return false;
    }
    let m = matching(&chain.spins);
    chain.spins.iter().enumerate().all(|(i, sp)| sp.up || m[i].is_some_and(|j| chain.spins[j].color == sp.color))
}

/// All colour-correlated Dyck chains, sorted by basis label.
pub fn enumerate_ground_basis(n: usize, s: u8) -> Result<Vec<SpinChain>, FredkinError> {
    if n < 2 || n % 2 != 0 {
        return Err(FredkinError::BadLength(n));
    }
    if s == 0 {
        return Err(FredkinError::BadColors(0));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut stack = Vec::new();
    grow(n, s, &mut cur, &mut stack, &mut out);
    out.sort_by_key(|c: &SpinChain| c.label());
    Ok(out)
}

fn grow(n: usize, s: u8, cur: &mut Vec<ColoredSpin>, stack: &mut Vec<u8>, out: &mut Vec<SpinChain>) {
    if cur.len() == n {
        out.push(SpinChain { spins: cur.clone(), s });
        return;
    }
    let remaining = n - cur.len();
    if stack.len() < remaining {
        for c in 1..=s {
            cur.push(ColoredSpin::up(c));
            stack.push(c);
            grow(n, s, cur, stack, out);
            stack.pop();
            cur.pop();
        }
    }
    if let Some(c) = stack.pop() {
        cur.push(ColoredSpin::down(c));
        grow(n, s, cur, stack, out);
        cur.pop();
        stack.push(c);
    }
}

/// `Σ_w q^{A(w)} |w⟩` with exact amplitudes (not normalized).
pub fn ground_state_exact(n: usize, s: u8, q: f64) -> Result<WeightedState, FredkinError> {
    let basis = enumerate_ground_basis(n, s)?;
    Ok(WeightedState::from_exact(
        q,
        basis.iter().map(|c| (c.label(), QMonomial::q_pow12(12 * height_profile(c).area))),
    ))
}

/// Normalized ground state.
pub fn ground_state(n: usize, s: u8, q: f64) -> Result<WeightedState, FredkinError> {
    Ok(ground_state_exact(n, s, q)?.normalize()?)
}

/// Applies `F^i_variant` (either orientation) at sites `(i−1, i, i+1)`.
pub fn fredkin_move(chain: &SpinChain, i: usize, variant: u8) -> Option<SpinChain> {
    if i == 0 || i + 1 >= chain.len() {
        return None;
    }
    let (a, b, c) = (chain.spins[i - 1], chain.spins[i], chain.spins[i + 1]);
    let new = match (variant, a.up, b.up, c.up) {
        // ↑c1 ↑c2 ↓c3 ↔ ↑c2 ↓c3 ↑c1
        (1, true, true, false) => [b, c, a],
        (1, true, false, true) => [c, a, b],
        // ↑c1 ↓c2 ↓c3 ↔ ↓c3 ↑c1 ↓c2
        (2, true, false, false) => [c, a, b],
        (2, false, true, false) => [b, c, a],
        _ => return None,
    };
    let mut out = chain.clone();
    out.spins[i - 1..=i + 1].copy_from_slice(&new);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> SpinChain {
        s.parse().unwrap()
    }

    #[test]
    fn profiles() {
        let p = height_profile(&ch("U U D D"));
        assert_eq!(p.heights, vec![0, 1, 2, 1, 0]);
        assert_eq!(p.area, 4);
        assert_eq!(height_profile(&ch("U D U D")).area, 2);
        assert_eq!(height_profile(&ch("U D")).area, 1);
    }

    #[test]
    fn ground_basis_membership() {
        assert!(is_ground_basis(&ch("U1 U2 D2 D1")));
        assert!(!is_ground_basis(&ch("U1 U2 D1 D2")));
        assert!(!is_ground_basis(&ch("D1 U1")));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_ground_basis(4, 1).unwrap().len(), 2);
        assert_eq!(enumerate_ground_basis(4, 2).unwrap().len(), 8);
        assert_eq!(enumerate_ground_basis(2, 3).unwrap().len(), 3);
        // Catalan(4) · 2^4
        assert_eq!(enumerate_ground_basis(8, 2).unwrap().len(), 14 * 16);
    }

    #[test]
    fn ground_state_amplitudes() {
        let g = ground_state_exact(4, 1, 2.0).unwrap();
        let hi = g.value(&ch("U U D D").label());
        let lo = g.value(&ch("U D U D").label());
        assert_eq!((hi, lo), (16.0, 4.0));
        let u = ground_state(2, 3, 5.0).unwrap();
        assert!(u.numeric_terms().all(|(_, a)| (a - 1.0 / 3f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn moves() {
        let c = ch("U1 U2 D2 D1");
        let m = fredkin_move(&c, 1, 1).unwrap();
        assert_eq!(m.to_string(), "U2 D2 U1 D1");
        assert_eq!(fredkin_move(&m, 1, 1).unwrap(), c);
        assert!(fredkin_move(&ch("D D D D"), 1, 1).is_none());
        let d = ch("U1 U2 D2 D1");
        let m2 = fredkin_move(&d, 2, 2).unwrap();
        assert_eq!(m2.to_string(), "U1 D1 U2 D2");
        assert_eq!(fredkin_move(&m2, 2, 2).unwrap(), d);
    }

    #[test]
    fn parse_errors() {
        assert!(SpinChain::parse("U1 X", 2).is_err());
        assert!(SpinChain::parse("U3 D3", 2).is_err());
        assert!(SpinChain::parse("U1", 2).is_err());
        assert_eq!(SpinChain::parse("U D", 1).unwrap().to_string(), "U1 D1");
    }
}

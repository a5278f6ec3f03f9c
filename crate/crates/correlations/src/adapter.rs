//! Reading a single coloured walk out of a model's basis labels.

use fredkin1d::{height_profile, matching, ColoredSpin, SpinChain};
use sixvertex::{Kind, SixVertexConfig};

use crate::CorrError;

/// Maps a basis label to the walk whose heights and pairings are measured.
pub trait ModelAdapter {
    fn spins(&self, label: &[u8]) -> Result<Vec<ColoredSpin>, CorrError>;

    /// Heights `φ_0 … φ_N` of the walk, `φ_0 = 0`.
    fn heights(&self, label: &[u8]) -> Result<Vec<i64>, CorrError> {
        let spins = self.spins(label)?;
        let s = spins.iter().map(|sp| sp.color).max().unwrap_or(1);
        Ok(height_profile(&SpinChain { spins, s }).heights)
    }

    /// Nearest-unmatched partner of every spin.
    fn partners(&self, label: &[u8]) -> Result<Vec<Option<usize>>, CorrError> {
        Ok(matching(&self.spins(label)?))
    }
}

/// The chain itself.
#[derive(Clone, Copy, Debug)]
pub struct ChainAdapter {
    pub s: u8,
}

impl ModelAdapter for ChainAdapter {
    fn spins(&self, label: &[u8]) -> Result<Vec<ColoredSpin>, CorrError> {
        Ok(SpinChain::from_label(label, self.s)?.spins)
    }
}

/// One row or column chain of a six-vertex configuration, including its
/// virtual end spins.
#[derive(Clone, Copy, Debug)]
pub struct SixVertexAdapter {
    pub l: usize,
    pub s: u8,
    pub kind: Kind,
    pub chain: usize,
}

impl SixVertexAdapter {
    /// The central row chain.
    pub fn central(l: usize, s: u8) -> Self {
        SixVertexAdapter { l, s, kind: Kind::H, chain: (l - 1) / 2 }
    }
}

impl ModelAdapter for SixVertexAdapter {
    fn spins(&self, label: &[u8]) -> Result<Vec<ColoredSpin>, CorrError> {
        if self.chain + 1 >= self.l {
            return Err(CorrError::Label(format!("chain {} outside 0..{}", self.chain, self.l - 1)));
        }
        Ok(SixVertexConfig::from_label(self.l, self.s, label)?.extended_chain(self.kind, self.chain))
    }
}

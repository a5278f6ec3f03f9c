//! Composite arrow labels carried by tensor legs.

use std::collections::HashMap;
use std::fmt;

use crate::TensorError;

/// One family's share of a leg label. Colours are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Component {
    /// No arrow.
    Zero,
    /// `n` arrows of colour `color`; `n ∈ {−2, −1, 1, 2}`.
    Arrow { n: i8, color: u8 },
    /// The coloured degenerate zero `0^c`.
    Degenerate { color: u8 },
}

impl Component {
    pub fn plus(color: u8) -> Self {
        Component::Arrow { n: 1, color }
    }
    pub fn minus(color: u8) -> Self {
        Component::Arrow { n: -1, color }
    }
    /// Signed arrow count (0 for both kinds of zero).
    pub fn arrows(&self) -> i64 {
        match self {
            Component::Arrow { n, .. } => *n as i64,
            _ => 0,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Zero => write!(f, "0"),
            Component::Degenerate { color } => write!(f, "0^c{color}"),
            Component::Arrow { n, color } => match n {
                1 => write!(f, "+c{color}"),
                -1 => write!(f, "-c{color}"),
                n => write!(f, "{n:+}c{color}"),
            },
        }
    }
}

/// Tuple of per-family components.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label(pub Vec<Component>);

impl Label {
    pub fn zero(families: usize) -> Self {
        Label(vec![Component::Zero; families])
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == Component::Zero)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Ordered, duplicate-free symbol set; symbol 0 is always the zero label.
#[derive(Clone, Debug)]
pub struct LegAlphabet {
    families: usize,
    symbols: Vec<Label>,
    index: HashMap<Label, u32>,
}

impl PartialEq for LegAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.families == other.families && self.symbols == other.symbols
    }
}
impl Eq for LegAlphabet {}

impl LegAlphabet {
    /// Builds an alphabet from the nonzero labels; the zero label is prepended.
    pub fn new(families: usize, labels: impl IntoIterator<Item = Label>) -> Result<Self, TensorError> {
        let mut alpha = LegAlphabet { families, symbols: Vec::new(), index: HashMap::new() };
        alpha.push(Label::zero(families))?;
        for l in labels {
            alpha.push(l)?;
        }
        Ok(alpha)
    }

    fn push(&mut self, label: Label) -> Result<(), TensorError> {
        if label.0.len() != self.families {
            return Err(TensorError::LabelWidth { got: label.0.len(), expected: self.families });
        }
        if self.index.contains_key(&label) {
            return Err(TensorError::DuplicateSymbol(label.to_string()));
        }
        self.index.insert(label.clone(), self.symbols.len() as u32);
        self.symbols.push(label);
        Ok(())
    }

    /// All labels whose components range over the given per-family sets.
    pub fn product(families: &[Vec<Component>]) -> Result<Self, TensorError> {
        let mut out: Vec<Vec<Component>> = vec![Vec::new()];
        for fam in families {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    fam.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(*c);
                        v
                    })
                })
                .collect();
        }
        let labels = out.into_iter().map(Label).filter(|l| !l.is_zero());
        Self::new(families.len(), labels)
    }

    pub fn families(&self) -> usize {
        self.families
    }
    pub fn len(&self) -> usize {
        self.symbols.len()
    }
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
    pub fn symbol(&self, label: &Label) -> Option<u32> {
        self.index.get(label).copied()
    }
    pub fn label(&self, symbol: u32) -> Option<&Label> {
        self.symbols.get(symbol as usize)
    }
    pub fn labels(&self) -> &[Label] {
        &self.symbols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_symbol_zero_and_degenerate_is_distinct() {
        let a = LegAlphabet::product(&[vec![
            Component::Zero,
            Component::Degenerate { color: 1 },
            Component::plus(1),
        ]])
        .unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.label(0).unwrap().is_zero());
        let deg = a.symbol(&Label(vec![Component::Degenerate { color: 1 }])).unwrap();
        assert_ne!(deg, 0);
    }

    #[test]
    fn duplicates_rejected() {
        let l = Label(vec![Component::plus(1)]);
        assert!(matches!(LegAlphabet::new(1, [l.clone(), l]), Err(TensorError::DuplicateSymbol(_))));
        assert!(LegAlphabet::new(1, [Label::zero(1)]).is_err());
    }

    #[test]
    fn display() {
        let l = Label(vec![Component::Arrow { n: 2, color: 1 }, Component::minus(2)]);
        assert_eq!(l.to_string(), "(+2c1,-c2)");
    }
}

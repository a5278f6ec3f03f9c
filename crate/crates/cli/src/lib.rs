//! Front end shared by the `holotn` binary: run specification, model
//! dispatch and the individual commands.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use lozengemod::TriDomain;
use statevec::{Amplitude, BasisLabel, WeightedState};
use tensor_core::QMonomial;
use thiserror::Error;

mod contract;
mod correlate;
mod enumerate;
mod render;
mod verify;

pub use contract::{cmd_contract, ContractSummary};
pub use correlate::cmd_correlate;
pub use enumerate::cmd_enumerate;
pub use render::{cmd_render, Pick};
pub use verify::{cmd_verify, Check};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("i/o on {path}: {msg}")]
    Io { path: PathBuf, msg: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => 2,
        }
    }
}

/// Library errors surface as bad input: every failure they report stems from
/// parameters or files the user passed.
macro_rules! input_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_from!(
    fredkin1d::FredkinError,
    sixvertex::SixVertexError,
    lozengemod::LozengeError,
    correlations::CorrError,
    tensor_core::TensorError,
    statevec::StateError
);

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Model {
    Fredkin1d,
    Sixvertex,
    Lozenge,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Fredkin1d => "fredkin1d",
            Model::Sixvertex => "sixvertex",
            Model::Lozenge => "lozenge",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Desk-scale caps, checked before any work starts.
pub const MAX_CHAIN: usize = 16;
pub const MAX_COLORS_1D: u8 = 3;
pub const MAX_BASIS_1D: u128 = 1 << 20;
pub const MAX_LATTICE: usize = 6;
pub const MAX_COLORS_2D: u8 = 2;

/// Everything a command needs; deterministic (no seeds, no clocks).
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub model: Model,
    /// `N` values (1D) or `L` values (six-vertex). Unused for lozenges.
    pub sizes: Vec<usize>,
    /// Domain file or built-in name (`hex1`, `hex3`, `hex6`).
    pub domain: Option<String>,
    pub s: u8,
    pub qs: Vec<f64>,
    pub out: PathBuf,
    pub format: Format,
}

impl RunSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Input(m));
        if self.s == 0 {
            return bad("--colors must be at least 1".into());
        }
        if let Some(q) = self.qs.iter().find(|q| !(q.is_finite() && **q > 0.0)) {
            return bad(format!("q = {q} must be positive and finite"));
        }
        match self.model {
            Model::Fredkin1d => {
                if self.sizes.is_empty() {
                    return bad("--n is required for fredkin1d".into());
                }
                if self.s > MAX_COLORS_1D {
                    return bad(format!("--colors {} above the cap {MAX_COLORS_1D}", self.s));
                }
                for &n in &self.sizes {
                    if n < 2 || n % 2 == 1 || n > MAX_CHAIN {
                        return bad(format!("--n {n} must be even and in 2..={MAX_CHAIN}"));
                    }
                    if basis_size_1d(n, self.s) > MAX_BASIS_1D {
                        return bad(format!("N = {n}, s = {} gives more than {MAX_BASIS_1D} states", self.s));
                    }
                }
            }
            Model::Sixvertex => {
                if self.sizes.is_empty() {
                    return bad("--l is required for sixvertex".into());
                }
                for &l in &self.sizes {
                    sixvertex::check_size(l, self.s)?;
                    if l > MAX_LATTICE || self.s > MAX_COLORS_2D || (l == MAX_LATTICE && self.s > 1) {
                        return bad(format!("L = {l}, s = {} is beyond desk scale (L ≤ 4 with s ≤ 2, or L = 6 with s = 1)", self.s));
                    }
                }
            }
            Model::Lozenge => {
                if self.domain.is_none() {
                    return bad("--domain is required for lozenge".into());
                }
                if self.s > MAX_COLORS_2D {
                    return bad(format!("--colors {} above the cap {MAX_COLORS_2D}", self.s));
                }
            }
        }
        Ok(())
    }

    /// The lozenge domain: a JSON file, or a built-in name when no such file exists.
    pub fn load_domain(&self) -> Result<TriDomain, CliError> {
        let name = self.domain.as_deref().ok_or_else(|| CliError::Input("--domain is required".into()))?;
        let path = Path::new(name);
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), msg: e.to_string() })?;
            Ok(TriDomain::from_json(&text)?)
        } else {
            Ok(TriDomain::named(name)?)
        }
    }

    /// Short tag for file names.
    pub fn tag(&self, size: Option<usize>) -> String {
        match (self.model, size) {
            (Model::Lozenge, _) => {
                let d = self.domain.as_deref().unwrap_or("domain");
                let stem = Path::new(d).file_stem().and_then(|s| s.to_str()).unwrap_or("domain");
                format!("lozenge_{stem}_s{}", self.s)
            }
            (Model::Fredkin1d, Some(n)) => format!("fredkin1d_n{n}_s{}", self.s),
            (Model::Sixvertex, Some(l)) => format!("sixvertex_l{l}_s{}", self.s),
            (m, None) => format!("{m}_s{}", self.s),
        }
    }
}

/// `C_{N/2} · s^{N/2}`.
pub fn basis_size_1d(n: usize, s: u8) -> u128 {
    let m = (n / 2) as u128;
    let mut c: u128 = 1;
    for k in 0..m {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c.saturating_mul((s as u128).saturating_pow(m as u32))
}

/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.into(), msg: e.to_string() };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Ground state of one instance as exact monomials, with a readable form of
/// every label.
pub(crate) struct Instance {
    pub terms: Vec<(BasisLabel, QMonomial)>,
    pub describe: Box<dyn Fn(&[u8]) -> String>,
}

pub(crate) fn exact_terms(state: &WeightedState) -> Vec<(BasisLabel, QMonomial)> {
    state
        .terms()
        .filter_map(|(l, a)| match a {
            Amplitude::Exact(m) => Some((l.clone(), *m)),
            Amplitude::Numeric(_) => None,
        })
        .collect()
}

pub(crate) fn instance(spec: &RunSpec, size: Option<usize>) -> Result<Instance, CliError> {
    Ok(match spec.model {
        Model::Fredkin1d => {
            let n = size.expect("1D size");
            let s = spec.s;
            Instance {
                terms: exact_terms(&fredkin1d::ground_state_exact(n, s, 1.0)?),
                describe: Box::new(move |l| {
                    fredkin1d::SpinChain::from_label(l, s).map(|c| c.to_string()).unwrap_or_default()
                }),
            }
        }
        Model::Sixvertex => {
            let l = size.expect("six-vertex size");
            let s = spec.s;
            Instance {
                terms: exact_terms(&sixvertex::ground_state_exact(l, s, 1.0)?),
                describe: Box::new(move |lab| describe_sixvertex(l, s, lab)),
            }
        }
        Model::Lozenge => {
            let d = spec.load_domain()?;
            let s = spec.s;
            Instance {
                terms: lozengemod::ground_state_exact(&d, s)?,
                describe: Box::new(move |lab| {
                    lozengemod::LozengeTiling::from_label(&d, s, lab).map(|t| describe_lozenge(&t)).unwrap_or_default()
                }),
            }
        }
    })
}

fn chain_text(spins: &[fredkin1d::ColoredSpin]) -> String {
    spins.iter().map(|sp| sp.to_string()).collect::<Vec<_>>().join(" ")
}

/// `H: row0 / row1 … | V: col0 / …`.
pub(crate) fn describe_sixvertex(l: usize, s: u8, label: &[u8]) -> String {
    use sixvertex::{Kind, SixVertexConfig};
    let Ok(c) = SixVertexConfig::from_label(l, s, label) else { return String::new() };
    let part = |k: Kind| (0..l - 1).map(|j| chain_text(&c.chain(k, j))).collect::<Vec<_>>().join(" / ");
    format!("H: {} | V: {}", part(Kind::H), part(Kind::V))
}

/// Diagonal classes, then the colour triples.
pub(crate) fn describe_lozenge(t: &lozengemod::LozengeTiling) -> String {
    let diag: String = t.diag.iter().map(|d| char::from(b'0' + d)).collect();
    let colors: Vec<String> = t.colors.iter().map(|c| format!("{}{}{}", c[0], c[1], c[2])).collect();
    format!("{diag} {}", colors.join(" "))
}

pub(crate) fn label_text(label: &[u8]) -> String {
    label.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(".")
}

/// Exponent in twelfths, printed as a reduced fraction of `q`'s power.
pub(crate) fn exp_text(exp12: i64) -> String {
    let r = num_rational::Ratio::new(exp12, 12);
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: Model, sizes: Vec<usize>, s: u8) -> RunSpec {
        RunSpec { model, sizes, domain: None, s, qs: vec![1.0], out: ".".into(), format: Format::Csv }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_size_1d(4, 1), 2);
        assert_eq!(basis_size_1d(6, 2), 40);
        assert_eq!(basis_size_1d(16, 1), 1430);
    }

    #[test]
    fn caps() {
        assert!(spec(Model::Fredkin1d, vec![8], 2).validate().is_ok());
        assert!(spec(Model::Fredkin1d, vec![7], 1).validate().is_err());
        assert!(spec(Model::Fredkin1d, vec![18], 1).validate().is_err());
        assert!(spec(Model::Fredkin1d, vec![16], 3).validate().is_err());
        assert!(spec(Model::Fredkin1d, vec![], 1).validate().is_err());
        assert!(spec(Model::Sixvertex, vec![5], 1).validate().is_err());
        assert!(spec(Model::Lozenge, vec![], 1).validate().is_err());
        let mut sp = spec(Model::Fredkin1d, vec![4], 1);
        sp.qs = vec![-1.0];
        assert_eq!(sp.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn exponents_print_reduced() {
        assert_eq!(exp_text(24), "2");
        assert_eq!(exp_text(-1), "-1/12");
        assert_eq!(exp_text(6), "1/2");
    }
}

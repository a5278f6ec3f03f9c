//! Correlation functions of Fredkin-type ground states: height profiles,
//! colour two-point functions (exact and closed form) and scaling fits.

mod adapter;
mod dyck;
mod fit;
mod profile;
mod report;

pub use adapter::{ChainAdapter, ModelAdapter, SixVertexAdapter};
pub use dyck::{color_corr_formula, n_dyck};
pub use fit::{fit_scaling, FitModel, ScalingFit};
pub use profile::{
    color_corr, color_corr_enum, exact_weights, pairing_total, spin_profile, touch_probability,
    touch_probability_enum, Profile,
};
pub use report::{report_csv, scaling_report, ReportModel, ReportRow, ReportSpec, BANNER_2D};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrError {
    #[error("length {0} must be even")]
    Odd(usize),
    #[error("distance {r} outside 1..={l}")]
    Distance { r: usize, l: usize },
    #[error("amplitude exponent {0}/12 gives an irrational weight")]
    Irrational(i64),
    #[error("state holds numeric amplitudes; exact weights need monomials")]
    NotExact,
    #[error("bad label: {0}")]
    Label(String),
    #[error("empty state")]
    Empty,
    #[error("fit needs at least two usable points, got {0}")]
    FewPoints(usize),
    #[error(transparent)]
    Fredkin(#[from] fredkin1d::FredkinError),
    #[error(transparent)]
    SixVertex(#[from] sixvertex::SixVertexError),
    #[error("csv: {0}")]
    Csv(String),
}

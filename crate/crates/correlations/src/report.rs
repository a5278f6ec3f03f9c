//! Sweeps of `⟨φ_r⟩`, `⟨S_r⟩` and `G_c(r)` over sizes and `q`, as CSV.

use std::fmt;

use statevec::WeightedState;

use crate::{color_corr, fit_scaling, spin_profile, ChainAdapter, CorrError, FitModel, ModelAdapter, SixVertexAdapter};

pub const BANNER_2D: &str = "# finite-size, qualitative";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportModel {
    Fredkin1d,
    SixVertex,
}

impl fmt::Display for ReportModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportModel::Fredkin1d => "fredkin1d",
            ReportModel::SixVertex => "sixvertex",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReportSpec {
    pub model: ReportModel,
    /// Chain lengths `N` (1D) or lattice sizes `L` (six-vertex, 4 or 6 only).
    pub sizes: Vec<usize>,
    pub s: u8,
    pub qs: Vec<f64>,
    /// Law fitted to `⟨φ_r⟩`.
    pub fit: FitModel,
    /// Fit window in `r`; `None` means `[1, N/2]` of the measured walk.
    pub window: Option<(f64, f64)>,
}

/// One CSV line. The fit columns repeat the `⟨φ_r⟩` fit of its `(size, q)` block.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub model: ReportModel,
    pub size: usize,
    pub s: u8,
    pub q: f64,
    pub r: usize,
    pub phi_mean: f64,
    pub s_r: f64,
    /// `None` at `r = 0`.
    pub g_c: Option<f64>,
    pub fit_model: FitModel,
    pub fit_param: Option<f64>,
    pub residual: Option<f64>,
}

fn block(
    spec: &ReportSpec,
    size: usize,
    q: f64,
    state: &WeightedState,
    adapter: &impl ModelAdapter,
) -> Result<Vec<ReportRow>, CorrError> {
    let p = spin_profile(state, adapter)?;
    let n = p.r.len();
    let xs: Vec<f64> = p.r.iter().map(|&r| r as f64).collect();
    let window = spec.window.unwrap_or((1.0, (n / 2) as f64));
    let fit = fit_scaling(&xs, &p.phi_mean, window, spec.fit).ok();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let r = p.r[i];
        let g_c = if r == 0 { None } else { Some(color_corr(state, r, adapter)?) };
        rows.push(ReportRow {
            model: spec.model,
            size,
            s: spec.s,
            q,
            r,
            phi_mean: p.phi_mean[i],
            s_r: p.s_r[i],
            g_c,
            fit_model: spec.fit,
            fit_param: fit.as_ref().map(|f| f.param),
            residual: fit.as_ref().map(|f| f.residual),
        });
    }
    Ok(rows)
}

/// Rows in `sizes × qs × r` order; the sweep is sequential so output is
/// reproducible byte for byte.
pub fn scaling_report(spec: &ReportSpec) -> Result<Vec<ReportRow>, CorrError> {
    let mut rows = Vec::new();
    for &size in &spec.sizes {
        for &q in &spec.qs {
            match spec.model {
                ReportModel::Fredkin1d => {
                    let st = fredkin1d::ground_state(size, spec.s, q)?;
                    rows.extend(block(spec, size, q, &st, &ChainAdapter { s: spec.s })?);
                }
                ReportModel::SixVertex => {
                    if size != 4 && size != 6 {
                        return Err(CorrError::Label(format!("six-vertex sweeps take L = 4 or 6, got {size}")));
                    }
                    let st = sixvertex::ground_state(size, spec.s, q)?;
                    rows.extend(block(spec, size, q, &st, &SixVertexAdapter::central(size, spec.s))?);
                }
            }
        }
    }
    Ok(rows)
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV text, preceded by the finite-size banner for six-vertex rows.
pub fn report_csv(rows: &[ReportRow]) -> Result<String, CorrError> {
    let err = |e: csv::Error| CorrError::Csv(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["model", "L-or-N", "s", "q", "r", "phi_mean", "S_r", "G_c", "fit_model", "fit_param", "residual"])
        .map_err(err)?;
    for row in rows {
        w.write_record([
            row.model.to_string(),
            row.size.to_string(),
            row.s.to_string(),
            row.q.to_string(),
            row.r.to_string(),
            row.phi_mean.to_string(),
            row.s_r.to_string(),
            opt(row.g_c),
            row.fit_model.to_string(),
            opt(row.fit_param),
            opt(row.residual),
        ])
        .map_err(err)?;
    }
    let body = w.into_inner().map_err(|e| CorrError::Csv(e.to_string()))?;
    let body = String::from_utf8(body).map_err(|e| CorrError::Csv(e.to_string()))?;
    if rows.iter().any(|r| r.model == ReportModel::SixVertex) {
        Ok(format!("{BANNER_2D}\n{body}"))
    } else {
        Ok(body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: ReportModel, sizes: Vec<usize>) -> ReportSpec {
        ReportSpec { model, sizes, s: 1, qs: vec![0.5, 1.0], fit: FitModel::Power, window: None }
    }

    #[test]
    fn one_dimensional_rows() {
        let rows = scaling_report(&spec(ReportModel::Fredkin1d, vec![4, 6])).unwrap();
        assert_eq!(rows.len(), 2 * 4 + 2 * 6);
        assert!(rows[0].g_c.is_none() && rows[1].g_c.is_some());
        let csv = report_csv(&rows).unwrap();
        assert!(csv.starts_with("model,L-or-N,s,q,r,phi_mean,S_r,G_c,fit_model,fit_param,residual\n"));
        assert_eq!(csv.lines().count(), rows.len() + 1);
        assert_eq!(csv, report_csv(&scaling_report(&spec(ReportModel::Fredkin1d, vec![4, 6])).unwrap()).unwrap());
    }

    #[test]
    fn two_dimensional_banner() {
        let rows = scaling_report(&spec(ReportModel::SixVertex, vec![4])).unwrap();
        assert!(report_csv(&rows).unwrap().starts_with(BANNER_2D));
        assert!(scaling_report(&spec(ReportModel::SixVertex, vec![8])).is_err());
    }
}

use std::path::PathBuf;

use correlations::{report_csv, scaling_report, FitModel, ReportModel, ReportSpec};

use crate::{write_atomic, CliError, Format, Model, RunSpec};

/// Scaling tables as CSV, one file per model and colour count.
pub fn cmd_correlate(spec: &RunSpec, fit: FitModel, window: Option<(f64, f64)>) -> Result<PathBuf, CliError> {
    spec.validate()?;
    if spec.format != Format::Csv {
        return Err(CliError::Input("correlate writes csv".into()));
    }
    let model = match spec.model {
        Model::Fredkin1d => ReportModel::Fredkin1d,
        Model::Sixvertex => ReportModel::SixVertex,
        Model::Lozenge => return Err(CliError::Input("correlation sweeps cover fredkin1d and sixvertex".into())),
    };
    let rows = scaling_report(&ReportSpec { model, sizes: spec.sizes.clone(), s: spec.s, qs: spec.qs.clone(), fit, window })?;
    let path = spec.out.join(format!("correlate_{}.csv", spec.tag(None)));
    write_atomic(&path, &report_csv(&rows)?)?;
    Ok(path)
}

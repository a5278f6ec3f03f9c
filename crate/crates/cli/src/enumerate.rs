use std::path::PathBuf;

use serde_json::json;

use crate::{exp_text, instance, label_text, write_atomic, CliError, Format, Model, RunSpec};

/// One file per size: every basis state with its exact amplitude `c·q^e`
/// and the normalized numeric amplitude at each requested `q`.
pub fn cmd_enumerate(spec: &RunSpec) -> Result<Vec<PathBuf>, CliError> {
    spec.validate()?;
    let sizes: Vec<Option<usize>> =
        if spec.model == Model::Lozenge { vec![None] } else { spec.sizes.iter().map(|&n| Some(n)).collect() };
    let mut written = Vec::new();
    for size in sizes {
        let inst = instance(spec, size)?;
        let norms: Vec<f64> =
            spec.qs.iter().map(|&q| inst.terms.iter().map(|(_, m)| m.eval(q).powi(2)).sum::<f64>().sqrt()).collect();
        let path = spec.out.join(format!(
            "enumerate_{}.{}",
            spec.tag(size),
            if spec.format == Format::Json { "json" } else { "csv" }
        ));
        let text = match spec.format {
            Format::Json => {
                let states: Vec<_> = inst
                    .terms
                    .iter()
                    .map(|(l, m)| {
                        json!({
                            "label": l,
                            "config": (inst.describe)(l),
                            "coeff": m.coeff.to_string(),
                            "exponent": exp_text(m.exp12),
                            "exp12": m.exp12,
                            "amplitudes": spec.qs.iter().zip(&norms).map(|(&q, z)| m.eval(q) / z).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let doc = json!({
                    "model": spec.model.to_string(),
                    "size": size,
                    "s": spec.s,
                    "q": spec.qs,
                    "count": inst.terms.len(),
                    "states": states,
                });
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Input(e.to_string()))? + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut head = vec!["label".to_string(), "config".into(), "coeff".into(), "exponent".into()];
                head.extend(spec.qs.iter().map(|q| format!("amp_q{q}")));
                let csv_err = |e: csv::Error| CliError::Input(e.to_string());
                w.write_record(&head).map_err(csv_err)?;
                for (l, m) in &inst.terms {
                    let mut rec = vec![label_text(l), (inst.describe)(l), m.coeff.to_string(), exp_text(m.exp12)];
                    rec.extend(spec.qs.iter().zip(&norms).map(|(&q, z)| (m.eval(q) / z).to_string()));
                    w.write_record(&rec).map_err(csv_err)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| CliError::Input(e.to_string()))?)
                    .map_err(|e| CliError::Input(e.to_string()))?
            }
            Format::Svg => return Err(CliError::Input("enumerate writes csv or json".into())),
        };
        write_atomic(&path, &text)?;
        written.push(path);
    }
    Ok(written)
}

use std::collections::HashMap;
use std::path::PathBuf;

use statevec::BasisLabel;
use tensor_core::{contract_network, QMonomial, SparseTensor};

use crate::{exp_text, instance, label_text, write_atomic, CliError, Format, Model, RunSpec};

/// Contraction is exact but exponential in the network width; these are the
/// instances it finishes on at desk scale.
const MAX_CONTRACT_1D: usize = 12;
const MAX_CONTRACT_LATTICE: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ContractSummary {
    pub instance: String,
    pub states: usize,
    /// Nonzero entries of the contracted tensor outside the ground basis.
    pub off_basis: usize,
    /// Ground-basis states the contraction gives zero.
    pub missing: usize,
    /// `max |(A_tn/A_tn,ref) / (A_enum/A_enum,ref) − 1|` over states and `q`.
    pub max_ratio_deviation: f64,
}

impl ContractSummary {
    pub fn ok(&self) -> bool {
        self.off_basis == 0 && self.missing == 0 && self.max_ratio_deviation <= 1e-12
    }
}

/// The contracted tensor and the physical key of every basis label.
fn contracted(spec: &RunSpec, size: Option<usize>, labels: &[BasisLabel]) -> Result<(SparseTensor, Vec<Vec<u32>>), CliError> {
    Ok(match spec.model {
        Model::Fredkin1d => {
            let n = size.expect("1D size");
            if n > MAX_CONTRACT_1D {
                return Err(CliError::Input(format!("contraction capped at N = {MAX_CONTRACT_1D}")));
            }
            let net = fredkin1d::build_network(n, spec.s)?;
            let keys = labels
                .iter()
                .map(|l| fredkin1d::SpinChain::from_label(l, spec.s).map(|c| fredkin1d::assignment(&c)))
                .collect::<Result<_, _>>()?;
            (contract_network(&net)?, keys)
        }
        Model::Sixvertex => {
            let l = size.expect("six-vertex size");
            if l > MAX_CONTRACT_LATTICE {
                return Err(CliError::Input(format!("contraction capped at L = {MAX_CONTRACT_LATTICE}")));
            }
            let cn = sixvertex::build_network(l, spec.s)?;
            let keys = labels
                .iter()
                .map(|lab| sixvertex::SixVertexConfig::from_label(l, spec.s, lab).map(|c| cn.assignment(&c)))
                .collect::<Result<_, _>>()?;
            (contract_network(&cn.net)?, keys)
        }
        Model::Lozenge => {
            let d = spec.load_domain()?;
            let pn = lozengemod::build_network(&d, spec.s)?;
            let keys = labels
                .iter()
                .map(|lab| lozengemod::LozengeTiling::from_label(&d, spec.s, lab).map(|t| pn.assignment(&t)))
                .collect::<Result<_, _>>()?;
            (contract_network(&pn.net)?, keys)
        }
    })
}

/// Contracts the network, compares every amplitude with the enumerated
/// ground state and writes the side-by-side table. A mismatch is a
/// verification failure (the table is still written).
pub fn cmd_contract(spec: &RunSpec) -> Result<(Vec<PathBuf>, Vec<ContractSummary>), CliError> {
    spec.validate()?;
    if spec.format != Format::Csv {
        return Err(CliError::Input("contract writes csv".into()));
    }
    let sizes: Vec<Option<usize>> =
        if spec.model == Model::Lozenge { vec![None] } else { spec.sizes.iter().map(|&n| Some(n)).collect() };
    let mut written = Vec::new();
    let mut summaries = Vec::new();
    for size in sizes {
        let inst = instance(spec, size)?;
        let labels: Vec<BasisLabel> = inst.terms.iter().map(|t| t.0.clone()).collect();
        let (t, keys) = contracted(spec, size, &labels)?;
        let index: HashMap<&Vec<u32>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let off_basis = t.entries().filter(|(k, w)| !w.is_zero() && !index.contains_key(k)).count();
        let tn: Vec<QMonomial> = keys.iter().map(|k| t.get(k).copied().unwrap_or_else(QMonomial::zero)).collect();
        let missing = tn.iter().filter(|m| m.is_zero()).count();

        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Input(e.to_string());
        w.write_record(["label", "config", "tn_coeff", "tn_exponent", "enum_coeff", "enum_exponent", "max_ratio_deviation"])
            .map_err(csv_err)?;
        let mut worst: f64 = 0.0;
        let (r_tn, r_en) = (tn[0], inst.terms[0].1);
        for (i, (l, en)) in inst.terms.iter().enumerate() {
            let mut dev: f64 = 0.0;
            for &q in &spec.qs {
                let a = tn[i].eval(q) / r_tn.eval(q);
                let b = en.eval(q) / r_en.eval(q);
                dev = dev.max(if a.is_finite() { (a / b - 1.0).abs() } else { f64::INFINITY });
            }
            worst = worst.max(dev);
            w.write_record([
                label_text(l),
                (inst.describe)(l),
                tn[i].coeff.to_string(),
                exp_text(tn[i].exp12),
                en.coeff.to_string(),
                exp_text(en.exp12),
                format!("{dev:e}"),
            ])
            .map_err(csv_err)?;
        }
        let text = String::from_utf8(w.into_inner().map_err(|e| CliError::Input(e.to_string()))?)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let path = spec.out.join(format!("contract_{}.csv", spec.tag(size)));
        write_atomic(&path, &text)?;
        written.push(path);
        summaries.push(ContractSummary {
            instance: spec.tag(size),
            states: inst.terms.len(),
            off_basis,
            missing,
            max_ratio_deviation: worst,
        });
    }
    Ok((written, summaries))
}

use std::fmt;
use std::path::PathBuf;

use num_rational::Ratio;

use crate::{cmd_contract, write_atomic, CliError, Format, Model, RunSpec};

const TOL: f64 = 1e-12;
/// Dense diagonalisation only below this Hilbert-space dimension.
const MAX_DENSE: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "ok  " } else { "FAIL" }, self.name, self.detail)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn fredkin(spec: &RunSpec, n: usize, out: &mut Vec<Check>) -> Result<(), CliError> {
    let s = spec.s;
    for &q in &spec.qs {
        let r = fredkin1d::verify_annihilation(n, s, q)?;
        out.push(check(
            format!("annihilation N={n} s={s} q={q}"),
            r.max_residual < TOL,
            format!("{} terms, max residual {:.1e} ({})", r.terms_checked, r.max_residual.abs(), r.worst_term),
        ));
        if (2 * s as usize).checked_pow(n as u32).is_some_and(|d| d <= MAX_DENSE) {
            let k = fredkin1d::kernel_report(n, s, q, 1e-9)?;
            out.push(check(
                format!("kernel N={n} s={s} q={q}"),
                k.kernel_dim == 1 && k.ground_energy.abs() < 1e-10 && (k.overlap - 1.0).abs() < 1e-10 && k.gap > 0.0,
                format!("dim {} E0 {:.1e} overlap {:.12} gap {:.6}", k.kernel_dim, k.ground_energy, k.overlap, k.gap),
            ));
        }
    }
    let k = fredkin1d::move_graph_components(n, s)?;
    out.push(check(format!("move graph N={n} s={s}"), k == 1, format!("{k} component(s)")));
    Ok(())
}

fn sixvertex_checks(spec: &RunSpec, l: usize, out: &mut Vec<Check>) -> Result<(), CliError> {
    let s = spec.s;
    for &q in &spec.qs {
        let r = sixvertex::verify_annihilation(l, s, q)?;
        out.push(check(
            format!("annihilation L={l} s={s} q={q}"),
            r.max_residual < TOL && r.boundary_expectation.abs() < TOL,
            format!(
                "{} terms, max residual {:.1e} ({}), ⟨H_∂⟩ {:.1e}",
                r.terms_checked, r.max_residual.abs(), r.worst_term, r.boundary_expectation
            ),
        ));
        let alphas = [Ratio::new(1, 2), Ratio::new(1, 1), Ratio::new(3, 1)];
        let bad: Vec<String> =
            alphas.iter().filter(|&&a| !sixvertex::gauge_identity_check(q, a)).map(|a| a.to_string()).collect();
        out.push(check(format!("gauge identity q={q}"), bad.is_empty(), format!("failing α: {bad:?}")));
    }
    if l <= 4 {
        let cn = sixvertex::build_network(l, s)?;
        let basis = sixvertex::enumerate_ground_basis(l, s)?;
        let mut bad = 0;
        for c in &basis {
            let ok = sixvertex::tiling_from_config(&cn, c)
                .and_then(|t| sixvertex::config_from_tiling(&cn, &t))
                .is_ok_and(|back| &back == c);
            bad += usize::from(!ok);
        }
        out.push(check(format!("bijection L={l} s={s}"), bad == 0, format!("{} states, {bad} failures", basis.len())));
    }
    let rep = sixvertex::local_surjectivity_report();
    out.push(check("local surjectivity", rep.tileable() == 6, format!("{} of 16 vertex patterns tile", rep.tileable())));
    let k = sixvertex::move_graph_components(l, s)?;
    out.push(check(format!("move graph L={l} s={s}"), k == 1, format!("{k} component(s)")));
    Ok(())
}

fn lozenge_checks(spec: &RunSpec, out: &mut Vec<Check>) -> Result<(), CliError> {
    use lozengemod::*;
    let d = spec.load_domain()?;
    let s = spec.s;
    let tileable = is_tileable(&d);
    out.push(check("tileable", tileable, format!("{} faces", d.len())));
    if !tileable {
        return Ok(());
    }
    if strong_boundary_ok(&d) {
        let peel = hexagon_peel(&d).map(|mut p| {
            p.sort();
            p
        });
        let oracle = hexagon_tilings(&d, 4);
        let passed = matches!(&peel, Ok(p) if oracle == vec![p.clone()]);
        out.push(check("hexagon peel", passed, format!("{} hexagons, oracle finds {} tilings", d.len() / 6, oracle.len())));
    }
    let w = solve_tile_weights(&d, Ratio::new(0, 1))?;
    out.push(check(
        "tile weights",
        w.consistent(),
        format!("x3 boundary values {:?}", w.boundary_values().iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    ));
    for &q in &spec.qs {
        let r = verify_annihilation(&d, s, q)?;
        out.push(check(
            format!("annihilation s={s} q={q}"),
            r.max_residual < TOL,
            format!("{} terms, max residual {:.1e} ({})", r.terms_checked, r.max_residual.abs(), r.worst_term),
        ));
    }
    let pn = build_network(&d, s)?;
    let basis = enumerate_ground_basis(&d, s)?;
    let mut bad = 0;
    for c in &basis {
        let ok = tiling_from_config(&pn, c).and_then(|t| config_from_tiling(&pn, &t)).is_ok_and(|back| &back == c);
        bad += usize::from(!ok);
    }
    out.push(check(format!("bijection s={s}"), bad == 0, format!("{} states, {bad} failures", basis.len())));
    let k = move_graph_components(&d, s)?;
    out.push(check(format!("move graph s={s}"), k == 1, format!("{k} component(s)")));
    Ok(())
}

/// Runs the verification suite for one model and writes the report. The
/// caller turns any failed check into exit code 1.
pub fn cmd_verify(spec: &RunSpec) -> Result<(PathBuf, Vec<Check>), CliError> {
    spec.validate()?;
    let mut checks = Vec::new();
    match spec.model {
        Model::Fredkin1d => {
            for &n in &spec.sizes {
                fredkin(spec, n, &mut checks)?;
            }
        }
        Model::Sixvertex => {
            for &l in &spec.sizes {
                sixvertex_checks(spec, l, &mut checks)?;
            }
        }
        Model::Lozenge => lozenge_checks(spec, &mut checks)?,
    }
    let contractible = match spec.model {
        Model::Fredkin1d => spec.sizes.iter().all(|&n| n <= 12),
        Model::Sixvertex => spec.sizes.iter().all(|&l| l <= 4),
        Model::Lozenge => checks.first().is_some_and(|c| c.passed),
    };
    if contractible {
        let sub = RunSpec { format: Format::Csv, ..spec.clone() };
        let (_, sums) = cmd_contract(&sub)?;
        for sm in sums {
            checks.push(check(
                format!("network = enumeration {}", sm.instance),
                sm.ok(),
                format!(
                    "{} states, {} off-basis, {} missing, max ratio deviation {:.1e}",
                    sm.states, sm.off_basis, sm.missing, sm.max_ratio_deviation
                ),
            ));
        }
    }
    let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    let path = spec.out.join(format!("verify_{}.txt", spec.tag(None)));
    write_atomic(&path, &text)?;
    Ok((path, checks))
}

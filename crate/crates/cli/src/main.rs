use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli::{cmd_contract, cmd_correlate, cmd_enumerate, cmd_render, cmd_verify, CliError, Format, Model, Pick, RunSpec};
use correlations::FitModel;

#[derive(Parser)]
#[command(name = "holotn", version, about = "Exact ground states, tensor networks and correlations of Fredkin-type models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum)]
    model: Model,
    /// Chain length (repeatable).
    #[arg(long = "n")]
    n: Vec<usize>,
    /// Lattice size (repeatable).
    #[arg(long = "l")]
    l: Vec<usize>,
    /// Domain JSON file, or hex1 / hex3 / hex6.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long, default_value_t = 1)]
    colors: u8,
    /// Deformation parameter (repeatable).
    #[arg(long = "q")]
    q: Vec<f64>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Ground basis with exact and numeric amplitudes.
    Enumerate(Common),
    /// Contract the network and compare with enumeration.
    Contract(Common),
    /// Run the verification suite.
    Verify(Common),
    /// Correlation and height-profile sweeps.
    Correlate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "power", value_parser = parse_fit)]
        fit: FitModel,
        /// Fit window as `lo,hi`.
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
    },
    /// Draw a configuration as SVG.
    Render {
        #[command(flatten)]
        common: Common,
        /// Chain text, six-vertex JSON, or lozenge label.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "max")]
        pick: Pick,
        /// Per-level tile diagram of the 3D tiling.
        #[arg(long)]
        exploded: bool,
    },
}

fn parse_fit(s: &str) -> Result<FitModel, String> {
    s.parse()
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err("window lo exceeds hi".into());
    }
    Ok((a, b))
}

fn spec(c: Common, default_format: Format) -> RunSpec {
    let sizes = if c.model == Model::Sixvertex { c.l } else { c.n };
    RunSpec {
        model: c.model,
        sizes,
        domain: c.domain,
        s: c.colors,
        qs: if c.q.is_empty() { vec![0.5, 1.0, 2.0] } else { c.q },
        out: c.out,
        format: c.format.unwrap_or(default_format),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Enumerate(c) => {
            for p in cmd_enumerate(&spec(c, Format::Csv))? {
                println!("{}", p.display());
            }
        }
        Command::Contract(c) => {
            let (paths, sums) = cmd_contract(&spec(c, Format::Csv))?;
            for (p, s) in paths.iter().zip(&sums) {
                println!(
                    "{}: {} states, {} off-basis, {} missing, max ratio deviation {:.1e}",
                    p.display(),
                    s.states,
                    s.off_basis,
                    s.missing,
                    s.max_ratio_deviation
                );
            }
            if let Some(bad) = sums.iter().find(|s| !s.ok()) {
                return Err(CliError::Verify(format!("{} disagrees with enumeration", bad.instance)));
            }
        }
        Command::Verify(c) => {
            let (path, checks) = cmd_verify(&spec(c, Format::Csv))?;
            for ch in &checks {
                println!("{ch}");
            }
            println!("report: {}", path.display());
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Verify(format!("{failed} of {} checks failed", checks.len())));
            }
        }
        Command::Correlate { common, fit, window } => {
            println!("{}", cmd_correlate(&spec(common, Format::Csv), fit, window)?.display());
        }
        Command::Render { common, input, pick, exploded } => {
            println!("{}", cmd_render(&spec(common, Format::Svg), input.as_deref(), pick, exploded)?.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("holotn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

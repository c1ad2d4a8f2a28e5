use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lzc_harness::emit::Columns;
use lzc_harness::scenario::{linspace, Kind, NAMES};
use lzc_harness::sweep::{analytic_row, spectrum};
use lzc_harness::{
    compare, emit, lookup, run_scenario, Expected, Format, HarnessError, Output, Overrides, SweepRow, Template,
};

#[derive(Parser)]
#[command(name = "lzc", version, about = "Landau-Zener-Coulomb model: closed forms, propagation and plot data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered scenario and write its sweep table.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form predictions for a model file, without propagation.
    Analytic {
        #[arg(long)]
        model: PathBuf,
        /// PATH:MIN:MAX:STEPS, e.g. levels.2.g:0:1.5:31. Without it a single
        /// row with sweep_value 0 is written.
        #[arg(long)]
        sweep: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a scenario and check it against its analytic column.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        tol: f64,
    },
    /// Adiabatic energies of a model file on a time grid.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List the registered scenarios.
    List,
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long)]
    g_min: Option<f64>,
    #[arg(long)]
    g_max: Option<f64>,
    #[arg(long)]
    g_steps: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Skip the dt/2 rerun that fills dt_deviation.
    #[arg(long)]
    no_halving: bool,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to json for a .json output path, csv otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl OutArgs {
    fn format(&self) -> Format {
        match self.format {
            Some(FormatArg::Csv) => Format::Csv,
            Some(FormatArg::Json) => Format::Json,
            None if self.out.as_deref().and_then(Path::extension).is_some_and(|e| e == "json") => Format::Json,
            None => Format::Csv,
        }
    }

    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }
}

impl ScenarioArgs {
    fn load(&self) -> anyhow::Result<lzc_harness::Scenario> {
        let overrides = Overrides {
            g_min: self.g_min,
            g_max: self.g_max,
            g_steps: self.g_steps,
            dt: self.dt,
            t_end: self.t_end,
            halving: self.no_halving.then_some(false),
        };
        Ok(lookup(&self.scenario)?.apply(&overrides)?)
    }
}

fn read_model(path: &Path) -> anyhow::Result<Template> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Template::from_json(&text).with_context(|| format!("invalid model file {}", path.display()))
}

fn parse_sweep(spec: &str) -> anyhow::Result<(String, Vec<f64>)> {
    let parts: Vec<&str> = spec.rsplitn(4, ':').collect();
    let [steps, max, min, path] = parts.as_slice() else {
        bail!("--sweep must look like PATH:MIN:MAX:STEPS, got `{spec}`");
    };
    let grid = linspace(min.parse()?, max.parse()?, steps.parse()?);
    if grid.is_empty() {
        bail!("--sweep needs at least one step");
    }
    Ok((path.to_string(), grid))
}

/// Closed forms for LZC and qubit models; the ICA estimate for power-law
/// models; two-state LZC estimates for other two-level models.
fn analytic_point(template: &Template, value: f64) -> lzc_harness::Result<SweepRow> {
    let row = match template {
        Template::Diabatic(_) => match analytic_row(template, Expected::Ica, value) {
            Err(HarnessError::MissingAnalytic(_)) => analytic_row(template, Expected::None, value)?,
            other => other?,
        },
        _ => analytic_row(template, Expected::ClosedForm, value)?,
    };
    if row.analytic.is_none() && row.lzc_estimate.is_none() {
        return Err(HarnessError::MissingAnalytic("this model".into()));
    }
    Ok(row)
}

/// Returns whether the command succeeded; tolerance failures are `false`.
fn execute(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Run { scenario, out } => {
            let s = scenario.load()?;
            let output = run_scenario(&s, scenario.jobs)?;
            let columns = match &output {
                Output::Sweep(rows) if rows.is_empty() => Some(Columns { numeric: s.template.dim(), ..Default::default() }),
                _ => None,
            };
            let config = (s.kind == Kind::Sweep).then_some(&s.config);
            emit(&s.name, &s.template, config, &output, columns, out.format(), out.writer()?)?;
        }
        Command::Analytic { model, sweep, out } => {
            let template = read_model(&model)?;
            let rows = match sweep {
                Some(spec) => {
                    let (path, grid) = parse_sweep(&spec)?;
                    grid.iter()
                        .map(|&v| analytic_point(&template.with(&path, v)?, v))
                        .collect::<lzc_harness::Result<Vec<_>>>()?
                }
                None => vec![analytic_point(&template, 0.0)?],
            };
            let name = model.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            emit(&name, &template, None, &Output::Sweep(rows), None, out.format(), out.writer()?)?;
        }
        Command::Verify { scenario, tol } => {
            let s = scenario.load()?;
            let Output::Sweep(rows) = run_scenario(&s, scenario.jobs)? else {
                bail!("scenario {} has no analytic column to verify", s.name);
            };
            let report = compare(&rows, tol)?;
            print!("{}: {}", s.name, report);
            return Ok(report.passed);
        }
        Command::Spectrum { model, t_min, t_max, points, out } => {
            let template = read_model(&model)?;
            if points == 0 || !(t_max > t_min) {
                bail!("need t_max > t_min and at least one point");
            }
            let rows = spectrum(template.builder(), &linspace(t_min, t_max, points))?;
            let name = model.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            emit(&name, &template, None, &Output::Spectrum(rows), None, out.format(), out.writer()?)?;
        }
        Command::List => {
            for name in NAMES {
                let s = lookup(name)?;
                println!("{:<14} {} (sweeps {})", s.name, s.description, s.path);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

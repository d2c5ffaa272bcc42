use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use otto_core::cycle::{idle_decomposition, Convention, EnergyFrame};
use otto_core::Family;
use otto_forge::figures::{self, Figure, FigureOptions};
use otto_forge::table::{format_row, num, opt, write_csv, HEADER};
use otto_forge::{
    evaluate_point, run_sweep, selftest, Error, Outputs, Params, PointSpec, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "otto-forge",
    version,
    about = "Quantum Otto cycles on coupled spin-1/2 systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One cycle, printed as key=value lines
    Run(ConfigArgs),
    /// Parameter sweep written as CSV
    Sweep(ConfigArgs),
    /// Regenerate the data behind a figure (1a 1b 2 3 4a 4b 5 6a 6b 7a 7b 8 9)
    Figure(FigureArgs),
    /// Invariant checks on seeded random draws
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON file with the same keys as the flags; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

impl ConfigArgs {
    fn resolve(self) -> Result<Params, Error> {
        match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                Ok(self.params.overlay(Params::from_json(&text)?))
            }
            None => Ok(self.params),
        }
    }
}

#[derive(Args)]
struct FigureArgs {
    id: String,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value_t = figures::DEFAULT_STEPS)]
    steps: usize,
    /// Points per axis of the Figure 2 grid
    #[arg(long, default_value_t = figures::DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    draws: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn write_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Error> {
    match path {
        Some(p) => {
            let mut file = io::BufWriter::new(fs::File::create(p)?);
            body(&mut file)?;
            file.flush()?;
        }
        None => body(&mut io::stdout().lock())?,
    }
    Ok(())
}

fn run(params: Params) -> Result<(), Error> {
    let spec = PointSpec::from_params(&params)?;
    let convention = match params.convention.as_deref() {
        Some(c) => c.parse().map_err(Error::Config)?,
        None => Convention::Case4,
    };
    let row = evaluate_point(&spec, None, convention, Outputs::parse(&params.outputs)?)?;
    let idle = idle_decomposition(&spec.model()?, &spec.cycle, EnergyFrame::Natural)?;
    let r = &row.report;
    let ksea = spec.family == Family::IsingKsea;
    let lines = [
        ("model", spec.family.cli_name().to_string()),
        ("n", spec.n.to_string()),
        ("J", opt((!ksea).then_some(spec.j))),
        ("Jz", opt(ksea.then_some(spec.jz))),
        ("Gz", opt(ksea.then_some(spec.gz))),
        ("h_hot", num(spec.cycle.h_hot)),
        ("h_cold", num(spec.cycle.h_cold)),
        ("T_hot", num(spec.cycle.t_hot)),
        ("T_cold", num(spec.cycle.t_cold)),
        ("mode", r.mode.map(|m| m.to_string()).unwrap_or_default()),
        ("Qh", num(r.q_hot)),
        ("Qc", num(r.q_cold)),
        ("W", num(r.work)),
        ("eta", opt(r.eta)),
        ("cop", opt(r.cop)),
        ("q_idle", num(idle.q_idle)),
        ("q_work_hot", num(idle.q_work_hot)),
        ("q_work_cold", num(idle.q_work_cold)),
        ("convention", convention.to_string()),
        ("w_local_total", num(row.w_local_total)),
        ("gap", num(row.gap)),
        ("eta_otto", num(r.eta_otto)),
        ("cop_otto", num(r.cop_otto)),
        ("eta_carnot", opt(r.eta_carnot)),
        ("cop_carnot", opt(r.cop_carnot)),
    ];
    let mut stdout = io::stdout().lock();
    for (key, value) in lines {
        writeln!(stdout, "{key}={value}")?;
    }
    if let Some(path) = &params.out {
        fs::write(path, format!("{HEADER}\n{}\n", format_row(&row)))?;
    }
    Ok(())
}

fn sweep(params: Params) -> Result<(), Error> {
    let config = SweepConfig::from_params(&params)?;
    let rows = run_sweep(&config)?;
    write_output(params.out.as_deref(), |w| write_csv(w, &rows))
}

fn figure(args: FigureArgs) -> Result<(), Error> {
    let fig: Figure = args.id.parse()?;
    let options = FigureOptions {
        steps: args.steps,
        grid: args.grid,
        parallel: args.parallel,
    };
    fs::create_dir_all(&args.out)?;
    for file in figures::reproduce_figure(fig, options)? {
        let path = args.out.join(&file.name);
        fs::write(&path, file.contents)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => args.resolve().and_then(run),
        Command::Sweep(args) => args.resolve().and_then(sweep),
        Command::Figure(args) => figure(args),
        Command::Selftest(args) => {
            let mut failed = 0;
            for (criterion, check) in selftest::run_suite(args.seed, args.draws) {
                failed += usize::from(!check.passed());
                println!("[{criterion}] {check}");
            }
            if failed > 0 {
                eprintln!("{failed} check(s) failed");
                return ExitCode::FAILURE;
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

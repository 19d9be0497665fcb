use std::path::PathBuf;
use std::process::ExitCode;

use an_wiretap_cli::{runner, CliError, ExperimentConfig, FigureContext, FigureRegistry, Scale};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "an-wiretap", version, about = "Secrecy rates of MIMO wiretap channels with artificial noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by an experiment file and write its CSV.
    Run {
        config: PathBuf,
        /// Print the parsed configuration (linear units) and exit.
        #[arg(long)]
        dump_config: bool,
    },
    /// Reproduce one figure's data as CSV.
    Figure {
        id: String,
        #[arg(long, default_value = "desk")]
        scale: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// List the available figures.
    Figures,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // Bad arguments are configuration errors.
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Run { config, dump_config } => {
            let cfg = ExperimentConfig::load(&config)?;
            if dump_config {
                print!("{}", cfg.to_toml());
                return Ok(());
            }
            let table = runner::run(&cfg)?;
            eprintln!("wrote {} rows to {}", table.rows.len(), cfg.outputs.csv_path.display());
            Ok(())
        }
        Command::Figure { id, scale, out, seed } => {
            let registry = FigureRegistry::standard();
            let figure = registry.get(&id)?;
            let scale: Scale = scale.parse()?;
            let table = figure.generate(&FigureContext::new(scale, seed))?;
            match &out {
                Some(path) => table.save(path)?,
                None => table.write_csv(std::io::stdout().lock())?,
            }
            match table.first_error() {
                Some(e) => Err(CliError::Numerical(e.to_owned())),
                None => Ok(()),
            }
        }
        Command::Figures => {
            for f in FigureRegistry::standard().iter() {
                println!("{:<6} {}", f.id(), f.about());
            }
            Ok(())
        }
    }
}

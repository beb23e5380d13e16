use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtext::harness::{self, MapChoice, Overrides};
use qtext::Error;

#[derive(Parser)]
#[command(name = "qtext", version, about = "Quantum-kernel text classification pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Featurize the dataset into features.csv
    Embed(Common),
    /// Build Gram matrices from features.csv
    Kernel(Common),
    /// Train the SVM on the Gram files and score the test block
    TrainEval(Common),
    /// Run every (dim, map) cell over all seeds and aggregate
    Experiment(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_map)]
    map: Option<MapChoice>,
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
}

fn parse_map(s: &str) -> Result<MapChoice, String> {
    MapChoice::parse(s).map_err(|e| e.to_string())
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            shots: self.shots,
            seed: self.seed,
            map: self.map,
            qubits: self.qubits,
            dim: self.dim,
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let (Command::Embed(c) | Command::Kernel(c) | Command::TrainEval(c) | Command::Experiment(c)) = &cli.command;
    let cfg = harness::load_config(&c.config, &c.overrides())?;
    match cli.command {
        Command::Embed(_) => {
            let s = harness::cmd_embed(&cfg)?;
            println!(
                "vocabulary {} words, dim {}; wrote {} train + {} test rows to {}",
                s.vocabulary,
                s.dim,
                s.train_rows,
                s.test_rows,
                cfg.out_dir.join(harness::FEATURES_FILE).display()
            );
        }
        Command::Kernel(_) => {
            let s = harness::cmd_kernel(&cfg)?;
            print!("{} kernel on {} qubits, shots {}", s.map, s.qubits, s.shots);
            match s.frobenius_distance {
                Some(d) => println!(", Frobenius distance to exact {d:.6}"),
                None => println!(),
            }
        }
        Command::TrainEval(_) => {
            let r = harness::cmd_train_eval(&cfg)?;
            let cell = &r.payload.cells[0];
            println!("{} accuracy {:.4}", cell.map, cell.accuracies[0]);
        }
        Command::Experiment(_) => {
            let r = harness::cmd_experiment(&cfg)?;
            print!("{}", r.table_csv());
            if r.any_mostly_failed() {
                eprintln!("more than half of the seeds failed in at least one cell");
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

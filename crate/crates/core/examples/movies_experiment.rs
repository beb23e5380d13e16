//! The movie-review table: dims 2..=5, linear/ZZ/amplitude columns, 20 seeds of
//! 40 train / 10 test reviews, 10000-shot kernels. Writes report.json and
//! report.csv under target/movies_example.
//!
//!     cargo run --release --example movies_experiment

use std::path::Path;

use qtext::harness::{cmd_experiment, ExperimentConfig};

fn main() -> qtext::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut cfg = ExperimentConfig::load(&root.join("configs/movies.toml"))?;
    cfg.data_path = root.join("data/movies");
    cfg.out_dir = root.join("target/movies_example");
    let report = cmd_experiment(&cfg)?;
    print!("{}", report.table_csv());
    if let Some(cell) = report.cell("amplitude", 4) {
        println!("amplitude, 4 qubits: per-seed {:?}, best {:.1}", cell.accuracies, cell.best());
    }
    println!("timings {:?}", report.timings);
    Ok(())
}

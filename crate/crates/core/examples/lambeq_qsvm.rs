//! Lambeq QSVM: sentence vectors from self-trained embeddings, amplitude map
//! on 4 qubits (16 dims) and the ZZ map swept over 2..=8 qubits, exact kernels.
//!
//!     cargo run --release --example lambeq_qsvm

use std::path::Path;

use qtext::harness::{run_seed, Corpus, ExperimentConfig, MapChoice};

fn main() -> qtext::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lambeq");
    let cfg = ExperimentConfig::parse(&format!(
        "dataset = \"lambeq\"\ndata_path = {:?}\ndim = 16\nwindow = 5\nshots = 0\n",
        data.display().to_string()
    ))?;
    let corpus = Corpus::load(&cfg)?;
    let table = qtext::harness::embedding_table(&cfg, &corpus, 16)?;

    let acc = run_seed(&cfg, &corpus, &table, MapChoice::Amplitude, 16, 0)?;
    println!("amplitude, 16 dims on {} qubits: {acc:.3}", cfg.qubits_for(MapChoice::Amplitude, 16)?);
    for dim in 2..=8 {
        let zz = run_seed(&cfg, &corpus, &table, MapChoice::Zz, dim, 0)?;
        let lin = run_seed(&cfg, &corpus, &table, MapChoice::Linear, dim, 0)?;
        println!("dim {dim}: ZZ {zz:.3}  linear {lin:.3}");
    }
    Ok(())
}

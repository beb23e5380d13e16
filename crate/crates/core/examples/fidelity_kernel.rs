//! Fidelity kernel Gram matrix with the amplitude map, checked against the
//! squared classical dot product, and written in the kernel CSV format.
//!
//!     cargo run --example fidelity_kernel

use qtext::feature_map::{FeatureMapSpec, FeatureVector};
use qtext::kernel::{gram_matrix, linear_gram, repair_psd, write_kernel_csv, Cols, ShotConfig};

fn main() -> qtext::Result<()> {
    let xs = (0..5)
        .map(|i| {
            let t = i as f64;
            FeatureVector::normalized(vec![t.cos(), (0.5 * t).sin(), 0.3, 1.0 - 0.2 * t])
        })
        .collect::<qtext::Result<Vec<_>>>()?;

    let k = gram_matrix(&FeatureMapSpec::amplitude(2), &xs, Cols::Same, &ShotConfig::exact())?;
    let lin = linear_gram(&xs, Cols::Same)?;
    let mut worst: f64 = 0.0;
    for i in 0..k.rows() {
        let row: Vec<String> = k.row(i).iter().map(|v| format!("{v:.4}")).collect();
        println!("{}", row.join("  "));
        for j in 0..k.cols() {
            worst = worst.max((k.get(i, j) - lin.get(i, j).powi(2)).abs());
        }
    }
    println!("max |K - (x.y)^2| = {worst:.2e}");
    println!("min eigenvalue {:.3e}", repair_psd(&k)?.min_eigenvalue);

    let path = std::env::temp_dir().join("qtext_gram.csv");
    write_kernel_csv(&path, &k)?;
    println!("wrote {}", path.display());
    Ok(())
}

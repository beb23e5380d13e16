//! The ZZ feature map: min-max scale inputs to [0, pi], compile the circuit
//! and compare kernel values for nearby and distant points.
//!
//!     cargo run --example zz_feature_map

use qtext::feature_map::{AngleScaler, FeatureMapSpec, FeatureVector};
use qtext::kernel::exact_kernel;

fn main() -> qtext::Result<()> {
    let raw = vec![
        FeatureVector::new(vec![0.10, 0.80, -0.30])?,
        FeatureVector::new(vec![0.12, 0.78, -0.28])?,
        FeatureVector::new(vec![-0.90, 0.05, 0.60])?,
    ];
    let scaler = AngleScaler::fit(&raw)?;
    let xs = raw.iter().map(|x| scaler.transform(x)).collect::<qtext::Result<Vec<_>>>()?;

    let map = FeatureMapSpec::zz(3, 2);
    let circuit = map.circuit(&xs[0])?;
    println!("ZZ map on 3 qubits, 2 reps: {} gates", circuit.len());
    for g in circuit.gates().iter().take(12) {
        println!("  {g:?}");
    }

    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        println!("k(x{i}, x{j}) = {:.6}", exact_kernel(&map, &xs[i], &xs[j])?);
    }
    Ok(())
}

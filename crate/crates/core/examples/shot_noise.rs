//! Shot-noise study: estimate a kernel value near 0.5 with 100, 1000 and
//! 10000 shots over 100 seeds and fit the error decay on a log-log scale.
//!
//!     cargo run --release --example shot_noise

use qtext::feature_map::{FeatureMapSpec, FeatureVector};
use qtext::kernel::{estimated_kernel, exact_kernel, gram_matrix, Cols, ShotConfig};

fn main() -> qtext::Result<()> {
    let map = FeatureMapSpec::amplitude(1);
    let x = FeatureVector::new(vec![1.0, 0.0])?;
    let y = FeatureVector::normalized(vec![1.0, 1.0])?;
    let exact = exact_kernel(&map, &x, &y)?;
    println!("exact kernel {exact:.6}");

    let mut points = Vec::new();
    for shots in [100u64, 1000, 10_000] {
        let mut err = 0.0;
        for seed in 0..100 {
            err += (estimated_kernel(&map, &x, &y, &ShotConfig::sampled(shots, seed), (0, 1))? - exact).abs();
        }
        let mean = err / 100.0;
        println!("R = {shots:>6}: mean |error| {mean:.5}");
        points.push(((shots as f64).ln(), mean.ln()));
    }
    let n = points.len() as f64;
    let (mx, my) = (points.iter().map(|p| p.0).sum::<f64>() / n, points.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    println!("log-log slope {slope:.3}");

    // Gram-level view: Frobenius distance to the exact Gram shrinks with shots.
    let xs = (0..8)
        .map(|i| FeatureVector::normalized(vec![1.0, i as f64 * 0.3, (i as f64).sin(), 0.5]))
        .collect::<qtext::Result<Vec<_>>>()?;
    let map = FeatureMapSpec::amplitude(2);
    let exact = gram_matrix(&map, &xs, Cols::Same, &ShotConfig::exact())?;
    for shots in [1000, 10_000] {
        let k = gram_matrix(&map, &xs, Cols::Same, &ShotConfig::sampled(shots, 7))?;
        println!("R = {shots:>6}: ||K_shots - K_exact||_F = {:.5}", k.frobenius_distance(&exact)?);
    }
    Ok(())
}

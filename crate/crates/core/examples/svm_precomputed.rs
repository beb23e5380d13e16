//! SMO on a precomputed kernel: train on a small 2-D problem, inspect the
//! support vectors and round-trip the model through JSON.
//!
//!     cargo run --example svm_precomputed

use qtext::feature_map::FeatureVector;
use qtext::kernel::{linear_gram, Cols};
use qtext::svm::{accuracy, dual_objective, predict, train, SvmModel, TrainConfig};

fn main() -> qtext::Result<()> {
    let pts = [[2.0, 1.0], [1.5, 2.5], [3.0, 2.0], [-1.0, -0.5], [-2.0, -1.5], [-0.5, -2.0], [0.4, 0.3]];
    let labels: [i8; 7] = [1, 1, 1, -1, -1, -1, -1];
    let xs = pts
        .iter()
        .map(|p| FeatureVector::new(p.to_vec()))
        .collect::<qtext::Result<Vec<_>>>()?;

    let k = linear_gram(&xs, Cols::Same)?;
    let cfg = TrainConfig::with_c(10.0);
    let model = train(&k, &labels, &cfg)?;
    println!("alphas {:?}", model.alphas.iter().map(|a| format!("{a:.4}")).collect::<Vec<_>>());
    println!("support vectors {:?}, bias {:.4}", model.support_indices, model.bias);
    println!("dual objective {:.6}", dual_objective(&k, &labels, &model.alphas));

    let test = [FeatureVector::new(vec![1.0, 1.0])?, FeatureVector::new(vec![-1.0, 0.0])?];
    let kt = linear_gram(&test, Cols::Other(&xs))?;
    let predicted = predict(&model, &kt)?;
    println!("test predictions {predicted:?}, accuracy {}", accuracy(&predicted, &[1, -1])?);

    let json = model.to_json()?;
    assert_eq!(SvmModel::from_json(&json)?, model);
    println!("{json}");
    Ok(())
}

//! Bag-of-words topic classifier on the Lambeq sentences, classically and as
//! one RY-accumulator qubit per topic.
//!
//!     cargo run --example qbow_lambeq

use std::path::Path;

use qtext::text::{load_lambeq_split, qbow_classify, qbow_train, QBowMode};

fn main() -> qtext::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lambeq");
    let (train, test) = load_lambeq_split(&dir)?;
    let model = qbow_train(&train)?;
    println!(
        "{} training sentences, {} scored words, angle scale {:.4} rad",
        train.len(),
        model.vocabulary_size(),
        model.angle_scale
    );
    for w in ["meal", "program", "person", "."] {
        if let Some([a, b]) = model.score(w) {
            println!("  {w:>8}: {} {a:.3}, {} {b:.3}", model.topics[0], model.topics[1]);
        }
    }

    let (mut hits, mut agree) = (0, 0);
    for d in &test.documents {
        let classical = qbow_classify(&model, d, QBowMode::Classical)?;
        let circuit = qbow_classify(&model, d, QBowMode::Circuit)?;
        hits += usize::from(classical == d.label);
        agree += usize::from(classical == circuit);
    }
    println!("test accuracy {hits}/{}; modes agree on {agree}/{}", test.len(), test.len());
    Ok(())
}

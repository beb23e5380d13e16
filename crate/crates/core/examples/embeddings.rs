//! PPMI word vectors trained on the Lambeq sentences: eigenvalues, nearest
//! neighbours, sentence vectors and the text vector format.
//!
//!     cargo run --example embeddings

use std::path::Path;

use qtext::linalg::dot;
use qtext::text::{load_embeddings_text, load_lambeq_split, sentence_vector, train_embeddings};

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b) / (dot(a, a).sqrt() * dot(b, b).sqrt())
}

fn main() -> qtext::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lambeq");
    let (train, test) = load_lambeq_split(&dir)?;
    let corpus = train.concat(&test);
    let table = train_embeddings(&corpus, 8, 5)?;
    println!("{} words x {} dims", table.len(), table.dim());
    println!("eigenvalues {:?}", table.eigenvalues().unwrap_or_default());

    for w in ["meal", "software"] {
        let v = table.vector(w).expect("in vocabulary");
        let mut near: Vec<(f64, &str)> = table
            .words()
            .iter()
            .filter(|o| o.as_str() != w)
            .map(|o| (cosine(v, table.vector(o).unwrap()), o.as_str()))
            .collect();
        near.sort_by(|a, b| b.0.total_cmp(&a.0));
        println!("nearest to {w}: {:?}", &near[..3]);
    }

    let doc = &test.documents[0];
    let s = sentence_vector(doc, &table)?;
    println!("{:?} -> {:?}", doc.tokens, s.values().iter().map(|x| format!("{x:+.3}")).collect::<Vec<_>>());

    let path = std::env::temp_dir().join("qtext_vectors.txt");
    table.save_text(&path)?;
    let back = load_embeddings_text(&path)?;
    println!("reloaded {} vectors from {}", back.len(), path.display());
    Ok(())
}

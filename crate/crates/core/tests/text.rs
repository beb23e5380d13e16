mod common;

use std::collections::{HashMap, HashSet};

use common::{repo_root, rng};
use nalgebra::DMatrix;
use proptest::prelude::*;
use qtext::text::{
    load_embeddings_text, load_lambeq_split, ppmi_matrix, qbow_classify, qbow_train, sample_subset, sentence_vector,
    train_embeddings, train_embeddings_with, Document, EmbeddingParams, LabeledDataset, QBowMode, DENSE_LIMIT,
};
use rand::Rng;

fn lambeq() -> LabeledDataset {
    let (train, test) = load_lambeq_split(&repo_root().join("data/lambeq")).unwrap();
    train.concat(&test)
}

/// Documents over a Zipf-ish vocabulary of `vocab` words with a little topic structure.
fn synthetic(seed: u64, docs: usize, vocab: usize, len: usize) -> Vec<Document> {
    let mut r = rng(seed);
    (0..docs)
        .map(|i| {
            let label = i % 2;
            let tokens = (0..len)
                .map(|_| {
                    let u: f64 = r.random();
                    let w = ((vocab as f64).powf(u) - 1.0) as usize;
                    let w = if r.random_bool(0.3) { (w / 2) * 2 + label } else { w };
                    format!("w{:03}", w.min(vocab - 1))
                })
                .collect();
            Document {
                id: format!("d{i}"),
                tokens,
                label,
            }
        })
        .collect()
}

fn dataset(docs: Vec<Document>) -> LabeledDataset {
    LabeledDataset::new(docs, ["a".into(), "b".into()]).unwrap()
}

#[test]
fn embeddings_are_bit_identical_across_runs() {
    let ds = lambeq();
    let a = train_embeddings(&ds, 8, 5).unwrap().to_text();
    let b = train_embeddings(&ds, 8, 5).unwrap().to_text();
    assert_eq!(a, b);
}

/// Rank-`d` reconstruction from the table against a dense eigendecomposition.
fn check_low_rank(docs: &[Document], dim: usize, expect_large: bool) {
    let params = EmbeddingParams {
        dim,
        window: 3,
        min_count: 1,
    };
    let table = train_embeddings_with(docs, &params).unwrap();
    let n = table.len();
    assert_eq!(n > DENSE_LIMIT, expect_large, "vocabulary {n}");
    let ppmi = ppmi_matrix(docs, table.words(), 3).to_dense();
    let m = DMatrix::from_row_slice(n, n, &ppmi);
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let mut oracle = DMatrix::zeros(n, n);
    for &c in &order[..dim] {
        let u = eig.eigenvectors.column(c);
        oracle += eig.eigenvalues[c] * u * u.transpose();
    }
    let values = table.eigenvalues().unwrap();
    for (v, &c) in values.iter().zip(&order[..dim]) {
        assert!((v - eig.eigenvalues[c]).abs() < 1e-6 * m.norm(), "{v} vs {}", eig.eigenvalues[c]);
    }
    let mut ours = DMatrix::zeros(n, n);
    for (c, v) in values.iter().enumerate() {
        let e = DMatrix::from_fn(n, 1, |i, _| table.row(i)[c]);
        ours += v.signum() * &e * e.transpose();
    }
    let gap = (&ours - &oracle).norm() / m.norm();
    assert!(gap < 1e-6, "relative reconstruction gap {gap}");
}

#[test]
fn dense_path_matches_oracle() {
    check_low_rank(&lambeq().documents, 6, false);
}

#[test]
fn subspace_path_matches_oracle() {
    check_low_rank(&synthetic(21, 300, 400, 25), 5, true);
}

#[test]
fn lambeq_vectors_are_finite_units() {
    let ds = lambeq();
    let table = train_embeddings(&ds, 8, 5).unwrap();
    for d in &ds.documents {
        let v = sentence_vector(d, &table).unwrap();
        assert!(v.values().iter().all(|x| x.is_finite()));
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn embedding_text_roundtrip() {
    let table = train_embeddings(&lambeq(), 4, 5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e.txt");
    table.save_text(&p).unwrap();
    let back = load_embeddings_text(&p).unwrap();
    assert_eq!(back.words(), table.words());
    for i in 0..table.len() {
        assert_eq!(back.row(i), table.row(i));
    }
}

#[test]
fn qbow_is_perfect_on_lambeq() {
    let (train, test) = load_lambeq_split(&repo_root().join("data/lambeq")).unwrap();
    let model = qbow_train(&train).unwrap();
    for d in &test.documents {
        let c = qbow_classify(&model, d, QBowMode::Classical).unwrap();
        assert_eq!(c, d.label, "{}", d.id);
        assert_eq!(qbow_classify(&model, d, QBowMode::Circuit).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_hygiene(seed in any::<u64>(), n_train in 2usize..20, n_test in 1usize..10, grouped in any::<bool>()) {
        let ds = dataset(synthetic(seed ^ 7, 40, 30, 5));
        let groups: HashMap<String, String> =
            ds.documents.iter().enumerate().map(|(i, d)| (d.id.clone(), format!("g{}", i / 3))).collect();
        let g = grouped.then_some(&groups);
        let (train, test) = sample_subset(&ds, n_train, n_test, seed, g).unwrap();
        prop_assert_eq!(train.len(), n_train);
        prop_assert_eq!(test.len(), n_test);
        prop_assert_eq!(train.class_count(0), n_train / 2);
        prop_assert_eq!(test.class_count(0), n_test / 2);
        let ids: HashSet<&str> = train.documents.iter().map(|d| d.id.as_str()).collect();
        prop_assert!(test.documents.iter().all(|d| !ids.contains(d.id.as_str())));
        let again = sample_subset(&ds, n_train, n_test, seed, g).unwrap();
        prop_assert_eq!(again, (train, test));
    }

    #[test]
    fn qbow_modes_agree(seed in any::<u64>(), vocab in 3usize..40, len in 1usize..12) {
        let docs = synthetic(seed, 16, vocab, len);
        let ds = dataset(docs.clone());
        let model = qbow_train(&ds).unwrap();
        for d in synthetic(seed.wrapping_add(1), 16, vocab, len).iter().chain(&docs) {
            match qbow_classify(&model, d, QBowMode::Classical) {
                Ok(c) => prop_assert_eq!(qbow_classify(&model, d, QBowMode::Circuit).unwrap(), c),
                Err(_) => prop_assert!(qbow_classify(&model, d, QBowMode::Circuit).is_err()),
            }
        }
    }
}

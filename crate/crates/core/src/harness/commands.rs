//! The four pipeline commands. Each reads and writes files under `out_dir`:
//!
//! | command      | reads                                  | writes |
//! |--------------|----------------------------------------|--------|
//! | `embed`      | dataset                                | `features.csv`, `embeddings.txt` |
//! | `kernel`     | `features.csv`                         | `gram_train.csv`, `gram_test.csv`; with shots also `gram_train_exact.csv`, `kernel_summary.json` |
//! | `train-eval` | `features.csv`, `gram_*.csv`           | `model.json`, `report.json`, `report.csv` |
//! | `experiment` | dataset                                | `report.json`, `report.csv` |

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{EmbeddingSource, ExperimentConfig};
use super::pipeline::{bow_seed, embedding_table, featurize, fit_and_score, kernels, map_inputs, run_seed, Corpus};
use super::report::{CellResult, ExperimentReport};
use crate::error::{Error, Result};
use crate::kernel::{gram_matrix, read_kernel_csv, write_kernel_csv, Cols, ShotConfig};
use crate::text::{FeatureRow, FeatureSet, Split};

pub const FEATURES_FILE: &str = "features.csv";
pub const EMBEDDINGS_FILE: &str = "embeddings.txt";
pub const GRAM_TRAIN_FILE: &str = "gram_train.csv";
pub const GRAM_TEST_FILE: &str = "gram_test.csv";
pub const GRAM_EXACT_FILE: &str = "gram_train_exact.csv";
pub const KERNEL_SUMMARY_FILE: &str = "kernel_summary.json";
pub const MODEL_FILE: &str = "model.json";

fn out_path(cfg: &ExperimentConfig, name: &str) -> PathBuf {
    cfg.out_dir.join(name)
}

fn ensure_out_dir(cfg: &ExperimentConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedSummary {
    pub vocabulary: usize,
    pub dim: usize,
    pub train_rows: usize,
    pub test_rows: usize,
}

/// Featurizes the split for the first configured seed.
pub fn cmd_embed(cfg: &ExperimentConfig) -> Result<EmbedSummary> {
    let corpus = Corpus::load(cfg)?;
    let table = embedding_table(cfg, &corpus, cfg.dim)?;
    let table = if table.dim() == cfg.dim {
        table
    } else {
        table.truncate(cfg.dim)?
    };
    let (train, test) = corpus.split(cfg, cfg.seeds[0])?;
    let mut rows = Vec::with_capacity(train.len() + test.len());
    for (ds, split) in [(&train, Split::Train), (&test, Split::Test)] {
        for (doc, features) in ds.documents.iter().zip(featurize(ds, &table)?) {
            rows.push(FeatureRow {
                label: doc.label,
                split,
                features,
            });
        }
    }
    ensure_out_dir(cfg)?;
    FeatureSet { rows }.save(&out_path(cfg, FEATURES_FILE))?;
    if cfg.embedding == EmbeddingSource::Trained {
        table.save_text(&out_path(cfg, EMBEDDINGS_FILE))?;
    }
    Ok(EmbedSummary {
        vocabulary: table.len(),
        dim: table.dim(),
        train_rows: train.len(),
        test_rows: test.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSummary {
    pub map: String,
    pub qubits: usize,
    pub shots: u64,
    pub seed: u64,
    /// Frobenius distance between the shot-estimated and exact training Gram.
    pub frobenius_distance: Option<f64>,
}

/// Builds the training Gram and test block from `features.csv`.
pub fn cmd_kernel(cfg: &ExperimentConfig) -> Result<KernelSummary> {
    let features = FeatureSet::load(&out_path(cfg, FEATURES_FILE))?;
    let (xtr, _) = features.split(Split::Train);
    let (xte, _) = features.split(Split::Test);
    if xtr.is_empty() || xte.is_empty() {
        return Err(Error::DataLayout("feature file needs train and test rows".into()));
    }
    let qubits = cfg.qubits_for(cfg.map, features.dim())?;
    let (xtr, xte) = map_inputs(cfg.map, xtr, xte)?;
    let seed = cfg.seeds[0];
    let shots = ShotConfig::sampled(cfg.shots, seed);
    let (k, kt) = kernels(cfg, cfg.map, qubits, &xtr, &xte, &shots)?;
    write_kernel_csv(&out_path(cfg, GRAM_TRAIN_FILE), &k)?;
    write_kernel_csv(&out_path(cfg, GRAM_TEST_FILE), &kt)?;
    let mut summary = KernelSummary {
        map: cfg.map.name().into(),
        qubits,
        shots: cfg.shots,
        seed,
        frobenius_distance: None,
    };
    if let (true, Some(spec)) = (cfg.shots > 0, cfg.map_spec(cfg.map, qubits)) {
        let exact = gram_matrix(&spec, &xtr, Cols::Same, &ShotConfig::exact())?;
        write_kernel_csv(&out_path(cfg, GRAM_EXACT_FILE), &exact)?;
        summary.frobenius_distance = Some(k.frobenius_distance(&exact)?);
    }
    let path = out_path(cfg, KERNEL_SUMMARY_FILE);
    fs::write(&path, serde_json::to_string_pretty(&summary)?).map_err(|e| Error::io(&path, e))?;
    Ok(summary)
}

/// Trains on `gram_train.csv` and scores `gram_test.csv` against the labels in `features.csv`.
pub fn cmd_train_eval(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let features = FeatureSet::load(&out_path(cfg, FEATURES_FILE))?;
    let k = read_kernel_csv(&out_path(cfg, GRAM_TRAIN_FILE))?;
    let kt = read_kernel_csv(&out_path(cfg, GRAM_TEST_FILE))?;
    let (_, ytr) = features.split(Split::Train);
    let (_, yte) = features.split(Split::Test);
    if !k.is_square() || k.rows() != ytr.len() || kt.rows() != yte.len() || kt.cols() != ytr.len() {
        return Err(Error::DataLayout(format!(
            "kernels {}x{} and {}x{} do not match {} train / {} test labels",
            k.rows(),
            k.cols(),
            kt.rows(),
            kt.cols(),
            ytr.len(),
            yte.len()
        )));
    }
    let loaded = start.elapsed().as_secs_f64();
    let eval = fit_and_score(&k, &kt, &ytr, &yte, &cfg.train_config())?;
    eval.model.save(&out_path(cfg, MODEL_FILE))?;
    let dim = features.dim();
    let qubits = cfg.qubits_for(cfg.map, dim).ok().filter(|&q| q > 0);
    let cell = CellResult::new(cfg.map.name(), Some(dim), qubits, k.shots, vec![(k.seed, Ok(eval.accuracy))]);
    let mut report = ExperimentReport::new(cfg.clone(), vec![cell], None);
    report.timings.insert("load".into(), loaded);
    report.timings.insert("train".into(), start.elapsed().as_secs_f64() - loaded);
    report.save(&cfg.out_dir)?;
    Ok(report)
}

/// Every (dim, map) cell over every seed, plus the bag-of-words baseline.
///
/// Embeddings are trained once, unsupervised, on the whole pool at the largest
/// requested dimension; smaller rows use the leading coordinates. Seed `s`
/// draws the split and seeds the shot sampler. Failed seeds are recorded and
/// skipped in the aggregates.
pub fn cmd_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let corpus = Corpus::load(cfg)?;
    let dims = cfg.row_dims();
    let max_dim = dims.iter().copied().max().expect("validated");
    let table = embedding_table(cfg, &corpus, max_dim)?;
    let embed_time = start.elapsed().as_secs_f64();

    let mut cells = Vec::new();
    for &dim in &dims {
        for map in cfg.columns() {
            let qubits = cfg.qubits_for(map, dim)?;
            let outcomes = cfg
                .seeds
                .iter()
                .map(|&s| (s, run_seed(cfg, &corpus, &table, map, dim, s)))
                .collect();
            let shots = if qubits == 0 { 0 } else { cfg.shots };
            cells.push(CellResult::new(map.name(), Some(dim), (qubits > 0).then_some(qubits), shots, outcomes));
        }
    }
    let bow = CellResult::new(
        "bow",
        None,
        None,
        0,
        cfg.seeds.iter().map(|&s| (s, bow_seed(cfg, &corpus, s))).collect(),
    );
    let mut report = ExperimentReport::new(cfg.clone(), cells, Some(bow));
    report.timings.insert("embed".into(), embed_time);
    report.timings.insert("runs".into(), start.elapsed().as_secs_f64() - embed_time);
    report.timings.insert("total".into(), start.elapsed().as_secs_f64());
    report.save(&cfg.out_dir)?;
    Ok(report)
}

/// Loads `path` and applies overrides; unreadable or invalid configs are usage errors.
pub fn load_config(path: &Path, overrides: &super::config::Overrides) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    cfg.apply(overrides)?;
    Ok(cfg)
}

//! Stage functions shared by the commands: corpus, embeddings, features,
//! kernels, and one train/evaluate run.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::config::{DatasetKind, EmbeddingSource, ExperimentConfig, MapChoice};
use crate::error::{Error, Result};
use crate::feature_map::{AngleScaler, FeatureVector};
use crate::kernel::{gram_matrix, linear_gram, repair_psd, Cols, KernelMatrix, ShotConfig};
use crate::svm::{self, SvmModel, TrainConfig};
use crate::text::{
    load_embeddings_text, load_imdb, load_lambeq_split, qbow_classify, qbow_train, sample_subset,
    sentence_vector, train_embeddings_with, EmbeddingParams, EmbeddingTable, LabeledDataset, QBowMode,
};

/// All documents of a dataset, plus its fixed split if it has one.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub pool: LabeledDataset,
    pub fixed_split: Option<(LabeledDataset, LabeledDataset)>,
    pub groups: Option<HashMap<String, String>>,
}

impl Corpus {
    pub fn load(cfg: &ExperimentConfig) -> Result<Corpus> {
        let (pool, fixed_split) = match cfg.dataset {
            DatasetKind::Lambeq => {
                let (train, test) = load_lambeq_split(&cfg.data_path)?;
                (train.concat(&test), Some((train, test)))
            }
            DatasetKind::Imdb => (load_imdb(&cfg.data_path)?, None),
        };
        let groups = cfg.group_map.as_deref().map(load_group_map).transpose()?;
        Ok(Corpus {
            pool,
            fixed_split,
            groups,
        })
    }

    /// The train/test documents for `seed`: the fixed split when there is one,
    /// otherwise a seeded balanced sample of `n_train + n_test` documents.
    pub fn split(&self, cfg: &ExperimentConfig, seed: u64) -> Result<(LabeledDataset, LabeledDataset)> {
        match &self.fixed_split {
            Some(split) => Ok(split.clone()),
            None => sample_subset(&self.pool, cfg.n_train, cfg.n_test, seed, self.groups.as_ref()),
        }
    }
}

/// Reads `doc_id,group` lines (`#` starts a comment).
pub fn load_group_map(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((id, group)) = line.split_once(',') else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: "expected doc_id,group".into(),
            });
        };
        map.insert(id.trim().to_owned(), group.trim().to_owned());
    }
    Ok(map)
}

/// Word vectors with at least `dim` coordinates, trained on the whole pool
/// (no labels are used) or read from `embedding_file`.
pub fn embedding_table(cfg: &ExperimentConfig, corpus: &Corpus, dim: usize) -> Result<EmbeddingTable> {
    let table = match cfg.embedding {
        EmbeddingSource::Trained => train_embeddings_with(
            &corpus.pool.documents,
            &EmbeddingParams {
                dim,
                window: cfg.window,
                min_count: cfg.min_count,
            },
        )?,
        EmbeddingSource::File => {
            let path = cfg.embedding_file.as_deref().expect("validated");
            load_embeddings_text(path)?
        }
    };
    if table.dim() < dim {
        return Err(Error::Config(format!("embeddings have {} coordinates, {dim} requested", table.dim())));
    }
    Ok(table)
}

pub fn featurize(ds: &LabeledDataset, table: &EmbeddingTable) -> Result<Vec<FeatureVector>> {
    ds.documents.iter().map(|d| sentence_vector(d, table)).collect()
}

/// Map-specific preprocessing: ZZ inputs are min-max scaled to `[0, pi]`
/// with ranges fitted on the training rows; other maps take unit vectors as is.
pub fn map_inputs(
    map: MapChoice,
    train: Vec<FeatureVector>,
    test: Vec<FeatureVector>,
) -> Result<(Vec<FeatureVector>, Vec<FeatureVector>)> {
    if map != MapChoice::Zz {
        return Ok((train, test));
    }
    let scaler = AngleScaler::fit(&train)?;
    let apply = |xs: &[FeatureVector]| xs.iter().map(|x| scaler.transform(x)).collect::<Result<Vec<_>>>();
    Ok((apply(&train)?, apply(&test)?))
}

/// Training Gram and test-vs-train block.
pub fn kernels(
    cfg: &ExperimentConfig,
    map: MapChoice,
    qubits: usize,
    train: &[FeatureVector],
    test: &[FeatureVector],
    shots: &ShotConfig,
) -> Result<(KernelMatrix, KernelMatrix)> {
    match cfg.map_spec(map, qubits) {
        None => Ok((linear_gram(train, Cols::Same)?, linear_gram(test, Cols::Other(train))?)),
        Some(spec) => Ok((
            gram_matrix(&spec, train, Cols::Same, shots)?,
            gram_matrix(&spec, test, Cols::Other(train), shots)?,
        )),
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub model: SvmModel,
    pub predictions: Vec<i8>,
    pub accuracy: f64,
    pub psd_shift: f64,
}

/// PSD repair, SMO training and test accuracy.
pub fn fit_and_score(
    k_train: &KernelMatrix,
    k_test: &KernelMatrix,
    y_train: &[i8],
    y_test: &[i8],
    train_cfg: &TrainConfig,
) -> Result<Evaluation> {
    let repaired = repair_psd(k_train)?;
    let model = svm::train(&repaired.matrix, y_train, train_cfg)?;
    let predictions = svm::predict(&model, k_test)?;
    let accuracy = svm::accuracy(&predictions, y_test)?;
    Ok(Evaluation {
        model,
        predictions,
        accuracy,
        psd_shift: repaired.shift,
    })
}

/// Test accuracy of one (map, dim, seed) run; `table` may be wider than `dim`.
pub fn run_seed(
    cfg: &ExperimentConfig,
    corpus: &Corpus,
    table: &EmbeddingTable,
    map: MapChoice,
    dim: usize,
    seed: u64,
) -> Result<f64> {
    let table = if table.dim() == dim {
        table.clone()
    } else {
        table.truncate(dim)?
    };
    let (train, test) = corpus.split(cfg, seed)?;
    let (xtr, xte) = map_inputs(map, featurize(&train, &table)?, featurize(&test, &table)?)?;
    let qubits = cfg.qubits_for(map, dim)?;
    let shots = ShotConfig::sampled(cfg.shots, seed);
    let (k, kt) = kernels(cfg, map, qubits, &xtr, &xte, &shots)?;
    Ok(fit_and_score(&k, &kt, &train.signed_labels(), &test.signed_labels(), &cfg.train_config())?.accuracy)
}

/// Classical bag-of-words accuracy on the split for `seed`.
pub fn bow_seed(cfg: &ExperimentConfig, corpus: &Corpus, seed: u64) -> Result<f64> {
    let (train, test) = corpus.split(cfg, seed)?;
    let model = qbow_train(&train)?;
    let predicted = test
        .documents
        .iter()
        .map(|d| qbow_classify(&model, d, QBowMode::Classical).map(|c| if c == 1 { 1 } else { -1 }))
        .collect::<Result<Vec<i8>>>()?;
    svm::accuracy(&predicted, &test.signed_labels())
}


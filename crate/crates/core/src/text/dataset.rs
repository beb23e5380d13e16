use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;

use super::tokenize::{tokenize, TokenizeMode};
use crate::error::{Error, Result};
use crate::rng;

/// File names of the Lambeq meaning-classification split.
pub const LAMBEQ_TRAIN_FILE: &str = "mc_train_data.txt";
pub const LAMBEQ_TEST_FILE: &str = "mc_test_data.txt";

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    /// Stable identifier: file stem for IMDB-style corpora, `file:line` for Lambeq.
    pub id: String,
    pub tokens: Vec<String>,
    /// Class index, 0 or 1.
    pub label: usize,
}

impl Document {
    /// SVM label: class 0 is -1, class 1 is +1.
    pub fn signed_label(&self) -> i8 {
        if self.label == 1 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub documents: Vec<Document>,
    pub class_names: [String; 2],
}

impl LabeledDataset {
    /// Checks labels are 0/1, both classes present, no empty documents.
    pub fn new(documents: Vec<Document>, class_names: [String; 2]) -> Result<Self> {
        if documents.len() < 2 {
            return Err(Error::DataLayout(format!("{} documents; need at least 2", documents.len())));
        }
        if let Some(d) = documents.iter().find(|d| d.label > 1) {
            return Err(Error::DataLayout(format!("document {} has label {}", d.id, d.label)));
        }
        if let Some(d) = documents.iter().find(|d| d.tokens.is_empty()) {
            return Err(Error::DataLayout(format!("document {} has no tokens", d.id)));
        }
        let ds = LabeledDataset {
            documents,
            class_names,
        };
        if ds.class_count(0) == 0 || ds.class_count(1) == 0 {
            return Err(Error::DegenerateLabels("dataset contains a single class".into()));
        }
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn class_count(&self, label: usize) -> usize {
        self.documents.iter().filter(|d| d.label == label).count()
    }

    pub fn signed_labels(&self) -> Vec<i8> {
        self.documents.iter().map(Document::signed_label).collect()
    }

    pub fn mean_tokens(&self) -> f64 {
        let total: usize = self.documents.iter().map(|d| d.tokens.len()).sum();
        total as f64 / self.documents.len() as f64
    }

    pub fn concat(&self, other: &LabeledDataset) -> LabeledDataset {
        let mut documents = self.documents.clone();
        documents.extend(other.documents.iter().cloned());
        LabeledDataset {
            documents,
            class_names: self.class_names.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Parses a Lambeq file: one `<0|1><whitespace><sentence>` example per line.
///
/// Labels: 0 is "computing", 1 is "food". Sentences are whitespace-tokenized.
pub fn load_lambeq(path: &Path) -> Result<LabeledDataset> {
    let text = read(path)?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut documents = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            msg,
        };
        let line = line.trim_start();
        let split = line.find(char::is_whitespace).unwrap_or(line.len());
        let (label, sentence) = line.split_at(split);
        let label = match label {
            "0" => 0,
            "1" => 1,
            other => return Err(parse_err(format!("label must be 0 or 1, found {other:?}"))),
        };
        let tokens = tokenize(sentence, TokenizeMode::Whitespace);
        if tokens.is_empty() {
            return Err(parse_err("empty sentence".into()));
        }
        documents.push(Document {
            id: format!("{name}:{}", idx + 1),
            tokens,
            label,
        });
    }
    LabeledDataset::new(documents, ["computing".into(), "food".into()])
}

/// Loads the 70/30 Lambeq train/test split from a directory.
pub fn load_lambeq_split(dir: &Path) -> Result<(LabeledDataset, LabeledDataset)> {
    Ok((
        load_lambeq(&dir.join(LAMBEQ_TRAIN_FILE))?,
        load_lambeq(&dir.join(LAMBEQ_TEST_FILE))?,
    ))
}

fn text_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::DataLayout(format!("missing directory {}", dir.display())));
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(Error::DataLayout(format!("no .txt files in {}", dir.display())));
    }
    files.sort();
    Ok(files)
}

/// Loads a `root/pos/*.txt`, `root/neg/*.txt` review corpus.
///
/// Class 0 is `neg`, class 1 is `pos`; files are read in lexicographic order,
/// negatives first. Reviews are tokenized in English mode.
pub fn load_imdb(root: &Path) -> Result<LabeledDataset> {
    let mut documents = Vec::new();
    for (label, sub) in [(0, "neg"), (1, "pos")] {
        for path in text_files(&root.join(sub))? {
            let tokens = tokenize(&read(&path)?, TokenizeMode::English);
            if tokens.is_empty() {
                return Err(Error::Parse {
                    path,
                    line: 1,
                    msg: "review has no tokens".into(),
                });
            }
            let stem = path.file_stem().unwrap_or_default().to_string_lossy();
            documents.push(Document {
                id: format!("{sub}/{stem}"),
                tokens,
                label,
            });
        }
    }
    LabeledDataset::new(documents, ["neg".into(), "pos".into()])
}

fn quotas(n: usize) -> [usize; 2] {
    [n / 2, n - n / 2]
}

/// Draws disjoint, class-balanced train and test subsets.
///
/// Class 0 gets `n/2` documents and class 1 the remainder, for both splits.
/// With `groups` (document id to group key, e.g. a movie), whole groups are
/// taken largest first (ties in seeded order) until both classes can fill
/// their quotas, and documents are then drawn only from those groups.
/// Documents missing from the map form singleton groups.
pub fn sample_subset(
    ds: &LabeledDataset,
    n_train: usize,
    n_test: usize,
    seed: u64,
    groups: Option<&HashMap<String, String>>,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if n_train < 2 || n_test < 1 {
        return Err(Error::Argument(format!(
            "need n_train >= 2 and n_test >= 1 (got {n_train}/{n_test})"
        )));
    }
    if n_train + n_test > ds.len() {
        return Err(Error::Argument(format!(
            "{n_train} + {n_test} documents requested from a dataset of {}",
            ds.len()
        )));
    }
    let (train_q, test_q) = (quotas(n_train), quotas(n_test));
    let need = [train_q[0] + test_q[0], train_q[1] + test_q[1]];
    for c in 0..2 {
        if ds.class_count(c) < need[c] {
            return Err(Error::Argument(format!(
                "class {} has {} documents, {} needed",
                ds.class_names[c],
                ds.class_count(c),
                need[c]
            )));
        }
    }

    let mut rng = rng::seeded(seed);
    let pool: Vec<usize> = match groups {
        None => (0..ds.len()).collect(),
        Some(map) => {
            let mut by_group: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
            for (i, d) in ds.documents.iter().enumerate() {
                let key = map.get(&d.id).map_or(d.id.as_str(), String::as_str);
                by_group.entry(key).or_default().push(i);
            }
            let mut order: Vec<Vec<usize>> = by_group.into_values().collect();
            order.shuffle(&mut rng);
            order.sort_by_key(|g| std::cmp::Reverse(g.len()));
            let mut have = [0usize; 2];
            let mut pool = Vec::new();
            for g in order {
                if have[0] >= need[0] && have[1] >= need[1] {
                    break;
                }
                for &i in &g {
                    have[ds.documents[i].label] += 1;
                }
                pool.extend(g);
            }
            pool.sort_unstable();
            pool
        }
    };

    let mut train_idx = Vec::with_capacity(n_train);
    let mut test_idx = Vec::with_capacity(n_test);
    for c in 0..2 {
        let mut members: Vec<usize> = pool.iter().copied().filter(|&i| ds.documents[i].label == c).collect();
        members.shuffle(&mut rng);
        train_idx.extend_from_slice(&members[..train_q[c]]);
        test_idx.extend_from_slice(&members[train_q[c]..train_q[c] + test_q[c]]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    let pick = |idx: &[usize]| LabeledDataset {
        documents: idx.iter().map(|&i| ds.documents[i].clone()).collect(),
        class_names: ds.class_names.clone(),
    };
    Ok((pick(&train_idx), pick(&test_idx)))
}

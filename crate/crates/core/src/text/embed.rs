//! Distributional word vectors from positive PMI co-occurrence statistics.
//!
//! Co-occurrences are counted in a symmetric window, reweighted to PPMI and
//! factorized by a truncated symmetric eigendecomposition. A word's
//! coordinates are `u_k * sqrt(|lambda_k|)` over the `dim` eigenpairs of
//! largest magnitude, so `sum_k sign(lambda_k) v_k v_k'` is the best rank-`dim`
//! approximation of the PPMI matrix.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::Rng;

use super::dataset::{Document, LabeledDataset};
use crate::error::{Error, Result};
use crate::feature_map::FeatureVector;
use crate::linalg;
use crate::rng;

/// Vocabularies up to this size are factorized with a dense Jacobi solve.
pub const DENSE_LIMIT: usize = 256;
const MAX_ITERS: usize = 5000;
const OVERSAMPLE: usize = 16;
const START_SEED: u64 = 0x7070_6d69;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingParams {
    pub dim: usize,
    pub window: usize,
    /// Tokens seen fewer times than this are left out of the vocabulary.
    pub min_count: usize,
}

impl EmbeddingParams {
    pub fn new(dim: usize, window: usize) -> Self {
        EmbeddingParams {
            dim,
            window,
            min_count: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    words: Vec<String>,
    index: HashMap<String, usize>,
    vectors: Vec<f64>,
    dim: usize,
    /// Signed eigenvalues behind each coordinate, when trained here.
    eigenvalues: Option<Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(rows: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.1.len());
        if dim == 0 {
            return Err(Error::Shape("embedding table needs at least one word and one coordinate".into()));
        }
        let mut words = Vec::with_capacity(rows.len());
        let mut index = HashMap::with_capacity(rows.len());
        let mut vectors = Vec::with_capacity(rows.len() * dim);
        for (word, v) in rows {
            if v.len() != dim {
                return Err(Error::Shape(format!("{word}: {} coordinates, expected {dim}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Argument(format!("{word}: non-finite coordinate")));
            }
            if index.insert(word.clone(), words.len()).is_some() {
                return Err(Error::Argument(format!("duplicate word {word}")));
            }
            words.push(word);
            vectors.extend(v);
        }
        Ok(EmbeddingTable {
            words,
            index,
            vectors,
            dim,
            eigenvalues: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index_of(word).map(|i| self.row(i))
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }

    pub fn eigenvalues(&self) -> Option<&[f64]> {
        self.eigenvalues.as_deref()
    }

    /// Keeps the first `dim` coordinates of every word.
    pub fn truncate(&self, dim: usize) -> Result<EmbeddingTable> {
        if dim == 0 || dim > self.dim {
            return Err(Error::Argument(format!("cannot truncate {}-dim vectors to {dim}", self.dim)));
        }
        let vectors = (0..self.len()).flat_map(|i| self.row(i)[..dim].to_vec()).collect();
        Ok(EmbeddingTable {
            words: self.words.clone(),
            index: self.index.clone(),
            vectors,
            dim,
            eigenvalues: self.eigenvalues.as_ref().map(|e| e[..dim].to_vec()),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.words.iter().enumerate() {
            out.push_str(w);
            for v in self.row(i) {
                write!(out, " {v:.17e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn save_text(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

/// Reads `token v1 ... vd` lines; blank lines are skipped.
pub fn load_embeddings_text(path: &Path) -> Result<EmbeddingTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    let mut dim = None;
    for (idx, line) in text.lines().enumerate() {
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            msg,
        };
        let mut fields = line.split_whitespace();
        let Some(word) = fields.next() else { continue };
        let mut v = Vec::new();
        for f in fields {
            let x: f64 = f.parse().map_err(|_| err(format!("bad coordinate {f:?}")))?;
            if !x.is_finite() {
                return Err(err(format!("non-finite coordinate {f:?}")));
            }
            v.push(x);
        }
        if v.is_empty() {
            return Err(err(format!("{word} has no coordinates")));
        }
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => return Err(err(format!("{} coordinates, expected {d}", v.len()))),
            _ => {}
        }
        rows.push((word.to_owned(), v));
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg: "no vectors".into(),
        });
    }
    EmbeddingTable::new(rows).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        msg: e.to_string(),
    })
}

/// Symmetric matrix in compressed-row form.
#[derive(Debug, Clone)]
pub struct SparseSymmetric {
    n: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetric {
    fn from_rows(rows: Vec<BTreeMap<usize, f64>>) -> Self {
        let n = rows.len();
        let mut row_start = Vec::with_capacity(n + 1);
        let (mut cols, mut vals) = (Vec::new(), Vec::new());
        row_start.push(0);
        for r in rows {
            for (c, v) in r {
                cols.push(c);
                vals.push(v);
            }
            row_start.push(cols.len());
        }
        SparseSymmetric {
            n,
            row_start,
            cols,
            vals,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for k in self.row_start[i]..self.row_start[i + 1] {
                out[i * self.n + self.cols[k]] = self.vals[k];
            }
        }
        out
    }

    /// `Y = A X` for an `n x p` row-major block `X`.
    fn mul_block(&self, x: &[f64], p: usize) -> Vec<f64> {
        let mut y = vec![0.0; self.n * p];
        for i in 0..self.n {
            let yi = &mut y[i * p..(i + 1) * p];
            for k in self.row_start[i]..self.row_start[i + 1] {
                let (c, v) = (self.cols[k], self.vals[k]);
                for (a, b) in yi.iter_mut().zip(&x[c * p..(c + 1) * p]) {
                    *a += v * b;
                }
            }
        }
        y
    }
}

fn vocabulary(docs: &[Document], min_count: usize) -> Vec<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for d in docs {
        for t in &d.tokens {
            *counts.entry(t).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .filter(|&(_, c)| c >= min_count.max(1))
        .map(|(w, _)| w.to_owned())
        .collect()
}

/// PPMI matrix over `vocab` (sorted). Out-of-vocabulary tokens are dropped
/// before windowing.
pub fn ppmi_matrix(docs: &[Document], vocab: &[String], window: usize) -> SparseSymmetric {
    let index: HashMap<&str, usize> = vocab.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let mut counts: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); vocab.len()];
    for d in docs {
        let ids: Vec<usize> = d.tokens.iter().filter_map(|t| index.get(t.as_str()).copied()).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in ids.iter().skip(i + 1).take(window) {
                *counts[a].entry(b).or_default() += 1.0;
                *counts[b].entry(a).or_default() += 1.0;
            }
        }
    }
    let row_sums: Vec<f64> = counts.iter().map(|r| r.values().sum()).collect();
    let total: f64 = row_sums.iter().sum();
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .filter_map(|(b, c)| {
                    let pmi = (c * total / (row_sums[a] * row_sums[b])).ln();
                    (pmi > 0.0).then_some((b, pmi))
                })
                .collect()
        })
        .collect();
    SparseSymmetric::from_rows(rows)
}

/// Eigenpairs of largest `|lambda|`, ordered by decreasing magnitude
/// (positive first on ties). Vectors are columns of an `n x k` row-major block,
/// each with its largest-magnitude component made positive.
pub fn top_eigenpairs(m: &SparseSymmetric, k: usize) -> (Vec<f64>, Vec<f64>) {
    let n = m.n;
    let (values, vectors) = if n <= DENSE_LIMIT {
        let e = linalg::symmetric_eigen(&m.to_dense(), n);
        let order = magnitude_order(&e.values);
        let values = order[..k].iter().map(|&c| e.values[c]).collect();
        let mut vectors = vec![0.0; n * k];
        for i in 0..n {
            for (dst, &src) in order[..k].iter().enumerate() {
                vectors[i * k + dst] = e.vectors[i * n + src];
            }
        }
        (values, vectors)
    } else {
        subspace_iteration(m, k)
    };
    let mut vectors = vectors;
    for c in 0..k {
        let mut pivot = 0;
        for i in 0..n {
            if vectors[i * k + c].abs() > vectors[pivot * k + c].abs() {
                pivot = i;
            }
        }
        if vectors[pivot * k + c] < 0.0 {
            for i in 0..n {
                vectors[i * k + c] = -vectors[i * k + c];
            }
        }
    }
    (values, vectors)
}

fn magnitude_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .abs()
            .total_cmp(&values[a].abs())
            .then(values[b].total_cmp(&values[a]))
            .then(a.cmp(&b))
    });
    order
}

/// Modified Gram-Schmidt on the columns of an `n x p` block.
fn orthonormalize(x: &mut [f64], n: usize, p: usize) {
    for c in 0..p {
        for prev in 0..c {
            let d: f64 = (0..n).map(|i| x[i * p + c] * x[i * p + prev]).sum();
            for i in 0..n {
                x[i * p + c] -= d * x[i * p + prev];
            }
        }
        let norm = (0..n).map(|i| x[i * p + c] * x[i * p + c]).sum::<f64>().sqrt();
        if norm > 1e-300 {
            for i in 0..n {
                x[i * p + c] /= norm;
            }
        }
    }
}

/// Block power iteration with Rayleigh-Ritz extraction, from a fixed seeded start.
fn subspace_iteration(m: &SparseSymmetric, k: usize) -> (Vec<f64>, Vec<f64>) {
    let n = m.n;
    let p = (k + OVERSAMPLE).min(n);
    let mut rng = rng::seeded(START_SEED);
    let mut q: Vec<f64> = (0..n * p).map(|_| rng.random::<f64>() - 0.5).collect();
    orthonormalize(&mut q, n, p);
    let scale = m.vals.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    let mut values = vec![0.0; k];
    let mut ritz = q.clone();
    for _ in 0..MAX_ITERS {
        let aq = m.mul_block(&q, p);
        // Rayleigh-Ritz on span(Q): T = Q' A Q
        let mut t = vec![0.0; p * p];
        for i in 0..n {
            for a in 0..p {
                let qa = q[i * p + a];
                for b in 0..p {
                    t[a * p + b] += qa * aq[i * p + b];
                }
            }
        }
        let e = linalg::symmetric_eigen(&t, p);
        let order = magnitude_order(&e.values);
        let mut next = vec![0.0; n * p];
        let mut a_next = vec![0.0; n * p];
        for i in 0..n {
            for (dst, &src) in order.iter().enumerate() {
                let mut s = 0.0;
                let mut sa = 0.0;
                for a in 0..p {
                    let w = e.vectors[a * p + src];
                    s += q[i * p + a] * w;
                    sa += aq[i * p + a] * w;
                }
                next[i * p + dst] = s;
                a_next[i * p + dst] = sa;
            }
        }
        values = order[..k].iter().map(|&c| e.values[c]).collect();
        ritz = next;
        let residual = (0..k)
            .map(|c| {
                (0..n)
                    .map(|i| {
                        let r = a_next[i * p + c] - values[c] * ritz[i * p + c];
                        r * r
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if residual <= 1e-11 * scale {
            break;
        }
        q = a_next;
        orthonormalize(&mut q, n, p);
    }
    let vectors = (0..n).flat_map(|i| ritz[i * p..i * p + k].to_vec()).collect();
    (values, vectors)
}

pub fn train_embeddings(corpus: &LabeledDataset, dim: usize, window: usize) -> Result<EmbeddingTable> {
    train_embeddings_with(&corpus.documents, &EmbeddingParams::new(dim, window))
}

pub fn train_embeddings_with(docs: &[Document], params: &EmbeddingParams) -> Result<EmbeddingTable> {
    if params.window == 0 {
        return Err(Error::Argument("window must be at least 1".into()));
    }
    let vocab = vocabulary(docs, params.min_count);
    if params.dim == 0 || params.dim > vocab.len() {
        return Err(Error::Argument(format!(
            "embedding dim {} must be in 1..={} (vocabulary size)",
            params.dim,
            vocab.len()
        )));
    }
    let ppmi = ppmi_matrix(docs, &vocab, params.window);
    let (values, vectors) = top_eigenpairs(&ppmi, params.dim);
    let d = params.dim;
    let scales: Vec<f64> = values.iter().map(|v| v.abs().sqrt()).collect();
    let rows = vocab
        .into_iter()
        .enumerate()
        .map(|(i, w)| (w, (0..d).map(|c| vectors[i * d + c] * scales[c]).collect()))
        .collect();
    let mut table = EmbeddingTable::new(rows)?;
    table.eigenvalues = Some(values);
    Ok(table)
}

/// Mean of the in-vocabulary token vectors, L2-normalized.
pub fn sentence_vector(doc: &Document, table: &EmbeddingTable) -> Result<FeatureVector> {
    let mut sum = vec![0.0; table.dim()];
    let mut known = 0usize;
    for t in &doc.tokens {
        if let Some(v) = table.vector(t) {
            known += 1;
            sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
        }
    }
    if known == 0 {
        return Err(Error::DegenerateInput(format!("document {} has no known words", doc.id)));
    }
    sum.iter_mut().for_each(|s| *s /= known as f64);
    FeatureVector::normalized(sum).map_err(|_| Error::DegenerateInput(format!("document {} averages to zero", doc.id)))
}

use super::{zero_fraction, ShotConfig};
use crate::error::{Error, Result};
use crate::feature_map::{FeatureMapSpec, FeatureVector};
use crate::rng;
use crate::sim::{adjoint, run_circuit, Circuit, QuantumState};

/// Stream tag mixed into the master seed for rectangular (test vs train) blocks,
/// so their per-pair seeds never coincide with those of the training Gram.
pub const TEST_BLOCK_STREAM: u64 = 0x7465_7374_626c_6b00;

/// Row-major matrix of kernel values, square (Gram) or rectangular (test block).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    pub shots: u64,
    pub seed: u64,
}

impl KernelMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>, shots: u64, seed: u64) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("ragged kernel rows".into()));
        }
        Ok(KernelMatrix {
            rows: n_rows,
            cols: n_cols,
            values: rows.into_iter().flatten().collect(),
            shots,
            seed,
        })
    }

    pub(crate) fn from_flat(rows: usize, cols: usize, values: Vec<f64>, shots: u64, seed: u64) -> Self {
        debug_assert_eq!(values.len(), rows * cols);
        KernelMatrix {
            rows,
            cols,
            values,
            shots,
            seed,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest `|K_ij - K_ji|`; infinite for rectangular matrices.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn frobenius_distance(&self, other: &KernelMatrix) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }
}

/// Column set for [`gram_matrix`].
#[derive(Debug, Clone, Copy)]
pub enum Cols<'a> {
    /// Square Gram over the row vectors themselves.
    Same,
    /// Rectangular block against another vector list (e.g. test rows vs training columns).
    Other(&'a [FeatureVector]),
}

struct Encoded {
    prepared: QuantumState,
    inverse: Circuit,
}

fn encode(map: &FeatureMapSpec, xs: &[FeatureVector]) -> Result<Vec<Encoded>> {
    xs.iter()
        .map(|x| {
            let c = map.circuit(x)?;
            Ok(Encoded {
                prepared: c.prepare(),
                inverse: adjoint(&c),
            })
        })
        .collect()
}

fn entry(x: &Encoded, y: &Encoded, cfg: &ShotConfig, seed: u64) -> Result<f64> {
    let k = if cfg.is_exact() {
        // same value as running U(y)^dagger on U(x)|0>, read off directly
        y.prepared.inner(&x.prepared).norm_sqr()
    } else {
        zero_fraction(&run_circuit(&x.prepared, &y.inverse)?, cfg.shots, seed)?
    };
    Ok(k.clamp(0.0, 1.0))
}

/// Kernel matrix between `rows` and `cols`.
///
/// With [`Cols::Same`] each unordered pair is evaluated once and mirrored;
/// in shot mode the diagonal is set to exactly 1. Rectangular blocks draw
/// their per-pair seeds from `stream_seed(master_seed, TEST_BLOCK_STREAM)`.
pub fn gram_matrix(
    map: &FeatureMapSpec,
    rows: &[FeatureVector],
    cols: Cols<'_>,
    cfg: &ShotConfig,
) -> Result<KernelMatrix> {
    if rows.is_empty() {
        return Err(Error::Argument("no row vectors".into()));
    }
    let row_enc = encode(map, rows)?;
    match cols {
        Cols::Same => {
            let n = rows.len();
            let mut values = vec![0.0; n * n];
            for i in 0..n {
                values[i * n + i] = if cfg.is_exact() {
                    entry(&row_enc[i], &row_enc[i], cfg, 0)?
                } else {
                    1.0
                };
                for j in (i + 1)..n {
                    let seed = rng::pair_seed(cfg.master_seed, i, j);
                    let k = entry(&row_enc[i], &row_enc[j], cfg, seed)?;
                    values[i * n + j] = k;
                    values[j * n + i] = k;
                }
            }
            Ok(KernelMatrix::from_flat(n, n, values, cfg.shots, cfg.master_seed))
        }
        Cols::Other(cols) => {
            if cols.is_empty() {
                return Err(Error::Argument("no column vectors".into()));
            }
            let col_enc = encode(map, cols)?;
            let master = rng::stream_seed(cfg.master_seed, TEST_BLOCK_STREAM);
            let mut values = Vec::with_capacity(rows.len() * cols.len());
            for (i, x) in row_enc.iter().enumerate() {
                for (j, y) in col_enc.iter().enumerate() {
                    let seed = rng::stream_seed(master, ((i as u64) << 32) | j as u64);
                    values.push(entry(x, y, cfg, seed)?);
                }
            }
            Ok(KernelMatrix::from_flat(rows.len(), cols.len(), values, cfg.shots, cfg.master_seed))
        }
    }
}

/// Classical linear kernel `x . y`, the CSVM baseline.
pub fn linear_gram(rows: &[FeatureVector], cols: Cols<'_>) -> Result<KernelMatrix> {
    if rows.is_empty() {
        return Err(Error::Argument("no row vectors".into()));
    }
    let cols = match cols {
        Cols::Same => rows,
        Cols::Other(c) => c,
    };
    let mut values = Vec::with_capacity(rows.len() * cols.len());
    for x in rows {
        for y in cols {
            if x.dim() != y.dim() {
                return Err(Error::Shape(format!("dims {} and {}", x.dim(), y.dim())));
            }
            values.push(x.dot(y));
        }
    }
    Ok(KernelMatrix::from_flat(rows.len(), cols.len(), values, 0, 0))
}

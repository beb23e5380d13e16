//! Sequential minimal optimization with second-order working-set selection.
//!
//! Solves `min_a 1/2 a'Qa - e'a` subject to `y'a = 0`, `0 <= a_i <= C`, with
//! `Q_ij = y_i y_j K_ij`. Each step picks the maximal violator `i` from the
//! "up" set and the partner `j` from the "low" set that maximizes the
//! guaranteed objective decrease; both scans run in index order and keep the
//! first best candidate, so training is deterministic.

use super::{SvmModel, TrainConfig};
use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;

const TAU: f64 = 1e-12;

struct Problem<'a> {
    k: &'a KernelMatrix,
    y: Vec<f64>,
    c: f64,
}

impl Problem<'_> {
    fn q(&self, i: usize, j: usize) -> f64 {
        self.y[i] * self.y[j] * self.k.get(i, j)
    }

    fn in_up(&self, a: f64, y: f64) -> bool {
        (y > 0.0 && a < self.c) || (y < 0.0 && a > 0.0)
    }

    fn in_low(&self, a: f64, y: f64) -> bool {
        (y > 0.0 && a > 0.0) || (y < 0.0 && a < self.c)
    }
}

/// `sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij` (the dual objective, maximized).
pub fn dual_objective(k: &KernelMatrix, labels: &[i8], alphas: &[f64]) -> f64 {
    let n = alphas.len();
    let mut quad = 0.0;
    for i in 0..n {
        if alphas[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            quad += alphas[i] * alphas[j] * f64::from(labels[i]) * f64::from(labels[j]) * k.get(i, j);
        }
    }
    alphas.iter().sum::<f64>() - 0.5 * quad
}

fn validate(k: &KernelMatrix, labels: &[i8], cfg: &TrainConfig) -> Result<()> {
    if !k.is_square() {
        return Err(Error::Shape(format!("{}x{} training kernel is not square", k.rows(), k.cols())));
    }
    if labels.len() != k.rows() {
        return Err(Error::Shape(format!(
            "{} labels for a {}x{} kernel",
            labels.len(),
            k.rows(),
            k.rows()
        )));
    }
    if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
        return Err(Error::Argument(format!("label {bad} is not +1 or -1")));
    }
    if !labels.contains(&1) || !labels.contains(&-1) {
        return Err(Error::DegenerateLabels("both classes must be present".into()));
    }
    if !(cfg.c > 0.0 && cfg.c.is_finite()) {
        return Err(Error::Argument(format!("C must be positive, got {}", cfg.c)));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::Argument(format!("tol must be positive, got {}", cfg.tol)));
    }
    Ok(())
}

/// Trains on the square kernel `k` with labels in {-1, +1}.
pub fn train(k: &KernelMatrix, labels: &[i8], cfg: &TrainConfig) -> Result<SvmModel> {
    validate(k, labels, cfg)?;
    let n = labels.len();
    let p = Problem {
        k,
        y: labels.iter().map(|&y| f64::from(y)).collect(),
        c: cfg.c,
    };
    let mut alpha = vec![0.0; n];
    // gradient of the minimization objective: Q a - e
    let mut grad = vec![-1.0; n];

    let max_iter = cfg.max_passes.saturating_mul(n.max(1));
    let mut iter = 0;
    loop {
        let mut i = usize::MAX;
        let mut g_max = f64::NEG_INFINITY;
        for t in 0..n {
            if p.in_up(alpha[t], p.y[t]) {
                let v = -p.y[t] * grad[t];
                if v > g_max {
                    g_max = v;
                    i = t;
                }
            }
        }
        let mut g_min = f64::INFINITY;
        let mut j = usize::MAX;
        let mut best = f64::INFINITY;
        for t in 0..n {
            if !p.in_low(alpha[t], p.y[t]) {
                continue;
            }
            let v = -p.y[t] * grad[t];
            g_min = g_min.min(v);
            if i == usize::MAX {
                continue;
            }
            let b = g_max - v;
            if b > 0.0 {
                let a = k.get(i, i) + k.get(t, t) - 2.0 * k.get(i, t);
                let a = if a > 0.0 { a } else { TAU };
                let score = -(b * b) / a;
                if score < best {
                    best = score;
                    j = t;
                }
            }
        }
        let gap = g_max - g_min;
        if gap < cfg.tol || i == usize::MAX || j == usize::MAX {
            break;
        }
        if iter >= max_iter {
            let model = finish(&p, alpha, &grad, cfg);
            return Err(Error::Convergence {
                passes: cfg.max_passes,
                violation: gap,
                best: Box::new(model),
            });
        }
        iter += 1;
        step(&p, &mut alpha, &mut grad, i, j);
    }
    Ok(finish(&p, alpha, &grad, cfg))
}

/// Two-variable analytic update (the LIBSVM case split).
fn step(p: &Problem<'_>, alpha: &mut [f64], grad: &mut [f64], i: usize, j: usize) {
    let c = p.c;
    let (old_i, old_j) = (alpha[i], alpha[j]);
    let quad = p.k.get(i, i) + p.k.get(j, j) - 2.0 * p.k.get(i, j);
    let quad = if quad > 0.0 { quad } else { TAU };
    if p.y[i] != p.y[j] {
        let delta = (-grad[i] - grad[j]) / quad;
        let diff = alpha[i] - alpha[j];
        alpha[i] += delta;
        alpha[j] += delta;
        if diff > 0.0 {
            if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = diff;
            }
        } else if alpha[i] < 0.0 {
            alpha[i] = 0.0;
            alpha[j] = -diff;
        }
        if diff > 0.0 {
            if alpha[i] > c {
                alpha[i] = c;
                alpha[j] = c - diff;
            }
        } else if alpha[j] > c {
            alpha[j] = c;
            alpha[i] = c + diff;
        }
    } else {
        let delta = (grad[i] - grad[j]) / quad;
        let sum = alpha[i] + alpha[j];
        alpha[i] -= delta;
        alpha[j] += delta;
        if sum > c {
            if alpha[i] > c {
                alpha[i] = c;
                alpha[j] = sum - c;
            }
        } else if alpha[j] < 0.0 {
            alpha[j] = 0.0;
            alpha[i] = sum;
        }
        if sum > c {
            if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = sum - c;
            }
        } else if alpha[i] < 0.0 {
            alpha[i] = 0.0;
            alpha[j] = sum;
        }
    }
    let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
    for (t, g) in grad.iter_mut().enumerate() {
        *g += p.q(t, i) * di + p.q(t, j) * dj;
    }
}

fn finish(p: &Problem<'_>, alpha: Vec<f64>, grad: &[f64], cfg: &TrainConfig) -> SvmModel {
    let n = alpha.len();
    let mut free_sum = 0.0;
    let mut free = 0usize;
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in 0..n {
        let yg = p.y[t] * grad[t];
        if alpha[t] >= p.c {
            if p.y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if p.y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            free_sum += yg;
        }
    }
    let rho = if free > 0 {
        free_sum / free as f64
    } else {
        (ub + lb) / 2.0
    };
    let support_indices = (0..n).filter(|&t| alpha[t] > 0.0).collect();
    SvmModel {
        alphas: alpha,
        bias: -rho,
        labels: p.y.iter().map(|&y| if y > 0.0 { 1 } else { -1 }).collect(),
        c: cfg.c,
        tol: cfg.tol,
        support_indices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_kernel(points: &[[f64; 2]]) -> KernelMatrix {
        let rows = points
            .iter()
            .map(|a| points.iter().map(|b| a[0] * b[0] + a[1] * b[1]).collect())
            .collect();
        KernelMatrix::from_rows(rows, 0, 0).unwrap()
    }

    #[test]
    fn single_class_rejected() {
        let k = linear_kernel(&[[1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(
            train(&k, &[1, 1], &TrainConfig::default()),
            Err(Error::DegenerateLabels(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let k = linear_kernel(&[[1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(train(&k, &[1], &TrainConfig::default()), Err(Error::Shape(_))));
        assert!(matches!(train(&k, &[1, 0], &TrainConfig::default()), Err(Error::Argument(_))));
        assert!(train(&k, &[1, -1], &TrainConfig::with_c(0.0)).is_err());
    }

    #[test]
    fn convergence_error_carries_iterate() {
        let pts: Vec<[f64; 2]> = (0..12).map(|i| [(i as f64).sin(), (i as f64 * 0.7).cos()]).collect();
        let labels: Vec<i8> = (0..12).map(|i| if i % 3 == 0 { 1 } else { -1 }).collect();
        let cfg = TrainConfig {
            c: 10.0,
            tol: 1e-12,
            max_passes: 0,
        };
        match train(&linear_kernel(&pts), &labels, &cfg) {
            Err(Error::Convergence { best, .. }) => assert_eq!(best.alphas.len(), 12),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn free_support_vectors_sit_on_margin() {
        let pts = [[2.0, 2.0], [3.0, 1.5], [2.5, 3.0], [-1.0, -2.0], [-2.0, -1.0], [-0.5, -1.5]];
        let labels = [1, 1, 1, -1, -1, -1];
        let k = linear_kernel(&pts);
        let cfg = TrainConfig::with_c(100.0);
        let m = train(&k, &labels, &cfg).unwrap();
        assert!(m.label_balance().abs() < 1e-8);
        for (t, &a) in m.alphas.iter().enumerate() {
            assert!((0.0..=cfg.c).contains(&a));
            if a > 0.0 && a < cfg.c {
                let v = super::super::decision_value(&m, k.row(t)).unwrap();
                assert!((v.abs() - 1.0).abs() < cfg.tol * 10.0, "{v}");
            }
        }
    }
}

#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::{DMatrix, DVector};
use qtext::feature_map::FeatureVector;
use qtext::kernel::KernelMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller.
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    let v: f64 = rng.random::<f64>();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn unit_fv(rng: &mut ChaCha8Rng, dim: usize) -> FeatureVector {
    FeatureVector::new(random_unit(rng, dim)).unwrap()
}

/// Solution of the SVM dual from a dense primal-dual interior-point method.
pub struct QpSolution {
    pub alphas: Vec<f64>,
    pub bias: f64,
    /// `sum a - 1/2 a'Qa`
    pub objective: f64,
}

/// Solves `min 1/2 a'Qa - e'a  s.t.  y'a = 0, 0 <= a <= C` with
/// `Q_ij = y_i y_j K_ij`, by Newton steps on the perturbed KKT system.
/// The equality multiplier equals minus the SVM bias.
pub fn qp_oracle(k: &KernelMatrix, y: &[i8], c: f64) -> QpSolution {
    let n = y.len();
    let yv = DVector::from_iterator(n, y.iter().map(|&v| f64::from(v)));
    let q = DMatrix::from_fn(n, n, |i, j| yv[i] * yv[j] * k.get(i, j));
    let mut x = DVector::from_element(n, c / 2.0);
    let mut z = DVector::from_element(n, 1.0);
    let mut w = DVector::from_element(n, 1.0);
    let mut lam = 0.0;
    for _ in 0..200 {
        let s = x.map(|xi| c - xi);
        let mu = (x.dot(&z) + s.dot(&w)) / (2 * n) as f64;
        let r_d = &q * &x - DVector::from_element(n, 1.0) - &yv * lam - &z + &w;
        let r_p = yv.dot(&x);
        if mu < 1e-14 && r_d.amax() < 1e-12 && r_p.abs() < 1e-12 {
            break;
        }
        let sigma = 0.1;
        let target = sigma * mu;
        let mut m = DMatrix::zeros(n + 1, n + 1);
        let mut rhs = DVector::zeros(n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = q[(i, j)];
            }
            m[(i, i)] += z[i] / x[i] + w[i] / s[i];
            m[(i, n)] = -yv[i];
            m[(n, i)] = yv[i];
            rhs[i] = -r_d[i] + (target / x[i] - z[i]) - (target / s[i] - w[i]);
        }
        rhs[n] = -r_p;
        let sol = m.lu().solve(&rhs).expect("KKT system is nonsingular");
        let dx = sol.rows(0, n).into_owned();
        let dlam = sol[n];
        let dz = DVector::from_fn(n, |i, _| (target - x[i] * z[i]) / x[i] - z[i] / x[i] * dx[i]);
        let dw = DVector::from_fn(n, |i, _| (target - s[i] * w[i]) / s[i] + w[i] / s[i] * dx[i]);
        let mut step: f64 = 1.0;
        for i in 0..n {
            if dx[i] < 0.0 {
                step = step.min(-0.99 * x[i] / dx[i]);
            }
            if dx[i] > 0.0 {
                step = step.min(0.99 * s[i] / dx[i]);
            }
            if dz[i] < 0.0 {
                step = step.min(-0.99 * z[i] / dz[i]);
            }
            if dw[i] < 0.0 {
                step = step.min(-0.99 * w[i] / dw[i]);
            }
        }
        x += &dx * step;
        z += &dz * step;
        w += &dw * step;
        lam += dlam * step;
    }
    let objective = x.sum() - 0.5 * x.dot(&(&q * &x));
    let alphas: Vec<f64> = x.iter().copied().collect();
    let eps = 1e-6 * c;
    let bias = if alphas.iter().any(|&a| a > eps && a < c - eps) {
        -lam
    } else {
        // every multiplier at a bound: the bias is only pinned to an
        // interval; take its midpoint
        let g = &q * &x - DVector::from_element(n, 1.0);
        let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let yg = yv[i] * g[i];
            let at_upper = alphas[i] >= c - eps;
            if (at_upper && yv[i] < 0.0) || (!at_upper && yv[i] > 0.0) {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        }
        -(ub + lb) / 2.0
    };
    QpSolution { alphas, bias, objective }
}

pub fn oracle_decision(sol: &QpSolution, y: &[i8], k_row: &[f64]) -> f64 {
    sol.alphas
        .iter()
        .zip(y)
        .zip(k_row)
        .map(|((a, &yi), k)| a * f64::from(yi) * k)
        .sum::<f64>()
        + sol.bias
}

/// Gaussian kernel block between point sets.
pub fn rbf(a: &[Vec<f64>], b: &[Vec<f64>], gamma: f64) -> KernelMatrix {
    let rows = a
        .iter()
        .map(|p| {
            b.iter()
                .map(|q| {
                    let d: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                    (-gamma * d).exp()
                })
                .collect()
        })
        .collect();
    KernelMatrix::from_rows(rows, 0, 0).unwrap()
}

pub fn linear(a: &[Vec<f64>], b: &[Vec<f64>]) -> KernelMatrix {
    let rows = a
        .iter()
        .map(|p| b.iter().map(|q| p.iter().zip(q).map(|(x, y)| x * y).sum()).collect())
        .collect();
    KernelMatrix::from_rows(rows, 0, 0).unwrap()
}

/// A random binary problem: points in `dim` dims, labels from a noisy
/// hyperplane, both classes guaranteed.
pub struct Instance {
    pub train: Vec<Vec<f64>>,
    pub labels: Vec<i8>,
    pub test: Vec<Vec<f64>>,
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, n_test: usize, dim: usize) -> Instance {
    let w: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
    let point = |rng: &mut ChaCha8Rng| (0..dim).map(|_| normal(rng)).collect::<Vec<f64>>();
    loop {
        let train: Vec<Vec<f64>> = (0..n).map(|_| point(rng)).collect();
        let labels: Vec<i8> = train
            .iter()
            .map(|p| {
                let s: f64 = p.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + 0.5 * normal(rng);
                if s >= 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        if labels.contains(&1) && labels.contains(&-1) {
            let test = (0..n_test).map(|_| point(rng)).collect();
            return Instance { train, labels, test };
        }
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

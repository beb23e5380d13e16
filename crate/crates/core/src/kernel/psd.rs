use super::KernelMatrix;
use crate::error::{Error, Result};
use crate::linalg;

/// Extra diagonal shift added on top of `-lambda_min`.
pub const PSD_MARGIN: f64 = 1e-8;

const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PsdRepair {
    pub matrix: KernelMatrix,
    pub min_eigenvalue: f64,
    /// Amount added to every diagonal entry (0 when already PSD).
    pub shift: f64,
}

/// Shifts the diagonal of a symmetric matrix so it becomes positive semidefinite.
///
/// If the smallest eigenvalue is negative, `-lambda_min + PSD_MARGIN` is
/// added to the diagonal; otherwise the matrix is returned unchanged.
pub fn repair_psd(k: &KernelMatrix) -> Result<PsdRepair> {
    if !k.is_square() {
        return Err(Error::Argument(format!("{}x{} matrix is not square", k.rows(), k.cols())));
    }
    let asym = k.asymmetry();
    if asym > SYMMETRY_TOLERANCE {
        return Err(Error::Argument(format!("matrix is not symmetric (max |K_ij - K_ji| = {asym:e})")));
    }
    let n = k.rows();
    let min_eigenvalue = linalg::min_eigenvalue(k.as_slice(), n);
    let mut matrix = k.clone();
    let shift = if min_eigenvalue < 0.0 {
        let s = -min_eigenvalue + PSD_MARGIN;
        let values = matrix.as_mut_slice();
        for i in 0..n {
            values[i * n + i] += s;
        }
        s
    } else {
        0.0
    };
    Ok(PsdRepair {
        matrix,
        min_eigenvalue,
        shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indefinite_two_by_two() {
        let k = KernelMatrix::from_rows(vec![vec![1.0, 1.2], vec![1.2, 1.0]], 0, 0).unwrap();
        let r = repair_psd(&k).unwrap();
        assert!((r.shift - (0.2 + 1e-8)).abs() < 1e-12);
        assert!((r.matrix.get(0, 0) - (1.2 + 1e-8)).abs() < 1e-12);
        assert_eq!(r.matrix.get(0, 1), 1.2);
    }

    #[test]
    fn identity_unchanged() {
        let k = KernelMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 0, 0).unwrap();
        let r = repair_psd(&k).unwrap();
        assert_eq!(r.shift, 0.0);
        assert_eq!(r.matrix, k);
    }

    #[test]
    fn asymmetric_rejected() {
        let k = KernelMatrix::from_rows(vec![vec![1.0, 0.3], vec![0.2, 1.0]], 0, 0).unwrap();
        assert!(matches!(repair_psd(&k), Err(Error::Argument(_))));
    }
}

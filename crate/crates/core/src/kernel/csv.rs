//! Kernel matrix CSV files.
//!
//! ```text
//! n=<rows>,shots=<R>,seed=<s>              square Gram matrix
//! n=<rows>,m=<cols>,shots=<R>,seed=<s>     rectangular block
//! <value>,<value>,...                      one line per row
//! ```
//!
//! Values are written in scientific notation with 16 significant digits.

use std::fs;
use std::path::Path;

use super::KernelMatrix;
use crate::error::{Error, Result};

pub fn format_kernel_csv(k: &KernelMatrix) -> String {
    let mut out = if k.is_square() {
        format!("n={},shots={},seed={}\n", k.rows(), k.shots, k.seed)
    } else {
        format!("n={},m={},shots={},seed={}\n", k.rows(), k.cols(), k.shots, k.seed)
    };
    for i in 0..k.rows() {
        let line: Vec<String> = k.row(i).iter().map(|v| format!("{v:.15e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_kernel_csv(path: &Path, k: &KernelMatrix) -> Result<()> {
    fs::write(path, format_kernel_csv(k)).map_err(|e| Error::io(path, e))
}

pub fn read_kernel_csv(path: &Path) -> Result<KernelMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_kernel_csv(&text, path)
}

pub(crate) fn parse_kernel_csv(text: &str, path: &Path) -> Result<KernelMatrix> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty kernel file".into()))?;
    let (mut n, mut m, mut shots, mut seed) = (None, None, None, None);
    for field in header.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("bad header field {field:?}")))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| parse_err(1, format!("bad header value {value:?}")))?;
        match key.trim() {
            "n" => n = Some(value as usize),
            "m" => m = Some(value as usize),
            "shots" => shots = Some(value),
            "seed" => seed = Some(value),
            other => return Err(parse_err(1, format!("unknown header key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "header lacks n=".into()))?;
    let m = m.unwrap_or(n);
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let row = line
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_err(idx + 1, format!("bad value {v:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != m {
            return Err(parse_err(idx + 1, format!("expected {m} values, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(0, format!("expected {n} rows, found {}", rows.len())));
    }
    let values = rows.into_iter().flatten().collect();
    Ok(KernelMatrix::from_flat(n, m, values, shots.unwrap_or(0), seed.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_roundtrip() {
        let k = KernelMatrix::from_rows(vec![vec![1.0, 0.123456789012345], vec![0.123456789012345, 1.0]], 1000, 7)
            .unwrap();
        let text = format_kernel_csv(&k);
        assert!(text.starts_with("n=2,shots=1000,seed=7\n"));
        let back = parse_kernel_csv(&text, Path::new("k.csv")).unwrap();
        assert_eq!(back, k);

        let r = KernelMatrix::from_rows(vec![vec![0.5, 0.25, 0.125]], 0, 0).unwrap();
        let text = format_kernel_csv(&r);
        assert!(text.starts_with("n=1,m=3,"));
        assert_eq!(parse_kernel_csv(&text, Path::new("k.csv")).unwrap(), r);
    }

    #[test]
    fn malformed() {
        assert!(parse_kernel_csv("n=2,shots=0,seed=0\n1,0\n", Path::new("k")).is_err());
        assert!(parse_kernel_csv("n=1,shots=0,seed=0\nfoo\n", Path::new("k")).is_err());
        assert!(parse_kernel_csv("", Path::new("k")).is_err());
    }
}

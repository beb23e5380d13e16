//! Labeled feature CSV: `label,split,x0,x1,...`, one document per row.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::FeatureVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    /// Class index, 0 or 1.
    pub label: usize,
    pub split: Split,
    pub features: FeatureVector,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureSet {
    pub rows: Vec<FeatureRow>,
}

impl FeatureSet {
    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, |r| r.features.dim())
    }

    /// Vectors and signed labels of one split, in file order.
    pub fn split(&self, split: Split) -> (Vec<FeatureVector>, Vec<i8>) {
        self.rows
            .iter()
            .filter(|r| r.split == split)
            .map(|r| (r.features.clone(), if r.label == 1 { 1 } else { -1 }))
            .unzip()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,split");
        for i in 0..self.dim() {
            write!(out, ",x{i}").unwrap();
        }
        out.push('\n');
        for r in &self.rows {
            write!(out, "{},{}", r.label, r.split.as_str()).unwrap();
            for v in r.features.values() {
                write!(out, ",{v:.17e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<FeatureSet> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse(&text, path)
    }
}

fn parse(text: &str, path: &Path) -> Result<FeatureSet> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty feature file".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 3 || cols[0] != "label" || cols[1] != "split" {
        return Err(err(1, format!("expected header label,split,x0,... got {header:?}")));
    }
    let dim = cols.len() - 2;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != dim + 2 {
            return Err(err(idx + 1, format!("{} fields, expected {}", fields.len(), dim + 2)));
        }
        let label = match fields[0] {
            "0" => 0,
            "1" => 1,
            other => return Err(err(idx + 1, format!("label must be 0 or 1, found {other:?}"))),
        };
        let split = match fields[1] {
            "train" => Split::Train,
            "test" => Split::Test,
            other => return Err(err(idx + 1, format!("split must be train or test, found {other:?}"))),
        };
        let values = fields[2..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| err(idx + 1, format!("bad value {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let features = FeatureVector::new(values).map_err(|e| err(idx + 1, e.to_string()))?;
        rows.push(FeatureRow { label, split, features });
    }
    Ok(FeatureSet { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let set = FeatureSet {
            rows: vec![
                FeatureRow {
                    label: 1,
                    split: Split::Train,
                    features: FeatureVector::new(vec![0.1, -1.0 / 3.0]).unwrap(),
                },
                FeatureRow {
                    label: 0,
                    split: Split::Test,
                    features: FeatureVector::new(vec![2.0, 1e-300]).unwrap(),
                },
            ],
        };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        set.save(&p).unwrap();
        assert!(fs::read_to_string(&p).unwrap().starts_with("label,split,x0,x1\n"));
        assert_eq!(FeatureSet::load(&p).unwrap(), set);
        let (xs, ys) = set.split(Split::Train);
        assert_eq!((xs.len(), ys), (1, vec![1]));
    }

    #[test]
    fn rejects_bad_rows() {
        let p = Path::new("f.csv");
        assert!(parse("label,split,x0\n2,train,0.5\n", p).is_err());
        assert!(parse("label,split,x0\n1,dev,0.5\n", p).is_err());
        assert!(matches!(
            parse("label,split,x0\n1,train,0.5,0.2\n", p),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse("x,y\n", p).is_err());
    }
}

//! Bag-of-words topic scoring, classically and as single-qubit rotations.
//!
//! Each word carries a score per topic, `count(w in t) / count(w)`. A
//! document's topic evidence is the sum of its word scores. In circuit mode
//! every topic owns one qubit; each known word rotates that qubit by
//! `RY(scale * score)`, the rotations compose additively, and the topic with
//! the largest `P(|1>) = sin^2(total / 2)` wins. The scale keeps every total
//! within `[0, pi]`, where `sin^2(theta / 2)` is increasing, so both modes
//! agree.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::dataset::{Document, LabeledDataset};
use crate::error::{Error, Result};
use crate::sim::{Circuit, Gate};

/// Evidence differences this small count as a tie, resolved to topic 0.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QBowMode {
    Classical,
    Circuit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QBowModel {
    scores: HashMap<String, [f64; 2]>,
    /// Radians per unit of summed score.
    pub angle_scale: f64,
    pub topics: [String; 2],
}

impl QBowModel {
    pub fn score(&self, word: &str) -> Option<[f64; 2]> {
        self.scores.get(word).copied()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.scores.len()
    }

    /// Summed topic scores over the known words of `doc`, and how many were known.
    pub fn evidence(&self, doc: &Document) -> ([f64; 2], usize) {
        let mut sums = [0.0; 2];
        let mut known = 0;
        for s in doc.tokens.iter().filter_map(|t| self.scores.get(t)) {
            sums[0] += s[0];
            sums[1] += s[1];
            known += 1;
        }
        (sums, known)
    }

    /// Rotation scale for `doc`: the trained scale, shrunk if this document's
    /// largest topic sum would otherwise pass `pi`.
    pub fn document_scale(&self, sums: [f64; 2]) -> f64 {
        let top = sums[0].max(sums[1]);
        if top * self.angle_scale > PI {
            PI / top
        } else {
            self.angle_scale
        }
    }

    /// One qubit per topic (qubit `t` for topic `t`), one RY per known word.
    pub fn circuit(&self, doc: &Document) -> Result<Circuit> {
        let (sums, known) = self.evidence(doc);
        if known == 0 {
            return Err(Error::DegenerateInput(format!("document {} has no known words", doc.id)));
        }
        let scale = self.document_scale(sums);
        let mut c = Circuit::new(2)?;
        for s in doc.tokens.iter().filter_map(|t| self.scores.get(t)) {
            for (t, &score) in s.iter().enumerate() {
                if score > 0.0 {
                    c.push(Gate::Ry {
                        target: t,
                        angle: scale * score,
                    })?;
                }
            }
        }
        Ok(c)
    }
}

pub fn qbow_train(ds: &LabeledDataset) -> Result<QBowModel> {
    let mut counts: BTreeMap<&str, [f64; 2]> = BTreeMap::new();
    for d in &ds.documents {
        for t in &d.tokens {
            counts.entry(t).or_default()[d.label] += 1.0;
        }
    }
    if counts.is_empty() {
        return Err(Error::DataLayout("no words to score".into()));
    }
    let scores: HashMap<String, [f64; 2]> = counts
        .into_iter()
        .map(|(w, c)| {
            let total = c[0] + c[1];
            (w.to_owned(), [c[0] / total, c[1] / total])
        })
        .collect();
    let mut model = QBowModel {
        scores,
        angle_scale: 1.0,
        topics: ds.class_names.clone(),
    };
    let max_sum = ds
        .documents
        .iter()
        .map(|d| {
            let (s, _) = model.evidence(d);
            s[0].max(s[1])
        })
        .fold(0.0, f64::max);
    model.angle_scale = PI / max_sum;
    Ok(model)
}

fn argmax(v: [f64; 2]) -> usize {
    usize::from(v[1] - v[0] > TIE_TOL)
}

/// Predicted class index for `doc`.
pub fn qbow_classify(model: &QBowModel, doc: &Document, mode: QBowMode) -> Result<usize> {
    match mode {
        QBowMode::Classical => {
            let (sums, known) = model.evidence(doc);
            if known == 0 {
                return Err(Error::DegenerateInput(format!("document {} has no known words", doc.id)));
            }
            Ok(argmax(sums))
        }
        QBowMode::Circuit => {
            let state = model.circuit(doc)?.prepare();
            Ok(argmax([state.one_probability(0)?, state.one_probability(1)?]))
        }
    }
}

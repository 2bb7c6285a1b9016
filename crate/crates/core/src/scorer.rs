//! Exact-match precision, recall and F-measure.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::corpus::{AnnotatedSentence, NameClass, Region};
use crate::error::{Error, Result};

/// Counts and derived measures for one class, or for all classes together.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassScore {
    pub correct: usize,
    pub responses: usize,
    pub keys: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl ClassScore {
    fn from_counts(correct: usize, responses: usize, keys: usize, beta: f64) -> Self {
        let precision = if responses == 0 {
            0.0
        } else {
            correct as f64 / responses as f64
        };
        let recall = if keys == 0 { 0.0 } else { correct as f64 / keys as f64 };
        ClassScore {
            correct,
            responses,
            keys,
            precision,
            recall,
            f_measure: f_measure(precision, recall, beta),
        }
    }
}

/// `(β² + 1)·P·R / (β²·R + P)`, or 0 when the denominator vanishes.
pub fn f_measure(precision: f64, recall: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * recall + precision;
    if denom == 0.0 {
        0.0
    } else {
        (b2 + 1.0) * recall * precision / denom
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub beta: f64,
    /// One entry per entity class, in class order.
    pub per_class: Vec<(NameClass, ClassScore)>,
    pub overall: ClassScore,
}

impl ScoreReport {
    pub fn class(&self, class: NameClass) -> Option<&ClassScore> {
        self.per_class.iter().find(|(c, _)| *c == class).map(|(_, s)| s)
    }

    /// Machine-readable lines: `CLASS P R F`, then `ALL P R F`.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let rows = self.per_class.iter().map(|(c, s)| (c.as_str(), s));
        for (name, s) in rows.chain(std::iter::once(("ALL", &self.overall))) {
            let _ = writeln!(out, "{name} {:.6} {:.6} {:.6}", s.precision, s.recall, s.f_measure);
        }
        out
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<14} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}",
            "class", "correct", "resp", "key", "P", "R", "F"
        );
        let rows = self.per_class.iter().map(|(c, s)| (c.as_str(), s));
        for (name, s) in rows.chain(std::iter::once(("ALL", &self.overall))) {
            let _ = writeln!(
                out,
                "{:<14} {:>7} {:>7} {:>7} {:>7.3} {:>7.3} {:>7.3}",
                name, s.correct, s.responses, s.keys, s.precision, s.recall, s.f_measure
            );
        }
        let _ = writeln!(out, "beta = {}", self.beta);
        out
    }
}

fn check_alignment(key: &[AnnotatedSentence], response: &[AnnotatedSentence]) -> Result<()> {
    for (i, (k, r)) in key.iter().zip(response).enumerate() {
        if let Some(t) = k.tokens.iter().zip(&r.tokens).position(|(a, b)| a != b) {
            return Err(Error::Alignment {
                sentence: i,
                token: t,
                detail: format!("key has `{}`, response has `{}`", k.tokens[t], r.tokens[t]),
            });
        }
        if k.tokens.len() != r.tokens.len() {
            let t = k.tokens.len().min(r.tokens.len());
            return Err(Error::Alignment {
                sentence: i,
                token: t,
                detail: format!("key has {} tokens, response has {}", k.tokens.len(), r.tokens.len()),
            });
        }
    }
    if key.len() != response.len() {
        return Err(Error::Alignment {
            sentence: key.len().min(response.len()),
            token: 0,
            detail: format!("key has {} sentences, response has {}", key.len(), response.len()),
        });
    }
    Ok(())
}

/// Scores `response` against `key`. A response region is correct when the
/// key has a region with the same sentence, span and class.
pub fn score(key: &[AnnotatedSentence], response: &[AnnotatedSentence], beta: f64) -> Result<ScoreReport> {
    check_alignment(key, response)?;

    let mut correct = [0usize; 7];
    let mut responses = [0usize; 7];
    let mut keys = [0usize; 7];
    for (k, r) in key.iter().zip(response) {
        let gold: HashSet<&Region> = k.regions.iter().collect();
        for region in &k.regions {
            keys[region.class.index()] += 1;
        }
        for region in &r.regions {
            responses[region.class.index()] += 1;
            if gold.contains(region) {
                correct[region.class.index()] += 1;
            }
        }
    }

    let per_class = NameClass::ENTITIES
        .iter()
        .map(|&c| {
            let i = c.index();
            (c, ClassScore::from_counts(correct[i], responses[i], keys[i], beta))
        })
        .collect();
    let overall = ClassScore::from_counts(correct.iter().sum(), responses.iter().sum(), keys.iter().sum(), beta);
    Ok(ScoreReport {
        beta,
        per_class,
        overall,
    })
}

/// `100 · (1 − F)`.
pub fn error_rate(report: &ScoreReport) -> f64 {
    100.0 * (1.0 - report.overall.f_measure)
}

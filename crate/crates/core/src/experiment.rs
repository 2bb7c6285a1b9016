//! Train/decode/score harness and the training-size learning curve.

use crate::corpus::{fraction_count, AnnotatedSentence};
use crate::counts::{train, TrainedModel};
use crate::decoder::Decoder;
use crate::error::{Error, Result};
use crate::features::FeatureConfig;
use crate::scorer::{score, ScoreReport};

/// Default learning-curve fractions: full, half, quarter, eighth.
pub const DEFAULT_FRACTIONS: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

/// Decodes the token sequences of `test` and scores them against it.
pub fn evaluate(model: &TrainedModel, test: &[AnnotatedSentence], beta: f64) -> Result<ScoreReport> {
    let decoder = Decoder::new(model);
    let response: Vec<AnnotatedSentence> = test.iter().map(|s| decoder.decode(&s.tokens).sentence).collect();
    score(test, &response, beta)
}

/// One row of the learning curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub fraction: f64,
    pub sentences: usize,
    /// Training tokens used.
    pub words: usize,
    pub report: ScoreReport,
}

/// Trains on the first `fraction` of `training` for every fraction and scores
/// each model on `test`.
pub fn learning_curve(
    training: &[AnnotatedSentence],
    test: &[AnnotatedSentence],
    fractions: &[f64],
    config: FeatureConfig,
    beta: f64,
) -> Result<Vec<CurvePoint>> {
    fractions
        .iter()
        .map(|&fraction| {
            let wrap = |e: Error| Error::Experiment {
                fraction,
                source: Box::new(e),
            };
            if !(fraction > 0.0 && fraction <= 1.0) {
                return Err(wrap(Error::InvalidFraction(fraction)));
            }
            let subset = &training[..fraction_count(fraction, training.len())];
            let model = train(subset, config).map_err(wrap)?;
            let report = evaluate(&model, test, beta).map_err(wrap)?;
            Ok(CurvePoint {
                fraction,
                sentences: subset.len(),
                words: subset.iter().map(|s| s.tokens.len()).sum(),
                report,
            })
        })
        .collect()
}

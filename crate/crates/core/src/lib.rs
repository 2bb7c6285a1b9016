//! A trainable name finder built on a bigram hidden Markov model.
//!
//! Each name class (person, organization, location, time, date, percent,
//! money, and not-a-name) is its own bigram language model over
//! `⟨word, feature⟩` tokens. Training counts events from annotated text,
//! estimation backs off through progressively coarser distributions, and
//! decoding finds the most likely segmentation with the Viterbi algorithm.
//!
//! ```
//! use namefinder::{decode_document, parse_annotated, train, FeatureConfig, NameClass};
//!
//! let corpus = parse_annotated(
//!     "<ENAMEX TYPE=\"PERSON\">Mr. Smith</ENAMEX> arrived .\n\
//!      the talks ended .\n",
//! )?;
//! let model = train(&corpus, FeatureConfig::default())?;
//! let decoded = decode_document("Mr. Smith arrived.", &model);
//! assert_eq!(decoded.len(), 1);
//! # Ok::<(), namefinder::Error>(())
//! ```

pub mod corpus;
pub mod counts;
pub mod decoder;
pub mod error;
pub mod estimator;
pub mod experiment;
pub mod features;
pub mod scorer;
pub mod synth;

pub use corpus::{
    emit_annotated, parse_annotated, split_corpus, tokenize, AnnotatedSentence, NameClass, Region, Segment,
};
pub use counts::{collect_counts, read_model, train, write_model, CountTables, TokenKey, TrainedModel, Vocabulary};
pub use decoder::{decode_document, decode_sentence, DecodeResult, Decoder};
pub use error::{Error, Result};
pub use estimator::{lambda, p_class_transition, p_first_word, p_next_word, select_tables, Estimator, LambdaInputs};
pub use experiment::{evaluate, learning_curve, CurvePoint};
pub use features::{compute_feature, FeatureConfig, Token, WordFeature};
pub use scorer::{error_rate, score, ScoreReport};

//! Vocabulary, count tables, and training.
//!
//! Training counts every event of the generative story into the main tables.
//! A second set of tables, the unknown-word model, is counted on held-out
//! halves: half B against the vocabulary of half A, then half A against the
//! vocabulary of half B, with out-of-vocabulary words replaced by a shared
//! sentinel that keeps the word's feature.

mod model_file;
mod tables;
mod vocab;

pub use model_file::{read_model, write_model, MODEL_FORMAT_VERSION};
pub use tables::{CondCounts, ContextStats, CountTables, TokenKey};
pub use vocab::{Vocabulary, WordId, BEGIN_ID, END_ID, UNKNOWN_ID};

use crate::corpus::{fraction_count, AnnotatedSentence};
use crate::error::{Error, Result};
use crate::features::{sentence_features, FeatureConfig};

/// A trained name finder. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainedModel {
    vocabulary: Vocabulary,
    main: CountTables,
    unknown: CountTables,
    feature_config: FeatureConfig,
}

impl TrainedModel {
    /// Assembles a model from already-counted parts. The vocabulary is frozen.
    pub fn from_parts(
        mut vocabulary: Vocabulary,
        main: CountTables,
        unknown: CountTables,
        feature_config: FeatureConfig,
    ) -> Self {
        vocabulary.freeze();
        TrainedModel {
            vocabulary,
            main,
            unknown,
            feature_config,
        }
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn main(&self) -> &CountTables {
        &self.main
    }

    pub fn unknown(&self) -> &CountTables {
        &self.unknown
    }

    pub fn feature_config(&self) -> FeatureConfig {
        self.feature_config
    }

    /// Encodes a sentence's words as token keys; unknown words become
    /// `⟨UNK, f⟩`.
    pub fn encode<S: AsRef<str>>(&self, words: &[S]) -> Vec<TokenKey> {
        encode(words, &self.vocabulary, self.feature_config)
    }
}

fn encode<S: AsRef<str>>(words: &[S], vocab: &Vocabulary, config: FeatureConfig) -> Vec<TokenKey> {
    sentence_features(words, config)
        .into_iter()
        .zip(words)
        .map(|(feature, w)| TokenKey::new(vocab.lookup(w.as_ref()), feature))
        .collect()
}

/// Counts every event of `sentences`. Words missing from `vocab` are counted
/// as the unknown-word sentinel.
pub fn collect_counts(sentences: &[AnnotatedSentence], vocab: &Vocabulary, config: FeatureConfig) -> CountTables {
    let mut tables = CountTables::default();
    for sentence in sentences {
        let tokens = encode(&sentence.tokens, vocab, config);
        tables.count_sentence(&tokens, &sentence.segments());
    }
    tables
}

/// Builds a frozen vocabulary of every word in `sentences`, in first-seen order.
pub fn build_vocabulary(sentences: &[AnnotatedSentence]) -> Vocabulary {
    let mut vocab = Vocabulary::new();
    for word in sentences.iter().flat_map(|s| &s.tokens) {
        vocab.insert(word);
    }
    vocab.freeze();
    vocab
}

/// Trains a model: main tables over all sentences, unknown-word tables over
/// the two held-out halves (first and second half by sentence order).
pub fn train(sentences: &[AnnotatedSentence], feature_config: FeatureConfig) -> Result<TrainedModel> {
    if sentences.len() < 2 {
        return Err(Error::TooFewSentences(sentences.len()));
    }
    let vocabulary = build_vocabulary(sentences);
    let main = collect_counts(sentences, &vocabulary, feature_config);

    let (half_a, half_b) = sentences.split_at(fraction_count(0.5, sentences.len()));
    let words_of = |half: &'_ [AnnotatedSentence]| {
        let words: Vec<&str> = half.iter().flat_map(|s| s.tokens.iter().map(String::as_str)).collect();
        vocabulary.restricted(words)
    };
    let vocab_a = words_of(half_a);
    let vocab_b = words_of(half_b);

    let mut unknown = collect_counts(half_b, &vocab_a, feature_config);
    unknown.merge(&collect_counts(half_a, &vocab_b, feature_config));

    Ok(TrainedModel::from_parts(vocabulary, main, unknown, feature_config))
}

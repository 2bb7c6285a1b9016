//! Smoothed probabilities for the three distribution families.
//!
//! Each family is a chain of progressively less specific estimates. At every
//! level the direct ratio `c(X, Y) / c(Y)` receives weight `λ` and the rest of
//! the chain receives `1 − λ`, with
//!
//! ```text
//! λ = (1 − old_c(Y) / c(Y)) · 1 / (1 + unique(Y) / c(Y))
//! ```
//!
//! where `old_c(Y)` is the context sample size one level up (0 at the top).
//! An unseen context (`c(Y) = 0`) gets `λ = 0`.
//!
//! | level | class transition | first word                   | next word                  |
//! |-------|------------------|------------------------------|----------------------------|
//! | 0     | `NC │ NC₋₁, w₋₁` | `⟨w,f⟩ │ NC, NC₋₁`           | `⟨w,f⟩ │ ⟨w,f⟩₋₁, NC`      |
//! | 1     | `NC │ NC₋₁`      | `⟨w,f⟩ │ ⟨+begin+,other⟩, NC` | `⟨w,f⟩ │ NC`               |
//! | 2     | `NC`             | `⟨w,f⟩ │ NC`                 | `P(w │ NC) · P(f │ NC)`    |
//! | 3     | `1 / 9`          | `P(w │ NC) · P(f │ NC)`      | `1 / (│V│ · 14)`           |
//! | 4     |                  | `1 / (│V│ · 14)`             |                            |
//!
//! Whenever either word of a bigram is out of vocabulary, the unknown-word
//! tables are read instead of the main tables.

use crate::corpus::NameClass;
use crate::counts::{ContextStats, CountTables, TokenKey, TrainedModel, WordId, UNKNOWN_ID};
use crate::features::{Token, WordFeature, BEGIN_WORD, END_WORD};

/// Inputs of the back-off weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LambdaInputs {
    /// Sample size of the context at this level.
    pub c_y: u64,
    /// Sample size of the context one level more specific (0 at the top).
    pub old_c_y: u64,
    /// Distinct outcomes seen with this context.
    pub unique_outcomes: u64,
}

/// Weight of the direct estimate at one back-off level.
pub fn lambda(inputs: LambdaInputs) -> f64 {
    if inputs.c_y == 0 {
        return 0.0;
    }
    let c = inputs.c_y as f64;
    (1.0 - inputs.old_c_y as f64 / c) * (1.0 / (1.0 + inputs.unique_outcomes as f64 / c))
}

/// Number of outcomes of the class-transition family: 8 emitting classes plus
/// end of sentence.
pub const TRANSITION_OUTCOMES: usize = 9;

/// How the bottom of the two word chains is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UniformFloor {
    /// `1 / (|V| · 14)`, the value used for decoding.
    #[default]
    AsPrinted,
    /// `1 / |outcome space|`, where the space is `(V ∪ {UNK}) × 14`, plus
    /// `⟨+end+, other⟩` for the next-word family. Makes each family sum to
    /// exactly one.
    OutcomeSpace,
}

#[inline]
fn ratio(count: u64, stats: ContextStats) -> f64 {
    if stats.total == 0 {
        0.0
    } else {
        count as f64 / stats.total as f64
    }
}

/// λ for every level of a chain, each chained to the sample size above it.
#[inline]
fn weights<const N: usize>(stats: [ContextStats; N]) -> [f64; N] {
    let mut out = [0.0; N];
    let mut old = 0;
    for (k, s) in stats.iter().enumerate() {
        out[k] = lambda(LambdaInputs {
            c_y: s.total,
            old_c_y: old,
            unique_outcomes: s.unique,
        });
        old = s.total;
    }
    out
}

/// `λ₀·r₀ + (1−λ₀)·(λ₁·r₁ + (1−λ₁)·(… + (1−λₙ)·floor))`
#[inline]
fn mix(lambdas: &[f64], ratios: &[f64], floor: f64) -> f64 {
    lambdas
        .iter()
        .zip(ratios)
        .rev()
        .fold(floor, |tail, (&l, &r)| l * r + (1.0 - l) * tail)
}

/// Probability queries against a trained model.
#[derive(Debug, Clone, Copy)]
pub struct Estimator<'m> {
    model: &'m TrainedModel,
    first_floor: f64,
    next_floor: f64,
}

impl<'m> Estimator<'m> {
    pub fn new(model: &'m TrainedModel) -> Self {
        Self::with_floor(model, UniformFloor::AsPrinted)
    }

    pub fn with_floor(model: &'m TrainedModel, floor: UniformFloor) -> Self {
        let v = model.vocabulary().size().max(1) as f64;
        let features = WordFeature::COUNT as f64;
        let (first_floor, next_floor) = match floor {
            UniformFloor::AsPrinted => (1.0 / (v * features), 1.0 / (v * features)),
            UniformFloor::OutcomeSpace => {
                let space = (v + 1.0) * features;
                (1.0 / space, 1.0 / (space + 1.0))
            }
        };
        Estimator {
            model,
            first_floor,
            next_floor,
        }
    }

    pub fn model(&self) -> &'m TrainedModel {
        self.model
    }

    /// Main tables when both words are known, unknown-word tables otherwise.
    #[inline]
    pub fn tables_for(&self, word: WordId, previous: WordId) -> &'m CountTables {
        if word == UNKNOWN_ID || previous == UNKNOWN_ID {
            self.model.unknown()
        } else {
            self.model.main()
        }
    }

    /// `P(next | prev, prev_word)` read from `tables`.
    pub fn class_transition_in(
        &self,
        tables: &CountTables,
        next: NameClass,
        prev: NameClass,
        prev_word: WordId,
    ) -> f64 {
        let (tri, bi, uni) = (&tables.nc_trigram, &tables.nc_bigram, &tables.nc_unigram);
        let stats = [tri.context((prev, prev_word)), bi.context(prev), uni.context(())];
        let ratios = [
            ratio(tri.count((prev, prev_word), next), stats[0]),
            ratio(bi.count(prev, next), stats[1]),
            ratio(uni.count((), next), stats[2]),
        ];
        mix(&weights(stats), &ratios, 1.0 / TRANSITION_OUTCOMES as f64)
    }

    /// `P(next | prev, prev_word)` for every successor, in
    /// [`NameClass::SUCCESSORS`] order.
    pub fn class_transition_row(&self, prev: NameClass, prev_word: WordId) -> [f64; TRANSITION_OUTCOMES] {
        let tables = self.tables_for(prev_word, prev_word);
        let (tri, bi, uni) = (&tables.nc_trigram, &tables.nc_bigram, &tables.nc_unigram);
        let stats = [tri.context((prev, prev_word)), bi.context(prev), uni.context(())];
        let lambdas = weights(stats);
        let floor = 1.0 / TRANSITION_OUTCOMES as f64;
        NameClass::SUCCESSORS.map(|next| {
            let ratios = [
                ratio(tri.count((prev, prev_word), next), stats[0]),
                ratio(bi.count(prev, next), stats[1]),
                ratio(uni.count((), next), stats[2]),
            ];
            mix(&lambdas, &ratios, floor)
        })
    }

    /// `P(next | prev, prev_word)`, choosing tables by `prev_word`.
    pub fn class_transition(&self, next: NameClass, prev: NameClass, prev_word: WordId) -> f64 {
        self.class_transition_in(self.tables_for(prev_word, prev_word), next, prev, prev_word)
    }

    /// Levels 2 and below of the first-word chain, which do not depend on
    /// the previous class. Returns the tail value and the level-1 inputs.
    #[inline]
    fn first_word_tail(&self, tables: &CountTables, token: TokenKey, class: NameClass) -> FirstWordTail {
        let begin = tables.begin_bigram.context(class);
        let uni = tables.word_unigram.context(class);
        let words = tables.word_only.context(class);
        let feats = tables.feature_only.context(class);
        let product = ratio(tables.word_only.count(class, token.word), words)
            * ratio(tables.feature_only.count(class, token.feature), feats);
        let ratios = [ratio(tables.word_unigram.count(class, token), uni), product];
        // Chained to the level-1 sample size.
        let l2 = lambda(LambdaInputs {
            c_y: uni.total,
            old_c_y: begin.total,
            unique_outcomes: uni.unique,
        });
        let l3 = lambda(LambdaInputs {
            c_y: words.total,
            old_c_y: uni.total,
            unique_outcomes: words.unique,
        });
        FirstWordTail {
            tail: mix(&[l2, l3], &ratios, self.first_floor),
            begin,
            begin_ratio: ratio(tables.begin_bigram.count(class, token), begin),
        }
    }

    #[inline]
    fn first_word_top(
        tables: &CountTables,
        token: TokenKey,
        class: NameClass,
        prev: NameClass,
        t: &FirstWordTail,
    ) -> f64 {
        let top = tables.first_word.context((class, prev));
        let l0 = lambda(LambdaInputs {
            c_y: top.total,
            old_c_y: 0,
            unique_outcomes: top.unique,
        });
        let l1 = lambda(LambdaInputs {
            c_y: t.begin.total,
            old_c_y: top.total,
            unique_outcomes: t.begin.unique,
        });
        let ratios = [ratio(tables.first_word.count((class, prev), token), top), t.begin_ratio];
        mix(&[l0, l1], &ratios, t.tail)
    }

    /// `P(⟨w,f⟩_first | class, prev)` read from `tables`.
    pub fn first_word_in(&self, tables: &CountTables, token: TokenKey, class: NameClass, prev: NameClass) -> f64 {
        let tail = self.first_word_tail(tables, token, class);
        Self::first_word_top(tables, token, class, prev, &tail)
    }

    /// `P(⟨w,f⟩_first | class, prev)`; the previous word is `+begin+`, so the
    /// unknown tables are used only when `token` itself is unknown.
    pub fn first_word(&self, token: TokenKey, class: NameClass, prev: NameClass) -> f64 {
        self.first_word_in(self.tables_for(token.word, token.word), token, class, prev)
    }

    /// `P(⟨w,f⟩_first | class, prev)` for every predecessor, in
    /// [`NameClass::PREDECESSORS`] order.
    pub fn first_word_column(&self, token: TokenKey, class: NameClass) -> [f64; 9] {
        let tables = self.tables_for(token.word, token.word);
        let tail = self.first_word_tail(tables, token, class);
        NameClass::PREDECESSORS.map(|prev| Self::first_word_top(tables, token, class, prev, &tail))
    }

    /// `P(⟨w,f⟩ | ⟨w,f⟩₋₁, class)` read from `tables`. `token` may be
    /// [`TokenKey::END`].
    pub fn next_word_in(&self, tables: &CountTables, token: TokenKey, previous: TokenKey, class: NameClass) -> f64 {
        let stats = [
            tables.word_bigram.context((previous, class)),
            tables.word_unigram.context(class),
            tables.word_only.context(class),
        ];
        let product = ratio(tables.word_only.count(class, token.word), stats[2])
            * ratio(
                tables.feature_only.count(class, token.feature),
                tables.feature_only.context(class),
            );
        let ratios = [
            ratio(tables.word_bigram.count((previous, class), token), stats[0]),
            ratio(tables.word_unigram.count(class, token), stats[1]),
            product,
        ];
        mix(&weights(stats), &ratios, self.next_floor)
    }

    /// `P(⟨w,f⟩ | ⟨w,f⟩₋₁, class)`, choosing tables by both words.
    pub fn next_word(&self, token: TokenKey, previous: TokenKey, class: NameClass) -> f64 {
        self.next_word_in(self.tables_for(token.word, previous.word), token, previous, class)
    }

    /// Resolves a surface token against the vocabulary. The sentinel
    /// spellings map to the sentinels.
    pub fn key(&self, token: &Token) -> TokenKey {
        let word = match token.word.as_str() {
            END_WORD => crate::counts::END_ID,
            BEGIN_WORD => crate::counts::BEGIN_ID,
            w => self.model.vocabulary().lookup(w),
        };
        TokenKey::new(word, token.feature)
    }

    fn word_id(&self, word: &str) -> WordId {
        match word {
            END_WORD => crate::counts::END_ID,
            BEGIN_WORD => crate::counts::BEGIN_ID,
            w => self.model.vocabulary().lookup(w),
        }
    }
}

struct FirstWordTail {
    tail: f64,
    begin: ContextStats,
    begin_ratio: f64,
}

/// The tables a bigram `(w_prev, w)` is scored with.
pub fn select_tables<'m>(word: &str, previous_word: &str, model: &'m TrainedModel) -> &'m CountTables {
    let est = Estimator::new(model);
    est.tables_for(est.word_id(word), est.word_id(previous_word))
}

/// `P(NC | NC₋₁, w₋₁)`. `w_prev` is `+end+` after start of sentence.
pub fn p_class_transition(next: NameClass, prev: NameClass, w_prev: &str, model: &TrainedModel) -> f64 {
    let est = Estimator::new(model);
    est.class_transition(next, prev, est.word_id(w_prev))
}

/// `P(⟨w,f⟩_first | NC, NC₋₁)`.
pub fn p_first_word(token: &Token, class: NameClass, prev: NameClass, model: &TrainedModel) -> f64 {
    let est = Estimator::new(model);
    est.first_word(est.key(token), class, prev)
}

/// `P(⟨w,f⟩ | ⟨w,f⟩₋₁, NC)`; `token` may be `⟨+end+, other⟩`.
pub fn p_next_word(token: &Token, previous: &Token, class: NameClass, model: &TrainedModel) -> f64 {
    let est = Estimator::new(model);
    est.next_word(est.key(token), est.key(previous), class)
}

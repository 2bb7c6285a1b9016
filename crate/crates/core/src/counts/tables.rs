use std::hash::Hash;

use rustc_hash::FxHashMap;

use super::vocab::{WordId, END_ID};
use crate::corpus::{NameClass, Segment};
use crate::features::WordFeature;

/// A word id paired with its feature: the model's view of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenKey {
    pub word: WordId,
    pub feature: WordFeature,
}

impl TokenKey {
    pub const END: TokenKey = TokenKey {
        word: END_ID,
        feature: WordFeature::Other,
    };

    pub fn new(word: WordId, feature: WordFeature) -> Self {
        TokenKey { word, feature }
    }
}

/// Sample size and number of distinct outcomes observed with a context.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ContextStats {
    pub total: u64,
    pub unique: u64,
}

/// Joint counts `c(event, context)` with per-context totals kept in step.
#[derive(Debug, Clone)]
pub struct CondCounts<C, E> {
    joint: FxHashMap<(C, E), u64>,
    contexts: FxHashMap<C, ContextStats>,
}

impl<C, E> Default for CondCounts<C, E> {
    fn default() -> Self {
        CondCounts {
            joint: FxHashMap::default(),
            contexts: FxHashMap::default(),
        }
    }
}

impl<C: Eq + Hash, E: Eq + Hash> PartialEq for CondCounts<C, E> {
    fn eq(&self, other: &Self) -> bool {
        self.joint == other.joint
    }
}

impl<C: Eq + Hash, E: Eq + Hash> Eq for CondCounts<C, E> {}

impl<C, E> CondCounts<C, E>
where
    C: Copy + Eq + Hash + Ord,
    E: Copy + Eq + Hash + Ord,
{
    pub fn add(&mut self, context: C, event: E, n: u64) {
        if n == 0 {
            return;
        }
        let slot = self.joint.entry((context, event)).or_insert(0);
        let fresh = *slot == 0;
        *slot += n;
        let stats = self.contexts.entry(context).or_default();
        stats.total += n;
        if fresh {
            stats.unique += 1;
        }
    }

    #[inline]
    pub fn count(&self, context: C, event: E) -> u64 {
        self.joint.get(&(context, event)).copied().unwrap_or(0)
    }

    #[inline]
    pub fn context(&self, context: C) -> ContextStats {
        self.contexts.get(&context).copied().unwrap_or_default()
    }

    /// Maximum-likelihood ratio `c(event, context) / c(context)`, 0 for an
    /// unseen context.
    #[inline]
    pub fn ratio(&self, context: C, event: E) -> (f64, ContextStats) {
        let stats = self.context(context);
        if stats.total == 0 {
            return (0.0, stats);
        }
        (self.count(context, event) as f64 / stats.total as f64, stats)
    }

    pub fn merge(&mut self, other: &CondCounts<C, E>) {
        for (&(c, e), &n) in &other.joint {
            self.add(c, e, n);
        }
    }

    /// All `(context, event, count)` rows sorted by context then event.
    pub fn rows(&self) -> Vec<(C, E, u64)> {
        let mut rows: Vec<_> = self.joint.iter().map(|(&(c, e), &n)| (c, e, n)).collect();
        rows.sort_unstable_by_key(|r| (r.0, r.1));
        rows
    }

    pub fn contexts(&self) -> impl Iterator<Item = (C, ContextStats)> + '_ {
        self.contexts.iter().map(|(&c, &s)| (c, s))
    }

    /// Events observed with `context`, unordered.
    pub fn events_of(&self, context: C) -> impl Iterator<Item = (E, u64)> + '_ {
        self.joint
            .iter()
            .filter(move |((c, _), _)| *c == context)
            .map(|(&(_, e), &n)| (e, n))
    }

    pub fn len(&self) -> usize {
        self.joint.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joint.is_empty()
    }
}

/// Every count the three back-off chains read.
///
/// Field names follow the distribution they feed; contexts are listed first
/// in each key tuple.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTables {
    /// `c(NC | NC₋₁, w₋₁)`
    pub nc_trigram: CondCounts<(NameClass, WordId), NameClass>,
    /// `c(NC | NC₋₁)`
    pub nc_bigram: CondCounts<NameClass, NameClass>,
    /// `c(NC)` over all transitions.
    pub nc_unigram: CondCounts<(), NameClass>,
    /// `c(⟨w,f⟩_first | NC, NC₋₁)`
    pub first_word: CondCounts<(NameClass, NameClass), TokenKey>,
    /// `c(⟨w,f⟩ | ⟨+begin+,other⟩, NC)`
    pub begin_bigram: CondCounts<NameClass, TokenKey>,
    /// `c(⟨w,f⟩ | ⟨w,f⟩₋₁, NC)`, including `⟨+end+,other⟩` outcomes.
    pub word_bigram: CondCounts<(TokenKey, NameClass), TokenKey>,
    /// `c(⟨w,f⟩ | NC)` over every emitted word, first or not.
    pub word_unigram: CondCounts<NameClass, TokenKey>,
    /// `c(w | NC)`
    pub word_only: CondCounts<NameClass, WordId>,
    /// `c(f | NC)`
    pub feature_only: CondCounts<NameClass, WordFeature>,
}

impl CountTables {
    fn transition(&mut self, prev: NameClass, prev_word: WordId, next: NameClass) {
        self.nc_trigram.add((prev, prev_word), next, 1);
        self.nc_bigram.add(prev, next, 1);
        self.nc_unigram.add((), next, 1);
    }

    fn emission(&mut self, class: NameClass, token: TokenKey) {
        self.word_unigram.add(class, token, 1);
        self.word_only.add(class, token.word, 1);
        self.feature_only.add(class, token.feature, 1);
    }

    /// Adds the events of one encoded sentence.
    pub(crate) fn count_sentence(&mut self, tokens: &[TokenKey], segments: &[Segment]) {
        if tokens.is_empty() {
            return;
        }
        let mut prev_class = NameClass::StartOfSentence;
        let mut prev_word = END_ID;
        for seg in segments {
            let class = seg.class;
            self.transition(prev_class, prev_word, class);

            let first = tokens[seg.start];
            self.first_word.add((class, prev_class), first, 1);
            self.begin_bigram.add(class, first, 1);
            self.emission(class, first);
            for i in seg.start + 1..seg.end {
                self.word_bigram.add((tokens[i - 1], class), tokens[i], 1);
                self.emission(class, tokens[i]);
            }
            let last = tokens[seg.end - 1];
            self.word_bigram.add((last, class), TokenKey::END, 1);

            prev_class = class;
            prev_word = last.word;
        }
        self.transition(prev_class, prev_word, NameClass::EndOfSentence);
    }

    /// Adds every count of `other` into `self`.
    pub fn merge(&mut self, other: &CountTables) {
        self.nc_trigram.merge(&other.nc_trigram);
        self.nc_bigram.merge(&other.nc_bigram);
        self.nc_unigram.merge(&other.nc_unigram);
        self.first_word.merge(&other.first_word);
        self.begin_bigram.merge(&other.begin_bigram);
        self.word_bigram.merge(&other.word_bigram);
        self.word_unigram.merge(&other.word_unigram);
        self.word_only.merge(&other.word_only);
        self.feature_only.merge(&other.feature_only);
    }
}

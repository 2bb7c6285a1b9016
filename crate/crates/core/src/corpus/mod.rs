//! Annotated sentences, name classes, and corpus-level utilities.
//!
//! The annotated file format is one sentence per line, tokens separated by
//! whitespace, with names marked by inline `ENAMEX`/`TIMEX`/`NUMEX` tags.

mod markup;
mod tokenize;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use markup::{emit_annotated, parse_annotated};
pub use tokenize::{is_abbreviation, tokenize};

/// A name-class state of the model.
///
/// The first eight variants emit words. `StartOfSentence` and
/// `EndOfSentence` only ever appear as transition contexts and outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NameClass {
    Person,
    Organization,
    Location,
    Time,
    Date,
    Percent,
    Money,
    NotAName,
    StartOfSentence,
    EndOfSentence,
}

impl NameClass {
    /// The eight emitting classes in tie-break order.
    pub const EMITTING: [NameClass; 8] = [
        NameClass::Person,
        NameClass::Organization,
        NameClass::Location,
        NameClass::Time,
        NameClass::Date,
        NameClass::Percent,
        NameClass::Money,
        NameClass::NotAName,
    ];

    /// The seven classes that can be marked up as regions.
    pub const ENTITIES: [NameClass; 7] = [
        NameClass::Person,
        NameClass::Organization,
        NameClass::Location,
        NameClass::Time,
        NameClass::Date,
        NameClass::Percent,
        NameClass::Money,
    ];

    /// Every class that can follow another: the emitting classes plus end of sentence.
    pub const SUCCESSORS: [NameClass; 9] = [
        NameClass::Person,
        NameClass::Organization,
        NameClass::Location,
        NameClass::Time,
        NameClass::Date,
        NameClass::Percent,
        NameClass::Money,
        NameClass::NotAName,
        NameClass::EndOfSentence,
    ];

    /// Every class that can precede an emitting class.
    pub const PREDECESSORS: [NameClass; 9] = [
        NameClass::Person,
        NameClass::Organization,
        NameClass::Location,
        NameClass::Time,
        NameClass::Date,
        NameClass::Percent,
        NameClass::Money,
        NameClass::NotAName,
        NameClass::StartOfSentence,
    ];

    pub const ALL: [NameClass; 10] = [
        NameClass::Person,
        NameClass::Organization,
        NameClass::Location,
        NameClass::Time,
        NameClass::Date,
        NameClass::Percent,
        NameClass::Money,
        NameClass::NotAName,
        NameClass::StartOfSentence,
        NameClass::EndOfSentence,
    ];

    /// Dense index in declaration order (0..10). Emitting classes occupy 0..8.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(index: usize) -> Option<NameClass> {
        Self::ALL.get(index).copied()
    }

    pub fn is_emitting(self) -> bool {
        self.index() < 8
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NameClass::Person => "PERSON",
            NameClass::Organization => "ORGANIZATION",
            NameClass::Location => "LOCATION",
            NameClass::Time => "TIME",
            NameClass::Date => "DATE",
            NameClass::Percent => "PERCENT",
            NameClass::Money => "MONEY",
            NameClass::NotAName => "NOT-A-NAME",
            NameClass::StartOfSentence => "START-OF-SENTENCE",
            NameClass::EndOfSentence => "END-OF-SENTENCE",
        }
    }

    /// The markup element that carries this class, if it is an entity class.
    pub fn tag(self) -> Option<&'static str> {
        match self {
            NameClass::Person | NameClass::Organization | NameClass::Location => Some("ENAMEX"),
            NameClass::Time | NameClass::Date => Some("TIMEX"),
            NameClass::Percent | NameClass::Money => Some("NUMEX"),
            _ => None,
        }
    }
}

impl fmt::Display for NameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NameClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        NameClass::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown name class `{s}`"))
    }
}

/// A typed span of tokens, `start..end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub start: usize,
    pub end: usize,
    pub class: NameClass,
}

impl Region {
    pub fn new(start: usize, end: usize, class: NameClass) -> Self {
        Region { start, end, class }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }
}

/// A stretch of a sentence generated by one class, including NOT-A-NAME.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub class: NameClass,
}

/// Tokens plus the named regions over them. Tokens outside every region are
/// NOT-A-NAME.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnotatedSentence {
    pub tokens: Vec<String>,
    pub regions: Vec<Region>,
}

impl AnnotatedSentence {
    pub fn new(tokens: Vec<String>, regions: Vec<Region>) -> Self {
        AnnotatedSentence { tokens, regions }
    }

    /// A sentence with no regions.
    pub fn plain<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Self {
        AnnotatedSentence {
            tokens: tokens.into_iter().map(Into::into).collect(),
            regions: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Checks that regions are non-empty, in bounds, sorted, disjoint and
    /// carry entity classes.
    pub fn is_valid(&self) -> bool {
        let mut cursor = 0;
        for region in &self.regions {
            if region.start < cursor
                || region.start >= region.end
                || region.end > self.tokens.len()
                || !NameClass::ENTITIES.contains(&region.class)
            {
                return false;
            }
            cursor = region.end;
        }
        true
    }

    /// Splits the sentence into generating segments: every region, plus one
    /// NOT-A-NAME segment per maximal uncovered stretch.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::with_capacity(self.regions.len() * 2 + 1);
        let mut cursor = 0;
        for region in &self.regions {
            if region.start > cursor {
                out.push(Segment {
                    start: cursor,
                    end: region.start,
                    class: NameClass::NotAName,
                });
            }
            out.push(Segment {
                start: region.start,
                end: region.end,
                class: region.class,
            });
            cursor = region.end;
        }
        if cursor < self.tokens.len() {
            out.push(Segment {
                start: cursor,
                end: self.tokens.len(),
                class: NameClass::NotAName,
            });
        }
        out
    }

    /// The class of every token.
    pub fn labels(&self) -> Vec<NameClass> {
        let mut labels = vec![NameClass::NotAName; self.tokens.len()];
        for region in &self.regions {
            for label in &mut labels[region.start..region.end] {
                *label = region.class;
            }
        }
        labels
    }
}

/// Number of items selected by `fraction` of `total`, rounding half up.
pub fn fraction_count(fraction: f64, total: usize) -> usize {
    ((fraction * total as f64) + 0.5).floor() as usize
}

/// Randomly partitions `sentences` into two parts, the first holding
/// `round(fraction * len)` sentences. Each part keeps the input order.
pub fn split_corpus<T: Clone>(sentences: &[T], fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    if sentences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }
    let take = fraction_count(fraction, sentences.len());
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut in_a = vec![false; sentences.len()];
    for &i in &order[..take] {
        in_a[i] = true;
    }
    let (mut a, mut b) = (Vec::with_capacity(take), Vec::with_capacity(sentences.len() - take));
    for (sentence, selected) in sentences.iter().zip(in_a) {
        if selected {
            a.push(sentence.clone());
        } else {
            b.push(sentence.clone());
        }
    }
    Ok((a, b))
}

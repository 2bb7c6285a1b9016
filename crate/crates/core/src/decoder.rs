//! Exact Viterbi search over name-class segmentations.
//!
//! One theory per emitting class is kept at every token. A theory either
//! continues the region of its predecessor, or closes the predecessor's
//! region (`+end+`), transitions to a new class, and opens a region with a
//! first word. Scores are natural-log probabilities accumulated left to right.

use rayon::prelude::*;

use crate::corpus::{tokenize, AnnotatedSentence, NameClass, Region, Segment};
use crate::counts::{TokenKey, TrainedModel, END_ID};
use crate::estimator::Estimator;

const CLASSES: usize = 8;
const END_POS: usize = 8;

/// How a theory was reached from its predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Same region, next word.
    Continue,
    /// Previous region ends and a new one starts.
    CloseAndOpen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Backpointer {
    pub prev: NameClass,
    pub boundary: Boundary,
}

/// Best partial hypothesis ending in `class` at one token.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theory {
    pub class: NameClass,
    pub log_score: f64,
    /// `None` at the first token.
    pub back: Option<Backpointer>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub sentence: AnnotatedSentence,
    /// The full path, NOT-A-NAME stretches included.
    pub segments: Vec<Segment>,
    /// `ln Pr(W, NC)` of the best path.
    pub log_score: f64,
}

/// Viterbi decoder bound to one model.
#[derive(Debug, Clone, Copy)]
pub struct Decoder<'m> {
    est: Estimator<'m>,
}

impl<'m> Decoder<'m> {
    pub fn new(model: &'m TrainedModel) -> Self {
        Decoder {
            est: Estimator::new(model),
        }
    }

    pub fn model(&self) -> &'m TrainedModel {
        self.est.model()
    }

    /// The full lattice for an encoded sentence: one row of eight theories per
    /// token.
    pub fn lattice(&self, keys: &[TokenKey]) -> Vec<[Theory; CLASSES]> {
        let est = &self.est;
        let mut lattice = Vec::with_capacity(keys.len());
        let Some(&first) = keys.first() else {
            return lattice;
        };

        let start_row = est.class_transition_row(NameClass::StartOfSentence, END_ID);
        lattice.push(std::array::from_fn(|j| {
            let class = NameClass::EMITTING[j];
            Theory {
                class,
                log_score: start_row[j].ln() + est.first_word(first, class, NameClass::StartOfSentence).ln(),
                back: None,
            }
        }));

        let mut end_lp = [0.0; CLASSES];
        let mut trans_lp = [[0.0; 9]; CLASSES];
        let mut first_lp = [[0.0; 9]; CLASSES];
        let mut cont_lp = [0.0; CLASSES];
        for t in 1..keys.len() {
            let (prev_key, key) = (keys[t - 1], keys[t]);
            for (i, &class) in NameClass::EMITTING.iter().enumerate() {
                end_lp[i] = est.next_word(TokenKey::END, prev_key, class).ln();
                trans_lp[i] = est.class_transition_row(class, prev_key.word).map(f64::ln);
                first_lp[i] = est.first_word_column(key, class).map(f64::ln);
                cont_lp[i] = est.next_word(key, prev_key, class).ln();
            }

            let prev_row = &lattice[t - 1];
            let row: [Theory; CLASSES] = std::array::from_fn(|j| {
                let mut best = prev_row[j].log_score + cont_lp[j];
                let mut back = Backpointer {
                    prev: NameClass::EMITTING[j],
                    boundary: Boundary::Continue,
                };
                for i in 0..CLASSES {
                    let score = prev_row[i].log_score + end_lp[i] + trans_lp[i][j] + first_lp[j][i];
                    if score > best {
                        best = score;
                        back = Backpointer {
                            prev: NameClass::EMITTING[i],
                            boundary: Boundary::CloseAndOpen,
                        };
                    }
                }
                Theory {
                    class: NameClass::EMITTING[j],
                    log_score: best,
                    back: Some(back),
                }
            });
            lattice.push(row);
        }
        lattice
    }

    /// Log score of closing each final theory and ending the sentence.
    fn final_scores(&self, keys: &[TokenKey], last_row: &[Theory; CLASSES]) -> [f64; CLASSES] {
        let last = *keys.last().expect("non-empty sentence");
        std::array::from_fn(|j| {
            let class = NameClass::EMITTING[j];
            last_row[j].log_score
                + self.est.next_word(TokenKey::END, last, class).ln()
                + self.est.class_transition_row(class, last.word)[END_POS].ln()
        })
    }

    /// Best segmentation of an encoded sentence and its log score.
    pub fn best_path(&self, keys: &[TokenKey]) -> (Vec<Segment>, f64) {
        if keys.is_empty() {
            return (Vec::new(), 0.0);
        }
        let lattice = self.lattice(keys);
        let finals = self.final_scores(keys, lattice.last().expect("non-empty lattice"));
        let mut best = 0;
        for j in 1..CLASSES {
            if finals[j] > finals[best] {
                best = j;
            }
        }

        let mut segments = Vec::new();
        let mut class = NameClass::EMITTING[best];
        let mut end = keys.len();
        for t in (1..keys.len()).rev() {
            let back = lattice[t][class.index()].back.expect("backpointer past first token");
            if back.boundary == Boundary::CloseAndOpen {
                segments.push(Segment { start: t, end, class });
                end = t;
            }
            class = back.prev;
        }
        segments.push(Segment { start: 0, end, class });
        segments.reverse();
        (segments, finals[best])
    }

    /// Log probability of one particular segmentation, accumulated in the
    /// same order as the search.
    pub fn score_path(&self, keys: &[TokenKey], segments: &[Segment]) -> f64 {
        let est = &self.est;
        let Some(first_seg) = segments.first() else {
            return 0.0;
        };
        let mut class = first_seg.class;
        let mut score = est.class_transition(class, NameClass::StartOfSentence, END_ID).ln()
            + est.first_word(keys[0], class, NameClass::StartOfSentence).ln();
        let mut boundaries = segments.iter().skip(1).peekable();
        for t in 1..keys.len() {
            let (prev_key, key) = (keys[t - 1], keys[t]);
            match boundaries.next_if(|s| s.start == t) {
                None => score += est.next_word(key, prev_key, class).ln(),
                Some(seg) => {
                    score += est.next_word(TokenKey::END, prev_key, class).ln();
                    score += est.class_transition(seg.class, class, prev_key.word).ln();
                    score += est.first_word(key, seg.class, class).ln();
                    class = seg.class;
                }
            }
        }
        let last = keys[keys.len() - 1];
        score += est.next_word(TokenKey::END, last, class).ln();
        score += est.class_transition(NameClass::EndOfSentence, class, last.word).ln();
        score
    }

    /// Decodes one tokenized sentence.
    pub fn decode<S: AsRef<str>>(&self, words: &[S]) -> DecodeResult {
        let keys = self.model().encode(words);
        let (segments, log_score) = self.best_path(&keys);
        let regions = segments
            .iter()
            .filter(|s| s.class != NameClass::NotAName)
            .map(|s| Region::new(s.start, s.end, s.class))
            .collect();
        DecodeResult {
            sentence: AnnotatedSentence::new(words.iter().map(|w| w.as_ref().to_string()).collect(), regions),
            segments,
            log_score,
        }
    }
}

/// Decodes one tokenized sentence with `model`.
pub fn decode_sentence<S: AsRef<str>>(tokens: &[S], model: &TrainedModel) -> DecodeResult {
    Decoder::new(model).decode(tokens)
}

/// Tokenizes `text` and decodes each sentence in order on the current thread.
pub fn decode_document(text: &str, model: &TrainedModel) -> Vec<DecodeResult> {
    let decoder = Decoder::new(model);
    tokenize(text).iter().map(|s| decoder.decode(s)).collect()
}

/// Decodes pre-split sentences across the rayon pool; output keeps input order.
pub fn decode_sentences_parallel<S: AsRef<str> + Sync>(
    sentences: &[Vec<S>],
    model: &TrainedModel,
) -> Vec<DecodeResult> {
    let decoder = Decoder::new(model);
    sentences.par_iter().map(|s| decoder.decode(s)).collect()
}

//! Test-only oracles and random fixtures.
//!
//! The oracle estimator re-derives every event from raw annotated sentences,
//! keeps plain event lists, and evaluates the back-off chains recursively by
//! scanning those lists. It shares no code with the production counting or
//! estimation paths.

#![allow(dead_code)]

use std::collections::HashSet;

use namefinder::corpus::{AnnotatedSentence, NameClass, Region, Segment};
use namefinder::counts::END_ID;
use namefinder::features::{compute_feature, FeatureConfig, WordFeature};
use namefinder::{Estimator, TokenKey};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const UNK: &str = "<<oracle-unk>>";
pub const END: &str = "<<oracle-end>>";

pub type Tok = (String, WordFeature);

fn end_tok() -> Tok {
    (END.to_string(), WordFeature::Other)
}

#[derive(Default, Clone)]
pub struct Events {
    /// (prev class, prev word, next class)
    pub transitions: Vec<(NameClass, String, NameClass)>,
    /// (class, prev class, token)
    pub firsts: Vec<(NameClass, NameClass, Tok)>,
    /// (prev token, class, token)
    pub bigrams: Vec<(Tok, NameClass, Tok)>,
    /// (class, token) for every emitted real word
    pub emissions: Vec<(NameClass, Tok)>,
}

impl Events {
    /// Walks each sentence token by token; a new name-class run starts where
    /// the label changes or a region begins.
    pub fn harvest(sentences: &[AnnotatedSentence], known: &dyn Fn(&str) -> bool, config: FeatureConfig) -> Events {
        let mut ev = Events::default();
        for s in sentences {
            if s.tokens.is_empty() {
                continue;
            }
            let mut label = vec![NameClass::NotAName; s.tokens.len()];
            let mut starts = HashSet::new();
            for r in &s.regions {
                starts.insert(r.start);
                starts.insert(r.end);
                for l in &mut label[r.start..r.end] {
                    *l = r.class;
                }
            }
            let toks: Vec<Tok> = s
                .tokens
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let f = compute_feature(w, i == 0, config);
                    let w = if known(w) { w.clone() } else { UNK.to_string() };
                    (w, f)
                })
                .collect();

            let mut prev_class = NameClass::StartOfSentence;
            let mut prev_word = END.to_string();
            for i in 0..toks.len() {
                let new_run = i == 0 || label[i] != label[i - 1] || starts.contains(&i);
                if new_run {
                    if i > 0 {
                        ev.bigrams.push((toks[i - 1].clone(), label[i - 1], end_tok()));
                        prev_class = label[i - 1];
                        prev_word = toks[i - 1].0.clone();
                    }
                    ev.transitions.push((prev_class, prev_word.clone(), label[i]));
                    ev.firsts.push((label[i], prev_class, toks[i].clone()));
                } else {
                    ev.bigrams.push((toks[i - 1].clone(), label[i], toks[i].clone()));
                }
                ev.emissions.push((label[i], toks[i].clone()));
            }
            let last = toks.len() - 1;
            ev.bigrams.push((toks[last].clone(), label[last], end_tok()));
            ev.transitions
                .push((label[last], toks[last].0.clone(), NameClass::EndOfSentence));
        }
        ev
    }

    pub fn extend(&mut self, other: Events) {
        self.transitions.extend(other.transitions);
        self.firsts.extend(other.firsts);
        self.bigrams.extend(other.bigrams);
        self.emissions.extend(other.emissions);
    }
}

/// Sample size, distinct outcomes, and the count of `target` among
/// `outcomes`.
fn tally<T: PartialEq + Eq + std::hash::Hash + Clone>(outcomes: &[T], target: &T) -> (u64, u64, u64) {
    let distinct: HashSet<&T> = outcomes.iter().collect();
    let hits = outcomes.iter().filter(|o| *o == target).count();
    (outcomes.len() as u64, distinct.len() as u64, hits as u64)
}

/// One level of a chain: (sample size, unique outcomes, direct estimate).
type Level = (u64, u64, f64);

fn weight(c: u64, old: u64, unique: u64) -> f64 {
    if c == 0 {
        0.0
    } else {
        let c = c as f64;
        (1.0 - old as f64 / c) / (1.0 + unique as f64 / c)
    }
}

/// `P_k = λ_k·direct_k + (1 − λ_k)·P_{k+1}`, with `P_n = floor`.
fn chain(levels: &[Level], k: usize, old: u64, floor: f64) -> f64 {
    if k == levels.len() {
        return floor;
    }
    let (c, u, direct) = levels[k];
    let l = weight(c, old, u);
    l * direct + (1.0 - l) * chain(levels, k + 1, c, floor)
}

fn level<T: PartialEq + Eq + std::hash::Hash + Clone>(outcomes: Vec<T>, target: &T) -> Level {
    let (c, u, n) = tally(&outcomes, target);
    (c, u, if c == 0 { 0.0 } else { n as f64 / c as f64 })
}

pub struct OracleModel {
    pub vocab: HashSet<String>,
    pub main: Events,
    pub unknown: Events,
    pub config: FeatureConfig,
}

impl OracleModel {
    pub fn train(sentences: &[AnnotatedSentence], config: FeatureConfig) -> OracleModel {
        let words_of = |ss: &[AnnotatedSentence]| -> HashSet<String> {
            ss.iter().flat_map(|s| s.tokens.iter().cloned()).collect()
        };
        let vocab = words_of(sentences);
        let half = sentences.len().div_ceil(2);
        let (a, b) = sentences.split_at(half);
        let (va, vb) = (words_of(a), words_of(b));
        let main = Events::harvest(sentences, &|_| true, config);
        let mut unknown = Events::harvest(b, &|w| va.contains(w), config);
        unknown.extend(Events::harvest(a, &|w| vb.contains(w), config));
        OracleModel {
            vocab,
            main,
            unknown,
            config,
        }
    }

    pub fn known(&self, w: &str) -> bool {
        w == END || self.vocab.contains(w)
    }

    /// Maps an out-of-vocabulary word to the oracle's unknown marker.
    pub fn canon(&self, w: &str) -> String {
        if self.known(w) {
            w.to_string()
        } else {
            UNK.to_string()
        }
    }

    fn events(&self, known: bool) -> &Events {
        if known {
            &self.main
        } else {
            &self.unknown
        }
    }

    pub fn word_floor(&self) -> f64 {
        1.0 / (self.vocab.len().max(1) as f64 * 14.0)
    }

    pub fn transition(&self, next: NameClass, prev: NameClass, prev_word: &str) -> f64 {
        let ev = self.events(self.known(prev_word));
        let pw = self.canon(prev_word);
        let l0 = level(
            ev.transitions
                .iter()
                .filter(|(p, w, _)| *p == prev && *w == pw)
                .map(|t| t.2)
                .collect(),
            &next,
        );
        let l1 = level(
            ev.transitions
                .iter()
                .filter(|(p, _, _)| *p == prev)
                .map(|t| t.2)
                .collect(),
            &next,
        );
        let l2 = level(ev.transitions.iter().map(|t| t.2).collect(), &next);
        chain(&[l0, l1, l2], 0, 0, 1.0 / 9.0)
    }

    fn product(ev: &Events, class: NameClass, tok: &Tok) -> Level {
        let words: Vec<&String> = ev
            .emissions
            .iter()
            .filter(|(c, _)| *c == class)
            .map(|(_, t)| &t.0)
            .collect();
        let feats: Vec<WordFeature> = ev
            .emissions
            .iter()
            .filter(|(c, _)| *c == class)
            .map(|(_, t)| t.1)
            .collect();
        let (c, u, nw) = tally(&words, &&tok.0);
        let (_, _, nf) = tally(&feats, &tok.1);
        let direct = if c == 0 {
            0.0
        } else {
            (nw as f64 / c as f64) * (nf as f64 / c as f64)
        };
        (c, u, direct)
    }

    pub fn first_word_with_floor(&self, tok: &Tok, class: NameClass, prev: NameClass, floor: f64) -> f64 {
        let ev = self.events(self.known(&tok.0));
        let tok = (self.canon(&tok.0), tok.1);
        let l0 = level(
            ev.firsts
                .iter()
                .filter(|(c, p, _)| *c == class && *p == prev)
                .map(|f| f.2.clone())
                .collect(),
            &tok,
        );
        let l1 = level(
            ev.firsts
                .iter()
                .filter(|(c, _, _)| *c == class)
                .map(|f| f.2.clone())
                .collect(),
            &tok,
        );
        let l2 = level(
            ev.emissions
                .iter()
                .filter(|(c, _)| *c == class)
                .map(|e| e.1.clone())
                .collect(),
            &tok,
        );
        let l3 = Self::product(ev, class, &tok);
        chain(&[l0, l1, l2, l3], 0, 0, floor)
    }

    pub fn first_word(&self, tok: &Tok, class: NameClass, prev: NameClass) -> f64 {
        self.first_word_with_floor(tok, class, prev, self.word_floor())
    }

    /// `tok.0 == END` asks for the end-of-region probability.
    pub fn next_word_with_floor(&self, tok: &Tok, prev: &Tok, class: NameClass, floor: f64) -> f64 {
        let ev = self.events(self.known(&tok.0) && self.known(&prev.0));
        let tok = (self.canon(&tok.0), tok.1);
        let prev = (self.canon(&prev.0), prev.1);
        let l0 = level(
            ev.bigrams
                .iter()
                .filter(|(p, c, _)| *p == prev && *c == class)
                .map(|b| b.2.clone())
                .collect(),
            &tok,
        );
        let l1 = level(
            ev.emissions
                .iter()
                .filter(|(c, _)| *c == class)
                .map(|e| e.1.clone())
                .collect(),
            &tok,
        );
        let l2 = Self::product(ev, class, &tok);
        chain(&[l0, l1, l2], 0, 0, floor)
    }

    pub fn next_word(&self, tok: &Tok, prev: &Tok, class: NameClass) -> f64 {
        self.next_word_with_floor(tok, prev, class, self.word_floor())
    }
}

/// Words with a spread of shapes so every feature shows up.
pub const WORD_POOL: [&str; 24] = [
    "the",
    "Smith",
    "IBM",
    "1990",
    "90",
    "M.",
    "23,000.00",
    "1.00",
    "11/9/89",
    "09-96",
    "A8956-67",
    "456789",
    "runs",
    ",",
    "Mr.",
    "Paris",
    "said",
    "of",
    "Acme",
    "Corp.",
    "$",
    "%",
    "June",
    "on",
];

pub fn random_sentence<R: Rng>(rng: &mut R, words: &[&str], max_len: usize) -> AnnotatedSentence {
    let len = rng.random_range(1..=max_len);
    let tokens: Vec<String> = (0..len).map(|_| words.choose(rng).unwrap().to_string()).collect();
    let mut regions = Vec::new();
    let mut i = 0;
    while i < len {
        if rng.random_bool(0.35) {
            let end = rng.random_range(i + 1..=len.min(i + 3));
            let class = *NameClass::ENTITIES.choose(rng).unwrap();
            regions.push(Region::new(i, end, class));
            i = end;
        } else {
            i += 1;
        }
    }
    AnnotatedSentence::new(tokens, regions)
}

pub fn random_corpus<R: Rng>(
    rng: &mut R,
    vocab_size: usize,
    sentences: usize,
    max_len: usize,
) -> Vec<AnnotatedSentence> {
    let mut pool = WORD_POOL.to_vec();
    pool.truncate(vocab_size.min(WORD_POOL.len()));
    let n = sentences.max(2);
    (0..n).map(|_| random_sentence(rng, &pool, max_len)).collect()
}

/// Exhaustive search over every class sequence and boundary placement.
///
/// Factors come from single-query estimator calls and are summed in the same
/// left-to-right order as the decoder, so equal paths give bit-equal scores.
/// Among equal-scoring paths the winner minimises the key
/// `[final class, step_{m-1}, …, step_1]`, where a continuation at class `c`
/// is `c` and a boundary out of class `p` is `8 + p`.
pub fn brute_force(est: &Estimator, keys: &[TokenKey]) -> (f64, Vec<Segment>) {
    let m = keys.len();
    assert!(m > 0);
    let e = NameClass::EMITTING;
    let init: Vec<f64> = e
        .iter()
        .map(|&c| {
            est.class_transition(c, NameClass::StartOfSentence, END_ID).ln()
                + est.first_word(keys[0], c, NameClass::StartOfSentence).ln()
        })
        .collect();
    let mut cont = vec![[0.0; 8]; m];
    let mut close = vec![[0.0; 8]; m];
    let mut trans = vec![[[0.0; 8]; 8]; m];
    let mut open = vec![[[0.0; 8]; 8]; m];
    for t in 1..m {
        for (i, &c) in e.iter().enumerate() {
            cont[t][i] = est.next_word(keys[t], keys[t - 1], c).ln();
            close[t][i] = est.next_word(TokenKey::END, keys[t - 1], c).ln();
            for (j, &n) in e.iter().enumerate() {
                trans[t][i][j] = est.class_transition(n, c, keys[t - 1].word).ln();
                open[t][j][i] = est.first_word(keys[t], n, c).ln();
            }
        }
    }
    let last = keys[m - 1];
    let finish: Vec<(f64, f64)> = e
        .iter()
        .map(|&c| {
            (
                est.next_word(TokenKey::END, last, c).ln(),
                est.class_transition(NameClass::EndOfSentence, c, last.word).ln(),
            )
        })
        .collect();

    /// Score, tie-break key, classes per token, and steps.
    type Best = (f64, Vec<u16>, Vec<usize>, Vec<u16>);

    struct Search<'a> {
        m: usize,
        cont: &'a [[f64; 8]],
        close: &'a [[f64; 8]],
        trans: &'a [[[f64; 8]; 8]],
        open: &'a [[[f64; 8]; 8]],
        finish: &'a [(f64, f64)],
        classes: Vec<usize>,
        steps: Vec<u16>,
        best: Option<Best>,
    }

    impl Search<'_> {
        fn go(&mut self, t: usize, score: f64) {
            let c = *self.classes.last().unwrap();
            if t == self.m {
                let (end, eos) = self.finish[c];
                let total = (score + end) + eos;
                let better = match &self.best {
                    None => true,
                    Some((b, ..)) if total > *b => true,
                    Some((b, ..)) if total < *b => false,
                    Some((_, key, ..)) => {
                        let mine: Vec<u16> = std::iter::once(c as u16)
                            .chain(self.steps.iter().rev().copied())
                            .collect();
                        mine < *key
                    }
                };
                if better {
                    let key = std::iter::once(c as u16)
                        .chain(self.steps.iter().rev().copied())
                        .collect();
                    self.best = Some((total, key, self.classes.clone(), self.steps.clone()));
                }
                return;
            }
            self.classes.push(c);
            self.steps.push(c as u16);
            self.go(t + 1, score + self.cont[t][c]);
            self.steps.pop();
            self.classes.pop();
            for n in 0..8 {
                let s = score + self.close[t][c] + self.trans[t][c][n] + self.open[t][n][c];
                self.classes.push(n);
                self.steps.push(8 + c as u16);
                self.go(t + 1, s);
                self.steps.pop();
                self.classes.pop();
            }
        }
    }

    let mut search = Search {
        m,
        cont: &cont,
        close: &close,
        trans: &trans,
        open: &open,
        finish: &finish,
        classes: Vec::with_capacity(m),
        steps: Vec::with_capacity(m),
        best: None,
    };
    for (c, &s) in init.iter().enumerate() {
        search.classes.push(c);
        search.go(1, s);
        search.classes.pop();
    }
    let (score, _, classes, steps) = search.best.unwrap();
    let mut segments = vec![Segment {
        start: 0,
        end: 0,
        class: e[classes[0]],
    }];
    for t in 1..m {
        if steps[t - 1] >= 8 {
            segments.last_mut().unwrap().end = t;
            segments.push(Segment {
                start: t,
                end: 0,
                class: e[classes[t]],
            });
        }
    }
    segments.last_mut().unwrap().end = m;
    (score, segments)
}

//! Deterministic orthographic word features.

use std::fmt;
use std::str::FromStr;

/// The fourteen word features, in precedence order: when a word satisfies
/// several predicates, the earliest one wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordFeature {
    TwoDigitNum,
    FourDigitNum,
    ContainsDigitAndAlpha,
    ContainsDigitAndDash,
    ContainsDigitAndSlash,
    ContainsDigitAndComma,
    ContainsDigitAndPeriod,
    OtherNum,
    AllCaps,
    CapPeriod,
    FirstWord,
    InitCap,
    LowerCase,
    Other,
}

impl WordFeature {
    pub const COUNT: usize = 14;

    pub const ALL: [WordFeature; 14] = [
        WordFeature::TwoDigitNum,
        WordFeature::FourDigitNum,
        WordFeature::ContainsDigitAndAlpha,
        WordFeature::ContainsDigitAndDash,
        WordFeature::ContainsDigitAndSlash,
        WordFeature::ContainsDigitAndComma,
        WordFeature::ContainsDigitAndPeriod,
        WordFeature::OtherNum,
        WordFeature::AllCaps,
        WordFeature::CapPeriod,
        WordFeature::FirstWord,
        WordFeature::InitCap,
        WordFeature::LowerCase,
        WordFeature::Other,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<WordFeature> {
        Self::ALL.get(index).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WordFeature::TwoDigitNum => "twoDigitNum",
            WordFeature::FourDigitNum => "fourDigitNum",
            WordFeature::ContainsDigitAndAlpha => "containsDigitAndAlpha",
            WordFeature::ContainsDigitAndDash => "containsDigitAndDash",
            WordFeature::ContainsDigitAndSlash => "containsDigitAndSlash",
            WordFeature::ContainsDigitAndComma => "containsDigitAndComma",
            WordFeature::ContainsDigitAndPeriod => "containsDigitAndPeriod",
            WordFeature::OtherNum => "otherNum",
            WordFeature::AllCaps => "allCaps",
            WordFeature::CapPeriod => "capPeriod",
            WordFeature::FirstWord => "firstWord",
            WordFeature::InitCap => "initCap",
            WordFeature::LowerCase => "lowerCase",
            WordFeature::Other => "other",
        }
    }
}

impl fmt::Display for WordFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WordFeature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WordFeature::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown word feature `{s}`"))
    }
}

/// Language-dependent knobs of the feature computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FeatureConfig {
    /// Treat `.` as the digit-group separator and `,` as the decimal point,
    /// so `23.000,00` classifies like English `23,000.00`.
    pub swap_comma_period: bool,
}

impl FeatureConfig {
    pub const ENGLISH: FeatureConfig = FeatureConfig {
        swap_comma_period: false,
    };
    pub const SPANISH_NUMBERS: FeatureConfig = FeatureConfig {
        swap_comma_period: true,
    };
}

struct Shape {
    chars: usize,
    digits: usize,
    letters: usize,
    all_digits: bool,
    all_letters_upper: bool,
    first_upper: bool,
    first_lower: bool,
    any_lower: bool,
}

impl Shape {
    fn of(word: &str) -> Shape {
        let mut s = Shape {
            chars: 0,
            digits: 0,
            letters: 0,
            all_digits: true,
            all_letters_upper: true,
            first_upper: false,
            first_lower: false,
            any_lower: false,
        };
        for (i, c) in word.chars().enumerate() {
            s.chars += 1;
            if c.is_ascii_digit() {
                s.digits += 1;
            } else {
                s.all_digits = false;
            }
            if c.is_alphabetic() {
                s.letters += 1;
                if !c.is_uppercase() {
                    s.all_letters_upper = false;
                }
            }
            if c.is_lowercase() {
                s.any_lower = true;
            }
            if i == 0 {
                s.first_upper = c.is_uppercase();
                s.first_lower = c.is_lowercase();
            }
        }
        s.all_digits &= s.chars > 0;
        s
    }
}

/// Classifies `word` into one of the fourteen features.
///
/// `firstWord` only replaces `initCap`; `allCaps` and `capPeriod` win even at
/// the start of a sentence.
pub fn compute_feature(word: &str, is_first_word: bool, config: FeatureConfig) -> WordFeature {
    use WordFeature::*;

    let s = Shape::of(word);
    let (group_sep, decimal_sep) = if config.swap_comma_period {
        ('.', ',')
    } else {
        (',', '.')
    };
    let digit_and = |c: char| s.digits > 0 && s.letters == 0 && word.contains(c);

    if s.all_digits && s.chars == 2 {
        TwoDigitNum
    } else if s.all_digits && s.chars == 4 {
        FourDigitNum
    } else if s.digits > 0 && s.letters > 0 {
        ContainsDigitAndAlpha
    } else if digit_and('-') {
        ContainsDigitAndDash
    } else if digit_and('/') {
        ContainsDigitAndSlash
    } else if digit_and(group_sep) {
        ContainsDigitAndComma
    } else if digit_and(decimal_sep) {
        ContainsDigitAndPeriod
    } else if s.all_digits {
        OtherNum
    } else if s.letters > 0 && s.all_letters_upper && s.digits == 0 && !word.contains('.') {
        AllCaps
    } else if s.chars == 2 && s.first_upper && word.ends_with('.') {
        CapPeriod
    } else if s.first_upper && s.any_lower {
        if is_first_word {
            FirstWord
        } else {
            InitCap
        }
    } else if s.first_lower {
        LowerCase
    } else {
        Other
    }
}

pub const END_WORD: &str = "+end+";
pub const BEGIN_WORD: &str = "+begin+";

/// A word paired with its feature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub word: String,
    pub feature: WordFeature,
}

impl Token {
    pub fn new(word: impl Into<String>, feature: WordFeature) -> Self {
        Token {
            word: word.into(),
            feature,
        }
    }

    /// `⟨+end+, other⟩`: closes a name-class region.
    pub fn end() -> Self {
        Token::new(END_WORD, WordFeature::Other)
    }

    /// `⟨+begin+, other⟩`: the pseudo-predecessor of a region's first word.
    pub fn begin() -> Self {
        Token::new(BEGIN_WORD, WordFeature::Other)
    }
}

/// Features for every word of a sentence; the first word is sentence-initial.
pub fn sentence_features<S: AsRef<str>>(words: &[S], config: FeatureConfig) -> Vec<WordFeature> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| compute_feature(w.as_ref(), i == 0, config))
        .collect()
}

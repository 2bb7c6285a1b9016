use rustc_hash::FxHashMap;

pub type WordId = u32;

/// Id shared by every out-of-vocabulary word.
pub const UNKNOWN_ID: WordId = 0;
/// Id of the `+end+` sentinel.
pub const END_ID: WordId = 1;
/// Id of the `+begin+` sentinel.
pub const BEGIN_ID: WordId = 2;

const SENTINELS: [&str; 3] = ["+unk+", crate::features::END_WORD, crate::features::BEGIN_WORD];
const FIRST_REAL_ID: WordId = 3;

/// Word-to-id map. Ids are assigned in first-seen order and never change.
///
/// Sentinels own the three lowest ids and cannot be reached by looking up a
/// string, so a literal `+end+` in text is an ordinary word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    ids: FxHashMap<String, WordId>,
    words: Vec<String>,
    frozen: bool,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::new()
    }
}

impl Vocabulary {
    pub fn new() -> Self {
        Vocabulary {
            ids: FxHashMap::default(),
            words: SENTINELS.iter().map(|s| s.to_string()).collect(),
            frozen: false,
        }
    }

    /// Adds `word` if absent. A frozen vocabulary never grows and returns
    /// [`UNKNOWN_ID`] for new words.
    pub fn insert(&mut self, word: &str) -> WordId {
        if let Some(&id) = self.ids.get(word) {
            return id;
        }
        if self.frozen {
            return UNKNOWN_ID;
        }
        let id = self.words.len() as WordId;
        self.words.push(word.to_string());
        self.ids.insert(word.to_string(), id);
        id
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn get(&self, word: &str) -> Option<WordId> {
        self.ids.get(word).copied()
    }

    /// Id of `word`, or [`UNKNOWN_ID`].
    pub fn lookup(&self, word: &str) -> WordId {
        self.get(word).unwrap_or(UNKNOWN_ID)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.ids.contains_key(word)
    }

    /// Number of distinct real words, |V|.
    pub fn size(&self) -> usize {
        self.ids.len()
    }

    /// Spelling of `id`; sentinels render as `+unk+`, `+end+`, `+begin+`.
    pub fn word(&self, id: WordId) -> &str {
        &self.words[id as usize]
    }

    pub fn is_sentinel(id: WordId) -> bool {
        id < FIRST_REAL_ID
    }

    /// Real words in id order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words[FIRST_REAL_ID as usize..].iter().map(String::as_str)
    }

    /// A frozen vocabulary holding only `keep`, with the same ids as `self`.
    pub fn restricted<'a>(&self, keep: impl IntoIterator<Item = &'a str>) -> Vocabulary {
        let ids = keep
            .into_iter()
            .filter_map(|w| self.get(w).map(|id| (w.to_string(), id)))
            .collect();
        Vocabulary {
            ids,
            words: self.words.clone(),
            frozen: true,
        }
    }
}

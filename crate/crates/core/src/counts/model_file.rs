//! Line-oriented model file.
//!
//! ```text
//! namefinder-model<TAB>1
//! feature_config<TAB>swap_comma_period=false
//! classes<TAB>PERSON ORGANIZATION ... NOT-A-NAME
//! vocabulary_size<TAB>N
//! [vocabulary]
//! <N lines, one word each, in id order>
//! [main.nc_trigram]
//! event<TAB>context<TAB>count
//! ...
//! [unknown.feature_only]
//! ...
//! ```
//!
//! Multi-part keys are space-separated (words never contain whitespace).
//! Sentinel words are written `+unk+`, `+end+`, `+begin+`; a real word that
//! starts with `+` or `\` is prefixed with `\`.

use std::fmt::Write as _;
use std::hash::Hash;

use super::tables::{CondCounts, CountTables, TokenKey};
use super::vocab::{Vocabulary, WordId, BEGIN_ID, END_ID, UNKNOWN_ID};
use super::TrainedModel;
use crate::corpus::NameClass;
use crate::error::{Error, Result};
use crate::features::{FeatureConfig, WordFeature};

pub const MODEL_FORMAT_VERSION: &str = "1";
const MAGIC: &str = "namefinder-model";

trait Field: Sized {
    fn write(&self, vocab: &Vocabulary, out: &mut String);
    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, vocab: &Vocabulary) -> Option<Self>;
}

fn sep(out: &mut String) {
    if !out.is_empty() && !out.ends_with('\t') {
        out.push(' ');
    }
}

impl Field for () {
    fn write(&self, _: &Vocabulary, out: &mut String) {
        sep(out);
        out.push('*');
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, _: &Vocabulary) -> Option<Self> {
        (parts.next()? == "*").then_some(())
    }
}

impl Field for NameClass {
    fn write(&self, _: &Vocabulary, out: &mut String) {
        sep(out);
        out.push_str(self.as_str());
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, _: &Vocabulary) -> Option<Self> {
        parts.next()?.parse().ok()
    }
}

impl Field for WordFeature {
    fn write(&self, _: &Vocabulary, out: &mut String) {
        sep(out);
        out.push_str(self.as_str());
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, _: &Vocabulary) -> Option<Self> {
        parts.next()?.parse().ok()
    }
}

impl Field for WordId {
    fn write(&self, vocab: &Vocabulary, out: &mut String) {
        sep(out);
        let word = vocab.word(*self);
        if !Vocabulary::is_sentinel(*self) && (word.starts_with('+') || word.starts_with('\\')) {
            out.push('\\');
        }
        out.push_str(word);
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, vocab: &Vocabulary) -> Option<Self> {
        let raw = parts.next()?;
        if let Some(escaped) = raw.strip_prefix('\\') {
            return vocab.get(escaped);
        }
        match raw {
            "+unk+" => Some(UNKNOWN_ID),
            "+end+" => Some(END_ID),
            "+begin+" => Some(BEGIN_ID),
            word => vocab.get(word),
        }
    }
}

impl Field for TokenKey {
    fn write(&self, vocab: &Vocabulary, out: &mut String) {
        self.word.write(vocab, out);
        self.feature.write(vocab, out);
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, vocab: &Vocabulary) -> Option<Self> {
        Some(TokenKey::new(
            WordId::read(parts, vocab)?,
            WordFeature::read(parts, vocab)?,
        ))
    }
}

impl<A: Field, B: Field> Field for (A, B) {
    fn write(&self, vocab: &Vocabulary, out: &mut String) {
        self.0.write(vocab, out);
        self.1.write(vocab, out);
    }

    fn read<'a>(parts: &mut impl Iterator<Item = &'a str>, vocab: &Vocabulary) -> Option<Self> {
        Some((A::read(parts, vocab)?, B::read(parts, vocab)?))
    }
}

fn write_table<C, E>(out: &mut String, name: &str, table: &CondCounts<C, E>, vocab: &Vocabulary)
where
    C: Field + Copy + Eq + Hash + Ord,
    E: Field + Copy + Eq + Hash + Ord,
{
    let _ = writeln!(out, "[{name}]");
    let mut line = String::new();
    for (context, event, count) in table.rows() {
        line.clear();
        event.write(vocab, &mut line);
        line.push('\t');
        context.write(vocab, &mut line);
        let _ = write!(line, "\t{count}");
        out.push_str(&line);
        out.push('\n');
    }
}

const TABLE_NAMES: [&str; 9] = [
    "nc_trigram",
    "nc_bigram",
    "nc_unigram",
    "first_word",
    "begin_bigram",
    "word_bigram",
    "word_unigram",
    "word_only",
    "feature_only",
];

fn write_tables(out: &mut String, prefix: &str, t: &CountTables, vocab: &Vocabulary) {
    let name = |i: usize| format!("{prefix}.{}", TABLE_NAMES[i]);
    write_table(out, &name(0), &t.nc_trigram, vocab);
    write_table(out, &name(1), &t.nc_bigram, vocab);
    write_table(out, &name(2), &t.nc_unigram, vocab);
    write_table(out, &name(3), &t.first_word, vocab);
    write_table(out, &name(4), &t.begin_bigram, vocab);
    write_table(out, &name(5), &t.word_bigram, vocab);
    write_table(out, &name(6), &t.word_unigram, vocab);
    write_table(out, &name(7), &t.word_only, vocab);
    write_table(out, &name(8), &t.feature_only, vocab);
}

/// Serializes a model. Output is deterministic for a given model.
pub fn write_model(model: &TrainedModel) -> String {
    let vocab = model.vocabulary();
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}\t{MODEL_FORMAT_VERSION}");
    let _ = writeln!(
        out,
        "feature_config\tswap_comma_period={}",
        model.feature_config().swap_comma_period
    );
    let classes: Vec<&str> = NameClass::EMITTING.iter().map(|c| c.as_str()).collect();
    let _ = writeln!(out, "classes\t{}", classes.join(" "));
    let _ = writeln!(out, "vocabulary_size\t{}", vocab.size());
    out.push_str("[vocabulary]\n");
    for word in vocab.words() {
        out.push_str(word);
        out.push('\n');
    }
    write_tables(&mut out, "main", model.main(), vocab);
    write_tables(&mut out, "unknown", model.unknown(), vocab);
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::ModelFormat {
                line: 0,
                message: "unexpected end of file".into(),
            })
    }

    fn header(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('\t'))
            .map(|value| (n, value))
            .ok_or_else(|| format_err(n, format!("expected `{key}` header")))
    }
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::ModelFormat {
        line,
        message: message.into(),
    }
}

fn read_table<C, E>(lines: &mut Lines<'_>, name: &str, vocab: &Vocabulary) -> Result<CondCounts<C, E>>
where
    C: Field + Copy + Eq + Hash + Ord,
    E: Field + Copy + Eq + Hash + Ord,
{
    let (n, header) = lines.next()?;
    if header != format!("[{name}]") {
        return Err(format_err(n, format!("expected section [{name}]")));
    }
    let mut table = CondCounts::default();
    while let Some(&(_, line)) = lines.inner.peek() {
        if !line.contains('\t') {
            break;
        }
        let (n, line) = lines.next()?;
        let mut cols = line.split('\t');
        let (Some(event), Some(context), Some(count), None) = (cols.next(), cols.next(), cols.next(), cols.next())
        else {
            return Err(format_err(n, "expected event<TAB>context<TAB>count"));
        };
        let key_err = |what: &str| {
            format_err(
                n,
                format!("bad {what} `{}`", if what == "event" { event } else { context }),
            )
        };
        let mut parts = event.split(' ');
        let e = E::read(&mut parts, vocab)
            .filter(|_| parts.next().is_none())
            .ok_or_else(|| key_err("event"))?;
        let mut parts = context.split(' ');
        let c = C::read(&mut parts, vocab)
            .filter(|_| parts.next().is_none())
            .ok_or_else(|| key_err("context"))?;
        let count: u64 = count
            .parse()
            .map_err(|_| format_err(n, format!("bad count `{count}`")))?;
        if count == 0 {
            return Err(format_err(n, "zero count"));
        }
        table.add(c, e, count);
    }
    Ok(table)
}

fn read_tables(lines: &mut Lines<'_>, prefix: &str, vocab: &Vocabulary) -> Result<CountTables> {
    let name = |i: usize| format!("{prefix}.{}", TABLE_NAMES[i]);
    Ok(CountTables {
        nc_trigram: read_table(lines, &name(0), vocab)?,
        nc_bigram: read_table(lines, &name(1), vocab)?,
        nc_unigram: read_table(lines, &name(2), vocab)?,
        first_word: read_table(lines, &name(3), vocab)?,
        begin_bigram: read_table(lines, &name(4), vocab)?,
        word_bigram: read_table(lines, &name(5), vocab)?,
        word_unigram: read_table(lines, &name(6), vocab)?,
        word_only: read_table(lines, &name(7), vocab)?,
        feature_only: read_table(lines, &name(8), vocab)?,
    })
}

/// Parses a model written by [`write_model`].
pub fn read_model(text: &str) -> Result<TrainedModel> {
    let mut lines = Lines {
        inner: text.lines().enumerate().peekable(),
    };

    let (_, version) = lines.header(MAGIC).map_err(|_| format_err(1, "not a model file"))?;
    if version != MODEL_FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            expected: MODEL_FORMAT_VERSION.into(),
            found: version.into(),
        });
    }

    let (n, config) = lines.header("feature_config")?;
    let swap_comma_period = match config {
        "swap_comma_period=false" => false,
        "swap_comma_period=true" => true,
        other => return Err(format_err(n, format!("bad feature_config `{other}`"))),
    };

    let (n, classes) = lines.header("classes")?;
    let expected: Vec<&str> = NameClass::EMITTING.iter().map(|c| c.as_str()).collect();
    if classes != expected.join(" ") {
        return Err(format_err(n, format!("unsupported class inventory `{classes}`")));
    }

    let (n, size) = lines.header("vocabulary_size")?;
    let size: usize = size.parse().map_err(|_| format_err(n, "bad vocabulary size"))?;
    let (n, section) = lines.next()?;
    if section != "[vocabulary]" {
        return Err(format_err(n, "expected section [vocabulary]"));
    }
    let mut vocab = Vocabulary::new();
    for _ in 0..size {
        let (n, word) = lines.next()?;
        if word.is_empty() || word.contains(char::is_whitespace) || vocab.contains(word) {
            return Err(format_err(n, format!("bad vocabulary entry `{word}`")));
        }
        vocab.insert(word);
    }
    vocab.freeze();

    let main = read_tables(&mut lines, "main", &vocab)?;
    let unknown = read_tables(&mut lines, "unknown", &vocab)?;
    if let Some((n, line)) = lines.inner.next() {
        return Err(format_err(n + 1, format!("trailing content `{line}`")));
    }

    Ok(TrainedModel::from_parts(
        vocab,
        main,
        unknown,
        FeatureConfig { swap_comma_period },
    ))
}

//! Inline-markup reader and writer.

use super::{AnnotatedSentence, NameClass, Region};
use crate::error::{Error, Result};

struct OpenTag {
    name: &'static str,
    class: NameClass,
    start: usize,
}

struct LineParser<'a> {
    line_no: usize,
    line: &'a str,
    tokens: Vec<String>,
    regions: Vec<Region>,
    buf: String,
    open: Option<OpenTag>,
}

impl<'a> LineParser<'a> {
    fn new(line_no: usize, line: &'a str) -> Self {
        LineParser {
            line_no,
            line,
            tokens: Vec::new(),
            regions: Vec::new(),
            buf: String::new(),
            open: None,
        }
    }

    fn error(&self, byte: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line_no,
            column: self.line[..byte].chars().count() + 1,
            message: message.into(),
        }
    }

    fn flush(&mut self) {
        if !self.buf.is_empty() {
            self.tokens.push(std::mem::take(&mut self.buf));
        }
    }

    fn run(mut self) -> Result<Option<AnnotatedSentence>> {
        let bytes = self.line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = self.line[i..].chars().next().expect("char boundary");
            match c {
                '<' => {
                    self.flush();
                    let close = self.line[i..]
                        .find('>')
                        .map(|off| i + off)
                        .ok_or_else(|| self.error(i, "unterminated tag"))?;
                    self.tag(i, &self.line[i + 1..close])?;
                    i = close + 1;
                    continue;
                }
                '>' => return Err(self.error(i, "unescaped `>`")),
                '&' => {
                    let rest = &self.line[i..];
                    let (decoded, len) = if rest.starts_with("&amp;") {
                        ('&', 5)
                    } else if rest.starts_with("&lt;") {
                        ('<', 4)
                    } else if rest.starts_with("&gt;") {
                        ('>', 4)
                    } else {
                        return Err(self.error(i, "unknown or unescaped entity"));
                    };
                    self.buf.push(decoded);
                    i += len;
                    continue;
                }
                c if c.is_whitespace() => self.flush(),
                c => self.buf.push(c),
            }
            i += c.len_utf8();
        }
        self.flush();
        if self.open.is_some() {
            return Err(self.error(self.line.len(), "unclosed tag at end of sentence"));
        }
        if self.tokens.is_empty() {
            return Ok(None);
        }
        Ok(Some(AnnotatedSentence {
            tokens: self.tokens,
            regions: self.regions,
        }))
    }

    fn tag(&mut self, at: usize, body: &str) -> Result<()> {
        if let Some(name) = body.strip_prefix('/') {
            let open = self
                .open
                .take()
                .ok_or_else(|| self.error(at, format!("closing </{name}> without an open tag")))?;
            if name != open.name {
                return Err(self.error(at, format!("</{name}> closes <{}>", open.name)));
            }
            if self.tokens.len() == open.start {
                return Err(self.error(at, "empty region"));
            }
            self.regions
                .push(Region::new(open.start, self.tokens.len(), open.class));
            return Ok(());
        }

        if self.open.is_some() {
            return Err(self.error(at, "nested tag"));
        }
        let mut parts = body.split_whitespace();
        let name = match parts.next() {
            Some("ENAMEX") => "ENAMEX",
            Some("TIMEX") => "TIMEX",
            Some("NUMEX") => "NUMEX",
            Some(other) => return Err(self.error(at, format!("unknown tag `{other}`"))),
            None => return Err(self.error(at, "empty tag")),
        };
        let value = match (parts.next(), parts.next()) {
            (Some(attr), None) => attr
                .strip_prefix("TYPE=\"")
                .and_then(|v| v.strip_suffix('"'))
                .ok_or_else(|| self.error(at, format!("expected TYPE=\"...\" in <{name}>")))?,
            _ => return Err(self.error(at, format!("expected exactly one TYPE attribute in <{name}>"))),
        };
        let class = value
            .parse::<NameClass>()
            .ok()
            .filter(|c| c.tag() == Some(name))
            .ok_or_else(|| self.error(at, format!("unknown TYPE \"{value}\" for <{name}>")))?;
        self.open = Some(OpenTag {
            name,
            class,
            start: self.tokens.len(),
        });
        Ok(())
    }
}

/// Parses an annotated document, one sentence per non-blank line.
pub fn parse_annotated(text: &str) -> Result<Vec<AnnotatedSentence>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if let Some(sentence) = LineParser::new(n + 1, line).run()? {
            out.push(sentence);
        }
    }
    Ok(out)
}

fn push_escaped(out: &mut String, token: &str) {
    for c in token.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
}

/// Writes sentences in the annotated format, one per line.
pub fn emit_annotated(sentences: &[AnnotatedSentence]) -> String {
    let mut out = String::new();
    for sentence in sentences {
        let mut regions = sentence.regions.iter().peekable();
        let mut open: Option<&Region> = None;
        for (i, token) in sentence.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if let Some(region) = regions.next_if(|r| r.start == i) {
                let tag = region.class.tag().unwrap_or("ENAMEX");
                out.push_str(&format!("<{tag} TYPE=\"{}\">", region.class));
                open = Some(region);
            }
            push_escaped(&mut out, token);
            if let Some(region) = open.filter(|r| r.end == i + 1) {
                out.push_str("</");
                out.push_str(region.class.tag().unwrap_or("ENAMEX"));
                out.push('>');
                open = None;
            }
        }
        out.push('\n');
    }
    out
}

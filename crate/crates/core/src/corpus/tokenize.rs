//! Rule-based tokenizer and sentence splitter for raw text.

const ABBREVIATIONS: [&str; 8] = ["Mr.", "Mrs.", "Dr.", "M.", "St.", "Co.", "Inc.", "Corp."];

const LEADING: &[char] = &['(', '[', '{', '"', '\'', '`', '$', '¿', '¡', '“', '‘', '«'];
const TRAILING: &[char] = &[
    ',', ';', ':', '.', '!', '?', '"', '\'', ')', ']', '}', '%', '”', '’', '»',
];
const TERMINAL: [&str; 3] = [".", "!", "?"];

/// True for the closed abbreviation list and for single-letter initials
/// such as `J.`.
pub fn is_abbreviation(word: &str) -> bool {
    if ABBREVIATIONS.contains(&word) {
        return true;
    }
    let mut chars = word.chars();
    matches!(
        (chars.next(), chars.next(), chars.next()),
        (Some(c), Some('.'), None) if c.is_uppercase()
    )
}

struct Piece<'a> {
    text: &'a str,
    space_after: bool,
}

fn split_chunk<'a>(chunk: &'a str, out: &mut Vec<Piece<'a>>) {
    let mut body = chunk;
    let mut leading = Vec::new();
    while let Some(c) = body.chars().next().filter(|c| LEADING.contains(c)) {
        if body.len() == c.len_utf8() {
            break;
        }
        leading.push(&body[..c.len_utf8()]);
        body = &body[c.len_utf8()..];
    }

    let mut trailing = Vec::new();
    while !is_abbreviation(body) {
        match body.chars().next_back().filter(|c| TRAILING.contains(c)) {
            Some(c) if body.len() > c.len_utf8() => {
                let cut = body.len() - c.len_utf8();
                trailing.push(&body[cut..]);
                body = &body[..cut];
            }
            _ => break,
        }
    }

    out.extend(leading.into_iter().map(|text| Piece {
        text,
        space_after: false,
    }));
    out.push(Piece {
        text: body,
        space_after: false,
    });
    out.extend(trailing.into_iter().rev().map(|text| Piece {
        text,
        space_after: false,
    }));
    if let Some(last) = out.last_mut() {
        last.space_after = true;
    }
}

fn is_trailing_punct(token: &str) -> bool {
    let mut chars = token.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if TRAILING.contains(&c))
}

/// Splits raw text into sentences of tokens.
///
/// Punctuation at the edges of a whitespace-delimited chunk becomes its own
/// token; characters inside a chunk stay put, so numbers like `23,000.00`
/// or `11/9/89` remain whole. A sentence ends after a standalone `.`, `!` or
/// `?` that is followed by whitespace (or the end of text), unless the next
/// token is more trailing punctuation.
pub fn tokenize(text: &str) -> Vec<Vec<String>> {
    let mut pieces = Vec::new();
    for chunk in text.split_whitespace() {
        split_chunk(chunk, &mut pieces);
    }

    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        current.push(piece.text.to_string());
        let breaks = TERMINAL.contains(&piece.text)
            && piece.space_after
            && pieces.get(i + 1).is_none_or(|next| !is_trailing_punct(next.text));
        if breaks {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}

//! Reader for the line-oriented presentation file format:
//!
//! ```text
//! # Z/147
//! gens a b c d
//! rel a^4 b c^4
//! rel b^3 c^-1
//! ```
//!
//! `#` starts a comment, blank lines are ignored, tokens are separated by
//! whitespace, and names match `[A-Za-z][A-Za-z0-9_]*`. Without a `gens`
//! line generators are declared in order of first appearance.

use crate::error::{ParseError, ParseErrorKind};
use crate::presentation::{is_valid_name, Presentation};
use crate::word::{Letter, Word};

/// Largest accepted `|exponent|` in a factor; relators are stored letter by
/// letter, so this bounds memory use.
pub const MAX_EXPONENT: u64 = 10_000_000;

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut declared = false;
    let mut seen_directive = false;
    let mut relators = Vec::new();

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = tokenize(content);
        let Some((col, directive)) = tokens.next() else { continue };
        match directive {
            "gens" => {
                if seen_directive {
                    return Err(err(line_no, col, ParseErrorKind::MisplacedGens));
                }
                for (col, name) in tokens {
                    if !is_valid_name(name) {
                        return Err(err(line_no, col, ParseErrorKind::Syntax(format!("bad generator name `{name}`"))));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(err(line_no, col, ParseErrorKind::DuplicateGenerator(name.to_string())));
                    }
                    names.push(name.to_string());
                }
                declared = true;
            }
            "rel" => {
                let mut word = Word::empty();
                for (col, token) in tokens {
                    let (name, exponent) = parse_factor(token, line_no, col)?;
                    let g = match names.iter().position(|n| n == name) {
                        Some(g) => g,
                        None if declared => {
                            return Err(err(line_no, col, ParseErrorKind::UndeclaredGenerator(name.to_string())))
                        }
                        None => {
                            names.push(name.to_string());
                            names.len() - 1
                        }
                    };
                    let letter = Letter::new(g, if exponent < 0 { -1 } else { 1 });
                    for _ in 0..exponent.unsigned_abs() {
                        word.push(letter);
                    }
                }
                relators.push(word);
            }
            other => {
                return Err(err(
                    line_no,
                    col,
                    ParseErrorKind::Syntax(format!("expected `gens` or `rel`, found `{other}`")),
                ));
            }
        }
        seen_directive = true;
    }
    Ok(Presentation::new(names, relators).expect("parser only builds valid presentations"))
}

/// Whitespace-separated tokens with their 1-based byte columns.
fn tokenize(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let col = offset + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, token))
    })
}

fn parse_factor(token: &str, line: usize, col: usize) -> Result<(&str, i64), ParseError> {
    let (name, exponent) = match token.split_once('^') {
        None => (token, 1),
        Some((name, exp)) => {
            let digits = exp.strip_prefix('-').unwrap_or(exp);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                let c = col + name.len() + 1;
                return Err(err(line, c, ParseErrorKind::Syntax(format!("bad exponent `{exp}`"))));
            }
            let magnitude: u64 = match digits.parse() {
                Ok(m) if m <= MAX_EXPONENT => m,
                _ => return Err(err(line, col + name.len() + 1, ParseErrorKind::ExponentTooLarge(exp.to_string()))),
            };
            if magnitude == 0 {
                return Err(err(line, col + name.len() + 1, ParseErrorKind::ZeroExponent));
            }
            let e = magnitude as i64;
            (name, if exp.starts_with('-') { -e } else { e })
        }
    };
    if !is_valid_name(name) {
        return Err(err(line, col, ParseErrorKind::Syntax(format!("bad factor `{token}`"))));
    }
    Ok((name, exponent))
}

//! Plain-text instance files: one labeled vector per line (`x: 5 5 5 5`),
//! optional `c:` witness line, `#` comments. Any `p/q` entry selects the
//! exact-rational regime for the whole file; any decimal entry selects the
//! float regime; mixing the two is an error.

use crate::scalar::{parse_rational, Rational};
use crate::vector::PositiveVector;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub x: PositiveVector,
    pub y: PositiveVector,
    pub c: Option<PositiveVector>,
    pub exact: bool,
}

struct RawVector {
    line: usize,
    tokens: Vec<(usize, String)>, // (column, token)
}

/// Parses an instance from text. Labels `x` and `y` must appear exactly
/// once; `c` at most once.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut raw: Vec<(String, RawVector)> = Vec::new();
    for (i, full_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match full_line.find('#') {
            Some(p) => &full_line[..p],
            None => full_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(err(line_no, 1, "expected 'label: entries'"));
        };
        let label = content[..colon].trim().to_lowercase();
        if !matches!(label.as_str(), "x" | "y" | "c") {
            return Err(err(
                line_no,
                1,
                format!("unknown label '{label}' (expected x, y, or c)"),
            ));
        }
        if raw.iter().any(|(l, _)| l == &label) {
            return Err(err(line_no, 1, format!("label '{label}' appears twice")));
        }
        let mut tokens = Vec::new();
        let body = &content[colon + 1..];
        let mut col = colon + 2; // 1-based column of the char after ':'
        for piece in body.split(' ') {
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                let offset = piece.len() - piece.trim_start().len();
                tokens.push((col + offset, trimmed.to_string()));
            }
            col += piece.len() + 1;
        }
        if tokens.is_empty() {
            return Err(err(line_no, colon + 2, format!("label '{label}' has no entries")));
        }
        raw.push((
            label,
            RawVector {
                line: line_no,
                tokens,
            },
        ));
    }

    for required in ["x", "y"] {
        if !raw.iter().any(|(l, _)| l == required) {
            return Err(err(1, 1, format!("missing required label '{required}'")));
        }
    }

    // Regime selection: '/' anywhere means exact, '.' anywhere means float.
    let mut exact_at: Option<(usize, usize)> = None;
    let mut float_at: Option<(usize, usize)> = None;
    for (_, v) in &raw {
        for (col, tok) in &v.tokens {
            if tok.contains('/') {
                exact_at.get_or_insert((v.line, *col));
            } else if tok.contains('.') {
                float_at.get_or_insert((v.line, *col));
            }
        }
    }
    if let (Some(_), Some((l, c))) = (exact_at, float_at) {
        return Err(err(
            l,
            c,
            "file mixes exact 'p/q' entries with decimal entries; pick one regime",
        ));
    }
    let exact = float_at.is_none();

    let build = |label: &str| -> Result<Option<PositiveVector>, ParseError> {
        let Some((_, v)) = raw.iter().find(|(l, _)| l == label) else {
            return Ok(None);
        };
        if exact {
            let mut entries: Vec<Rational> = Vec::with_capacity(v.tokens.len());
            for (col, tok) in &v.tokens {
                let r = parse_rational(tok)
                    .ok_or_else(|| err(v.line, *col, format!("cannot parse entry '{tok}'")))?;
                entries.push(r);
            }
            Ok(Some(PositiveVector::Exact(entries)))
        } else {
            let mut entries: Vec<f64> = Vec::with_capacity(v.tokens.len());
            for (col, tok) in &v.tokens {
                let f: f64 = tok
                    .parse()
                    .map_err(|_| err(v.line, *col, format!("cannot parse entry '{tok}'")))?;
                entries.push(f);
            }
            Ok(Some(PositiveVector::Float(entries)))
        }
    };

    let x = build("x")?.unwrap();
    let y = build("y")?.unwrap();
    let c = build("c")?;
    Ok(Instance { x, y, c, exact })
}

/// Builds an instance from inline vector strings (the `--x/--y/--c` flags),
/// reusing the file-format regime rules.
pub fn instance_from_inline(
    x: &str,
    y: &str,
    c: Option<&str>,
) -> Result<Instance, ParseError> {
    let mut text = format!("x: {x}\ny: {y}\n");
    if let Some(c) = c {
        text.push_str(&format!("c: {c}\n"));
    }
    parse_instance(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn parses_exact_file() {
        let inst = parse_instance("# worked example\nx: 5 5 5 5\ny: 2 2 6 10\n").unwrap();
        assert!(inst.exact);
        assert_eq!(
            inst.x,
            PositiveVector::Exact(vec![rat_int(5); 4])
        );
        assert_eq!(
            inst.y,
            PositiveVector::Exact(vec![rat_int(2), rat_int(2), rat_int(6), rat_int(10)])
        );
        assert!(inst.c.is_none());
    }

    #[test]
    fn fractions_select_exact_regime() {
        let inst = parse_instance("x: 1/2 1/2\ny: 3/4 1/4\n").unwrap();
        assert!(inst.exact);
        assert_eq!(
            inst.x,
            PositiveVector::Exact(vec![rat(1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn decimals_select_float_regime() {
        let inst = parse_instance("x: 0.4 0.4 0.1 0.1\ny: 0.5 0.25 0.25 0.0\nc: 0.6 0.4\n")
            .unwrap();
        assert!(!inst.exact);
        assert_eq!(inst.c, Some(PositiveVector::Float(vec![0.6, 0.4])));
    }

    #[test]
    fn mixed_regimes_rejected_with_position() {
        let e = parse_instance("x: 1/2 1/2\ny: 0.75 0.25\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.column >= 4);
    }

    #[test]
    fn duplicate_and_missing_labels() {
        assert!(parse_instance("x: 1 2\nx: 2 1\ny: 1 2\n")
            .unwrap_err()
            .message
            .contains("twice"));
        assert!(parse_instance("x: 1 2\n")
            .unwrap_err()
            .message
            .contains("missing required label 'y'"));
    }

    #[test]
    fn bad_entry_reports_line_and_column() {
        let e = parse_instance("x: 5 5\ny: 2 oops\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 6);
    }

    #[test]
    fn inline_matches_file_format() {
        let a = instance_from_inline("5 5 5 5", "2 2 6 10", None).unwrap();
        let b = parse_instance("x: 5 5 5 5\ny: 2 2 6 10\n").unwrap();
        assert_eq!(a, b);
    }
}

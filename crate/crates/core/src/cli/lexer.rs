//! Tokens of the source format, with line/column positions.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(usize),
    /// Punctuation and operators: `( ) { } [ ] , ; : . / | = -> => == :=`.
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

const SYMS: [&str; 17] = ["->", "=>", "==", ":=", "(", ")", "{", "}", "[", "]", ",", ";", ":", ".", "/", "|", "="];

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `#` starts a comment running to the end of the line.
/// A `-` continues an identifier when followed by an identifier character.
pub fn lex(src: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(SyntaxError { span, message: "identifiers may not start with a digit".into() });
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| SyntaxError { span, message: format!("number `{text}` is too large") })?;
            out.push((Tok::Int(n), span));
            col += i - start;
            continue;
        }
        if ident_char(c) {
            while i < chars.len() {
                let hyphen = chars[i] == '-' && chars.get(i + 1).is_some_and(|&d| ident_char(d));
                if ident_char(chars[i]) || hyphen {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            col += i - start;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push((Tok::Sym(s), span));
                i += s.len();
                col += s.len();
            }
            None => return Err(SyntaxError { span, message: format!("unexpected character `{c}`") }),
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn arrows_and_hyphenated_names() {
        assert_eq!(
            toks("x->y vert-left-unit(r)"),
            vec![
                Tok::Ident("x".into()),
                Tok::Sym("->"),
                Tok::Ident("y".into()),
                Tok::Ident("vert-left-unit".into()),
                Tok::Sym("("),
                Tok::Ident("r".into()),
                Tok::Sym(")"),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let ts = lex("# note\n  term").unwrap();
        assert_eq!(ts[0].1, Span { line: 2, col: 3 });
        assert!(lex("a $ b").is_err());
    }
}

//! Line-oriented tokenizer shared by the system and control formats.

use super::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Prime,
    Eq,
    PlusEq,
    DotDot,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("number {s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Colon => "':'".into(),
            Tok::Prime => "'''".into(),
            Tok::Eq => "'='".into(),
            Tok::PlusEq => "'+='".into(),
            Tok::DotDot => "'..'".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    /// 1-based column.
    pub col: usize,
}

/// Tokenizes one line; `#` starts a comment.
pub(crate) fn tokenize(line: &str, lineno: usize) -> Result<Vec<Spanned>, DslError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            if chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                return Err(DslError::new(lineno, col, format!("decimal literal {text} is not allowed"))
                    .with_hint(decimal_hint(&text).unwrap_or_else(|| "write it as a fraction, e.g. 1/2".into())));
            }
            out.push(Spanned { tok: Tok::Int(digits), col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            continue;
        }
        let (tok, len) = match (c, chars.get(i + 1)) {
            ('+', Some('=')) => (Tok::PlusEq, 2),
            ('.', Some('.')) => (Tok::DotDot, 2),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('^', _) => (Tok::Caret, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (':', _) => (Tok::Colon, 1),
            ('\'', _) => (Tok::Prime, 1),
            ('=', _) => (Tok::Eq, 1),
            _ => return Err(DslError::new(lineno, col, format!("unexpected character '{c}'"))),
        };
        out.push(Spanned { tok, col });
        i += len;
    }
    Ok(out)
}

/// `0.25` -> "write 1/4".
fn decimal_hint(text: &str) -> Option<String> {
    let (int_part, frac) = text.split_once('.')?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let num: num_bigint::BigInt = format!("{int_part}{frac}").parse().ok()?;
    let q = crate::rational::Q::new(num, den);
    Some(format!("rational literals only: write {}", crate::rational::fmt(&q)))
}

use super::parser::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Plus,
    Bang,
    Colon,
    Arrow,
    And,
    Or,
    Falsum,
    Not,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Falsum => "`_|_`".into(),
            Tok::Not => "`~`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// A token with its byte offset in the input.
#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let single = |tok| Token { tok, pos };
        match ch {
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            '.' | '·' => out.push(single(Tok::Dot)),
            '+' => out.push(single(Tok::Plus)),
            '!' => out.push(single(Tok::Bang)),
            ':' => out.push(single(Tok::Colon)),
            '~' | '¬' => out.push(single(Tok::Not)),
            '→' => out.push(single(Tok::Arrow)),
            '∧' => out.push(single(Tok::And)),
            '∨' => out.push(single(Tok::Or)),
            '⊥' => out.push(single(Tok::Falsum)),
            '-' | '/' | '\\' | '_' => {
                let rest = &input[pos..];
                let (tok, len) = if rest.starts_with("->") {
                    (Tok::Arrow, 2)
                } else if rest.starts_with("/\\") {
                    (Tok::And, 2)
                } else if rest.starts_with("\\/") {
                    (Tok::Or, 2)
                } else if rest.starts_with("_|_") {
                    (Tok::Falsum, 3)
                } else {
                    return Err(ParseError::new(pos, format!("unexpected character `{ch}`")));
                };
                out.push(single(tok));
                for _ in 0..len {
                    chars.next();
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = pos;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' && !input[i..].starts_with("_|_") {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Ident(input[pos..end].to_string()), pos });
                continue;
            }
            c => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
        }
        chars.next();
    }
    out.push(Token { tok: Tok::End, pos: input.len() });
    Ok(out)
}

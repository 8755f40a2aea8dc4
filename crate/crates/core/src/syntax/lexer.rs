use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Int(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Amp,
    /// `|o|`, object-level disjunction.
    OrO,
    /// `|`, clause-level disjunction.
    Bar,
    Tilde,
    Caret,
    Colon,
    Assign,
    Dot,
    Gt,
    Plus,
    Minus,
    Star,
    Semi,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Str(s) => return write!(f, "\"{s}\""),
            Tok::Int(n) => return write!(f, "{n}"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Amp => "&",
            Tok::OrO => "|o|",
            Tok::Bar => "|",
            Tok::Tilde => "~",
            Tok::Caret => "^",
            Tok::Colon => ":",
            Tok::Assign => ":=",
            Tok::Dot => ".",
            Tok::Gt => ">",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Semi => ";",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits `text` into tokens; `%` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (lno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: lno + 1,
                col: i + 1,
            };
            if c == '%' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let (tok, len) = match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '[' => (Tok::LBracket, 1),
                ']' => (Tok::RBracket, 1),
                ',' => (Tok::Comma, 1),
                '=' => (Tok::Eq, 1),
                '&' => (Tok::Amp, 1),
                '~' => (Tok::Tilde, 1),
                '^' => (Tok::Caret, 1),
                '.' => (Tok::Dot, 1),
                '>' => (Tok::Gt, 1),
                '+' => (Tok::Plus, 1),
                '-' => (Tok::Minus, 1),
                '*' => (Tok::Star, 1),
                ';' => (Tok::Semi, 1),
                ':' if chars.get(i + 1) == Some(&'=') => (Tok::Assign, 2),
                ':' => (Tok::Colon, 1),
                '|' if chars.get(i + 1) == Some(&'o') && chars.get(i + 2) == Some(&'|') => {
                    (Tok::OrO, 3)
                }
                '|' => (Tok::Bar, 1),
                '"' => {
                    let end = chars[i + 1..]
                        .iter()
                        .position(|&c| c == '"')
                        .ok_or_else(|| ParseError::at(pos, "unterminated string"))?;
                    let s: String = chars[i + 1..i + 1 + end].iter().collect();
                    (Tok::Str(s), end + 2)
                }
                c if c.is_ascii_digit() => {
                    let len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
                    let s: String = chars[i..i + len].iter().collect();
                    let n = s
                        .parse()
                        .map_err(|_| ParseError::at(pos, format!("bad number `{s}`")))?;
                    (Tok::Int(n), len)
                }
                c if c.is_alphabetic() || c == '_' => {
                    let len = chars[i..]
                        .iter()
                        .take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'')
                        .count();
                    (Tok::Ident(chars[i..i + len].iter().collect()), len)
                }
                other => {
                    return Err(ParseError::at(
                        pos,
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            out.push(Spanned { tok, pos });
            i += len;
        }
    }
    Ok(out)
}

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Dot,
    LeftContract,
    RightContract,
    LParen,
    RParen,
    Comma,
    Equals,
}

/// A token and its 1-based starting column.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub col: usize,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Number(v) => format!("number {v}"),
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::LeftContract => "`<|`".into(),
            TokenKind::RightContract => "`|>`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Equals => "`=`".into(),
        }
    }
}

/// Splits a line into tokens. Numbers are plain decimals (`12`, `0.25`); a
/// `.` belongs to a number only when a digit follows it.
pub fn tokenize(input: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            '=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, col });
            i += 1;
            continue;
        }
        match c {
            '<' if chars.get(i + 1) == Some(&'|') => {
                tokens.push(Token {
                    kind: TokenKind::LeftContract,
                    col,
                });
                i += 2;
            }
            '|' if chars.get(i + 1) == Some(&'>') => {
                tokens.push(Token {
                    kind: TokenKind::RightContract,
                    col,
                });
                i += 2;
            }
            '.' if !chars.get(i + 1).is_some_and(char::is_ascii_digit) => {
                tokens.push(Token {
                    kind: TokenKind::Dot,
                    col,
                });
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| CliError::parse(col, format!("malformed number `{text}`")))?;
                if !value.is_finite() {
                    return Err(CliError::parse(
                        col,
                        format!("number `{text}` is out of range"),
                    ));
                }
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(chars[start..i].iter().collect()),
                    col,
                });
            }
            other => {
                return Err(CliError::parse(
                    col,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn operators_and_columns() {
        let t = tokenize("a <| (e1|>e2)").unwrap();
        let cols: Vec<usize> = t.iter().map(|t| t.col).collect();
        assert_eq!(cols, vec![1, 3, 6, 7, 9, 11, 13]);
        assert_eq!(t[1].kind, TokenKind::LeftContract);
        assert_eq!(t[4].kind, TokenKind::RightContract);
    }

    #[test]
    fn numbers_and_dots() {
        assert_eq!(kinds("1.5"), vec![TokenKind::Number(1.5)]);
        assert_eq!(
            kinds("2.e1"),
            vec![
                TokenKind::Number(2.0),
                TokenKind::Dot,
                TokenKind::Ident("e1".into())
            ]
        );
        assert_eq!(
            kinds("2e1"),
            vec![TokenKind::Number(2.0), TokenKind::Ident("e1".into())]
        );
        assert_eq!(kinds(".5"), vec![TokenKind::Number(0.5)]);
    }

    #[test]
    fn lexical_errors() {
        let err = tokenize("e1 $ e2").unwrap_err();
        assert_eq!(err.col(), 4);
        assert!(tokenize("e1 | e2").is_err());
        assert!(tokenize(&"9".repeat(400)).is_err());
    }
}

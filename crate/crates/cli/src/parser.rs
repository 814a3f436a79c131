//! Recursive-descent parser. Precedence, loosest first:
//!
//! ```text
//! + -            additive
//! . <| |>        scalar product, left and right contraction
//! ^              exterior product
//! *              geometric product
//! - +            unary
//! ```
//!
//! Every binary level is left-associative. A number directly followed by a
//! blade symbol (`2 e13`, `0.5 I`) is a single coefficient term, so rendered
//! results parse back; any other juxtaposition is an error.

use eucliff::{canonical_reorder, BladeMask};

use crate::lexer::{tokenize, Token, TokenKind};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Rev,
    Hat,
    Bar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Wedge,
    Geometric,
    Scalar,
    LeftContract,
    RightContract,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Wedge => "^",
            BinaryOp::Geometric => "*",
            BinaryOp::Scalar => ".",
            BinaryOp::LeftContract => "<|",
            BinaryOp::RightContract => "|>",
        }
    }
}

/// Expression tree. `col` is the 1-based column of the node's operator or
/// symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number {
        value: f64,
        col: usize,
    },
    /// `sign · e_mask`; `sign` is 0 for symbols with a repeated index.
    Blade {
        mask: BladeMask,
        sign: f64,
        col: usize,
    },
    Pseudoscalar {
        col: usize,
    },
    Var {
        name: String,
        col: usize,
    },
    Unary {
        op: UnaryOp,
        arg: Box<Expr>,
        col: usize,
    },
    Grade {
        arg: Box<Expr>,
        k: usize,
        col: usize,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        col: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Assign { name: String, value: Expr },
    Eval(Expr),
}

const FUNCTIONS: [&str; 5] = ["rev", "hat", "bar", "neg", "grade"];

/// Indices named by a blade symbol: `e132` → [1, 3, 2], `e1_10` → [1, 10].
/// `None` if `name` is not of blade form.
pub fn blade_indices(name: &str) -> Option<Vec<usize>> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() {
        return None;
    }
    if digits.contains('_') {
        digits
            .split('_')
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    None
                } else {
                    part.parse().ok()
                }
            })
            .collect()
    } else if digits.bytes().all(|b| b.is_ascii_digit()) {
        Some(digits.bytes().map(|b| (b - b'0') as usize).collect())
    } else {
        None
    }
}

/// Names that cannot be bound to a value.
pub fn is_reserved(name: &str) -> bool {
    name == "I" || FUNCTIONS.contains(&name) || blade_indices(name).is_some()
}

/// Parses one line. `dim` bounds blade indices; `is_bound` tells which
/// variable names exist.
pub fn parse(
    input: &str,
    dim: usize,
    is_bound: &dyn Fn(&str) -> bool,
) -> Result<Statement, CliError> {
    let tokens = tokenize(input)?;
    let end_col = input.chars().count() + 1;
    if let [Token {
        kind: TokenKind::Ident(name),
        col,
    }, Token {
        kind: TokenKind::Equals,
        ..
    }, ..] = tokens.as_slice()
    {
        if is_reserved(name) {
            return Err(CliError::parse(
                *col,
                format!("cannot assign to reserved name `{name}`"),
            ));
        }
        let mut p = Parser {
            tokens: &tokens[2..],
            pos: 0,
            dim,
            is_bound,
            end_col,
        };
        let value = p.finish()?;
        return Ok(Statement::Assign {
            name: name.clone(),
            value,
        });
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        dim,
        is_bound,
        end_col,
    };
    Ok(Statement::Eval(p.finish()?))
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    dim: usize,
    is_bound: &'a dyn Fn(&str) -> bool,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn finish(&mut self) -> Result<Expr, CliError> {
        if self.tokens.is_empty() {
            return Err(CliError::parse(self.end_col, "expected an expression"));
        }
        let expr = self.additive()?;
        match self.peek() {
            None => Ok(expr),
            Some(Token {
                kind: TokenKind::RParen,
                col,
            }) => Err(CliError::parse(*col, "unbalanced parenthesis")),
            Some(t) => Err(CliError::parse(
                t.col,
                format!("unexpected {}", t.kind.describe()),
            )),
        }
    }

    fn level(
        &mut self,
        ops: &[(TokenKind, BinaryOp)],
        operand: fn(&mut Self) -> Result<Expr, CliError>,
    ) -> Result<Expr, CliError> {
        let mut lhs = operand(self)?;
        while let Some(t) = self.peek() {
            let Some(&(_, op)) = ops.iter().find(|(k, _)| *k == t.kind) else {
                break;
            };
            let col = t.col;
            self.pos += 1;
            let rhs = operand(self)?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                col,
            };
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Expr, CliError> {
        self.level(
            &[
                (TokenKind::Plus, BinaryOp::Add),
                (TokenKind::Minus, BinaryOp::Sub),
            ],
            Self::contraction,
        )
    }

    fn contraction(&mut self) -> Result<Expr, CliError> {
        self.level(
            &[
                (TokenKind::Dot, BinaryOp::Scalar),
                (TokenKind::LeftContract, BinaryOp::LeftContract),
                (TokenKind::RightContract, BinaryOp::RightContract),
            ],
            Self::wedge,
        )
    }

    fn wedge(&mut self) -> Result<Expr, CliError> {
        self.level(&[(TokenKind::Caret, BinaryOp::Wedge)], Self::product)
    }

    fn product(&mut self) -> Result<Expr, CliError> {
        self.level(&[(TokenKind::Star, BinaryOp::Geometric)], Self::unary)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Minus,
                col,
            }) => {
                let col = *col;
                self.pos += 1;
                let arg = self.unary()?;
                Ok(Expr::Unary {
                    op: UnaryOp::Neg,
                    arg: Box::new(arg),
                    col,
                })
            }
            Some(Token {
                kind: TokenKind::Plus,
                ..
            }) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        let Some(token) = self.next() else {
            return Err(CliError::parse(self.end_col, "unexpected end of input"));
        };
        let col = token.col;
        match token.kind {
            TokenKind::Number(value) => {
                let number = Expr::Number { value, col };
                if let Some(Token {
                    kind: TokenKind::Ident(name),
                    col: bcol,
                }) = self.peek()
                {
                    if name == "I" || blade_indices(name).is_some() {
                        let (name, bcol) = (name.clone(), *bcol);
                        self.pos += 1;
                        let blade = self.symbol(&name, bcol)?;
                        return Ok(Expr::Binary {
                            op: BinaryOp::Geometric,
                            lhs: Box::new(number),
                            rhs: Box::new(blade),
                            col: bcol,
                        });
                    }
                }
                Ok(number)
            }
            TokenKind::Ident(name) => {
                if FUNCTIONS.contains(&name.as_str()) {
                    return self.call(&name, col);
                }
                self.symbol(&name, col)
            }
            TokenKind::LParen => {
                let inner = self.additive()?;
                match self.next() {
                    Some(Token {
                        kind: TokenKind::RParen,
                        ..
                    }) => Ok(inner),
                    None => Err(CliError::parse(col, "unbalanced parenthesis")),
                    Some(t) => Err(CliError::parse(
                        t.col,
                        format!("expected `)`, found {}", t.kind.describe()),
                    )),
                }
            }
            TokenKind::RParen => Err(CliError::parse(col, "unbalanced parenthesis")),
            other => Err(CliError::parse(
                col,
                format!("unexpected {}", other.describe()),
            )),
        }
    }

    fn symbol(&mut self, name: &str, col: usize) -> Result<Expr, CliError> {
        if name == "I" {
            return Ok(Expr::Pseudoscalar { col });
        }
        if let Some(indices) = blade_indices(name) {
            if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > self.dim) {
                return Err(CliError::parse(
                    col,
                    format!("blade index {bad} in `{name}` is outside 1..={}", self.dim),
                ));
            }
            let (mask, sign) = canonical_reorder(&indices, self.dim)
                .map_err(|e| CliError::parse(col, e.to_string()))?;
            return Ok(Expr::Blade {
                mask,
                sign: f64::from(sign),
                col,
            });
        }
        if (self.is_bound)(name) {
            return Ok(Expr::Var {
                name: name.to_string(),
                col,
            });
        }
        Err(CliError::parse(col, format!("unknown symbol `{name}`")))
    }

    fn call(&mut self, name: &str, col: usize) -> Result<Expr, CliError> {
        match self.next() {
            Some(Token {
                kind: TokenKind::LParen,
                ..
            }) => {}
            Some(t) => {
                return Err(CliError::parse(
                    t.col,
                    format!("expected `(` after `{name}`"),
                ))
            }
            None => {
                return Err(CliError::parse(
                    self.end_col,
                    format!("expected `(` after `{name}`"),
                ))
            }
        }
        let arg = self.additive()?;
        let k = if name == "grade" {
            match self.next() {
                Some(Token {
                    kind: TokenKind::Comma,
                    ..
                }) => {}
                Some(t) => return Err(CliError::parse(t.col, "expected `,` and a grade")),
                None => return Err(CliError::parse(col, "unbalanced parenthesis")),
            }
            match self.next() {
                Some(Token {
                    kind: TokenKind::Number(v),
                    col: kcol,
                }) => {
                    if v.fract() != 0.0 || v as usize > self.dim {
                        return Err(CliError::parse(
                            kcol,
                            format!("grade must be an integer in 0..={}", self.dim),
                        ));
                    }
                    Some(v as usize)
                }
                Some(t) => return Err(CliError::parse(t.col, "grade must be an integer literal")),
                None => return Err(CliError::parse(col, "unbalanced parenthesis")),
            }
        } else {
            None
        };
        match self.next() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => {}
            Some(t) => {
                return Err(CliError::parse(
                    t.col,
                    format!("expected `)`, found {}", t.kind.describe()),
                ))
            }
            None => return Err(CliError::parse(col, "unbalanced parenthesis")),
        }
        let arg = Box::new(arg);
        Ok(match (name, k) {
            ("grade", Some(k)) => Expr::Grade { arg, k, col },
            ("rev", _) => Expr::Unary {
                op: UnaryOp::Rev,
                arg,
                col,
            },
            ("hat", _) => Expr::Unary {
                op: UnaryOp::Hat,
                arg,
                col,
            },
            ("bar", _) => Expr::Unary {
                op: UnaryOp::Bar,
                arg,
                col,
            },
            _ => Expr::Unary {
                op: UnaryOp::Neg,
                arg,
                col,
            },
        })
    }
}

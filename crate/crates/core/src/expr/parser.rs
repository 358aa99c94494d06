use std::fmt;

use super::lexer::{tokenize, Token, TokenKind};
use super::ParseError;
use crate::numerics::ComplexScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Functions callable from expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Gamma,
    Sin,
    Cos,
    Exp,
    Log,
    Cosh,
    Sinh,
    Tanh,
    Sqrt,
    Abs,
    Re,
    Im,
    Zeta,
    Eta,
    L,
    Hermite,
    Bell,
}

impl Builtin {
    pub const ALL: [Builtin; 17] = [
        Builtin::Gamma,
        Builtin::Sin,
        Builtin::Cos,
        Builtin::Exp,
        Builtin::Log,
        Builtin::Cosh,
        Builtin::Sinh,
        Builtin::Tanh,
        Builtin::Sqrt,
        Builtin::Abs,
        Builtin::Re,
        Builtin::Im,
        Builtin::Zeta,
        Builtin::Eta,
        Builtin::L,
        Builtin::Hermite,
        Builtin::Bell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Gamma => "gamma",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
            Builtin::Exp => "exp",
            Builtin::Log => "log",
            Builtin::Cosh => "cosh",
            Builtin::Sinh => "sinh",
            Builtin::Tanh => "tanh",
            Builtin::Sqrt => "sqrt",
            Builtin::Abs => "abs",
            Builtin::Re => "re",
            Builtin::Im => "im",
            Builtin::Zeta => "zeta",
            Builtin::Eta => "eta",
            Builtin::L => "L",
            Builtin::Hermite => "hermite",
            Builtin::Bell => "bell",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Zeta | Builtin::Eta | Builtin::Hermite | Builtin::Bell => 2,
            _ => 1,
        }
    }

    pub fn lookup(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }
}

/// Parsed expression. Equality compares structure only, not source
/// positions.
#[derive(Debug, Clone)]
pub enum Expr {
    Literal {
        value: ComplexScalar,
        position: usize,
    },
    Variable {
        name: String,
        position: usize,
    },
    Neg {
        operand: Box<Expr>,
        position: usize,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        position: usize,
    },
    Call {
        func: Builtin,
        args: Vec<Expr>,
        position: usize,
    },
}

impl Expr {
    pub fn position(&self) -> usize {
        match self {
            Expr::Literal { position, .. }
            | Expr::Variable { position, .. }
            | Expr::Neg { position, .. }
            | Expr::Binary { position, .. }
            | Expr::Call { position, .. } => *position,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Literal { .. } | Expr::Variable { .. } => 1,
            Expr::Neg { operand, .. } => 1 + operand.depth(),
            Expr::Binary { lhs, rhs, .. } => 1 + lhs.depth().max(rhs.depth()),
            Expr::Call { args, .. } => 1 + args.iter().map(Expr::depth).max().unwrap_or(0),
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expr::Literal { value: a, .. }, Expr::Literal { value: b, .. }) => a == b,
            (Expr::Variable { name: a, .. }, Expr::Variable { name: b, .. }) => a == b,
            (Expr::Neg { operand: a, .. }, Expr::Neg { operand: b, .. }) => a == b,
            (
                Expr::Binary { op: o1, lhs: l1, rhs: r1, .. },
                Expr::Binary { op: o2, lhs: l2, rhs: r2, .. },
            ) => o1 == o2 && l1 == l2 && r1 == r2,
            (Expr::Call { func: f1, args: a1, .. }, Expr::Call { func: f2, args: a2, .. }) => {
                f1 == f2 && a1 == a2
            }
            _ => false,
        }
    }
}

/// Fully parenthesised form, which parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal { value, .. } => {
                if value.im == 0.0 {
                    write!(f, "{:?}", value.re)
                } else if value.re == 0.0 {
                    write!(f, "{:?}i", value.im)
                } else {
                    write!(f, "({:?}+{:?}i)", value.re, value.im)
                }
            }
            Expr::Variable { name, .. } => f.write_str(name),
            Expr::Neg { operand, .. } => write!(f, "(-{operand})"),
            Expr::Binary { op, lhs, rhs, .. } => write!(f, "({lhs}{}{rhs})", op.symbol()),
            Expr::Call { func, args, .. } => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t)
            }
            Some(t) => Err(ParseError::new(format!("expected {what}, found `{}`", t.text), t.position)),
            None => Err(ParseError::new(format!("expected {what}, found end of input"), self.end)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                position: t.position,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                position: t.position,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(t) = self.peek().filter(|t| t.kind == TokenKind::Minus) {
            self.pos += 1;
            let operand = self.unary()?;
            return Ok(Expr::Neg {
                operand: Box::new(operand),
                position: t.position,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Some(t) = self.peek().filter(|t| t.kind == TokenKind::Caret) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Binary {
                op: BinOp::Pow,
                lhs: Box::new(base),
                rhs: Box::new(exponent),
                position: t.position,
            });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let Some(t) = self.peek() else {
            return Err(ParseError::new("unexpected end of input", self.end));
        };
        match t.kind {
            TokenKind::Number => {
                self.pos += 1;
                let (digits, imaginary) = match t.text.strip_suffix('i') {
                    Some(d) => (d, true),
                    None => (t.text.as_str(), false),
                };
                let v: f64 = digits
                    .parse()
                    .map_err(|_| ParseError::new(format!("malformed number `{}`", t.text), t.position))?;
                let value = if imaginary {
                    ComplexScalar::new(0.0, v)
                } else {
                    ComplexScalar::new(v, 0.0)
                };
                Ok(Expr::Literal {
                    value,
                    position: t.position,
                })
            }
            TokenKind::Identifier => {
                self.pos += 1;
                if self.peek_kind() != Some(TokenKind::LParen) {
                    return Ok(Expr::Variable {
                        name: t.text.clone(),
                        position: t.position,
                    });
                }
                let func = Builtin::lookup(&t.text)
                    .ok_or_else(|| ParseError::new(format!("unknown function `{}`", t.text), t.position))?;
                self.pos += 1;
                let mut args = vec![self.expr()?];
                while self.peek_kind() == Some(TokenKind::Comma) {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(TokenKind::RParen, "`)` or `,`")?;
                if args.len() != func.arity() {
                    return Err(ParseError::new(
                        format!(
                            "`{}` takes {} argument(s), got {}",
                            func.name(),
                            func.arity(),
                            args.len()
                        ),
                        t.position,
                    ));
                }
                Ok(Expr::Call {
                    func,
                    args,
                    position: t.position,
                })
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(ParseError::new(format!("unexpected `{}`", t.text), t.position)),
        }
    }
}

/// Parses a token stream. `source_len` is reported as the position of
/// errors at end of input; when unknown, the end of the last token is used.
pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    let end = tokens
        .last()
        .map_or(0, |t| t.position + t.text.chars().count());
    parse_tokens(tokens, end)
}

fn parse_tokens(tokens: &[Token], end: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(format!("unexpected `{}`", t.text), t.position));
    }
    let _ = p.here();
    Ok(e)
}

/// Tokenizes and parses `source`.
pub fn parse_str(source: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(source)?;
    parse_tokens(&tokens, source.chars().count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Expr {
        parse_str(src).unwrap_or_else(|e| panic!("{src}: {e}"))
    }

    fn shape(src: &str) -> String {
        p(src).to_string()
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(p("2+3*s"), p("2+(3*s)"));
        assert_eq!(shape("-s^2"), "(-(s^2.0))");
        assert_ne!(p("-s^2"), p("(-s)^2"));
    }

    #[test]
    fn all_operator_pairs() {
        // For `a o1 b o2 c`, the expected grouping from the precedence table.
        let level = |o: char| match o {
            '+' | '-' => 1,
            '*' | '/' => 2,
            '^' => 4,
            _ => unreachable!(),
        };
        let ops = ['+', '-', '*', '/', '^'];
        for o1 in ops {
            for o2 in ops {
                let src = format!("a{o1}b{o2}c");
                let right_first = level(o2) > level(o1) || (o1 == '^' && o2 == '^');
                let want = if right_first {
                    format!("(a{o1}(b{o2}c))")
                } else {
                    format!("((a{o1}b){o2}c)")
                };
                assert_eq!(shape(&src), want, "{src}");
            }
        }
        // unary minus sits between ^ and * /
        assert_eq!(shape("-a*b"), "((-a)*b)");
        assert_eq!(shape("-a+b"), "((-a)+b)");
        assert_eq!(shape("-a^b"), "(-(a^b))");
        assert_eq!(shape("a^-b"), "(a^(-b))");
        assert_eq!(shape("a*-b"), "(a*(-b))");
        assert_eq!(shape("a--b"), "(a-(-b))");
        assert_eq!(shape("--a"), "(-(-a))");
        assert_eq!(shape("a^b^c^d"), "(a^(b^(c^d)))");
    }

    #[test]
    fn calls_and_literals() {
        assert_eq!(shape("zeta(s, 1)"), "zeta(s, 1.0)");
        assert_eq!(shape("1+2.5i"), "(1.0+2.5i)");
        assert_eq!(shape("gamma((s))"), "gamma(s)");
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_str("(1+").unwrap_err().position, 3);
        assert_eq!(parse_str("1/(1+x").unwrap_err().position, 6);
        assert_eq!(parse_str("2 @ 3").unwrap_err().position, 2);
        assert_eq!(parse_str("1 2").unwrap_err().position, 2);
        assert_eq!(parse_str("gamma(1, 2)").unwrap_err().position, 0);
        assert_eq!(parse_str("x + nosuch(1)").unwrap_err().position, 4);
        assert_eq!(parse_str("1 + )").unwrap_err().position, 4);
        assert_eq!(parse_str("").unwrap_err().position, 0);
        assert_eq!(parse_str("zeta(s,)").unwrap_err().position, 7);
        assert_eq!(parse_str("a)").unwrap_err().position, 1);
    }

    #[test]
    fn parse_from_tokens() {
        let toks = tokenize("s + 1").unwrap();
        assert_eq!(parse(&toks).unwrap(), p("s+1"));
        let toks = tokenize("(s + 1").unwrap();
        assert_eq!(parse(&toks).unwrap_err().position, 6);
    }
}

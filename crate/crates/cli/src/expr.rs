//! Recursive-descent evaluator for p-adic expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | '(' expr ')' | name '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-5^2` is `-(5^2)`.

use std::sync::Arc;

use num_bigint::BigInt;
use padic::{
    add, div, exp, from_integer, from_rational, log, mul, neg, pow_int, sqrt, sub, teichmuller,
    PadicContext, PadicError, PadicNumber, Valuation,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, PadicError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((i, Token::Num(s.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            out.push((i, Token::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            chars.next();
        } else {
            return Err(syntax(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn syntax(position: usize, message: impl Into<String>) -> PadicError {
    PadicError::Syntax {
        position,
        message: message.into(),
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<PadicContext>,
}

/// Evaluation failures keep syntax and domain errors apart so the CLI can map
/// them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    Syntax(PadicError),
    Domain(PadicError),
}

impl EvalError {
    pub fn inner(&self) -> &PadicError {
        match self {
            EvalError::Syntax(e) | EvalError::Domain(e) => e,
        }
    }
}

type EvalResult<T> = Result<T, EvalError>;

fn domain(e: PadicError) -> EvalError {
    EvalError::Domain(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: char) -> EvalResult<()> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(EvalError::Syntax(syntax(
                self.offset(),
                format!("expected `{op}`"),
            )))
        }
    }

    fn expr(&mut self) -> EvalResult<PadicNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = add(&acc, &self.term()?).map_err(domain)?;
            } else if self.eat_op('-') {
                acc = sub(&acc, &self.term()?).map_err(domain)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> EvalResult<PadicNumber> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = mul(&acc, &self.unary()?).map_err(domain)?;
            } else if self.eat_op('/') {
                acc = div(&acc, &self.unary()?).map_err(domain)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> EvalResult<PadicNumber> {
        if self.eat_op('-') {
            return Ok(neg(&self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> EvalResult<PadicNumber> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let negative = self.eat_op('-');
        let at = self.offset();
        let Some(Token::Num(n)) = self.peek().cloned() else {
            return Err(EvalError::Syntax(syntax(
                at,
                "expected an integer exponent",
            )));
        };
        self.pos += 1;
        let mut e =
            i64::try_from(n).map_err(|_| EvalError::Syntax(syntax(at, "exponent out of range")))?;
        if negative {
            e = -e;
        }
        pow_int(&base, e).map_err(domain)
    }

    fn atom(&mut self) -> EvalResult<PadicNumber> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(from_integer(&n, self.ctx))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.expect_op('(')?;
                let arg = self.expr()?;
                self.expect_op(')')?;
                self.call(&name, at, &arg)
            }
            Some(tok) => Err(EvalError::Syntax(syntax(at, format!("unexpected {tok:?}")))),
            None => Err(EvalError::Syntax(syntax(at, "unexpected end of input"))),
        }
    }

    fn call(&self, name: &str, at: usize, x: &PadicNumber) -> EvalResult<PadicNumber> {
        let ctx = self.ctx;
        match name {
            "sqrt" => sqrt(x).map_err(domain),
            "exp" => exp(x).map_err(domain),
            "log" => log(x).map_err(domain),
            "teich" => teichmuller(x).map_err(domain),
            "val" => match x.valuation() {
                Valuation::Finite(v) => Ok(from_integer(&BigInt::from(v), ctx)),
                Valuation::Infinite => Err(domain(PadicError::OutsideDomain(
                    "valuation of zero is infinite",
                ))),
            },
            "absval" => Ok(from_rational(&x.abs_p(), ctx)),
            other => Err(EvalError::Syntax(syntax(
                at,
                format!("unknown function `{other}`"),
            ))),
        }
    }
}

pub fn evaluate(src: &str, ctx: &Arc<PadicContext>) -> EvalResult<PadicNumber> {
    let tokens = tokenize(src).map_err(EvalError::Syntax)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: src.len(),
        ctx,
    };
    if parser.peek().is_none() {
        return Err(EvalError::Syntax(syntax(0, "empty expression")));
    }
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return Err(EvalError::Syntax(syntax(parser.offset(), "trailing input")));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic::{make_context, parse, PrintMode};

    fn ctx(p: u64, n: u32) -> Arc<PadicContext> {
        make_context(p, n, PrintMode::Series).unwrap()
    }

    #[test]
    fn precedence() {
        let c = ctx(7, 20);
        let v = |s: &str| evaluate(s, &c).unwrap();
        assert_eq!(v("1 + 2 * 3"), v("7"));
        assert_eq!(v("-2^2"), v("0 - 4"));
        assert_eq!(v("(1 + 2) * 3"), v("9"));
        assert_eq!(v("2^-1 * 2"), v("1"));
        assert_eq!(v("8 / 4 / 2"), v("1"));
        assert_eq!(v("val(49/3)"), v("2"));
        assert_eq!(v("absval(49)"), v("1/49"));
        assert_eq!(v("teich(3)^7"), v("teich(3)"));
    }

    #[test]
    fn series_literals_evaluate_like_parse() {
        let c = ctx(3, 20);
        assert_eq!(
            evaluate("1*3^-2 + 2*3^-1", &c).unwrap(),
            parse("7/9", &c).unwrap()
        );
    }

    #[test]
    fn errors_are_classified() {
        let c = ctx(5, 20);
        assert!(matches!(
            evaluate("sqrt(2)", &c),
            Err(EvalError::Domain(PadicError::NotASquare(_)))
        ));
        assert!(matches!(
            evaluate("1/0", &c),
            Err(EvalError::Domain(PadicError::DivisionByZero))
        ));
        assert!(matches!(evaluate("val(0)", &c), Err(EvalError::Domain(_))));
        assert!(matches!(evaluate("(1 + 2", &c), Err(EvalError::Syntax(_))));
        assert!(matches!(evaluate("foo(1)", &c), Err(EvalError::Syntax(_))));
        assert!(matches!(
            evaluate("1 $ 2", &c),
            Err(EvalError::Syntax(PadicError::Syntax { position: 2, .. }))
        ));
        assert!(matches!(evaluate("", &c), Err(EvalError::Syntax(_))));
        assert!(matches!(evaluate("2^x", &c), Err(EvalError::Syntax(_))));
    }
}

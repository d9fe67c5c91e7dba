use thiserror::Error;

use super::ast::{Arg, CallExpr, EmitTarget, Located, Op, Pos, Script, Statement};
use super::lexer::{Token, TokenKind};
use crate::kernel::Selector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

struct Parser<'t> {
    tokens: &'t [Token],
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.at.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &'t Token {
        let t = self.peek();
        if t.kind != TokenKind::Eof {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let t = self.peek();
        Err(ParseError {
            line: t.line,
            column: t.column,
            expected: expected.into(),
            found: t.describe(),
        })
    }

    fn punct(&mut self, p: &str) -> PResult<()> {
        if self.peek().is(TokenKind::Punct, p) {
            self.advance();
            Ok(())
        } else {
            self.fail(format!("`{p}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        if self.peek().kind == TokenKind::Ident {
            Ok(self.advance().lexeme.clone())
        } else {
            self.fail("identifier")
        }
    }

    fn number(&mut self) -> PResult<f64> {
        if self.peek().kind == TokenKind::Number {
            Ok(self.advance().lexeme.parse().expect("lexer checked the number"))
        } else {
            self.fail("number")
        }
    }

    fn pos(&self) -> Pos {
        let t = self.peek();
        Pos {
            line: t.line,
            column: t.column,
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        loop {
            let t = self.peek();
            match t.kind {
                TokenKind::Eof => break,
                TokenKind::Newline => {
                    self.advance();
                    continue;
                }
                _ => {}
            }
            statements.push(self.statement()?);
            match self.peek().kind {
                TokenKind::Newline => {
                    self.advance();
                }
                TokenKind::Eof => {}
                _ => return self.fail("end of line"),
            }
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> PResult<Located> {
        let pos = self.pos();
        let t = self.peek();
        if t.kind != TokenKind::Keyword {
            return self.fail("`given`, `let` or `emit`");
        }
        match t.lexeme.as_str() {
            "given" => {
                self.advance();
                let name = self.ident()?;
                self.punct("=")?;
                self.punct("(")?;
                let x = self.number()?;
                self.punct(",")?;
                let y = self.number()?;
                self.punct(")")?;
                Ok(Located {
                    stmt: Statement::Given { name, x, y },
                    pos,
                    arg_pos: Vec::new(),
                })
            }
            "let" => {
                self.advance();
                let mut names = vec![self.ident()?];
                if self.peek().is(TokenKind::Punct, ",") {
                    self.advance();
                    names.push(self.ident()?);
                }
                self.punct("=")?;
                let (call, arg_pos) = self.call()?;
                Ok(Located {
                    stmt: Statement::Let { names, call },
                    pos,
                    arg_pos,
                })
            }
            "emit" => {
                self.advance();
                let target = match self.peek() {
                    t if t.is(TokenKind::Keyword, "svg") => EmitTarget::Svg,
                    t if t.is(TokenKind::Keyword, "trace") => EmitTarget::Trace,
                    t if t.is(TokenKind::Keyword, "points") => EmitTarget::Points,
                    _ => return self.fail("`svg`, `trace` or `points`"),
                };
                self.advance();
                if self.peek().kind != TokenKind::String {
                    return self.fail("string");
                }
                let path = self.advance().lexeme.clone();
                Ok(Located {
                    stmt: Statement::Emit { target, path },
                    pos,
                    arg_pos: Vec::new(),
                })
            }
            _ => self.fail("`given`, `let` or `emit`"),
        }
    }

    fn call(&mut self) -> PResult<(CallExpr, Vec<Pos>)> {
        let t = self.peek();
        let op = match (t.kind, Op::from_name(&t.lexeme)) {
            (TokenKind::Ident, Some(op)) => op,
            _ => return self.fail("operation name"),
        };
        self.advance();
        self.punct("(")?;
        let mut args = Vec::new();
        let mut arg_pos = Vec::new();
        if !self.peek().is(TokenKind::Punct, ")") {
            loop {
                arg_pos.push(self.pos());
                args.push(self.arg()?);
                if self.peek().is(TokenKind::Punct, ",") {
                    self.advance();
                } else if self.peek().is(TokenKind::Punct, ")") {
                    break;
                } else {
                    return self.fail("`,`");
                }
            }
        }
        self.punct(")")?;
        Ok((CallExpr { op, args }, arg_pos))
    }

    fn arg(&mut self) -> PResult<Arg> {
        let t = self.peek();
        let arg = match t.kind {
            TokenKind::Ident => Arg::Name(t.lexeme.clone()),
            TokenKind::Number => Arg::Number(t.lexeme.parse().expect("lexer checked the number")),
            TokenKind::Keyword if t.lexeme == "left" => Arg::Selector(Selector::Left),
            TokenKind::Keyword if t.lexeme == "right" => Arg::Selector(Selector::Right),
            _ => return self.fail("identifier, number, `left` or `right`"),
        };
        self.advance();
        Ok(arg)
    }
}

/// Recursive-descent parse of a token stream from
/// [`tokenize`](super::tokenize).
pub fn parse(tokens: &[Token]) -> Result<Script, ParseError> {
    if tokens.last().map(|t| t.kind) != Some(TokenKind::Eof) {
        return Err(ParseError {
            line: 1,
            column: 1,
            expected: "token stream ending in end of input".into(),
            found: "unterminated stream".into(),
        });
    }
    Parser { tokens, at: 0 }.script()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::tokenize;

    fn parse_src(src: &str) -> Result<Script, ParseError> {
        parse(&tokenize(src).unwrap())
    }

    const MIDPOINT_DEMO: &str = "given A = (0, 0)\ngiven B = (1, 0)\n\n# halfway\nlet M = midpoint(A, B)\nemit points \"-\"\nemit svg \"midpoint.svg\"\n";

    #[test]
    fn midpoint_demo_has_five_statements() {
        let script = parse_src(MIDPOINT_DEMO).unwrap();
        assert_eq!(script.statements.len(), 5);
        assert_eq!(script.statements[2].pos, Pos { line: 5, column: 1 });
        assert_eq!(script.statements[2].arg_pos[1], Pos { line: 5, column: 21 });
    }

    #[test]
    fn missing_comma_points_at_offending_token() {
        let err = parse_src("let M = midpoint(A B)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 20));
        assert_eq!(err.expected, "`,`");
        assert_eq!(err.found, "`B`");
    }

    #[test]
    fn two_name_let() {
        let script = parse_src("let X, Y = intersect(c1, c2)").unwrap();
        match &script.statements[0].stmt {
            Statement::Let { names, call } => {
                assert_eq!(names, &["X", "Y"]);
                assert_eq!(call.op, Op::Intersect);
                assert_eq!(call.args.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn selectors_and_numbers_as_args() {
        let script = parse_src("let Q = nth(O, P, 3)\nlet T = apex(A, B, right)").unwrap();
        let calls: Vec<_> = script
            .statements()
            .map(|s| match s {
                Statement::Let { call, .. } => call.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(calls[0].args[2], Arg::Number(3.0));
        assert_eq!(calls[1].args[2], Arg::Selector(Selector::Right));
    }

    #[test]
    fn unknown_operation_is_a_parse_error() {
        let err = parse_src("given A = (0, 0)\nlet M = bisect(A)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 9));
        assert_eq!(err.expected, "operation name");
    }

    #[test]
    fn trailing_tokens_rejected() {
        let err = parse_src("given A = (0, 0) extra").unwrap_err();
        assert_eq!((err.line, err.column), (1, 18));
    }

    #[test]
    fn round_trip_through_display() {
        let script = parse_src(MIDPOINT_DEMO).unwrap();
        let again = parse_src(&script.to_string()).unwrap();
        assert!(script.same_ast(&again));
    }
}

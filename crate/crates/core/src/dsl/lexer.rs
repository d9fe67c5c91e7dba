use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Number,
    Keyword,
    Punct,
    String,
    Newline,
    Eof,
}

/// A lexeme with its 1-based source position. For strings the lexeme is
/// the unescaped contents.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    /// How the token reads in an error message.
    pub fn describe(&self) -> String {
        match self.kind {
            TokenKind::Newline => "end of line".into(),
            TokenKind::Eof => "end of input".into(),
            TokenKind::String => format!("string {:?}", self.lexeme),
            _ => format!("`{}`", self.lexeme),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.lexeme)
    }
}

pub const KEYWORDS: &[&str] = &["given", "let", "emit", "left", "right", "svg", "trace", "points"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}:{column}: {message}")]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, lexeme: String, line: usize, column: usize) {
        self.tokens.push(Token {
            kind,
            lexeme,
            line,
            column,
        });
    }

    fn error<T>(&self, line: usize, column: usize, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            line,
            column,
            message: message.into(),
        })
    }

    fn digits(&mut self, out: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
            n += 1;
        }
        n
    }

    fn number(&mut self, line: usize, column: usize) -> Result<(), LexError> {
        let mut text = String::new();
        if let Some(sign) = self.peek().filter(|c| *c == '+' || *c == '-') {
            text.push(sign);
            self.bump();
        }
        let mut mantissa = self.digits(&mut text);
        if self.peek() == Some('.') {
            text.push('.');
            self.bump();
            mantissa += self.digits(&mut text);
        }
        if mantissa == 0 {
            return self.error(line, column, format!("malformed number `{text}`"));
        }
        if let Some(e) = self.peek().filter(|c| *c == 'e' || *c == 'E') {
            text.push(e);
            self.bump();
            if let Some(sign) = self.peek().filter(|c| *c == '+' || *c == '-') {
                text.push(sign);
                self.bump();
            }
            if self.digits(&mut text) == 0 {
                return self.error(line, column, format!("malformed exponent in `{text}`"));
            }
        }
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.push(TokenKind::Number, text, line, column);
                Ok(())
            }
            _ => self.error(line, column, format!("number `{text}` is not a finite real")),
        }
    }

    fn string(&mut self, line: usize, column: usize) -> Result<(), LexError> {
        self.bump();
        let mut text = String::new();
        loop {
            match self.peek() {
                None | Some('\n') | Some('\r') => {
                    return self.error(line, column, "unterminated string");
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    let (l, c) = (self.line, self.column);
                    self.bump();
                    match self.bump() {
                        Some('"') => text.push('"'),
                        Some('\\') => text.push('\\'),
                        _ => return self.error(l, c, "unknown escape in string"),
                    }
                }
                Some(ch) => {
                    text.push(ch);
                    self.bump();
                }
            }
        }
        self.push(TokenKind::String, text, line, column);
        Ok(())
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        while let Some(c) = self.peek() {
            let (line, column) = (self.line, self.column);
            match c {
                '\n' => {
                    self.bump();
                    self.push(TokenKind::Newline, "\n".into(), line, column);
                }
                '\r' => {
                    self.bump();
                    if self.peek() != Some('\n') {
                        return self.error(line, column, "carriage return without line feed");
                    }
                }
                ' ' | '\t' => {
                    self.bump();
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n' && c != '\r') {
                        self.bump();
                    }
                }
                '=' | '(' | ')' | ',' => {
                    self.bump();
                    self.push(TokenKind::Punct, c.to_string(), line, column);
                }
                '"' => self.string(line, column)?,
                '+' | '-' | '.' | '0'..='9' => self.number(line, column)?,
                c if c.is_alphabetic() || c == '_' => {
                    let mut word = String::new();
                    while let Some(ch) = self.peek().filter(|ch| ch.is_alphanumeric() || *ch == '_') {
                        word.push(ch);
                        self.bump();
                    }
                    let kind = if KEYWORDS.contains(&word.as_str()) {
                        TokenKind::Keyword
                    } else {
                        TokenKind::Ident
                    };
                    self.push(kind, word, line, column);
                }
                other => return self.error(line, column, format!("unexpected character {other:?}")),
            }
        }
        let (line, column) = (self.line, self.column);
        self.push(TokenKind::Eof, String::new(), line, column);
        Ok(self.tokens)
    }
}

/// Split a script into tokens. `#` comments run to the end of the line;
/// LF and CRLF line endings are both accepted.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    Lexer {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
        tokens: Vec::new(),
    }
    .run()
}

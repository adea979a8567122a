//! Recursive-descent parser for the concrete syntax.
//!
//! Precedence, loosest first: `<->`, `->`, `|`, `&`, then the prefix
//! operators `~ [] <> [+] [-] [+^n] [-^n] [+<n] [-<n]`. The two arrows
//! associate to the right, `|` and `&` to the left.

use super::{guarded_bounded, guarded_box, guarded_iter, Atom, Formula, FormulaError, Polarity};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Iff,
    Imp,
    Or,
    And,
    Not,
    Box,
    Diamond,
    Guarded(Polarity),
    GuardedIter(Polarity, usize),
    GuardedBounded(Polarity, usize),
    True,
    False,
    Ident(String),
    Param(String),
    LParen,
    RParen,
}

fn describe(token: &Token) -> String {
    match token {
        Token::Iff => "`<->`".into(),
        Token::Imp => "`->`".into(),
        Token::Or => "`|`".into(),
        Token::And => "`&`".into(),
        Token::Not => "`~`".into(),
        Token::Box => "`[]`".into(),
        Token::Diamond => "`<>`".into(),
        Token::Guarded(_) | Token::GuardedIter(..) | Token::GuardedBounded(..) => {
            "guarded box".into()
        }
        Token::True => "`true`".into(),
        Token::False => "`false`".into(),
        Token::Ident(name) => format!("identifier `{name}`"),
        Token::Param(name) => format!("parameter `#{name}`"),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
    }
}

fn syntax(position: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        position,
        message: message.into(),
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek_char() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_string()
    }

    fn number(&mut self) -> Result<usize, FormulaError> {
        let start = self.pos;
        while matches!(self.peek_char(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| syntax(start, "expected a natural number"))
    }

    fn expect_char(&mut self, c: char) -> Result<(), FormulaError> {
        if self.peek_char() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{c}`")))
        }
    }

    fn tokenize(mut self) -> Result<Vec<(usize, Token)>, FormulaError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek_char(), Some(c) if c.is_whitespace()) {
                self.pos += self.peek_char().map_or(1, char::len_utf8);
            }
            let start = self.pos;
            let Some(c) = self.peek_char() else {
                return Ok(out);
            };
            let rest = self.rest();
            let token = if rest.starts_with("<->") {
                self.pos += 3;
                Token::Iff
            } else if rest.starts_with("->") {
                self.pos += 2;
                Token::Imp
            } else if rest.starts_with("<>") {
                self.pos += 2;
                Token::Diamond
            } else if rest.starts_with("[]") {
                self.pos += 2;
                Token::Box
            } else if rest.starts_with("[+") || rest.starts_with("[-") {
                let polarity = if rest.as_bytes()[1] == b'+' {
                    Polarity::Plus
                } else {
                    Polarity::Minus
                };
                self.pos += 2;
                match self.peek_char() {
                    Some(']') => {
                        self.pos += 1;
                        Token::Guarded(polarity)
                    }
                    Some('^') => {
                        self.pos += 1;
                        let n = self.number()?;
                        self.expect_char(']')?;
                        Token::GuardedIter(polarity, n)
                    }
                    Some('<') => {
                        self.pos += 1;
                        let n = self.number()?;
                        self.expect_char(']')?;
                        Token::GuardedBounded(polarity, n)
                    }
                    _ => return Err(syntax(self.pos, "expected `]`, `^n]` or `<n]`")),
                }
            } else {
                match c {
                    '|' => {
                        self.pos += 1;
                        Token::Or
                    }
                    '&' => {
                        self.pos += 1;
                        Token::And
                    }
                    '~' => {
                        self.pos += 1;
                        Token::Not
                    }
                    '(' => {
                        self.pos += 1;
                        Token::LParen
                    }
                    ')' => {
                        self.pos += 1;
                        Token::RParen
                    }
                    '#' => {
                        self.pos += 1;
                        let name = self.ident();
                        if name.is_empty() {
                            return Err(syntax(start, "`#` must be followed by a parameter name"));
                        }
                        Token::Param(name)
                    }
                    c if c.is_ascii_alphabetic() || c == '_' => match self.ident().as_str() {
                        "true" => Token::True,
                        "false" => Token::False,
                        name => Token::Ident(name.to_string()),
                    },
                    other => return Err(syntax(start, format!("unexpected character `{other}`"))),
                }
            };
            out.push((start, token));
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.index).map(|(_, t)| t.clone());
        self.index += 1;
        token
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.imp()?;
        if self.peek() == Some(&Token::Iff) {
            self.bump();
            let rhs = self.iff()?;
            return Ok(lhs.iff(&rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Imp) {
            self.bump();
            let rhs = self.imp()?;
            return Ok(lhs.implies(&rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            lhs = lhs.or(&self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.prefix()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            lhs = lhs.and(&self.prefix()?);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, FormulaError> {
        let position = self.position();
        let Some(token) = self.bump() else {
            return Err(syntax(position, "unexpected end of input"));
        };
        Ok(match token {
            Token::Not => self.prefix()?.neg(),
            Token::Box => self.prefix()?.boxed(),
            Token::Diamond => self.prefix()?.diamond(),
            Token::Guarded(pol) => guarded_box(pol, &self.prefix()?),
            Token::GuardedIter(pol, n) => guarded_iter(pol, n, &self.prefix()?),
            Token::GuardedBounded(pol, n) => guarded_bounded(pol, n, &self.prefix()?),
            Token::True => Formula::top(),
            Token::False => Formula::bot(),
            Token::Ident(name) => Formula::atom(Atom::try_variable(&name)?),
            Token::Param(name) => Formula::atom(Atom::try_parameter(&name)?),
            Token::LParen => {
                let inner = self.iff()?;
                match self.bump() {
                    Some(Token::RParen) => inner,
                    _ => {
                        return Err(syntax(
                            self.tokens.get(self.index - 1).map_or(self.end, |t| t.0),
                            "expected `)`",
                        ))
                    }
                }
            }
            other => {
                return Err(syntax(
                    position,
                    format!("expected a formula, found {}", describe(&other)),
                ))
            }
        })
    }
}

/// Parses a formula from its concrete syntax.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let tokens = Lexer { src: text, pos: 0 }.tokenize()?;
    let mut parser = Parser {
        tokens,
        index: 0,
        end: text.len(),
    };
    let formula = parser.iff()?;
    if let Some(token) = parser.peek() {
        let token = describe(token);
        return Err(syntax(parser.position(), format!("unexpected {token}")));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{boxminus_iter, boxplus, boxplus_bounded};

    #[test]
    fn reads_the_b_axiom_instance() {
        let p = Formula::p();
        let expected = p.neg().implies(&p.boxed().neg().boxed());
        assert_eq!(parse("~#p -> [] ~ [] #p").unwrap(), expected);
    }

    #[test]
    fn constants_and_guarded_boxes() {
        assert_eq!(parse("false").unwrap(), Formula::bot());
        assert_eq!(parse("true").unwrap(), Formula::top());
        assert_eq!(parse("[+] false").unwrap(), boxplus(&Formula::bot()));
        assert_eq!(
            parse("[-^3] false").unwrap(),
            boxminus_iter(3, &Formula::bot())
        );
        assert_eq!(
            parse("[+<2] x").unwrap(),
            boxplus_bounded(2, &Formula::var("x"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let (a, b, c) = (Formula::var("a"), Formula::var("b"), Formula::var("c"));
        assert_eq!(parse("a -> b -> c").unwrap(), a.implies(&b.implies(&c)));
        assert_eq!(parse("a | b | c").unwrap(), a.or(&b).or(&c));
        assert_eq!(parse("a & b | c").unwrap(), a.and(&b).or(&c));
        assert_eq!(parse("a | b & c").unwrap(), a.or(&b.and(&c)));
        assert_eq!(parse("a -> b <-> c").unwrap(), a.implies(&b).iff(&c));
        assert_eq!(parse("~a & b").unwrap(), a.neg().and(&b));
        assert_eq!(parse("[] a -> a").unwrap(), a.boxed().implies(&a));
        assert_eq!(parse("<>(a)").unwrap(), a.diamond());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x & ") {
            Err(FormulaError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse("(x | y") {
            Err(FormulaError::Syntax { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("x $ y") {
            Err(FormulaError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("x y"),
            Err(FormulaError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse("# x"),
            Err(FormulaError::Syntax { position: 0, .. })
        ));
        assert!(matches!(parse("[+^] x"), Err(FormulaError::Syntax { .. })));
    }

    #[test]
    fn bare_reserved_names_are_rejected() {
        assert_eq!(parse("p & x"), Err(FormulaError::ReservedName("p".into())));
        assert_eq!(
            parse("#p & x").unwrap(),
            Formula::p().and(&Formula::var("x"))
        );
    }
}

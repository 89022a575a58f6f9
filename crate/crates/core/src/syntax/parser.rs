use std::collections::BTreeSet;

use thiserror::Error;

use super::lexer::{lex, Tok, Token};
use super::{is_atom_name, is_constant_name, Formula, Term};

/// Syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

/// Parses a term using only the built-in lexical classes.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    Parser::default().term(input)
}

/// Parses a formula using only the built-in lexical classes.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    Parser::default().formula(input)
}

/// Parser configuration. Extra constant names (typically declared by a
/// constant specification file) are lexed as constants instead of variables.
#[derive(Clone, Debug, Default)]
pub struct Parser {
    constants: BTreeSet<String>,
}

impl Parser {
    pub fn with_constants<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Parser { constants: names.into_iter().map(Into::into).collect() }
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn term(&self, input: &str) -> Result<Term, ParseError> {
        let tokens = lex(input)?;
        let mut st = State { tokens: &tokens, at: 0, cfg: self };
        let t = st.sum()?;
        st.expect_end()?;
        Ok(t)
    }

    pub fn formula(&self, input: &str) -> Result<Formula, ParseError> {
        let tokens = lex(input)?;
        let mut st = State { tokens: &tokens, at: 0, cfg: self };
        let f = st.implication()?;
        st.expect_end()?;
        Ok(f)
    }

    fn is_constant(&self, name: &str) -> bool {
        is_constant_name(name) || self.constants.contains(name)
    }
}

struct State<'a> {
    tokens: &'a [Token],
    at: usize,
    cfg: &'a Parser,
}

impl State<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> &Tok {
        let t = &self.tokens[self.at].tok;
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::new(self.pos(), format!("expected {what}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut left = self.app()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let right = self.app()?;
            left = Term::sum(left, right);
        }
        Ok(left)
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut left = self.unary_term()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let right = self.unary_term()?;
            left = Term::app(left, right);
        }
        Ok(left)
    }

    fn unary_term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Term::bang(self.unary_term()?))
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) => {
                self.bump();
                self.term_name(pos, name)
            }
            _ => Err(self.unexpected("term")),
        }
    }

    fn term_name(&self, pos: usize, name: String) -> Result<Term, ParseError> {
        if is_atom_name(&name) {
            return Err(ParseError::new(pos, format!("atom `{name}` cannot be used as a term")));
        }
        if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(ParseError::new(pos, format!("identifier `{name}` must start with a lowercase letter")));
        }
        if self.cfg.is_constant(&name) {
            Ok(Term::Constant(name))
        } else {
            Ok(Term::Variable(name))
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unit()?;
        while *self.peek() == Tok::And {
            self.bump();
            let right = self.unit()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Falsum => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unit()?))
            }
            Tok::Ident(name) if is_atom_name(&name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                // Either a parenthesised term in front of `:` or a
                // parenthesised formula.
                let start = self.at;
                let as_term = self.justification();
                match as_term {
                    Ok(f) => Ok(f),
                    Err(term_err) => {
                        self.at = start;
                        self.bump();
                        let inner = self.implication().and_then(|f| {
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(f)
                        });
                        match inner {
                            Ok(f) => Ok(f),
                            Err(formula_err) if formula_err.pos >= term_err.pos => Err(formula_err),
                            Err(_) => Err(term_err),
                        }
                    }
                }
            }
            Tok::Ident(_) | Tok::Bang => self.justification(),
            _ => Err(self.unexpected("formula")),
        }
    }

    fn justification(&mut self) -> Result<Formula, ParseError> {
        let t = self.sum()?;
        self.expect(Tok::Colon, "`:`")?;
        let body = self.unit()?;
        Ok(Formula::just(t, body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn single_variable() {
        assert_eq!(parse_term("x").unwrap(), v("x"));
    }

    #[test]
    fn term_precedence() {
        // ((!c1) . x) + y
        let expected = Term::sum(Term::app(Term::bang(Term::constant("c1")), v("x")), v("y"));
        assert_eq!(parse_term("!c1 . x + y").unwrap(), expected);
        assert_eq!(parse_term("((!c1) . x) + y").unwrap(), expected);
    }

    #[test]
    fn doubled_plus_is_rejected_at_second_plus() {
        let err = parse_term("x + + y").unwrap_err();
        assert_eq!(err.pos, 4);
    }

    #[test]
    fn atom_used_as_term() {
        let err = parse_term("p + x").unwrap_err();
        assert!(err.message.contains("atom"));
    }

    #[test]
    fn application_axiom_instance() {
        let t = v("t");
        let s = v("s");
        let expected = Formula::implies(
            Formula::just(t.clone(), Formula::implies(a("p"), a("q"))),
            Formula::implies(Formula::just(s.clone(), a("p")), Formula::just(Term::app(t, s), a("q"))),
        );
        assert_eq!(parse_formula("t:(p -> q) -> (s:p -> t.s:q)").unwrap(), expected);
    }

    #[test]
    fn falsum_and_unicode() {
        assert_eq!(parse_formula("_|_").unwrap(), Formula::Falsum);
        assert_eq!(parse_formula("p ∨ ¬p").unwrap(), parse_formula("p \\/ (p -> _|_)").unwrap());
        assert_eq!(parse_formula("x·y:p → p ∧ ⊥").unwrap(), parse_formula("x.y:p -> p /\\ _|_").unwrap());
    }

    #[test]
    fn implication_is_right_associative() {
        let expected = Formula::implies(a("p"), Formula::implies(a("q"), a("r")));
        assert_eq!(parse_formula("p -> q -> r").unwrap(), expected);
    }

    #[test]
    fn colon_binds_tighter_than_connectives() {
        let f = parse_formula("t:p -> t+s:p").unwrap();
        let expected = Formula::implies(
            Formula::just(v("t"), a("p")),
            Formula::just(Term::sum(v("t"), v("s")), a("p")),
        );
        assert_eq!(f, expected);
        let g = parse_formula("x:p /\\ q").unwrap();
        assert_eq!(g, Formula::and(Formula::just(v("x"), a("p")), a("q")));
    }

    #[test]
    fn parenthesised_term_before_colon() {
        let f = parse_formula("(x+y):(p \\/ q)").unwrap();
        assert_eq!(f, Formula::just(Term::sum(v("x"), v("y")), Formula::or(a("p"), a("q"))));
        assert_eq!(parse_formula("((p))").unwrap(), a("p"));
    }

    #[test]
    fn declared_constants() {
        let parser = Parser::with_constants(["k"]);
        assert_eq!(parser.term("k").unwrap(), Term::constant("k"));
        assert_eq!(parse_term("k").unwrap(), v("k"));
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("x:").is_err());
        assert!(parse_formula("(p -> q").is_err());
        assert!(parse_formula("p $ q").is_err());
    }
}

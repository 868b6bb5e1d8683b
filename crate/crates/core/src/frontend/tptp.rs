//! Parser for the clause-normal-form subset of TPTP.
//!
//! ```text
//! cnf(<name>, <role>, (<lit> | ... | <lit>)).
//! ```
//!
//! Literals are `[~]p(t, ...)` or propositional `[~]p`; `$false` is the
//! empty disjunction. In argument positions, identifiers starting with an
//! uppercase letter or `_` are variables, scoped to their clause; predicate
//! names may have any case. `%` starts a line comment.

use std::collections::HashMap;

use thiserror::Error;

use super::Problem;
use crate::ground::BOTTOM_NAME;
use crate::logic::{Clause, ClauseId, Literal, Origin, Symbol, Term, Var};
use crate::model::{CertLiteral, ModelCertificate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: `{symbol}` used with arity {found}, previously {expected}")]
    ArityClash {
        line: usize,
        col: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum SymbolKind {
    Predicate,
    Functor,
}

struct Parser<'a> {
    lex: Lexer<'a>,
    arities: HashMap<(SymbolKind, Symbol), usize>,
    vars: HashMap<String, Var>,
    next_var: u32,
}

impl<'a> Lexer<'a> {
    fn line_col(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let col = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        (line, col)
    }

    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'%' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_trivia();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<(&'a str, usize)> {
        self.skip_trivia();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        if bytes.get(start) == Some(&b'\'') {
            let end = self.src[start + 1..].find('\'')? + start + 1;
            self.pos = end + 1;
            return Some((&self.src[start..=end], start));
        }
        if bytes.get(self.pos) == Some(&b'$') {
            self.pos += 1;
        }
        while self.pos < bytes.len()
            && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| (&self.src[start..self.pos], start))
    }
}

fn is_variable(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            lex: Lexer { src, pos: 0 },
            arities: HashMap::new(),
            vars: HashMap::new(),
            next_var: 0,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = self.lex.line_col(pos);
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn error(&mut self, message: impl Into<String>) -> ParseError {
        self.lex.skip_trivia();
        self.error_at(self.lex.pos, message)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.lex.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self, what: &str) -> Result<(&'a str, usize), ParseError> {
        match self.lex.word() {
            Some(w) => Ok(w),
            None => Err(self.error(format!("expected {what}"))),
        }
    }

    fn check_arity(
        &mut self,
        kind: SymbolKind,
        name: &str,
        arity: usize,
        pos: usize,
    ) -> Result<Symbol, ParseError> {
        if name == BOTTOM_NAME {
            return Err(self.error_at(pos, format!("`{BOTTOM_NAME}` is reserved")));
        }
        let sym = Symbol::intern(name);
        let expected = *self.arities.entry((kind, sym)).or_insert(arity);
        if expected != arity {
            let (line, col) = self.lex.line_col(pos);
            return Err(ParseError::ArityClash {
                line,
                col,
                symbol: name.to_owned(),
                expected,
                found: arity,
            });
        }
        Ok(sym)
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.lex.eat(b'(') {
            loop {
                args.push(self.term()?);
                if !self.lex.eat(b',') {
                    break;
                }
            }
            self.expect(b')')?;
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, pos) = self.word("a term")?;
        if is_variable(name) {
            let next = &mut self.next_var;
            let v = *self.vars.entry(name.to_owned()).or_insert_with(|| {
                *next += 1;
                Var(*next - 1)
            });
            return Ok(Term::var(v));
        }
        let args = self.args()?;
        let sym = self.check_arity(SymbolKind::Functor, name, args.len(), pos)?;
        Ok(Term::app(sym, args))
    }

    /// A literal, or `None` for `$false`.
    fn literal(&mut self) -> Result<Option<Literal>, ParseError> {
        let negated = self.lex.eat(b'~');
        let (name, pos) = self.word("a literal")?;
        if name == "$false" && !negated {
            return Ok(None);
        }
        let args = self.args()?;
        if self.lex.peek() == Some(b'=') || self.lex.src[self.lex.pos..].starts_with("!=") {
            return Err(self.error("equality is not supported"));
        }
        let sym = self.check_arity(SymbolKind::Predicate, name, args.len(), pos)?;
        Ok(Some(Literal::new(!negated, Term::app(sym, args))))
    }

    fn disjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        let parens = self.lex.eat(b'(');
        let mut lits = Vec::new();
        loop {
            if let Some(l) = self.literal()? {
                lits.push(l);
            }
            if !self.lex.eat(b'|') {
                break;
            }
        }
        if parens {
            self.expect(b')')?;
        }
        Ok(lits)
    }

    fn annotated(&mut self, id: u32) -> Result<(Clause, String), ParseError> {
        let (kw, pos) = self.word("`cnf`")?;
        if kw != "cnf" {
            return Err(self.error_at(pos, format!("expected `cnf`, found `{kw}`")));
        }
        self.expect(b'(')?;
        let (name, _) = self.word("a clause name")?;
        self.expect(b',')?;
        let (role, _) = self.word("a role")?;
        self.expect(b',')?;
        self.vars.clear();
        let lits = self.disjunction()?;
        if self.lex.eat(b',') {
            return Err(self.error("annotations are not supported"));
        }
        self.expect(b')')?;
        self.expect(b'.')?;
        let clause = Clause::new(
            ClauseId(id),
            lits,
            Origin::Input {
                name: name.to_owned(),
            },
        );
        Ok((clause, role.to_owned()))
    }
}

pub fn parse_tptp_cnf(text: &str) -> Result<Problem, ParseError> {
    let mut p = Parser::new(text);
    let mut clauses = Vec::new();
    let mut roles = Vec::new();
    while !p.lex.at_end() {
        let (c, role) = p.annotated(clauses.len() as u32)?;
        clauses.push(c);
        roles.push(role);
    }
    Ok(Problem::with_roles(clauses, roles))
}

/// Reads a model certificate: one literal per line, `%` comments allowed.
/// The domain is left empty; it comes from the problem being checked.
pub fn parse_certificate(text: &str) -> Result<ModelCertificate, ParseError> {
    let mut p = Parser::new(text);
    let mut cert = ModelCertificate::default();
    while !p.lex.at_end() {
        p.vars.clear();
        match p.literal()? {
            Some(literal) => cert.literals.push(CertLiteral {
                literal,
                source: None,
            }),
            None => return Err(p.error("`$false` is not a model literal")),
        }
    }
    Ok(cert)
}

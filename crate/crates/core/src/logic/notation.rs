//! Compact textual notation for clauses, used in tests and examples.
//!
//! Identifiers starting with `u`..`z` are variables; every other identifier
//! is a constant, functor or predicate. `~` negates, `|` separates literals.
//! A variable name always denotes the same [`Var`], so separately parsed
//! terms can share variables.

use super::{Clause, ClauseId, Literal, Origin, Symbol, Term, Var};

const NOTATION_VAR_BASE: u32 = 1 << 24;

pub fn var(name: &str) -> Var {
    Var(NOTATION_VAR_BASE + Symbol::intern(name).index())
}

fn is_var_name(name: &str) -> bool {
    name.starts_with(|c: char| ('u'..='z').contains(&c))
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric()
                || matches!(self.src[self.pos], b'_' | b'$' | b'\''))
        {
            self.pos += 1;
        }
        assert!(self.pos > start, "expected identifier at {}", start);
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn term(&mut self, top: bool) -> Term {
        let name = self.ident();
        if !top && is_var_name(name) {
            return Term::var(var(name));
        }
        let mut args = Vec::new();
        if self.eat(b'(') {
            loop {
                args.push(self.term(false));
                if !self.eat(b',') {
                    break;
                }
            }
            assert!(self.eat(b')'), "unbalanced parentheses");
        }
        Term::app(Symbol::intern(name), args)
    }

    fn literal(&mut self) -> Literal {
        let negated = self.eat(b'~');
        Literal::new(!negated, self.term(true))
    }
}

pub fn term(src: &str) -> Term {
    Cursor {
        src: src.as_bytes(),
        pos: 0,
    }
    .term(false)
}

pub fn lit(src: &str) -> Literal {
    Cursor {
        src: src.as_bytes(),
        pos: 0,
    }
    .literal()
}

/// `$false` denotes the empty clause.
pub fn literals(src: &str) -> Vec<Literal> {
    if src.trim() == "$false" {
        return Vec::new();
    }
    let mut cur = Cursor {
        src: src.as_bytes(),
        pos: 0,
    };
    let mut out = vec![cur.literal()];
    while cur.eat(b'|') {
        out.push(cur.literal());
    }
    out
}

pub fn clause(src: &str) -> Clause {
    Clause::new(
        ClauseId(0),
        literals(src),
        Origin::Input {
            name: src.to_owned(),
        },
    )
}

/// Clauses numbered from 0 in the given order.
pub fn clauses(srcs: &[&str]) -> Vec<Clause> {
    srcs.iter()
        .enumerate()
        .map(|(i, s)| {
            let mut c = clause(s);
            c.id = ClauseId(i as u32);
            c.origin = Origin::Input {
                name: format!("c{i}"),
            };
            c
        })
        .collect()
}

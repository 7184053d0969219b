//! One-variable MV-terms over `{X, ¬, ⊕}` and their evaluation.
//!
//! Derived connectives are desugared when built, so evaluation is a single
//! structural recursion: `a_X = a`, `a_{¬t} = ¬a_t`, `a_{s⊕t} = a_s ⊕ a_t`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Carriers a term can be evaluated in.
pub trait MvOps: Clone {
    fn mv_neg(&self) -> Self;
    fn mv_oplus(&self, other: &Self) -> Self;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var,
    Neg(Arc<Term>),
    Oplus(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var() -> Term {
        Term::Var
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Arc::new(t))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Arc::new(a), Arc::new(b))
    }

    /// `a ⊙ b := ¬(¬a ⊕ ¬b)`
    pub fn odot(a: Term, b: Term) -> Term {
        Term::neg(Term::oplus(Term::neg(a), Term::neg(b)))
    }

    /// `a ∨ b := ¬(¬a ⊕ b) ⊕ b`
    pub fn join(a: Term, b: Term) -> Term {
        Term::oplus(Term::neg(Term::oplus(Term::neg(a), b.clone())), b)
    }

    /// `a ∧ b := ¬(¬a ∨ ¬b)`
    pub fn meet(a: Term, b: Term) -> Term {
        Term::neg(Term::join(Term::neg(a), Term::neg(b)))
    }

    /// The centripetal term `(X ⊙ (X ⊕ X)) ⊕ (X ⊙ X)`.
    pub fn sigma() -> Term {
        let x = Term::var;
        Term::oplus(
            Term::odot(x(), Term::oplus(x(), x())),
            Term::odot(x(), x()),
        )
    }

    /// Replace every occurrence of `X` by `inner`.
    pub fn substitute(&self, inner: &Term) -> Term {
        match self {
            Term::Var => inner.clone(),
            Term::Neg(t) => Term::neg(t.substitute(inner)),
            Term::Oplus(a, b) => Term::oplus(a.substitute(inner), b.substitute(inner)),
        }
    }

    /// `self` composed with itself `times` times; `times == 0` gives `X`.
    pub fn iterate(&self, times: usize) -> Term {
        (0..times).fold(Term::Var, |acc, _| self.substitute(&acc))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var => 1,
            Term::Neg(t) => 1 + t.size(),
            Term::Oplus(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn apply<T: MvOps>(&self, x: &T) -> T {
        match self {
            Term::Var => x.clone(),
            Term::Neg(t) => t.apply(x).mv_neg(),
            Term::Oplus(a, b) => a.apply(x).mv_oplus(&b.apply(x)),
        }
    }

    /// Parse the ASCII/Unicode term syntax.
    ///
    /// Precedence from loosest: `v`/`|`/`∨`, `^`/`&`/`∧`, `+`/`⊕`, `*`/`.`/`⊙`,
    /// then prefix `~`/`!`/`¬`. Atoms are `X`, `x`, `sigma`, `sigma(t)` and
    /// parenthesised terms.
    pub fn parse(src: &str) -> Result<Term> {
        let mut p = Parser { src, pos: 0 };
        let t = p.join()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var => write!(f, "X"),
            Term::Neg(t) => write!(f, "~{t}"),
            Term::Oplus(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::TermParse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, tokens: &[&str]) -> bool {
        self.skip_ws();
        for tok in tokens {
            if self.src[self.pos..].starts_with(tok) {
                self.pos += tok.len();
                return true;
            }
        }
        false
    }

    fn join(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat(&["v", "|", "∨"]) {
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.sum()?;
        while self.eat(&["^", "&", "∧"]) {
            t = Term::meet(t, self.sum()?);
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.eat(&["+", "⊕"]) {
            t = Term::oplus(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(&["*", ".", "⊙"]) {
            t = Term::odot(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&["~", "!", "¬"]) {
            return Ok(Term::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        if self.eat(&["("]) {
            let t = self.join()?;
            if !self.eat(&[")"]) {
                return Err(self.error("expected `)`"));
            }
            return Ok(t);
        }
        if self.eat(&["sigma", "σ"]) {
            if self.eat(&["("]) {
                let inner = self.join()?;
                if !self.eat(&[")"]) {
                    return Err(self.error("expected `)`"));
                }
                return Ok(Term::sigma().substitute(&inner));
            }
            return Ok(Term::sigma());
        }
        if self.eat(&["X", "x"]) {
            return Ok(Term::Var);
        }
        Err(self.error("expected a term"))
    }
}

//! Bounded formulas over hereditarily finite sets.
//!
//! Every quantifier carries a bounding term, so there is no way to write an
//! unbounded formula. Evaluation is plain Tarskian truth over fully
//! materialized sets.

use std::collections::BTreeMap;
use std::fmt;

use super::literal::LiteralParser;
use super::HfSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(HfSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Member(Term, Term),
    Equal(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
}

pub type Env = BTreeMap<String, HfSet>;

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }
}

impl From<HfSet> for Term {
    fn from(x: HfSet) -> Self {
        Term::Const(x)
    }
}

impl Formula {
    pub fn member(x: impl Into<Term>, t: impl Into<Term>) -> Self {
        Formula::Member(x.into(), t.into())
    }

    pub fn equal(x: impl Into<Term>, t: impl Into<Term>) -> Self {
        Formula::Equal(x.into(), t.into())
    }

    pub fn negation(phi: Formula) -> Self {
        Formula::Not(Box::new(phi))
    }

    pub fn and(phi: Formula, psi: Formula) -> Self {
        Formula::And(Box::new(phi), Box::new(psi))
    }

    pub fn or(phi: Formula, psi: Formula) -> Self {
        Formula::Or(Box::new(phi), Box::new(psi))
    }

    pub fn implies(phi: Formula, psi: Formula) -> Self {
        Formula::Implies(Box::new(phi), Box::new(psi))
    }

    /// `phi <-> psi`, expanded into two implications.
    pub fn iff(phi: Formula, psi: Formula) -> Self {
        Formula::and(Formula::implies(phi.clone(), psi.clone()), Formula::implies(psi, phi))
    }

    pub fn forall(var: &str, bound: impl Into<Term>, body: Formula) -> Self {
        Formula::ForAll {
            var: var.to_string(),
            bound: bound.into(),
            body: Box::new(body),
        }
    }

    pub fn exists(var: &str, bound: impl Into<Term>, body: Formula) -> Self {
        Formula::Exists {
            var: var.to_string(),
            bound: bound.into(),
            body: Box::new(body),
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn term(t: &Term, bound: &[String], out: &mut Vec<String>) {
            if let Term::Var(v) = t {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        fn go(phi: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match phi {
                Formula::True | Formula::False => {}
                Formula::Member(a, b) | Formula::Equal(a, b) => {
                    term(a, bound, out);
                    term(b, bound, out);
                }
                Formula::Not(p) => go(p, bound, out),
                Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) => {
                    go(p, bound, out);
                    go(q, bound, out);
                }
                Formula::ForAll { var, bound: t, body } | Formula::Exists { var, bound: t, body } => {
                    term(t, bound, out);
                    bound.push(var.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

struct Scope<'a> {
    env: &'a Env,
    stack: Vec<(&'a str, HfSet)>,
}

impl<'a> Scope<'a> {
    fn lookup(&self, t: &Term) -> Result<HfSet> {
        match t {
            Term::Const(c) => Ok(c.clone()),
            Term::Var(v) => self
                .stack
                .iter()
                .rev()
                .find(|(name, _)| *name == v.as_str())
                .map(|(_, x)| x.clone())
                .or_else(|| self.env.get(v).cloned())
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
        }
    }

    fn eval(&mut self, phi: &'a Formula) -> Result<bool> {
        Ok(match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Member(x, t) => {
                let x = self.lookup(x)?;
                self.lookup(t)?.contains(&x)
            }
            Formula::Equal(x, t) => self.lookup(x)? == self.lookup(t)?,
            Formula::Not(p) => !self.eval(p)?,
            Formula::And(p, q) => self.eval(p)? && self.eval(q)?,
            Formula::Or(p, q) => self.eval(p)? || self.eval(q)?,
            Formula::Implies(p, q) => !self.eval(p)? || self.eval(q)?,
            Formula::ForAll { var, bound, body } => {
                let range = self.lookup(bound)?;
                if range.is_empty() {
                    // still reject unbound variables inside the body
                    self.check_closed(var, body)?;
                }
                for x in range.members() {
                    self.stack.push((var.as_str(), x.clone()));
                    let holds = self.eval(body);
                    self.stack.pop();
                    if !holds? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Exists { var, bound, body } => {
                let range = self.lookup(bound)?;
                if range.is_empty() {
                    self.check_closed(var, body)?;
                }
                for x in range.members() {
                    self.stack.push((var.as_str(), x.clone()));
                    let holds = self.eval(body);
                    self.stack.pop();
                    if holds? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    fn check_closed(&self, var: &str, body: &Formula) -> Result<()> {
        for v in body.free_vars() {
            if v != var && !self.stack.iter().any(|(name, _)| *name == v) && !self.env.contains_key(&v) {
                return Err(Error::UnboundVariable(v));
            }
        }
        Ok(())
    }
}

/// Evaluates a bounded formula. Quantifiers range over the members of their
/// evaluated bounding term only.
pub fn eval_bounded(phi: &Formula, env: &Env) -> Result<bool> {
    for v in phi.free_vars() {
        if !env.contains_key(&v) {
            return Err(Error::UnboundVariable(v));
        }
    }
    Scope { env, stack: Vec::new() }.eval(phi)
}

/// `{x in s | phi(x)}`.
pub fn separation(s: &HfSet, var: &str, phi: &Formula, env: &Env) -> Result<HfSet> {
    let mut env = env.clone();
    let mut kept = Vec::new();
    for x in s.members() {
        env.insert(var.to_string(), x.clone());
        if eval_bounded(phi, &env)? {
            kept.push(x.clone());
        }
    }
    Ok(HfSet::from_members(kept))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Member(a, b) => write!(f, "{a} in {b}"),
            Formula::Equal(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(p) => write!(f, "~({p})"),
            Formula::And(p, q) => write!(f, "({p} & {q})"),
            Formula::Or(p, q) => write!(f, "({p} | {q})"),
            Formula::Implies(p, q) => write!(f, "({p} -> {q})"),
            Formula::ForAll { var, bound, body } => write!(f, "(forall {var} in {bound}. {body})"),
            Formula::Exists { var, bound, body } => write!(f, "(exists {var} in {bound}. {body})"),
        }
    }
}

/// Parses the text syntax:
///
/// ```text
/// phi ::= psi '<->' psi | psi '->' phi | psi ('|' psi)* ...
/// atom ::= 'true' | 'false' | '~' atom | '(' phi ')'
///        | 'forall' x 'in' t '.' phi | 'exists' x 'in' t '.' phi
///        | t 'in' t | t 'notin' t | t '=' t | t '!=' t
/// t ::= identifier | set literal
/// ```
pub fn parse_formula(input: &str) -> Result<Formula> {
    let mut p = FormulaParser { input, pos: 0 };
    let phi = p.iff()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(phi)
}

struct FormulaParser<'a> {
    input: &'a str,
    pos: usize,
}

const KEYWORDS: &[&str] = &["forall", "exists", "in", "notin", "true", "false"];

impl<'a> FormulaParser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|(i, c)| !(c.is_ascii_alphanumeric() || *c == '_' || (*i > 0 && *c == '\'')))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let word = &rest[..end];
        (!word.is_empty() && !word.as_bytes()[0].is_ascii_digit()).then_some(word)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_ident() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek_ident() {
            Some(w) if !KEYWORDS.contains(&w) => {
                self.pos += w.len();
                Ok(w.to_string())
            }
            _ => Err(self.error("expected a variable name")),
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.implies()?;
        if self.eat("<->") {
            let rhs = self.implies()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while self.eat("|") {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::negation(self.unary()?));
        }
        if self.eat("(") {
            let inner = self.iff()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        for (kw, universal) in [("forall", true), ("exists", false)] {
            if self.eat_keyword(kw) {
                let var = self.ident()?;
                if !self.eat_keyword("in") {
                    return Err(self.error("quantifier needs a bound: expected `in`"));
                }
                let bound = self.term()?;
                if !self.eat(".") {
                    return Err(self.error("expected `.` after quantifier bound"));
                }
                let body = self.iff()?;
                return Ok(if universal {
                    Formula::forall(&var, bound, body)
                } else {
                    Formula::exists(&var, bound, body)
                });
            }
        }
        if self.eat_keyword("true") {
            return Ok(Formula::True);
        }
        if self.eat_keyword("false") {
            return Ok(Formula::False);
        }
        let lhs = self.term()?;
        if self.eat_keyword("in") {
            return Ok(Formula::Member(lhs, self.term()?));
        }
        if self.eat_keyword("notin") {
            return Ok(Formula::negation(Formula::Member(lhs, self.term()?)));
        }
        if self.eat("!=") {
            return Ok(Formula::negation(Formula::Equal(lhs, self.term()?)));
        }
        if self.eat("=") {
            return Ok(Formula::Equal(lhs, self.term()?));
        }
        Err(self.error("expected `in`, `notin`, `=` or `!=`"))
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.rest().as_bytes().first() {
            Some(b'{' | b'<' | b'#') => {
                let mut lit = LiteralParser::at(self.input, self.pos);
                let set = lit.set().map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(1, lit.pos + 1, message),
                    other => other,
                })?;
                self.pos = lit.pos;
                Ok(Term::Const(set))
            }
            _ => Ok(Term::Var(self.ident()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    #[test]
    fn bounded_exists_over_two_elements() {
        let phi = Formula::exists("y", ord(2), Formula::equal(Term::var("y"), ord(0)));
        assert!(eval_bounded(&phi, &Env::new()).unwrap());
    }

    #[test]
    fn vacuous_forall() {
        let phi = Formula::forall("y", HfSet::empty(), Formula::False);
        assert!(eval_bounded(&phi, &Env::new()).unwrap());
    }

    #[test]
    fn unbound_variable_is_named() {
        let phi = Formula::member(Term::var("z"), ord(3));
        assert_eq!(eval_bounded(&phi, &Env::new()), Err(Error::UnboundVariable("z".into())));
        let hidden = Formula::forall("y", HfSet::empty(), Formula::member(Term::var("w"), Term::var("y")));
        assert_eq!(
            eval_bounded(&hidden, &Env::new()),
            Err(Error::UnboundVariable("w".into()))
        );
    }

    #[test]
    fn separation_of_empty_is_empty() {
        let phi = Formula::True;
        assert_eq!(
            separation(&HfSet::empty(), "x", &phi, &Env::new()).unwrap(),
            HfSet::empty()
        );
    }

    #[test]
    fn nonempty_ordinals() {
        let phi = Formula::exists("y", Term::var("x"), Formula::True);
        let out = separation(&ord(4), "x", &phi, &Env::new()).unwrap();
        assert_eq!(out, HfSet::from_members([ord(1), ord(2), ord(3)]));
    }

    #[test]
    fn parser_matches_builder() {
        let parsed = parse_formula("exists n in #4. forall y in #4. (y in x <-> y in n)").unwrap();
        let built = Formula::exists(
            "n",
            ord(4),
            Formula::forall(
                "y",
                ord(4),
                Formula::iff(
                    Formula::member(Term::var("y"), Term::var("x")),
                    Formula::member(Term::var("y"), Term::var("n")),
                ),
            ),
        );
        assert_eq!(parsed, built);
        assert_eq!(parsed.free_vars(), vec!["x".to_string()]);
    }

    #[test]
    fn parser_precedence_and_errors() {
        let phi = parse_formula("~x = y | x in {#1} & true").unwrap();
        assert_eq!(
            phi,
            Formula::or(
                Formula::negation(Formula::equal(Term::var("x"), Term::var("y"))),
                Formula::and(
                    Formula::member(Term::var("x"), HfSet::from_members([ord(1)])),
                    Formula::True
                )
            )
        );
        assert!(matches!(parse_formula("forall x. true"), Err(Error::Parse { .. })));
        assert!(matches!(parse_formula("x in"), Err(Error::Parse { .. })));
        assert!(matches!(parse_formula("(x = y"), Err(Error::Parse { .. })));
    }
}

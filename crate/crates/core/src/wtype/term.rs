use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Signature;
use crate::error::{Error, Result};
use crate::hfcore::HfSet;

/// A well-founded tree over a signature.
///
/// The code of `a(t_1, ..., t_k)` is `<a, seq(code t_1, ..., code t_k)>`, so
/// the sets produced by iterating the polynomial functor from the empty set
/// are sets of term codes. Equality and order are those of the codes.
#[derive(Clone)]
pub struct WTerm(Arc<Node>);

struct Node {
    head: HfSet,
    children: Vec<WTerm>,
    code: HfSet,
    height: usize,
    size: usize,
}

pub(crate) fn layer_code(head: &HfSet, args: impl IntoIterator<Item = HfSet>) -> HfSet {
    HfSet::pair(head.clone(), HfSet::sequence(args))
}

impl WTerm {
    /// Checks the head against the signature and the number of children against its arity.
    pub fn new(sig: &Signature, head: &HfSet, children: Vec<WTerm>) -> Result<Self> {
        let op = sig
            .get(head)
            .ok_or_else(|| Error::IllFormedTerm(format!("unknown operator {head}")))?;
        if op.arity != children.len() {
            return Err(Error::IllFormedTerm(format!(
                "`{}` takes {} arguments, given {}",
                op.name,
                op.arity,
                children.len()
            )));
        }
        Ok(Self::new_unchecked(head.clone(), children))
    }

    pub(crate) fn new_unchecked(head: HfSet, children: Vec<WTerm>) -> Self {
        let code = layer_code(&head, children.iter().map(|c| c.code().clone()));
        let height = 1 + children.iter().map(|c| c.height()).max().unwrap_or(0);
        let size = 1 + children.iter().map(|c| c.size()).sum::<usize>();
        WTerm(Arc::new(Node {
            head,
            children,
            code,
            height,
            size,
        }))
    }

    /// Applies the operator called `name`.
    pub fn op(sig: &Signature, name: &str, children: Vec<WTerm>) -> Result<Self> {
        let head = sig
            .by_name(name)
            .ok_or_else(|| Error::IllFormedTerm(format!("unknown operator `{name}`")))?
            .code
            .clone();
        Self::new(sig, &head, children)
    }

    /// Rebuilds a term from its code, checking it against the signature.
    pub fn decode(sig: &Signature, code: &HfSet) -> Result<Self> {
        let (head, args) = code
            .as_pair()
            .ok_or_else(|| Error::IllFormedTerm(format!("{code} is not a term code")))?;
        let args = args
            .as_sequence()
            .ok_or_else(|| Error::IllFormedTerm(format!("{code} has no argument sequence")))?;
        let children = args.iter().map(|a| Self::decode(sig, a)).collect::<Result<Vec<_>>>()?;
        Self::new(sig, &head, children)
    }

    pub fn head(&self) -> &HfSet {
        &self.0.head
    }

    pub fn children(&self) -> &[WTerm] {
        &self.0.children
    }

    pub fn code(&self) -> &HfSet {
        &self.0.code
    }

    /// Constants have height 1.
    pub fn height(&self) -> usize {
        self.0.height
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Checks every node against the signature.
    pub fn is_well_formed(&self, sig: &Signature) -> bool {
        sig.get(self.head()).is_some_and(|op| op.arity == self.children().len())
            && self.children().iter().all(|c| c.is_well_formed(sig))
    }

    /// Prefix notation with operator names: `s(s(z))`.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        TermDisplay { term: self, sig }
    }
}

struct TermDisplay<'a> {
    term: &'a WTerm,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sig.get(self.term.head()) {
            Some(op) => f.write_str(&op.name)?,
            None => write!(f, "{}", self.term.head())?,
        }
        if !self.term.children().is_empty() {
            f.write_str("(")?;
            for (i, c) in self.term.children().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", c.display(self.sig))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl PartialEq for WTerm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.code == other.0.code
    }
}

impl Eq for WTerm {}

impl Hash for WTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.code.hash(state);
    }
}

impl PartialOrd for WTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.code.cmp(&other.0.code)
    }
}

impl fmt::Debug for WTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WTerm({})", self.0.code)
    }
}

/// Parses a term in prefix form, `s(s(z))`, against a signature. Constants
/// may be written with or without `()`.
pub fn parse_term(sig: &Signature, input: &str) -> Result<WTerm> {
    let mut p = TermParser { sig, input, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("trailing characters after term"));
    }
    Ok(t)
}

struct TermParser<'a> {
    sig: &'a Signature,
    input: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.input[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<WTerm> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.input[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | ','))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an operator name"));
        }
        let name = &rest[..len];
        self.pos += len;
        let op = self
            .sig
            .by_name(name)
            .ok_or_else(|| Error::parse(1, start + 1, format!("unknown operator `{name}`")))?;
        let mut children = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                children.push(self.term()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
        if children.len() != op.arity {
            return Err(Error::parse(
                1,
                start + 1,
                format!("`{name}` takes {} arguments, given {}", op.arity, children.len()),
            ));
        }
        Ok(WTerm::new_unchecked(op.code.clone(), children))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> Signature {
        Signature::from_arities([("z", 0), ("s", 1)]).unwrap()
    }

    #[test]
    fn build_print_parse() {
        let sig = nat();
        let z = WTerm::op(&sig, "z", vec![]).unwrap();
        let ssz = WTerm::op(&sig, "s", vec![WTerm::op(&sig, "s", vec![z.clone()]).unwrap()]).unwrap();
        assert_eq!(ssz.display(&sig).to_string(), "s(s(z))");
        assert_eq!(ssz.height(), 3);
        assert_eq!(ssz.size(), 3);
        assert_eq!(parse_term(&sig, " s( s(z()) ) ").unwrap(), ssz);
        assert_eq!(WTerm::decode(&sig, ssz.code()).unwrap(), ssz);
        assert!(WTerm::op(&sig, "s", vec![]).is_err());
        assert!(matches!(
            parse_term(&sig, "s(z,z)"),
            Err(Error::Parse { column: 1, .. })
        ));
        assert!(matches!(parse_term(&sig, "s(q)"), Err(Error::Parse { column: 3, .. })));
        assert!(z < ssz);
    }
}

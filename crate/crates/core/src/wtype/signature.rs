use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hfcore::{FinFunction, HfSet};

/// One operator of a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub code: HfSet,
    pub name: String,
    pub arity: usize,
}

/// Operators with finite arities.
///
/// Operators are kept in the order of their codes. The arity of `a` is the
/// fiber over `a` of the function `B -> A` returned by
/// [`Signature::arity_function`], whose positions are the pairs `<a, #i>`.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    ops: Vec<Operator>,
    by_code: HashMap<HfSet, usize>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.ops == other.ops
    }
}

impl Eq for Signature {}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
}

impl Signature {
    pub fn new<I>(ops: I) -> Result<Self>
    where
        I: IntoIterator<Item = Operator>,
    {
        let mut ops: Vec<Operator> = ops.into_iter().collect();
        ops.sort_by(|a, b| a.code.cmp(&b.code));
        let mut by_code = HashMap::new();
        let mut by_name = HashMap::new();
        for (i, op) in ops.iter().enumerate() {
            if !valid_name(&op.name) {
                return Err(Error::IllFormedTerm(format!("invalid operator name `{}`", op.name)));
            }
            if by_code.insert(op.code.clone(), i).is_some() {
                return Err(Error::IllFormedTerm(format!("operator code {} used twice", op.code)));
            }
            if by_name.insert(op.name.clone(), i).is_some() {
                return Err(Error::IllFormedTerm(format!("operator name `{}` used twice", op.name)));
            }
        }
        Ok(Self { ops, by_code, by_name })
    }

    /// Operators named in order, coded by the ordinals `#0, #1, ...`.
    pub fn from_arities<'a, I>(ops: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, usize)>,
    {
        Self::new(ops.into_iter().enumerate().map(|(i, (name, arity))| Operator {
            code: HfSet::ordinal(i),
            name: name.to_string(),
            arity,
        }))
    }

    /// Reads a signature off a function `B -> A`, naming each operator by
    /// its code.
    pub fn from_arity_function(f: &FinFunction) -> Result<Self> {
        Self::new(f.codomain().members().iter().map(|a| Operator {
            code: a.clone(),
            name: a.to_string(),
            arity: f.fiber_size(a),
        }))
    }

    pub fn operators(&self) -> &[Operator] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn get(&self, code: &HfSet) -> Option<&Operator> {
        self.by_code.get(code).map(|&i| &self.ops[i])
    }

    pub fn by_name(&self, name: &str) -> Option<&Operator> {
        self.by_name.get(name).map(|&i| &self.ops[i])
    }

    pub fn constants(&self) -> impl Iterator<Item = &Operator> {
        self.ops.iter().filter(|op| op.arity == 0)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|op| op.arity).max().unwrap_or(0)
    }

    /// The function from argument positions `<a, #i>` to operators.
    pub fn arity_function(&self) -> FinFunction {
        let codes = HfSet::from_members(self.ops.iter().map(|op| op.code.clone()));
        let pairs: Vec<(HfSet, HfSet)> = self
            .ops
            .iter()
            .flat_map(|op| {
                (0..op.arity).map(move |i| (HfSet::pair(op.code.clone(), HfSet::ordinal(i)), op.code.clone()))
            })
            .collect();
        let positions = HfSet::from_members(pairs.iter().map(|(b, _)| b.clone()));
        FinFunction::new(positions, codes, pairs).expect("positions lie over their operator")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "op {} {}", op.name, op.arity)?;
        }
        Ok(())
    }
}

/// Parses the `.sig` format: one `op <name> <arity>` line per operator,
/// `#` comments. Operators are coded by their position in the file.
pub fn parse_signature(input: &str) -> Result<Signature> {
    let mut ops: Vec<(String, usize, usize)> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|w| (w.as_ptr() as usize - line.as_ptr() as usize, w))
            .collect();
        if words.is_empty() {
            continue;
        }
        let err = |at: usize, msg: String| Error::parse(i + 1, at + 1, msg);
        match words.as_slice() {
            [(_, "op"), (name_at, name), (arity_at, arity)] => {
                if !valid_name(name) {
                    return Err(err(*name_at, format!("invalid operator name `{name}`")));
                }
                if ops.iter().any(|(n, _, _)| n == name) {
                    return Err(err(*name_at, format!("operator `{name}` declared twice")));
                }
                let arity: usize = arity
                    .parse()
                    .map_err(|_| err(*arity_at, format!("expected an arity, found `{arity}`")))?;
                ops.push((name.to_string(), arity, i + 1));
            }
            [(at, "op"), ..] => return Err(err(*at, "expected `op <name> <arity>`".into())),
            [(at, w), ..] => return Err(err(*at, format!("unknown keyword `{w}`"))),
            [] => unreachable!(),
        }
    }
    Signature::from_arities(ops.iter().map(|(n, a, _)| (n.as_str(), *a)))
}

use super::{Signature, WTerm};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;

/// Prefix (Polish) encoding: the head, then each child in order.
pub fn seq_encode(t: &WTerm) -> Vec<HfSet> {
    let mut out = Vec::with_capacity(t.size());
    let mut stack = vec![t];
    while let Some(u) = stack.pop() {
        out.push(u.head().clone());
        stack.extend(u.children().iter().rev());
    }
    out
}

/// Inverse of [`seq_encode`]. Validity is decided by one left-to-right pass
/// of an open-slot counter; errors carry the 0-based position of the first
/// offending symbol.
pub fn seq_decode(sig: &Signature, seq: &[HfSet]) -> Result<WTerm> {
    let mut open = 1usize;
    for (i, a) in seq.iter().enumerate() {
        if open == 0 {
            return Err(Error::Decode {
                position: i,
                message: "symbols after a complete term".into(),
            });
        }
        let op = sig.get(a).ok_or_else(|| Error::Decode {
            position: i,
            message: format!("unknown operator {a}"),
        })?;
        open = open - 1 + op.arity;
    }
    if open != 0 {
        return Err(Error::Decode {
            position: seq.len(),
            message: format!("{open} arguments missing at end of input"),
        });
    }
    let mut pos = 0;
    Ok(build(sig, seq, &mut pos))
}

fn build(sig: &Signature, seq: &[HfSet], pos: &mut usize) -> WTerm {
    let head = seq[*pos].clone();
    *pos += 1;
    let arity = sig.get(&head).expect("checked").arity;
    let children = (0..arity).map(|_| build(sig, seq, pos)).collect();
    WTerm::new_unchecked(head, children)
}

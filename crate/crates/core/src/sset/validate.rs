use std::fmt;

use super::TruncatedSimplicialSet;
use crate::delta::Generator;
use crate::hfcore::HfSet;

/// One failed simplicial identity.
///
/// `entries` lists every action-table entry `(generator, simplex)` read while
/// evaluating both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub simplex: HfSet,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
    pub lhs_value: HfSet,
    pub rhs_value: HfSet,
    pub entries: Vec<(Generator, HfSet)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[Generator]| {
            if w.is_empty() {
                "id".to_string()
            } else {
                w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" then ")
            }
        };
        write!(
            f,
            "{} fails at {}: {} gives {}, {} gives {}",
            self.law,
            self.simplex,
            word(&self.lhs),
            self.lhs_value,
            word(&self.rhs),
            self.rhs_value
        )
    }
}

struct Checker<'a> {
    x: &'a TruncatedSimplicialSet,
    out: Vec<Violation>,
}

impl Checker<'_> {
    fn run(&self, word: &[Generator], start: usize, trace: &mut Vec<(Generator, HfSet)>) -> usize {
        let mut acc = start;
        for &g in word {
            trace.push((g, self.x.id(acc).clone()));
            acc = self.x.apply_generator(g, acc).expect("dimensions follow the word");
        }
        acc
    }

    fn check(&mut self, law: &'static str, s: usize, lhs: Vec<Generator>, rhs: Vec<Generator>) {
        let mut trace = Vec::new();
        let a = self.run(&lhs, s, &mut trace);
        let b = self.run(&rhs, s, &mut trace);
        if a != b {
            trace.sort();
            trace.dedup();
            self.out.push(Violation {
                law,
                simplex: self.x.id(s).clone(),
                lhs,
                rhs,
                lhs_value: self.x.id(a).clone(),
                rhs_value: self.x.id(b).clone(),
                entries: trace,
            });
        }
    }
}

fn face(dim: usize, index: usize) -> Generator {
    Generator::Face { dim, index }
}

fn degen(dim: usize, index: usize) -> Generator {
    Generator::Degeneracy { dim, index }
}

/// Checks the simplicial identities on every simplex, for every pair of
/// generators whose composite stays inside the truncation.
///
/// Words are listed in the order they act on the simplex, so the identity
/// `d_i d_j = d_{j-1} d_i` appears as "apply `d_j`, then `d_i`".
pub fn validate_presheaf(x: &TruncatedSimplicialSet) -> Vec<Violation> {
    let d = x.truncation();
    let mut c = Checker { x, out: Vec::new() };
    for s in 0..x.len() {
        let n = x.dim(s);
        // d_i d_j = d_{j-1} d_i for i < j
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    c.check(
                        "d_i d_j = d_{j-1} d_i",
                        s,
                        vec![face(n, j), face(n - 1, i)],
                        vec![face(n, i), face(n - 1, j - 1)],
                    );
                }
            }
        }
        if n < d {
            for j in 0..=n {
                // d_j s_j = d_{j+1} s_j = id
                c.check("d_j s_j = id", s, vec![degen(n, j), face(n + 1, j)], vec![]);
                c.check("d_{j+1} s_j = id", s, vec![degen(n, j), face(n + 1, j + 1)], vec![]);
                // d_i s_j = s_{j-1} d_i for i < j
                for i in 0..j {
                    c.check(
                        "d_i s_j = s_{j-1} d_i",
                        s,
                        vec![degen(n, j), face(n + 1, i)],
                        vec![face(n, i), degen(n - 1, j - 1)],
                    );
                }
                // d_i s_j = s_j d_{i-1} for i > j + 1
                for i in (j + 2)..=(n + 1) {
                    c.check(
                        "d_i s_j = s_j d_{i-1}",
                        s,
                        vec![degen(n, j), face(n + 1, i)],
                        vec![face(n, i - 1), degen(n - 1, j)],
                    );
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        if n + 2 <= d {
            for j in 0..=n {
                for i in 0..=j {
                    c.check(
                        "s_i s_j = s_{j+1} s_i",
                        s,
                        vec![degen(n, j), degen(n + 1, i)],
                        vec![degen(n, i), degen(n + 1, j + 1)],
                    );
                }
            }
        }
    }
    c.out
}

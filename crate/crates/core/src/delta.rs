//! The simplex category truncated at a finite dimension.
//!
//! Objects are `[n] = {0, ..., n}`; a map `[n] -> [m]` is stored as its
//! nondecreasing value sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hfcore::{FinFunction, HfSet};

pub const DEFAULT_TRUNCATION: usize = 6;

/// The object `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaObject(pub usize);

impl DeltaObject {
    /// `[n]` as the initial segment `{0, ..., n}`, i.e. the ordinal `n + 1`.
    pub fn as_hf(self) -> HfSet {
        HfSet::ordinal(self.0 + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMap {
    target: usize,
    values: Vec<usize>,
}

impl DeltaMap {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source + 1 {
            return Err(Error::InvalidMap(format!(
                "a map out of [{source}] needs {} values, got {}",
                source + 1,
                values.len()
            )));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidMap(format!("value above {target} in {values:?}")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("{values:?} is not monotone")));
        }
        Ok(Self { target, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Result<Self> {
        Self::new(source, target, vec![value; source + 1])
    }

    /// `delta_i : [n-1] -> [n]`, skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::OutOfRange(format!("no face d_{i} into [{n}]")));
        }
        Ok(Self {
            target: n,
            values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect(),
        })
    }

    /// `sigma_i : [n+1] -> [n]`, hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::OutOfRange(format!("no degeneracy s_{i} onto [{n}]")));
        }
        Ok(Self {
            target: n,
            values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(),
        })
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.values.clone();
        img.dedup();
        img
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &DeltaMap) -> Result<DeltaMap> {
        delta_compose(self, inner)
    }

    /// Splits `self` as `mono . epi`.
    pub fn epi_mono(&self) -> (DeltaMap, DeltaMap) {
        let image = self.image();
        let k = image.len() - 1;
        let epi = DeltaMap {
            target: k,
            values: self.values.iter().map(|v| image.binary_search(v).unwrap()).collect(),
        };
        let mono = DeltaMap {
            target: self.target,
            values: image,
        };
        (epi, mono)
    }

    /// A word of generators whose successive action on an `m`-simplex computes
    /// the action of `self`: first the faces of the monic part (largest
    /// missing index first), then the degeneracies of the epic part.
    pub fn generator_word(&self) -> Vec<Generator> {
        let (epi, mono) = self.epi_mono();
        let mut word = Vec::new();

        let mut mono = mono;
        while mono.source() != mono.target {
            let missing = (0..=mono.target)
                .rev()
                .find(|v| mono.values.binary_search(v).is_err())
                .unwrap();
            word.push(Generator::Face {
                dim: mono.target,
                index: missing,
            });
            mono = DeltaMap {
                target: mono.target - 1,
                values: mono
                    .values
                    .iter()
                    .map(|&v| if v < missing { v } else { v - 1 })
                    .collect(),
            };
        }

        let mut degeneracies = Vec::new();
        let mut epi = epi;
        while epi.source() != epi.target {
            let j = (0..epi.source()).find(|&j| epi.values[j] == epi.values[j + 1]).unwrap();
            // epi = epi' . sigma_j, so sigma_j acts last
            degeneracies.push(Generator::Degeneracy {
                dim: epi.source() - 1,
                index: j,
            });
            let mut values = epi.values.clone();
            values.remove(j + 1);
            epi = DeltaMap {
                target: epi.target,
                values,
            };
        }
        degeneracies.reverse();
        word.extend(degeneracies);
        word
    }

    /// The graph `{<#i, #v_i>}` as a function `[n] -> [m]` between initial segments.
    pub fn to_fin_function(&self) -> FinFunction {
        FinFunction::new(
            DeltaObject(self.source()).as_hf(),
            DeltaObject(self.target).as_hf(),
            self.values
                .iter()
                .enumerate()
                .map(|(i, &v)| (HfSet::ordinal(i), HfSet::ordinal(v))),
        )
        .expect("monotone map is a function")
    }

    pub fn graph_hf(&self) -> HfSet {
        self.to_fin_function().graph()
    }
}

/// `g . f`.
pub fn delta_compose(g: &DeltaMap, f: &DeltaMap) -> Result<DeltaMap> {
    if f.target != g.source() {
        return Err(Error::Mismatch(format!(
            "cannot compose {g} after {f}: [{}] vs [{}]",
            f.target,
            g.source()
        )));
    }
    Ok(DeltaMap {
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// All monotone maps `[n] -> [m]` in lexicographic order.
pub fn delta_hom(n: usize, m: usize, truncation: usize) -> Result<Vec<DeltaMap>> {
    for dim in [n, m] {
        if dim > truncation {
            return Err(Error::Truncation { dim, truncation });
        }
    }
    Ok(monotone_maps(n, m))
}

pub(crate) fn monotone_maps(n: usize, m: usize) -> Vec<DeltaMap> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(n + 1);
    fn go(n: usize, m: usize, values: &mut Vec<usize>, out: &mut Vec<DeltaMap>) {
        if values.len() == n + 1 {
            out.push(DeltaMap {
                target: m,
                values: values.clone(),
            });
            return;
        }
        let lo = values.last().copied().unwrap_or(0);
        for v in lo..=m {
            values.push(v);
            go(n, m, values, out);
            values.pop();
        }
    }
    go(n, m, &mut values, &mut out);
    out
}

/// Surjections `[m] -> [n]`, lexicographic.
pub(crate) fn surjections(m: usize, n: usize) -> Vec<DeltaMap> {
    monotone_maps(m, n)
        .into_iter()
        .filter(DeltaMap::is_surjective)
        .collect()
}

/// Faces `[n-1] -> [n]` and degeneracies `[n+1] -> [n]`.
///
/// Faces exist for `1 <= n`, degeneracies for `n < truncation`; the other
/// list is empty at the ends of the range.
pub fn delta_generators(n: usize, truncation: usize) -> Result<(Vec<DeltaMap>, Vec<DeltaMap>)> {
    if n > truncation {
        return Err(Error::Truncation { dim: n, truncation });
    }
    let faces = if n >= 1 {
        (0..=n).map(|i| DeltaMap::face(n, i).unwrap()).collect()
    } else {
        Vec::new()
    };
    let degeneracies = if n < truncation {
        (0..=n).map(|i| DeltaMap::degeneracy(n, i).unwrap()).collect()
    } else {
        Vec::new()
    };
    Ok((faces, degeneracies))
}

/// A generating map, named by the dimension of the simplex it acts on.
///
/// `Face { dim: n, index: i }` is `delta_i : [n-1] -> [n]` and sends
/// `n`-simplices to `(n-1)`-simplices; `Degeneracy { dim: n, index: i }` is
/// `sigma_i : [n+1] -> [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Face { dim: usize, index: usize },
    Degeneracy { dim: usize, index: usize },
}

impl Generator {
    pub fn to_map(self) -> DeltaMap {
        match self {
            Generator::Face { dim, index } => DeltaMap::face(dim, index).unwrap(),
            Generator::Degeneracy { dim, index } => DeltaMap::degeneracy(dim, index).unwrap(),
        }
    }

    /// Dimension of the simplices this generator acts on.
    pub fn acts_on(self) -> usize {
        match self {
            Generator::Face { dim, .. } | Generator::Degeneracy { dim, .. } => dim,
        }
    }

    /// Dimension of the result.
    pub fn lands_in(self) -> usize {
        match self {
            Generator::Face { dim, .. } => dim - 1,
            Generator::Degeneracy { dim, .. } => dim + 1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Generator::Face { index, .. } | Generator::Degeneracy { index, .. } => index,
        }
    }

    /// All generators acting on simplices of dimension `<= truncation`
    /// whose result also stays within the truncation.
    pub fn all(truncation: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for n in 0..=truncation {
            if n >= 1 {
                out.extend((0..=n).map(|index| Generator::Face { dim: n, index }));
            }
            if n < truncation {
                out.extend((0..=n).map(|index| Generator::Degeneracy { dim: n, index }));
            }
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face { dim, index } => write!(f, "d_{index}@{dim}"),
            Generator::Degeneracy { dim, index } => write!(f, "s_{index}@{dim}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(1, 1, format!("bad generator `{s}`, expected d_i@n or s_i@n"));
        let (kind, rest) = s.split_at_checked(2).ok_or_else(bad)?;
        let (index, dim) = rest.split_once('@').ok_or_else(bad)?;
        let index: usize = index.parse().map_err(|_| bad())?;
        let dim: usize = dim.parse().map_err(|_| bad())?;
        match kind {
            "d_" if dim >= 1 && index <= dim => Ok(Generator::Face { dim, index }),
            "s_" if index <= dim => Ok(Generator::Degeneracy { dim, index }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:[", self.source(), self.target)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DeltaMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, 1, format!("bad delta map `{s}`: {msg}"));
        let (head, body) = s.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let (n, m) = head.split_once("->").ok_or_else(|| bad("missing `->`"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("bad source"))?;
        let m: usize = m.trim().parse().map_err(|_| bad("bad target"))?;
        let body = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| bad("values must be bracketed"))?;
        let values = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad("bad value")))
                .collect::<Result<Vec<_>>>()?
        };
        DeltaMap::new(n, m, values).map_err(|e| bad(&e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn hom_counts() {
        assert_eq!(delta_hom(1, 2, 6).unwrap().len(), 6);
        assert_eq!(delta_hom(0, 0, 6).unwrap(), vec![DeltaMap::identity(0)]);
        assert_eq!(delta_hom(2, 0, 6).unwrap(), vec![DeltaMap::constant(2, 0, 0).unwrap()]);
        for n in 0..=6 {
            for m in 0..=6 {
                assert_eq!(delta_hom(n, m, 6).unwrap().len(), binomial(n + m + 1, n + 1));
            }
        }
        assert_eq!(delta_hom(7, 0, 6), Err(Error::Truncation { dim: 7, truncation: 6 }));
    }

    #[test]
    fn hom_is_lexicographic() {
        let maps = delta_hom(2, 3, 6).unwrap();
        assert!(maps.windows(2).all(|w| w[0].values < w[1].values));
    }

    #[test]
    fn sigma_after_delta_is_identity() {
        let d1 = DeltaMap::face(2, 1).unwrap();
        let s1 = DeltaMap::degeneracy(1, 1).unwrap();
        assert_eq!(delta_compose(&s1, &d1).unwrap(), DeltaMap::identity(1));
    }

    #[test]
    fn composition_basics() {
        let f = DeltaMap::new(1, 2, vec![0, 2]).unwrap();
        assert_eq!(delta_compose(&DeltaMap::identity(2), &f).unwrap(), f);
        assert_eq!(delta_compose(&f, &DeltaMap::identity(1)).unwrap(), f);
        let c1 = DeltaMap::constant(2, 1, 1).unwrap();
        let c2 = DeltaMap::constant(1, 3, 2).unwrap();
        let cc = delta_compose(&c2, &c1).unwrap();
        assert_eq!(cc, DeltaMap::constant(2, 3, 2).unwrap());
        assert!(delta_compose(&f, &f).is_err());
    }

    #[test]
    fn generators_at_one_and_two() {
        let (faces, degens) = delta_generators(1, 6).unwrap();
        assert_eq!(faces[0].values(), &[1]);
        assert_eq!(faces[1].values(), &[0]);
        assert_eq!(degens.len(), 2);
        let (faces, degens) = delta_generators(2, 6).unwrap();
        assert_eq!((faces.len(), degens.len()), (3, 3));
        assert!(degens.iter().all(|s| s.source() == 3 && s.target() == 2));
        let (_, top) = delta_generators(6, 6).unwrap();
        assert!(top.is_empty());
        assert!(delta_generators(7, 6).is_err());
    }

    #[test]
    fn face_face_identity_at_two() {
        for j in 0..=2 {
            for i in 0..j {
                let lhs = delta_compose(&DeltaMap::face(2, j).unwrap(), &DeltaMap::face(1, i).unwrap()).unwrap();
                let rhs = delta_compose(&DeltaMap::face(2, i).unwrap(), &DeltaMap::face(1, j - 1).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = DeltaMap::new(2, 3, vec![0, 0, 3]).unwrap();
        assert_eq!(f.to_string(), "2->3:[0,0,3]");
        assert_eq!("2->3:[0,0,3]".parse::<DeltaMap>().unwrap(), f);
        assert!("1->1:[1,0]".parse::<DeltaMap>().is_err());
        let g: Generator = "s_1@2".parse().unwrap();
        assert_eq!(g, Generator::Degeneracy { dim: 2, index: 1 });
        assert_eq!(g.to_string(), "s_1@2");
        assert!("d_3@2".parse::<Generator>().is_err());
    }

    #[test]
    fn words_recompose() {
        for n in 0..=4 {
            for m in 0..=4 {
                for f in delta_hom(n, m, 6).unwrap() {
                    // composing the word as maps: acting by g1 then g2 ... means f = g1 . g2 . ...
                    let word = f.generator_word();
                    let mut acc = DeltaMap::identity(m);
                    for g in &word {
                        acc = delta_compose(&acc, &g.to_map()).unwrap();
                    }
                    assert_eq!(acc, f);
                }
            }
        }
    }
}

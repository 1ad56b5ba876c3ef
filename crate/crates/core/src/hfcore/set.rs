use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, RwLock};

/// A hereditarily finite set in canonical form.
///
/// Members are kept strictly increasing under [`hf_compare`], so two values are
/// equal exactly when they have the same members. Nodes are shared through
/// `Arc` and carry a structural hash computed once at construction.
#[derive(Clone)]
pub struct HfSet(Arc<Node>);

struct Node {
    hash: u64,
    members: Box<[HfSet]>,
}

const HASH_SEED: u64 = 0x9e37_79b9_7f4a_7c15;
const HASH_MUL: u64 = 0x517c_c1b7_2722_0a95;

static EMPTY: LazyLock<HfSet> = LazyLock::new(|| HfSet::from_sorted(Vec::new()));

// Ordinals share nodes so that comparing two copies stays cheap.
static ORDINALS: RwLock<Vec<HfSet>> = RwLock::new(Vec::new());

/// The Ackermann order: `a < b` iff the largest element of the symmetric
/// difference of `a` and `b` lies in `b`.
///
/// Agrees with comparing the numeric codes `N(x) = sum over y in x of 2^N(y)`.
pub fn hf_compare(a: &HfSet, b: &HfSet) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    let (xs, ys) = (&a.0.members, &b.0.members);
    for (x, y) in xs.iter().rev().zip(ys.iter().rev()) {
        match hf_compare(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    xs.len().cmp(&ys.len())
}

impl HfSet {
    fn from_sorted(members: Vec<HfSet>) -> Self {
        let mut hash = HASH_SEED ^ (members.len() as u64);
        for m in &members {
            hash = (hash.rotate_left(5) ^ m.0.hash).wrapping_mul(HASH_MUL);
        }
        HfSet(Arc::new(Node {
            hash,
            members: members.into_boxed_slice(),
        }))
    }

    pub fn empty() -> Self {
        EMPTY.clone()
    }

    /// Builds `{x_1, ..., x_k}`, sorting and removing duplicates.
    pub fn from_members<I: IntoIterator<Item = HfSet>>(members: I) -> Self {
        let mut v: Vec<HfSet> = members.into_iter().collect();
        v.sort_by(hf_compare);
        v.dedup();
        Self::from_sorted(v)
    }

    pub fn singleton(x: HfSet) -> Self {
        Self::from_sorted(vec![x])
    }

    /// The von Neumann ordinal `{0, ..., n-1}`.
    pub fn ordinal(n: usize) -> Self {
        if let Some(x) = ORDINALS.read().unwrap().get(n) {
            return x.clone();
        }
        let mut cache = ORDINALS.write().unwrap();
        while cache.len() <= n {
            let next = HfSet::from_sorted(cache.clone());
            cache.push(next);
        }
        cache[n].clone()
    }

    /// Kuratowski pair `{{x}, {x, y}}`.
    pub fn pair(x: HfSet, y: HfSet) -> Self {
        let single = HfSet::singleton(x.clone());
        if x == y {
            HfSet::singleton(single)
        } else {
            HfSet::from_members([single, HfSet::from_members([x, y])])
        }
    }

    /// Encodes a finite sequence as the function `{<#0,x_0>, <#1,x_1>, ...}`.
    pub fn sequence<I: IntoIterator<Item = HfSet>>(items: I) -> Self {
        HfSet::from_members(
            items
                .into_iter()
                .enumerate()
                .map(|(i, x)| HfSet::pair(HfSet::ordinal(i), x)),
        )
    }

    /// Builds the set whose Ackermann code is `code`.
    pub fn from_ackermann(code: u64) -> Self {
        HfSet::from_members(
            (0..64)
                .filter(|bit| code & (1u64 << bit) != 0)
                .map(HfSet::from_ackermann),
        )
    }

    pub fn members(&self) -> &[HfSet] {
        &self.0.members
    }

    pub fn len(&self) -> usize {
        self.0.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.members.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.position(x).is_some()
    }

    /// Index of `x` among the sorted members.
    pub fn position(&self, x: &HfSet) -> Option<usize> {
        self.0.members.binary_search_by(|m| hf_compare(m, x)).ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.len() <= other.len() && self.members().iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &HfSet) -> HfSet {
        HfSet::from_members(self.members().iter().chain(other.members()).cloned())
    }

    pub fn insert(&self, x: HfSet) -> HfSet {
        HfSet::from_members(self.members().iter().cloned().chain(std::iter::once(x)))
    }

    /// Returns `n` when this set is the ordinal `n`.
    pub fn as_ordinal(&self) -> Option<usize> {
        let n = self.len();
        self.members()
            .iter()
            .enumerate()
            .all(|(i, m)| m.len() == i)
            .then_some(n)
            .filter(|&n| *self == HfSet::ordinal(n))
    }

    /// Splits a Kuratowski pair.
    pub fn as_pair(&self) -> Option<(HfSet, HfSet)> {
        match self.members() {
            [only] => match only.members() {
                [x] => Some((x.clone(), x.clone())),
                _ => None,
            },
            [p, q] => {
                let split = |single: &HfSet, double: &HfSet| -> Option<(HfSet, HfSet)> {
                    let [x] = single.members() else { return None };
                    let [a, b] = double.members() else {
                        return None;
                    };
                    if a == x {
                        Some((x.clone(), b.clone()))
                    } else if b == x {
                        Some((x.clone(), a.clone()))
                    } else {
                        None
                    }
                };
                split(p, q).or_else(|| split(q, p))
            }
            _ => None,
        }
    }

    /// Decodes a set produced by [`HfSet::sequence`].
    pub fn as_sequence(&self) -> Option<Vec<HfSet>> {
        let mut items: Vec<Option<HfSet>> = vec![None; self.len()];
        for m in self.members() {
            let (i, x) = m.as_pair()?;
            let i = i.as_ordinal()?;
            let slot = items.get_mut(i)?;
            if slot.is_some() {
                return None;
            }
            *slot = Some(x);
        }
        items.into_iter().collect()
    }

    /// Cartesian product as a set of Kuratowski pairs.
    pub fn product(&self, other: &HfSet) -> HfSet {
        HfSet::from_members(
            self.members()
                .iter()
                .flat_map(|x| other.members().iter().map(move |y| HfSet::pair(x.clone(), y.clone()))),
        )
    }

    /// Power set; only sensible for small sets.
    pub fn powerset(&self) -> HfSet {
        let n = self.len();
        assert!(n < 20, "powerset of a {n}-element set is too large");
        HfSet::from_members((0u32..(1 << n)).map(|mask| {
            HfSet::from_members(
                self.members()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, x)| x.clone()),
            )
        }))
    }

    pub fn ptr_eq(&self, other: &HfSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Default for HfSet {
    fn default() -> Self {
        HfSet::empty()
    }
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.members == other.0.members)
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        hf_compare(self, other)
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<HfSet> for HfSet {
    fn from_iter<I: IntoIterator<Item = HfSet>>(iter: I) -> Self {
        HfSet::from_members(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_minimum() {
        let e = HfSet::empty();
        assert_eq!(hf_compare(&e, &HfSet::singleton(e.clone())), Ordering::Less);
    }

    #[test]
    fn code_two_below_code_three() {
        // {{0}} has code 2^1 = 2, {0, {0}} has code 2^0 + 2^1 = 3.
        let e = HfSet::empty();
        let one = HfSet::singleton(e.clone());
        let a = HfSet::singleton(one.clone());
        let b = HfSet::from_members([e, one]);
        assert_eq!(hf_compare(&a, &b), Ordering::Less);
        assert_eq!(a, HfSet::from_ackermann(2));
        assert_eq!(b, HfSet::from_ackermann(3));
    }

    #[test]
    fn ordinals_and_pairs() {
        assert_eq!(HfSet::ordinal(3).len(), 3);
        assert_eq!(HfSet::ordinal(3).as_ordinal(), Some(3));
        assert_eq!(HfSet::ordinal(300).as_ordinal(), Some(300));
        let p = HfSet::pair(HfSet::ordinal(1), HfSet::ordinal(4));
        assert_eq!(p.as_pair(), Some((HfSet::ordinal(1), HfSet::ordinal(4))));
        assert_eq!(p.as_ordinal(), None);
        let d = HfSet::pair(HfSet::ordinal(2), HfSet::ordinal(2));
        assert_eq!(d.as_pair(), Some((HfSet::ordinal(2), HfSet::ordinal(2))));
        assert_eq!(HfSet::ordinal(2).as_pair(), None);
    }

    #[test]
    fn sequences_round_trip() {
        let items = vec![HfSet::ordinal(2), HfSet::ordinal(0), HfSet::ordinal(2)];
        let s = HfSet::sequence(items.clone());
        assert_eq!(s.as_sequence(), Some(items));
        assert_eq!(HfSet::sequence([]).as_sequence(), Some(vec![]));
    }

    #[test]
    fn duplicates_collapse() {
        let a = HfSet::from_members([HfSet::ordinal(1), HfSet::ordinal(1), HfSet::empty()]);
        assert_eq!(a, HfSet::ordinal(2));
    }

    #[test]
    fn powerset_sizes() {
        assert_eq!(HfSet::ordinal(3).powerset().len(), 8);
        assert_eq!(HfSet::empty().powerset(), HfSet::ordinal(1));
    }
}

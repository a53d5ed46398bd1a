use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CombError;

/// Multiset as a map from element to multiplicity.
pub type Multiset<T> = BTreeMap<T, u64>;

/// A finite sequence of positive integers.
///
/// Ordering is lexicographic on parts, so `(1,1,1) < (1,2) < (2,1) < (3)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CombError> {
        if parts.contains(&0) {
            return Err(CombError::ZeroPart);
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// Builds from parts known to be positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.contains(&0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last_part(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// The reversed composition `Ī`.
    pub fn mirror(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn prefix(&self, k: usize) -> Self {
        Composition(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> Self {
        Composition(self.0[k..].to_vec())
    }

    /// All ways of writing `self = I₁·I₂⋯I_s` with nonempty factors; the
    /// empty composition has the single factorization with no factors.
    pub fn factorizations(&self) -> Vec<Vec<Composition>> {
        let l = self.len();
        if l == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::with_capacity(1 << (l - 1));
        for mask in 0u32..(1 << (l - 1)) {
            let mut pieces = Vec::new();
            let mut start = 0;
            for gap in 0..l - 1 {
                if mask & (1 << gap) != 0 {
                    pieces.push(Composition(self.0[start..=gap].to_vec()));
                    start = gap + 1;
                }
            }
            pieces.push(Composition(self.0[start..].to_vec()));
            out.push(pieces);
        }
        out.sort();
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join("."))
    }
}

impl FromStr for Composition {
    type Err = CombError;

    /// Dot-separated parts; `()` or the empty string is the empty composition.
    fn from_str(s: &str) -> Result<Self, CombError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Composition::empty());
        }
        let parts = s
            .split('.')
            .map(|p| p.trim().parse::<u32>().map_err(|_| CombError::Parse(format!("invalid composition {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All `2^{n−1}` compositions of `n` in lexicographic order; `[()]` for `n = 0`.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    fn go(n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            go(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn add_all(into: &mut Multiset<Vec<u32>>, head: u32, from: Multiset<Vec<u32>>) {
    for (mut w, k) in from {
        w.insert(0, head);
        *into.entry(w).or_insert(0) += k;
    }
}

fn seq_shuffle(a: &[u32], b: &[u32], merge: bool) -> Multiset<Vec<u32>> {
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b } else { a };
        return Multiset::from([(w.to_vec(), 1)]);
    }
    let mut out = Multiset::new();
    add_all(&mut out, a[0], seq_shuffle(&a[1..], b, merge));
    add_all(&mut out, b[0], seq_shuffle(a, &b[1..], merge));
    if merge {
        add_all(&mut out, a[0] + b[0], seq_shuffle(&a[1..], &b[1..], merge));
    }
    out
}

fn to_compositions(m: Multiset<Vec<u32>>) -> Multiset<Composition> {
    m.into_iter().map(|(w, k)| (Composition(w), k)).collect()
}

/// The quasi-shuffle `I ⋆ J` as a multiset.
pub fn quasi_shuffle(i: &Composition, j: &Composition) -> Multiset<Composition> {
    to_compositions(seq_shuffle(&i.0, &j.0, true))
}

/// The shuffle `I ⧢ J` of parts as a multiset.
pub fn shuffle(i: &Composition, j: &Composition) -> Multiset<Composition> {
    to_compositions(seq_shuffle(&i.0, &j.0, false))
}

/// All compositions obtained by summing runs of adjacent parts, sorted.
pub fn coarsenings(i: &Composition) -> Vec<Composition> {
    let set: BTreeSet<Composition> = i
        .factorizations()
        .into_iter()
        .map(|f| Composition(f.iter().map(Composition::weight).collect()))
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(compositions_of(0), vec![Composition::empty()]);
        assert_eq!(compositions_of(3), vec![c("1.1.1"), c("1.2"), c("2.1"), c("3")]);
        assert_eq!(compositions_of(5).len(), 16);
    }

    #[test]
    fn quasi_shuffle_examples() {
        let got = quasi_shuffle(&c("2"), &c("1.1"));
        let want = Multiset::from([(c("1.1.2"), 1), (c("1.2.1"), 1), (c("2.1.1"), 1), (c("1.3"), 1), (c("3.1"), 1)]);
        assert_eq!(got, want);
        assert_eq!(quasi_shuffle(&Composition::empty(), &c("2.1")), Multiset::from([(c("2.1"), 1)]));
        assert_eq!(quasi_shuffle(&c("1"), &c("1")), Multiset::from([(c("1.1"), 2), (c("2"), 1)]));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&c("2"), &c("3")), Multiset::from([(c("2.3"), 1), (c("3.2"), 1)]));
        assert_eq!(shuffle(&c("1.2"), &c("1")), Multiset::from([(c("1.1.2"), 2), (c("1.2.1"), 1)]));
        assert_eq!(shuffle(&Composition::empty(), &c("4")), Multiset::from([(c("4"), 1)]));
    }

    #[test]
    fn coarsening_examples() {
        assert_eq!(coarsenings(&c("1.2.2")), vec![c("1.2.2"), c("1.4"), c("3.2"), c("5")]);
        assert_eq!(coarsenings(&c("4")), vec![c("4")]);
        assert_eq!(coarsenings(&c("1.1.1")).len(), 4);
    }

    #[test]
    fn text_forms() {
        assert_eq!(c("1.2.2").to_string(), "1.2.2");
        assert_eq!(Composition::empty().to_string(), "()");
        assert!("1.0".parse::<Composition>().is_err());
        assert!("1..2".parse::<Composition>().is_err());
        assert_eq!(c("3").mirror(), c("3"));
        assert_eq!(c("1.2.3").mirror(), c("3.2.1"));
    }

    #[test]
    fn factorization_count() {
        assert_eq!(c("1.2.3.4").factorizations().len(), 8);
        assert_eq!(Composition::empty().factorizations(), vec![Vec::<Composition>::new()]);
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn comp() -> impl Strategy<Value = Composition> {
        prop::collection::vec(1u32..3, 0..3).prop_map(Composition)
    }

    fn lift(m: &Multiset<Composition>, k: &Composition, f: fn(&Composition, &Composition) -> Multiset<Composition>) -> Multiset<Composition> {
        let mut out = Multiset::new();
        for (x, a) in m {
            for (y, b) in f(x, k) {
                *out.entry(y).or_insert(0) += a * b;
            }
        }
        out
    }

    fn lift_left(k: &Composition, m: &Multiset<Composition>, f: fn(&Composition, &Composition) -> Multiset<Composition>) -> Multiset<Composition> {
        let mut out = Multiset::new();
        for (x, a) in m {
            for (y, b) in f(k, x) {
                *out.entry(y).or_insert(0) += a * b;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn shuffles_commute_and_associate(i in comp(), j in comp(), k in comp()) {
            for f in [quasi_shuffle as fn(&Composition, &Composition) -> Multiset<Composition>, shuffle] {
                prop_assert_eq!(f(&i, &j), f(&j, &i));
                let left = lift(&f(&i, &j), &k, f);
                let right = lift_left(&i, &f(&j, &k), f);
                prop_assert_eq!(left, right);
            }
            let total: u64 = shuffle(&i, &j).values().sum();
            prop_assert_eq!(total, binom((i.len() + j.len()) as u64, i.len() as u64));
            prop_assert!(quasi_shuffle(&i, &j).keys().all(|x| x.weight() == i.weight() + j.weight()));
        }
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CombError, Composition, Permutation};

/// A word whose set of letters is `{1,…,d}` for some `d ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedWord(Vec<u32>);

/// Order-preserving relabeling of the letter values onto `{1,…,d}`.
pub fn pack(word: &[u32]) -> PackedWord {
    let values: BTreeSet<u32> = word.iter().copied().collect();
    let rank: Vec<u32> = values.into_iter().collect();
    PackedWord(
        word.iter()
            .map(|x| rank.binary_search(x).expect("letter present") as u32 + 1)
            .collect(),
    )
}

impl PackedWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, CombError> {
        if pack(&letters).0 != letters || letters.contains(&0) {
            return Err(CombError::NotPacked(letters.iter().map(u32::to_string).collect::<Vec<_>>().join(".")));
        }
        Ok(PackedWord(letters))
    }

    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `eval(u)`: the number of occurrences of each letter `1,…,d`.
    pub fn eval(&self) -> Composition {
        let mut counts = vec![0u32; self.max_letter() as usize];
        for &x in &self.0 {
            counts[x as usize - 1] += 1;
        }
        Composition::from_parts_unchecked(counts)
    }

    /// `u↑`: the nondecreasing rearrangement.
    pub fn sorted(&self) -> PackedWord {
        let mut v = self.0.clone();
        v.sort_unstable();
        PackedWord(v)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// `σ_u`: the lexicographically smallest permutation with `u↑ · σ_u = u`
    /// under the place action `(w·σ)_k = w_{σ(k)}`.
    pub fn sort_permutation(&self) -> Permutation {
        let up = self.sorted().0;
        let mut next: Vec<usize> = vec![usize::MAX; self.max_letter() as usize + 1];
        for (pos, &x) in up.iter().enumerate().rev() {
            next[x as usize] = pos;
        }
        let images = self
            .0
            .iter()
            .map(|&x| {
                let p = next[x as usize];
                next[x as usize] += 1;
                p as u32 + 1
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Applies the place action `(u·σ)_k = u_{σ(k)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<PackedWord, CombError> {
        if sigma.size() != self.len() {
            return Err(CombError::SizeMismatch { expected: self.len(), found: sigma.size() });
        }
        Ok(PackedWord(sigma.images().iter().map(|&i| self.0[i as usize - 1]).collect()))
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.0.iter().all(|&x| x <= 9) { "" } else { "." };
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(sep))
    }
}

impl FromStr for PackedWord {
    type Err = CombError;

    /// Either a run of single digits (`132212`) or dot-separated letters.
    fn from_str(s: &str) -> Result<Self, CombError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(PackedWord::empty());
        }
        let bad = || CombError::Parse(format!("invalid packed word {s:?}"));
        let letters: Vec<u32> = if s.contains('.') {
            s.split('.').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        PackedWord::new(letters)
    }
}

impl Serialize for PackedWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PackedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All packed words of length `n` in lexicographic order.
pub fn packed_words(n: usize) -> Vec<PackedWord> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(PackedWord::empty());
        return out;
    }
    // Odometer over [n]^n, keeping packed words.
    let mut w = vec![1u32; n];
    loop {
        let mut seen = vec![false; n + 1];
        for &x in &w {
            seen[x as usize] = true;
        }
        let m = *w.iter().max().expect("nonempty");
        if (1..=m as usize).all(|k| seen[k]) {
            out.push(PackedWord(w.clone()));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (w[i] as usize) < n {
                w[i] += 1;
                for x in w.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// Block-count filter for set compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    All,
    Odd,
    Even,
}

impl Parity {
    pub fn accepts(self, blocks: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => blocks % 2 == 1,
            Parity::Even => blocks % 2 == 0,
        }
    }
}

/// An ordered partition of `{1,…,n}` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetComposition {
    blocks: Vec<BTreeSet<u32>>,
    ground_size: u32,
}

impl SetComposition {
    pub fn new(blocks: Vec<BTreeSet<u32>>) -> Result<Self, CombError> {
        let n: usize = blocks.iter().map(BTreeSet::len).sum();
        let union: BTreeSet<u32> = blocks.iter().flatten().copied().collect();
        if blocks.iter().any(BTreeSet::is_empty) {
            return Err(CombError::InvalidSetComposition("empty block".into()));
        }
        if union.len() != n || union != (1..=n as u32).collect() {
            return Err(CombError::InvalidSetComposition("blocks must partition {1,…,n}".into()));
        }
        Ok(SetComposition { blocks, ground_size: n as u32 })
    }

    /// Block `j` holds the positions of letter `j`.
    pub fn from_packed_word(u: &PackedWord) -> Self {
        let mut blocks = vec![BTreeSet::new(); u.max_letter() as usize];
        for (pos, &x) in u.letters().iter().enumerate() {
            blocks[x as usize - 1].insert(pos as u32 + 1);
        }
        SetComposition { blocks, ground_size: u.len() as u32 }
    }

    pub fn to_packed_word(&self) -> PackedWord {
        let mut w = vec![0u32; self.ground_size as usize];
        for (j, b) in self.blocks.iter().enumerate() {
            for &x in b {
                w[x as usize - 1] = j as u32 + 1;
            }
        }
        PackedWord(w)
    }

    pub fn blocks(&self) -> &[BTreeSet<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", s.join("|"))
    }
}

impl FromStr for SetComposition {
    type Err = CombError;

    fn from_str(s: &str) -> Result<Self, CombError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return SetComposition::new(Vec::new());
        }
        let bad = || CombError::Parse(format!("invalid set composition {s:?}"));
        let blocks = s
            .split('|')
            .map(|b| {
                let inner = b.trim().strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(bad)?;
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<BTreeSet<u32>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetComposition::new(blocks)
    }
}

/// Set compositions of `{1,…,n}` with a block count of the given parity,
/// ordered by their packed words.
pub fn set_compositions(n: usize, parity: Parity) -> Vec<SetComposition> {
    packed_words(n)
        .iter()
        .filter(|u| parity.accepts(u.max_letter() as usize))
        .map(SetComposition::from_packed_word)
        .collect()
}

/// Ordered Bell numbers by `OB(n) = Σ_{j≥1} C(n,j)·OB(n−j)`.
pub fn ordered_bell(n: usize) -> u64 {
    let mut ob = vec![1u64];
    for k in 1..=n {
        let mut binom = 1u64;
        let mut s = 0u64;
        for j in 1..=k {
            binom = binom * (k - j + 1) as u64 / j as u64;
            s += binom * ob[k - j];
        }
        ob.push(s);
    }
    ob[n]
}

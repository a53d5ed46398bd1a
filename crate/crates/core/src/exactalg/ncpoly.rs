use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::text::{self, Factor};
use super::{AlgError, CommPoly, Monomial, Polynomial, Scalar, Var, VarFamily};

/// Families of noncommuting letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterFamily {
    A,
    B,
    D,
}

impl LetterFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            LetterFamily::A => "a",
            LetterFamily::B => "b",
            LetterFamily::D => "d",
        }
    }

    fn from_prefix(s: &str) -> Option<Self> {
        Some(match s {
            "a" => LetterFamily::A,
            "b" => LetterFamily::B,
            "d" => LetterFamily::D,
            _ => return None,
        })
    }

    /// The commuting family a letter becomes when order is forgotten.
    pub fn commutative(self) -> VarFamily {
        match self {
            LetterFamily::A => VarFamily::X,
            LetterFamily::B => VarFamily::P,
            LetterFamily::D => VarFamily::Q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub family: LetterFamily,
    pub index: u32,
}

impl Letter {
    pub fn new(family: LetterFamily, index: u32) -> Self {
        Letter { family, index }
    }
    pub fn a(i: u32) -> Self {
        Letter::new(LetterFamily::A, i)
    }
    pub fn b(i: u32) -> Self {
        Letter::new(LetterFamily::B, i)
    }
    pub fn d(i: u32) -> Self {
        Letter::new(LetterFamily::D, i)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

impl FromStr for Letter {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, idx) = s.split_at(split);
        let family = LetterFamily::from_prefix(name)
            .ok_or_else(|| AlgError::Parse(format!("unknown letter {s:?}")))?;
        let index = idx
            .parse()
            .map_err(|_| AlgError::Parse(format!("bad letter index in {s:?}")))?;
        Ok(Letter { family, index })
    }
}

pub type Word = Vec<Letter>;

/// Sparse polynomial in noncommuting letters with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::term(Vec::new(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NCPoly::term(Vec::new(), c)
    }

    pub fn letter(l: Letter) -> Self {
        NCPoly::term(vec![l], Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Vec::len);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn families(&self) -> BTreeSet<LetterFamily> {
        self.letters().into_iter().map(|l| l.family).collect()
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces letters by polynomials, keeping the order of factors in each word.
    pub fn substitute(&self, bindings: &BTreeMap<Letter, NCPoly>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(c.clone());
            for l in w {
                acc = match bindings.get(l) {
                    Some(b) => &acc * b,
                    None => NCPoly {
                        terms: acc
                            .terms
                            .into_iter()
                            .map(|(mut v, a)| {
                                v.push(*l);
                                (v, a)
                            })
                            .collect(),
                    },
                };
                if acc.is_zero() {
                    break;
                }
            }
            for (v, a) in acc.terms {
                out.add_term(v, a);
            }
        }
        out
    }

    /// Position permutation: the new word has at place `k` the old letter at
    /// place `images[k]` (1-based), so `w` becomes `w ∘ images`.
    pub fn permute_positions(&self, images: &[u32]) -> Result<NCPoly, AlgError> {
        let n = images.len();
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            if w.len() != n {
                return Err(AlgError::DegreeMismatch { expected: n, found: w.len() });
            }
            let v: Word = images.iter().map(|&i| w[i as usize - 1]).collect();
            out.insert(v, c.clone());
        }
        Ok(NCPoly { terms: out })
    }

    /// Forgets the order of letters, sending `a, b, d` to `x, p, q`.
    pub fn commutative_image(&self) -> CommPoly {
        let mut out = CommPoly::zero();
        for (w, c) in &self.terms {
            let m = Monomial::from_factors(
                w.iter().map(|l| (Var::new(l.family.commutative(), l.index), 1)),
            );
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn parse(s: &str) -> Result<NCPoly, AlgError> {
        let mut out = NCPoly::zero();
        for (c, factors) in text::parse_sum(s)? {
            let mut word = Vec::new();
            for Factor { name, index, exp } in factors {
                let family = LetterFamily::from_prefix(&name)
                    .ok_or_else(|| AlgError::Parse(format!("unknown letter family {name:?}")))?;
                for _ in 0..exp {
                    word.push(Letter::new(family, index));
                }
            }
            out.add_term(word, c);
        }
        Ok(out)
    }
}

fn word_text(w: &[Letter]) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if i > 0 {
            s.push('*');
        }
        s.push_str(&w[i].to_string());
        if j - i > 1 {
            s.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    s
}

const NC_GROUPS: &[&[&str]] = &[&["a"], &["b", "d"]];

impl Polynomial for NCPoly {
    type Key = Word;

    fn zero() -> Self {
        NCPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn entries(&self) -> Vec<(Word, Scalar)> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect()
    }
    fn scale(&self, c: &Scalar) -> Self {
        NCPoly::scale(self, c)
    }
    fn add_unchecked(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_unchecked(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_unchecked(&self, other: &Self) -> Self {
        self * other
    }
    fn group_labels(&self) -> Vec<&'static str> {
        self.families().into_iter().map(LetterFamily::prefix).collect()
    }
    fn compatible(a: &[&'static str], b: &[&'static str]) -> bool {
        let all: BTreeSet<&str> = a.iter().chain(b).copied().collect();
        all.is_empty() || NC_GROUPS.iter().any(|g| all.iter().all(|x| g.contains(x)))
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl std::iter::Sum for NCPoly {
    fn sum<I: Iterator<Item = NCPoly>>(iter: I) -> NCPoly {
        let mut out = NCPoly::zero();
        for p in iter {
            for (k, c) in p.terms {
                out.add_term(k, c);
            }
        }
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, x) in &self.terms {
            for (v, y) in &rhs.terms {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, x * y);
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sum(
            f,
            self.terms.iter().map(|(w, c)| (c, if w.is_empty() { None } else { Some(word_text(w)) })),
        )
    }
}

impl FromStr for NCPoly {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        NCPoly::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    word: Vec<String>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| JsonTerm {
                word: w.iter().map(Letter::to_string).collect(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        JsonPoly { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = JsonPoly::deserialize(d)?;
        let mut out = NCPoly::zero();
        for t in raw.terms {
            let word = t
                .word
                .iter()
                .map(|s| s.parse::<Letter>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            let c: Scalar = format!("{}/{}", t.num, t.den).parse().map_err(D::Error::custom)?;
            out.add_term(word, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> NCPoly {
        NCPoly::letter(Letter::a(i))
    }

    #[test]
    fn noncommutative() {
        assert_ne!(&a(1) * &a(2), &a(2) * &a(1));
        assert_eq!((&a(1) * &a(2)).commutative_image(), (&a(2) * &a(1)).commutative_image());
    }

    #[test]
    fn substitution_keeps_order() {
        let f = &(&a(1) * &a(2)) * &a(1);
        let bd = &NCPoly::letter(Letter::b(1)) - &NCPoly::letter(Letter::d(1));
        let g = f.substitute(&BTreeMap::from([(Letter::a(1), bd.clone())]));
        assert_eq!(g.len(), 4);
        assert_eq!(g, &(&bd * &a(2)) * &bd);
        assert_eq!(g.coeff(&[Letter::b(1), Letter::a(2), Letter::d(1)]), Scalar::from_int(-1));
    }

    #[test]
    fn position_permutation() {
        let w = NCPoly::term(vec![Letter::a(1), Letter::a(2), Letter::a(3), Letter::a(4)], Scalar::one());
        let v = w.permute_positions(&[3, 1, 2, 4]).unwrap();
        assert_eq!(v, NCPoly::term(vec![Letter::a(3), Letter::a(1), Letter::a(2), Letter::a(4)], Scalar::one()));
        assert!(w.permute_positions(&[1, 2]).is_err());
    }

    #[test]
    fn text_and_json() {
        let f = NCPoly::parse("2*a1*a2^2 - b1*d3 + 1/2").unwrap();
        assert_eq!(f.to_string(), "1/2 + 2*a1*a2^2 - b1*d3");
        assert_eq!(NCPoly::parse(&f.to_string()).unwrap(), f);
        let g: NCPoly = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(f, g);
    }
}

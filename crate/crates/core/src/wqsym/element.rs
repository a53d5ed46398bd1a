use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{pack, CombError, PackedWord, Permutation};
use crate::exactalg::Scalar;
use crate::qsym::{parse_basis_sum, write_basis_sum, QSymElement};

use super::WQSymError;

/// A finitely supported linear combination of `P_u`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WQSymElement {
    coeffs: BTreeMap<PackedWord, Scalar>,
}

/// The `k`-subsets of `{1,…,n}` in lexicographic order.
pub(crate) fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len() as u32;
        for x in start..=n {
            if n - x + 1 < need {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl WQSymElement {
    pub fn zero() -> Self {
        WQSymElement::default()
    }

    pub fn one() -> Self {
        WQSymElement::basis(PackedWord::empty())
    }

    pub fn basis(u: PackedWord) -> Self {
        WQSymElement::term(u, Scalar::one())
    }

    pub fn term(u: PackedWord, c: Scalar) -> Self {
        let mut f = WQSymElement::zero();
        f.add_term(u, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (PackedWord, Scalar)>>(terms: I) -> Self {
        let mut f = WQSymElement::zero();
        for (u, c) in terms {
            f.add_term(u, c);
        }
        f
    }

    pub fn add_term(&mut self, u: PackedWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(u) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<PackedWord, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, u: &PackedWord) -> Scalar {
        self.coeffs.get(u).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        WQSymElement::from_terms(self.coeffs.iter().map(|(u, x)| (u.clone(), x * c)))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.coeffs.keys().map(PackedWord::len);
        match lens.next() {
            Some(l) => lens.all(|k| k == l),
            None => true,
        }
    }

    /// The product on packed words: `P_u·P_v` sums `P_w` over the packed `w`
    /// whose prefix of length `|u|` packs to `u` and whose suffix packs to `v`.
    pub fn product(&self, other: &WQSymElement) -> WQSymElement {
        let mut out = WQSymElement::zero();
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                let c = a * b;
                for w in packed_concatenations(u, v) {
                    out.add_term(w, c.clone());
                }
            }
        }
        out
    }

    /// The place action `P_u·σ = P_{u·σ}`.
    pub fn act(&self, sigma: &Permutation) -> Result<WQSymElement, CombError> {
        let mut out = WQSymElement::zero();
        for (u, c) in &self.coeffs {
            out.add_term(u.act(sigma)?, c.clone());
        }
        Ok(out)
    }

    /// `δ(P_u) = P_v` when `u = v·(max v + 1)`, and `0` otherwise.
    pub fn delta(&self) -> WQSymElement {
        let mut out = WQSymElement::zero();
        for (u, c) in &self.coeffs {
            let Some((&last, v)) = u.letters().split_last() else {
                continue;
            };
            let vmax = v.iter().copied().max().unwrap_or(0);
            if last == vmax + 1 {
                out.add_term(PackedWord::new(v.to_vec()).expect("prefix of a packed word ending in a new maximum"), c.clone());
            }
        }
        out
    }

    /// The commutative image `P_u ↦ M_{eval(u)}`.
    pub fn commutative_image(&self) -> QSymElement {
        QSymElement::from_terms(self.coeffs.iter().map(|(u, c)| (u.eval(), c.clone())))
    }

    /// Parses `c*P:u + P:v - …`; `P:()` is the unit.
    pub fn parse(s: &str) -> Result<WQSymElement, WQSymError> {
        let mut out = WQSymElement::zero();
        for (c, key) in parse_basis_sum(s, "P")? {
            let u: PackedWord = key.parse()?;
            out.add_term(u, c);
        }
        Ok(out)
    }
}

/// Packed words `w` of length `|u|+|v|` with `pack(w[..|u|]) = u` and
/// `pack(w[|u|..]) = v`.
pub(crate) fn packed_concatenations(u: &PackedWord, v: &PackedWord) -> Vec<PackedWord> {
    let (a, b) = (u.max_letter(), v.max_letter());
    let mut out = Vec::new();
    for k in a.max(b)..=a + b {
        for left in subsets(k, a) {
            let missing: Vec<u32> = (1..=k).filter(|x| !left.contains(x)).collect();
            let Some(extra) = b.checked_sub(missing.len() as u32) else {
                continue;
            };
            for chosen in subsets(a, extra) {
                let mut right = missing.clone();
                right.extend(chosen.iter().map(|&j| left[j as usize - 1]));
                right.sort_unstable();
                let mut w: Vec<u32> = u.letters().iter().map(|&x| left[x as usize - 1]).collect();
                w.extend(v.letters().iter().map(|&x| right[x as usize - 1]));
                out.push(pack(&w));
            }
        }
    }
    out
}

impl fmt::Display for WQSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_basis_sum(f, "P", self.coeffs.iter().map(|(u, c)| (u.to_string(), c)))
    }
}

impl FromStr for WQSymElement {
    type Err = WQSymError;
    fn from_str(s: &str) -> Result<Self, WQSymError> {
        WQSymElement::parse(s)
    }
}

impl Add<&WQSymElement> for &WQSymElement {
    type Output = WQSymElement;
    fn add(self, rhs: &WQSymElement) -> WQSymElement {
        let mut out = self.clone();
        for (u, c) in &rhs.coeffs {
            out.add_term(u.clone(), c.clone());
        }
        out
    }
}

impl Sub<&WQSymElement> for &WQSymElement {
    type Output = WQSymElement;
    fn sub(self, rhs: &WQSymElement) -> WQSymElement {
        let mut out = self.clone();
        for (u, c) in &rhs.coeffs {
            out.add_term(u.clone(), -c);
        }
        out
    }
}

impl Mul<&WQSymElement> for &WQSymElement {
    type Output = WQSymElement;
    fn mul(self, rhs: &WQSymElement) -> WQSymElement {
        self.product(rhs)
    }
}

impl Neg for &WQSymElement {
    type Output = WQSymElement;
    fn neg(self) -> WQSymElement {
        self.scale(&Scalar::from_int(-1))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonWQSym {
    #[serde(rename = "P")]
    p: BTreeMap<String, Scalar>,
}

impl Serialize for WQSymElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonWQSym { p: self.coeffs.iter().map(|(u, c)| (u.to_string(), c.clone())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WQSymElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = JsonWQSym::deserialize(d)?;
        let mut out = WQSymElement::zero();
        for (k, c) in raw.p {
            out.add_term(k.parse().map_err(serde::de::Error::custom)?, c);
        }
        Ok(out)
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{coarsenings, quasi_shuffle, Composition};
use crate::exactalg::Scalar;

use super::QSymError;

/// A finitely supported linear combination of monomial functions `M_I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QSymElement {
    coeffs: BTreeMap<Composition, Scalar>,
}

/// One summand `weight · M_left ⊗ M_right` of a coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub weight: Scalar,
    pub left: Composition,
    pub right: Composition,
}

impl QSymElement {
    pub fn zero() -> Self {
        QSymElement::default()
    }

    pub fn one() -> Self {
        QSymElement::monomial(Composition::empty())
    }

    pub fn monomial(i: Composition) -> Self {
        QSymElement::term(i, Scalar::one())
    }

    pub fn term(i: Composition, c: Scalar) -> Self {
        let mut f = QSymElement::zero();
        f.add_term(i, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Composition, Scalar)>>(terms: I) -> Self {
        let mut f = QSymElement::zero();
        for (i, c) in terms {
            f.add_term(i, c);
        }
        f
    }

    pub fn add_term(&mut self, i: Composition, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(i) {
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

    pub fn coeffs(&self) -> &BTreeMap<Composition, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, i: &Composition) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        QSymElement::from_terms(self.coeffs.iter().map(|(i, a)| (i.clone(), a * c)))
    }

    pub fn homogeneous_component(&self, n: u32) -> Self {
        QSymElement {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.weight() == n)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.coeffs.keys().map(Composition::weight);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Coefficient of `M_()`.
    pub fn counit(&self) -> Scalar {
        self.coeff(&Composition::empty())
    }

    /// `M_I · M_J = Σ_{K ∈ I⋆J} M_K`, extended bilinearly.
    pub fn product(&self, other: &QSymElement) -> QSymElement {
        let mut out = QSymElement::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let ab = a * b;
                for (k, mult) in quasi_shuffle(i, j) {
                    out.add_term(k, &ab * &Scalar::from(mult as usize));
                }
            }
        }
        out
    }

    /// Deconcatenation `Δ(M_I) = Σ_k M_{i₁…i_k} ⊗ M_{i_{k+1}…i_r}`, collected
    /// and listed in order of `(left, right)`.
    pub fn coproduct(&self) -> Vec<TensorTerm> {
        let mut acc: BTreeMap<(Composition, Composition), Scalar> = BTreeMap::new();
        for (i, c) in &self.coeffs {
            for k in 0..=i.len() {
                let e = acc.entry((i.prefix(k), i.suffix(k))).or_default();
                *e += c;
            }
        }
        acc.into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|((left, right), weight)| TensorTerm { weight, left, right })
            .collect()
    }

    /// `S(M_I) = (−1)^{ℓ(I)} Σ_{J coarsening of I} M_{J̄}`.
    pub fn antipode(&self) -> QSymElement {
        let mut out = QSymElement::zero();
        for (i, c) in &self.coeffs {
            let s = c * &Scalar::sign_pow(i.len());
            for j in coarsenings(i) {
                out.add_term(j.mirror(), s.clone());
            }
        }
        out
    }

    /// Parses `c*M:I + M:J - …`; `M:()` is the unit.
    pub fn parse(s: &str) -> Result<QSymElement, QSymError> {
        let mut out = QSymElement::zero();
        for (c, key) in parse_basis_sum(s, "M")? {
            let i: Composition = key.parse()?;
            out.add_term(i, c);
        }
        Ok(out)
    }
}

/// Splits `c*B:key ± …` into coefficients and keys for basis prefix `B`.
pub(crate) fn parse_basis_sum(s: &str, prefix: &str) -> Result<Vec<(Scalar, String)>, QSymError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || QSymError::Parse(format!("invalid {prefix}-expression {s:?}"));
    if compact.is_empty() {
        return Err(bad());
    }
    let mut pieces = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if ch == '+' || ch == '-' {
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if !pieces.is_empty() {
                return Err(bad());
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    pieces.push((neg, cur));
    let tag = format!("{prefix}:");
    let mut out = Vec::new();
    for (neg, piece) in pieces {
        let (coef, key) = match piece.find(&tag) {
            Some(0) => (Scalar::one(), piece[tag.len()..].to_string()),
            Some(p) => {
                let c = piece[..p].strip_suffix('*').ok_or_else(bad)?;
                (c.parse::<Scalar>().map_err(|_| bad())?, piece[p + tag.len()..].to_string())
            }
            None => (piece.parse::<Scalar>().map_err(|_| bad())?, "()".to_string()),
        };
        out.push((if neg { -coef } else { coef }, key));
    }
    Ok(out)
}

pub(crate) fn write_basis_sum<'a, I>(f: &mut fmt::Formatter<'_>, prefix: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (key, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if abs.is_one() {
            write!(f, "{prefix}:{key}")?;
        } else {
            write!(f, "{abs}*{prefix}:{key}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_basis_sum(f, "M", self.coeffs.iter().map(|(i, c)| (i.to_string(), c)))
    }
}

impl FromStr for QSymElement {
    type Err = QSymError;
    fn from_str(s: &str) -> Result<Self, QSymError> {
        QSymElement::parse(s)
    }
}

impl Add<&QSymElement> for &QSymElement {
    type Output = QSymElement;
    fn add(self, rhs: &QSymElement) -> QSymElement {
        let mut out = self.clone();
        for (i, c) in &rhs.coeffs {
            out.add_term(i.clone(), c.clone());
        }
        out
    }
}

impl Sub<&QSymElement> for &QSymElement {
    type Output = QSymElement;
    fn sub(self, rhs: &QSymElement) -> QSymElement {
        let mut out = self.clone();
        for (i, c) in &rhs.coeffs {
            out.add_term(i.clone(), -c);
        }
        out
    }
}

impl Mul<&QSymElement> for &QSymElement {
    type Output = QSymElement;
    fn mul(self, rhs: &QSymElement) -> QSymElement {
        self.product(rhs)
    }
}

impl Neg for &QSymElement {
    type Output = QSymElement;
    fn neg(self) -> QSymElement {
        self.scale(&Scalar::from_int(-1))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonQSym {
    #[serde(rename = "M")]
    m: BTreeMap<String, Scalar>,
}

impl Serialize for QSymElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonQSym { m: self.coeffs.iter().map(|(i, c)| (i.to_string(), c.clone())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSymElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = JsonQSym::deserialize(d)?;
        let mut out = QSymElement::zero();
        for (k, c) in raw.m {
            out.add_term(k.parse().map_err(serde::de::Error::custom)?, c);
        }
        Ok(out)
    }
}

/// Product of tensor sums in `QSym ⊗ QSym`.
pub fn tensor_product(a: &[TensorTerm], b: &[TensorTerm]) -> Vec<TensorTerm> {
    let mut acc: BTreeMap<(Composition, Composition), Scalar> = BTreeMap::new();
    for x in a {
        for y in b {
            let w = &x.weight * &y.weight;
            for (l, ml) in quasi_shuffle(&x.left, &y.left) {
                for (r, mr) in quasi_shuffle(&x.right, &y.right) {
                    *acc.entry((l.clone(), r)).or_default() += &w * &Scalar::from((ml * mr) as usize);
                }
            }
        }
    }
    acc.into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|((left, right), weight)| TensorTerm { weight, left, right })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::compositions_of;

    fn m(s: &str) -> QSymElement {
        QSymElement::monomial(s.parse().unwrap())
    }

    #[test]
    fn product_examples() {
        assert_eq!(&m("2") * &m("1.1"), QSymElement::parse("M:1.1.2 + M:1.2.1 + M:2.1.1 + M:1.3 + M:3.1").unwrap());
        assert_eq!(&m("1") * &m("1"), QSymElement::parse("2*M:1.1 + M:2").unwrap());
        let f = QSymElement::parse("3*M:2.1 - 1/2*M:1").unwrap();
        assert_eq!(&QSymElement::one() * &f, f);
    }

    #[test]
    fn coproduct_examples() {
        let got = m("2.1").coproduct();
        let pairs: Vec<(String, String)> = got.iter().map(|t| (t.left.to_string(), t.right.to_string())).collect();
        assert_eq!(pairs, [("()", "2.1"), ("2", "1"), ("2.1", "()")].map(|(a, b)| (a.to_string(), b.to_string())));
        assert!(got.iter().all(|t| t.weight.is_one()));
        let unit = QSymElement::one().coproduct();
        assert_eq!(unit.len(), 1);
        assert!(unit[0].left.is_empty() && unit[0].right.is_empty());
    }

    #[test]
    fn antipode_example() {
        assert_eq!(m("1.2.2").antipode(), QSymElement::parse("-M:2.2.1 - M:4.1 - M:2.3 - M:5").unwrap());
        assert_eq!(QSymElement::one().antipode(), QSymElement::one());
    }

    #[test]
    fn counit_axiom() {
        for i in compositions_of(3) {
            let f = QSymElement::monomial(i);
            let mut left = QSymElement::zero();
            let mut right = QSymElement::zero();
            for t in f.coproduct() {
                if t.left.is_empty() {
                    left.add_term(t.right.clone(), t.weight.clone());
                }
                if t.right.is_empty() {
                    right.add_term(t.left.clone(), t.weight.clone());
                }
            }
            assert_eq!(left, f);
            assert_eq!(right, f);
        }
    }

    #[test]
    fn text_and_json() {
        let f = QSymElement::parse("-M:1.2.2 + 2/3*M:5 + 4").unwrap();
        assert_eq!(f.to_string(), "4*M:() - M:1.2.2 + 2/3*M:5");
        assert_eq!(QSymElement::parse(&f.to_string()).unwrap(), f);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"M":{"()":"4","1.2.2":"-1","5":"2/3"}}"#);
        assert_eq!(serde_json::from_str::<QSymElement>(&j).unwrap(), f);
        assert!(QSymElement::parse("M:1.0").is_err());
        assert!(QSymElement::parse("M:1 +").is_err());
    }
}

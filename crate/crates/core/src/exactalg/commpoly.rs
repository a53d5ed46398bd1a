use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::text::{self, Factor};
use super::{AlgError, Polynomial, Scalar};

/// Named families of commuting variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarFamily {
    X,
    P,
    Q,
    QPrime,
    U,
    Y,
}

impl VarFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            VarFamily::X => "x",
            VarFamily::P => "p",
            VarFamily::Q => "q",
            VarFamily::QPrime => "q'",
            VarFamily::U => "u",
            VarFamily::Y => "y",
        }
    }

    fn from_prefix(s: &str) -> Option<Self> {
        Some(match s {
            "x" => VarFamily::X,
            "p" => VarFamily::P,
            "q" => VarFamily::Q,
            "q'" => VarFamily::QPrime,
            "u" => VarFamily::U,
            "y" => VarFamily::Y,
            _ => return None,
        })
    }
}

/// An indexed commuting variable such as `x3` or `q'2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: VarFamily,
    pub index: u32,
}

impl Var {
    pub fn new(family: VarFamily, index: u32) -> Self {
        Var { family, index }
    }
    pub fn x(i: u32) -> Self {
        Var::new(VarFamily::X, i)
    }
    pub fn p(i: u32) -> Self {
        Var::new(VarFamily::P, i)
    }
    pub fn q(i: u32) -> Self {
        Var::new(VarFamily::Q, i)
    }
    pub fn qp(i: u32) -> Self {
        Var::new(VarFamily::QPrime, i)
    }
    pub fn u(i: u32) -> Self {
        Var::new(VarFamily::U, i)
    }
    pub fn y(i: u32) -> Self {
        Var::new(VarFamily::Y, i)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

impl FromStr for Var {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, idx) = s.split_at(split);
        let family = VarFamily::from_prefix(name)
            .ok_or_else(|| AlgError::Parse(format!("unknown variable {s:?}")))?;
        let index = idx
            .parse()
            .map_err(|_| AlgError::Parse(format!("bad variable index in {s:?}")))?;
        Ok(Var { family, index })
    }
}

/// A monomial: variables in increasing order with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in commuting variables with exact rational coefficients.
///
/// No zero coefficient is ever stored, so equality of term maps is equality
/// of polynomials, and a truncation with trailing variables set to zero is
/// literally the smaller truncation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        CommPoly::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        CommPoly::term(Monomial::var(v), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
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

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn families(&self) -> BTreeSet<VarFamily> {
        self.vars().into_iter().map(|v| v.family).collect()
    }

    pub fn scale(&self, c: &Scalar) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CommPoly {
        let mut acc = CommPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution; unbound variables pass through unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<Var, CommPoly>) -> CommPoly {
        let mut powers: HashMap<(Var, u32), CommPoly> = HashMap::new();
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = CommPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match bindings.get(&v) {
                    None => kept.push((v, e)),
                    Some(b) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                        acc = &acc * pw;
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            let rest = Monomial(kept);
            for (k, a) in acc.terms {
                out.add_term(k.mul(&rest), a);
            }
        }
        out
    }

    /// Substitution by constants for every variable; fails on an unbound one.
    pub fn evaluate(&self, values: &BTreeMap<Var, Scalar>) -> Result<Scalar, AlgError> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let x = values.get(&v).ok_or_else(|| AlgError::Unbound(v.to_string()))?;
                t *= &x.pow(e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Renames variables by `f`, merging exponents if two names collide.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let k = Monomial::from_factors(m.factors().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(k, c.clone());
        }
        out
    }

    /// Sets every variable satisfying `pred` to zero.
    pub fn set_zero(&self, pred: impl Fn(Var) -> bool) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.factors().iter().any(|&(v, _)| pred(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn group_set(&self) -> Vec<&'static str> {
        self.families().into_iter().map(VarFamily::prefix).collect()
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(s: &str) -> Result<CommPoly, AlgError> {
        let mut out = CommPoly::zero();
        for (c, factors) in text::parse_sum(s)? {
            let mut vars = Vec::new();
            for Factor { name, index, exp } in factors {
                let family = VarFamily::from_prefix(&name)
                    .ok_or_else(|| AlgError::Parse(format!("unknown variable family {name:?}")))?;
                vars.push((Var::new(family, index), exp));
            }
            out.add_term(Monomial::from_factors(vars), c);
        }
        Ok(out)
    }
}

const COMM_GROUPS: &[&[&str]] = &[&["x"], &["p", "q"], &["p", "q'"], &["u"], &["y"]];

impl Polynomial for CommPoly {
    type Key = Monomial;

    fn zero() -> Self {
        CommPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn entries(&self) -> Vec<(Monomial, Scalar)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }
    fn scale(&self, c: &Scalar) -> Self {
        CommPoly::scale(self, c)
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
        self.group_set()
    }
    fn compatible(a: &[&'static str], b: &[&'static str]) -> bool {
        let all: BTreeSet<&str> = a.iter().chain(b).copied().collect();
        all.is_empty() || COMM_GROUPS.iter().any(|g| all.iter().all(|x| g.contains(x)))
    }
}

impl Add<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for CommPoly {
    type Output = CommPoly;
    fn add(mut self, rhs: CommPoly) -> CommPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl std::iter::Sum for CommPoly {
    fn sum<I: Iterator<Item = CommPoly>>(iter: I) -> CommPoly {
        let mut out = CommPoly::zero();
        for p in iter {
            for (k, c) in p.terms {
                out.add_term(k, c);
            }
        }
        out
    }
}

impl Sub<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: CommPoly) -> CommPoly {
        &self - &rhs
    }
}

impl Mul<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Mul for CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: CommPoly) -> CommPoly {
        &self * &rhs
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        -&self
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sum(
            f,
            self.terms.iter().map(|(m, c)| (c, if m.is_one() { None } else { Some(m.to_string()) })),
        )
    }
}

impl FromStr for CommPoly {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        CommPoly::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    mono: BTreeMap<String, u32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    terms: Vec<JsonTerm>,
}

impl Serialize for CommPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                mono: m.factors().iter().map(|(v, e)| (v.to_string(), *e)).collect(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        JsonPoly { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CommPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = JsonPoly::deserialize(d)?;
        let mut out = CommPoly::zero();
        for t in raw.terms {
            let mut factors = Vec::new();
            for (name, e) in t.mono {
                factors.push((name.parse::<Var>().map_err(D::Error::custom)?, e));
            }
            let c: Scalar = format!("{}/{}", t.num, t.den).parse().map_err(D::Error::custom)?;
            out.add_term(Monomial::from_factors(factors), c);
        }
        Ok(out)
    }
}

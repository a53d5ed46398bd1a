//! Evaluation of quasi-symmetric functions on signed ordinal sums of
//! one-letter alphabets.
//!
//! Evaluating `M_I` on `A₁ ⊕ A₂ ⊕ ⋯` splits `I` into consecutive blocks, one
//! per summand. On a one-letter alphabet `⊕(y)`, `M_B(y)` is `y^{|B|}` when
//! `ℓ(B) ≤ 1` and `0` otherwise. On `⊖(y)` it is `S(M_B)(y)`; every term of
//! the antipode has some coarsening of `B` as index, and only the one-part
//! coarsening survives on one letter, so `S(M_B)(y) = (−1)^{ℓ(B)} y^{|B|}`.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::combinatorics::Composition;
use crate::exactalg::{CommPoly, Scalar, Var};

use super::QSymElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "⊕",
            Sign::Minus => "⊖",
        })
    }
}

/// The letter of a one-letter alphabet: a variable or a number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Var(Var),
    Value(Scalar),
}

impl Symbol {
    fn to_poly(&self) -> CommPoly {
        match self {
            Symbol::Var(v) => CommPoly::var(*v),
            Symbol::Value(c) => CommPoly::constant(c.clone()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var(v) => write!(f, "{v}"),
            Symbol::Value(c) => write!(f, "{c}"),
        }
    }
}

/// An ordinal sum `±(s₁) ± (s₂) ± ⋯` of one-letter alphabets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedAlphabet {
    entries: Vec<(Sign, Symbol)>,
}

impl SignedAlphabet {
    pub fn new(entries: Vec<(Sign, Symbol)>) -> Self {
        SignedAlphabet { entries }
    }

    pub fn entries(&self) -> &[(Sign, Symbol)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, sign: Sign, sym: Symbol) {
        self.entries.push((sign, sym));
    }

    /// Ordinal sum `self ⊕ other`.
    pub fn concat(&self, other: &SignedAlphabet) -> SignedAlphabet {
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        SignedAlphabet { entries: e }
    }

    /// Numeric entries, if every symbol is a value.
    pub fn values(&self) -> Option<Vec<(Sign, Scalar)>> {
        self.entries
            .iter()
            .map(|(s, sym)| match sym {
                Symbol::Value(c) => Some((*s, c.clone())),
                Symbol::Var(_) => None,
            })
            .collect()
    }
}

impl fmt::Display for SignedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(s, y)| format!("{s}({y})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `𝕏ₙ = ⊖(x₁) ⊕ (x₂) ⊖ (x₃) ⋯`, the first `n` entries.
pub fn virtual_x(n: usize) -> SignedAlphabet {
    SignedAlphabet {
        entries: (1..=n as u32)
            .map(|i| (if i % 2 == 1 { Sign::Minus } else { Sign::Plus }, Symbol::Var(Var::x(i))))
            .collect(),
    }
}

/// `⊕(v₁) ⊕ (v₂) ⋯`.
pub fn plain_alphabet(vars: &[Var]) -> SignedAlphabet {
    SignedAlphabet { entries: vars.iter().map(|&v| (Sign::Plus, Symbol::Var(v))).collect() }
}

/// The operations the block rule needs from a coefficient ring.
pub(crate) trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Add::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Mul::mul(self, o)
    }
    fn neg(&self) -> Self {
        Neg::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
}

impl Ring for CommPoly {
    fn zero() -> Self {
        CommPoly::zero()
    }
    fn one() -> Self {
        CommPoly::one()
    }
    fn is_zero(&self) -> bool {
        CommPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Add::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Mul::mul(self, o)
    }
    fn neg(&self) -> Self {
        Neg::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        CommPoly::scale(self, c)
    }
}

/// `M_I` on the ordinal sum of one-letter alphabets `entries`, by dynamic
/// programming over (entries used, parts consumed).
pub(crate) fn monomial_on<R: Ring>(i: &Composition, entries: &[(Sign, R)]) -> R {
    let parts = i.parts();
    let l = parts.len();
    let total = i.weight() as usize;
    let mut dp: Vec<R> = vec![R::zero(); l + 1];
    dp[0] = R::one();
    for (sign, y) in entries {
        let mut powers = vec![R::one()];
        for e in 1..=total {
            powers.push(powers[e - 1].mul(y));
        }
        let mut next = dp.clone();
        for k in 1..=l {
            let mut acc = next[k].clone();
            let mut w = 0usize;
            for t in (0..k).rev() {
                w += parts[t] as usize;
                let len = k - t;
                if *sign == Sign::Plus && len > 1 {
                    break;
                }
                if dp[t].is_zero() {
                    continue;
                }
                let mut term = dp[t].mul(&powers[w]);
                if *sign == Sign::Minus && len % 2 == 1 {
                    term = term.neg();
                }
                acc = acc.add(&term);
            }
            next[k] = acc;
        }
        dp = next;
    }
    dp[l].clone()
}

pub(crate) fn element_on<R: Ring>(f: &QSymElement, entries: &[(Sign, R)]) -> R {
    let mut acc = R::zero();
    for (i, c) in f.coeffs() {
        let v = monomial_on(i, entries);
        acc = acc.add(&v.scale(c));
    }
    acc
}

/// `f` evaluated on `alpha` as a polynomial in the alphabet's variables.
pub fn expand_on_alphabet(f: &QSymElement, alpha: &SignedAlphabet) -> CommPoly {
    let entries: Vec<(Sign, CommPoly)> = alpha.entries.iter().map(|(s, y)| (*s, y.to_poly())).collect();
    element_on(f, &entries)
}

/// `f` on an alphabet whose letters are themselves polynomials.
pub fn expand_with_polys(f: &QSymElement, entries: &[(Sign, CommPoly)]) -> CommPoly {
    element_on(f, entries)
}

/// `f` on an alphabet of numbers.
pub fn evaluate_on_values(f: &QSymElement, entries: &[(Sign, Scalar)]) -> Scalar {
    element_on(f, entries)
}

/// `M_I(𝕏ₙ)`.
pub fn m_on_x(i: &Composition, n: usize) -> CommPoly {
    expand_on_alphabet(&QSymElement::monomial(i.clone()), &virtual_x(n))
}

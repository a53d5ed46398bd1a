use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{compositions_of, shuffle, Composition};
use crate::diagrams::{MultirectCoords, YoungDiagram};
use crate::exactalg::{CommPoly, Monomial, Scalar, Var, VarFamily};
use crate::qsym::{parse_basis_sum, write_basis_sum, QSymElement, Ring};

use super::{phi_x_to_pq, q_prime_to_q, q_to_q_prime, PQParam, PQPolyFamily, StanleyError};

/// `Σ_{I = I₁⋯I_s} Σ_{k₁<⋯<k_s} Π_t p_{k_t}^{ℓ(I_t)} (q′_{k_t})^{|I_t|−ℓ(I_t)} / ℓ(I_t)!`
/// over columns `(p_k, q′_k)`, by dynamic programming on (column, parts used).
fn h_dp<R: Ring>(i: &Composition, cols: &[(R, R)]) -> R {
    let parts = i.parts();
    let l = parts.len();
    let total = i.weight() as usize;
    let inv_fact: Vec<Scalar> =
        (0..=l as u32).map(|r| Scalar::factorial(r).recip().expect("factorial is nonzero")).collect();
    let mut dp = vec![R::zero(); l + 1];
    dp[0] = R::one();
    for (p, qp) in cols {
        let mut ppow = vec![R::one()];
        for r in 1..=l {
            ppow.push(ppow[r - 1].mul(p));
        }
        let mut qpow = vec![R::one()];
        for r in 1..=total {
            qpow.push(qpow[r - 1].mul(qp));
        }
        let mut next = dp.clone();
        for end in 1..=l {
            let mut acc = next[end].clone();
            let mut w = 0usize;
            for start in (0..end).rev() {
                w += parts[start] as usize;
                if dp[start].is_zero() {
                    continue;
                }
                let len = end - start;
                let term = dp[start].mul(&ppow[len]).mul(&qpow[w - len]).scale(&inv_fact[len]);
                acc = acc.add(&term);
            }
            next[end] = acc;
        }
        dp = next;
    }
    dp[l].clone()
}

fn is_basis_index(i: &Composition) -> bool {
    i.last_part().map_or(true, |l| l > 1)
}

/// The defining sum of `𝖧_I` at width `m` in `p, q′`, for any composition.
/// It lies in `Sol′` exactly when the last part of `I` exceeds 1.
pub fn h_poly(i: &Composition, m: usize) -> CommPoly {
    let cols: Vec<(CommPoly, CommPoly)> =
        (1..=m as u32).map(|k| (CommPoly::var(Var::p(k)), CommPoly::var(Var::qp(k)))).collect();
    h_dp(i, &cols)
}

/// `𝖧_I` at width `m` in `p, q′`.
pub fn h_eval(i: &Composition, m: usize) -> Result<CommPoly, StanleyError> {
    if !is_basis_index(i) {
        return Err(StanleyError::BasisConstraint(i.to_string()));
    }
    Ok(h_poly(i, m))
}

/// `𝖧_I` at width `m` in `p, q`.
pub fn h_eval_q(i: &Composition, m: usize) -> Result<CommPoly, StanleyError> {
    Ok(q_prime_to_q(&h_eval(i, m)?, m))
}

pub fn h_family(i: &Composition, m_max: usize) -> Result<PQPolyFamily, StanleyError> {
    if !is_basis_index(i) {
        return Err(StanleyError::BasisConstraint(i.to_string()));
    }
    Ok(PQPolyFamily::from_fn(PQParam::QPrime, m_max, |m| h_poly(i, m)))
}

/// `𝖧_I` at a diagram given by any (possibly degenerate) multirectangular coordinates.
pub fn h_value_at(i: &Composition, mr: &MultirectCoords) -> Scalar {
    let cols: Vec<(Scalar, Scalar)> =
        mr.p().iter().zip(mr.q_prime()).map(|(&p, qp)| (Scalar::from(p as i64), Scalar::from(qp as i64))).collect();
    h_dp(i, &cols)
}

pub fn h_value(i: &Composition, lam: &YoungDiagram) -> Scalar {
    h_value_at(i, &lam.multirect())
}

/// Coordinates of an element of `Sol′` in the basis `𝖧_I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HExpansion {
    coeffs: BTreeMap<Composition, Scalar>,
}

impl HExpansion {
    pub fn zero() -> Self {
        HExpansion::default()
    }

    pub fn one() -> Self {
        HExpansion { coeffs: BTreeMap::from([(Composition::empty(), Scalar::one())]) }
    }

    pub fn basis(i: Composition) -> Result<Self, StanleyError> {
        let mut out = HExpansion::zero();
        out.add_term(i, Scalar::one())?;
        Ok(out)
    }

    pub fn add_term(&mut self, i: Composition, c: Scalar) -> Result<(), StanleyError> {
        if !is_basis_index(&i) {
            return Err(StanleyError::BasisConstraint(i.to_string()));
        }
        let e = self.coeffs.entry(i).or_default();
        *e += c;
        self.coeffs.retain(|_, v| !v.is_zero());
        Ok(())
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
        HExpansion { coeffs: self.coeffs.iter().map(|(i, v)| (i.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// The polynomial `Σ c_I 𝖧_I` at width `m` in `p, q′`.
    pub fn to_poly(&self, m: usize) -> CommPoly {
        self.coeffs.iter().map(|(i, c)| h_poly(i, m).scale(c)).sum()
    }

    pub fn value(&self, lam: &YoungDiagram) -> Scalar {
        self.coeffs.iter().map(|(i, c)| h_value(i, lam) * c).sum()
    }

    pub fn product(&self, other: &HExpansion) -> HExpansion {
        h_shuffle_product(self, other)
    }

    /// Parses `c*H:I ± …`.
    pub fn parse(s: &str) -> Result<Self, StanleyError> {
        let mut out = HExpansion::zero();
        for (c, key) in parse_basis_sum(s, "H").map_err(|e| StanleyError::Parse(e.to_string()))? {
            let i: Composition = key.parse().map_err(|_| StanleyError::Parse(key.clone()))?;
            out.add_term(i, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for HExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_basis_sum(f, "H", self.coeffs.iter().map(|(i, c)| (i.to_string(), c)))
    }
}

impl FromStr for HExpansion {
    type Err = StanleyError;
    fn from_str(s: &str) -> Result<Self, StanleyError> {
        HExpansion::parse(s)
    }
}

impl Add<&HExpansion> for &HExpansion {
    type Output = HExpansion;
    fn add(self, rhs: &HExpansion) -> HExpansion {
        let mut out = self.clone();
        for (i, c) in &rhs.coeffs {
            *out.coeffs.entry(i.clone()).or_default() += c;
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }
}

impl Sub<&HExpansion> for &HExpansion {
    type Output = HExpansion;
    fn sub(self, rhs: &HExpansion) -> HExpansion {
        self + &rhs.scale(&Scalar::from(-1))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonH {
    #[serde(rename = "H")]
    h: BTreeMap<String, Scalar>,
}

impl Serialize for HExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonH { h: self.coeffs.iter().map(|(i, c)| (i.to_string(), c.clone())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = JsonH::deserialize(d)?;
        let mut out = HExpansion::zero();
        for (k, c) in raw.h {
            let i: Composition = k.parse().map_err(serde::de::Error::custom)?;
            out.add_term(i, c).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// The monomial `p₁(q′₁)^{i₁−1} p₂(q′₂)^{i₂−1} ⋯`, the only `p`-square-free
/// monomial on columns `1,…,ℓ` that occurs in `𝖧_I`.
fn leading_monomial(i: &Composition) -> Monomial {
    let mut f = Vec::new();
    for (k, &part) in i.parts().iter().enumerate() {
        f.push((Var::p(k as u32 + 1), 1));
        if part > 1 {
            f.push((Var::qp(k as u32 + 1), part - 1));
        }
    }
    Monomial::from_factors(f)
}

/// The `𝖧`-expansion of a polynomial given at width `m`, in `p, q′` or in
/// `p, q`. Coefficients are read off `p`-square-free monomials, compositions
/// taken by increasing length then lexicographically; the remainder must vanish.
pub fn h_expand_poly(h: &CommPoly, m: usize) -> Result<HExpansion, StanleyError> {
    let mut rem = if h.families().contains(&VarFamily::Q) { q_to_q_prime(h, m) } else { h.clone() };
    let d = rem.degree().unwrap_or(0);
    let mut comps: Vec<Composition> =
        (0..=d).flat_map(compositions_of).filter(|c| is_basis_index(c) && c.len() <= m).collect();
    comps.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut out = HExpansion::zero();
    for i in comps {
        let c = rem.coeff(&leading_monomial(&i));
        if c.is_zero() {
            continue;
        }
        rem = &rem - &h_poly(&i, m).scale(&c);
        out.add_term(i, c)?;
    }
    if !rem.is_zero() {
        return Err(StanleyError::NotInSolPrime(rem.to_string()));
    }
    Ok(out)
}

/// Expands the truncation of width `degree`.
pub fn h_expand(h: &PQPolyFamily, degree: usize) -> Result<HExpansion, StanleyError> {
    let t = h.to_param(PQParam::QPrime);
    h_expand_poly(t.truncation(degree)?, degree)
}

/// `𝖧_I · 𝖧_J = Σ_{K ∈ I ⧢ J} 𝖧_K`, shuffling parts.
pub fn h_shuffle_product(e: &HExpansion, f: &HExpansion) -> HExpansion {
    let mut out: BTreeMap<Composition, Scalar> = BTreeMap::new();
    for (i, a) in &e.coeffs {
        for (j, b) in &f.coeffs {
            let ab = a * b;
            for (k, mult) in shuffle(i, j) {
                *out.entry(k).or_default() += &ab * &Scalar::from(mult as usize);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    HExpansion { coeffs: out }
}

/// `Φ_{x→p,q}(M_k(𝕏))` expanded by [`h_expand_poly`] at width `k`.
pub fn mk_h_expansion(k: u32) -> Result<HExpansion, StanleyError> {
    let mk = QSymElement::monomial(Composition::new(vec![k]).map_err(|e| StanleyError::Parse(e.to_string()))?);
    h_expand_poly(&phi_x_to_pq(&mk, k as usize, PQParam::QPrime), k as usize)
}

/// `k(k−1)⋯(k−r+1)`, with `r` factors.
fn falling(k: u32, r: u32) -> Scalar {
    (0..r).map(|j| Scalar::from(k as i64 - j as i64)).product()
}

/// Comparison of the computed expansion of `Φ(M_k)` with coefficient laws on
/// `𝖧_{1^i, k−i}`, `0 ≤ i ≤ k−2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MkLawReport {
    pub k: u32,
    pub expansion: HExpansion,
    /// Support lies in `{1^i, k−i}`.
    pub hook_supported: bool,
    /// The coefficient on `1^i, k−i` has sign `(−1)^{i+1}`.
    pub signs: bool,
    /// `|c_i| = k(k−1)⋯(k−i)`, with `i+1` factors.
    pub law_i_plus_1_factors: bool,
    /// `|c_i| = k(k−1)⋯(k−i+1)`, with `i` factors.
    pub law_i_factors: bool,
    /// `(i, c_i)` for `0 ≤ i ≤ k−2`.
    pub coefficients: Vec<(u32, Scalar)>,
}

pub fn mk_law_report(k: u32) -> Result<MkLawReport, StanleyError> {
    let expansion = mk_h_expansion(k)?;
    let hook = |i: u32| {
        let mut parts = vec![1; i as usize];
        parts.push(k - i);
        Composition::new(parts).expect("positive parts")
    };
    let hooks: Vec<Composition> = (0..k - 1).map(hook).collect();
    let hook_supported = expansion.coeffs().keys().all(|c| hooks.contains(c));
    let coefficients: Vec<(u32, Scalar)> = (0..k - 1).map(|i| (i, expansion.coeff(&hooks[i as usize]))).collect();
    let signs = coefficients.iter().all(|(i, c)| !c.is_zero() && c.is_negative() == (i % 2 == 0));
    let law = |extra: u32| coefficients.iter().all(|(i, c)| c.abs() == falling(k, i + extra));
    Ok(MkLawReport {
        k,
        hook_supported,
        signs,
        law_i_plus_1_factors: law(1),
        law_i_factors: law(0),
        coefficients,
        expansion,
    })
}

/// `H_I(Y) = Σ_{I = I₁⋯I_s} Π_t 1/ℓ(I_t)! · M_{(|I₁|,…,|I_s|)}`, the image of
/// `𝖧_I` under `p_j, q′_j ↦ y_j`.
pub fn collapse_to_y(i: &Composition) -> QSymElement {
    if i.is_empty() {
        return QSymElement::one();
    }
    let mut out = QSymElement::zero();
    for fact in i.factorizations() {
        let weights: Vec<u32> = fact.iter().map(Composition::weight).collect();
        let c: Scalar = fact.iter().map(|f| Scalar::factorial(f.len() as u32).recip().unwrap()).product();
        out.add_term(Composition::new(weights).expect("nonempty factors"), c);
    }
    out
}

/// `h` with `p_j` and `q′_j` both sent to `y_j`.
pub fn collapse_poly(h: &CommPoly) -> CommPoly {
    h.rename(|v| match v.family {
        VarFamily::P | VarFamily::QPrime => Var::y(v.index),
        _ => v,
    })
}

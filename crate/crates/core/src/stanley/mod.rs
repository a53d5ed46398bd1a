//! Functions of multirectangular coordinates: the changes of variables
//! `Φ_{x→p,q}` and `Φ_{p,q→x}`, the two substitution equations that
//! characterize the space `Sol′`, and the basis `𝖧_I` of `Sol′`.
//!
//! A family in `(p, q)` is a sequence of truncations `h_m`, polynomials in
//! `p₁…p_m, q₁…q_m` (or in `p` and the cumulative widths `q′ᵢ = qᵢ+⋯+q_m`).
//!
//! ```
//! use qyd::combinatorics::Composition;
//! use qyd::qsym::QSymElement;
//! use qyd::stanley::{phi_x_to_pq, h_expand_poly, PQParam};
//! let m3 = QSymElement::monomial("3".parse::<Composition>().unwrap());
//! let h = phi_x_to_pq(&m3, 3, PQParam::QPrime);
//! assert_eq!(h_expand_poly(&h, 3).unwrap().to_string(), "6*H:1.2 - 3*H:3");
//! ```

mod hbasis;
mod kernel;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{CommPoly, Var, VarFamily};
use crate::qsym::{expand_with_polys, QSymElement, Sign};

pub use hbasis::{
    collapse_poly, collapse_to_y, h_eval, h_eval_q, h_family, h_expand, h_expand_poly, h_poly, h_shuffle_product, h_value, h_value_at,
    mk_h_expansion, mk_law_report, HExpansion, MkLawReport,
};
pub use kernel::{phi_kernel_report, PhiKernelReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StanleyError {
    #[error("H_{0} is not a basis element: the last part must exceed 1")]
    BasisConstraint(String),
    #[error("not in Sol′: nonzero remainder {0}")]
    NotInSolPrime(String),
    #[error("truncation {needed} requested but the family stops at {available}")]
    MissingTruncation { needed: usize, available: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Which width variables a family uses: the increments `q` or the cumulative `q′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PQParam {
    Q,
    QPrime,
}

/// `q′ᵢ ↦ qᵢ + ⋯ + q_m`.
pub fn q_prime_to_q(h: &CommPoly, m: usize) -> CommPoly {
    let b: BTreeMap<Var, CommPoly> = (1..=m as u32)
        .map(|i| (Var::qp(i), (i..=m as u32).map(|j| CommPoly::var(Var::q(j))).sum()))
        .collect();
    h.substitute(&b)
}

/// `qᵢ ↦ q′ᵢ − q′_{i+1}`, with `q′_{m+1} = 0`.
pub fn q_to_q_prime(h: &CommPoly, m: usize) -> CommPoly {
    let b: BTreeMap<Var, CommPoly> = (1..=m as u32)
        .map(|i| {
            let v = CommPoly::var(Var::qp(i));
            (Var::q(i), if i as usize == m { v } else { &v - &CommPoly::var(Var::qp(i + 1)) })
        })
        .collect();
    h.substitute(&b)
}

/// Truncations `h₀, h₁, …, h_{m_max}` of an element of `ℂ[p, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQPolyFamily {
    param: PQParam,
    truncations: Vec<CommPoly>,
}

impl PQPolyFamily {
    pub fn new(param: PQParam, truncations: Vec<CommPoly>) -> Self {
        PQPolyFamily { param, truncations }
    }

    pub fn from_fn(param: PQParam, m_max: usize, f: impl Fn(usize) -> CommPoly) -> Self {
        PQPolyFamily { param, truncations: (0..=m_max).map(f).collect() }
    }

    pub fn param(&self) -> PQParam {
        self.param
    }

    pub fn m_max(&self) -> usize {
        self.truncations.len().saturating_sub(1)
    }

    pub fn truncation(&self, m: usize) -> Result<&CommPoly, StanleyError> {
        self.truncations.get(m).ok_or(StanleyError::MissingTruncation { needed: m, available: self.m_max() })
    }

    pub fn truncations(&self) -> &[CommPoly] {
        &self.truncations
    }

    pub fn to_param(&self, param: PQParam) -> PQPolyFamily {
        if param == self.param {
            return self.clone();
        }
        let conv = |(m, h): (usize, &CommPoly)| match param {
            PQParam::Q => q_prime_to_q(h, m),
            PQParam::QPrime => q_to_q_prime(h, m),
        };
        PQPolyFamily { param, truncations: self.truncations.iter().enumerate().map(conv).collect() }
    }

    /// Truncation-wise product, in the parametrization of `self`.
    pub fn product(&self, other: &PQPolyFamily) -> PQPolyFamily {
        let o = other.to_param(self.param);
        PQPolyFamily {
            param: self.param,
            truncations: self.truncations.iter().zip(&o.truncations).map(|(a, b)| a * b).collect(),
        }
    }
}

/// The letters of `𝕏_{2m+1}` written in `p, q`: `x₁ = Σq`,
/// `x_{2i} = (qᵢ+⋯+q_m) − (p₁+⋯+pᵢ)`, `x_{2i+1} = (q_{i+1}+⋯+q_m) − (p₁+⋯+pᵢ)`.
pub fn x_in_pq(m: usize, param: PQParam) -> Vec<CommPoly> {
    let tail = |i: usize| -> CommPoly {
        if i > m {
            return CommPoly::zero();
        }
        match param {
            PQParam::Q => (i..=m).map(|j| CommPoly::var(Var::q(j as u32))).sum(),
            PQParam::QPrime => CommPoly::var(Var::qp(i as u32)),
        }
    };
    let mut xs = vec![tail(1)];
    let mut psum = CommPoly::zero();
    for i in 1..=m {
        psum = &psum + &CommPoly::var(Var::p(i as u32));
        xs.push(&tail(i) - &psum);
        xs.push(&tail(i + 1) - &psum);
    }
    xs
}

/// `Φ_{x→p,q}(f)` at width `m`: `f(𝕏_{2m+1})` with the letters of [`x_in_pq`].
pub fn phi_x_to_pq(f: &QSymElement, m: usize, param: PQParam) -> CommPoly {
    let entries: Vec<(Sign, CommPoly)> = x_in_pq(m, param)
        .into_iter()
        .enumerate()
        .map(|(i, x)| (if i % 2 == 0 { Sign::Minus } else { Sign::Plus }, x))
        .collect();
    expand_with_polys(f, &entries)
}

pub fn phi_x_to_pq_family(f: &QSymElement, m_max: usize, param: PQParam) -> PQPolyFamily {
    PQPolyFamily::from_fn(param, m_max, |m| phi_x_to_pq(f, m, param))
}

/// Substitutes `x₁,…,x_{2m+1}` in a polynomial by [`x_in_pq`].
pub fn substitute_x_by_pq(f: &CommPoly, m: usize, param: PQParam) -> CommPoly {
    let b: BTreeMap<Var, CommPoly> =
        x_in_pq(m, param).into_iter().enumerate().map(|(i, x)| (Var::x(i as u32 + 1), x)).collect();
    f.substitute(&b)
}

/// `Φ_{p,q→x}(h)` in `2m+1` variables: `pᵢ = x_{2i−1} − x_{2i}`,
/// `qᵢ = x_{2i} − x_{2i+1}`, `q′ᵢ = qᵢ + ⋯ + q_m`.
pub fn phi_pq_to_x(h: &PQPolyFamily, m: usize) -> Result<CommPoly, StanleyError> {
    let x = |i: usize| CommPoly::var(Var::x(i as u32));
    let mut b = BTreeMap::new();
    let mut tail = CommPoly::zero();
    for i in (1..=m).rev() {
        let qi = &x(2 * i) - &x(2 * i + 1);
        tail = &tail + &qi;
        b.insert(Var::p(i as u32), &x(2 * i - 1) - &x(2 * i));
        b.insert(Var::q(i as u32), qi);
        b.insert(Var::qp(i as u32), tail.clone());
    }
    Ok(h.truncation(m)?.substitute(&b))
}

/// The stable family `f_n` attached to `h`: `f_{2m+1} = Φ_{p,q→x}(h)` at
/// width `m`, and `f_{2m}` is `f_{2m+1}` at `x_{2m+1} = 0`.
pub fn phi_pq_to_x_truncation(h: &PQPolyFamily, n: usize) -> Result<CommPoly, StanleyError> {
    let m = n / 2;
    let f = phi_pq_to_x(h, m)?;
    Ok(if n % 2 == 0 { f.set_zero(|v| v == Var::x(n as u32 + 1)) } else { f })
}

/// Why a family fails to lie in `Sol′`.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum SolPrimeFailure {
    #[error("stability fails at m = {m}: p_{m} = q_{m} = 0 does not give truncation {}", m - 1)]
    Stability { m: usize },
    #[error("q-zero equation fails at m = {m}, i = {i}")]
    QZero { m: usize, i: usize },
    #[error("p-zero equation fails at m = {m}, i = {i}")]
    PZero { m: usize, i: usize },
    #[error("p-zero equation in q′ form fails at m = {m}, i = {i}")]
    PZeroPrime { m: usize, i: usize },
}

impl SolPrimeFailure {
    pub fn equation(&self) -> &'static str {
        match self {
            SolPrimeFailure::Stability { .. } => "stability",
            SolPrimeFailure::QZero { .. } => "q-zero",
            SolPrimeFailure::PZero { .. } => "p-zero",
            SolPrimeFailure::PZeroPrime { .. } => "p-zero (q′ form)",
        }
    }
}

/// Renames `v_j ↦ v_{j+1}` for `j ≥ from` in each of `families`.
fn shifted(h: &CommPoly, from: u32, families: &[fn(u32) -> Var]) -> CommPoly {
    let mut b: BTreeMap<Var, CommPoly> = BTreeMap::new();
    let max = h.vars().iter().map(|v| v.index).max().unwrap_or(0);
    for fam in families {
        for j in from..=max {
            b.insert(fam(j), CommPoly::var(fam(j + 1)));
        }
    }
    h.substitute(&b)
}

/// Checks stability and, for every `m ≤ m_max` and `1 ≤ i ≤ m`:
/// `h_m|_{qᵢ=0}` against `h_{m−1}` with columns `i, i+1` merged to `pᵢ+p_{i+1}`,
/// and `h_m|_{pᵢ=0}` against `h_{m−1}` with `q_{i−1}+qᵢ` merged; columns
/// holding undefined variables are erased.  The `p`-equation is also checked
/// in `q′` form, where it drops `pᵢ` and `q′ᵢ`.
pub fn check_solprime(h: &PQPolyFamily, m_max: usize) -> Result<(), SolPrimeFailure> {
    let m_max = m_max.min(h.m_max());
    let hq = h.to_param(PQParam::Q);
    let hp = h.to_param(PQParam::QPrime);
    let t = |m: usize| &hq.truncations[m];
    for m in 1..=m_max {
        let (pm, qm) = (Var::p(m as u32), Var::q(m as u32));
        if t(m).set_zero(|v| v == pm || v == qm) != *t(m - 1) {
            return Err(SolPrimeFailure::Stability { m });
        }
        for i in 1..=m {
            let (pi, qi) = (Var::p(i as u32), Var::q(i as u32));
            let lhs = t(m).set_zero(|v| v == qi);
            let rhs = if i == m { t(m - 1).clone() } else { fix_q_shift(t(m - 1), i) };
            if lhs != rhs {
                return Err(SolPrimeFailure::QZero { m, i });
            }
            let lhs = t(m).set_zero(|v| v == pi);
            let rhs = pzero_rhs(t(m - 1), i);
            if lhs != rhs {
                return Err(SolPrimeFailure::PZero { m, i });
            }
            let lhs = hp.truncations[m].set_zero(|v| v == pi);
            let rhs = shifted(&hp.truncations[m - 1], i as u32, &[Var::p, Var::qp]);
            if lhs != rhs {
                return Err(SolPrimeFailure::PZeroPrime { m, i });
            }
        }
    }
    Ok(())
}

/// `h_{m−1}(p₁,…,p_{i−1}, pᵢ+p_{i+1}, p_{i+2},…; q₁,…,q_{i−1}, q_{i+1},…)`.
fn fix_q_shift(h: &CommPoly, i: usize) -> CommPoly {
    let mut b = BTreeMap::new();
    for v in h.vars() {
        let j = v.index as usize;
        let image = match (v.family, j.cmp(&i)) {
            (_, Ordering::Less) => continue,
            (VarFamily::P, Ordering::Equal) => {
                &CommPoly::var(Var::p(j as u32)) + &CommPoly::var(Var::p(j as u32 + 1))
            }
            (VarFamily::P, _) => CommPoly::var(Var::p(j as u32 + 1)),
            (VarFamily::Q, _) => CommPoly::var(Var::q(j as u32 + 1)),
            _ => continue,
        };
        b.insert(v, image);
    }
    h.substitute(&b)
}

/// `h_{m−1}(p₁,…,p_{i−1}, p_{i+1},…; q₁,…,q_{i−1}+qᵢ, q_{i+1},…)`, dropping
/// `q₁` when `i = 1`.
fn pzero_rhs(h: &CommPoly, i: usize) -> CommPoly {
    let mut b = BTreeMap::new();
    for v in h.vars() {
        let j = v.index as usize;
        let image = match v.family {
            VarFamily::P if j >= i => CommPoly::var(Var::p(j as u32 + 1)),
            VarFamily::Q if j + 1 == i => {
                &CommPoly::var(Var::q(j as u32)) + &CommPoly::var(Var::q(j as u32 + 1))
            }
            VarFamily::Q if j >= i => CommPoly::var(Var::q(j as u32 + 1)),
            _ => continue,
        };
        b.insert(v, image);
    }
    h.substitute(&b)
}

//! Word quasi-symmetric functions on the basis `P_u = Σ_{pack(w)=u} a_w`,
//! their evaluation on the virtual alphabet `𝔸 = ⊖(a₁) ⊕ (a₂) ⊖ (a₃) ⋯`,
//! the noncommutative functional equation, the substitution
//! `Φ_{a→b,d}`, the place action of `𝔖ₙ`, and the ideal `𝒦ₙ`.
//!
//! ```
//! use qyd::combinatorics::PackedWord;
//! use qyd::wqsym::p_virtual_expand;
//!
//! let u: PackedWord = "11".parse().unwrap();
//! assert_eq!(p_virtual_expand(&u, 3).to_string(), "-a1^2 + a2^2 - a3^2");
//! ```

mod element;
mod kernel;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{CombError, Composition, PackedWord, Permutation};
use crate::exactalg::{AlgError, Letter, NCPoly, Scalar, Word};
use crate::qsym::{FunctionalEqFailure, QSymError, Sign};

pub use element::WQSymElement;
pub(crate) use element::subsets;
pub use kernel::{
    default_kernel_width, kernel_ideal_basis, kernel_ideal_dimension, odd_count_identity, phi_kernel_dimension, phi_rows,
    recurrence_holds, NcKernelReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WQSymError {
    #[error(transparent)]
    QSym(#[from] QSymError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("product does not re-expand in the P basis: {0}")]
    Remainder(String),
}

/// An ordered list of signed noncommuting letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcAlphabet {
    entries: Vec<(Sign, Letter)>,
}

impl NcAlphabet {
    pub fn new(entries: Vec<(Sign, Letter)>) -> Self {
        NcAlphabet { entries }
    }

    pub fn entries(&self) -> &[(Sign, Letter)] {
        &self.entries
    }
}

/// `𝔸ₙ = ⊖(a₁) ⊕ (a₂) ⊖ (a₃) ⋯`, the first `n` entries.
pub fn virtual_a(n: usize) -> NcAlphabet {
    NcAlphabet::new(
        (1..=n as u32).map(|i| (if i % 2 == 1 { Sign::Minus } else { Sign::Plus }, Letter::a(i))).collect(),
    )
}

/// `P_u(a₁,…,aₙ)`: the words `w` over `a₁,…,aₙ` with `pack(w) = u`.
pub fn p_expand(u: &PackedWord, n_vars: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for s in subsets(n_vars as u32, u.max_letter()) {
        let w: Word = u.letters().iter().map(|&x| Letter::a(s[x as usize - 1])).collect();
        out.add_term(w, Scalar::one());
    }
    out
}

pub fn expand(f: &WQSymElement, n_vars: usize) -> NCPoly {
    f.coeffs().iter().map(|(u, c)| p_expand(u, n_vars).scale(c)).sum()
}

/// The block rule for `M_I` on a signed alphabet, writing the letters of
/// each monomial in alphabet order: a `⊕` entry takes at most one part,
/// a `⊖` entry takes a run of `ℓ` parts with sign `(−1)^ℓ`.
pub fn nc_m_on_alphabet(i: &Composition, alpha: &NcAlphabet) -> NCPoly {
    let parts = i.parts();
    let k = parts.len();
    let mut state: Vec<NCPoly> = vec![NCPoly::zero(); k + 1];
    state[0] = NCPoly::one();
    for &(sign, letter) in alpha.entries() {
        let mut next = state.clone();
        for t in 0..k {
            if state[t].is_zero() {
                continue;
            }
            let top = if sign == Sign::Plus { t + 1 } else { k };
            let mut weight = 0;
            for t2 in t + 1..=top {
                weight += parts[t2 - 1];
                let c = if sign == Sign::Minus && (t2 - t) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                let m = NCPoly::term(vec![letter; weight as usize], c);
                next[t2] = &next[t2] + &(&state[t] * &m);
            }
        }
        state = next;
    }
    state.pop().expect("k + 1 states")
}

/// `P_u(𝔸ₙ)`: the block rule for `M_{eval(u)}` with letters in nondecreasing
/// index order, then moved to places by `σ_u`.
pub fn p_virtual_expand(u: &PackedWord, n: usize) -> NCPoly {
    let base = nc_m_on_alphabet(&u.eval(), &virtual_a(n));
    base.permute_positions(u.sort_permutation().images()).expect("homogeneous of degree |u|")
}

pub fn virtual_expand(f: &WQSymElement, n: usize) -> NCPoly {
    f.coeffs().iter().map(|(u, c)| p_virtual_expand(u, n).scale(c)).sum()
}

fn binding(pairs: impl IntoIterator<Item = (Letter, NCPoly)>) -> BTreeMap<Letter, NCPoly> {
    pairs.into_iter().collect()
}

fn max_index(f: &NCPoly) -> u32 {
    f.letters().iter().map(|l| l.index).max().unwrap_or(0)
}

/// Checks, for every `n ≤ n_max`, that truncation `n` restricts to
/// truncation `n − 1` at `aₙ = 0`, and that for `1 ≤ i < n`
/// `fₙ|_{a_{i+1} = aᵢ}` equals `f_{n−2}` with `a_j ↦ a_{j+2}` for `j ≥ i`.
pub fn check_functional_eq_nc<F>(family: F, n_max: usize) -> Result<(), FunctionalEqFailure>
where
    F: Fn(usize) -> NCPoly,
{
    let truncs: Vec<NCPoly> = (0..=n_max).map(&family).collect();
    for n in 1..=n_max {
        let an = Letter::a(n as u32);
        if truncs[n].substitute(&binding([(an, NCPoly::zero())])) != truncs[n - 1] {
            return Err(FunctionalEqFailure::Stability { n });
        }
        for i in 1..n as u32 {
            let lhs = truncs[n].substitute(&binding([(Letter::a(i + 1), NCPoly::letter(Letter::a(i)))]));
            let top = max_index(&truncs[n - 2]);
            let rhs = truncs[n - 2].substitute(&binding((i..=top).map(|j| (Letter::a(j), NCPoly::letter(Letter::a(j + 2))))));
            if lhs != rhs {
                return Err(FunctionalEqFailure::Equation { n, i: i as usize });
            }
        }
    }
    Ok(())
}

/// `U·V` computed on expansions in `|U| + |V|` letters and read back in the
/// `P` basis; the read-back is certified by a zero remainder.
pub fn wq_product(f: &WQSymElement, g: &WQSymElement) -> Result<WQSymElement, WQSymError> {
    let deg = |h: &WQSymElement| h.coeffs().keys().map(PackedWord::len).max().unwrap_or(0);
    let n = deg(f) + deg(g);
    let prod = &expand(f, n) * &expand(g, n);
    let mut out = WQSymElement::zero();
    for (w, c) in prod.terms() {
        let letters: Vec<u32> = w.iter().map(|l| l.index).collect();
        let u = crate::combinatorics::pack(&letters);
        if u.letters() == letters.as_slice() {
            out.add_term(u, c.clone());
        }
    }
    let rem = &prod - &expand(&out, n);
    if !rem.is_zero() {
        return Err(WQSymError::Remainder(rem.to_string()));
    }
    Ok(out)
}

/// The place action `(w·σ)_k = w_{σ(k)}` on every word of `f`.
pub fn sn_action(f: &NCPoly, sigma: &Permutation) -> Result<NCPoly, WQSymError> {
    Ok(f.permute_positions(sigma.images())?)
}

/// `δ` extended linearly.
pub fn delta_op(f: &WQSymElement) -> WQSymElement {
    f.delta()
}

/// The letters `a₁,…,a_{2m+1}` written in `b, d`:
/// `a_{2i+1} = (d_{i+1}+⋯+d_m) − (b₁+⋯+bᵢ)`, `a_{2i} = (dᵢ+⋯+d_m) − (b₁+⋯+bᵢ)`.
pub fn a_in_bd(m: usize) -> Vec<NCPoly> {
    let dtail = |i: usize| -> NCPoly { (i..=m).map(|j| NCPoly::letter(Letter::d(j as u32))).sum() };
    let mut out = vec![dtail(1)];
    let mut bsum = NCPoly::zero();
    for i in 1..=m {
        bsum = &bsum + &NCPoly::letter(Letter::b(i as u32));
        out.push(&dtail(i) - &bsum);
        out.push(&dtail(i + 1) - &bsum);
    }
    out
}

/// `Φ_{a→b,d}` at width `m`: substitutes `a₁,…,a_{2m+1}` by [`a_in_bd`].
pub fn phi_a_to_bd(f: &NCPoly, m: usize) -> NCPoly {
    let b = binding(a_in_bd(m).into_iter().enumerate().map(|(i, p)| (Letter::a(i as u32 + 1), p)));
    f.substitute(&b)
}

/// `Φ_{b,d→a}` in `2m+1` letters: `bᵢ = a_{2i−1} − a_{2i}`, `dᵢ = a_{2i} − a_{2i+1}`.
pub fn phi_bd_to_a(h: &NCPoly, m: usize) -> NCPoly {
    let a = |i: usize| NCPoly::letter(Letter::a(i as u32));
    let mut b = BTreeMap::new();
    for i in 1..=m {
        b.insert(Letter::b(i as u32), &a(2 * i - 1) - &a(2 * i));
        b.insert(Letter::d(i as u32), &a(2 * i) - &a(2 * i + 1));
    }
    h.substitute(&b)
}

/// Why a family of `b, d` polynomials fails the noncommutative equations.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum NcSolPrimeFailure {
    #[error("stability fails at m = {m}")]
    Stability { m: usize },
    #[error("d-zero equation fails at m = {m}, i = {i}")]
    DZero { m: usize, i: usize },
    #[error("b-zero equation fails at m = {m}, i = {i}")]
    BZero { m: usize, i: usize },
}

impl NcSolPrimeFailure {
    pub fn equation(&self) -> &'static str {
        match self {
            NcSolPrimeFailure::Stability { .. } => "stability",
            NcSolPrimeFailure::DZero { .. } => "d-zero",
            NcSolPrimeFailure::BZero { .. } => "b-zero",
        }
    }
}

/// Checks `h_m|_{b_m = d_m = 0} = h_{m−1}` and, for `1 ≤ i ≤ m`,
/// `h_m|_{dᵢ=0}` against `h_{m−1}` with `bᵢ+b_{i+1}` merged and
/// `h_m|_{bᵢ=0}` against `h_{m−1}` with `d_{i−1}+dᵢ` merged.
/// `truncations[m]` is the width-`m` polynomial.
pub fn check_solprime_nc(truncations: &[NCPoly], m_max: usize) -> Result<(), NcSolPrimeFailure> {
    let m_max = m_max.min(truncations.len().saturating_sub(1));
    let zero = |ls: &[Letter]| binding(ls.iter().map(|&l| (l, NCPoly::zero())));
    let l = |f: fn(u32) -> Letter, j: usize| NCPoly::letter(f(j as u32));
    for m in 1..=m_max {
        let h = &truncations[m];
        let prev = &truncations[m - 1];
        let top = max_index(prev) as usize;
        if h.substitute(&zero(&[Letter::b(m as u32), Letter::d(m as u32)])) != *prev {
            return Err(NcSolPrimeFailure::Stability { m });
        }
        for i in 1..=m {
            let lhs = h.substitute(&zero(&[Letter::d(i as u32)]));
            let rhs = if i == m {
                prev.clone()
            } else {
                let mut b = BTreeMap::new();
                b.insert(Letter::b(i as u32), &l(Letter::b, i) + &l(Letter::b, i + 1));
                for j in i + 1..=top {
                    b.insert(Letter::b(j as u32), l(Letter::b, j + 1));
                }
                for j in i..=top {
                    b.insert(Letter::d(j as u32), l(Letter::d, j + 1));
                }
                prev.substitute(&b)
            };
            if lhs != rhs {
                return Err(NcSolPrimeFailure::DZero { m, i });
            }
            let lhs = h.substitute(&zero(&[Letter::b(i as u32)]));
            let mut b = BTreeMap::new();
            for j in i..=top {
                b.insert(Letter::b(j as u32), l(Letter::b, j + 1));
                b.insert(Letter::d(j as u32), l(Letter::d, j + 1));
            }
            if i > 1 {
                b.insert(Letter::d(i as u32 - 1), &l(Letter::d, i - 1) + &l(Letter::d, i));
            }
            if lhs != prev.substitute(&b) {
                return Err(NcSolPrimeFailure::BZero { m, i });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_permutations, packed_words};
    use crate::qsym::m_on_x;

    fn pw(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    fn nc(s: &str) -> NCPoly {
        s.parse().unwrap()
    }

    fn a(i: u32) -> NCPoly {
        NCPoly::letter(Letter::a(i))
    }

    fn sign(i: u32) -> Scalar {
        Scalar::sign_pow(i as usize)
    }

    #[test]
    fn plain_expansions() {
        assert_eq!(p_expand(&pw("1"), 2), nc("a1 + a2"));
        assert_eq!(p_expand(&pw("11"), 2), nc("a1*a1 + a2*a2"));
        assert_eq!(p_expand(&pw("21"), 3), nc("a2*a1 + a3*a1 + a3*a2"));
        for n in 0..=4 {
            for u in packed_words(n) {
                assert_eq!(p_expand(&u, 4).commutative_image(), m_on_plain(&u.eval(), 4));
            }
        }
    }

    fn m_on_plain(i: &Composition, n: u32) -> crate::exactalg::CommPoly {
        crate::qsym::expand_on_alphabet(
            &crate::qsym::QSymElement::monomial(i.clone()),
            &crate::qsym::plain_alphabet(&(1..=n).map(crate::exactalg::Var::x).collect::<Vec<_>>()),
        )
    }

    #[test]
    fn virtual_examples() {
        let n = 7u32;
        for k in 1..=3 {
            let want: NCPoly = (1..=n).map(|i| a(i).pow(k).scale(&sign(i))).sum();
            assert_eq!(p_virtual_expand(&PackedWord::new(vec![1; k as usize]).unwrap(), n as usize), want);
        }
        let odd_cubes: NCPoly = (1..=n).filter(|i| i % 2 == 1).map(|i| a(i).pow(3)).sum();
        let mut pairs = [NCPoly::zero(), NCPoly::zero(), NCPoly::zero()];
        for i in 1..=n {
            for j in i + 1..=n {
                let s = sign(i + j);
                pairs[0] = &pairs[0] + &(&(&a(i) * &a(i)) * &a(j)).scale(&s);
                pairs[1] = &pairs[1] + &(&(&a(i) * &a(j)) * &a(i)).scale(&s);
                pairs[2] = &pairs[2] + &(&(&a(j) * &a(i)) * &a(i)).scale(&s);
            }
        }
        for (u, p) in ["112", "121", "211"].iter().zip(&pairs) {
            assert_eq!(p_virtual_expand(&pw(u), n as usize), &odd_cubes + p, "{u}");
        }
    }

    #[test]
    fn commutative_images_and_functional_equation() {
        for len in 1..=4 {
            for u in packed_words(len) {
                for n in 0..=6 {
                    assert_eq!(p_virtual_expand(&u, n).commutative_image(), m_on_x(&u.eval(), n));
                }
                assert!(check_functional_eq_nc(|n| p_virtual_expand(&u, n), 6).is_ok(), "{u}");
            }
        }
        let bad = check_functional_eq_nc(|_| nc("a1*a2"), 3);
        assert!(bad.is_err());
    }

    #[test]
    fn odd_letters_zero_gives_plain_p() {
        for len in 1..=4 {
            for u in packed_words(len) {
                let f = p_virtual_expand(&u, 6);
                let odd = binding((0..3).map(|i| (Letter::a(2 * i + 1), NCPoly::zero())));
                let even = binding((1..=3).map(|i| (Letter::a(i), a(2 * i))));
                assert_eq!(f.substitute(&odd), p_expand(&u, 3).substitute(&even));
            }
        }
    }

    #[test]
    fn products() {
        let p1 = WQSymElement::basis(pw("1"));
        let want: WQSymElement = "P:12 + P:21 + P:11".parse().unwrap();
        assert_eq!(wq_product(&p1, &p1).unwrap(), want);
        assert_eq!(p1.product(&p1), want);
        let v: WQSymElement = "P:121 - 2*P:11".parse().unwrap();
        assert_eq!(wq_product(&WQSymElement::one(), &v).unwrap(), v);
        for l in 0..=2 {
            for r in 0..=2 {
                for u in packed_words(l) {
                    for w in packed_words(r) {
                        let (x, y) = (WQSymElement::basis(u.clone()), WQSymElement::basis(w.clone()));
                        let got = wq_product(&x, &y).unwrap();
                        assert_eq!(got, x.product(&y));
                        assert_eq!(got.commutative_image(), &x.commutative_image() * &y.commutative_image());
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative() {
        for l in 1..=2 {
            for r in 1..=2 {
                for u in packed_words(l) {
                    for w in packed_words(r) {
                        let (x, y) = (WQSymElement::basis(u.clone()), WQSymElement::basis(w.clone()));
                        let prod = x.product(&y);
                        assert_eq!(virtual_expand(&prod, 5), &virtual_expand(&x, 5) * &virtual_expand(&y, 5));
                        assert!(check_functional_eq_nc(|n| virtual_expand(&prod, n), 6).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn place_action() {
        let w = nc("a1*a2*a3*a4");
        let s: Permutation = "3124".parse().unwrap();
        assert_eq!(sn_action(&w, &s).unwrap(), nc("a3*a1*a2*a4"));
        assert_eq!(sn_action(&nc("a1*a2*a3"), &Permutation::identity(3)).unwrap(), nc("a1*a2*a3"));
        assert!(sn_action(&w, &Permutation::identity(3)).is_err());
        for s in all_permutations(3) {
            for t in all_permutations(3) {
                let w = nc("a1*a2*a3 + 2*a3*a3*a1");
                let lhs = sn_action(&sn_action(&w, &s).unwrap(), &t).unwrap();
                assert_eq!(lhs, sn_action(&w, &s.then(&t)).unwrap());
            }
        }
    }

    #[test]
    fn delta_rules() {
        assert_eq!(delta_op(&WQSymElement::basis(pw("12"))), WQSymElement::basis(pw("1")));
        assert!(delta_op(&WQSymElement::basis(pw("21"))).is_zero());
        assert!(delta_op(&WQSymElement::basis(pw("11"))).is_zero());
        let p1 = WQSymElement::basis(pw("1"));
        for n in 1..=3 {
            for u in packed_words(n) {
                let w = WQSymElement::basis(u.clone());
                assert_eq!(delta_op(&w.product(&p1)), w);
                assert_eq!(delta_op(&p1.product(&w)), p1.product(&delta_op(&w)));
            }
        }
    }

    #[test]
    fn phi_kills_p1_and_round_trips() {
        for m in 0..=4 {
            assert!(phi_a_to_bd(&p_virtual_expand(&pw("1"), 2 * m + 1), m).is_zero());
        }
        let h = nc("b1*d1 + 2*d2*b1*b2 - d1*d1");
        assert_eq!(phi_a_to_bd(&phi_bd_to_a(&h, 2), 2), h);
    }

    #[test]
    fn phi_images_lie_in_sol_prime() {
        for u in packed_words(3) {
            let t: Vec<NCPoly> = (0..=3).map(|m| phi_a_to_bd(&p_virtual_expand(&u, 2 * m + 1), m)).collect();
            assert!(check_solprime_nc(&t, 3).is_ok(), "{u}");
            let commutative: Vec<_> = t.iter().map(NCPoly::commutative_image).collect();
            for (m, c) in commutative.iter().enumerate() {
                let want = crate::stanley::phi_x_to_pq(
                    &crate::qsym::QSymElement::monomial(u.eval()),
                    m,
                    crate::stanley::PQParam::Q,
                );
                assert_eq!(*c, want);
            }
        }
        let bad = vec![NCPoly::zero(), nc("b1*b1")];
        assert!(check_solprime_nc(&bad, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v: WQSymElement = "P:121 - 1/2*P:11".parse().unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<WQSymElement>(&s).unwrap(), v);
        assert!(s.starts_with("{\"P\":"));
    }
}

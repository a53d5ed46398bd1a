//! The Hopf algebra of quasi-symmetric functions on the monomial basis, its
//! evaluation on signed alphabets such as `𝕏 = ⊖(x₁) ⊕ (x₂) ⊖ (x₃) ⋯`, and a
//! checker for the functional equation
//! `f|_{x_{i+1} = x_i} = f(x₁,…,x_{i−1},x_{i+2},…)`.

mod alphabet;
mod element;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::combinatorics::{compositions_of, CombError};
use crate::exactalg::{span_rank, CommPoly, Var};

pub(crate) use alphabet::Ring;
pub use alphabet::{
    evaluate_on_values, expand_on_alphabet, expand_with_polys, m_on_x, plain_alphabet, virtual_x, Sign,
    SignedAlphabet, Symbol,
};
pub(crate) use element::{parse_basis_sum, write_basis_sum};
pub use element::{tensor_product, QSymElement, TensorTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSymError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Why a family of truncations fails to solve the functional equation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctionalEqFailure {
    #[error("stability fails: truncation {n} with x{n} = 0 differs from truncation {}", n - 1)]
    Stability { n: usize },
    #[error("equation fails at n = {n}, i = {i}")]
    Equation { n: usize, i: usize },
}

/// `M_I · M_J` extended bilinearly.
pub fn qsym_product(f: &QSymElement, g: &QSymElement) -> QSymElement {
    f.product(g)
}

pub fn qsym_coproduct(f: &QSymElement) -> Vec<TensorTerm> {
    f.coproduct()
}

pub fn antipode(f: &QSymElement) -> QSymElement {
    f.antipode()
}

/// Checks, for every `n ≤ n_max`, that truncation `n` restricts to
/// truncation `n − 1` at `x_n = 0`, and that for `1 ≤ i < n`
/// `f_n|_{x_{i+1} = x_i}` equals `f_{n−2}` with `x_j ↦ x_{j+2}` for `j ≥ i`.
/// Failures are reported at the smallest `n`, stability first.
pub fn check_functional_eq<F>(family: F, n_max: usize) -> Result<(), FunctionalEqFailure>
where
    F: Fn(usize) -> CommPoly,
{
    let truncs: Vec<CommPoly> = (0..=n_max).map(&family).collect();
    for n in 1..=n_max {
        let xn = Var::x(n as u32);
        if truncs[n].set_zero(|v| v == xn) != truncs[n - 1] {
            return Err(FunctionalEqFailure::Stability { n });
        }
        if n < 2 {
            continue;
        }
        for i in 1..n as u32 {
            let lhs = truncs[n].rename(|v| if v == Var::x(i + 1) { Var::x(i) } else { v });
            let rhs = truncs[n - 2].rename(|v| if v.index >= i { Var::x(v.index + 2) } else { v });
            if lhs != rhs {
                return Err(FunctionalEqFailure::Equation { n, i: i as usize });
            }
        }
    }
    Ok(())
}

/// Rank of `{M_I(𝕏_{2n+1}) : |I| = n}`.
pub fn solve_dimension(n: u32) -> usize {
    let polys: Vec<CommPoly> = compositions_of(n).iter().map(|i| m_on_x(i, 2 * n as usize + 1)).collect();
    span_rank(&polys)
}

/// `f(𝕏ₙ)` for each truncation `n = 0,…,n_max`.
pub fn virtual_truncations(f: &QSymElement, n_max: usize) -> BTreeMap<usize, CommPoly> {
    (0..=n_max).map(|n| (n, expand_on_alphabet(f, &virtual_x(n)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;
    use crate::exactalg::Scalar;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn x(i: u32) -> CommPoly {
        CommPoly::var(Var::x(i))
    }

    #[test]
    fn single_part_on_x() {
        let got = m_on_x(&c("3"), 4);
        let want = &(&(&-&x(1).pow(3) + &x(2).pow(3)) - &x(3).pow(3)) + &x(4).pow(3);
        assert_eq!(got, want);
    }

    #[test]
    fn difference_of_alphabets() {
        // M_21(x ⊖ y) = −x²y + y³
        let (xv, yv) = (Var::u(1), Var::u(2));
        let alpha = SignedAlphabet::new(vec![(Sign::Plus, Symbol::Var(xv)), (Sign::Minus, Symbol::Var(yv))]);
        let got = expand_on_alphabet(&QSymElement::monomial(c("2.1")), &alpha);
        let (xp, yp) = (CommPoly::var(xv), CommPoly::var(yv));
        let want = &-&(&xp.pow(2) * &yp) + &yp.pow(3);
        assert_eq!(got, want);
    }

    #[test]
    fn minus_plus_same_letter_vanishes() {
        let y = Var::y(1);
        let alpha = SignedAlphabet::new(vec![(Sign::Minus, Symbol::Var(y)), (Sign::Plus, Symbol::Var(y))]);
        for n in 1..=4 {
            for i in compositions_of(n) {
                assert!(expand_on_alphabet(&QSymElement::monomial(i), &alpha).is_zero());
            }
        }
    }

    #[test]
    fn empty_alphabet() {
        assert!(m_on_x(&c("2"), 0).is_zero());
        assert_eq!(m_on_x(&Composition::empty(), 0), CommPoly::one());
    }

    #[test]
    fn substitution_example() {
        let f = m_on_x(&c("2"), 3);
        let g = f.rename(|v| if v == Var::x(2) { Var::x(1) } else { v });
        assert_eq!(g, -&x(3).pow(2));
    }

    #[test]
    fn functional_equation_examples() {
        let m21 = QSymElement::monomial(c("2.1"));
        assert_eq!(check_functional_eq(|n| expand_on_alphabet(&m21, &virtual_x(n)), 6), Ok(()));
        let const_family = |n: usize| if n == 0 { CommPoly::zero() } else { x(1) };
        assert_eq!(check_functional_eq(const_family, 4), Err(FunctionalEqFailure::Equation { n: 2, i: 1 }));
        let m1 = QSymElement::monomial(c("1"));
        let sq = &m1 * &m1;
        assert_eq!(check_functional_eq(|n| expand_on_alphabet(&sq, &virtual_x(n)), 5), Ok(()));
        let unstable = |n: usize| CommPoly::constant(Scalar::from(n));
        assert_eq!(check_functional_eq(unstable, 3), Err(FunctionalEqFailure::Stability { n: 1 }));
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(solve_dimension(1), 1);
        assert_eq!(solve_dimension(4), 8);
    }
}

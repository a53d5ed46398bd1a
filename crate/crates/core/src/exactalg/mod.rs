//! Exact arithmetic substrate: rationals, sparse commutative and
//! noncommutative polynomials, substitution, and exact rank.

mod commpoly;
mod echelon;
mod matrix;
mod ncpoly;
mod scalar;
mod text;

use std::collections::BTreeMap;

use thiserror::Error;

pub use commpoly::{CommPoly, Monomial, Var, VarFamily};
pub use echelon::{EchelonBasis, IntRow};
pub use matrix::RatMatrix;
pub use ncpoly::{Letter, LetterFamily, NCPoly, Word};
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable families {0} and {1} cannot be mixed")]
    FamilyMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {len} entries, expected {cols}")]
    Ragged { row: usize, len: usize, cols: usize },
}

/// Binary operations for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Shared surface of [`CommPoly`] and [`NCPoly`].
pub trait Polynomial: Clone + PartialEq {
    type Key: Ord + Clone;

    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn entries(&self) -> Vec<(Self::Key, Scalar)>;
    fn scale(&self, c: &Scalar) -> Self;
    fn add_unchecked(&self, other: &Self) -> Self;
    fn sub_unchecked(&self, other: &Self) -> Self;
    fn mul_unchecked(&self, other: &Self) -> Self;
    /// Labels of the variable groups in use; empty for constants.
    fn group_labels(&self) -> Vec<&'static str>;
    /// Whether the union of the two label sets lies in one admissible group.
    fn compatible(a: &[&'static str], b: &[&'static str]) -> bool;
}

/// Checked arithmetic: refuses to combine incompatible variable families.
pub fn poly_arith<P: Polynomial>(a: &P, b: &P, op: ArithOp) -> Result<P, AlgError> {
    let la = a.group_labels();
    let lb = b.group_labels();
    if !P::compatible(&la, &lb) {
        return Err(AlgError::FamilyMismatch(la.join(","), lb.join(",")));
    }
    Ok(match op {
        ArithOp::Add => a.add_unchecked(b),
        ArithOp::Sub => a.sub_unchecked(b),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

/// Scalar multiple; scaling by zero yields the empty polynomial.
pub fn scale<P: Polynomial>(a: &P, c: &Scalar) -> P {
    a.scale(c)
}

/// Coordinate rows of `polys` over the union of their supports.
pub fn coefficient_matrix<P: Polynomial>(polys: &[P]) -> RatMatrix {
    let mut index: BTreeMap<P::Key, usize> = BTreeMap::new();
    let entries: Vec<_> = polys.iter().map(|p| p.entries()).collect();
    for row in &entries {
        for (k, _) in row {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    let rows = entries
        .into_iter()
        .map(|row| row.into_iter().map(|(k, c)| (index[&k], c)).collect())
        .collect();
    RatMatrix::from_sparse_rows(index.len(), rows)
}

/// Whether `v` lies in the rational span of `basis`.
pub fn span_contains<P: Polynomial>(basis: &[P], v: &P) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut all: Vec<P> = basis.to_vec();
    let before = coefficient_matrix(&all).rank();
    all.push(v.clone());
    coefficient_matrix(&all).rank() == before
}

/// Rank of the span of `polys`.
pub fn span_rank<P: Polynomial>(polys: &[P]) -> usize {
    coefficient_matrix(polys).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> CommPoly {
        CommPoly::var(Var::x(i))
    }

    #[test]
    fn checked_arith() {
        let a = &x(1) + &x(2);
        let b = &x(1) - &x(2);
        let prod = poly_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(prod, &x(1).pow(2) - &x(2).pow(2));
        let p = CommPoly::var(Var::p(1));
        assert!(matches!(poly_arith(&a, &p, ArithOp::Add), Err(AlgError::FamilyMismatch(..))));
        let q = CommPoly::var(Var::q(1));
        let qp = CommPoly::var(Var::qp(1));
        assert!(poly_arith(&p, &q, ArithOp::Mul).is_ok());
        assert!(poly_arith(&p, &qp, ArithOp::Mul).is_ok());
        assert!(poly_arith(&(&p * &q), &qp, ArithOp::Mul).is_err());
        assert!(poly_arith(&CommPoly::constant(Scalar::from_int(3)), &p, ArithOp::Add).is_ok());
        assert!(scale(&a, &Scalar::zero()).terms().is_empty());
    }

    #[test]
    fn nc_checked_arith() {
        let a1 = NCPoly::letter(Letter::a(1));
        let a2 = NCPoly::letter(Letter::a(2));
        let ab = poly_arith(&a1, &a2, ArithOp::Mul).unwrap();
        let ba = poly_arith(&a2, &a1, ArithOp::Mul).unwrap();
        assert_ne!(ab, ba);
        let b1 = NCPoly::letter(Letter::b(1));
        let d1 = NCPoly::letter(Letter::d(1));
        assert!(poly_arith(&b1, &d1, ArithOp::Mul).is_ok());
        assert!(poly_arith(&a1, &b1, ArithOp::Add).is_err());
    }

    #[test]
    fn span_membership() {
        let b1 = &x(1) + &x(2);
        let b2 = x(1).pow(2);
        let basis = vec![b1.clone(), b2.clone()];
        assert!(span_contains(&basis, &b1));
        let v = &b1.scale(&Scalar::from_int(2)) + &b2.scale(&Scalar::from_int(3));
        assert!(span_contains(&basis, &v));
        assert!(!span_contains(&[x(1)], &x(1).pow(2)));
        assert_eq!(span_rank(&[x(1), x(1).scale(&Scalar::new(1, 2))]), 1);
    }
}

//! Young diagrams in four coordinate systems (interlacing, multirectangular,
//! row, Frobenius) and the evaluation map `ActY : f ↦ f ∘ IC` from
//! quasi-symmetric functions to functions on diagrams.
//!
//! ```
//! use qyd::diagrams::YoungDiagram;
//! let lam: YoungDiagram = "4,4,2".parse().unwrap();
//! assert_eq!(lam.interlacing().xs(), &[4, 2, 0, -1, -3]);
//! let mr = lam.multirect();
//! assert_eq!((mr.p(), mr.q()), (&[2, 1][..], &[2, 2][..]));
//! ```

mod coords;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::compositions_of;
use crate::exactalg::{EchelonBasis, IntRow, Scalar, Var};
use crate::qsym::{evaluate_on_values, QSymElement, Sign, SignedAlphabet, Symbol};

pub use coords::{FrobeniusCoords, InterlacingCoords, MultirectCoords};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("rows must be positive and weakly decreasing: {0}")]
    NotAPartition(String),
    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A Young diagram given by its rows `λ₁ ≥ λ₂ ≥ ⋯ > 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

pub type Partition = YoungDiagram;

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self, DiagramError> {
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(DiagramError::NotAPartition(format!("{rows:?}")));
        }
        Ok(YoungDiagram { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(!rows.contains(&0) && rows.windows(2).all(|w| w[0] >= w[1]));
        YoungDiagram { rows }
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `λᵢ` for `i ≥ 1`, zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let width = self.rows.first().copied().unwrap_or(0);
        let cols = (1..=width).map(|c| self.rows.iter().filter(|&&r| r >= c).count() as u32).collect();
        YoungDiagram { rows: cols }
    }

    /// Side of the largest square `(d,d)` inside the diagram.
    pub fn durfee_size(&self) -> usize {
        self.rows.iter().enumerate().take_while(|(i, &r)| r as usize > *i).count()
    }

    pub fn interlacing(&self) -> InterlacingCoords {
        self.multirect().to_interlacing()
    }

    pub fn multirect(&self) -> MultirectCoords {
        MultirectCoords::from_diagram(self)
    }

    pub fn frobenius(&self) -> FrobeniusCoords {
        FrobeniusCoords::from_diagram(self)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for YoungDiagram {
    type Err = DiagramError;

    /// `"4,4,2"`; `""`, `"()"` and `"0"` denote the empty diagram.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "()" || t == "0" {
            return Ok(YoungDiagram::empty());
        }
        let rows = t
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| DiagramError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        YoungDiagram::new(rows)
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<YoungDiagram> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size then decreasing lex.
pub fn partitions_up_to(n: u32) -> Vec<YoungDiagram> {
    (0..=n).flat_map(partitions_of).collect()
}

pub fn diagram_from_interlacing(xs: &[i64]) -> Result<YoungDiagram, DiagramError> {
    Ok(InterlacingCoords::new(xs.to_vec())?.to_diagram())
}

pub fn interlacing_coords(lam: &YoungDiagram) -> InterlacingCoords {
    lam.interlacing()
}

pub fn interlacing_to_multirect(xs: &InterlacingCoords) -> MultirectCoords {
    xs.to_multirect()
}

pub fn multirect_to_interlacing(mr: &MultirectCoords) -> InterlacingCoords {
    mr.to_interlacing()
}

pub fn multirect_coords(lam: &YoungDiagram) -> MultirectCoords {
    lam.multirect()
}

pub fn frobenius_coords(lam: &YoungDiagram) -> FrobeniusCoords {
    lam.frobenius()
}

/// `𝕏` read off an odd list of interlacing coordinates: `⊖(x₁) ⊕ (x₂) ⋯`.
pub fn interlacing_alphabet(xs: &[i64]) -> SignedAlphabet {
    SignedAlphabet::new(
        xs.iter()
            .enumerate()
            .map(|(i, &x)| (if i % 2 == 0 { Sign::Minus } else { Sign::Plus }, Symbol::Value(Scalar::from(x))))
            .collect(),
    )
}

/// `⊖(λ₁) ⊕ (λ₁−1) ⊖ (λ₂−1) ⊕ (λ₂−2) ⋯` through row `k`, closed by `⊖(−k)`,
/// which is what remains of the tail once equal opposite pairs cancel.
pub fn row_alphabet(lam: &YoungDiagram, k: usize) -> SignedAlphabet {
    let k = k.max(lam.len());
    let mut a = SignedAlphabet::default();
    for i in 1..=k {
        let li = lam.row(i) as i64 - i as i64;
        a.push(Sign::Minus, Symbol::Value(Scalar::from(li + 1)));
        a.push(Sign::Plus, Symbol::Value(Scalar::from(li)));
    }
    a.push(Sign::Minus, Symbol::Value(Scalar::from(-(k as i64))));
    a
}

/// `⊖(a₁+½) ⊕ (a₁−½) ⋯ ⊖(a_d+½) ⊕ (a_d−½)` followed by the mirrored column
/// part `⊕(½−b_d) ⊖ (−b_d−½) ⋯ ⊕(½−b₁) ⊖ (−b₁−½)`.
pub fn frobenius_alphabet(lam: &YoungDiagram) -> SignedAlphabet {
    let fr = lam.frobenius();
    let half = Scalar::new(1, 2);
    let mut alpha = SignedAlphabet::default();
    for a in fr.a() {
        alpha.push(Sign::Minus, Symbol::Value(a + &half));
        alpha.push(Sign::Plus, Symbol::Value(a - &half));
    }
    for b in fr.b().iter().rev() {
        alpha.push(Sign::Plus, Symbol::Value(&half - b));
        alpha.push(Sign::Minus, Symbol::Value(-(b + &half)));
    }
    alpha
}

/// Evaluates `f` on a signed alphabet of numbers.
pub fn eval_on(f: &QSymElement, alpha: &SignedAlphabet) -> Scalar {
    let vals = alpha.values().expect("numeric alphabet");
    evaluate_on_values(f, &vals)
}

/// `f(𝕏)` at the interlacing coordinates of `λ`.
pub fn act_y(f: &QSymElement, lam: &YoungDiagram) -> Scalar {
    eval_on(f, &interlacing_alphabet(lam.interlacing().xs()))
}

/// The variables `x₁,…,x_{2m+1}` bound to the interlacing coordinates of `λ`.
pub fn interlacing_bindings(lam: &YoungDiagram) -> Vec<(Var, Scalar)> {
    lam.interlacing().xs().iter().enumerate().map(|(i, &x)| (Var::x(i as u32 + 1), Scalar::from(x))).collect()
}

/// Ranks certifying `dim QΛₙ`: the evaluation rank is a lower bound and
/// `2^{n−1} − ideal_rank` an upper bound, since `M₁` lies in the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QLambdaReport {
    pub n: u32,
    pub ambient: usize,
    pub ideal_rank: usize,
    pub eval_rank: usize,
    pub diagrams: usize,
}

impl QLambdaReport {
    pub fn certified(&self) -> bool {
        self.eval_rank + self.ideal_rank == self.ambient
    }
}

pub fn qlambda_report(n: u32) -> QLambdaReport {
    let comps = compositions_of(n);
    let lams = partitions_up_to(2 * n);
    let mut eval = EchelonBasis::new();
    for i in &comps {
        let f = QSymElement::monomial(i.clone());
        let vals: Vec<Scalar> = lams.iter().map(|l| act_y(&f, l)).collect();
        let row: Vec<(u32, Scalar)> = vals.into_iter().enumerate().map(|(c, v)| (c as u32, v)).collect();
        eval.insert(IntRow::from_scalars(&row));
    }
    let index = |c: &crate::combinatorics::Composition| comps.iter().position(|d| d == c).unwrap() as u32;
    let mut ideal = EchelonBasis::new();
    if n >= 1 {
        let m1 = QSymElement::monomial("1".parse().unwrap());
        for j in compositions_of(n - 1) {
            let g = &m1 * &QSymElement::monomial(j);
            let row: Vec<(u32, Scalar)> = g.coeffs().iter().map(|(c, v)| (index(c), v.clone())).collect();
            ideal.insert(IntRow::from_scalars(&row));
        }
    }
    QLambdaReport { n, ambient: comps.len(), ideal_rank: ideal.rank(), eval_rank: eval.rank(), diagrams: lams.len() }
}

/// `dim QΛₙ`, the rank of the degree-`n` evaluations `λ ↦ M_I(𝕏)(IC(λ))`.
pub fn qlambda_dimension(n: u32) -> usize {
    qlambda_report(n).eval_rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;

    fn lam(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    fn m(s: &str) -> QSymElement {
        QSymElement::monomial(s.parse::<Composition>().unwrap())
    }

    #[test]
    fn coordinates_of_442() {
        let l = lam("4,4,2");
        assert_eq!(l.interlacing().xs(), &[4, 2, 0, -1, -3]);
        assert_eq!(diagram_from_interlacing(&[4, 2, 0, -1, -3]).unwrap(), l);
        assert_eq!(diagram_from_interlacing(&[4, 2, 2, 2, 0, -1, -3]).unwrap(), l);
        assert!(diagram_from_interlacing(&[1, 0, -2]).is_err());
        assert!(diagram_from_interlacing(&[1, 1]).is_err());
        let mr = l.multirect();
        assert_eq!(mr.p(), &[2, 1]);
        assert_eq!(mr.q(), &[2, 2]);
        assert_eq!(mr.q_prime(), vec![4, 2]);
        assert_eq!(YoungDiagram::empty().interlacing().xs(), &[0]);
    }

    #[test]
    fn small_multirect() {
        assert_eq!(lam("3").multirect(), MultirectCoords::new(vec![1], vec![3]).unwrap());
        let st = lam("2,1").multirect();
        assert_eq!((st.p(), st.q(), st.q_prime()), (&[1, 1][..], &[1, 1][..], vec![2, 1]));
        assert_eq!(InterlacingCoords::new(vec![0]).unwrap().to_multirect().m(), 0);
    }

    #[test]
    fn frobenius_values() {
        let fr = lam("4,4,2").frobenius();
        let h = |n, d| Scalar::new(n, d);
        assert_eq!(fr.a(), &[h(7, 2), h(5, 2)]);
        assert_eq!(fr.b(), &[h(5, 2), h(3, 2)]);
        assert_eq!(lam("4,4,2").conjugate(), lam("3,3,2,2"));
        let fr21 = lam("2,1").frobenius();
        assert_eq!((fr21.a(), fr21.b()), (&[h(3, 2)][..], &[h(3, 2)][..]));
    }

    #[test]
    fn round_trips() {
        for l in partitions_up_to(8) {
            let ic = l.interlacing();
            let alt: i64 = ic.xs().iter().enumerate().map(|(i, x)| if i % 2 == 0 { -x } else { *x }).sum();
            assert_eq!(alt, 0);
            assert!(ic.xs().windows(2).all(|w| w[0] > w[1]));
            assert_eq!(ic.to_diagram(), l);
            let mr = ic.to_multirect();
            assert!(mr.is_canonical());
            assert_eq!(mr, l.multirect());
            assert_eq!(mr.to_interlacing(), ic);
            assert_eq!(l.frobenius().to_diagram(), l);
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }

    #[test]
    fn degenerate_forms_give_same_diagram() {
        for l in partitions_up_to(6) {
            let mr = l.multirect();
            assert_eq!(mr.pad().to_diagram(), l);
            for i in 0..mr.m() {
                for a in 0..=mr.p()[i] {
                    let s = mr.split_p(i, a);
                    assert_eq!(s.to_diagram(), l);
                    assert_eq!(s.canonical(), mr);
                    assert_eq!(s.to_interlacing(), l.interlacing());
                }
                for a in 0..=mr.q()[i] {
                    assert_eq!(mr.split_q(i, a).to_diagram(), l);
                }
            }
        }
    }

    #[test]
    fn act_y_examples() {
        assert_eq!(act_y(&m("2"), &lam("1")), Scalar::from(-2));
        for l in partitions_up_to(8) {
            assert!(act_y(&m("1"), &l).is_zero());
            assert!(act_y(&QSymElement::one(), &l).is_one());
        }
    }

    #[test]
    fn alternate_alphabets_agree() {
        let fs: Vec<QSymElement> = (1..=3).flat_map(compositions_of).map(QSymElement::monomial).collect();
        for l in partitions_up_to(5) {
            for f in &fs {
                let ic = act_y(f, &l);
                assert_eq!(eval_on(f, &row_alphabet(&l, l.len())), ic, "{l} {f}");
                assert_eq!(eval_on(f, &row_alphabet(&l, l.len() + 2)), ic);
                assert_eq!(eval_on(f, &frobenius_alphabet(&l)), ic, "{l} {f}");
            }
        }
        assert!(frobenius_alphabet(&YoungDiagram::empty()).is_empty());
    }

    #[test]
    fn small_qlambda() {
        assert_eq!(qlambda_dimension(2), 1);
        let r = qlambda_report(4);
        assert!(r.certified());
        assert_eq!(r.eval_rank, 4);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(3), vec![lam("3"), lam("2,1"), lam("1,1,1")]);
    }
}

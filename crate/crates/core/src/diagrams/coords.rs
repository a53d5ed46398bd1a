use serde::{Deserialize, Serialize};

use crate::exactalg::Scalar;

use super::{DiagramError, YoungDiagram};

/// Abscissas `x₁ > x₂ > ⋯ > x_{2m+1}` of the extrema of a profile drawn in
/// Russian convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InterlacingCoords {
    xs: Vec<i64>,
}

impl InterlacingCoords {
    /// Accepts a weakly decreasing odd-length list with alternating sum 0.
    /// Equal neighbours are erased pairwise.
    pub fn new(xs: Vec<i64>) -> Result<Self, DiagramError> {
        let mut out: Vec<i64> = Vec::with_capacity(xs.len());
        for &x in &xs {
            match out.last() {
                Some(&last) if last < x => {
                    return Err(DiagramError::InvalidCoordinates(format!("{xs:?} is not decreasing")))
                }
                Some(&last) if last == x => {
                    out.pop();
                }
                _ => out.push(x),
            }
        }
        if out.len() % 2 == 0 {
            return Err(DiagramError::InvalidCoordinates(format!("{xs:?} has even length after erasure")));
        }
        let alt: i64 = out.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { -x } else { x }).sum();
        if alt != 0 {
            return Err(DiagramError::InvalidCoordinates(format!("{xs:?} has alternating sum {alt}")));
        }
        Ok(InterlacingCoords { xs: out })
    }

    pub fn xs(&self) -> &[i64] {
        &self.xs
    }

    /// `m`, where the list has length `2m + 1`.
    pub fn m(&self) -> usize {
        self.xs.len() / 2
    }

    pub fn to_diagram(&self) -> YoungDiagram {
        self.to_multirect().to_diagram()
    }

    /// `pᵢ = x_{2i−1} − x_{2i}`, `qᵢ = x_{2i} − x_{2i+1}`.
    pub fn to_multirect(&self) -> MultirectCoords {
        let m = self.m();
        let p = (1..=m).map(|i| (self.xs[2 * i - 2] - self.xs[2 * i - 1]) as u64).collect();
        let q = (1..=m).map(|i| (self.xs[2 * i - 1] - self.xs[2 * i]) as u64).collect();
        MultirectCoords { p, q }
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.xs.iter().map(|&x| Scalar::from(x)).collect()
    }
}

/// A diagram as `m` stacked rectangles: `pᵢ` rows of width
/// `q′ᵢ = qᵢ + ⋯ + q_m`, listed from the top row down.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultirectCoords {
    p: Vec<u64>,
    q: Vec<u64>,
}

impl MultirectCoords {
    pub fn new(p: Vec<u64>, q: Vec<u64>) -> Result<Self, DiagramError> {
        if p.len() != q.len() {
            return Err(DiagramError::InvalidCoordinates(format!(
                "p has {} entries but q has {}",
                p.len(),
                q.len()
            )));
        }
        Ok(MultirectCoords { p, q })
    }

    /// From cumulative widths `q′`, which must be weakly decreasing.
    pub fn from_q_prime(p: Vec<u64>, qp: Vec<u64>) -> Result<Self, DiagramError> {
        if qp.windows(2).any(|w| w[0] < w[1]) {
            return Err(DiagramError::InvalidCoordinates(format!("q' = {qp:?} is not decreasing")));
        }
        let q = (0..qp.len()).map(|i| qp[i] - qp.get(i + 1).copied().unwrap_or(0)).collect();
        MultirectCoords::new(p, q)
    }

    pub fn p(&self) -> &[u64] {
        &self.p
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    pub fn q_prime(&self) -> Vec<u64> {
        let mut out = vec![0; self.q.len()];
        let mut acc = 0;
        for i in (0..self.q.len()).rev() {
            acc += self.q[i];
            out[i] = acc;
        }
        out
    }

    pub fn to_diagram(&self) -> YoungDiagram {
        let mut rows = Vec::new();
        for (&p, w) in self.p.iter().zip(self.q_prime()) {
            if w > 0 {
                rows.extend(std::iter::repeat(w as u32).take(p as usize));
            }
        }
        YoungDiagram::from_rows_unchecked(rows)
    }

    /// `x₁ = Σq`, `x_{2i} = q′ᵢ − (p₁+⋯+pᵢ)`, `x_{2i+1} = q′_{i+1} − (p₁+⋯+pᵢ)`,
    /// kept without erasing degenerate pairs.
    pub fn to_interlacing_raw(&self) -> Vec<i64> {
        let qp = self.q_prime();
        let mut xs = vec![qp.first().copied().unwrap_or(0) as i64];
        let mut psum = 0i64;
        for i in 0..self.m() {
            psum += self.p[i] as i64;
            xs.push(qp[i] as i64 - psum);
            xs.push(qp.get(i + 1).copied().unwrap_or(0) as i64 - psum);
        }
        xs
    }

    pub fn to_interlacing(&self) -> InterlacingCoords {
        InterlacingCoords::new(self.to_interlacing_raw()).expect("multirectangular coordinates give a valid profile")
    }

    pub fn is_canonical(&self) -> bool {
        self.p.iter().chain(&self.q).all(|&v| v > 0)
    }

    /// The unique form with all entries positive.
    pub fn canonical(&self) -> MultirectCoords {
        MultirectCoords::from_diagram(&self.to_diagram())
    }

    pub fn from_diagram(lam: &YoungDiagram) -> MultirectCoords {
        let mut p = Vec::new();
        let mut widths = Vec::new();
        for &r in lam.rows() {
            if widths.last() == Some(&(r as u64)) {
                *p.last_mut().unwrap() += 1;
            } else {
                widths.push(r as u64);
                p.push(1);
            }
        }
        MultirectCoords::from_q_prime(p, widths).expect("rows are decreasing")
    }

    /// Replaces `(pᵢ, qᵢ)` by `(a, 0), (pᵢ − a, qᵢ)`; the diagram is unchanged.
    pub fn split_p(&self, i: usize, a: u64) -> MultirectCoords {
        assert!(a <= self.p[i]);
        let mut out = self.clone();
        out.p[i] -= a;
        out.p.insert(i, a);
        out.q.insert(i, 0);
        out
    }

    /// Replaces `(pᵢ, qᵢ)` by `(pᵢ, a), (0, qᵢ − a)`; the diagram is unchanged.
    pub fn split_q(&self, i: usize, a: u64) -> MultirectCoords {
        assert!(a <= self.q[i]);
        let mut out = self.clone();
        out.q[i] -= a;
        out.q.insert(i, a);
        out.p.insert(i + 1, 0);
        out
    }

    /// Appends the pair `p_{m+1} = q_{m+1} = 0`.
    pub fn pad(&self) -> MultirectCoords {
        let mut out = self.clone();
        out.p.push(0);
        out.q.push(0);
        out
    }
}

/// `aᵢ = λᵢ − i + ½`, `bᵢ = λ′ᵢ − i + ½` for `i ≤ d`, the Durfee size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusCoords {
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

impl FrobeniusCoords {
    pub fn from_diagram(lam: &YoungDiagram) -> FrobeniusCoords {
        let conj = lam.conjugate();
        let half = Scalar::new(1, 2);
        let d = lam.durfee_size();
        let shift = |rows: &[u32], i: usize| Scalar::from(rows[i] as i64 - i as i64 - 1) + &half;
        FrobeniusCoords {
            a: (0..d).map(|i| shift(lam.rows(), i)).collect(),
            b: (0..d).map(|i| shift(conj.rows(), i)).collect(),
        }
    }

    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Self, DiagramError> {
        let half = Scalar::new(1, 2);
        let ok = |v: &[Scalar]| {
            v.iter().all(|x| {
                let y = x - &half;
                y.is_integer() && !y.is_negative()
            }) && v.windows(2).all(|w| w[0] > w[1])
        };
        if a.len() != b.len() || !ok(&a) || !ok(&b) {
            return Err(DiagramError::InvalidCoordinates("Frobenius coordinates".into()));
        }
        Ok(FrobeniusCoords { a, b })
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn to_diagram(&self) -> YoungDiagram {
        let half = Scalar::new(1, 2);
        let arm = |x: &Scalar| (x - &half).to_i64().expect("half-integer") as u32;
        let d = self.d() as u32;
        let mut rows: Vec<u32> = self.a.iter().enumerate().map(|(i, x)| arm(x) + i as u32 + 1).collect();
        let cols: Vec<u32> = self.b.iter().enumerate().map(|(j, y)| arm(y) + j as u32 + 1).collect();
        let depth = cols.first().copied().unwrap_or(0);
        rows.extend((d + 1..=depth).map(|r| cols.iter().filter(|&&c| c >= r).count() as u32));
        YoungDiagram::from_rows_unchecked(rows)
    }
}

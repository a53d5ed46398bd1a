use super::echelon::{bucket_echelon, IntRow};
use super::{AlgError, Scalar};

/// A rational matrix stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Scalar::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Result<Self, AlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(AlgError::Ragged { row: i, len: r.len(), cols });
            }
            m.data[i] = r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect();
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self, AlgError> {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        RatMatrix::from_dense(&dense)
    }

    /// Rows given as `(column, value)` lists; zero values are dropped and
    /// repeated columns summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(r.len());
                for (j, v) in r {
                    assert!(j < cols, "column {j} out of range {cols}");
                    match out.last_mut() {
                        Some(last) if last.0 == j => last.1 += &v,
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect::<Vec<_>>();
        RatMatrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                t.data[*j].push((i, v.clone()));
            }
        }
        t
    }

    fn int_rows(&self) -> Vec<IntRow> {
        self.data
            .iter()
            .map(|r| IntRow::from_scalars(&r.iter().map(|(j, v)| (*j as u32, v.clone())).collect::<Vec<_>>()))
            .collect()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        bucket_echelon(self.int_rows()).len()
    }

    /// A basis of `{y : yᵀ·A = 0}`, each vector of length `rows`.
    ///
    /// Each row is augmented by a unit vector placed after the real columns;
    /// pivots whose leading column falls in the augmented block are kernel
    /// vectors.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        let off = self.cols as u32;
        let rows: Vec<IntRow> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut e: Vec<(u32, Scalar)> = r.iter().map(|(j, v)| (*j as u32, v.clone())).collect();
                e.push((off + i as u32, Scalar::one()));
                IntRow::from_scalars(&e)
            })
            .collect();
        bucket_echelon(rows)
            .into_iter()
            .filter(|p| p.lead_col().is_some_and(|c| c >= off))
            .map(|p| {
                let mut v = vec![Scalar::zero(); self.rows];
                for (c, x) in p.entries() {
                    v[(c - off) as usize] = x;
                }
                v
            })
            .collect()
    }

    /// A basis of `{x : A·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.transpose().left_kernel()
    }

    /// `A·v` for a dense vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|r| r.iter().map(|(j, x)| x * &v[*j]).sum())
            .collect()
    }
}

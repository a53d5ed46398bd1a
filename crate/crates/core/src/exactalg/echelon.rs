//! Fraction-free sparse row elimination over the integers.
//!
//! Rational rows are scaled to primitive integer rows. Eliminating the leading
//! entry of `r` against a pivot row `p` replaces `r` by `a·r − b·p` with
//! `a, b` the leading entries divided by their gcd, then divides out the
//! content. Rows live in `i64` until an entry overflows, then in `BigInt`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Vals {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// A sparse primitive integer row with strictly increasing column indices
/// and a positive leading entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRow {
    cols: Vec<u32>,
    vals: Vals,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
        if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
            return gcd_u64(a as u64, b as u64) as u128;
        }
    }
    a
}

impl IntRow {
    pub fn empty() -> Self {
        IntRow { cols: Vec::new(), vals: Vals::Small(Vec::new()) }
    }

    /// Builds a primitive row from integer entries; zeros are dropped and
    /// repeated columns summed.
    pub fn from_i64(mut entries: Vec<(u32, i64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut wide: Vec<(u32, i128)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match wide.last_mut() {
                Some(last) if last.0 == c => last.1 += v as i128,
                _ => wide.push((c, v as i128)),
            }
        }
        wide.retain(|e| e.1 != 0);
        Self::finish_wide(wide)
    }

    /// Clears denominators of a rational row and makes it primitive.
    pub fn from_scalars(entries: &[(u32, Scalar)]) -> Self {
        let mut sorted: Vec<(u32, Scalar)> = Vec::with_capacity(entries.len());
        let mut tmp = entries.to_vec();
        tmp.sort_by_key(|e| e.0);
        for (c, v) in tmp {
            match sorted.last_mut() {
                Some(last) if last.0 == c => last.1 += &v,
                _ => sorted.push((c, v)),
            }
        }
        sorted.retain(|e| !e.1.is_zero());
        let mut lcm = BigInt::from(1);
        for (_, v) in &sorted {
            lcm = lcm.lcm(&v.denom());
        }
        let cols = sorted.iter().map(|e| e.0).collect();
        let vals = sorted.iter().map(|(_, v)| v.numer() * (&lcm / v.denom())).collect();
        Self::finish_big(cols, vals)
    }

    fn finish_wide(mut wide: Vec<(u32, i128)>) -> Self {
        if wide.is_empty() {
            return IntRow::empty();
        }
        let mut g: u128 = 0;
        for e in &wide {
            g = gcd_u128(g, e.1.unsigned_abs());
            if g == 1 {
                break;
            }
        }
        let sign: i128 = if wide[0].1 < 0 { -1 } else { 1 };
        let g = g as i128 * sign;
        if g != 1 {
            for e in wide.iter_mut() {
                e.1 /= g;
            }
        }
        let cols: Vec<u32> = wide.iter().map(|e| e.0).collect();
        let small: Option<Vec<i64>> = wide.iter().map(|e| i64::try_from(e.1).ok()).collect();
        match small {
            Some(vals) => IntRow { cols, vals: Vals::Small(vals) },
            None => IntRow { cols, vals: Vals::Big(wide.iter().map(|e| BigInt::from(e.1)).collect()) },
        }
    }

    fn finish_big(cols: Vec<u32>, mut vals: Vec<BigInt>) -> Self {
        if cols.is_empty() {
            return IntRow::empty();
        }
        let mut g = BigInt::zero();
        for v in &vals {
            g = g.gcd(v);
            if g == BigInt::from(1) {
                break;
            }
        }
        if vals[0].is_negative() {
            g = -g;
        }
        if g != BigInt::from(1) {
            for v in vals.iter_mut() {
                *v = &*v / &g;
            }
        }
        let small: Option<Vec<i64>> = vals.iter().map(|v| v.to_i64()).collect();
        match small {
            Some(s) => IntRow { cols, vals: Vals::Small(s) },
            None => IntRow { cols, vals: Vals::Big(vals) },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn lead_col(&self) -> Option<u32> {
        self.cols.first().copied()
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    fn lead_bits(&self) -> u64 {
        match &self.vals {
            Vals::Small(v) => (64 - v[0].unsigned_abs().leading_zeros()) as u64,
            Vals::Big(v) => v[0].bits(),
        }
    }

    fn big_vals(&self) -> Vec<BigInt> {
        match &self.vals {
            Vals::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Vals::Big(v) => v.clone(),
        }
    }

    pub fn entries(&self) -> Vec<(u32, Scalar)> {
        match &self.vals {
            Vals::Small(v) => self.cols.iter().zip(v).map(|(&c, &x)| (c, Scalar::from_int(x))).collect(),
            Vals::Big(v) => self
                .cols
                .iter()
                .zip(v)
                .map(|(&c, x)| (c, Scalar::from_bigint(x.clone())))
                .collect(),
        }
    }

    /// Cancels the leading entry of `self` against `pivot` (same leading column).
    pub fn eliminate(&self, pivot: &IntRow) -> IntRow {
        debug_assert_eq!(self.lead_col(), pivot.lead_col());
        if let (Vals::Small(x), Vals::Small(y)) = (&self.vals, &pivot.vals) {
            let g = gcd_u64(x[0].unsigned_abs(), y[0].unsigned_abs()) as i128;
            let a = y[0] as i128 / g;
            let b = x[0] as i128 / g;
            let (c1, c2) = (&self.cols, &pivot.cols);
            let mut out: Vec<(u32, i128)> = Vec::with_capacity(c1.len() + c2.len());
            let (mut i, mut j) = (1, 1);
            while i < c1.len() || j < c2.len() {
                let ci = c1.get(i).copied().unwrap_or(u32::MAX);
                let cj = c2.get(j).copied().unwrap_or(u32::MAX);
                if ci < cj {
                    out.push((ci, a * x[i] as i128));
                    i += 1;
                } else if cj < ci {
                    out.push((cj, -b * y[j] as i128));
                    j += 1;
                } else {
                    let v = a * x[i] as i128 - b * y[j] as i128;
                    if v != 0 {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            return Self::finish_wide(out);
        }
        let x = self.big_vals();
        let y = pivot.big_vals();
        let g = x[0].gcd(&y[0]);
        let a = &y[0] / &g;
        let b = &x[0] / &g;
        let (c1, c2) = (&self.cols, &pivot.cols);
        let mut cols = Vec::with_capacity(c1.len() + c2.len());
        let mut vals = Vec::with_capacity(c1.len() + c2.len());
        let (mut i, mut j) = (1, 1);
        while i < c1.len() || j < c2.len() {
            let ci = c1.get(i).copied().unwrap_or(u32::MAX);
            let cj = c2.get(j).copied().unwrap_or(u32::MAX);
            if ci < cj {
                cols.push(ci);
                vals.push(&a * &x[i]);
                i += 1;
            } else if cj < ci {
                cols.push(cj);
                vals.push(-(&b * &y[j]));
                j += 1;
            } else {
                let v = &a * &x[i] - &b * &y[j];
                if !v.is_zero() {
                    cols.push(ci);
                    vals.push(v);
                }
                i += 1;
                j += 1;
            }
        }
        Self::finish_big(cols, vals)
    }
}

/// Rank by bucketed elimination: rows are grouped by leading column; in each
/// bucket the pivot is the row whose leading entry has the fewest bits (ties:
/// fewest nonzeros, then input order) and the other rows are reduced against
/// it. Returns the pivot rows in increasing leading column.
pub(crate) fn bucket_echelon(rows: Vec<IntRow>) -> Vec<IntRow> {
    let mut buckets: BTreeMap<u32, Vec<IntRow>> = BTreeMap::new();
    for r in rows {
        if let Some(c) = r.lead_col() {
            buckets.entry(c).or_default().push(r);
        }
    }
    let mut pivots = Vec::new();
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let best = (0..bucket.len())
            .min_by_key(|&i| (bucket[i].lead_bits(), bucket[i].nnz(), i))
            .expect("bucket is never empty");
        let pivot = bucket.swap_remove(best);
        for r in bucket {
            let red = r.eliminate(&pivot);
            if let Some(c) = red.lead_col() {
                buckets.entry(c).or_default().push(red);
            }
        }
        pivots.push(pivot);
    }
    pivots
}

/// An incrementally grown row echelon form.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<u32, IntRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces leading entries until the leading column is free; zero iff in span.
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some(c) = row.lead_col() {
            match self.pivots.get(&c) {
                Some(p) => row = row.eliminate(p),
                None => break,
            }
        }
        row
    }

    pub fn contains(&self, row: &IntRow) -> bool {
        self.reduce(row.clone()).is_zero()
    }

    /// Adds `row`; returns whether the rank grew.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let red = self.reduce(row);
        match red.lead_col() {
            Some(c) => {
                self.pivots.insert(c, red);
                true
            }
            None => false,
        }
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = &IntRow> {
        self.pivots.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalization() {
        let r = IntRow::from_i64(vec![(3, -4), (1, -6), (3, 0), (5, 10)]);
        assert_eq!(r.entries(), vec![(1, Scalar::from_int(3)), (3, Scalar::from_int(2)), (5, Scalar::from_int(-5))]);
        let s = IntRow::from_scalars(&[(0, Scalar::new(1, 2)), (2, Scalar::new(-1, 3))]);
        assert_eq!(s.entries(), vec![(0, Scalar::from_int(3)), (2, Scalar::from_int(-2))]);
    }

    #[test]
    fn elimination_overflows_into_bigint() {
        let big = i64::MAX / 2;
        let r = IntRow::from_i64(vec![(0, 3), (1, big)]);
        let p = IntRow::from_i64(vec![(0, 2), (1, -big)]);
        let e = r.eliminate(&p);
        let expected = BigInt::from(big) * 5;
        assert_eq!(e.entries(), vec![(1, Scalar::from_int(1))]);
        let r = IntRow::from_i64(vec![(0, 3), (1, big), (2, 1)]);
        let e = r.eliminate(&p);
        assert_eq!(e.entries(), vec![(1, Scalar::from_bigint(expected)), (2, Scalar::from_int(2))]);
    }

    #[test]
    fn incremental_rank() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(IntRow::from_i64(vec![(0, 1), (1, 1)])));
        assert!(e.insert(IntRow::from_i64(vec![(0, 1), (1, -1)])));
        assert!(!e.insert(IntRow::from_i64(vec![(1, 7)])));
        assert!(e.contains(&IntRow::from_i64(vec![(0, 2), (1, 5)])));
        assert!(!e.contains(&IntRow::from_i64(vec![(2, 1)])));
        assert_eq!(e.rank(), 2);
    }
}

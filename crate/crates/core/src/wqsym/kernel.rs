use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::combinatorics::{compositions_of, ordered_bell, packed_words, Composition, PackedWord, Permutation};
use crate::exactalg::{EchelonBasis, IntRow, LetterFamily, Scalar};

use super::{nc_m_on_alphabet, virtual_a, WQSymElement};

fn index_of(words: &[PackedWord]) -> HashMap<PackedWord, u32> {
    words.iter().enumerate().map(|(i, u)| (u.clone(), i as u32)).collect()
}

fn coords(f: &WQSymElement, index: &HashMap<PackedWord, u32>) -> Vec<(u32, i64)> {
    f.coeffs()
        .iter()
        .map(|(u, c)| (index[u], c.to_i64().expect("integer coordinates")))
        .collect()
}

/// Closure of `{P_w·P₁ : |w| = n − 1}` under the adjacent transpositions,
/// returning the accepted spanning vectors and their echelon form.
fn ideal_closure(n: usize) -> (Vec<PackedWord>, Vec<Vec<(u32, i64)>>, EchelonBasis) {
    let words = packed_words(n);
    let mut basis = EchelonBasis::new();
    let mut accepted = Vec::new();
    if n == 0 {
        return (words, accepted, basis);
    }
    let index = index_of(&words);
    let p1 = WQSymElement::basis(PackedWord::new(vec![1]).expect("packed"));
    let swaps: Vec<Vec<u32>> = (1..n)
        .map(|i| {
            let mut images: Vec<u32> = (1..=n as u32).collect();
            images.swap(i - 1, i);
            let s = Permutation::new(images).expect("transposition");
            words.iter().map(|u| index[&u.act(&s).expect("same length")]).collect()
        })
        .collect();
    let mut queue = VecDeque::new();
    for w in packed_words(n - 1) {
        let v = coords(&WQSymElement::basis(w).product(&p1), &index);
        if basis.insert(IntRow::from_i64(v.clone())) {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for s in &swaps {
            let moved: Vec<(u32, i64)> = v.iter().map(|&(c, x)| (s[c as usize], x)).collect();
            if basis.insert(IntRow::from_i64(moved.clone())) {
                queue.push_back(moved);
            }
        }
        accepted.push(v);
    }
    (words, accepted, basis)
}

/// A basis of `𝒦ₙ`, the span of `(W·P₁)·σ` over `W ∈ WQSym_{n−1}` and
/// `σ ∈ 𝔖ₙ`, in the `P` basis.
pub fn kernel_ideal_basis(n: usize) -> Vec<WQSymElement> {
    let (words, accepted, _) = ideal_closure(n);
    accepted
        .into_iter()
        .map(|v| WQSymElement::from_terms(v.into_iter().map(|(c, x)| (words[c as usize].clone(), Scalar::from(x)))))
        .collect()
}

pub fn kernel_ideal_dimension(n: usize) -> usize {
    ideal_closure(n).2.rank()
}

/// Column of a `b, d` letter at width `m`: `bᵢ ↦ 2i − 2`, `dᵢ ↦ 2i − 1`.
fn bd_column(family: LetterFamily, i: u32) -> usize {
    match family {
        LetterFamily::B => 2 * i as usize - 2,
        _ => 2 * i as usize - 1,
    }
}

/// Dense `Φ_{a→b,d}(P_{u↑}(𝔸_{2m+1}))` for the nondecreasing word with
/// evaluation `i`, indexed by words over the `2m` letters `b₁, d₁, b₂, …`
/// (first place most significant).
fn phi_sorted_dense(i: &Composition, m: usize) -> Vec<i64> {
    let n = i.weight() as usize;
    let (na, nb) = (2 * m + 1, 2 * m);
    let mut letter_map = vec![vec![0i64; nb]; na];
    for (j, p) in super::a_in_bd(m).iter().enumerate() {
        for (w, c) in p.terms() {
            letter_map[j][bd_column(w[0].family, w[0].index)] = c.to_i64().expect("unit coefficients");
        }
    }
    let mut dense = vec![0i64; na.pow(n as u32)];
    for (w, c) in nc_m_on_alphabet(i, &virtual_a(na)).terms() {
        let idx = w.iter().fold(0usize, |acc, l| acc * na + l.index as usize - 1);
        dense[idx] = c.to_i64().expect("integer coefficients");
    }
    for axis in 0..n {
        let outer = nb.pow(axis as u32);
        let inner = na.pow((n - axis - 1) as u32);
        let mut next = vec![0i64; outer * nb * inner];
        for o in 0..outer {
            for j in 0..na {
                let src = &dense[(o * na + j) * inner..(o * na + j + 1) * inner];
                if src.iter().all(|&x| x == 0) {
                    continue;
                }
                for (col, &l) in letter_map[j].iter().enumerate() {
                    if l == 0 {
                        continue;
                    }
                    let dst = &mut next[(o * nb + col) * inner..(o * nb + col + 1) * inner];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d += l * s;
                    }
                }
            }
        }
        dense = next;
    }
    dense
}

/// The rows `Φ_{a→b,d}(P_u(𝔸_{2m+1}))` for the packed words of length `n` in
/// lexicographic order, as integer rows over the words in `b₁, d₁, …, b_m, d_m`.
/// Each row is the row of `u↑` moved to places by `σ_u`.
pub fn phi_rows(n: usize, m: usize) -> Vec<Vec<(u32, i64)>> {
    let nb = 2 * m;
    let mut cache: HashMap<Composition, Vec<(Vec<usize>, i64)>> = HashMap::new();
    let mut rows = Vec::new();
    for u in packed_words(n) {
        let entries = cache.entry(u.eval()).or_insert_with(|| {
            phi_sorted_dense(&u.eval(), m)
                .into_iter()
                .enumerate()
                .filter(|e| e.1 != 0)
                .map(|(mut idx, x)| {
                    let mut digits = vec![0usize; n];
                    for d in digits.iter_mut().rev() {
                        *d = idx % nb;
                        idx /= nb;
                    }
                    (digits, x)
                })
                .collect()
        });
        let sigma = u.sort_permutation();
        let mut row: Vec<(u32, i64)> = entries
            .iter()
            .map(|(digits, x)| {
                let col = sigma.images().iter().fold(0usize, |acc, &s| acc * nb + digits[s as usize - 1]);
                (col as u32, *x)
            })
            .collect();
        row.sort_unstable();
        rows.push(row);
    }
    rows
}

/// Kernel and image of `Φ_{a→b,d}` on `WQSym_n` at width `m` and `m + 1`.
///
/// `image_rank` is the rank modulo a prime of the rows restricted to the
/// words in the first few letter pairs, a lower bound for the rank over ℚ. When `𝒦ₙ` lies in the
/// kernel the rank is at most `ambient − ideal_dim`, so [`holds`] certifies
/// the exact rank and nullity.
///
/// [`holds`]: NcKernelReport::holds
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcKernelReport {
    pub n: usize,
    pub m: usize,
    pub ambient: usize,
    pub columns: usize,
    pub image_rank: usize,
    pub nullity: usize,
    pub image_rank_wider: usize,
    pub ideal_dim: usize,
    /// Every generator `P_w·P₁` maps to zero at width `m` on all columns.
    pub ideal_in_kernel: bool,
}

impl NcKernelReport {
    pub fn stable(&self) -> bool {
        self.image_rank == self.image_rank_wider
    }

    /// Nullity equals `dim 𝒦ₙ`, `𝒦ₙ` lies in the kernel, the width is
    /// stable, and the image has the size of the even set compositions.
    pub fn holds(&self) -> bool {
        let ob = ordered_bell(self.n) as usize;
        let even = if self.n % 2 == 0 { (ob + 1) / 2 } else { (ob - 1) / 2 };
        self.nullity == self.ideal_dim && self.ideal_in_kernel && self.stable() && self.image_rank == even
    }
}

/// Whether `Σ v_u · rows[u]` vanishes, computed in `i128`.
#[cfg(test)]
fn combination_vanishes(rows: &[Vec<(u32, i64)>], v: &[(u32, i64)]) -> bool {
    let mut acc: HashMap<u32, i128> = HashMap::new();
    for &(u, c) in v {
        for &(col, x) in &rows[u as usize] {
            *acc.entry(col).or_default() += c as i128 * x as i128;
        }
    }
    acc.values().all(|&x| x == 0)
}

#[cfg(test)]
fn rank_of(rows: &[Vec<(u32, i64)>]) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(IntRow::from_i64(r.clone()));
    }
    basis.rank()
}

const PRIME: u64 = (1 << 31) - 1;

/// Sorted-word tensors `Φ(P_{u↑})` for every evaluation of length `n`.
fn sorted_tensors(n: usize, m: usize) -> HashMap<Composition, Vec<i64>> {
    compositions_of(n as u32).into_iter().map(|i| {
        let d = phi_sorted_dense(&i, m);
        (i, d)
    }).collect()
}

/// Index into the sorted tensor of the entry that lands on column `digits`
/// of the row of `u`.
fn source_index(digits: &[usize], sigma: &Permutation, nb: usize) -> usize {
    let mut sorted = [0usize; 16];
    for (k, &s) in sigma.images().iter().enumerate() {
        sorted[s as usize - 1] = digits[k];
    }
    sorted[..digits.len()].iter().fold(0usize, |acc, &d| acc * nb + d)
}

fn digits_of(mut col: usize, n: usize, nb: usize) -> Vec<usize> {
    let mut digits = vec![0usize; n];
    for d in digits.iter_mut().rev() {
        *d = col % nb;
        col /= nb;
    }
    digits
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Number of letter pairs `bᵢ, dᵢ` whose words give the rank columns: the
/// largest `c ≤ m` with `(2c)ⁿ ≤ COLUMN_LIMIT`, and at least 1.
fn column_pairs(n: usize, m: usize) -> usize {
    (1..=m).take_while(|&c| c == 1 || (2 * c).pow(n as u32) <= COLUMN_LIMIT).last().unwrap_or(1)
}

const COLUMN_LIMIT: usize = 50_000;

/// Buckets each column is spread over when rows are sketched.
const SKETCH_SPREAD: u64 = 4;

fn mix(x: u64) -> u64 {
    let x = (x ^ (x >> 31)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let x = (x ^ (x >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^ (x >> 32)
}

/// Rank modulo `PRIME` of the rows `Φ(P_u)` at width `m` on the columns
/// spelled with the first `pairs` letter pairs. Rows in `first` are taken
/// before the others; the elimination stops once `bound` is reached.
///
/// With more columns than `bound + bound/8 + 16`, each row is first mapped
/// by a fixed sparse pseudo-random matrix onto that many coordinates, which
/// can only lower the rank.
fn restricted_rank(n: usize, m: usize, pairs: usize, first: &[PackedWord], bound: usize) -> usize {
    let nb = 2 * m;
    let cols: Vec<Vec<usize>> = (0..(2 * pairs).pow(n as u32)).map(|c| digits_of(c, n, 2 * pairs)).collect();
    let tensors = sorted_tensors(n, m);
    let mut order: Vec<PackedWord> = first.to_vec();
    let taken: HashSet<&PackedWord> = first.iter().collect();
    let rest: Vec<PackedWord> = packed_words(n).into_iter().filter(|u| !taken.contains(u)).collect();
    order.extend(rest);
    let width = bound.saturating_add(bound / 8).saturating_add(16);
    let sketch: Option<Vec<[(usize, u64); SKETCH_SPREAD as usize]>> = (cols.len() > width).then(|| {
        (0..cols.len() as u64)
            .map(|c| {
                std::array::from_fn(|j| {
                    let h = mix(c * SKETCH_SPREAD + j as u64);
                    ((h % width as u64) as usize, 1 + (h >> 32) % (PRIME - 1))
                })
            })
            .collect()
    });
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for u in order {
        if pivots.len() >= bound {
            break;
        }
        let d = &tensors[&u.eval()];
        let sigma = u.sort_permutation();
        let raw = cols.iter().map(|digits| d[source_index(digits, &sigma, nb)].rem_euclid(PRIME as i64) as u64);
        let mut row: Vec<u64> = match &sketch {
            None => raw.collect(),
            Some(spread) => {
                let mut out = vec![0u64; width];
                for (x, targets) in raw.zip(spread) {
                    if x != 0 {
                        for &(k, r) in targets {
                            out[k] = (out[k] + x * r) % PRIME;
                        }
                    }
                }
                out
            }
        };
        for (pc, prow) in &pivots {
            let f = row[*pc];
            if f == 0 {
                continue;
            }
            let f = PRIME - f;
            for (x, &y) in row.iter_mut().zip(prow) {
                *x = (*x + f * y) % PRIME;
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let inv = pow_mod(row[pc], PRIME - 2);
            for x in row.iter_mut() {
                *x = *x * inv % PRIME;
            }
            pivots.push((pc, row));
        }
    }
    pivots.len()
}

/// Whether every `Φ(P_w·P₁)` with `|w| = n − 1` vanishes on all columns.
fn generators_vanish(n: usize, m: usize) -> bool {
    if n == 0 {
        return true;
    }
    let nb = 2 * m;
    let total = nb.pow(n as u32);
    let tensors = sorted_tensors(n, m);
    let cols: Vec<Vec<usize>> = (0..total).map(|c| digits_of(c, n, nb)).collect();
    let p1 = WQSymElement::basis(PackedWord::new(vec![1]).expect("packed"));
    let mut acc = vec![0i128; total];
    packed_words(n - 1).into_iter().all(|w| {
        let g = WQSymElement::basis(w).product(&p1);
        acc.iter_mut().for_each(|x| *x = 0);
        for (u, c) in g.coeffs() {
            let c = c.to_i64().expect("integer coefficients") as i128;
            let d = &tensors[&u.eval()];
            let sigma = u.sort_permutation();
            for (a, digits) in acc.iter_mut().zip(&cols) {
                *a += c * d[source_index(digits, &sigma, nb)] as i128;
            }
        }
        acc.iter().all(|&x| x == 0)
    })
}

/// Width used when none is given: `n` up to 5, then 3, the smallest width
/// whose kernel is already `𝒦₆` at `n = 6`.
pub fn default_kernel_width(n: usize) -> usize {
    if n <= 5 {
        n.max(1)
    } else {
        3
    }
}

/// Kernel report at width `m`, checked for stability at width `m + 1`.
pub fn phi_kernel_dimension(n: usize, m: usize) -> NcKernelReport {
    let (words, _, ideal) = ideal_closure(n);
    let ambient = words.len();
    let ideal_dim = ideal.rank();
    let bound = ambient - ideal_dim;
    let leads: HashSet<u32> = ideal.pivot_rows().filter_map(IntRow::lead_col).collect();
    let complement: Vec<PackedWord> =
        words.iter().enumerate().filter(|(i, _)| !leads.contains(&(*i as u32))).map(|(_, u)| u.clone()).collect();
    let pairs = column_pairs(n, m);
    let image_rank = restricted_rank(n, m, pairs, &complement, bound);
    NcKernelReport {
        n,
        m,
        ambient,
        columns: (2 * pairs).pow(n as u32),
        image_rank,
        nullity: ambient - image_rank,
        image_rank_wider: restricted_rank(n, m + 1, pairs, &complement, bound),
        ideal_dim,
        ideal_in_kernel: generators_vanish(n, m),
    }
}

/// `OB(n) = Σ_{j=0}^{n} C(n,j)·(OB(n−j) − k_{n−j})` for every `n < ks.len()`.
pub fn recurrence_holds(ks: &[usize]) -> bool {
    let binom = |n: usize, k: usize| -> u128 { (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) };
    (0..ks.len()).all(|n| {
        let rhs: i128 = (0..=n)
            .map(|j| binom(n, j) as i128 * (ordered_bell(n - j) as i128 - ks[n - j] as i128))
            .sum();
        rhs == ordered_bell(n) as i128
    })
}

/// `k = (OB(n) − (−1)ⁿ)/2`.
pub fn odd_count_identity(n: usize, k: usize) -> bool {
    let ob = ordered_bell(n) as i128;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    2 * k as i128 == ob - sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{set_compositions, Parity};
    use crate::wqsym::{p_virtual_expand, phi_a_to_bd};

    #[test]
    fn ideal_dimensions() {
        let want = [0, 1, 1, 7, 37];
        for (n, &k) in want.iter().enumerate() {
            assert_eq!(kernel_ideal_dimension(n), k);
            assert_eq!(k, set_compositions(n, Parity::Odd).len());
        }
        assert!(recurrence_holds(&want));
        assert!(!recurrence_holds(&[0, 1, 2]));
        for (n, &k) in want.iter().enumerate().skip(1) {
            assert!(odd_count_identity(n, k));
        }
    }

    #[test]
    fn fast_rows_match_substitution() {
        for n in 1..=3 {
            for m in 1..=2 {
                let rows = phi_rows(n, m);
                for (u, row) in packed_words(n).iter().zip(&rows) {
                    let direct = phi_a_to_bd(&p_virtual_expand(u, 2 * m + 1), m);
                    let mut entries: Vec<(u32, i64)> = Vec::new();
                    for (w, c) in direct.terms() {
                        let col = w.iter().fold(0usize, |acc, l| acc * 2 * m + bd_column(l.family, l.index));
                        entries.push((col as u32, c.to_i64().unwrap()));
                    }
                    entries.sort_unstable();
                    assert_eq!(*row, entries, "{u} m={m}");
                }
            }
        }
    }

    #[test]
    fn small_kernels() {
        for n in 1..=3 {
            let r = phi_kernel_dimension(n, n);
            assert!(r.holds(), "{r:?}");
        }
        let r = phi_kernel_dimension(2, 2);
        assert_eq!((r.nullity, r.image_rank), (1, 2));
    }

    #[test]
    fn restricted_rank_matches_exact_rank() {
        for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)] {
            let exact = rank_of(&phi_rows(n, m));
            assert_eq!(restricted_rank(n, m, m, &[], usize::MAX), exact, "n={n} m={m}");
        }
    }

    #[test]
    fn whole_closure_in_kernel() {
        for n in 1..=4 {
            let rows = phi_rows(n, 2);
            let (_, accepted, _) = ideal_closure(n);
            assert!(accepted.iter().all(|v| combination_vanishes(&rows, v)));
            assert!(generators_vanish(n, 2));
        }
        let rows = phi_rows(3, 1);
        assert!(!combination_vanishes(&rows, &[(0, 1)]));
    }

    #[test]
    fn rows_are_equivariant() {
        for n in 2..=4 {
            let m = 2;
            let nb = 2 * m;
            let words = packed_words(n);
            let index = index_of(&words);
            let rows = phi_rows(n, m);
            for i in 1..n {
                let mut images: Vec<u32> = (1..=n as u32).collect();
                images.swap(i - 1, i);
                for (u, row) in words.iter().zip(&rows) {
                    let moved = &rows[index[&u.act(&Permutation::new(images.clone()).unwrap()).unwrap()] as usize];
                    let mut swapped: Vec<(u32, i64)> = row
                        .iter()
                        .map(|&(c, x)| {
                            let mut d = digits_of(c as usize, n, nb);
                            d.swap(i - 1, i);
                            (d.iter().fold(0usize, |acc, &x| acc * nb + x) as u32, x)
                        })
                        .collect();
                    swapped.sort_unstable();
                    assert_eq!(*moved, swapped, "{u} at {i}");
                }
            }
        }
    }
}

//! Normalized characters `Ch_μ(λ) = n(n−1)⋯(n−k+1) χ^λ_{μ1^{n−k}} / dim λ`
//! (`n = |λ|`, `k = |μ|`), through their `𝖧`-expansion over factorizations
//! `στ = π`, and a Murnaghan–Nakayama oracle.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::combinatorics::{two_factorizations, Composition, Permutation};
use crate::diagrams::{Partition, YoungDiagram};
use crate::exactalg::Scalar;
use crate::stanley::HExpansion;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("size mismatch: |λ| = {lam} but |ρ| = {rho}")]
    SizeMismatch { lam: u32, rho: u32 },
    #[error("μ must be nonempty")]
    EmptyMu,
    #[error("{0} does not have cycle type {1}")]
    WrongCycleType(String, String),
}

/// The permutation with cycles `(1 … μ₁)(μ₁+1 … μ₁+μ₂)⋯`.
pub fn canonical_permutation(mu: &Partition) -> Permutation {
    let k = mu.size() as usize;
    let mut cycles = Vec::new();
    let mut next = 1u32;
    for &part in mu.rows() {
        cycles.push((next..next + part).collect::<Vec<u32>>());
        next += part;
    }
    Permutation::from_cycles(k, &cycles).expect("disjoint consecutive cycles")
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `Σ_{στ = π} ε(τ) Σ_φ 𝖧_{I^φ_{(σ,τ)}}` for a given `π` of cycle type `μ`.
pub fn ch_h_expansion_with(mu: &Partition, pi: &Permutation) -> Result<HExpansion, CharError> {
    if mu.is_empty() {
        return Err(CharError::EmptyMu);
    }
    if pi.cycle_type() != mu.rows() {
        return Err(CharError::WrongCycleType(pi.cycle_string(), mu.to_string()));
    }
    let k = pi.size();
    let mut acc: BTreeMap<Composition, i64> = BTreeMap::new();
    for (sigma, tau) in two_factorizations(pi) {
        let eps = tau.sign();
        let s_cycles = sigma.cycles();
        let mut owner = vec![0usize; k + 1];
        for (ci, c) in s_cycles.iter().enumerate() {
            for &x in c {
                owner[x as usize] = ci;
            }
        }
        let t_cycles: Vec<Vec<usize>> = tau
            .cycles()
            .iter()
            .map(|c| {
                let mut met: Vec<usize> = c.iter().map(|&x| owner[x as usize]).collect();
                met.sort_unstable();
                met.dedup();
                met
            })
            .collect();
        let r = s_cycles.len();
        let mut phi: Vec<usize> = (1..=r).collect();
        loop {
            let mut parts = vec![1u32; r];
            for met in &t_cycles {
                let psi = met.iter().map(|&c| phi[c]).max().expect("every cycle meets σ");
                parts[psi - 1] += 1;
            }
            *acc.entry(Composition::new(parts).expect("positive parts")).or_default() += eps;
            if !next_permutation(&mut phi) {
                break;
            }
        }
    }
    let mut out = HExpansion::zero();
    for (i, c) in acc {
        out.add_term(i, Scalar::from(c)).expect("last part is at least 2 since every τ-cycle maps to a part");
    }
    Ok(out)
}

/// The expansion for the canonical `π` of cycle type `μ`.
pub fn ch_h_expansion(mu: &Partition) -> Result<HExpansion, CharError> {
    ch_h_expansion_with(mu, &canonical_permutation(mu))
}

/// `Ch_μ(λ)` through the `𝖧`-expansion.
pub fn ch_eval(mu: &Partition, lam: &YoungDiagram) -> Result<Scalar, CharError> {
    Ok(ch_h_expansion(mu)?.value(lam))
}

/// `χ^λ_ρ` by removing border strips of sizes `ρ₁, ρ₂, …` on beta-numbers.
pub fn mn_character(lam: &Partition, rho: &Partition) -> Result<i64, CharError> {
    if lam.size() != rho.size() {
        return Err(CharError::SizeMismatch { lam: lam.size(), rho: rho.size() });
    }
    let l = lam.len() as u32;
    let beta: Vec<u32> = lam.rows().iter().enumerate().map(|(i, &r)| r + l - 1 - i as u32).collect();
    let mut memo = HashMap::new();
    Ok(mn_rec(beta, rho.rows(), &mut memo))
}

fn mn_rec(beta: Vec<u32>, rho: &[u32], memo: &mut HashMap<(Vec<u32>, usize), i64>) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    if let Some(&v) = memo.get(&(beta.clone(), rho.len())) {
        return v;
    }
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, c| c.cmp(a));
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(nb, rest, memo);
    }
    memo.insert((beta, rho.len()), total);
    total
}

/// `dim λ = χ^λ_{1^n}`.
pub fn dimension(lam: &Partition) -> i64 {
    let ones = YoungDiagram::new(vec![1; lam.size() as usize]).expect("ones");
    mn_character(lam, &ones).expect("same size")
}

/// `Ch_μ(λ)` from character values: `0` when `|λ| < |μ|`.
pub fn ch_oracle(mu: &Partition, lam: &YoungDiagram) -> Scalar {
    let (n, k) = (lam.size(), mu.size());
    if n < k {
        return Scalar::zero();
    }
    let mut rho = mu.rows().to_vec();
    rho.extend(std::iter::repeat(1).take((n - k) as usize));
    let rho = YoungDiagram::new(rho).expect("μ followed by ones");
    let falling: Scalar = (0..k).map(|j| Scalar::from((n - j) as i64)).product();
    let chi = Scalar::from(mn_character(lam, &rho).expect("same size"));
    falling * chi / Scalar::from(dimension(lam))
}

use std::fmt;
use std::str::FromStr;

use super::CombError;

/// A permutation of `{1,…,n}` in one-line notation.
///
/// Products follow the right action on words: `sigma.then(tau)` is the
/// permutation whose place action equals acting by `sigma` and then by `tau`.
/// With `(w·σ)_k = w_{σ(k)}` this is the function `i ↦ σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, CombError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(CombError::NotPermutation(format!("{images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// Each cycle `(c₁ c₂ … c_r)` sends `c_i` to `c_{i+1}` and `c_r` to `c₁`.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self, CombError> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        let mut used = vec![false; n + 1];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x as usize > n || used[x as usize] {
                    return Err(CombError::NotPermutation(format!("{cycles:?}")));
                }
                used[x as usize] = true;
                images[x as usize - 1] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// Product "first `self`, then `other`" (see the type docs).
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "permutation sizes differ");
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    /// Cycles, each starting at its minimum, ordered by minimum; fixed points included.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut c = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// `ε(σ) = (−1)^{n − #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.0.len() - self.cycles().len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle lengths in weakly decreasing order.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Cycle notation, fixed points omitted; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")))
            .collect();
        if parts.is_empty() {
            "()".into()
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() <= 9 { "" } else { "." };
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = CombError;

    /// One-line notation, digits (`3124`) or dot-separated.
    fn from_str(s: &str) -> Result<Self, CombError> {
        let s = s.trim();
        let bad = || CombError::Parse(format!("invalid permutation {s:?}"));
        let images: Vec<u32> = if s.contains('.') {
            s.split('.').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        Permutation::new(images)
    }
}

/// All permutations of size `n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![Permutation(cur.clone())];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation(cur.clone()));
    }
}

/// All `(σ, τ)` with `σ.then(τ) = π`, ordered by `σ`.
pub fn two_factorizations(pi: &Permutation) -> Vec<(Permutation, Permutation)> {
    all_permutations(pi.size())
        .into_iter()
        .map(|s| {
            let t = s.inverse().then(pi);
            (s, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_and_sign() {
        let p = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(p.images(), &[2, 3, 1]);
        assert_eq!(p.cycles(), vec![vec![1, 2, 3]]);
        assert_eq!(p.sign(), 1);
        assert_eq!(p.cycle_string(), "(1 2 3)");
        let t: Permutation = "2134".parse().unwrap();
        assert_eq!(t.sign(), -1);
        assert_eq!(t.cycle_type(), vec![2, 1, 1]);
        assert!("1134".parse::<Permutation>().is_err());
    }

    #[test]
    fn factorizations_of_three_cycle() {
        let pi = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let f = two_factorizations(&pi);
        assert_eq!(f.len(), 6);
        assert!(f.contains(&(pi.clone(), Permutation::identity(3))));
        assert!(f.iter().all(|(s, t)| s.then(t) == pi));
        let id = Permutation::identity(1);
        assert_eq!(two_factorizations(&id), vec![(id.clone(), id)]);
    }

    #[test]
    fn enumeration_order() {
        let all = all_permutations(3);
        let s: Vec<String> = all.iter().map(Permutation::to_string).collect();
        assert_eq!(s, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all_permutations(0).len(), 1);
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(Permutation)
    }

    proptest! {
        #[test]
        fn group_laws(a in perm(5), b in perm(5), c in perm(5)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            prop_assert_eq!(a.then(&a.inverse()), Permutation::identity(5));
            prop_assert_eq!(a.then(&b).sign(), a.sign() * b.sign());
            let n_cycles = a.cycles().len();
            prop_assert_eq!(a.sign(), if (5 - n_cycles) % 2 == 0 { 1 } else { -1 });
        }

        #[test]
        fn factorizations_biject(p in perm(4)) {
            let f = two_factorizations(&p);
            prop_assert_eq!(f.len(), 24);
            let sigmas: std::collections::BTreeSet<_> = f.iter().map(|(s, _)| s.clone()).collect();
            prop_assert_eq!(sigmas.len(), 24);
        }
    }
}

//! Bipartite graphs with weak edges `E₁₂` and strict edges `E₂₁`, their
//! functions `N_G` in `p, q` and `F_G` in one alphabet, the noncommutative
//! versions in `b, d` and `a`, the graphs `G_K` of even set compositions, and
//! the leading-evaluation independence certificate.
//!
//! A map `r : V → {1,2,…}` is admissible when `r(v₁) ≤ r(v₂)` for every weak
//! edge and `r(v₂) < r(v₁)` for every strict edge, with `v₁ ∈ V₁`, `v₂ ∈ V₂`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{set_compositions, CombError, Composition, Parity, PackedWord, SetComposition};
use crate::exactalg::{CommPoly, EchelonBasis, IntRow, Letter, LetterFamily, Monomial, NCPoly, Scalar, Var};
use crate::qsym::QSymElement;
use crate::stanley::{check_solprime, phi_x_to_pq, PQParam, PQPolyFamily, SolPrimeFailure};
use crate::wqsym::{check_solprime_nc, phi_a_to_bd, virtual_expand, NcSolPrimeFailure, WQSymElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex sets must partition {{1,…,n}}")]
    NotAPartition,
    #[error("edge ({0},{1}) does not join V₁ and V₂")]
    BadEdge(u32, u32),
    #[error("vertex {0} is not the extremity of a weak edge")]
    Hypothesis(u32),
    #[error("set composition must have an even number of blocks, found {0}")]
    OddBlocks(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Comb(#[from] CombError),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct RawGraph {
    v1: Vec<u32>,
    v2: Vec<u32>,
    #[serde(default)]
    e12: Vec<[u32; 2]>,
    #[serde(default)]
    e21: Vec<[u32; 2]>,
    #[serde(default = "yes")]
    labelled: bool,
}

fn yes() -> bool {
    true
}

/// A bipartite graph on `{1,…,n}`; both edge sets store pairs `(v₁, v₂)`
/// with `v₁ ∈ V₁` and `v₂ ∈ V₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct BipartiteGraph {
    n: u32,
    v1: BTreeSet<u32>,
    v2: BTreeSet<u32>,
    e12: BTreeSet<(u32, u32)>,
    e21: BTreeSet<(u32, u32)>,
    labelled: bool,
}

impl TryFrom<RawGraph> for BipartiteGraph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        let pairs = |es: Vec<[u32; 2]>| es.into_iter().map(|[a, b]| (a, b)).collect::<Vec<_>>();
        let g = BipartiteGraph::new(raw.v1, raw.v2, pairs(raw.e12), pairs(raw.e21))?;
        Ok(g.with_labelled(raw.labelled))
    }
}

impl From<BipartiteGraph> for RawGraph {
    fn from(g: BipartiteGraph) -> Self {
        let pairs = |es: &BTreeSet<(u32, u32)>| es.iter().map(|&(a, b)| [a, b]).collect();
        RawGraph {
            v1: g.v1.iter().copied().collect(),
            v2: g.v2.iter().copied().collect(),
            e12: pairs(&g.e12),
            e21: pairs(&g.e21),
            labelled: g.labelled,
        }
    }
}

impl BipartiteGraph {
    /// Builds a labelled graph; each edge may be given in either orientation
    /// and is stored as `(v₁, v₂)`.
    pub fn new(
        v1: impl IntoIterator<Item = u32>,
        v2: impl IntoIterator<Item = u32>,
        e12: impl IntoIterator<Item = (u32, u32)>,
        e21: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        let v1: BTreeSet<u32> = v1.into_iter().collect();
        let v2: BTreeSet<u32> = v2.into_iter().collect();
        let n = (v1.len() + v2.len()) as u32;
        let all: BTreeSet<u32> = v1.union(&v2).copied().collect();
        if all.len() as u32 != n || all != (1..=n).collect() {
            return Err(GraphError::NotAPartition);
        }
        let orient = |(a, b): (u32, u32)| -> Result<(u32, u32), GraphError> {
            if v1.contains(&a) && v2.contains(&b) {
                Ok((a, b))
            } else if v2.contains(&a) && v1.contains(&b) {
                Ok((b, a))
            } else {
                Err(GraphError::BadEdge(a, b))
            }
        };
        let e12 = e12.into_iter().map(orient).collect::<Result<_, _>>()?;
        let e21 = e21.into_iter().map(orient).collect::<Result<_, _>>()?;
        Ok(BipartiteGraph { n, v1, v2, e12, e21, labelled: true })
    }

    pub fn with_labelled(mut self, labelled: bool) -> Self {
        self.labelled = labelled;
        self
    }

    pub fn empty() -> Self {
        BipartiteGraph::new([], [], [], []).expect("empty graph")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v1(&self) -> &BTreeSet<u32> {
        &self.v1
    }

    pub fn v2(&self) -> &BTreeSet<u32> {
        &self.v2
    }

    pub fn e12(&self) -> &BTreeSet<(u32, u32)> {
        &self.e12
    }

    pub fn e21(&self) -> &BTreeSet<(u32, u32)> {
        &self.e21
    }

    pub fn labelled(&self) -> bool {
        self.labelled
    }

    /// The first vertex that is not the extremity of a weak edge.
    pub fn hypothesis_violation(&self) -> Option<u32> {
        let touched: BTreeSet<u32> = self.e12.iter().flat_map(|&(a, b)| [a, b]).collect();
        (1..=self.n).find(|v| !touched.contains(v))
    }

    pub fn check_hypothesis(&self) -> Result<(), GraphError> {
        match self.hypothesis_violation() {
            Some(v) => Err(GraphError::Hypothesis(v)),
            None => Ok(()),
        }
    }

    /// Renames vertex `v` to `perm[v − 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self, GraphError> {
        let f = |v: &u32| perm[*v as usize - 1];
        let g = BipartiteGraph::new(
            self.v1.iter().map(f),
            self.v2.iter().map(f),
            self.e12.iter().map(|(a, b)| (f(a), f(b))),
            self.e21.iter().map(|(a, b)| (f(a), f(b))),
        )?;
        Ok(g.with_labelled(self.labelled))
    }

    /// Every admissible `r` with values in `{1,…,m}`, as `r[v − 1]`.
    pub fn admissible_maps(&self, m: u32) -> Vec<Vec<u32>> {
        let n = self.n as usize;
        let mut lower: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        let mut upper: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        let mut constrain = |lo: u32, hi: u32, gap: u32| {
            let (lo, hi) = (lo as usize - 1, hi as usize - 1);
            if lo < hi {
                lower[hi].push((lo, gap));
            } else {
                upper[lo].push((hi, gap));
            }
        };
        for &(a, b) in &self.e12 {
            constrain(a, b, 0);
        }
        for &(a, b) in &self.e21 {
            constrain(b, a, 1);
        }
        let mut out = Vec::new();
        let mut r = vec![0u32; n];
        fn go(
            k: usize,
            m: u32,
            r: &mut Vec<u32>,
            lower: &[Vec<(usize, u32)>],
            upper: &[Vec<(usize, u32)>],
            out: &mut Vec<Vec<u32>>,
        ) {
            if k == r.len() {
                out.push(r.clone());
                return;
            }
            let lo = lower[k].iter().map(|&(j, g)| r[j] + g).max().unwrap_or(1).max(1);
            let hi = upper[k].iter().map(|&(j, g)| r[j].saturating_sub(g)).min().unwrap_or(m);
            for x in lo..=hi {
                r[k] = x;
                go(k + 1, m, r, lower, upper, out);
            }
        }
        go(0, m, &mut r, &lower, &upper, &mut out);
        out
    }
}

/// The unlabelled example graph with `e, f ≤ g, h < i ≤ j`.
pub fn g_ex() -> BipartiteGraph {
    let k: SetComposition = "{2,3}|{1,5}|{6}|{4}".parse().expect("valid set composition");
    graph_from_setcomp(&k).expect("four blocks").with_labelled(false)
}

/// `N_G` at width `m` in `p, q`.
pub fn ng_eval(g: &BipartiteGraph, m: usize) -> CommPoly {
    let mut out = CommPoly::zero();
    for r in g.admissible_maps(m as u32) {
        let mono = Monomial::from_factors((1..=g.n).map(|v| {
            let i = r[v as usize - 1];
            (if g.v1.contains(&v) { Var::p(i) } else { Var::q(i) }, 1)
        }));
        out.add_term(mono, Scalar::one());
    }
    out
}

/// `F_G(u₁,…,u_{n_vars})`.
pub fn fg_expand(g: &BipartiteGraph, n_vars: usize) -> CommPoly {
    let mut out = CommPoly::zero();
    for r in g.admissible_maps(n_vars as u32) {
        out.add_term(Monomial::from_factors(r.into_iter().map(|i| (Var::u(i), 1))), Scalar::one());
    }
    out
}

/// The `M`-expansion of `F_G`: the coefficient of `M_I` is that of
/// `u₁^{I₁}⋯u_k^{I_k}` in `F_G(u₁,…,u_{|V|})`.
pub fn fg_m_expansion(g: &BipartiteGraph) -> QSymElement {
    let mut out = QSymElement::zero();
    for (mono, c) in fg_expand(g, g.n as usize).terms() {
        let f = mono.factors();
        if f.iter().enumerate().all(|(j, (v, _))| v.index == j as u32 + 1) {
            let parts = f.iter().map(|&(_, e)| e).collect();
            out.add_term(Composition::new(parts).expect("positive exponents"), c.clone());
        }
    }
    out
}

/// `N_G = (−1)^{|V₁|} Φ_{x→p,q}(F_G(𝕏))` at widths `0,…,m`.
pub fn verify_ng_formula(g: &BipartiteGraph, m: usize) -> Result<bool, GraphError> {
    g.check_hypothesis()?;
    let f = fg_m_expansion(g).scale(&Scalar::sign_pow(g.v1.len()));
    Ok((0..=m).all(|w| phi_x_to_pq(&f, w, PQParam::Q) == ng_eval(g, w)))
}

/// `N_G` as a family of truncations checked against the `Sol′` equations.
pub fn ng_solprime(g: &BipartiteGraph, m_max: usize) -> Result<(), SolPrimeFailure> {
    check_solprime(&PQPolyFamily::from_fn(PQParam::Q, m_max, |m| ng_eval(g, m)), m_max)
}

/// `G_K`: `V₁` and `V₂` are the odd and even blocks, weak edges join
/// `K_{2t−1}` to `K_{2t}` and strict edges join `K_{2t}` to `K_{2t+1}`.
pub fn graph_from_setcomp(k: &SetComposition) -> Result<BipartiteGraph, GraphError> {
    let blocks = k.blocks();
    if blocks.len() % 2 == 1 {
        return Err(GraphError::OddBlocks(blocks.len()));
    }
    let union = |par: usize| blocks.iter().skip(par).step_by(2).flatten().copied().collect::<Vec<u32>>();
    let mut e12 = Vec::new();
    let mut e21 = Vec::new();
    for t in 0..blocks.len() {
        if t + 1 == blocks.len() {
            break;
        }
        for &a in &blocks[t] {
            for &b in &blocks[t + 1] {
                if t % 2 == 0 {
                    e12.push((a, b));
                } else {
                    e21.push((b, a));
                }
            }
        }
    }
    BipartiteGraph::new(union(0), union(1), e12, e21)
}

/// `𝑵_G` at width `m`: the letter at place `v` is `b_{r(v)}` for `v ∈ V₁`
/// and `d_{r(v)}` for `v ∈ V₂`.
pub fn nc_ng_eval(g: &BipartiteGraph, m: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for r in g.admissible_maps(m as u32) {
        let w = (1..=g.n)
            .map(|v| {
                let i = r[v as usize - 1];
                if g.v1.contains(&v) {
                    Letter::b(i)
                } else {
                    Letter::d(i)
                }
            })
            .collect();
        out.add_term(w, Scalar::one());
    }
    out
}

/// `𝑭_G(a₁,…,a_{n_vars})`.
pub fn nc_fg_expand(g: &BipartiteGraph, n_vars: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for r in g.admissible_maps(n_vars as u32) {
        out.add_term(r.into_iter().map(Letter::a).collect(), Scalar::one());
    }
    out
}

/// The `P`-expansion of `𝑭_G`: the coefficient of `P_u` is that of the
/// word `a_u` in `𝑭_G(a₁,…,a_{|V|})`.
pub fn nc_fg_p_expansion(g: &BipartiteGraph) -> WQSymElement {
    let mut out = WQSymElement::zero();
    for (w, c) in nc_fg_expand(g, g.n as usize).terms() {
        let letters: Vec<u32> = w.iter().map(|l| l.index).collect();
        if crate::combinatorics::pack(&letters).letters() == letters.as_slice() {
            out.add_term(PackedWord::new(letters).expect("packed"), c.clone());
        }
    }
    out
}

/// `𝑵_G = (−1)^{|V₁|} Φ_{a→b,d}(𝑭_G(𝔸))` at widths `0,…,m`.
pub fn verify_nc_ng_formula(g: &BipartiteGraph, m: usize) -> Result<bool, GraphError> {
    g.check_hypothesis()?;
    let f = nc_fg_p_expansion(g).scale(&Scalar::sign_pow(g.v1.len()));
    Ok((0..=m).all(|w| phi_a_to_bd(&virtual_expand(&f, 2 * w + 1), w) == nc_ng_eval(g, w)))
}

pub fn nc_ng_solprime(g: &BipartiteGraph, m_max: usize) -> Result<(), NcSolPrimeFailure> {
    let t: Vec<NCPoly> = (0..=m_max).map(|m| nc_ng_eval(g, m)).collect();
    check_solprime_nc(&t, m_max)
}

/// `(#b₁, #d₁, #b₂, #d₂, …)` of a word in `b, d`.
pub fn evaluation(w: &[Letter]) -> Vec<u32> {
    let top = w.iter().map(|l| l.index).max().unwrap_or(0) as usize;
    let mut out = vec![0u32; 2 * top];
    for l in w {
        let slot = 2 * (l.index as usize - 1) + usize::from(l.family == LetterFamily::D);
        out[slot] += 1;
    }
    out
}

/// The words of `f` whose evaluation is lexicographically largest.
pub fn leading_words(f: &NCPoly) -> Vec<Vec<Letter>> {
    let evals: Vec<(Vec<u32>, &Vec<Letter>)> = f.terms().keys().map(|w| (evaluation(w), w)).collect();
    let Some(best) = evals.iter().map(|e| &e.0).max().cloned() else {
        return Vec::new();
    };
    evals.into_iter().filter(|e| e.0 == best).map(|e| e.1.clone()).collect()
}

/// Reads `K` back from a word: the places of `b_t` form `K_{2t−1}` and
/// those of `d_t` form `K_{2t}`.
pub fn setcomp_from_word(w: &[Letter]) -> Result<SetComposition, CombError> {
    let top = w.iter().map(|l| l.index).max().unwrap_or(0) as usize;
    let mut blocks = vec![BTreeSet::new(); 2 * top];
    for (pos, l) in w.iter().enumerate() {
        let slot = 2 * (l.index as usize - 1) + usize::from(l.family == LetterFamily::D);
        blocks[slot].insert(pos as u32 + 1);
    }
    SetComposition::new(blocks)
}

/// Rank of `{𝑵_{G_K}}` over the even set compositions `K` of `{1,…,n}`
/// together with the leading-evaluation certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkReport {
    pub n: usize,
    pub count: usize,
    pub rank: usize,
    /// Each `𝑵_{G_K}` has a single leading word, and it gives back `K`.
    pub leading_recovers_k: bool,
    /// The leading words are pairwise distinct.
    pub injective: bool,
}

impl GkReport {
    pub fn holds(&self) -> bool {
        self.rank == self.count && self.leading_recovers_k && self.injective
    }
}

pub fn gk_independence_rank(n: usize) -> GkReport {
    let ks = set_compositions(n, Parity::Even);
    let mut columns: HashMap<Vec<Letter>, u32> = HashMap::new();
    let mut basis = EchelonBasis::new();
    let mut leading = HashSet::new();
    let mut recovers = true;
    for k in &ks {
        let g = graph_from_setcomp(k).expect("even block count");
        let f = nc_ng_eval(&g, n);
        let lead = leading_words(&f);
        recovers &= lead.len() == 1 && setcomp_from_word(&lead[0]).ok().as_ref() == Some(k);
        if let Some(w) = lead.first() {
            leading.insert(w.clone());
        }
        let entries: Vec<(u32, i64)> = f
            .terms()
            .iter()
            .map(|(w, c)| {
                let next = columns.len() as u32;
                (*columns.entry(w.clone()).or_insert(next), c.to_i64().expect("unit coefficients"))
            })
            .collect();
        basis.insert(IntRow::from_i64(entries));
    }
    GkReport { n, count: ks.len(), rank: basis.rank(), leading_recovers_k: recovers, injective: leading.len() == ks.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::all_permutations;

    fn single_weak() -> BipartiteGraph {
        BipartiteGraph::new([1], [2], [(1, 2)], []).unwrap()
    }

    fn p(i: u32) -> CommPoly {
        CommPoly::var(Var::p(i))
    }

    fn q(i: u32) -> CommPoly {
        CommPoly::var(Var::q(i))
    }

    fn example_sum(m: u32) -> CommPoly {
        let mut out = CommPoly::zero();
        for e in 1..=m {
            for f in 1..=m {
                for g in e.max(f)..=m {
                    for h in e.max(f)..=m {
                        for i in g.max(h) + 1..=m {
                            for j in i..=m {
                                out = &out + &[p(e), p(f), p(i), q(g), q(h), q(j)].iter().fold(CommPoly::one(), |a, b| &a * b);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn example_graph() {
        let g = g_ex();
        assert!(!g.labelled());
        for m in 0..=4 {
            assert_eq!(ng_eval(&g, m), example_sum(m as u32));
        }
        assert_eq!(verify_ng_formula(&g, 3), Ok(true));
        assert!(ng_solprime(&g, 4).is_ok());
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(ng_eval(&single_weak(), 1), &p(1) * &q(1));
        assert_eq!(ng_eval(&BipartiteGraph::empty(), 3), CommPoly::one());
        let u = |i| CommPoly::var(Var::u(i));
        assert_eq!(fg_expand(&single_weak(), 2), &(&(&u(1) * &u(1)) + &(&u(1) * &u(2))) + &(&u(2) * &u(2)));
        let strict = BipartiteGraph::new([1], [2], [], [(1, 2)]).unwrap();
        assert!(fg_expand(&strict, 1).is_zero());
        assert_eq!(fg_expand(&BipartiteGraph::empty(), 2), CommPoly::one());
        assert_eq!(verify_ng_formula(&single_weak(), 4), Ok(true));
        assert_eq!(verify_ng_formula(&strict, 2), Err(GraphError::Hypothesis(1)));
    }

    #[test]
    fn fg_is_quasi_symmetric() {
        for k in set_compositions(4, Parity::Even) {
            let g = graph_from_setcomp(&k).unwrap();
            let vars: Vec<Var> = (1..=5).map(Var::u).collect();
            let on_u = crate::qsym::expand_on_alphabet(&fg_m_expansion(&g), &crate::qsym::plain_alphabet(&vars));
            assert_eq!(on_u, fg_expand(&g, 5), "{k}");
        }
    }

    #[test]
    fn labels_do_not_matter_commutatively() {
        let g = g_ex();
        for perm in all_permutations(6).iter().step_by(37) {
            let h = g.relabel(perm.images()).unwrap();
            assert_eq!(ng_eval(&h, 3), ng_eval(&g, 3));
        }
    }

    #[test]
    fn set_composition_graphs() {
        let k: SetComposition = "{2,3}|{1,5}|{6}|{4}".parse().unwrap();
        let g = graph_from_setcomp(&k).unwrap();
        assert_eq!(g.v1(), &BTreeSet::from([2, 3, 6]));
        assert_eq!(g.e12().len(), 5);
        assert_eq!(g.e21(), &BTreeSet::from([(6, 1), (6, 5)]));
        let k2: SetComposition = "{1}|{2}".parse().unwrap();
        assert_eq!(graph_from_setcomp(&k2).unwrap(), single_weak());
        let odd: SetComposition = "{1}".parse().unwrap();
        assert_eq!(graph_from_setcomp(&odd), Err(GraphError::OddBlocks(1)));
        for n in 1..=5 {
            for k in set_compositions(n, Parity::Even) {
                assert!(graph_from_setcomp(&k).unwrap().check_hypothesis().is_ok());
            }
        }
    }

    #[test]
    fn nc_example() {
        let k: SetComposition = "{2,3}|{1,5}|{6}|{4}".parse().unwrap();
        let g = graph_from_setcomp(&k).unwrap();
        let m = 3;
        let mut want = NCPoly::zero();
        for e in 1..=m {
            for f in 1..=m {
                for gg in e.max(f)..=m {
                    for h in e.max(f)..=m {
                        for i in gg.max(h) + 1..=m {
                            for j in i..=m {
                                let w = vec![Letter::d(gg), Letter::b(e), Letter::b(f), Letter::d(j), Letter::d(h), Letter::b(i)];
                                want.add_term(w, Scalar::one());
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(nc_ng_eval(&g, m as usize), want);
        assert_eq!(nc_ng_eval(&single_weak(), 1), "b1*d1".parse().unwrap());
        assert_eq!(nc_ng_eval(&g, 3).commutative_image(), ng_eval(&g, 3));
    }

    #[test]
    fn nc_formula_and_equations() {
        for n in 1..=3 {
            for k in set_compositions(n, Parity::Even) {
                let g = graph_from_setcomp(&k).unwrap();
                assert_eq!(verify_nc_ng_formula(&g, 2), Ok(true), "{k}");
                assert!(nc_ng_solprime(&g, 3).is_ok(), "{k}");
                assert_eq!(nc_ng_eval(&g, 3).commutative_image(), ng_eval(&g, 3));
                let h = nc_ng_eval(&g, 2);
                assert_eq!(phi_a_to_bd(&crate::wqsym::phi_bd_to_a(&h, 2), 2), h);
            }
        }
    }

    #[test]
    fn independence() {
        let counts = [0, 0, 2, 6, 38];
        for n in 1..=4 {
            let r = gk_independence_rank(n);
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.count, counts[n]);
        }
    }

    #[test]
    fn json_shape() {
        let g: BipartiteGraph = serde_json::from_str(r#"{"v1":[1],"v2":[2],"e12":[[1,2]],"e21":[]}"#).unwrap();
        assert_eq!(g, single_weak());
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<BipartiteGraph>(&s).unwrap(), g);
        assert!(serde_json::from_str::<BipartiteGraph>(r#"{"v1":[1],"v2":[1],"e12":[]}"#).is_err());
    }
}

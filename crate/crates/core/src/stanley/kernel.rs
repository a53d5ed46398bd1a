use serde::Serialize;

use crate::combinatorics::{compositions_of, Composition};
use crate::exactalg::{coefficient_matrix, CommPoly, EchelonBasis, IntRow, Scalar};
use crate::qsym::QSymElement;

use super::{phi_x_to_pq, PQParam};

/// The degree-`n` kernel of `Φ_{x→p,q}` compared with `⟨M₁(𝕏)⟩ₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiKernelReport {
    pub n: u32,
    pub ambient: usize,
    pub image_rank: usize,
    /// Rank of the images at width `n + 1`.
    pub image_rank_wider: usize,
    pub kernel_dim: usize,
    pub ideal_rank: usize,
    pub ideal_in_kernel: bool,
}

impl PhiKernelReport {
    /// The kernel has dimension `2^{n−2}` and coincides with the ideal.
    pub fn holds(&self) -> bool {
        let expected = if self.n >= 2 { 1usize << (self.n - 2) } else { self.n as usize };
        self.kernel_dim == expected
            && self.ideal_rank == self.kernel_dim
            && self.ideal_in_kernel
            && self.image_rank == self.image_rank_wider
    }
}

fn row(v: impl IntoIterator<Item = (u32, Scalar)>) -> IntRow {
    let entries: Vec<(u32, Scalar)> = v.into_iter().collect();
    IntRow::from_scalars(&entries)
}

pub fn phi_kernel_report(n: u32) -> PhiKernelReport {
    let comps = compositions_of(n);
    let images = |w: usize| -> Vec<CommPoly> {
        comps.iter().map(|i| phi_x_to_pq(&QSymElement::monomial(i.clone()), w, PQParam::QPrime)).collect()
    };
    let a = coefficient_matrix(&images(n as usize));
    let image_rank = a.rank();
    let image_rank_wider = coefficient_matrix(&images(n as usize + 1)).rank();
    let mut kernel = EchelonBasis::new();
    for v in a.left_kernel() {
        kernel.insert(row(v.into_iter().enumerate().map(|(c, x)| (c as u32, x))));
    }
    let index = |c: &Composition| comps.iter().position(|d| d == c).expect("same weight") as u32;
    let mut ideal = EchelonBasis::new();
    let mut ideal_in_kernel = true;
    if n >= 1 {
        let m1 = QSymElement::monomial(Composition::new(vec![1]).expect("positive"));
        for j in compositions_of(n - 1) {
            let g = &m1 * &QSymElement::monomial(j);
            let r = row(g.coeffs().iter().map(|(c, x)| (index(c), x.clone())));
            ideal_in_kernel &= kernel.contains(&r);
            ideal.insert(r);
        }
    }
    PhiKernelReport {
        n,
        ambient: comps.len(),
        image_rank,
        image_rank_wider,
        kernel_dim: kernel.rank(),
        ideal_rank: ideal.rank(),
        ideal_in_kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kernels() {
        for n in 2..=4 {
            let r = phi_kernel_report(n);
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.image_rank + r.kernel_dim, r.ambient);
        }
    }
}

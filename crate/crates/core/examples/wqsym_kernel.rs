//! Word quasi-symmetric functions on the alternating alphabet 𝔸 and the
//! kernel of Φ_a→b,d.

use qyd::combinatorics::PackedWord;
use qyd::wqsym::{kernel_ideal_dimension, p_virtual_expand, phi_kernel_dimension, WQSymElement};

fn main() {
    for u in ["1", "11", "12", "21"] {
        let u: PackedWord = u.parse().unwrap();
        println!("P_{u}(𝔸_3) = {}", p_virtual_expand(&u, 3));
    }
    let f: WQSymElement = "P:1".parse().unwrap();
    println!("P1 · P1 = {}", &f * &f);

    for n in 0..=5 {
        println!("dim 𝒦_{n} = {}", kernel_ideal_dimension(n));
    }
    let r = phi_kernel_dimension(4, 4);
    println!("n = 4: image {}, kernel {}, certified {}", r.image_rank, r.nullity, r.holds());
}

//! Monomial functions on the alternating alphabet 𝕏 = ⊖x₁ ⊕ x₂ ⊖ x₃ ⋯ and
//! the q-zero functional equation they satisfy.

use qyd::combinatorics::Composition;
use qyd::qsym::{check_functional_eq, m_on_x, solve_dimension};

fn main() {
    let i: Composition = "2.1".parse().unwrap();
    for n in 1..=3 {
        println!("M_21(𝕏_{n}) = {}", m_on_x(&i, n));
    }
    match check_functional_eq(|n| m_on_x(&i, n), 6) {
        Ok(()) => println!("M_21(𝕏) satisfies the functional equation up to n = 6"),
        Err(e) => println!("failure: {e}"),
    }
    for n in 1..=5 {
        println!("solutions of degree {n}: dimension {}", solve_dimension(n));
    }
}

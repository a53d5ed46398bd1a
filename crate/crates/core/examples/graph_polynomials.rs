//! Polynomials 𝑵_G of bipartite graphs and their monomial expansion.

use qyd::combinatorics::{set_compositions, Parity};
use qyd::ngraphs::{fg_m_expansion, g_ex, graph_from_setcomp, ng_eval, ng_solprime, verify_ng_formula};

fn main() {
    let g = g_ex();
    println!("F_G = {}", fg_m_expansion(&g));
    println!("N_G at width 2 = {}", ng_eval(&g, 2));
    println!("formula holds up to width 3: {:?}", verify_ng_formula(&g, 3));
    println!("N_G in Sol′: {}", ng_solprime(&g, 3).is_ok());

    for k in set_compositions(3, Parity::Even) {
        let gk = graph_from_setcomp(&k).unwrap();
        println!("G_{k}: F = {}", fg_m_expansion(&gk));
    }
}

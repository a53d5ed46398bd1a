//! Normalized characters Ch_μ as polynomial functions on Young diagrams.

use qyd::characters::{ch_h_expansion, ch_oracle};
use qyd::diagrams::{partitions_of, YoungDiagram};

fn main() {
    let mu: YoungDiagram = "3".parse().unwrap();
    let e = ch_h_expansion(&mu).unwrap();
    println!("Ch_(3) = {e}");
    for lam in partitions_of(5) {
        println!("Ch_(3)({lam}) = {} (Murnaghan–Nakayama: {})", e.value(&lam), ch_oracle(&mu, &lam));
    }
}

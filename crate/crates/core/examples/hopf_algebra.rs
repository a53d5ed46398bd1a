//! Product, coproduct and antipode in the monomial basis of QSym.

use qyd::qsym::QSymElement;

fn main() {
    let m2: QSymElement = "M:2".parse().unwrap();
    let m11: QSymElement = "M:1.1".parse().unwrap();
    println!("M2 · M11 = {}", &m2 * &m11);

    let m21: QSymElement = "M:2.1".parse().unwrap();
    for t in m21.coproduct() {
        println!("Δ M21 ∋ {} · M:{} ⊗ M:{}", t.weight, t.left, t.right);
    }

    let m122: QSymElement = "M:1.2.2".parse().unwrap();
    println!("S(M122) = {}", m122.antipode());
    println!("S(S(M122)) = {}", m122.antipode().antipode());
}

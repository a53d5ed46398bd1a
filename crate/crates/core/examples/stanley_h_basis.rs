//! The 𝖧 basis of stable polynomials in (p, q′): evaluation, expansion,
//! the shuffle product and the image of the power-sum-like M_k.

use qyd::combinatorics::Composition;
use qyd::stanley::{check_solprime, h_expand, h_family, h_poly, h_shuffle_product, mk_law_report, HExpansion};

fn main() {
    let i: Composition = "1.2".parse().unwrap();
    println!("𝖧_12 at width 2: {}", h_poly(&i, 2));

    let fam = h_family(&i, 5).unwrap();
    println!("𝖧_12 in Sol′ up to width 5: {}", check_solprime(&fam, 5).is_ok());

    let j: Composition = "2".parse().unwrap();
    let product = fam.product(&h_family(&j, 5).unwrap());
    let expanded = h_expand(&product, 5).unwrap();
    let shuffled = h_shuffle_product(&HExpansion::basis(i).unwrap(), &HExpansion::basis(j).unwrap());
    println!("𝖧_12 · 𝖧_2 = {expanded}");
    println!("agrees with the shuffle product: {}", expanded == shuffled);

    for k in 2..=5 {
        let r = mk_law_report(k).unwrap();
        println!("Φ(M_{k}) = {}", r.expansion);
    }
}

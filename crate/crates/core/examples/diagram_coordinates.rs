//! Interlacing, multirectangular and Frobenius coordinates of a Young diagram,
//! and the evaluation of quasi-symmetric functions on diagrams.

use qyd::diagrams::{eval_on, frobenius_alphabet, interlacing_alphabet, row_alphabet, YoungDiagram};
use qyd::qsym::QSymElement;

fn main() {
    let lam: YoungDiagram = "4,4,2".parse().unwrap();
    let mr = lam.multirect();
    let fr = lam.frobenius();
    println!("λ = {lam}");
    println!("interlacing {:?}", lam.interlacing().xs());
    println!("p = {:?}, q = {:?}, q′ = {:?}", mr.p(), mr.q(), mr.q_prime());
    let show = |v: &[qyd::exactalg::Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("Frobenius a = ({}), b = ({})", show(fr.a()), show(fr.b()));

    for f in ["M:1", "M:2", "M:1.1", "M:2.1"] {
        let f: QSymElement = f.parse().unwrap();
        let a = eval_on(&f, &interlacing_alphabet(lam.interlacing().xs()));
        let b = eval_on(&f, &row_alphabet(&lam, 3));
        let c = eval_on(&f, &frobenius_alphabet(&lam));
        println!("{f}(λ): interlacing {a}, rows {b}, Frobenius {c}");
    }
}

//! Quasi-symmetric functions as functions on Young diagrams.
//!
//! The crate provides exact arithmetic on the monomial basis of `QSym` and
//! of `WQSym`, evaluation on virtual alphabets, Stanley and Kerov
//! coordinates of Young diagrams, the `𝖧` basis of stable polynomials in
//! `(p, q′)`, normalized symmetric group characters, bipartite graph
//! polynomials, and a command-line front end with verification suites.

pub mod characters;
pub mod cli;
pub mod combinatorics;
pub mod diagrams;
pub mod exactalg;
pub mod ngraphs;
pub mod qsym;
pub mod stanley;
pub mod wqsym;

//! Distinct-prime decompositions of even numbers and the coprime-difference
//! witnesses that serve as necessary conditions for them.

mod bertrand;
mod decompose;
mod lemmas;
mod witness;

pub use bertrand::{bertrand_ap_check, bertrand_ap_witness};
pub use decompose::{
    ap_goldbach_decompositions, ap_goldbach_for_target, goldbach_decompositions, GoldbachWitness, Mode,
};
pub use lemmas::{lemma1_witness, lemma7_witness};
pub use witness::{
    conj2_exhaustive_check, conj3_exhaustive_check, conjecture2_scan, conjecture2_witness,
    conjecture3_witness, Conj2ScanReport, Conj2Witness, Conj3Witness,
};

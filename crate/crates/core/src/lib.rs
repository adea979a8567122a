pub mod constructions;
pub mod formula;
pub mod harness;
pub mod kripke;
pub mod prover;
pub mod substitution;

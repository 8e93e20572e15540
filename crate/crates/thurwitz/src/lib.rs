//! Triply interpolated double Hurwitz numbers: brute-force factorisation
//! counts, monodromy-graph enumeration, chamber polynomials and wall-crossing.

pub mod exactmath;
pub mod chambers;
pub mod graphs;
pub mod symgroup;
pub mod counting;
pub mod hurwitz;
pub mod wallcross;

//! Matrix factorizations of a reduced plane curve f = f₁⋯f_n over S = k[x,y].
//!
//! Rank-one factorizations (g, g′) carry the BIKR tilting object; their
//! stable Hom spaces come from a colon-ideal formula and are cross-checked
//! against a bounded brute-force oracle. The `graded` submodule handles
//! factorizations of arbitrary rank for quasi-homogeneous f, which is what
//! cones and exact sequences in CM(R) need.

mod brute;
mod curve;
pub mod graded;
mod rank1;

pub use brute::{brute_hom_bounded, brute_hom_stabilized, BruteOutcome, BRUTE_CAP};
pub use curve::{jacobian_coprime, Curve};
pub use graded::{GMap, GradedMF, GradedStableHom};
pub use rank1::{bikr_loops, bikr_tilting, mf_stable_hom, mf_syzygy, MFMap, Rank1Hom, MF1};

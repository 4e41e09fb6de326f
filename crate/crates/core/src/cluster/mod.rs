//! Cluster-tilting objects in Frobenius categories: stable endomorphism
//! algebras, rigidity, twists and the resolutions they induce.

pub mod backend;
mod gamma;
mod ops;
mod resolution;

pub use backend::{Assembled, ExactSeq, Frobenius, MFBackend, ModHom, ModuleBackend, StableSpace};
pub use gamma::{CTObject, Evaluated, Lambda, StableEnd};
pub use ops::{
    approximation, check_maximal, check_rigid, ej_membership, in_add_t, lemma21, periodic_object_check, stable_iso,
    twist_with, Iso, Lemma21, MaximalReport, RigidReport, TwistData, Violation, ISO_TRIALS, ORDER_BOUND,
};
pub use resolution::{realize_module, resolution_2_10, thm25_resolution, Certificate, ClusterTrace, Realized, Stage};

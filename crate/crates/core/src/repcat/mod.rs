//! Right modules over finite-dimensional algebras: Hom, stable Hom,
//! covers, syzygies, resolutions, Ext/Tor, isomorphism and decomposition.

pub mod hom;
pub mod module;
pub mod resolve;

pub use hom::{decompose, end_algebra, hom, hom_dim, is_isomorphic, stable_hom, Decomposition, IsoVerdict, StableHom};
pub use module::{FDModule, ModuleExport, ModuleMap};
pub use resolve::{
    ext, injective_envelope, lift_along, minimal_resolution, projective_cover, syzygy, syzygy_map, syzygy_step, tor,
    FreeModule, ProjectiveCover, ResolutionTrace,
};

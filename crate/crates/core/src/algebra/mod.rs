//! Finite-dimensional algebras over F_p: structure constants, radicals,
//! idempotents, bound quivers, automorphisms, bimodules.

pub mod auto;
pub mod bimodule;
pub mod fd;
pub mod quiver;
pub mod radical;
pub mod upoly;

pub use auto::{auto_is_inner, find_isomorphism, inner_order, AlgebraAuto, InnerOrder, InnerVerdict};
pub use bimodule::{
    dual_bimodule, dual_regular, enveloping, is_self_injective, regular_bimodule, semisimple_split, twisted_bimodule,
    SemisimpleSplit,
};
pub use fd::{AlgebraExport, FDAlgebra};
pub use quiver::{algebra_from_quiver, preprojective_a, quiver_of, Arrow, GabrielQuiver, QuiverPresentation};
pub use radical::{radical_and_idempotents, radical_basis};

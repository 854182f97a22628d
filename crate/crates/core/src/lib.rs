//! Exact computation of finite group cohomology with coefficients in finite
//! G-algebras, built on bar-resolution cochains: cup products, connecting
//! homomorphisms induced by short exact sequences with a chosen section and
//! retraction, and the BD algebra structure on KG ⊗ H*(G,A). Every claimed
//! identity (derivation, differential squared zero, the P_r/BD_r axioms) is
//! certified by exhaustive finite computation over exact arithmetic mod N.

pub mod carrier;
pub mod cochain;
pub mod cohomology;
pub mod extension;
pub mod gmodule;
pub mod group;
pub mod linalg;
pub mod subgroup;

pub use carrier::{AdditiveMap, FiniteAbelianCarrier};
pub use cochain::{Cochain, Params};
pub use cohomology::{CohomologyClass, CohomologyContext};
pub use extension::{equivariant_extension_exists, ExtensionOutcome};
pub use gmodule::{is_ideal, GAlgebra, GModule, Pairing};
pub use group::{FiniteGroup, TupleIndexer};
pub use linalg::RowSpace;
pub use subgroup::{image, kernel, restrict, Subgroup, SubgroupMap};

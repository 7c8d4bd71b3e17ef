//! Weight combinatorics and equivariant-map spaces.
//!
//! `roots` carries the exact root-system data for the classical types with
//! the Weyl dimension formula, Freudenthal weight multiplicities and
//! Klimyk's tensor-product decomposition. `hom` computes the Hom-space
//! dimensions behind the special tensors, both by character arithmetic and
//! by explicit exact linear algebra on invariant tensor ansatz spaces.

pub mod hom;
pub mod roots;

pub use hom::{dim_hom_ker_phi, hom_dims, EquivariantMapSpace, HomError};
pub use roots::{
    DecompositionMultiset, DominantWeight, RootError, RootSystem, RootType,
};

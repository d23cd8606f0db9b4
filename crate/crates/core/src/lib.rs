//! Exact computations around deformation spaces of Galois representations valued in
//! generalised reductive groups: root data, Levi subgroups, Chevalley algebras over finite
//! fields, local Galois cohomology dimensions, group extensions, semisimplification of
//! matrix representations and component counts.

pub mod chevalley;
pub mod components;
pub mod error;
pub mod extensions;
pub mod field;
pub mod galois;
pub mod group;
pub mod intmat;
pub mod lattice;
pub mod levi;
pub mod root_datum;
pub mod scenario;
pub mod semisimplify;

pub use error::{Error, Result};

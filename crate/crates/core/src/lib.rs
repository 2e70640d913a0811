//! Exact rational workbench for finite-dimensional A-infinity algebras.
//!
//! Algebras are given by structure constants in the suspended (`A[1]`) sign
//! convention. On top of them the crate builds the bar coalgebra, the
//! Gerstenhaber bracket and deformation complex, the cyclic bicomplex and its
//! relatives, and computes Hochschild, cyclic and periodic cyclic homology with
//! exact arithmetic.

pub mod algebra;
pub mod bar;
pub mod classical;
pub mod cochain;
pub mod cyclic;
pub mod deformation;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod gerstenhaber;
pub mod scalar;
pub mod specfile;
pub mod tensor;
pub mod verify;

pub use algebra::AInfinityAlgebra;
pub use bar::{BarCoalgebra, ComplexWindow};
pub use cochain::{Cochain, MultiLinearMap};
pub use error::{Error, Result};
pub use exactlin::{GradedLinearMap, GradedVectorSpace};
pub use scalar::Q;

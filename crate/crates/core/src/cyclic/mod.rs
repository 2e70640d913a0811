//! Cyclic homology machinery: the operators `λ, N, b', b, s, B`, the cyclic
//! bicomplex and its relatives, homology computations and closed traces.

pub mod bicomplex;
pub mod homology;
pub mod operators;
pub mod traces;

pub use bicomplex::CyclicComplexes;
pub use homology::{HomologyReport, PeriodicReport};
pub use operators::CyclicOperators;

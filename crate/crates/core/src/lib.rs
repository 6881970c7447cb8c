//! Exact arithmetic for skew (Ore) extensions of finite-dimensional algebras
//! over Q, radicals, nilpotency certificates and locally nilpotent derivations.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod io;
pub mod linear;
pub mod lnd;
pub mod maps;
pub mod skew;

pub use algebra::{AlgebraPresentation, Ideal, LawViolation, Quotient, RadicalChain, Subalgebra};
pub use error::{Error, Result};
pub use linear::{Matrix, Scalar, Subspace, Vector};
pub use lnd::Derivation;
pub use maps::{Automorphism, GeneratorFamily, LinearEndomap, SigmaDerivation};
pub use skew::{SkewPolynomial, SkewRing};

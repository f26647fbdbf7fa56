//! Exact-arithmetic construction and certification of even Clifford algebras
//! of skew quadric hypersurfaces.
//!
//! The crate builds the skew polynomial algebra S_alpha, the quadric quotient
//! S_alpha/(f), its quadratic dual, and the even Clifford algebra two
//! independent ways (explicit presentation and degree-0 localization),
//! cross-certifies the two, and certifies the Wedderburn shape of the result.
//! All arithmetic is exact: rationals, Gaussian rationals, cyclotomics, or
//! multivariate Laurent polynomials in formal parameters.

pub mod clifford;
pub mod dual;
pub mod freealg;
pub mod isomap;
pub mod matfact;
pub mod matrix;
pub mod pipeline;
pub mod rewrite;
pub mod scalar;
pub mod skew;
pub mod structure;

pub use scalar::{Cyclotomic, Gaussian, Laurent, Rat, Ring};

/// Concrete aliases for the most common instantiations.
pub type RatPoly = freealg::NCPoly<Rat>;
pub type RatMatrix = matrix::ExactMatrix<Rat>;
pub type LaurentPoly = freealg::NCPoly<Laurent>;
pub type LaurentMatrix = matrix::ExactMatrix<Laurent>;
pub type GaussianPoly = freealg::NCPoly<Gaussian>;

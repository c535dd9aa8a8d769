//! Exact arithmetic on Hilbert series `h(t) / (1-t)^d`.
//!
//! The crate covers the Segre transform (coefficientwise product) of two or
//! more such series, Veronese transforms, postulation numbers, degree bounds
//! for Segre products, the Castelnuovo-Mumford regularity of Segre and
//! Segre-Veronese products of Cohen-Macaulay modules, and Simon Newcomb
//! numbers. Everything is computed over exact rationals, and every closed
//! form has an independent brute-force counterpart it can be checked against.

pub mod cli;
pub mod cm;
pub mod error;
pub mod format;
pub mod laurent;
pub mod segre;
pub mod series;

pub use cm::{
    newcomb, newcomb_row, regularity, segre_regularity_cm, segre_veronese_regularity, veronese,
    veronese_regularity_check, zero_dim_product_degree, zero_dim_segre_regularity,
    GradedCMModule, NewcombQuery,
};
pub use error::{Error, Result};
pub use laurent::{binomial, rat, LaurentPoly, Rational};
pub use segre::{
    condition_star_star, multi_degree_bounds, segre_closed, segre_degree_bounds, segre_fold,
    segre_monomial, segre_multi_hvector, segre_oracle, BinomialProductTerm, BoundsReport,
};
pub use series::{hvector_from_coefficients, HilbertPolynomial, RationalGF};

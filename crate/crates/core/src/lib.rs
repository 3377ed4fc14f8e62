//! Exact construction of the metabelian groups `G_n = B_n ⋉ A_n` built from the
//! regular representation of `Q[X_1..X_n] / c`, where `c` is the monomial ideal
//! generated by degree-`c` monomials with a repeated variable, together with
//! machine checks of every finite claim about them.
//!
//! Module map:
//! - [`poly`]: sparse multivariate polynomials over big integers, the `f_c` family.
//! - [`ideal`]: monomial ideals, normal forms, standard monomials.
//! - [`matrix`]: dense big-integer matrices.
//! - [`quotient`]: the quotient algebra and its regular representation.
//! - [`grouplaw`]: semidirect-product arithmetic and Malcev words.
//! - [`verify`]: certificates, failure witnesses, restricted products.
//! - [`cli`]: command-line front end.

pub mod cli;
pub mod error;
pub mod grouplaw;
pub mod ideal;
pub mod matrix;
pub mod poly;
pub mod quotient;
pub mod verify;

pub use error::{Error, Result};

//! Hecke symmetries on a 3-dimensional vector space whose R-symmetric algebra
//! is the polynomial algebra in three commuting variables.
//!
//! Every such operator is parametrized by a Hecke parameter `q`, a bivector
//! `a∧b` and a symmetric bilinear form `g` with `(q-1)^2 = -4Δ`, where
//! `Δ = g(a,a)g(b,b) - g(a,b)^2`. This crate builds `R` from that data,
//! extracts the data back from `R`, checks every identity involved with exact
//! arithmetic, classifies operators into the eight equivalence types, and
//! studies the associated classical r-matrices.
//!
//! All algebra is generic over [`exactnum::Scalar`]; the aliases below fix
//! the two supported scalar families.

pub mod error;
pub mod exactnum;
pub mod multilinear;
pub mod heckecore;
pub mod verifier;
pub mod classify;
pub mod cybe;
pub mod cli;

pub use error::{Error, Result};
pub use exactnum::{Field, FieldSpec, Fp, PrimeField, Rational, Rationals, Scalar};

pub type QMatrix = multilinear::Matrix<Rational>;
pub type QVector = multilinear::Vector<Rational>;
pub type QHeckeData = heckecore::HeckeData<Rational>;
pub type QHeckeSymmetry = heckecore::HeckeSymmetry<Rational>;
pub type QGlTensor = cybe::GlTensor<Rational>;
pub type QLieSubalgebra = cybe::LieSubalgebra<Rational>;

pub type FpMatrix = multilinear::Matrix<Fp>;
pub type FpVector = multilinear::Vector<Fp>;
pub type FpHeckeData = heckecore::HeckeData<Fp>;
pub type FpHeckeSymmetry = heckecore::HeckeSymmetry<Fp>;
pub type FpGlTensor = cybe::GlTensor<Fp>;
pub type FpLieSubalgebra = cybe::LieSubalgebra<Fp>;

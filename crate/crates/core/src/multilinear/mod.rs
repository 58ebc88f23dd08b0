//! Exact tensor algebra over the 3-dimensional space V.
//!
//! Coordinates are taken in a fixed basis e1, e2, e3. Order-2 and order-3
//! tensors are flat coordinate vectors in lexicographic index order (see
//! [`idx2`], [`idx3`]); operators are dense matrices acting on those columns.

mod matrix;
mod tensor;

pub use matrix::{span_rref, Matrix};
pub use tensor::*;

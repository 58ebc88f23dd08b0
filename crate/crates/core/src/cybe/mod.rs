//! The classical r-matrix `r = R₀R - Id` in gl(V)⊗gl(V), its Yang–Baxter and
//! symmetrization checks, and the carrier Lie subalgebra.

mod fixtures;
mod lie;

use serde::{Deserialize, Serialize};

use crate::exactnum::{Field, Scalar};
use crate::heckecore::{matrix_rows, HeckeSymmetry};
use crate::multilinear::{flip, idx2, Matrix};
use crate::verifier::{timed, CheckReport, Witness};

pub use fixtures::{expected_carrier, expected_r, unit};
pub use lie::{
    carrier, fingerprint, is_frobenius, Carrier, Fingerprint, FrobeniusStatus, LieSubalgebra,
    DEFAULT_ATTEMPTS,
};

/// An element of gl(V)⊗gl(V) ≅ End(V⊗V), with a minimal decomposition
/// `Σ left[s] ⊗ right[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlTensor<S: Scalar> {
    matrix: Matrix<S>,
    left: Vec<Matrix<S>>,
    right: Vec<Matrix<S>>,
}

/// `M[(i,j),(k,l)]` = coefficient of `E_ij ⊗ E_kl`, which sits at row `(i,k)`,
/// column `(j,l)` of the operator.
fn flatten<S: Scalar>(op: &Matrix<S>) -> Matrix<S> {
    Matrix::from_fn(op.field(), 9, 9, |a, b| {
        let (i, j, k, l) = (a / 3, a % 3, b / 3, b % 3);
        op[(idx2(i, k), idx2(j, l))].clone()
    })
}

fn unit_matrix<S: Scalar>(field: &S::Field, v: &[S]) -> Matrix<S> {
    Matrix::from_fn(field, 3, 3, |i, j| v[idx2(i, j)].clone())
}

impl<S: Scalar> GlTensor<S> {
    /// Decompose by rank factorization of the flattening: the pivot columns give
    /// the left factors and the nonzero RREF rows the right factors.
    pub fn from_matrix(matrix: Matrix<S>) -> Self {
        let field = matrix.field().clone();
        let m = flatten(&matrix);
        let (rref, pivots) = m.rref();
        let left = pivots.iter().map(|&p| unit_matrix(&field, &m.column(p))).collect();
        let right = (0..pivots.len()).map(|s| unit_matrix(&field, rref.row(s))).collect();
        GlTensor {
            matrix,
            left,
            right,
        }
    }

    pub fn zero(field: &S::Field) -> Self {
        Self::from_matrix(Matrix::zeros(field, 9, 9))
    }

    /// `Σ a_s ⊗ b_s` from explicit factors.
    pub fn from_terms(field: &S::Field, terms: &[(Matrix<S>, Matrix<S>)]) -> Self {
        let m = terms
            .iter()
            .fold(Matrix::zeros(field, 9, 9), |acc, (a, b)| &acc + &a.kron(b));
        Self::from_matrix(m)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn left(&self) -> &[Matrix<S>] {
        &self.left
    }

    pub fn right(&self) -> &[Matrix<S>] {
        &self.right
    }

    pub fn field(&self) -> &S::Field {
        self.matrix.field()
    }

    pub fn rank(&self) -> usize {
        self.left.len()
    }

    pub fn reassemble(&self) -> Matrix<S> {
        self.left
            .iter()
            .zip(&self.right)
            .fold(Matrix::zeros(self.field(), 9, 9), |acc, (a, b)| &acc + &a.kron(b))
    }

    pub fn to_record(&self) -> GlTensorRecord {
        GlTensorRecord {
            matrix: matrix_rows(&self.matrix),
            left: self.left.iter().map(matrix_rows).collect(),
            right: self.right.iter().map(matrix_rows).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlTensorRecord {
    pub matrix: Vec<Vec<String>>,
    pub left: Vec<Vec<Vec<String>>>,
    pub right: Vec<Vec<Vec<String>>>,
}

/// `r = R₀R - Id`.
pub fn classical_r<S: Scalar>(r: &HeckeSymmetry<S>) -> GlTensor<S> {
    let field = r.field().clone();
    let r0 = flip(&field);
    GlTensor::from_matrix(&(&r0 * r.r()) - &Matrix::identity(&field, 9))
}

/// Swap of the tensor factors, `R₀ r R₀`.
pub fn r21<S: Scalar>(r: &GlTensor<S>) -> GlTensor<S> {
    let r0 = flip(r.field());
    GlTensor::from_matrix(&(&r0 * r.matrix()) * &r0)
}

fn first_nonzero_column<S: Scalar>(m: &Matrix<S>) -> Option<usize> {
    (0..m.cols()).find(|&c| m.column(c).iter().any(|x| !x.is_zero()))
}

/// `[r12, r13] + [r12, r23] + [r13, r23] = 0` on V⊗V⊗V.
pub fn check_cybe<S: Scalar>(r: &GlTensor<S>) -> CheckReport {
    timed("cybe", || {
        let field = r.field().clone();
        let id3 = Matrix::identity(&field, 3);
        let r12 = r.matrix().kron(&id3);
        let r23 = id3.kron(r.matrix());
        let r13 = r
            .left()
            .iter()
            .zip(r.right())
            .fold(Matrix::zeros(&field, 27, 27), |acc, (a, b)| {
                &acc + &a.kron(&id3).kron(b)
            });
        // cross-check against conjugating r12 by the swap of the last two factors
        let p23 = id3.kron(&flip(&field));
        let r13_perm = &(&p23 * &r12) * &p23;
        if r13 != r13_perm {
            let c = r13.first_differing_column(&r13_perm).expect("differs");
            return Some(Witness::new(
                format!("r13 column {c} from the decomposition"),
                "decomposition",
                "permuted r12",
            ));
        }
        let br = |x: &Matrix<S>, y: &Matrix<S>| &(x * y) - &(y * x);
        let total = &(&br(&r12, &r13) + &br(&r12, &r23)) + &br(&r13, &r23);
        first_nonzero_column(&total).map(|c| {
            let col = crate::multilinear::Tensor3::from_coords(total.column(c)).expect("27");
            Witness::new(
                format!("e{}e{}e{}", c / 9 + 1, c / 3 % 3 + 1, c % 3 + 1),
                col,
                0,
            )
        })
    })
}

/// `r + r21 = (q - 1)(R₀ + Id)`.
pub fn check_symmetrized<S: Scalar>(r: &GlTensor<S>, q: &S) -> CheckReport {
    timed("symmetrized", || {
        let field = r.field().clone();
        let lhs = r.matrix() + r21(r).matrix();
        let qm1 = q.clone() - field.one();
        let rhs = (&flip(&field) + &Matrix::identity(&field, 9)).scale(&qm1);
        lhs.first_differing_column(&rhs).map(|c| {
            Witness::new(
                format!("column e{}e{}", c / 3 + 1, c % 3 + 1),
                crate::multilinear::column2(&lhs, c / 3, c % 3),
                crate::multilinear::column2(&rhs, c / 3, c % 3),
            )
        })
    })
}

//! Closed forms of the classical r-matrices and carriers of the canonical types.

use super::{GlTensor, LieSubalgebra};
use crate::classify::TypeLabel;
use crate::exactnum::{Field, Scalar};
use crate::multilinear::Matrix;

/// Matrix unit `E_ij`, 1-based.
pub fn unit<S: Scalar>(field: &S::Field, i: usize, j: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(field, 3, 3);
    m[(i - 1, j - 1)] = field.one();
    m
}

fn wedge_terms<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> [(Matrix<S>, Matrix<S>); 2] {
    [(a.clone(), b.clone()), (b.clone(), a.scale(&-a.field().one()))]
}

/// The displayed r for a type; `q` is used by Types 1 and 2 only.
pub fn expected_r<S: Scalar>(field: &S::Field, label: TypeLabel, q: &S) -> GlTensor<S> {
    let e = |i, j| unit::<S>(field, i, j);
    let qm1 = q.clone() - field.one();
    let mut terms: Vec<(Matrix<S>, Matrix<S>)> = Vec::new();
    let h = &e(1, 1) + &e(3, 3);
    match label {
        TypeLabel::Type1 | TypeLabel::Type2 => {
            let pairs = [
                (1, 1, 1, 1),
                (2, 2, 2, 2),
                (3, 3, 3, 3),
                (2, 2, 1, 1),
                (2, 2, 3, 3),
                (3, 3, 1, 1),
                (2, 1, 1, 2),
                (2, 3, 3, 2),
                (3, 1, 1, 3),
            ];
            for (i, j, k, l) in pairs {
                terms.push((e(i, j).scale(&qm1), e(k, l)));
            }
            if label == TypeLabel::Type1 {
                terms.extend(wedge_terms(&e(1, 3), &e(2, 3)));
            }
        }
        TypeLabel::Type3 => {
            terms.extend(wedge_terms(&e(2, 1), &h));
            terms.extend(wedge_terms(&e(2, 3), &e(3, 1)));
            terms.extend(wedge_terms(&e(3, 3).scale(&field.from_i64(2)), &e(1, 3)));
        }
        TypeLabel::Type4 => {
            terms.extend(wedge_terms(&e(2, 1), &h));
            terms.extend(wedge_terms(&e(2, 3), &(&e(3, 1) - &e(1, 3))));
        }
        TypeLabel::Type5 => {
            terms.extend(wedge_terms(&e(2, 1), &h));
            terms.extend(wedge_terms(&e(2, 3), &e(3, 1)));
        }
        TypeLabel::Type6 => {
            terms.extend(wedge_terms(&e(3, 3).scale(&field.from_i64(2)), &e(1, 3)));
        }
        // Types 1 and 2 at q = 1
        TypeLabel::Type7 => terms.extend(wedge_terms(&e(1, 3), &e(2, 3))),
        TypeLabel::Type8 => {}
    }
    GlTensor::from_terms(field, &terms)
}

/// The listed carrier span of a type (Types 3 to 8; `None` for Types 1 and 2).
pub fn expected_carrier<S: Scalar>(field: &S::Field, label: TypeLabel) -> Option<LieSubalgebra<S>> {
    let e = |i, j| unit::<S>(field, i, j);
    let h = &e(1, 1) + &e(3, 3);
    let gens = match label {
        TypeLabel::Type1 | TypeLabel::Type2 => return None,
        TypeLabel::Type3 => vec![e(1, 1), e(1, 3), e(2, 1), e(2, 3), e(3, 1), e(3, 3)],
        TypeLabel::Type4 => vec![h, &e(1, 3) - &e(3, 1), e(2, 1), e(2, 3)],
        TypeLabel::Type5 => vec![h, e(2, 1), e(2, 3), e(3, 1)],
        TypeLabel::Type6 => vec![e(1, 3), e(3, 3)],
        TypeLabel::Type7 => vec![e(1, 3), e(2, 3)],
        TypeLabel::Type8 => vec![],
    };
    Some(LieSubalgebra::span(field, &gens))
}

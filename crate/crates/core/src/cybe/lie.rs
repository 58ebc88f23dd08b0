use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GlTensor;
use crate::exactnum::{Field, Scalar};
use crate::heckecore::{matrix_rows, strings};
use crate::multilinear::{span_rref, Matrix};

pub const DEFAULT_ATTEMPTS: usize = 256;

/// A subalgebra of gl(V), stored by the echelonized basis of its span in the
/// matrix-unit coordinates `E_ij ↦ 3i + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSubalgebra<S: Scalar> {
    field: S::Field,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

fn bracket<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Matrix<S> {
    &(x * y) - &(y * x)
}

fn as_matrix<S: Scalar>(field: &S::Field, v: &[S]) -> Matrix<S> {
    Matrix::from_fn(field, 3, 3, |i, j| v[3 * i + j].clone())
}

impl<S: Scalar> LieSubalgebra<S> {
    /// Echelonized span of the given matrices (no closure taken).
    pub fn span(field: &S::Field, elems: &[Matrix<S>]) -> Self {
        let vecs: Vec<Vec<S>> = elems.iter().map(|m| m.entries().to_vec()).collect();
        let rows = span_rref(field, 9, &vecs);
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        LieSubalgebra {
            field: field.clone(),
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    pub fn basis(&self) -> Vec<Matrix<S>> {
        self.rows.iter().map(|r| as_matrix(&self.field, r)).collect()
    }

    /// Coordinates in the echelon basis, or `None` outside the span.
    pub fn coordinates(&self, m: &Matrix<S>) -> Option<Vec<S>> {
        let v = m.entries();
        let c: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut back = vec![self.field.zero(); 9];
        for (ci, row) in c.iter().zip(&self.rows) {
            for (b, x) in back.iter_mut().zip(row) {
                *b = b.clone() + ci.clone() * x.clone();
            }
        }
        (back == *v).then_some(c)
    }

    pub fn contains(&self, m: &Matrix<S>) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn is_closed(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| b.iter().all(|y| self.contains(&bracket(x, y))))
    }

    /// Smallest subalgebra containing the span.
    pub fn closure(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let b = cur.basis();
            let mut extra: Vec<Matrix<S>> = Vec::new();
            for (i, x) in b.iter().enumerate() {
                for y in &b[i + 1..] {
                    let z = bracket(x, y);
                    if !cur.contains(&z) {
                        extra.push(z);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            let mut all = b;
            all.extend(extra);
            cur = Self::span(&self.field, &all);
        }
    }

    /// `c[i][j]` = coordinates of `[b_i, b_j]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<S>>> {
        let b = self.basis();
        b.iter()
            .map(|x| {
                b.iter()
                    .map(|y| self.coordinates(&bracket(x, y)).expect("bracket-closed"))
                    .collect()
            })
            .collect()
    }

    pub fn to_record(&self) -> Vec<Vec<Vec<String>>> {
        self.basis().iter().map(matrix_rows).collect()
    }
}

/// Dimensions of L, [L, L] and the center, and the rank of the Killing form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived: usize,
    pub center: usize,
    pub killing_rank: usize,
}

pub fn fingerprint<S: Scalar>(l: &LieSubalgebra<S>) -> Fingerprint {
    let n = l.dim();
    let field = l.field().clone();
    if n == 0 {
        return Fingerprint {
            dim: 0,
            derived: 0,
            center: 0,
            killing_rank: 0,
        };
    }
    let c = l.structure_constants();
    let brackets: Vec<Vec<S>> = c.iter().flatten().cloned().collect();
    let derived = span_rref(&field, n, &brackets).len();
    // z is central iff Σ_s z_s c[s][t] = 0 for all t
    let center_eq = Matrix::from_fn(&field, n * n, n, |row, s| c[s][row / n][row % n].clone());
    let center = n - center_eq.rank();
    // ad(b_s) has column t equal to c[s][t]
    let ad: Vec<Matrix<S>> = (0..n)
        .map(|s| Matrix::from_fn(&field, n, n, |u, t| c[s][t][u].clone()))
        .collect();
    let killing = Matrix::from_fn(&field, n, n, |s, t| (&ad[s] * &ad[t]).trace());
    Fingerprint {
        dim: n,
        derived,
        center,
        killing_rank: killing.rank(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusStatus<S: Scalar> {
    /// `f([x, y])` is nondegenerate for this functional, given by its values on
    /// the echelon basis.
    Frobenius { witness: Vec<S> },
    /// The bracket vanishes identically, so every `f([x, y])` is zero.
    NotFrobenius,
    Inconclusive,
    /// Odd or zero dimension.
    NotApplicable,
}

impl<S: Scalar> FrobeniusStatus<S> {
    pub fn name(&self) -> &'static str {
        match self {
            FrobeniusStatus::Frobenius { .. } => "frobenius",
            FrobeniusStatus::NotFrobenius => "not_frobenius",
            FrobeniusStatus::Inconclusive => "inconclusive",
            FrobeniusStatus::NotApplicable => "not_applicable",
        }
    }

    pub fn witness_strings(&self) -> Option<Vec<String>> {
        match self {
            FrobeniusStatus::Frobenius { witness } => Some(strings(witness)),
            _ => None,
        }
    }
}

fn candidate_functionals<S: Scalar>(field: &S::Field, n: usize, attempts: usize) -> Vec<Vec<S>> {
    let unit = |i: usize| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect();
    let mut out: Vec<Vec<S>> = (0..n).map(unit).collect();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() > 1 {
            out.push(
                (0..n)
                    .map(|j| if mask >> j & 1 == 1 { field.one() } else { field.zero() })
                    .collect(),
            );
        }
        if out.len() >= attempts {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    while out.len() < attempts {
        out.push((0..n).map(|_| field.from_i64(rng.random_range(-3..=3))).collect());
    }
    out.truncate(attempts);
    out
}

/// Search for f with `det f([b_i, b_j]) ≠ 0` over a fixed sequence: dual basis,
/// then 0/1 combinations, then seeded small integers.
pub fn is_frobenius<S: Scalar>(l: &LieSubalgebra<S>, attempts: usize) -> FrobeniusStatus<S> {
    let n = l.dim();
    if n == 0 || n % 2 == 1 {
        return FrobeniusStatus::NotApplicable;
    }
    let field = l.field().clone();
    let c = l.structure_constants();
    if c.iter().flatten().flatten().all(|x| x.is_zero()) {
        return FrobeniusStatus::NotFrobenius;
    }
    for f in candidate_functionals::<S>(&field, n, attempts) {
        let form = Matrix::from_fn(&field, n, n, |i, j| {
            c[i][j]
                .iter()
                .zip(&f)
                .fold(field.zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        });
        if !form.determinant().is_zero() {
            return FrobeniusStatus::Frobenius { witness: f };
        }
    }
    FrobeniusStatus::Inconclusive
}

/// The span of the tensor factors and its bracket closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier<S: Scalar> {
    pub span: LieSubalgebra<S>,
    pub algebra: LieSubalgebra<S>,
}

impl<S: Scalar> Carrier<S> {
    pub fn closure_enlarged(&self) -> bool {
        self.algebra.dim() > self.span.dim()
    }
}

pub fn carrier<S: Scalar>(r: &GlTensor<S>) -> Carrier<S> {
    let mut factors = r.left().to_vec();
    factors.extend_from_slice(r.right());
    let span = LieSubalgebra::span(r.field(), &factors);
    let algebra = span.closure();
    Carrier { span, algebra }
}

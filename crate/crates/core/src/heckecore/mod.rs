//! Construction of the skewsymmetrizer `Y` and the Hecke symmetry `R = q·Id - Y`
//! from the data `(q, a, b, g)`, and the inverse extraction `R → (q, F)`.

mod extract;
mod record;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::multilinear::{
    apply_vector, flip, idx2, wedge2, wedge_vt, Matrix, Tensor2, Vector,
};

pub use extract::{build_y_from_f, conjugate, deform, ell_form, extract_f, extract_q, FOperator};
pub use record::{
    check_field_tag, matrix_rows, parse_matrix, strings, HeckeDataRecord, HeckeSymmetryRecord,
    MatrixRecord,
};

/// Symmetric bilinear form on V, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBilinearForm<S: Scalar> {
    matrix: Matrix<S>,
}

impl<S: Scalar> SymBilinearForm<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != 3 || matrix.cols() != 3 {
            return Err(Error::DimensionMismatch("bilinear form must be 3x3".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymBilinearForm { matrix })
    }

    pub fn zero(field: &S::Field) -> Self {
        SymBilinearForm {
            matrix: Matrix::zeros(field, 3, 3),
        }
    }

    pub fn from_i64(field: &S::Field, rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(Matrix::from_fn(field, 3, 3, |r, c| field.from_i64(rows[r][c])))
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn field(&self) -> &S::Field {
        self.matrix.field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.matrix[(i, j)]
    }

    pub fn eval(&self, x: &Vector<S>, y: &Vector<S>) -> S {
        let gy = apply_vector(&self.matrix, y);
        (0..3).fold(self.field().zero(), |acc, i| acc + x[i].clone() * gy[i].clone())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Gram matrix of the restriction to the span of `a`, `b`.
    pub fn restricted_gram(&self, a: &Vector<S>, b: &Vector<S>) -> Matrix<S> {
        let ab = self.eval(a, b);
        Matrix::from_rows(
            self.field(),
            vec![
                vec![self.eval(a, a), ab.clone()],
                vec![ab, self.eval(b, b)],
            ],
        )
        .expect("2x2 gram matrix")
    }

    pub fn scale(&self, k: &S) -> Self {
        SymBilinearForm {
            matrix: self.matrix.scale(k),
        }
    }

    /// `g'(x, y) = g(P⁻¹x, P⁻¹y)`, the form transported by P.
    pub fn transport(&self, p_inv: &Matrix<S>) -> Self {
        SymBilinearForm {
            matrix: &(&p_inv.transpose() * &self.matrix) * p_inv,
        }
    }
}

/// `Tv = g(b,v)a - g(a,v)b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TOperator<S: Scalar> {
    matrix: Matrix<S>,
}

impl<S: Scalar> TOperator<S> {
    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        apply_vector(&self.matrix, v)
    }

    pub fn trace(&self) -> S {
        self.matrix.trace()
    }

    /// Sum of the principal 2×2 minors: the coefficient of λ in det(λ - T),
    /// up to sign.
    pub fn c2(&self) -> S {
        let m = &self.matrix;
        let minor = |i: usize, j: usize| {
            m[(i, i)].clone() * m[(j, j)].clone() - m[(i, j)].clone() * m[(j, i)].clone()
        };
        minor(0, 1) + minor(0, 2) + minor(1, 2)
    }

    /// `g(x, Tu) = -g(Tx, u)` on all basis pairs.
    pub fn is_g_antisymmetric(&self, g: &SymBilinearForm<S>) -> bool {
        let field = g.field().clone();
        (0..3).all(|i| {
            (0..3).all(|j| {
                let ei = Vector::basis(&field, i);
                let ej = Vector::basis(&field, j);
                g.eval(&ei, &self.apply(&ej)) == -g.eval(&self.apply(&ei), &ej)
            })
        })
    }
}

pub fn t_operator<S: Scalar>(a: &Vector<S>, b: &Vector<S>, g: &SymBilinearForm<S>) -> TOperator<S> {
    let ga = apply_vector(g.matrix(), a);
    let gb = apply_vector(g.matrix(), b);
    let matrix = Matrix::from_fn(g.field(), 3, 3, |i, j| {
        a[i].clone() * gb[j].clone() - b[i].clone() * ga[j].clone()
    });
    TOperator { matrix }
}

/// `Δ = g(a,a)g(b,b) - g(a,b)²`.
pub fn discriminant<S: Scalar>(a: &Vector<S>, b: &Vector<S>, g: &SymBilinearForm<S>) -> S {
    g.restricted_gram(a, b).determinant()
}

/// All nonzero `q` with `(q-1)² = -4Δ`, as `1 + 2s` then `1 - 2s` for `s² = -Δ`.
pub fn solve_q<S: Scalar>(a: &Vector<S>, b: &Vector<S>, g: &SymBilinearForm<S>) -> Vec<S> {
    let field = g.field().clone();
    let delta = discriminant(a, b, g);
    let Some(s) = (-delta).sqrt_in_field() else {
        return Vec::new();
    };
    let two_s = field.from_i64(2) * s;
    let mut out = Vec::with_capacity(2);
    for q in [field.one() + two_s.clone(), field.one() - two_s] {
        if !q.is_zero() && !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

fn check_constraint<S: Scalar>(q: &S, delta: &S) -> Result<()> {
    let field = q.field();
    let lhs = (q.clone() - field.one()).square();
    let rhs = -(field.from_i64(4) * delta.clone());
    if lhs != rhs {
        return Err(Error::InvalidConstraint {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(())
}

/// The parametrizing data `(q, a, b, g)`, validated against `(q-1)² = -4Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeData<S: Scalar> {
    q: S,
    a: Vector<S>,
    b: Vector<S>,
    g: SymBilinearForm<S>,
}

impl<S: Scalar> HeckeData<S> {
    pub fn new(q: S, a: Vector<S>, b: Vector<S>, g: SymBilinearForm<S>) -> Result<Self> {
        let data = Self::new_unchecked(q, a, b, g)?;
        if data.q.is_zero() {
            return Err(Error::ZeroQ);
        }
        check_constraint(&data.q, &data.delta())?;
        Ok(data)
    }

    /// Accepts data violating the discriminant constraint (the field check
    /// still applies). Used to build adversarial operators.
    pub fn new_unchecked(q: S, a: Vector<S>, b: Vector<S>, g: SymBilinearForm<S>) -> Result<Self> {
        let f = q.field();
        for other in [a.field(), b.field(), g.field().clone()] {
            if other != f {
                return Err(Error::FieldMismatch(
                    f.spec().to_string(),
                    other.spec().to_string(),
                ));
            }
        }
        Ok(HeckeData { q, a, b, g })
    }

    /// Data with `q` taken as the first admissible root of the constraint.
    pub fn from_geometry(a: Vector<S>, b: Vector<S>, g: SymBilinearForm<S>) -> Result<Self> {
        let q = solve_q(&a, &b, &g).into_iter().next().ok_or_else(|| {
            Error::InvalidConstraint {
                lhs: "(q-1)^2".into(),
                rhs: format!("{} (not a square)", -(g.field().from_i64(4) * discriminant(&a, &b, &g))),
            }
        })?;
        Self::new(q, a, b, g)
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn a(&self) -> &Vector<S> {
        &self.a
    }

    pub fn b(&self) -> &Vector<S> {
        &self.b
    }

    pub fn g(&self) -> &SymBilinearForm<S> {
        &self.g
    }

    pub fn field(&self) -> S::Field {
        self.q.field()
    }

    pub fn delta(&self) -> S {
        discriminant(&self.a, &self.b, &self.g)
    }

    pub fn t_operator(&self) -> TOperator<S> {
        t_operator(&self.a, &self.b, &self.g)
    }

    pub fn satisfies_constraint(&self) -> bool {
        check_constraint(&self.q, &self.delta()).is_ok()
    }

    /// Same data with one Gram entry (and its mirror) replaced.
    pub fn with_g_entry(&self, i: usize, j: usize, value: S) -> Self {
        let mut m = self.g.matrix().clone();
        m[(i, j)] = value.clone();
        m[(j, i)] = value;
        HeckeData {
            g: SymBilinearForm { matrix: m },
            ..self.clone()
        }
    }

    /// Data of the conjugate `(P⊗P) R (P⊗P)⁻¹`: `a ↦ Pa`, `b ↦ Pb`,
    /// `g ↦ g(P⁻¹·, P⁻¹·)`.
    pub fn conjugate(&self, p: &Matrix<S>) -> Result<Self> {
        let p_inv = p.inverse()?;
        Ok(HeckeData {
            q: self.q.clone(),
            a: apply_vector(p, &self.a),
            b: apply_vector(p, &self.b),
            g: self.g.transport(&p_inv),
        })
    }
}

/// `Y(xy) = g(x,y) a∧b + x∧Ty + y∧Tx + (q+1)/2 x∧y` on basis pairs.
///
/// Does not look at the constraint, so it also serves for adversarial data.
pub fn formula_y<S: Scalar>(data: &HeckeData<S>) -> Matrix<S> {
    let field = data.field();
    let t = data.t_operator();
    let ab = wedge2(&data.a, &data.b);
    let half_q1 = (data.q.clone() + field.one()) / field.from_i64(2);
    let e: Vec<Vector<S>> = (0..3).map(|i| Vector::basis(&field, i)).collect();
    let te: Vec<Vector<S>> = e.iter().map(|v| t.apply(v)).collect();
    let mut y = Matrix::zeros(&field, 9, 9);
    for i in 0..3 {
        for j in 0..3 {
            let col = ab.scale(data.g.entry(i, j))
                + wedge2(&e[i], &te[j])
                + wedge2(&e[j], &te[i])
                + wedge2(&e[i], &e[j]).scale(&half_q1);
            for (r, v) in col.coords().iter().enumerate() {
                y[(r, idx2(i, j))] = v.clone();
            }
        }
    }
    y
}

pub fn build_y<S: Scalar>(data: &HeckeData<S>) -> Result<Matrix<S>> {
    if data.q.is_zero() {
        return Err(Error::ZeroQ);
    }
    check_constraint(&data.q, &data.delta())?;
    Ok(formula_y(data))
}

/// A Hecke symmetry together with its skewsymmetrizer `Y = q·Id - R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeSymmetry<S: Scalar> {
    r: Matrix<S>,
    y: Matrix<S>,
    q: S,
}

impl<S: Scalar> HeckeSymmetry<S> {
    /// Pair an operator with a given parameter, without any verification.
    pub fn from_parts(r: Matrix<S>, q: S) -> Self {
        let y = &Matrix::identity(r.field(), 9).scale(&q) - &r;
        HeckeSymmetry { r, y, q }
    }

    /// Wrap a raw 9×9 operator; `q` is recovered from the Hecke relation.
    pub fn from_operator(r: Matrix<S>) -> Result<Self> {
        if r.rows() != 9 || r.cols() != 9 {
            return Err(Error::DimensionMismatch("R must be 9x9".into()));
        }
        let q = extract_q(&r)?;
        Ok(Self::from_parts(r, q))
    }

    pub fn flip(field: &S::Field) -> Self {
        Self::from_parts(flip(field), field.one())
    }

    pub fn r(&self) -> &Matrix<S> {
        &self.r
    }

    pub fn y(&self) -> &Matrix<S> {
        &self.y
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn field(&self) -> &S::Field {
        self.r.field()
    }

    /// Value `R(e_i e_j)`.
    pub fn value(&self, i: usize, j: usize) -> Tensor2<S> {
        Tensor2::from_coords(self.r.column(idx2(i, j))).expect("9 coordinates")
    }
}

/// `R = q·Id - Y` with Y from [`build_y`].
pub fn build_r<S: Scalar>(data: &HeckeData<S>) -> Result<HeckeSymmetry<S>> {
    let y = build_y(data)?;
    let r = &Matrix::identity(y.field(), 9).scale(&data.q) - &y;
    Ok(HeckeSymmetry {
        r,
        y,
        q: data.q.clone(),
    })
}

/// `ω̃(x ∧ Y(yz))` evaluated on the three basis vectors z.
pub(crate) fn ell_values<S: Scalar>(y_op: &Matrix<S>, x: &Vector<S>, y: &Vector<S>) -> Result<Vec<S>> {
    let field = x.field();
    (0..3)
        .map(|k| {
            let z = Vector::basis(&field, k);
            let yz = crate::multilinear::tensor2(y, &z);
            let img = crate::multilinear::apply2(y_op, &yz);
            let w = wedge_vt(x, &img).map_err(|_| Error::ImageNotInAlt2)?;
            crate::multilinear::omega_tilde(&w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Rational, Rationals};
    use crate::multilinear::{alt2_basis, apply2, column2, tensor2};

    fn q(n: i64, d: i64) -> Rational {
        Rationals.ratio(n, d).unwrap()
    }

    fn e(i: usize) -> Vector<Rational> {
        Vector::basis(&Rationals, i)
    }

    fn type1_g(qv: &Rational) -> SymBilinearForm<Rational> {
        let s = (qv.clone() - q(1, 1)) / q(2, 1);
        let z = q(0, 1);
        SymBilinearForm::new(
            Matrix::from_rows(
                &Rationals,
                vec![
                    vec![z.clone(), s.clone(), z.clone()],
                    vec![s, z.clone(), z.clone()],
                    vec![z.clone(), z, q(1, 1)],
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn t_operator_type1_eigenvectors() {
        let qv = q(5, 1);
        let g = type1_g(&qv);
        let t = t_operator(&e(0), &e(1), &g);
        let s = q(2, 1);
        assert_eq!(t.apply(&e(0)), e(0).scale(&s));
        assert_eq!(t.apply(&e(1)), e(1).scale(&-s));
        assert!(t.apply(&e(2)).is_zero());
        assert_eq!(t.c2(), discriminant(&e(0), &e(1), &g));
    }

    #[test]
    fn t_operator_degenerate_cases() {
        let g = SymBilinearForm::from_i64(&Rationals, [[1, 2, 0], [2, 0, 1], [0, 1, 3]]).unwrap();
        let a = Vector::from_i64(&Rationals, [1, -1, 2]);
        assert!(t_operator(&a, &a, &g).matrix().is_zero());
        assert!(t_operator(&a, &e(1), &SymBilinearForm::zero(&Rationals))
            .matrix()
            .is_zero());
        let t = t_operator(&a, &e(1), &g);
        assert!(t.trace().is_zero());
        assert!(t.is_g_antisymmetric(&g));
        assert_eq!(t.c2(), discriminant(&a, &e(1), &g));
    }

    #[test]
    fn discriminant_examples() {
        let qv = q(3, 1);
        assert_eq!(discriminant(&e(0), &e(1), &type1_g(&qv)), q(-1, 1));
        assert_eq!(
            discriminant(&e(0), &e(1), &SymBilinearForm::zero(&Rationals)),
            q(0, 1)
        );
        let id = SymBilinearForm::from_i64(&Rationals, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(discriminant(&e(0), &e(1), &id), q(1, 1));
    }

    #[test]
    fn solve_q_examples() {
        // Δ = -1
        let g = type1_g(&q(3, 1));
        assert_eq!(solve_q(&e(0), &e(1), &g), vec![q(3, 1), q(-1, 1)]);
        // Δ = 0
        let g0 = SymBilinearForm::zero(&Rationals);
        assert_eq!(solve_q(&e(0), &e(1), &g0), vec![q(1, 1)]);
        // Δ = -1/4: roots 2 and 0, the latter excluded
        let g = type1_g(&q(2, 1));
        assert_eq!(solve_q(&e(0), &e(1), &g), vec![q(2, 1)]);
        // Δ = 1: -Δ is not a square
        let id = SymBilinearForm::from_i64(&Rationals, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(solve_q(&e(0), &e(1), &id).is_empty());
        assert!(HeckeData::from_geometry(e(0), e(1), id).is_err());
    }

    #[test]
    fn data_validation() {
        let g = type1_g(&q(2, 1));
        assert!(HeckeData::new(q(2, 1), e(0), e(1), g.clone()).is_ok());
        assert!(matches!(
            HeckeData::new(q(3, 1), e(0), e(1), g.clone()),
            Err(Error::InvalidConstraint { .. })
        ));
        let g0 = SymBilinearForm::zero(&Rationals);
        assert_eq!(
            HeckeData::new(q(0, 1), e(0), e(1), g0).unwrap_err(),
            Error::ZeroQ
        );
        assert_eq!(
            SymBilinearForm::<Rational>::from_i64(&Rationals, [[0, 1, 0], [0, 0, 0], [0, 0, 0]]).unwrap_err(),
            Error::NotSymmetric
        );
        let d = HeckeData::from_geometry(e(0), e(1), g).unwrap();
        assert_eq!(d.q(), &q(2, 1));
    }

    #[test]
    fn classical_skewsymmetrizer() {
        let g0 = SymBilinearForm::zero(&Rationals);
        let d = HeckeData::new(q(1, 1), e(0), e(2), g0).unwrap();
        let y = build_y(&d).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(column2(&y, i, j), wedge2(&e(i), &e(j)));
            }
        }
        let r = build_r(&d).unwrap();
        assert_eq!(r.r(), &flip(&Rationals));
    }

    #[test]
    fn y_acts_on_alt2_by_q_plus_one() {
        let qv = q(1, 2);
        let d = HeckeData::new(qv.clone(), e(0), e(1), type1_g(&qv)).unwrap();
        let y = build_y(&d).unwrap();
        for w in alt2_basis::<Rational>(&Rationals) {
            assert_eq!(apply2(&y, &w), w.scale(&(qv.clone() + q(1, 1))));
        }
        assert_eq!(y.rank(), 3);
    }

    #[test]
    fn type3_y_matrix_matches_hand_expansion() {
        // a = e1, b = e2, g = [[1,0,0],[0,0,1],[0,1,0]], q = 1, so T e1 = -e2,
        // T e2 = 0, T e3 = e1. Expanding
        // Y(xy) = g(x,y) e1∧e2 + x∧Ty + y∧Tx + x∧y on each basis pair:
        //   Y(e1e1) = e1∧e2 - 2 e1∧e2           = -e1∧e2
        //   Y(e1e2) = e1∧e2 + e2∧(-e2)          =  e1∧e2
        //   Y(e1e3) = e1∧e1 + e3∧(-e2) + e1∧e3  =  e2∧e3 + e1∧e3
        //   Y(e2e2) = 0
        //   Y(e2e3) = e1∧e2 + e2∧e1 + e2∧e3     =  e2∧e3
        //   Y(e3e3) = 2 e3∧e1                   = -2 e1∧e3
        // and Y(e_j e_i) = Y(e_i e_j) - 2 e_i∧e_j.
        let g = SymBilinearForm::from_i64(&Rationals, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap();
        let d = HeckeData::new(q(1, 1), e(0), e(1), g).unwrap();
        let y = build_y(&d).unwrap();
        let w = |i: usize, j: usize| wedge2(&e(i), &e(j));
        let two = q(2, 1);
        let expect = [
            ((0, 0), w(0, 1).scale(&q(-1, 1))),
            ((0, 1), w(0, 1)),
            ((1, 0), w(0, 1) - w(0, 1).scale(&two)),
            ((0, 2), w(1, 2) + w(0, 2)),
            ((2, 0), w(1, 2) + w(0, 2) - w(0, 2).scale(&two)),
            ((1, 1), Tensor2::zero(&Rationals)),
            ((1, 2), w(1, 2)),
            ((2, 1), w(1, 2) - w(1, 2).scale(&two)),
            ((2, 2), w(0, 2).scale(&q(-2, 1))),
        ];
        for ((i, j), want) in expect {
            assert_eq!(column2(&y, i, j), want, "Y(e{}e{})", i + 1, j + 1);
        }
    }

    #[test]
    fn ell_xx_is_multiple_of_omega_ab() {
        use crate::multilinear::omega_form;
        let qv = q(3, 1);
        let d = HeckeData::new(qv.clone(), e(0), e(1), type1_g(&qv)).unwrap();
        let y = build_y(&d).unwrap();
        let l = omega_form(&e(0), &e(1));
        let x3 = e(2);
        let ell = ell_form(&y, &x3, &x3).unwrap();
        assert_eq!(ell, l.scale(&d.g().eval(&x3, &x3)));
        let x = Vector::from_i64(&Rationals, [1, 2, -1]);
        assert_eq!(ell_form(&y, &x, &x).unwrap(), l.scale(&d.g().eval(&x, &x)));
        assert!(ell_form(&y, &Vector::zero(&Rationals), &x).unwrap().is_zero());
        // image outside Alt2
        let bad = Matrix::identity(&Rationals, 9);
        assert_eq!(ell_form(&bad, &x, &x).unwrap_err(), Error::ImageNotInAlt2);
        let _ = tensor2(&x, &x);
    }

    #[test]
    fn build_r_examples() {
        let qv = q(2, 1);
        let d = HeckeData::new(qv.clone(), e(0), e(1), type1_g(&qv)).unwrap();
        let r = build_r(&d).unwrap();
        assert_eq!(
            r.value(0, 1),
            tensor2(&e(0), &e(1)).scale(&(qv.clone() - q(1, 1))) + tensor2(&e(1), &e(0))
        );
        assert_eq!(r.value(1, 0), tensor2(&e(0), &e(1)).scale(&qv));

        let g3 = SymBilinearForm::from_i64(&Rationals, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap();
        let r3 = build_r(&HeckeData::new(q(1, 1), e(0), e(1), g3).unwrap()).unwrap();
        assert_eq!(
            r3.value(2, 2),
            tensor2(&e(2), &e(2)) + wedge2(&e(0), &e(2)).scale(&q(2, 1))
        );
    }
}

use super::{ell_values, HeckeSymmetry, SymBilinearForm, TOperator};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::multilinear::{
    apply2, bivector_from_dual, decompose_bivector, idx2, is_alt2, omega, omega_tilde,
    square_action, wedge_vt, LinearForm, Matrix, Tensor2, Vector,
};

/// `F(x, y) = g(x, y)·t` with `t` decomposable in Alt2.
///
/// Stored normalized: the first nonzero coordinate of `t` is 1, or `t = 0`
/// and `g = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FOperator<S: Scalar> {
    g: SymBilinearForm<S>,
    t: Tensor2<S>,
}

impl<S: Scalar> FOperator<S> {
    pub fn zero(field: &S::Field) -> Self {
        FOperator {
            g: SymBilinearForm::zero(field),
            t: Tensor2::zero(field),
        }
    }

    /// `g ⊗ (a ∧ b)`, normalized.
    pub fn new(g: SymBilinearForm<S>, t: Tensor2<S>) -> Result<Self> {
        if !is_alt2(&t) {
            return Err(Error::NotAlternating);
        }
        Ok(Self::normalized(g, t))
    }

    fn normalized(g: SymBilinearForm<S>, t: Tensor2<S>) -> Self {
        let field = g.field().clone();
        if g.matrix().is_zero() {
            return Self::zero(&field);
        }
        match t.coords().iter().find(|c| !c.is_zero()) {
            None => Self::zero(&field),
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero");
                FOperator {
                    t: t.scale(&inv),
                    g: g.scale(lead),
                }
            }
        }
    }

    pub fn g(&self) -> &SymBilinearForm<S> {
        &self.g
    }

    pub fn t(&self) -> &Tensor2<S> {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero()
    }

    pub fn apply(&self, x: &Vector<S>, y: &Vector<S>) -> Tensor2<S> {
        self.t.scale(&self.g.eval(x, y))
    }

    /// The 9×9 matrix of the induced map V⊗V → Alt2.
    pub fn matrix(&self) -> Matrix<S> {
        let field = self.g.field().clone();
        let mut m = Matrix::zeros(&field, 9, 9);
        for i in 0..3 {
            for j in 0..3 {
                let col = self.t.scale(self.g.entry(i, j));
                for (r, v) in col.coords().iter().enumerate() {
                    m[(r, idx2(i, j))] = v.clone();
                }
            }
        }
        m
    }

    /// A factorization `t = a ∧ b`, or `None` for F = 0.
    pub fn decomposition(&self) -> Option<(Vector<S>, Vector<S>)> {
        if self.is_zero() {
            None
        } else {
            Some(decompose_bivector(&self.t).expect("t is a nonzero bivector"))
        }
    }

    /// `Δ(F) = g(a,a)g(b,b) - g(a,b)²` for any factorization `t = a∧b`.
    pub fn delta(&self) -> S {
        match self.decomposition() {
            None => self.g.field().zero(),
            Some((a, b)) => super::discriminant(&a, &b, &self.g),
        }
    }

    /// `Tv = g(b,v)a - g(a,v)b`; zero when F = 0.
    pub fn t_operator(&self) -> TOperator<S> {
        let field = self.g.field().clone();
        match self.decomposition() {
            None => super::t_operator(
                &Vector::zero(&field),
                &Vector::zero(&field),
                &self.g,
            ),
            Some((a, b)) => super::t_operator(&a, &b, &self.g),
        }
    }

    /// Rank of g restricted to the plane of `t`; `None` when F = 0.
    pub fn restricted_rank(&self) -> Option<usize> {
        self.decomposition()
            .map(|(a, b)| self.g.restricted_gram(&a, &b).rank())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::normalized(self.g.scale(k), self.t.clone())
    }

    /// `F'(x, y) = (P⊗P) F(P⁻¹x, P⁻¹y)`.
    pub fn transport(&self, p: &Matrix<S>) -> Result<Self> {
        let p_inv = p.inverse()?;
        let t = apply2(&square_action(p), &self.t);
        Ok(Self::normalized(self.g.transport(&p_inv), t))
    }
}

/// `ℓ_{x,y}(z) = ω̃(x ∧ Y(yz))`.
pub fn ell_form<S: Scalar>(y_op: &Matrix<S>, x: &Vector<S>, y: &Vector<S>) -> Result<LinearForm<S>> {
    LinearForm::from_coords(ell_values(y_op, x, y)?)
}

/// Recover q from `(R - q)(R + 1) = 0`.
pub fn extract_q<S: Scalar>(r: &Matrix<S>) -> Result<S> {
    if !r.is_square() {
        return Err(Error::DimensionMismatch("R must be square".into()));
    }
    let field = r.field().clone();
    let m = r + &Matrix::identity(&field, r.rows());
    if m.is_zero() {
        return Err(Error::AmbiguousHeckeParameter);
    }
    let col = (0..m.cols())
        .find(|&c| m.column(c).iter().any(|x| !x.is_zero()))
        .expect("M is nonzero");
    let v = m.column(col);
    let rv = r.apply(&v)?;
    let k = v.iter().position(|x| !x.is_zero()).expect("nonzero column");
    let q = rv[k].clone() / v[k].clone();
    if &(r * &m) != &m.scale(&q) {
        return Err(Error::NoHeckeParameter);
    }
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    Ok(q)
}

fn first_nonzero<'a, S: Scalar>(t: &'a Tensor2<S>) -> Option<&'a S> {
    t.coords().iter().find(|c| !c.is_zero())
}

/// Recover the normalized `F` with `Y = Y(q, F)`.
///
/// Fails with `NotHeckeSym0` when the image of Y leaves Alt2, when F has rank
/// above 1 or violates the discriminant constraint, or when Y is not rebuilt by
/// `(q, F)`.
pub fn extract_f<S: Scalar>(r: &HeckeSymmetry<S>) -> Result<FOperator<S>> {
    let field = r.field().clone();
    let y = r.y();
    for c in 0..9 {
        let col = Tensor2::from_coords(y.column(c))?;
        if !is_alt2(&col) {
            return Err(Error::NotHeckeSym0("image of Y is not in Alt2".into()));
        }
    }
    let e: Vec<Vector<S>> = (0..3).map(|i| Vector::basis(&field, i)).collect();
    let half = field.one() / field.from_i64(2);
    let mut ell = vec![vec![Vec::new(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ell[i][j] = ell_values(y, &e[i], &e[j])?;
        }
    }
    // dual coordinates of F(e_i e_j): c_k = (ℓ_{i,j}(e_k) + ℓ_{j,i}(e_k)) / 2
    let f_ij = |i: usize, j: usize| {
        let c: Vec<S> = (0..3)
            .map(|k| (ell[i][j][k].clone() + ell[j][i][k].clone()) * half.clone())
            .collect();
        bivector_from_dual(&Vector::from_coords(c).expect("3 coordinates"))
    };
    let values: Vec<Vec<Tensor2<S>>> = (0..3)
        .map(|i| (0..3).map(|j| f_ij(i, j)).collect())
        .collect();
    for i in 0..3 {
        for j in 0..i {
            if values[i][j] != values[j][i] {
                return Err(Error::NotHeckeSym0("F is not symmetric".into()));
            }
        }
    }
    let lead = values
        .iter()
        .flatten()
        .find(|t| !t.is_zero())
        .cloned();
    let f = match lead {
        None => FOperator::zero(&field),
        Some(t0) => {
            let t = t0.scale(&first_nonzero(&t0).expect("nonzero").inverse().expect("nonzero"));
            let pos = t.coords().iter().position(|c| !c.is_zero()).expect("nonzero");
            let mut g = Matrix::zeros(&field, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let v = &values[i][j];
                    let gij = v.coords()[pos].clone();
                    if &t.scale(&gij) != v {
                        return Err(Error::NotHeckeSym0("F has rank greater than one".into()));
                    }
                    g[(i, j)] = gij;
                }
            }
            FOperator {
                g: SymBilinearForm::new(g)?,
                t,
            }
        }
    };
    let rebuilt = build_y_from_f(r.q(), &f)
        .map_err(|e| Error::NotHeckeSym0(format!("constraint fails: {e}")))?;
    if &rebuilt != y {
        return Err(Error::NotHeckeSym0("Y is not determined by (q, F)".into()));
    }
    Ok(f)
}

/// Y from `(q, F)` through the nondegenerate pairing:
/// `ω̃(x ∧ Y(yz)) = ω̃(F(xy)∧z + F(xz)∧y - F(yz)∧x) + (q+1)/2 ω(x,y,z)`.
pub fn build_y_from_f<S: Scalar>(q: &S, f: &FOperator<S>) -> Result<Matrix<S>> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let field = q.field();
    let lhs = (q.clone() - field.one()).square();
    let rhs = -(field.from_i64(4) * f.delta());
    if lhs != rhs {
        return Err(Error::InvalidConstraint {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    let e: Vec<Vector<S>> = (0..3).map(|i| Vector::basis(&field, i)).collect();
    let half_q1 = (q.clone() + field.one()) / field.from_i64(2);
    let pair = |x: &Vector<S>, t: &Tensor2<S>| -> S {
        omega_tilde(&wedge_vt(x, t).expect("F takes values in Alt2")).expect("Alt3")
    };
    let mut y = Matrix::zeros(&field, 9, 9);
    for j in 0..3 {
        for k in 0..3 {
            let c: Vec<S> = (0..3)
                .map(|m| {
                    pair(&e[k], &f.apply(&e[m], &e[j])) + pair(&e[j], &f.apply(&e[m], &e[k]))
                        - pair(&e[m], &f.apply(&e[j], &e[k]))
                        + half_q1.clone() * omega(&e[m], &e[j], &e[k])
                })
                .collect();
            // the pairing matrix in the basis dual to e_k is the identity
            let col = bivector_from_dual(&Vector::from_coords(c)?);
            for (r, v) in col.coords().iter().enumerate() {
                y[(r, idx2(j, k))] = v.clone();
            }
        }
    }
    Ok(y)
}

/// `R_λ = R₀ + λ(R - R₀)` with parameter `1 + λ(q - 1)`.
pub fn deform<S: Scalar>(r: &HeckeSymmetry<S>, lambda: &S) -> Result<HeckeSymmetry<S>> {
    let field = r.field().clone();
    let shift = lambda.clone() * (r.q().clone() - field.one());
    if (shift.clone() + field.one()).is_zero() {
        return Err(Error::SingularDeformation);
    }
    let r0 = crate::multilinear::flip(&field);
    let r_l = &r0 + &(r.r() - &r0).scale(lambda);
    Ok(HeckeSymmetry::from_parts(r_l, field.one() + shift))
}

/// `(P⊗P) R (P⊗P)⁻¹`.
pub fn conjugate<S: Scalar>(r: &HeckeSymmetry<S>, p: &Matrix<S>) -> Result<HeckeSymmetry<S>> {
    if p.rows() != 3 || p.cols() != 3 {
        return Err(Error::DimensionMismatch("P must be 3x3".into()));
    }
    let pp = square_action(p);
    let pp_inv = pp.inverse().map_err(|_| Error::SingularBasis)?;
    let r2 = &(&pp * r.r()) * &pp_inv;
    Ok(HeckeSymmetry::from_parts(r2, r.q().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Field, PrimeField, Rational, Rationals};
    use crate::heckecore::{build_r, build_y, HeckeData};
    use crate::multilinear::{flip, wedge2};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rationals.ratio(n, d).unwrap()
    }

    fn e(i: usize) -> Vector<Rational> {
        Vector::basis(&Rationals, i)
    }

    fn type1(qv: Rational) -> HeckeData<Rational> {
        let s = (qv.clone() - q(1, 1)) / q(2, 1);
        let z = q(0, 1);
        let g = SymBilinearForm::new(
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
        .unwrap();
        HeckeData::new(qv, e(0), e(1), g).unwrap()
    }

    #[test]
    fn extract_q_examples() {
        assert_eq!(extract_q(&flip::<Rational>(&Rationals)).unwrap(), q(1, 1));
        let r = build_r(&type1(q(3, 1))).unwrap();
        assert_eq!(extract_q(r.r()).unwrap(), q(3, 1));
        let twice = flip::<Rational>(&Rationals).scale(&q(2, 1));
        assert_eq!(extract_q(&twice).unwrap_err(), Error::NoHeckeParameter);
        let minus = Matrix::<Rational>::identity(&Rationals, 9).scale(&q(-1, 1));
        assert_eq!(extract_q(&minus).unwrap_err(), Error::AmbiguousHeckeParameter);
        // R = 0 satisfies R(R+1) = 0 with q = 0
        let zero = Matrix::<Rational>::zeros(&Rationals, 9, 9);
        assert_eq!(extract_q(&zero).unwrap_err(), Error::ZeroQ);
    }

    #[test]
    fn extract_f_flip_is_zero() {
        let r = HeckeSymmetry::<Rational>::flip(&Rationals);
        let f = extract_f(&r).unwrap();
        assert!(f.is_zero());
        assert!(f.g().matrix().is_zero());
    }

    #[test]
    fn extract_f_type1() {
        let d = type1(q(3, 1));
        let f = extract_f(&build_r(&d).unwrap()).unwrap();
        assert_eq!(f.t(), &wedge2(&e(0), &e(1)));
        assert_eq!(f.g(), d.g());
        assert_eq!(f.delta(), q(-1, 1));
    }

    #[test]
    fn extract_f_rejects_non_alt2_image() {
        // q·Id - R for R = 2·flip has symmetric part in the image
        let r = HeckeSymmetry::from_parts(flip::<Rational>(&Rationals).scale(&q(2, 1)), q(1, 1));
        assert!(matches!(extract_f(&r), Err(Error::NotHeckeSym0(_))));
    }

    #[test]
    fn extract_f_rejects_violated_constraint() {
        let d = type1(q(3, 1));
        let bad = d.with_g_entry(2, 2, q(5, 1)).with_g_entry(0, 1, q(7, 1));
        assert!(!bad.satisfies_constraint());
        let y = super::super::formula_y(&bad);
        let r = HeckeSymmetry::from_parts(
            &Matrix::identity(&Rationals, 9).scale(bad.q()) - &y,
            bad.q().clone(),
        );
        assert!(matches!(extract_f(&r), Err(Error::NotHeckeSym0(_))));
    }

    #[test]
    fn normalization_rule() {
        let t = wedge2(&e(1), &e(2)).scale(&q(-3, 1));
        let g = SymBilinearForm::from_i64(&Rationals, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]).unwrap();
        let f = FOperator::new(g, t).unwrap();
        // e2∧e3 has first nonzero coordinate at e2⊗e3
        assert_eq!(f.t(), &wedge2(&e(1), &e(2)));
        assert_eq!(f.g().entry(0, 0), &q(-3, 1));
        assert!(FOperator::new(SymBilinearForm::zero(&Rationals), wedge2(&e(0), &e(1)))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn deform_endpoints() {
        let r = build_r(&type1(q(3, 1))).unwrap();
        let r0 = deform(&r, &q(0, 1)).unwrap();
        assert_eq!(r0.r(), &flip(&Rationals));
        assert_eq!(r0.q(), &q(1, 1));
        assert_eq!(deform(&r, &q(1, 1)).unwrap(), r);
        // λ(q-1) = -1
        assert_eq!(deform(&r, &q(-1, 2)).unwrap_err(), Error::SingularDeformation);
        let half = deform(&r, &q(1, 2)).unwrap();
        assert_eq!(half.q(), &q(2, 1));
        assert_eq!(extract_f(&half).unwrap(), extract_f(&r).unwrap().scale(&q(1, 2)));
    }

    #[test]
    fn conjugate_by_identity_and_diagonal() {
        let d = type1(q(3, 1));
        let r = build_r(&d).unwrap();
        let id = Matrix::identity(&Rationals, 3);
        assert_eq!(conjugate(&r, &id).unwrap(), r);
        let sing = Matrix::<Rational>::zeros(&Rationals, 3, 3);
        assert_eq!(conjugate(&r, &sing).unwrap_err(), Error::SingularBasis);
        let p = Matrix::from_rows(
            &Rationals,
            vec![
                vec![q(2, 1), q(0, 1), q(1, 1)],
                vec![q(0, 1), q(1, 1), q(0, 1)],
                vec![q(1, 1), q(-1, 1), q(1, 1)],
            ],
        )
        .unwrap();
        let via_data = build_r(&d.conjugate(&p).unwrap()).unwrap();
        assert_eq!(conjugate(&r, &p).unwrap(), via_data);
    }

    #[test]
    fn works_over_prime_field() {
        let f7 = PrimeField::new(7).unwrap();
        let g = SymBilinearForm::from_i64(&f7, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        let a = Vector::basis(&f7, 0);
        let b = Vector::basis(&f7, 1);
        let d = HeckeData::new(f7.from_i64(3), a, b, g).unwrap();
        let r = build_r(&d).unwrap();
        assert_eq!(extract_q(r.r()).unwrap(), f7.from_i64(3));
        let f = extract_f(&r).unwrap();
        assert_eq!(build_y_from_f(r.q(), &f).unwrap(), build_y(&d).unwrap());
    }

    fn arb_data() -> impl Strategy<Value = HeckeData<Rational>> {
        (
            prop::array::uniform3(-3i64..=3),
            prop::array::uniform3(-3i64..=3),
            prop::array::uniform6(-3i64..=3),
            any::<bool>(),
        )
            .prop_filter_map("need independent a, b and a square -Δ", |(a, b, g, pick)| {
                let a = Vector::<Rational>::from_i64(&Rationals, a);
                let b = Vector::from_i64(&Rationals, b);
                if wedge2(&a, &b).is_zero() {
                    return None;
                }
                let gm = [[g[0], g[1], g[2]], [g[1], g[3], g[4]], [g[2], g[4], g[5]]];
                let g = SymBilinearForm::from_i64(&Rationals, gm).unwrap();
                let roots = super::super::solve_q(&a, &b, &g);
                let qv = roots.get(usize::from(pick) % roots.len().max(1))?.clone();
                HeckeData::new(qv, a, b, g).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn roundtrip_through_f(d in arb_data()) {
            let r = build_r(&d).unwrap();
            prop_assert_eq!(extract_q(r.r()).unwrap(), d.q().clone());
            let f = extract_f(&r).unwrap();
            prop_assert_eq!(build_y_from_f(d.q(), &f).unwrap(), r.y().clone());
            prop_assert_eq!(f.delta(), d.delta());
            let t = d.t_operator();
            prop_assert_eq!(t.c2(), d.delta());
            prop_assert!(t.trace().is_zero());
        }

        #[test]
        fn conjugation_is_equivariant(d in arb_data(), p in prop::array::uniform9(-2i64..=2)) {
            let pm = Matrix::from_fn(&Rationals, 3, 3, |r, c| q(p[3 * r + c], 1));
            prop_assume!(!pm.determinant().is_zero());
            let r = build_r(&d).unwrap();
            let rc = conjugate(&r, &pm).unwrap();
            prop_assert_eq!(&rc, &build_r(&d.conjugate(&pm).unwrap()).unwrap());
            let f = extract_f(&r).unwrap();
            prop_assert_eq!(extract_f(&rc).unwrap(), f.transport(&pm).unwrap());
        }

        #[test]
        fn deformation_scales_f(d in arb_data(), n in -4i64..=4, m in 1i64..=3) {
            let lambda = q(n, m);
            let r = build_r(&d).unwrap();
            match deform(&r, &lambda) {
                Err(err) => prop_assert_eq!(err, Error::SingularDeformation),
                Ok(rl) => {
                    prop_assert_eq!(extract_q(rl.r()).ok(), Some(rl.q().clone()));
                    let fl = extract_f(&rl).unwrap();
                    prop_assert_eq!(fl, extract_f(&r).unwrap().scale(&lambda));
                }
            }
        }
    }
}

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

use super::matrix::Matrix;

/// Position of `e_i ⊗ e_j` in the 9 coordinates of V⊗V (0-based indices).
pub const fn idx2(i: usize, j: usize) -> usize {
    3 * i + j
}

/// Position of `e_i ⊗ e_j ⊗ e_k` in the 27 coordinates of V⊗V⊗V.
pub const fn idx3(i: usize, j: usize, k: usize) -> usize {
    9 * i + 3 * j + k
}

macro_rules! coordinate_space {
    ($(#[$meta:meta])* $name:ident, $dim:expr, $label:expr) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name<S: Scalar> {
            coords: Vec<S>,
        }

        impl<S: Scalar> $name<S> {
            pub const DIM: usize = $dim;

            pub fn zero(field: &S::Field) -> Self {
                $name { coords: vec![field.zero(); $dim] }
            }

            pub fn basis(field: &S::Field, i: usize) -> Self {
                let mut v = Self::zero(field);
                v.coords[i] = field.one();
                v
            }

            pub fn from_coords(coords: Vec<S>) -> Result<Self> {
                if coords.len() != $dim {
                    return Err(Error::DimensionMismatch(format!(
                        "{} needs {} coordinates, got {}",
                        stringify!($name),
                        $dim,
                        coords.len()
                    )));
                }
                if let Some(first) = coords.first() {
                    let f = first.field();
                    if let Some(x) = coords.iter().find(|x| x.field() != f) {
                        return Err(Error::FieldMismatch(
                            f.spec().to_string(),
                            x.field().spec().to_string(),
                        ));
                    }
                }
                Ok($name { coords })
            }

            pub fn coords(&self) -> &[S] {
                &self.coords
            }

            pub fn into_coords(self) -> Vec<S> {
                self.coords
            }

            pub fn field(&self) -> S::Field {
                self.coords[0].field()
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Scalar::is_zero)
            }

            pub fn scale(&self, k: &S) -> Self {
                $name {
                    coords: self.coords.iter().map(|x| x.clone() * k.clone()).collect(),
                }
            }
        }

        impl<S: Scalar> std::ops::Index<usize> for $name<S> {
            type Output = S;
            fn index(&self, i: usize) -> &S {
                &self.coords[i]
            }
        }

        impl<S: Scalar> Add for $name<S> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                $name {
                    coords: self.coords.into_iter().zip(rhs.coords).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl<S: Scalar> Sub for $name<S> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                $name {
                    coords: self.coords.into_iter().zip(rhs.coords).map(|(a, b)| a - b).collect(),
                }
            }
        }

        impl<S: Scalar> Neg for $name<S> {
            type Output = Self;
            fn neg(self) -> Self {
                $name { coords: self.coords.into_iter().map(|a| -a).collect() }
            }
        }

        impl<S: Scalar> fmt::Debug for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", render_terms(&self.coords, $label))
            }
        }

        impl<S: Scalar> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", render_terms(&self.coords, $label))
            }
        }
    };
}

coordinate_space!(
    /// Vector of V in the fixed basis e1, e2, e3.
    Vector, 3, label1
);
coordinate_space!(
    /// Element of V⊗V, coordinates ordered by [`idx2`].
    Tensor2, 9, label2
);
coordinate_space!(
    /// Element of V⊗V⊗V, coordinates ordered by [`idx3`].
    Tensor3, 27, label3
);
coordinate_space!(
    /// Element of V* in the dual basis.
    LinearForm, 3, label_dual
);

fn label1(i: usize) -> String {
    format!("e{}", i + 1)
}

fn label2(i: usize) -> String {
    format!("e{}e{}", i / 3 + 1, i % 3 + 1)
}

fn label3(i: usize) -> String {
    format!("e{}e{}e{}", i / 9 + 1, (i / 3) % 3 + 1, i % 3 + 1)
}

fn label_dual(i: usize) -> String {
    format!("e{}*", i + 1)
}

/// Human-readable sum of basis terms, e.g. `2*e1e2 + -1*e2e1`.
pub fn render_terms<S: Scalar>(coords: &[S], label: fn(usize) -> String) -> String {
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.is_one() {
                label(i)
            } else {
                format!("{c}*{}", label(i))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl<S: Scalar> Vector<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vector::from_coords(vec![x, y, z]).expect("three coordinates from one field")
    }

    pub fn from_i64(field: &S::Field, c: [i64; 3]) -> Self {
        Vector {
            coords: c.iter().map(|&x| field.from_i64(x)).collect(),
        }
    }

    pub fn as_column(&self) -> Vec<S> {
        self.coords.clone()
    }
}

impl<S: Scalar> LinearForm<S> {
    pub fn eval(&self, v: &Vector<S>) -> S {
        dot(&self.coords, &v.coords)
    }

    /// The pullback `v ↦ self(T v)`.
    pub fn compose(&self, t: &Matrix<S>) -> LinearForm<S> {
        let field = self.field();
        LinearForm {
            coords: (0..3)
                .map(|j| {
                    (0..3).fold(field.zero(), |acc, i| {
                        acc + self.coords[i].clone() * t[(i, j)].clone()
                    })
                })
                .collect(),
        }
    }
}

impl<S: Scalar> Tensor2<S> {
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.coords[idx2(i, j)]
    }

    /// The tensor as the 3×3 matrix A with `A[i][j]` = coefficient of e_i e_j.
    pub fn as_matrix(&self) -> Matrix<S> {
        Matrix::from_fn(&self.field(), 3, 3, |i, j| self.get(i, j).clone())
    }
}

impl<S: Scalar> Tensor3<S> {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.coords[idx3(i, j, k)]
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let field = a[0].field();
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn tensor2<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> Tensor2<S> {
    let mut coords = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            coords.push(x[i].clone() * y[j].clone());
        }
    }
    Tensor2 { coords }
}

pub fn tensor3<S: Scalar>(x: &Vector<S>, y: &Vector<S>, z: &Vector<S>) -> Tensor3<S> {
    let xy = tensor2(x, y);
    vt_product_left(&xy, z)
}

/// `t ⊗ x` for t in V⊗V.
pub fn vt_product_left<S: Scalar>(t: &Tensor2<S>, x: &Vector<S>) -> Tensor3<S> {
    let mut coords = Vec::with_capacity(27);
    for ij in 0..9 {
        for k in 0..3 {
            coords.push(t[ij].clone() * x[k].clone());
        }
    }
    Tensor3 { coords }
}

/// `x ⊗ t` for t in V⊗V.
pub fn vt_product_right<S: Scalar>(x: &Vector<S>, t: &Tensor2<S>) -> Tensor3<S> {
    let mut coords = Vec::with_capacity(27);
    for i in 0..3 {
        for jk in 0..9 {
            coords.push(x[i].clone() * t[jk].clone());
        }
    }
    Tensor3 { coords }
}

/// `x ∧ y = xy - yx`.
pub fn wedge2<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> Tensor2<S> {
    tensor2(x, y) - tensor2(y, x)
}

/// `x ∧ y ∧ z = xyz + yzx + zxy - zyx - xzy - yxz`.
pub fn wedge3<S: Scalar>(x: &Vector<S>, y: &Vector<S>, z: &Vector<S>) -> Tensor3<S> {
    tensor3(x, y, z) + tensor3(y, z, x) + tensor3(z, x, y)
        - tensor3(z, y, x)
        - tensor3(x, z, y)
        - tensor3(y, x, z)
}

/// `x ∧ t` for alternating t, extending `x ∧ (y ∧ z) = x ∧ y ∧ z` bilinearly.
pub fn wedge_vt<S: Scalar>(x: &Vector<S>, t: &Tensor2<S>) -> Result<Tensor3<S>> {
    if !is_alt2(t) {
        return Err(Error::NotAlternating);
    }
    // x⊗t + t⊗x - (x inserted between the two factors of t)
    let mut out = vt_product_right(x, t) + vt_product_left(t, x);
    for j in 0..3 {
        for k in 0..3 {
            let c = t.get(j, k);
            if c.is_zero() {
                continue;
            }
            for i in 0..3 {
                let pos = idx3(j, i, k);
                out.coords[pos] = out.coords[pos].clone() - c.clone() * x[i].clone();
            }
        }
    }
    Ok(out)
}

/// `t ∧ x`, which equals `x ∧ t` in the exterior algebra.
pub fn wedge_tv<S: Scalar>(t: &Tensor2<S>, x: &Vector<S>) -> Result<Tensor3<S>> {
    wedge_vt(x, t)
}

/// The alternating trilinear form, normalized by ω(e1, e2, e3) = 1.
pub fn omega<S: Scalar>(x: &Vector<S>, y: &Vector<S>, z: &Vector<S>) -> S {
    let c = cross(x, y);
    dot(&c.coords, &z.coords)
}

/// Cross product; `ω(x, y, v) = cross(x, y) · v`.
pub fn cross<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
    let m = |a: usize, b: usize| x[a].clone() * y[b].clone() - x[b].clone() * y[a].clone();
    Vector {
        coords: vec![m(1, 2), m(2, 0), m(0, 1)],
    }
}

/// The linear bijection Alt3 → k with `ω̃(x∧y∧z) = ω(x, y, z)`.
pub fn omega_tilde<S: Scalar>(t: &Tensor3<S>) -> Result<S> {
    if !is_alt3(t) {
        return Err(Error::NotInAlt3);
    }
    Ok(t.get(0, 1, 2).clone())
}

/// `ω_xy = ω(x, y, ·)`.
pub fn omega_form<S: Scalar>(x: &Vector<S>, y: &Vector<S>) -> LinearForm<S> {
    LinearForm {
        coords: cross(x, y).coords,
    }
}

/// Coordinates of an alternating tensor against the pairing `(v, t) ↦ ω̃(v∧t)`:
/// the vector c with `ω̃(e_k ∧ t) = c_k`.
pub fn bivector_dual<S: Scalar>(t: &Tensor2<S>) -> Result<Vector<S>> {
    if !is_alt2(t) {
        return Err(Error::NotAlternating);
    }
    Ok(Vector {
        coords: vec![t.get(1, 2).clone(), t.get(2, 0).clone(), t.get(0, 1).clone()],
    })
}

/// Inverse of [`bivector_dual`].
pub fn bivector_from_dual<S: Scalar>(c: &Vector<S>) -> Tensor2<S> {
    let f = c.field();
    let mut t = Tensor2::zero(&f);
    let mut put = |i: usize, j: usize, v: &S| {
        t.coords[idx2(i, j)] = v.clone();
        t.coords[idx2(j, i)] = -v.clone();
    };
    put(1, 2, &c[0]);
    put(2, 0, &c[1]);
    put(0, 1, &c[2]);
    t
}

/// The 3×3 Gram matrix of `(x, t) ↦ ω̃(x ∧ t)` against `basis` of Alt2.
pub fn pairing_matrix<S: Scalar>(basis: &[Tensor2<S>]) -> Result<Matrix<S>> {
    let field = basis[0].field();
    let mut rows = Vec::with_capacity(3);
    for i in 0..3 {
        let e = Vector::basis(&field, i);
        let mut row = Vec::with_capacity(basis.len());
        for t in basis {
            row.push(omega_tilde(&wedge_vt(&e, t)?)?);
        }
        rows.push(row);
    }
    Matrix::from_rows(&field, rows)
}

/// Factor a nonzero bivector as `a ∧ b`.
///
/// With c the dual vector of t (so that t ↔ a × b), `a` is the first basis vector
/// orthogonal to c, or `(c2, -c1, 0)` when there is none; `b` is the solution of
/// `a × b = c` with free coordinates set to zero.
pub fn decompose_bivector<S: Scalar>(t: &Tensor2<S>) -> Result<(Vector<S>, Vector<S>)> {
    let c = bivector_dual(t)?;
    if c.is_zero() {
        return Err(Error::ZeroBivector);
    }
    let field = c.field();
    let a = match (0..3).find(|&i| c[i].is_zero()) {
        Some(i) => Vector::basis(&field, i),
        None => Vector::new(c[1].clone(), -c[0].clone(), field.zero()),
    };
    let z = field.zero();
    let cross_matrix = Matrix::from_rows(
        &field,
        vec![
            vec![z.clone(), -a[2].clone(), a[1].clone()],
            vec![a[2].clone(), z.clone(), -a[0].clone()],
            vec![-a[1].clone(), a[0].clone(), z],
        ],
    )?;
    let b = cross_matrix
        .solve(c.coords())
        .expect("c is orthogonal to a, so it lies in the image of a×");
    let b = Vector { coords: b };
    debug_assert_eq!(&wedge2(&a, &b), t);
    Ok((a, b))
}

pub fn is_alt2<S: Scalar>(t: &Tensor2<S>) -> bool {
    (0..3).all(|i| {
        t.get(i, i).is_zero() && (0..i).all(|j| *t.get(i, j) == -t.get(j, i).clone())
    })
}

/// w ∈ V ⊗ Alt2: antisymmetric in the last two slots.
pub fn in_v_alt2<S: Scalar>(w: &Tensor3<S>) -> bool {
    (0..3).all(|i| {
        (0..3).all(|j| {
            w.get(i, j, j).is_zero() && (0..j).all(|k| *w.get(i, j, k) == -w.get(i, k, j).clone())
        })
    })
}

/// w ∈ Alt2 ⊗ V: antisymmetric in the first two slots.
pub fn in_alt2_v<S: Scalar>(w: &Tensor3<S>) -> bool {
    (0..3).all(|k| {
        (0..3).all(|i| {
            w.get(i, i, k).is_zero() && (0..i).all(|j| *w.get(i, j, k) == -w.get(j, i, k).clone())
        })
    })
}

/// Alt3 = (V ⊗ Alt2) ∩ (Alt2 ⊗ V).
pub fn is_alt3<S: Scalar>(w: &Tensor3<S>) -> bool {
    in_v_alt2(w) && in_alt2_v(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    Alt2,
    Alt3,
    VAlt2,
    Alt2V,
}

/// Tensor of order 2 or 3, for membership queries.
pub enum AnyTensor<'a, S: Scalar> {
    Order2(&'a Tensor2<S>),
    Order3(&'a Tensor3<S>),
}

pub fn subspace_query<S: Scalar>(w: AnyTensor<'_, S>, space: Subspace) -> bool {
    match (w, space) {
        (AnyTensor::Order2(t), Subspace::Alt2) => is_alt2(t),
        (AnyTensor::Order3(t), Subspace::Alt3) => is_alt3(t),
        (AnyTensor::Order3(t), Subspace::VAlt2) => in_v_alt2(t),
        (AnyTensor::Order3(t), Subspace::Alt2V) => in_alt2_v(t),
        _ => false,
    }
}

/// Basis `e1∧e2, e1∧e3, e2∧e3` of Alt2.
pub fn alt2_basis<S: Scalar>(field: &S::Field) -> Vec<Tensor2<S>> {
    let e = |i| Vector::basis(field, i);
    vec![wedge2(&e(0), &e(1)), wedge2(&e(0), &e(2)), wedge2(&e(1), &e(2))]
}

/// σ(xyz) = yzx.
pub fn sigma_cyclic<S: Scalar>(w: &Tensor3<S>) -> Tensor3<S> {
    let f = w.field();
    let mut out = Tensor3::zero(&f);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out.coords[idx3(j, k, i)] = w.get(i, j, k).clone();
            }
        }
    }
    out
}

pub fn apply2<S: Scalar>(op: &Matrix<S>, t: &Tensor2<S>) -> Tensor2<S> {
    Tensor2 {
        coords: op.apply(&t.coords).expect("9x9 operator"),
    }
}

pub fn apply3<S: Scalar>(op: &Matrix<S>, t: &Tensor3<S>) -> Tensor3<S> {
    Tensor3 {
        coords: op.apply(&t.coords).expect("27x27 operator"),
    }
}

pub fn apply_vector<S: Scalar>(op: &Matrix<S>, v: &Vector<S>) -> Vector<S> {
    Vector {
        coords: op.apply(&v.coords).expect("3x3 operator"),
    }
}

/// Image of `e_i ⊗ e_j` under a 9×9 operator.
pub fn column2<S: Scalar>(op: &Matrix<S>, i: usize, j: usize) -> Tensor2<S> {
    Tensor2 {
        coords: op.column(idx2(i, j)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Y ⊗ Id`
    Left,
    /// `Id ⊗ Y`
    Right,
}

/// Kronecker lift of an operator on V⊗V to V⊗V⊗V.
pub fn lift<S: Scalar>(op: &Matrix<S>, side: Side) -> Matrix<S> {
    let id = Matrix::identity(op.field(), 3);
    match side {
        Side::Left => op.kron(&id),
        Side::Right => id.kron(op),
    }
}

/// The flip `xy ↦ yx`.
pub fn flip<S: Scalar>(field: &S::Field) -> Matrix<S> {
    Matrix::from_fn(field, 9, 9, |r, c| {
        if r == idx2(c % 3, c / 3) {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Operator `t ↦ (P⊗P) t` on V⊗V.
pub fn square_action<S: Scalar>(p: &Matrix<S>) -> Matrix<S> {
    p.kron(p)
}

//! Exact checks of the identities a Hecke symmetry and its skewsymmetrizer must
//! satisfy, and a seeded fuzz harness driving them.

mod fuzz;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exactnum::{Field, Scalar};
use crate::heckecore::TOperator;
use crate::multilinear::{
    alt2_basis, apply2, apply3, idx2, is_alt2, is_alt3, lift, omega, sigma_cyclic,
    square_action, tensor2, vt_product_left, vt_product_right, wedge2, wedge_vt, Matrix, Side,
    Tensor2, Tensor3, Vector,
};

pub use fuzz::{fuzz, random_basis, sample_data, FuzzFailure, FuzzOptions, FuzzReport, Strategy};

/// First failure of a check: where, and the two sides that disagree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(location: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub elapsed_ms: f64,
}

impl CheckReport {
    pub fn from_witness(name: &str, witness: Option<Witness>, elapsed_ms: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
            elapsed_ms,
        }
    }

    /// Conjunction of several reports under one name; keeps the first witness.
    pub fn combine(name: &str, parts: &[CheckReport]) -> Self {
        let witness = parts.iter().find_map(|r| {
            r.witness.as_ref().map(|w| Witness {
                location: format!("{}: {}", r.name, w.location),
                ..w.clone()
            })
        });
        let elapsed = parts.iter().map(|r| r.elapsed_ms).sum();
        Self::from_witness(name, witness, elapsed)
    }
}

pub(crate) fn timed(name: &str, body: impl FnOnce() -> Option<Witness>) -> CheckReport {
    let start = Instant::now();
    let witness = body();
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    CheckReport::from_witness(name, witness, (ms * 1000.0).round() / 1000.0)
}

fn label2(i: usize, j: usize) -> String {
    format!("e{}e{}", i + 1, j + 1)
}

fn label3(c: usize) -> String {
    format!("e{}e{}e{}", c / 9 + 1, c / 3 % 3 + 1, c % 3 + 1)
}

fn column3<S: Scalar>(m: &Matrix<S>, c: usize) -> Tensor3<S> {
    Tensor3::from_coords(m.column(c)).expect("27 coordinates")
}

/// `(R⊗Id)(Id⊗R)(R⊗Id) = (Id⊗R)(R⊗Id)(Id⊗R)` on V⊗V⊗V.
pub fn check_braid<S: Scalar>(r: &Matrix<S>) -> CheckReport {
    timed("braid", || {
        let r1 = lift(r, Side::Left);
        let r2 = lift(r, Side::Right);
        let lhs = &(&r1 * &r2) * &r1;
        let rhs = &(&r2 * &r1) * &r2;
        lhs.first_differing_column(&rhs)
            .map(|c| Witness::new(label3(c), column3(&lhs, c), column3(&rhs, c)))
    })
}

/// `(R - q)(R + 1) = 0`.
pub fn check_hecke<S: Scalar>(r: &Matrix<S>, q: &S) -> CheckReport {
    timed("hecke", || {
        let field = r.field().clone();
        let id = Matrix::identity(&field, 9);
        let prod = &(r - &id.scale(q)) * &(r + &id);
        let zero = Matrix::zeros(&field, 9, 9);
        prod.first_differing_column(&zero).map(|c| {
            let col = Tensor2::from_coords(prod.column(c)).expect("9 coordinates");
            Witness::new(label2(c / 3, c % 3), col, 0)
        })
    })
}

/// Image of Y is Alt2 and `Yw = (q+1)w` for w in Alt2.
pub fn check_image_and_eigen<S: Scalar>(y: &Matrix<S>, q: &S) -> CheckReport {
    timed("image_eigen", || {
        let field = y.field().clone();
        for c in 0..9 {
            let col = Tensor2::from_coords(y.column(c)).expect("9 coordinates");
            if !is_alt2(&col) {
                return Some(Witness::new(
                    format!("Y({}) not alternating", label2(c / 3, c % 3)),
                    col,
                    "element of Alt2",
                ));
            }
        }
        let rank = y.rank();
        if rank != 3 {
            return Some(Witness::new("rank Y", rank, 3));
        }
        let k = q.clone() + field.one();
        let names = ["e1∧e2", "e1∧e3", "e2∧e3"];
        for (w, name) in alt2_basis::<S>(&field).iter().zip(names) {
            let lhs = apply2(y, w);
            let rhs = w.scale(&k);
            if lhs != rhs {
                return Some(Witness::new(format!("Y({name})"), lhs, rhs));
            }
        }
        None
    })
}

/// `Y2 Y1 w - q w ∈ Alt3` for `w = e_i ⊗ (e_j ∧ e_k)`, `Y1 = Y⊗Id`, `Y2 = Id⊗Y`.
pub fn check_containment_v_alt2<S: Scalar>(y: &Matrix<S>, q: &S) -> CheckReport {
    timed("containment_v_alt2", || {
        containment(y, q, |x, t| vt_product_right(x, t), Side::Left)
    })
}

/// `Y1 Y2 w - q w ∈ Alt3` for `w = (e_j ∧ e_k) ⊗ e_i`.
pub fn check_containment_alt2_v<S: Scalar>(y: &Matrix<S>, q: &S) -> CheckReport {
    timed("containment_alt2_v", || {
        containment(y, q, |x, t| vt_product_left(t, x), Side::Right)
    })
}

fn containment<S: Scalar>(
    y: &Matrix<S>,
    q: &S,
    build: impl Fn(&Vector<S>, &Tensor2<S>) -> Tensor3<S>,
    first: Side,
) -> Option<Witness> {
    let field = y.field().clone();
    let (a, b) = match first {
        Side::Left => (lift(y, Side::Left), lift(y, Side::Right)),
        Side::Right => (lift(y, Side::Right), lift(y, Side::Left)),
    };
    let op = &b * &a;
    for i in 0..3 {
        let x = Vector::basis(&field, i);
        for j in 0..3 {
            for k in j + 1..3 {
                let t = wedge2(&Vector::basis(&field, j), &Vector::basis(&field, k));
                let w = build(&x, &t);
                let z = apply3(&op, &w) - w.scale(q);
                if !is_alt3(&z) {
                    let loc = format!("w built from e{} and e{}∧e{}", i + 1, j + 1, k + 1);
                    return Some(Witness::new(loc, z, "element of Alt3"));
                }
            }
        }
    }
    None
}

/// Both containments as one report.
pub fn check_containments<S: Scalar>(y: &Matrix<S>, q: &S) -> CheckReport {
    CheckReport::combine(
        "containments",
        &[check_containment_v_alt2(y, q), check_containment_alt2_v(y, q)],
    )
}

/// Components `Y_ij^kl` in the basis given by the columns of `p`:
/// entry `[idx2(k,l), idx2(i,j)]` of `(P⊗P)⁻¹ Y (P⊗P)`.
fn components_in_basis<S: Scalar>(y: &Matrix<S>, p: &Matrix<S>) -> Option<Matrix<S>> {
    let pp = square_action(p);
    let inv = pp.inverse().ok()?;
    Some(&(&inv * y) * &pp)
}

/// The coordinate identity `Σ_l (Y_ij^{rl} Y_lk^{rt} - Y_ik^{rl} Y_lj^{rt})` over all
/// 243 index tuples, in the basis formed by the columns of `basis`.
pub fn check_coordinates<S: Scalar>(y: &Matrix<S>, q: &S, basis: &Matrix<S>) -> CheckReport {
    timed("coordinates", || {
        let field = y.field().clone();
        let Some(c) = components_in_basis(y, basis) else {
            return Some(Witness::new("basis", "singular", "invertible"));
        };
        let comp = |i: usize, j: usize, k: usize, l: usize| c[(idx2(k, l), idx2(i, j))].clone();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for r in 0..3 {
                        for t in 0..3 {
                            let lhs = (0..3).fold(field.zero(), |acc, l| {
                                acc + comp(i, j, r, l) * comp(l, k, r, t)
                                    - comp(i, k, r, l) * comp(l, j, r, t)
                            });
                            let rhs = if i == j && j == r && k == t && t != r {
                                q.clone()
                            } else if i == k && k == r && j == t && t != r {
                                -q.clone()
                            } else {
                                field.zero()
                            };
                            if lhs != rhs {
                                let loc = format!(
                                    "(i,j,k,r,t) = ({},{},{},{},{})",
                                    i + 1,
                                    j + 1,
                                    k + 1,
                                    r + 1,
                                    t + 1
                                );
                                return Some(Witness::new(loc, lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        None
    })
}

/// `ℓ_{xy}(z)` for basis-or-general x, y and basis z, with `None` when `x ∧ Y(yz)`
/// is undefined because Y leaves Alt2.
fn ell<S: Scalar>(y_op: &Matrix<S>, x: &Vector<S>, y: &Vector<S>, z: &Vector<S>) -> Option<S> {
    let w = wedge_vt(x, &apply2(y_op, &tensor2(y, z))).ok()?;
    Some(w.get(0, 1, 2).clone())
}

/// `(ℓ_xy ∧ ℓ_xz - ℓ_xx ∧ ℓ_yz)(u, v) = q ω(x,y,z) ω(x,u,v)`.
///
/// Linear in y, z, u, v and quadratic in x, so x runs over `e_i` and `e_i + e_j`.
pub fn check_ell_wedge<S: Scalar>(y_op: &Matrix<S>, q: &S) -> CheckReport {
    timed("ell_wedge", || {
        let field = y_op.field().clone();
        let e: Vec<Vector<S>> = (0..3).map(|i| Vector::basis(&field, i)).collect();
        let mut xs: Vec<(String, Vector<S>)> =
            (0..3).map(|i| (format!("e{}", i + 1), e[i].clone())).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                xs.push((format!("e{}+e{}", i + 1, j + 1), e[i].clone() + e[j].clone()));
            }
        }
        for (xname, x) in &xs {
            // forms ℓ_{x,w} and ℓ_{w,w'} as coefficient rows over basis z
            let form = |a: &Vector<S>, b: &Vector<S>| -> Option<Vec<S>> {
                e.iter().map(|z| ell(y_op, a, b, z)).collect()
            };
            let Some(lxx) = form(x, x) else {
                return Some(Witness::new("ℓ", "Y leaves Alt2", "image in Alt2"));
            };
            for yi in 0..3 {
                for zi in 0..3 {
                    let (Some(lxy), Some(lxz), Some(lyz)) =
                        (form(x, &e[yi]), form(x, &e[zi]), form(&e[yi], &e[zi]))
                    else {
                        return Some(Witness::new("ℓ", "Y leaves Alt2", "image in Alt2"));
                    };
                    let rhs_xyz = q.clone() * omega(x, &e[yi], &e[zi]);
                    for u in 0..3 {
                        for v in 0..3 {
                            let wedge = |f: &[S], g: &[S]| {
                                f[u].clone() * g[v].clone() - f[v].clone() * g[u].clone()
                            };
                            let lhs = wedge(&lxy, &lxz) - wedge(&lxx, &lyz);
                            let rhs = rhs_xyz.clone() * omega(x, &e[u], &e[v]);
                            if lhs != rhs {
                                let loc = format!(
                                    "x={xname}, y=e{}, z=e{}, u=e{}, v=e{}",
                                    yi + 1,
                                    zi + 1,
                                    u + 1,
                                    v + 1
                                );
                                return Some(Witness::new(loc, lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        None
    })
}

/// `ℓ_xy(z) - ℓ_xz(y) = (q+1) ω(x,y,z)` on basis triples.
pub fn check_ell_skew<S: Scalar>(y_op: &Matrix<S>, q: &S) -> CheckReport {
    timed("ell_skew", || {
        let field = y_op.field().clone();
        let e: Vec<Vector<S>> = (0..3).map(|i| Vector::basis(&field, i)).collect();
        let k = q.clone() + field.one();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let (Some(a), Some(b)) =
                        (ell(y_op, &e[x], &e[y], &e[z]), ell(y_op, &e[x], &e[z], &e[y]))
                    else {
                        return Some(Witness::new("ℓ", "Y leaves Alt2", "image in Alt2"));
                    };
                    let lhs = a - b;
                    let rhs = k.clone() * omega(&e[x], &e[y], &e[z]);
                    if lhs != rhs {
                        let loc = format!("x=e{}, y=e{}, z=e{}", x + 1, y + 1, z + 1);
                        return Some(Witness::new(loc, lhs, rhs));
                    }
                }
            }
        }
        None
    })
}

pub fn check_ell_identities<S: Scalar>(y: &Matrix<S>, q: &S) -> CheckReport {
    CheckReport::combine("ell_identities", &[check_ell_wedge(y, q), check_ell_skew(y, q)])
}

/// `Y1 Y2 (t⊗x) - σ Y2 Y1 (x⊗t) = 2(q+1) Tx ∧ t` for basis x and the basis of Alt2,
/// with `σ(xyz) = yzx`.
pub fn check_cyclic_identity<S: Scalar>(y: &Matrix<S>, q: &S, t_op: &TOperator<S>) -> CheckReport {
    timed("cyclic_identity", || {
        let field = y.field().clone();
        let y1 = lift(y, Side::Left);
        let y2 = lift(y, Side::Right);
        let y1y2 = &y1 * &y2;
        let y2y1 = &y2 * &y1;
        let k = cyclic_identity_factor(q);
        let names = ["e1∧e2", "e1∧e3", "e2∧e3"];
        for i in 0..3 {
            let x = Vector::basis(&field, i);
            let tx = t_op.apply(&x);
            for (t, name) in alt2_basis::<S>(&field).iter().zip(names) {
                let lhs = apply3(&y1y2, &vt_product_left(t, &x))
                    - sigma_cyclic(&apply3(&y2y1, &vt_product_right(&x, t)));
                let rhs = wedge_vt(&tx, t).expect("alternating").scale(&k);
                if lhs != rhs {
                    return Some(Witness::new(format!("x=e{}, t={name}", i + 1), lhs, rhs));
                }
            }
        }
        None
    })
}

pub(crate) fn cyclic_identity_factor<S: Scalar>(q: &S) -> S {
    let f = q.field();
    f.from_i64(2) * (q.clone() + f.one())
}

/// The full suite for `(R, q)` with T known, in the order reported by `verify`.
pub fn full_suite<S: Scalar>(
    r: &Matrix<S>,
    q: &S,
    t_op: Option<&TOperator<S>>,
    bases: &[Matrix<S>],
) -> Vec<CheckReport> {
    let field = r.field().clone();
    let y = &Matrix::identity(&field, 9).scale(q) - r;
    let mut out = vec![
        check_braid(r),
        check_hecke(r, q),
        check_image_and_eigen(&y, q),
        check_containment_v_alt2(&y, q),
    ];
    let std = Matrix::identity(&field, 3);
    let coords: Vec<CheckReport> = std::iter::once(&std)
        .chain(bases)
        .map(|p| check_coordinates(&y, q, p))
        .collect();
    out.push(CheckReport::combine("coordinates", &coords));
    out.push(check_ell_wedge(&y, q));
    out.push(check_ell_skew(&y, q));
    if let Some(t) = t_op {
        out.push(check_cyclic_identity(&y, q, t));
    }
    out.push(check_containment_alt2_v(&y, q));
    out
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

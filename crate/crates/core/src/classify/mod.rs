//! Type labels 1–8 from the invariants (q, rank g, rank of g on the plane of a∧b),
//! the canonical representatives, and invariance under change of basis.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::heckecore::{build_r, conjugate, extract_f, FOperator, HeckeData, HeckeSymmetry, SymBilinearForm};
use crate::multilinear::{tensor2, Matrix, Tensor2, Vector};
use crate::verifier::{random_basis, timed, CheckReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Type6,
    Type7,
    Type8,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 8] = [
        TypeLabel::Type1,
        TypeLabel::Type2,
        TypeLabel::Type3,
        TypeLabel::Type4,
        TypeLabel::Type5,
        TypeLabel::Type6,
        TypeLabel::Type7,
        TypeLabel::Type8,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self> {
        Self::ALL
            .get(usize::from(n).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Parse(format!("type must be 1..8, got {n}")))
    }

    /// Types 1 and 2 carry a free parameter q ∉ {0, 1}; the others have q = 1.
    pub fn has_free_q(self) -> bool {
        matches!(self, TypeLabel::Type1 | TypeLabel::Type2)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type{}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport<S: Scalar> {
    pub label: TypeLabel,
    pub q: S,
    pub rank_g: usize,
    pub rank_restricted: Option<usize>,
    pub normalized_f: FOperator<S>,
}

pub fn classify<S: Scalar>(r: &HeckeSymmetry<S>) -> Result<ClassificationReport<S>> {
    let q = r.q().clone();
    let f = extract_f(r)?;
    let rank_g = f.g().rank();
    let restricted = f.restricted_rank();
    let label = match restricted {
        None => TypeLabel::Type8,
        Some(rr) if !q.is_one() => {
            if rr != 2 {
                return Err(Error::NotHeckeSym0(format!(
                    "q != 1 forces a nondegenerate restricted form, found rank {rr}"
                )));
            }
            match rank_g {
                3 => TypeLabel::Type1,
                2 => TypeLabel::Type2,
                _ => unreachable!("rank g is at least the restricted rank"),
            }
        }
        Some(1) => match rank_g {
            3 => TypeLabel::Type3,
            2 => TypeLabel::Type4,
            1 => TypeLabel::Type5,
            _ => unreachable!("rank g is at least the restricted rank"),
        },
        Some(0) => match rank_g {
            2 => TypeLabel::Type6,
            1 => TypeLabel::Type7,
            _ => {
                return Err(Error::NotHeckeSym0(format!(
                    "rank g = {rank_g} with g vanishing on the plane of a∧b"
                )))
            }
        },
        Some(rr) => {
            return Err(Error::NotHeckeSym0(format!(
                "q = 1 with restricted rank {rr}"
            )))
        }
    };
    Ok(ClassificationReport {
        label,
        q,
        rank_g: if restricted.is_none() { 0 } else { rank_g },
        rank_restricted: restricted,
        normalized_f: f,
    })
}

/// Canonical data: a = e1, b = e2 and the type's Gram matrix.
pub fn canonical<F: Field>(field: &F, label: TypeLabel, q: Option<F::Elem>) -> Result<HeckeData<F::Elem>> {
    let one = field.one();
    let q = match (label.has_free_q(), q) {
        (true, None) => return Err(Error::InvalidQ(format!("{label} needs q"))),
        (true, Some(q)) => {
            if q.is_zero() || q.is_one() {
                return Err(Error::InvalidQ(format!("{label} needs q ∉ {{0, 1}}, got {q}")));
            }
            q
        }
        (false, None) => one.clone(),
        (false, Some(q)) => {
            if !q.is_one() {
                return Err(Error::InvalidQ(format!("{label} has q = 1, got {q}")));
            }
            q
        }
    };
    let pattern: [[i64; 3]; 3] = match label {
        TypeLabel::Type1 => [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
        TypeLabel::Type2 | TypeLabel::Type8 => [[0; 3]; 3],
        TypeLabel::Type3 => [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        TypeLabel::Type4 => [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
        TypeLabel::Type5 => [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
        TypeLabel::Type6 => [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        TypeLabel::Type7 => [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    };
    // Types 1-2 carry g(x1, x2) = (q-1)/2
    let s = (q.clone() - one) / field.from_i64(2);
    let m = Matrix::from_fn(field, 3, 3, |i, j| {
        if label.has_free_q() && i + j == 1 {
            s.clone()
        } else {
            field.from_i64(pattern[i][j])
        }
    });
    let g = SymBilinearForm::new(m)?;
    HeckeData::new(q, Vector::basis(field, 0), Vector::basis(field, 1), g)
}

/// Expected `R(x_i x_j)` as a list of (coefficient, k, l) terms for `x_k x_l`.
type Table<S> = [[Vec<(S, usize, usize)>; 3]; 3];

fn type1_table<S: Scalar>(q: &S) -> Table<S> {
    let f = q.field();
    let one = f.one();
    let qm1 = q.clone() - one.clone();
    [
        [
            vec![(q.clone(), 0, 0)],
            vec![(qm1.clone(), 0, 1), (one.clone(), 1, 0)],
            vec![(qm1.clone(), 0, 2), (one.clone(), 2, 0)],
        ],
        [
            vec![(q.clone(), 0, 1)],
            vec![(q.clone(), 1, 1)],
            vec![(q.clone(), 2, 1)],
        ],
        [
            vec![(q.clone(), 0, 2)],
            vec![(qm1, 2, 1), (one.clone(), 1, 2)],
            vec![(q.clone(), 2, 2), (-one.clone(), 0, 1), (one, 1, 0)],
        ],
    ]
}

fn type3_table<S: Scalar>(f: &S::Field) -> Table<S> {
    let one = f.one();
    let m1 = -one.clone();
    let two = f.from_i64(2);
    [
        [
            vec![(one.clone(), 0, 0), (one.clone(), 0, 1), (m1.clone(), 1, 0)],
            vec![(one.clone(), 1, 0)],
            vec![(one.clone(), 2, 0), (m1.clone(), 1, 2), (one.clone(), 2, 1)],
        ],
        [
            vec![(one.clone(), 0, 1)],
            vec![(one.clone(), 1, 1)],
            vec![(one.clone(), 2, 1)],
        ],
        [
            vec![(one.clone(), 0, 2), (m1.clone(), 1, 2), (one.clone(), 2, 1)],
            vec![(one.clone(), 1, 2)],
            vec![(one, 2, 2), (two.clone(), 0, 2), (-two, 2, 0)],
        ],
    ]
}

/// The displayed R values for Types 1–6: the Type 1 table at `q`, the Type 3 table
/// at q = 1, and the entries in which the other types differ from those.
fn expected_tables<S: Scalar>(q: &S) -> Vec<(TypeLabel, Table<S>)> {
    let f = q.field();
    let one = f.one();
    let t1 = type1_table(q);
    let mut t2 = t1.clone();
    t2[2][2] = vec![(q.clone(), 2, 2)];
    let t3 = type3_table::<S>(&f);
    let mut t4 = t3.clone();
    t4[2][2] = vec![(one.clone(), 2, 2), (-one.clone(), 0, 1), (one.clone(), 1, 0)];
    let mut t5 = t3.clone();
    t5[2][2] = vec![(one.clone(), 2, 2)];
    let mut t6 = t3.clone();
    t6[0][0] = vec![(one.clone(), 0, 0)];
    t6[0][2] = vec![(one.clone(), 2, 0)];
    t6[2][0] = vec![(one, 0, 2)];
    vec![
        (TypeLabel::Type1, t1),
        (TypeLabel::Type2, t2),
        (TypeLabel::Type3, t3),
        (TypeLabel::Type4, t4),
        (TypeLabel::Type5, t5),
        (TypeLabel::Type6, t6),
    ]
}

fn table_value<S: Scalar>(f: &S::Field, terms: &[(S, usize, usize)]) -> Tensor2<S> {
    terms.iter().fold(Tensor2::zero(f), |acc, (c, k, l)| {
        acc + tensor2(&Vector::basis(f, *k), &Vector::basis(f, *l)).scale(c)
    })
}

/// Compare R on all nine monomials, for canonical Types 1–2 at `q` and Types 3–6,
/// against the hard-coded value tables.
pub fn type1_table_check<S: Scalar>(q: &S) -> CheckReport {
    timed("table", || {
        let f = q.field();
        for (label, table) in expected_tables(q) {
            let qv = label.has_free_q().then(|| q.clone());
            let r = match canonical(&f, label, qv).and_then(|d| build_r(&d)) {
                Ok(r) => r,
                Err(e) => return Some(Witness::new(format!("{label}"), e, "canonical data")),
            };
            for i in 0..3 {
                for j in 0..3 {
                    let want = table_value(&f, &table[i][j]);
                    let got = r.value(i, j);
                    if got != want {
                        let loc = format!("{label}, R(x{}x{})", i + 1, j + 1);
                        return Some(Witness::new(loc, got, want));
                    }
                }
            }
        }
        None
    })
}

/// q values used for Types 1–2 fixtures.
pub fn fixture_qs<F: Field>(field: &F) -> Vec<F::Elem> {
    let mut out = Vec::new();
    for (n, d) in [(2, 1), (3, 1), (-1, 1), (1, 2)] {
        let q = field.ratio(n, d).expect("nonzero denominator");
        if !q.is_zero() && !q.is_one() && !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

/// Every canonical type (Types 1–2 at each fixture q) as (label, data).
pub fn canonical_fixtures<F: Field>(field: &F) -> Vec<(TypeLabel, HeckeData<F::Elem>)> {
    let mut out = Vec::new();
    for label in TypeLabel::ALL {
        if label.has_free_q() {
            for q in fixture_qs(field) {
                out.push((label, canonical(field, label, Some(q)).expect("admissible q")));
            }
        } else {
            out.push((label, canonical(field, label, None).expect("q = 1")));
        }
    }
    out
}

/// `classify(conjugate(R, P))` keeps label and q for random invertible P, over every
/// canonical fixture.
pub fn invariance_suite<F: Field>(field: &F, trials: usize, seed: u64) -> CheckReport {
    timed("invariance", || {
        for (n, (label, d)) in canonical_fixtures(field).into_iter().enumerate() {
            let r = build_r(&d).expect("canonical data is valid");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            for trial in 0..trials {
                let p = random_basis(field, &mut rng);
                let got = conjugate(&r, &p).and_then(|rc| classify(&rc));
                let loc = format!("{label} q={}, trial {trial}", d.q());
                match got {
                    Err(e) => return Some(Witness::new(loc, e, label)),
                    Ok(rep) if rep.label != label || &rep.q != d.q() => {
                        return Some(Witness::new(
                            loc,
                            format!("{} q={}", rep.label, rep.q),
                            format!("{label} q={}", d.q()),
                        ))
                    }
                    Ok(_) => {}
                }
            }
        }
        None
    })
}

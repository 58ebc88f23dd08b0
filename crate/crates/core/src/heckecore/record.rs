use serde::{Deserialize, Serialize};

use super::{HeckeData, HeckeSymmetry, SymBilinearForm};
use crate::error::{Error, Result};
use crate::exactnum::{Field, FieldSpec, Scalar};
use crate::multilinear::{Matrix, Vector};

/// `{ field, q, a, b, g }` with every scalar as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeDataRecord {
    pub field: String,
    pub q: String,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub g: Vec<Vec<String>>,
}

/// A 9×9 operator; accepted as nested rows or as 81 entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixRecord {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeSymmetryRecord {
    pub field: String,
    pub q: String,
    #[serde(rename = "R")]
    pub r: MatrixRecord,
}

pub fn strings<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn matrix_rows<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

fn parse_all<F: Field>(field: &F, v: &[String]) -> Result<Vec<F::Elem>> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn parse_matrix<F: Field>(field: &F, rows: &[Vec<String>]) -> Result<Matrix<F::Elem>> {
    let parsed = rows
        .iter()
        .map(|r| parse_all(field, r))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, parsed)
}

/// Reject a record whose `field` tag differs from the field it is read into.
pub fn check_field_tag<F: Field>(field: &F, tag: &str) -> Result<()> {
    let spec: FieldSpec = tag.parse()?;
    if spec != field.spec() {
        return Err(Error::FieldMismatch(spec.to_string(), field.spec().to_string()));
    }
    Ok(())
}

impl MatrixRecord {
    pub fn from_matrix<S: Scalar>(m: &Matrix<S>) -> Self {
        MatrixRecord::Rows(matrix_rows(m))
    }

    pub fn parse<F: Field>(&self, field: &F, n: usize) -> Result<Matrix<F::Elem>> {
        let m = match self {
            MatrixRecord::Rows(rows) => parse_matrix(field, rows)?,
            MatrixRecord::Flat(entries) => {
                if entries.len() != n * n {
                    return Err(Error::DimensionMismatch(format!(
                        "expected {} entries, got {}",
                        n * n,
                        entries.len()
                    )));
                }
                let v = parse_all(field, entries)?;
                Matrix::from_fn(field, n, n, |r, c| v[n * r + c].clone())
            }
        };
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
        }
        Ok(m)
    }
}

impl<S: Scalar> HeckeData<S> {
    pub fn to_record(&self) -> HeckeDataRecord {
        HeckeDataRecord {
            field: self.field().spec().to_string(),
            q: self.q().to_string(),
            a: strings(self.a().coords()),
            b: strings(self.b().coords()),
            g: matrix_rows(self.g().matrix()),
        }
    }

    /// Parse and validate a record against `field`.
    pub fn from_record(field: &S::Field, rec: &HeckeDataRecord) -> Result<Self> {
        check_field_tag(field, &rec.field)?;
        let q = field.parse(&rec.q)?;
        let a = Vector::from_coords(parse_all(field, &rec.a)?)?;
        let b = Vector::from_coords(parse_all(field, &rec.b)?)?;
        let g = SymBilinearForm::new(parse_matrix(field, &rec.g)?)?;
        HeckeData::new(q, a, b, g)
    }
}

impl<S: Scalar> HeckeSymmetry<S> {
    pub fn to_record(&self) -> HeckeSymmetryRecord {
        HeckeSymmetryRecord {
            field: self.field().spec().to_string(),
            q: self.q().to_string(),
            r: MatrixRecord::from_matrix(self.r()),
        }
    }

    /// Reads R and checks the stated q against the one forced by the Hecke relation.
    pub fn from_record(field: &S::Field, rec: &HeckeSymmetryRecord) -> Result<Self> {
        check_field_tag(field, &rec.field)?;
        let r = rec.r.parse(field, 9)?;
        let stated = field.parse(&rec.q)?;
        let sym = HeckeSymmetry::from_operator(r)?;
        if sym.q() != &stated {
            return Err(Error::InvalidQ(format!(
                "stated q = {stated}, Hecke relation gives {}",
                sym.q()
            )));
        }
        Ok(sym)
    }
}

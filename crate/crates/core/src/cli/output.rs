use serde::{Deserialize, Serialize};

use crate::classify::{ClassificationReport, TypeLabel};
use crate::cybe::{carrier, classical_r, fingerprint, is_frobenius, Carrier, Fingerprint, GlTensorRecord, DEFAULT_ATTEMPTS};
use crate::error::Result;
use crate::exactnum::Scalar;
use crate::heckecore::{build_r, matrix_rows, FOperator, HeckeData, HeckeDataRecord, HeckeSymmetryRecord};
use crate::verifier::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FOperatorRecord {
    pub g: Vec<Vec<String>>,
    /// The bivector as an antisymmetric 3×3 coefficient array.
    pub t: Vec<Vec<String>>,
}

impl FOperatorRecord {
    pub fn new<S: Scalar>(f: &FOperator<S>) -> Self {
        FOperatorRecord {
            g: matrix_rows(f.g().matrix()),
            t: matrix_rows(&f.t().as_matrix()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    #[serde(rename = "type")]
    pub label: TypeLabel,
    pub q: String,
    pub rank_g: usize,
    pub rank_restricted: Option<usize>,
    #[serde(rename = "normalized_F")]
    pub normalized_f: FOperatorRecord,
}

impl ClassificationRecord {
    pub fn from_report<S: Scalar>(rep: &ClassificationReport<S>) -> Self {
        ClassificationRecord {
            label: rep.label,
            q: rep.q.to_string(),
            rank_g: rep.rank_g,
            rank_restricted: rep.rank_restricted,
            normalized_f: FOperatorRecord::new(&rep.normalized_f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRecord {
    pub status: String,
    /// Values of the functional on the echelon basis.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierRecord {
    pub span: Vec<Vec<Vec<String>>>,
    pub basis: Vec<Vec<Vec<String>>>,
    pub dim: usize,
    pub closure_enlarged: bool,
    pub fingerprint: Fingerprint,
    pub frobenius: FrobeniusRecord,
}

impl CarrierRecord {
    pub fn new<S: Scalar>(c: &Carrier<S>, attempts: usize) -> Self {
        let status = is_frobenius(&c.algebra, attempts);
        CarrierRecord {
            span: c.span.to_record(),
            basis: c.algebra.to_record(),
            dim: c.algebra.dim(),
            closure_enlarged: c.closure_enlarged(),
            fingerprint: fingerprint(&c.algebra),
            frobenius: FrobeniusRecord {
                status: status.name().into(),
                witness: status.witness_strings(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrixRecord {
    pub field: String,
    pub q: String,
    pub r: GlTensorRecord,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformRecord {
    pub lambda: String,
    pub symmetry: HeckeSymmetryRecord,
    pub reports: Vec<CheckReport>,
}

/// One row of `table`; free of timings so the output is reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "type")]
    pub label: TypeLabel,
    pub data: HeckeDataRecord,
    #[serde(rename = "R")]
    pub r_operator: Vec<Vec<String>>,
    pub r: GlTensorRecord,
    pub carrier: CarrierRecord,
}

impl TableEntry {
    pub fn new<S: Scalar>(label: TypeLabel, d: &HeckeData<S>) -> Result<Self> {
        let sym = build_r(d)?;
        let r = classical_r(&sym);
        Ok(TableEntry {
            label,
            data: d.to_record(),
            r_operator: matrix_rows(sym.r()),
            r: r.to_record(),
            carrier: CarrierRecord::new(&carrier(&r), DEFAULT_ATTEMPTS),
        })
    }
}

//! Command-line front end. [`run`] parses arguments and returns the exit code
//! together with the single JSON document meant for standard output.

mod output;

use std::path::Path;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{canonical, canonical_fixtures, classify, TypeLabel};
use crate::cybe::{carrier, check_cybe, check_symmetrized, classical_r, DEFAULT_ATTEMPTS};
use crate::error::Error;
use crate::exactnum::{Field, FieldSpec, PrimeField, Rationals, Scalar};
use crate::heckecore::{
    build_r, check_field_tag, deform, extract_f, extract_q, HeckeData, HeckeDataRecord,
    HeckeSymmetry, MatrixRecord,
};
use crate::multilinear::Matrix;
use crate::verifier::{all_passed, full_suite, fuzz, random_basis, CheckReport, FuzzOptions, Strategy, Witness};

pub use output::{
    CarrierRecord, ClassificationRecord, DeformRecord, FOperatorRecord, FrobeniusRecord,
    RMatrixRecord, TableEntry,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hecke3", version, about = "Exact tools for Hecke symmetries on a 3-dimensional space")]
pub struct Cli {
    /// Scalar field: Q or Fp:<p>. Falls back to the input's own tag, then Q.
    #[arg(long, global = true, env = "HECKE3_FIELD")]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// HeckeData JSON (path or inline)
    #[arg(long, conflicts_with = "matrix")]
    data: Option<String>,
    /// R as JSON: {"q", "R"} or a bare 9x9 array; HeckeData is accepted too
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build R from a canonical type or from HeckeData
    Construct {
        #[arg(long = "type", conflicts_with = "data")]
        type_number: Option<u8>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        data: Option<String>,
    },
    /// Run every identity check
    Verify {
        #[command(flatten)]
        input: Input,
        /// Random bases used by the coordinate check, besides the standard one
        #[arg(long, default_value_t = 10)]
        bases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Determine the type of R
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// The classical r-matrix with its Yang-Baxter and symmetrization checks
    Rmatrix {
        #[command(flatten)]
        input: Input,
    },
    /// Carrier subalgebra of r, Frobenius search and fingerprint
    Carrier {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: usize,
    },
    /// Move along the deformation family R_lambda = (1 - lambda) R0 + lambda R
    Deform {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        bases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized verification over sampled data
    Fuzz {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "A")]
        strategy: Strategy,
        /// Break the constraint on purpose and expect detection
        #[arg(long)]
        adversarial: bool,
        #[arg(long, default_value_t = 1)]
        bases: usize,
    },
    /// Canonical data of all eight types with R, r and carrier
    Table,
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Invalid { kind: &'static str, message: String },
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid {
            kind: error_kind(&e),
            message: e.to_string(),
        }
    }
}

fn invalid(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Invalid {
        kind,
        message: message.into(),
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::FieldMismatch(..) => "FieldMismatch",
        Error::CharacteristicTwo => "CharacteristicTwo",
        Error::NotPrime(_) => "NotPrime",
        Error::Parse(_) => "Parse",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::NotAlternating => "NotAlternating",
        Error::NotInAlt3 => "NotInAlt3",
        Error::ZeroBivector => "ZeroBivector",
        Error::SingularMatrix => "SingularMatrix",
        Error::SingularBasis => "SingularBasis",
        Error::NotSymmetric => "NotSymmetric",
        Error::InvalidConstraint { .. } => "InvalidConstraint",
        Error::ZeroQ => "ZeroQ",
        Error::ImageNotInAlt2 => "ImageNotInAlt2",
        Error::NotHeckeSym0(_) => "NotHeckeSym0",
        Error::NoHeckeParameter => "NoHeckeParameter",
        Error::AmbiguousHeckeParameter => "AmbiguousHeckeParameter",
        Error::SingularDeformation => "SingularDeformation",
        Error::InvalidQ(_) => "InvalidQ",
    }
}

/// A successful command: its document and whether every check in it passed.
struct Done {
    doc: Value,
    passed: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("records serialize")
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        t.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| invalid("Io", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| invalid("Parse", format!("bad JSON: {e}")))
}

/// An operator read from input, before any verification.
enum Source<S: Scalar> {
    Data(HeckeData<S>),
    Raw { r: Matrix<S>, stated_q: Option<S> },
}

fn parse_source<F: Field>(field: &F, v: &Value) -> Result<Source<F::Elem>, Failure> {
    let bad = |e: serde_json::Error| invalid("Parse", e.to_string());
    if let Some(obj) = v.as_object() {
        if let Some(tag) = obj.get("field").and_then(Value::as_str) {
            check_field_tag(field, tag)?;
        }
        if obj.contains_key("R") {
            let m: MatrixRecord = serde_json::from_value(obj["R"].clone()).map_err(bad)?;
            let stated_q = match obj.get("q") {
                Some(Value::String(s)) => Some(field.parse(s)?),
                Some(other) => return Err(invalid("Parse", format!("q must be a string, got {other}"))),
                None => None,
            };
            return Ok(Source::Raw {
                r: m.parse(field, 9)?,
                stated_q,
            });
        }
        let mut rec = v.clone();
        if rec.get("field").is_none() {
            rec["field"] = Value::String(field.spec().to_string());
        }
        let rec: HeckeDataRecord = serde_json::from_value(rec).map_err(bad)?;
        return Ok(Source::Data(HeckeData::from_record(field, &rec)?));
    }
    let m: MatrixRecord = serde_json::from_value(v.clone()).map_err(bad)?;
    Ok(Source::Raw {
        r: m.parse(field, 9)?,
        stated_q: None,
    })
}

fn failed_report(name: &str, e: &Error) -> CheckReport {
    CheckReport::from_witness(name, Some(Witness::new(error_kind(e), e, "")), 0.0)
}

/// Every check that applies to a raw operator, ending with a membership report
/// from extracting (q, F).
pub fn verify_operator<S: Scalar>(r: &Matrix<S>, bases: &[Matrix<S>]) -> Vec<CheckReport> {
    let q = match extract_q(r) {
        Ok(q) => q,
        Err(e) => return vec![crate::verifier::check_braid(r), failed_report("hecke", &e)],
    };
    let sym = HeckeSymmetry::from_parts(r.clone(), q.clone());
    let f = extract_f(&sym);
    let t = f.as_ref().ok().map(|f| f.t_operator());
    let mut reps = full_suite(r, &q, t.as_ref(), bases);
    reps.push(match &f {
        Ok(_) => CheckReport::from_witness("membership", None, 0.0),
        Err(e) => failed_report("membership", e),
    });
    reps
}

fn failure_summary(reports: &[CheckReport]) -> String {
    let names: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| match &r.witness {
            Some(w) if r.name == "membership" || r.name == "hecke" && w.rhs.is_empty() => {
                format!("{} ({})", r.name, w.lhs)
            }
            _ => r.name.clone(),
        })
        .collect();
    format!("input operator failed: {}", names.join(", "))
}

/// Turn input into a verified symmetry; raw operators must pass every check.
fn load_symmetry<F: Field>(field: &F, v: &Value) -> Result<HeckeSymmetry<F::Elem>, Failure> {
    match parse_source(field, v)? {
        Source::Data(d) => Ok(build_r(&d)?),
        Source::Raw { r, stated_q } => {
            let reports = verify_operator(&r, &[]);
            if !all_passed(&reports) {
                return Err(Failure::Check(json!({
                    "error": { "kind": "NotHeckeSym0", "message": failure_summary(&reports) },
                    "reports": reports,
                })));
            }
            let q = extract_q(&r)?;
            if let Some(s) = stated_q {
                if s != q {
                    return Err(Error::InvalidQ(format!("stated q = {s}, Hecke relation gives {q}")).into());
                }
            }
            Ok(HeckeSymmetry::from_parts(r, q))
        }
    }
}

fn bases_for<F: Field>(field: &F, n: usize, seed: u64) -> Vec<Matrix<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_basis(field, &mut rng)).collect()
}

fn suite_for<S: Scalar>(sym: &HeckeSymmetry<S>, bases: &[Matrix<S>]) -> Vec<CheckReport> {
    let t = extract_f(sym).ok().map(|f| f.t_operator());
    full_suite(sym.r(), sym.q(), t.as_ref(), bases)
}

fn dispatch<F: Field>(field: &F, cmd: &Command, input: Option<&Value>) -> Result<Done, Failure> {
    let input = || input.ok_or_else(|| invalid("Usage", "input required"));
    match cmd {
        Command::Construct {
            type_number, q, ..
        } => {
            let sym = match type_number {
                Some(n) => {
                    let label = TypeLabel::from_number(*n).map_err(Failure::from)?;
                    let q = q.as_deref().map(|s| field.parse(s)).transpose()?;
                    build_r(&canonical(field, label, q)?)?
                }
                None => load_symmetry(field, input()?)?,
            };
            Ok(Done {
                doc: to_value(&sym.to_record()),
                passed: true,
            })
        }
        Command::Verify { bases, seed, .. } => {
            let bases = bases_for(field, *bases, *seed);
            let reports = match parse_source(field, input()?)? {
                Source::Data(d) => suite_for(&build_r(&d)?, &bases),
                Source::Raw { r, stated_q } => {
                    let reports = verify_operator(&r, &bases);
                    if let (Some(s), Ok(q)) = (stated_q, extract_q(&r)) {
                        if s != q {
                            return Err(Error::InvalidQ(format!("stated q = {s}, Hecke relation gives {q}")).into());
                        }
                    }
                    reports
                }
            };
            Ok(Done {
                passed: all_passed(&reports),
                doc: to_value(&reports),
            })
        }
        Command::Classify { .. } => {
            let sym = load_symmetry(field, input()?)?;
            match classify(&sym) {
                Ok(rep) => Ok(Done {
                    doc: to_value(&ClassificationRecord::from_report(&rep)),
                    passed: true,
                }),
                Err(e) => Err(Failure::Check(json!({
                    "error": { "kind": error_kind(&e), "message": e.to_string() }
                }))),
            }
        }
        Command::Rmatrix { .. } => {
            let sym = load_symmetry(field, input()?)?;
            let r = classical_r(&sym);
            let reports = vec![check_cybe(&r), check_symmetrized(&r, sym.q())];
            Ok(Done {
                passed: all_passed(&reports),
                doc: to_value(&RMatrixRecord {
                    field: field.spec().to_string(),
                    q: sym.q().to_string(),
                    r: r.to_record(),
                    reports,
                }),
            })
        }
        Command::Carrier { attempts, .. } => {
            let sym = load_symmetry(field, input()?)?;
            let c = carrier(&classical_r(&sym));
            Ok(Done {
                doc: to_value(&CarrierRecord::new(&c, *attempts)),
                passed: true,
            })
        }
        Command::Deform {
            lambda, bases, seed, ..
        } => {
            let sym = load_symmetry(field, input()?)?;
            let l = field.parse(lambda)?;
            let d = deform(&sym, &l)?;
            let reports = suite_for(&d, &bases_for(field, *bases, *seed));
            Ok(Done {
                passed: all_passed(&reports),
                doc: to_value(&DeformRecord {
                    lambda: l.to_string(),
                    symmetry: d.to_record(),
                    reports,
                }),
            })
        }
        Command::Fuzz {
            trials,
            seed,
            strategy,
            adversarial,
            bases,
        } => {
            let mut opts = FuzzOptions::new(*trials, *seed, *strategy);
            opts.adversarial = *adversarial;
            opts.random_bases = *bases;
            let rep = fuzz(field, &opts);
            Ok(Done {
                passed: rep.summary.passed,
                doc: to_value(&rep),
            })
        }
        Command::Table => {
            let entries = canonical_fixtures(field)
                .iter()
                .map(|(label, d)| TableEntry::new(*label, d))
                .collect::<crate::error::Result<Vec<_>>>()?;
            Ok(Done {
                doc: to_value(&entries),
                passed: true,
            })
        }
    }
}

fn input_arg(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Construct { data, .. } => data.as_deref(),
        Command::Verify { input, .. }
        | Command::Classify { input }
        | Command::Rmatrix { input }
        | Command::Carrier { input, .. }
        | Command::Deform { input, .. } => input.data.as_deref().or(input.matrix.as_deref()),
        Command::Fuzz { .. } | Command::Table => None,
    }
}

fn requires_input(cmd: &Command) -> bool {
    match cmd {
        Command::Construct { type_number, .. } => type_number.is_none(),
        Command::Fuzz { .. } | Command::Table => false,
        _ => true,
    }
}

fn execute(cli: &Cli) -> Result<Done, Failure> {
    let input = match input_arg(&cli.command) {
        Some(s) => Some(read_json(s)?),
        None if requires_input(&cli.command) => {
            return Err(invalid("Usage", "one of --data or --matrix is required"))
        }
        None => None,
    };
    let tag = input
        .as_ref()
        .and_then(|v| v.get("field"))
        .and_then(Value::as_str)
        .map(str::to_string);
    let spec: FieldSpec = cli
        .field
        .clone()
        .or(tag)
        .unwrap_or_else(|| "Q".into())
        .parse()?;
    match spec {
        FieldSpec::Rationals => dispatch(&Rationals, &cli.command, input.as_ref()),
        FieldSpec::PrimeField(p) => dispatch(&PrimeField::new(p)?, &cli.command, input.as_ref()),
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json");
    s.push('\n');
    s
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let stdout = if code == EXIT_OK {
                e.to_string()
            } else {
                render(&json!({ "error": { "kind": "Usage", "message": e.kind().to_string() } }))
            };
            let stderr = if code == EXIT_OK { String::new() } else { e.render().to_string() };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok(done) => Outcome {
            code: if done.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            stderr: if done.passed {
                String::new()
            } else {
                "check failed\n".into()
            },
            stdout: render(&done.doc),
        },
        Err(Failure::Invalid { kind, message }) => Outcome {
            code: EXIT_INVALID,
            stdout: render(&json!({ "error": { "kind": kind, "message": message } })),
            stderr: format!("error: {message}\n"),
        },
        Err(Failure::Check(doc)) => Outcome {
            code: EXIT_CHECK_FAILED,
            stderr: "check failed\n".into(),
            stdout: render(&doc),
        },
    }
}

#[cfg(test)]
mod tests;

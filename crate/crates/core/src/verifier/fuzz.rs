use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{all_passed, check_braid, check_hecke, full_suite, timed, CheckReport, Witness};
use crate::classify::{canonical, TypeLabel};
use crate::exactnum::{Field, Scalar};
use crate::heckecore::{
    build_r, build_y_from_f, extract_f, extract_q, formula_y, HeckeData, HeckeDataRecord,
    SymBilinearForm,
};
use crate::multilinear::{wedge2, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Independent a, b and g with g(a, a) = 0, so that -Δ = g(a, b)² is a square.
    A,
    /// A canonical type conjugated by a random invertible matrix.
    B,
}

impl std::str::FromStr for Strategy {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "A" | "a" => Ok(Strategy::A),
            "B" | "b" => Ok(Strategy::B),
            _ => Err(crate::error::Error::Parse(format!("unknown strategy '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzOptions {
    pub trials: usize,
    pub seed: u64,
    pub strategy: Strategy,
    /// Break the discriminant constraint after sampling; every trial should then fail.
    pub adversarial: bool,
    /// Extra random bases for the coordinate check.
    pub random_bases: usize,
}

impl FuzzOptions {
    pub fn new(trials: usize, seed: u64, strategy: Strategy) -> Self {
        FuzzOptions {
            trials,
            seed,
            strategy,
            adversarial: false,
            random_bases: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub data: HeckeDataRecord,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub field: String,
    pub strategy: Strategy,
    pub adversarial: bool,
    pub seed: u64,
    pub trials: usize,
    pub failed_trials: usize,
    pub summary: CheckReport,
    pub failures: Vec<FuzzFailure>,
}

/// Random invertible matrix with entries in [-3, 3].
pub fn random_basis<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> Matrix<F::Elem> {
    loop {
        let p = Matrix::from_fn(field, 3, 3, |_, _| field.from_i64(rng.random_range(-3..=3)));
        if !p.determinant().is_zero() {
            return p;
        }
    }
}

fn random_vector<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> Vector<F::Elem> {
    Vector::new(
        field.sample_small(rng),
        field.sample_small(rng),
        field.sample_small(rng),
    )
}

fn sample_a<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> HeckeData<F::Elem> {
    loop {
        let a = random_vector(field, rng);
        let b = random_vector(field, rng);
        if wedge2(&a, &b).is_zero() {
            continue;
        }
        let mut g = Matrix::zeros(field, 3, 3);
        for i in 0..3 {
            for j in i..3 {
                let v = field.sample_small(rng);
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        // solve g(a, a) = 0 for a diagonal entry at a nonzero coordinate of a
        let k = (0..3).find(|&k| !a[k].is_zero()).expect("a is nonzero");
        g[(k, k)] = field.zero();
        let rest = (0..3).fold(field.zero(), |acc, i| {
            (0..3).fold(acc, |acc, j| acc + a[i].clone() * a[j].clone() * g[(i, j)].clone())
        });
        g[(k, k)] = -(rest / a[k].square());
        let g = SymBilinearForm::new(g).expect("symmetric by construction");
        let s = g.eval(&a, &b) * field.from_i64(2);
        let (plus, minus) = (field.one() + s.clone(), field.one() - s);
        let q = match (rng.random::<bool>(), plus.is_zero(), minus.is_zero()) {
            (true, false, _) | (_, false, true) => plus,
            _ => minus,
        };
        return HeckeData::new(q, a, b, g).expect("strategy A satisfies the constraint");
    }
}

fn sample_b<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> HeckeData<F::Elem> {
    loop {
        let label = TypeLabel::ALL[rng.random_range(0..8)];
        let q = label.has_free_q().then(|| field.sample_small(rng));
        let Ok(d) = canonical(field, label, q) else {
            continue;
        };
        let p = random_basis(field, rng);
        return d.conjugate(&p).expect("invertible");
    }
}

pub fn sample_data<F: Field, R: Rng + ?Sized>(
    field: &F,
    rng: &mut R,
    strategy: Strategy,
) -> HeckeData<F::Elem> {
    match strategy {
        Strategy::A => sample_a(field, rng),
        Strategy::B => sample_b(field, rng),
    }
}

/// Replace Gram entries by random values until the constraint fails.
fn perturb<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R, d: &HeckeData<F::Elem>) -> HeckeData<F::Elem> {
    let mut out = d.clone();
    while out.satisfies_constraint() {
        let i = rng.random_range(0..3);
        let j = rng.random_range(0..3);
        let delta = field.sample_small(rng);
        let v = out.g().entry(i, j).clone() + delta;
        out = out.with_g_entry(i, j, v);
    }
    out
}

fn roundtrip_report<S: Scalar>(d: &HeckeData<S>) -> CheckReport {
    timed("roundtrip", || {
        let r = match build_r(d) {
            Ok(r) => r,
            Err(e) => return Some(Witness::new("build_R", e, "valid data")),
        };
        match extract_q(r.r()) {
            Ok(q) if &q == d.q() => {}
            Ok(q) => return Some(Witness::new("extract_q", q, d.q())),
            Err(e) => return Some(Witness::new("extract_q", e, d.q())),
        }
        let f = match extract_f(&r) {
            Ok(f) => f,
            Err(e) => return Some(Witness::new("extract_F", e, "F")),
        };
        match build_y_from_f(d.q(), &f) {
            Ok(y) if &y == r.y() => None,
            Ok(y) => {
                let c = y.first_differing_column(r.y()).expect("differs");
                Some(Witness::new(
                    format!("Y(e{}e{}) rebuilt from (q, F)", c / 3 + 1, c % 3 + 1),
                    crate::multilinear::column2(&y, c / 3, c % 3),
                    crate::multilinear::column2(r.y(), c / 3, c % 3),
                ))
            }
            Err(e) => Some(Witness::new("build_Y_from_F", e, "Y")),
        }
    })
}

fn run_trial<F: Field>(field: &F, opts: &FuzzOptions, trial: usize) -> (HeckeData<F::Elem>, Vec<CheckReport>) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(trial as u64);
    let d = sample_data(field, &mut rng, opts.strategy);
    if opts.adversarial {
        let bad = perturb(field, &mut rng, &d);
        let y = formula_y(&bad);
        let r = &Matrix::identity(field, 9).scale(bad.q()) - &y;
        return (bad.clone(), vec![check_braid(&r), check_hecke(&r, bad.q())]);
    }
    let bases: Vec<_> = (0..opts.random_bases).map(|_| random_basis(field, &mut rng)).collect();
    let r = build_r(&d).expect("sampled data is valid");
    let mut reports = full_suite(r.r(), d.q(), Some(&d.t_operator()), &bases);
    reports.push(roundtrip_report(&d));
    (d, reports)
}

/// Seeded fuzzing; trial `i` draws from stream `i` of a generator seeded with
/// `seed`, so results do not depend on scheduling.
pub fn fuzz<F: Field>(field: &F, opts: &FuzzOptions) -> FuzzReport {
    let start = std::time::Instant::now();
    let results: Vec<_> = (0..opts.trials)
        .into_par_iter()
        .map(|t| (t, run_trial(field, opts, t)))
        .collect();
    let mut failures = Vec::new();
    let mut undetected = None;
    for (trial, (d, reports)) in results {
        if all_passed(&reports) {
            if opts.adversarial && undetected.is_none() {
                undetected = Some(trial);
            }
            continue;
        }
        failures.push(FuzzFailure {
            trial,
            data: d.to_record(),
            reports: reports.into_iter().filter(|r| !r.passed).collect(),
        });
    }
    let witness = if opts.adversarial {
        undetected.map(|t| Witness::new(format!("trial {t}"), "all checks passed", "a failing check"))
    } else {
        failures.first().map(|f| {
            let w = f.reports[0].witness.clone().expect("failed report has a witness");
            Witness::new(format!("trial {}: {}: {}", f.trial, f.reports[0].name, w.location), w.lhs, w.rhs)
        })
    };
    let elapsed = (start.elapsed().as_secs_f64() * 1e6).round() / 1000.0;
    let name = if opts.adversarial { "fuzz_adversarial" } else { "fuzz" };
    FuzzReport {
        field: field.spec().to_string(),
        strategy: opts.strategy,
        adversarial: opts.adversarial,
        seed: opts.seed,
        trials: opts.trials,
        failed_trials: failures.len(),
        summary: CheckReport::from_witness(name, witness, elapsed),
        failures,
    }
}

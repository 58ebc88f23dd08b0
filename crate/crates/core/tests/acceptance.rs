//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hecke3::classify::{canonical, canonical_fixtures, classify, fixture_qs, invariance_suite, type1_table_check, TypeLabel};
use hecke3::cybe::{
    carrier, check_cybe, check_symmetrized, classical_r, expected_carrier, expected_r, fingerprint, is_frobenius,
    FrobeniusStatus, DEFAULT_ATTEMPTS,
};
use hecke3::heckecore::{build_r, deform, extract_f, HeckeSymmetry};
use hecke3::multilinear::Matrix;
use hecke3::verifier::{full_suite, fuzz, random_basis, CheckReport, FuzzOptions, Strategy};
use hecke3::{Error, Field, FieldSpec, PrimeField, Rationals, Scalar};

type Outcome = Result<String, String>;

fn first_failure(reports: &[CheckReport]) -> Option<String> {
    reports
        .iter()
        .find(|r| !r.passed)
        .map(|r| format!("{}: {:?}", r.name, r.witness))
}

fn suite_with_t<S: Scalar>(sym: &HeckeSymmetry<S>, bases: &[Matrix<S>]) -> Result<Vec<CheckReport>, String> {
    let f = extract_f(sym).map_err(|e| e.to_string())?;
    Ok(full_suite(sym.r(), sym.q(), Some(&f.t_operator()), bases))
}

fn sufficiency<F: Field>(field: &F) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checks = 0;
    let fixtures = canonical_fixtures(field);
    for (label, d) in &fixtures {
        let bases: Vec<_> = (0..10).map(|_| random_basis(field, &mut rng)).collect();
        let sym = build_r(d).map_err(|e| format!("{label}: {e}"))?;
        let reps = suite_with_t(&sym, &bases).map_err(|e| format!("{label}: {e}"))?;
        if reps.len() != 9 {
            return Err(format!("{label}: expected 9 reports, got {}", reps.len()));
        }
        if let Some(w) = first_failure(&reps) {
            return Err(format!("{label} q={}: {w}", d.q()));
        }
        checks += reps.len();
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        return Err(format!("took {secs:.2} s, budget is 5 s"));
    }
    Ok(format!("{} fixtures, {checks} checks, {secs:.2} s", fixtures.len()))
}

fn table_fidelity() -> Outcome {
    let mut n = 0;
    for q in fixture_qs(&Rationals) {
        let rep = type1_table_check(&q);
        if !rep.passed {
            return Err(format!("q={q}: {:?}", rep.witness));
        }
        n += 1;
    }
    Ok(format!("Types 1-6 tables at {n} values of q"))
}

fn classification() -> Outcome {
    for (label, d) in canonical_fixtures(&Rationals) {
        let got = classify(&build_r(&d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if got.label != label {
            return Err(format!("{label} classified as {}", got.label));
        }
    }
    let trials = 20;
    let rep = invariance_suite(&Rationals, trials, 7);
    if !rep.passed {
        return Err(format!("{:?}", rep.witness));
    }
    let n = canonical_fixtures(&Rationals).len() * trials;
    Ok(format!("8 labels, {n} conjugated classifications"))
}

fn roundtrip<F: Field>(field: &F) -> Outcome {
    let mut total = 0;
    for strategy in [Strategy::A, Strategy::B] {
        let mut opts = FuzzOptions::new(100, 42, strategy);
        opts.random_bases = 0;
        let rep = fuzz(field, &opts);
        if !rep.summary.passed {
            return Err(format!("strategy {strategy:?}: {:?}", rep.summary.witness));
        }
        total += rep.trials;
    }
    Ok(format!("{total} trials over {}", field.spec()))
}

fn deformation() -> Outcome {
    let q = Rationals.from_i64(3);
    let sym = build_r(&canonical(&Rationals, TypeLabel::Type1, Some(q)).unwrap()).unwrap();
    for (n, d) in [(1, 2), (2, 1), (-1, 1), (1, 3)] {
        let l = Rationals.ratio(n, d).unwrap();
        let rl = deform(&sym, &l).map_err(|e| e.to_string())?;
        let want = Rationals.one() + Rationals.from_i64(2) * l.clone();
        if rl.q() != &want {
            return Err(format!("lambda={l}: q = {}, expected {want}", rl.q()));
        }
        let reps = suite_with_t(&rl, &[])?;
        if let Some(w) = first_failure(&reps) {
            return Err(format!("lambda={l}: {w}"));
        }
    }
    match deform(&sym, &Rationals.ratio(-1, 2).unwrap()) {
        Err(Error::SingularDeformation) => Ok("4 values pass, lambda = -1/2 rejected".into()),
        other => Err(format!("lambda = -1/2 gave {other:?}")),
    }
}

fn classical<F: Field>(field: &F) -> Outcome {
    let mut n = 0;
    for (label, d) in canonical_fixtures(field) {
        let r = classical_r(&build_r(&d).map_err(|e| e.to_string())?);
        let reps = [check_cybe(&r), check_symmetrized(&r, d.q())];
        if let Some(w) = first_failure(&reps) {
            return Err(format!("{label} q={}: {w}", d.q()));
        }
        if &r.reassemble() != r.matrix() {
            return Err(format!("{label}: decomposition does not reassemble"));
        }
        if r.matrix() != expected_r(field, label, d.q()).matrix() {
            return Err(format!("{label} q={}: r differs from the closed form", d.q()));
        }
        n += 1;
    }
    Ok(format!("{n} fixtures over {}", field.spec()))
}

fn carriers() -> Outcome {
    let mut prints = HashSet::new();
    for label in &TypeLabel::ALL[2..] {
        let d = canonical(&Rationals, *label, None).unwrap();
        let c = carrier(&classical_r(&build_r(&d).unwrap()));
        if Some(&c.algebra) != expected_carrier(&Rationals, *label).as_ref() {
            return Err(format!("{label}: carrier differs from the listed span"));
        }
        if c.closure_enlarged() {
            return Err(format!("{label}: closure enlarged the span"));
        }
        let status = is_frobenius(&c.algebra, DEFAULT_ATTEMPTS);
        let ok = match label {
            TypeLabel::Type7 => status == FrobeniusStatus::NotFrobenius,
            TypeLabel::Type8 => status == FrobeniusStatus::NotApplicable,
            _ => matches!(status, FrobeniusStatus::Frobenius { .. }),
        };
        if !ok {
            return Err(format!("{label}: Frobenius status {}", status.name()));
        }
        prints.insert(fingerprint(&c.algebra));
    }
    if prints.len() != 6 {
        return Err(format!("only {} distinct fingerprints", prints.len()));
    }
    Ok("6 carriers match, 4 Frobenius witnesses, Type 7 abelian, 6 distinct fingerprints".into())
}

fn necessity() -> Outcome {
    let mut opts = FuzzOptions::new(50, 42, Strategy::A);
    opts.adversarial = true;
    let rep = fuzz(&Rationals, &opts);
    if !rep.summary.passed || rep.failures.len() != 50 {
        return Err(format!(
            "{} of 50 detected: {:?}",
            rep.failures.len(),
            rep.summary.witness
        ));
    }
    let witnessed = rep
        .failures
        .iter()
        .all(|f| f.reports.iter().any(|r| r.witness.is_some() && (r.name == "braid" || r.name == "hecke")));
    if !witnessed {
        return Err("a detected sample lacks a braid or hecke witness".into());
    }
    Ok("50 of 50 violations detected with witnesses".into())
}

fn field_generality() -> Outcome {
    let mut parts = Vec::new();
    for p in [7, 11] {
        let f = PrimeField::new(p).map_err(|e| e.to_string())?;
        sufficiency(&f).map_err(|e| format!("F{p} sufficiency: {e}"))?;
        roundtrip(&f).map_err(|e| format!("F{p} roundtrip: {e}"))?;
        classical(&f).map_err(|e| format!("F{p} classical: {e}"))?;
        parts.push(format!("F{p}: 1, 4, 6"));
    }
    let f3 = PrimeField::new(3).map_err(|e| e.to_string())?;
    sufficiency(&f3).map_err(|e| format!("F3 sufficiency: {e}"))?;
    roundtrip(&f3).map_err(|e| format!("F3 roundtrip: {e}"))?;
    parts.push("F3: 1, 4".into());
    if PrimeField::new(2).is_ok() || "Fp:2".parse::<FieldSpec>().is_ok() {
        return Err("characteristic 2 was accepted".into());
    }
    parts.push("char 2 rejected".into());
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 sufficiency", Box::new(|| sufficiency(&Rationals))),
        ("2 table fidelity", Box::new(table_fidelity)),
        ("3 classification", Box::new(classification)),
        ("4 bijection roundtrip", Box::new(|| {
            let q = roundtrip(&Rationals)?;
            let f = roundtrip(&PrimeField::new(11).unwrap())?;
            Ok(format!("{q}; {f}"))
        })),
        ("5 deformation", Box::new(deformation)),
        ("6 classical r-matrices", Box::new(|| classical(&Rationals))),
        ("7 carriers", Box::new(carriers)),
        ("8 necessity", Box::new(necessity)),
        ("9 field generality", Box::new(field_generality)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}

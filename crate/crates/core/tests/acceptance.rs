//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that each criterion is reported in order. A
//! criterion that fails is a build failure unless it is listed in [`KNOWN_FAILURES`]
//! together with the table defect that causes it; a listed criterion that starts
//! passing is also reported, so the list cannot go stale silently.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superalg_core::algebra::{char_sequence, check_leibniz, check_lie, nilindex, SamplingOptions};
use superalg_core::derivations::{derivation_space, max_nil_independent};
use superalg_core::exactmath::{nilpotent_jordan_type, JordanType};
use superalg_core::families::{
    build_family, parameter_names, validate, ErrataMode, FamilyId, FamilySpec,
};
use superalg_core::verify::{
    compare_derivations, plan, run, single_slot_samples, verify_corollary, verify_solvable_family,
    Status,
};
use superalg_core::{Parity, RatMatrix, Rational, SuperAlgebra};

use common::Dense;

/// Criteria that fail because of defects in the published tables, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (1, "M needs theta = alpha_n; H, SH3, SH4 and H5 need gamma = 0; M1 is not Lie"),
    (4, "M's template leaves b_n free although [y_(n-1), y1] = e_n forces b_n = a_(n-1)"),
    (6, "H with gamma != 0 and M with theta != alpha_n are not Leibniz, so those patterns cannot be confirmed"),
    (7, "SH3, SH4 and H5 with gamma = 1 violate the Leibniz superidentity"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn spec_sizes(id: FamilyId, sizes: impl Iterator<Item = usize>) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for s in sizes {
        let base = match id {
            FamilyId::SH1 | FamilyId::SG1 => (4..=s)
                .map(|t| FamilySpec::new(id, s).with("t", t as i64))
                .collect(),
            _ => vec![FamilySpec::new(id, s)],
        };
        out.extend(base.into_iter().filter(|sp| validate(sp).is_ok()));
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for id in FamilyId::ALL {
        for spec in spec_sizes(id, 3..=8) {
            let a = build_family(&spec).expect("valid spec builds");
            checked += 1;
            if let Some(r) = check_leibniz(&a).first() {
                failures.push(format!("{} leibniz {r}", spec.label()));
            }
            if id.sized_by_m() {
                if let Some(r) = check_lie(&a).first() {
                    failures.push(format!("{} lie {r}", spec.label()));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let failing: BTreeSet<String> = failures
        .iter()
        .map(|f| f.split('[').next().unwrap().to_string())
        .collect();
    outcome(
        failures.is_empty() && secs < 60.0,
        format!(
            "{checked} instances in {secs:.1}s, {} with residuals (families: {})",
            failures.len(),
            failing.into_iter().collect::<Vec<_>>().join(" ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut cases: Vec<(FamilySpec, usize)> = [3, 5, 7]
        .into_iter()
        .map(|m| (FamilySpec::new(FamilyId::N2M, m), m + 2))
        .collect();
    for n in 3..=7 {
        let samples: [(FamilyId, &[(&str, i64)], usize); 8] = [
            (FamilyId::L, &[], 2 * n - 1),
            (FamilyId::L, &[("theta", 1)], 2 * n - 1),
            (FamilyId::G, &[], 2 * n - 1),
            (FamilyId::G, &[("gamma", 1)], 2 * n - 1),
            (FamilyId::M, &[], 2 * n),
            (FamilyId::M, &[("tau", 1)], 2 * n),
            (FamilyId::H, &[], 2 * n),
            (FamilyId::H, &[("delta", 1)], 2 * n),
        ];
        for (id, params, expected) in samples {
            let mut s = FamilySpec::new(id, n);
            for (k, v) in params {
                s = s.with(k, *v);
            }
            cases.push((s.zeros(), expected));
        }
    }
    for (spec, expected) in cases {
        let a = build_family(&spec).unwrap();
        let lib = nilindex(&a).unwrap();
        let oracle = Dense::of(&a).lower_central_dims();
        let oracle_index = (*oracle.last().unwrap() == 0).then_some(oracle.len());
        count += 1;
        if lib != Some(expected) || oracle_index != Some(expected) {
            bad.push(format!(
                "{}: {lib:?}/{oracle_index:?} vs {expected}",
                spec.label()
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{count} instances, mismatches: {bad:?}"),
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for n in 4..=7 {
        for (id, odd) in [(FamilyId::L, n - 1), (FamilyId::M, n)] {
            let a = build_family(&FamilySpec::new(id, n).zeros()).unwrap();
            for seed in [0, 1, 2] {
                let opts = SamplingOptions {
                    seed,
                    ..SamplingOptions::default()
                };
                let c = char_sequence(&a, &opts).unwrap();
                if c.even != [n - 1, 1] || c.odd != [odd] {
                    bad.push(format!("{id} n={n} seed={seed}: {c}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("L, M at n = 4..7, seeds 0..2; mismatches: {bad:?}"),
    )
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for id in [FamilyId::L, FamilyId::M, FamilyId::H, FamilyId::G] {
        let (mut pass, mut fail, mut unsup) = (0, 0, 0);
        let mut first_fail = None;
        for n in 4..=6 {
            for sample in single_slot_samples(id, n) {
                let c = compare_derivations(id, n, &sample);
                match c.status {
                    Status::Pass => pass += 1,
                    Status::Fail => {
                        fail += 1;
                        first_fail.get_or_insert(format!("n={n} {}: {}", c.name, c.detail));
                    }
                    Status::Unsupported => unsup += 1,
                }
            }
            // the required minimum: zeros plus two single-slot samples that compare
            let compared = single_slot_samples(id, n)
                .iter()
                .filter(|s| compare_derivations(id, n, s).status != Status::Unsupported)
                .count();
            ok &= compared >= 3;
        }
        ok &= fail == 0;
        lines.push(format!(
            "{id}: {pass} equal, {fail} differ, {unsup} outside domain{}",
            first_fail.map(|f| format!(" [{f}]")).unwrap_or_default()
        ));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mni = |spec: FamilySpec| -> usize {
        let a = build_family(&spec.zeros()).unwrap();
        max_nil_independent(&derivation_space(&a, Parity::Even).unwrap())
            .unwrap()
            .max_count
    };
    for n in 4..=6 {
        let mut cases = vec![
            (FamilySpec::new(FamilyId::H, n), 2),
            (FamilySpec::new(FamilyId::G, n), 2),
            (FamilySpec::new(FamilyId::L, n), 1),
            (FamilySpec::new(FamilyId::M, n), 1),
            (FamilySpec::new(FamilyId::L, n).with("theta", 1), 0),
        ];
        for p in parameter_names(FamilyId::L, n) {
            cases.push((FamilySpec::new(FamilyId::L, n).with(&p, 1), 0));
        }
        for (spec, expected) in cases {
            let got = mni(spec.clone());
            if got != expected {
                bad.push(format!("{}: {got} vs {expected}", spec.label()));
            }
        }
    }
    outcome(bad.is_empty(), format!("n = 4..6; mismatches: {bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for id in [FamilyId::L, FamilyId::M, FamilyId::H, FamilyId::G] {
        let (mut pass, mut mismatch, mut unsup) = (0, 0, 0);
        for n in 5..=7 {
            for c in verify_corollary(id, n) {
                match c.status {
                    Status::Pass => pass += 1,
                    Status::Fail => mismatch += 1,
                    Status::Unsupported => unsup += 1,
                }
            }
        }
        ok &= mismatch == 0 && unsup == 0;
        lines.push(format!(
            "{id}: {pass} match, {mismatch} mismatch, {unsup} on non-Leibniz tables"
        ));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_7() -> Outcome {
    use superalg_core::verify::solvable_instances;
    let mut failing = Vec::new();
    let mut count = 0;
    for id in FamilyId::ALL.into_iter().filter(|f| f.is_solvable_family()) {
        let sizes: Vec<usize> = if id.sized_by_m() {
            vec![3, 5]
        } else {
            (4..=6).collect()
        };
        for size in sizes {
            if validate(&probe(id, size)).is_err() {
                continue;
            }
            for spec in solvable_instances(id, size, ErrataMode::Corrected) {
                count += 1;
                let checks = verify_solvable_family(&spec);
                let bad: Vec<&str> = checks
                    .iter()
                    .filter(|c| {
                        c.status == Status::Fail
                            || (c.status == Status::Unsupported && !c.name.starts_with("(f)"))
                    })
                    .map(|c| c.name.as_str())
                    .collect();
                if !bad.is_empty() {
                    failing.push(format!("{} {bad:?}", spec.label()));
                }
            }
        }
    }
    // verbatim audit: every failure must be ledgered with a witness
    let claims = plan(
        &["SOLV".into(), "IDENT".into()],
        3..=6,
        ErrataMode::Verbatim,
    )
    .unwrap();
    let report = run(&claims, &SamplingOptions::default(), ErrataMode::Verbatim);
    let unledgered: Vec<String> = report
        .claims
        .iter()
        .filter(|c| c.status == Status::Fail && !c.ledgered)
        .map(|c| c.instance.clone())
        .collect();
    let witnessless = report
        .claims
        .iter()
        .flat_map(|c| &c.checks)
        .filter(|c| c.status == Status::Fail && c.witness.is_none())
        .count();
    outcome(
        failing.is_empty() && unledgered.is_empty() && witnessless == 0,
        format!(
            "{count} corrected instances, failing: {failing:?}; verbatim audit: {} failures, unledgered {unledgered:?}",
            report.summary.failed
        ),
    )
}

fn probe(id: FamilyId, size: usize) -> FamilySpec {
    match id {
        FamilyId::SH1 | FamilyId::SG1 => FamilySpec::new(id, size).with("t", 4),
        FamilyId::SH3 | FamilyId::SG2 => FamilySpec::new(id, size).with("gamma", 1),
        _ => FamilySpec::new(id, size),
    }
}

fn random_homogeneous(rng: &mut ChaCha8Rng, a: &SuperAlgebra) -> Vec<Rational> {
    let odd = a.n_odd() > 0 && rng.gen_bool(0.5);
    (0..a.dim())
        .map(|i| {
            if (a.parity(i) == Parity::Odd) == odd {
                Rational::from_int(rng.gen_range(-3..=3))
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let specs = [
        FamilySpec::new(FamilyId::N2M, 5),
        FamilySpec::new(FamilyId::L, 5).with("alpha4", 1),
        FamilySpec::new(FamilyId::SH1, 5).with("t", 4),
        FamilySpec::new(FamilyId::MH1, 4),
        FamilySpec::new(FamilyId::G4, 4)
            .with("gamma", 1)
            .with("b", 1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    for spec in specs {
        let a = build_family(&spec.clone().zeros()).unwrap();
        let d = Dense::of(&a);
        for _ in 0..200 {
            let (u, v) = (
                random_homogeneous(&mut rng, &a),
                random_homogeneous(&mut rng, &a),
            );
            let pu = u.iter().enumerate().any(|(i, c)| !c.is_zero() && d.odd(i));
            let pv = v.iter().enumerate().any(|(i, c)| !c.is_zero() && d.odd(i));
            let sign = Rational::from_int(if pu && pv { -1 } else { 1 });
            let s: Vec<Rational> = d
                .bracket(&u, &v)
                .iter()
                .zip(d.bracket(&v, &u))
                .map(|(x, y)| x + &(&sign * &y))
                .collect();
            let annihilated =
                (0..d.dim).all(|i| d.bracket(&d.unit(i), &s).iter().all(Rational::is_zero));
            if !annihilated {
                bad.push(spec.label());
                break;
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("5 families x 200 pairs; violations in {bad:?}"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut disagreements = Vec::new();
    let mut leibniz_count = 0;
    let seeds: Vec<SuperAlgebra> = [
        FamilySpec::new(FamilyId::N2M, 3),
        FamilySpec::new(FamilyId::L, 3),
        FamilySpec::new(FamilyId::G, 3),
        FamilySpec::new(FamilyId::H, 3),
        FamilySpec::new(FamilyId::SL, 3),
        FamilySpec::new(FamilyId::M1, 3),
    ]
    .into_iter()
    .map(|s| build_family(&s.zeros()).unwrap())
    .collect();
    for i in 0..50 {
        let a = if i % 2 == 0 {
            let n0 = rng.gen_range(1..=4);
            let n1 = rng.gen_range(0..=4);
            common::random_table(&mut rng, n0, n1, 0.08)
        } else {
            let base = &seeds[rng.gen_range(0..seeds.len())];
            common::change_basis(base, &mut rng)
        };
        let lib: BTreeMap<(String, String, String, String), Rational> = check_leibniz(&a)
            .into_iter()
            .map(|r| {
                (
                    (
                        r.args[0].clone(),
                        r.args[1].clone(),
                        r.args[2].clone(),
                        r.component,
                    ),
                    r.value.as_constant().unwrap(),
                )
            })
            .collect();
        let oracle: BTreeMap<(String, String, String, String), Rational> = Dense::of(&a)
            .leibniz_residuals()
            .into_iter()
            .map(|(x, y, z, k, v)| {
                let l = |i: usize| a.label(i).to_string();
                ((l(x), l(y), l(z), l(k)), v)
            })
            .collect();
        leibniz_count += usize::from(oracle.is_empty());
        if lib != oracle {
            disagreements.push(format!("algebra {i}"));
        }
    }
    let mut jordan_bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for v in row.iter_mut().take(i) {
                if rng.gen_bool(0.4) {
                    *v = Rational::from_int(rng.gen_range(-2..=2));
                }
            }
        }
        let (p, q) = common::unimodular(&mut rng, n, 2 * n);
        let conj = common::mat_mul(&common::mat_mul(&p, &m), &q);
        let expected = common::jordan_partition(&conj);
        let got = nilpotent_jordan_type(&RatMatrix::from_rows(conj).unwrap()).unwrap();
        let agree = matches!((&got, &expected), (JordanType::Nilpotent(g), Some(e)) if g == e);
        jordan_bad += usize::from(!agree);
    }
    outcome(
        disagreements.is_empty() && jordan_bad == 0,
        format!(
            "50 algebras ({leibniz_count} Leibniz), disagreements {disagreements:?}; 100 nilpotent matrices, {jordan_bad} Jordan mismatches"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "identity suite", criterion_1),
        (2, "nilindex", criterion_2),
        (3, "characteristic sequence", criterion_3),
        (4, "derivation templates", criterion_4),
        (5, "nil-independence", criterion_5),
        (6, "extendability sweeps", criterion_6),
        (7, "solvable extensions", criterion_7),
        (8, "annihilator property", criterion_8),
        (9, "oracle equivalence", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let o = f();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n} ({name}): {verdict}: {}", o.detail);
        match (o.pass, known) {
            (false, Some((_, why))) => println!("    known failure: {why}"),
            (false, None) => unexpected.push(format!("criterion {n} failed")),
            (true, Some(_)) => {
                unexpected.push(format!("criterion {n} is listed as failing but passed"))
            }
            (true, None) => {}
        }
    }
    println!(
        "acceptance finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}

//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use coarseprox::backends::{AnySet, BackendKind};
use coarseprox::harness::{
    self, check_asym_resemblance, check_coarse_proximity, check_finite_invariance,
    check_nbhd_properties, check_nonnormality, crosscheck, BEvaluator, CheckReport, SeedPlan,
    Suite,
};
use coarseprox::normality::{off_naturals, unit_interval};
use coarseprox::relations::{self, PrecMode, QHalfline, ZMetric};

const SEED: u64 = 20_240_501;
const ORACLE_WINDOWS: [u64; 2] = [100, 1000];
const MIN_CERTIFIED: usize = 50;

fn plan(pairs: usize) -> SeedPlan {
    SeedPlan {
        pairs,
        triples: pairs,
        windows: ORACLE_WINDOWS.to_vec(),
        ..SeedPlan::with_seed(SEED)
    }
}

fn count(r: &CheckReport, clause: &str) -> usize {
    r.checked.get(clause).copied().unwrap_or(0)
}

fn clean(r: &CheckReport, clauses: &[&str]) -> bool {
    r.failures
        .iter()
        .all(|f| !clauses.contains(&f.clause.as_str()))
}

fn green(r: &CheckReport) -> bool {
    r.failures.is_empty() && r.oracle_disagreements.is_empty()
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

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

fn axioms() -> Outcome {
    let r = check_coarse_proximity::<ZMetric>(BEvaluator::Native, &plan(500));
    let strong = count(&r, "proximity.strong");
    outcome(
        green(&r) && r.instances >= 500 && strong > 0,
        format!(
            "{} instances, {strong} strong-axiom witnesses, {} failures",
            r.instances,
            r.failures.len()
        ),
    )
}

fn neighbourhoods() -> Outcome {
    let r = check_nbhd_properties::<ZMetric>(&plan(500));
    let interp = count(&r, "nbhd.interpolation");
    outcome(
        green(&r) && r.instances >= 500 && interp > 0,
        format!(
            "{} instances, {interp} interpolations, {} failures",
            r.instances,
            r.failures.len()
        ),
    )
}

fn round_trip(cross: &[CheckReport]) -> Outcome {
    let clauses = ["crosscheck.round-trip", "crosscheck.derived-b"];
    let ok = cross
        .iter()
        .all(|r| clean(r, &clauses) && clauses.iter().all(|c| count(r, c) >= 200));
    outcome(
        ok,
        format!("{} round trips per backend", count(&cross[0], clauses[0])),
    )
}

fn characterizations(cross: &[CheckReport]) -> Outcome {
    let prec = cross
        .iter()
        .all(|r| clean(r, &["crosscheck.prec-modes"]) && count(r, "crosscheck.prec-modes") >= 300);
    let z = &cross[0];
    let b = clean(z, &["crosscheck.b-modes"]) && count(z, "crosscheck.b-modes") >= 300;
    outcome(
        prec && b,
        format!(
            "prec modes on {} pairs per backend, closeness modes on {} integer pairs",
            count(z, "crosscheck.prec-modes"),
            count(z, "crosscheck.b-modes")
        ),
    )
}

fn oracles(cross: &[CheckReport]) -> Outcome {
    let probes: usize = cross
        .iter()
        .flat_map(|r| r.checked.iter())
        .filter(|(k, _)| k.starts_with("oracle."))
        .map(|(_, v)| v)
        .sum();
    let disagreements: usize = cross.iter().map(|r| r.oracle_disagreements.len()).sum();
    outcome(
        disagreements == 0 && probes >= 2 * 4 * 300 * ORACLE_WINDOWS.len(),
        format!(
            "{probes} oracle probes at windows {ORACLE_WINDOWS:?}, {disagreements} disagreements"
        ),
    )
}

fn normal_witnesses(cross: &[CheckReport]) -> Outcome {
    let z = &cross[0];
    let clauses = [
        "crosscheck.interpolate",
        "crosscheck.star",
        "crosscheck.split",
    ];
    let ok = clean(z, &clauses) && clauses.iter().all(|c| count(z, c) > 0);
    let counts: Vec<String> = clauses
        .iter()
        .map(|c| format!("{c}={}", count(z, c)))
        .collect();
    outcome(ok, counts.join(" "))
}

fn non_normality() -> Outcome {
    let (a, b) = (AnySet::Q(unit_interval()), AnySet::Q(off_naturals()));
    let decided = relations::prec(&a, &b, PrecMode::Image, 0)
        .map(|r| r.holds())
        .unwrap_or(false);
    let certs = check_nonnormality(&plan(300));
    let certified = count(&certs, "normality.certificate");
    let prox = check_coarse_proximity::<QHalfline>(BEvaluator::Derived, &plan(300));
    let only_strong =
        prox.failed_clauses() == ["proximity.strong"] && harness::matches_expected(&prox);
    outcome(
        decided && green(&certs) && certified >= MIN_CERTIFIED && only_strong,
        format!("prec((0,1), off-naturals)={decided}, {certified} certificates, proximity failures {:?}", prox.failed_clauses()),
    )
}

fn invariance() -> Outcome {
    let z = check_finite_invariance::<ZMetric>(&plan(200));
    let q = check_finite_invariance::<QHalfline>(&plan(200));
    outcome(
        green(&z) && green(&q) && z.instances >= 200 && q.instances >= 200,
        format!("{} + {} instances", z.instances, q.instances),
    )
}

fn resemblance() -> Outcome {
    let r = check_asym_resemblance::<ZMetric>(&plan(200));
    let d = count(&r, "resemblance.decomposition");
    outcome(
        green(&r) && d >= 200,
        format!("{} instances, {d} decompositions", r.instances),
    )
}

fn determinism() -> Outcome {
    let p = plan(120);
    let mut ok = true;
    for kind in [BackendKind::ZMetric, BackendKind::QHalfline] {
        for suite in [Suite::Proximity, Suite::Nbhd, Suite::Resemblance] {
            let once = harness::run_suite(suite, kind, &p).map(|r| r.to_json().to_string());
            let again = harness::run_suite(suite, kind, &p).map(|r| r.to_json().to_string());
            ok &= once.is_ok() && once == again;
        }
    }
    outcome(
        ok,
        "proximity, nbhd and resemblance reports byte-identical on both backends",
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cross = vec![
        crosscheck::<ZMetric>(&plan(300)),
        crosscheck::<QHalfline>(&plan(300)),
    ];
    let criteria: Vec<Criterion> = vec![
        ("proximity-axioms", Box::new(axioms)),
        ("neighbourhood-properties", Box::new(neighbourhoods)),
        (
            "derived-closeness-round-trip",
            Box::new(|| round_trip(&cross)),
        ),
        (
            "characterization-agreement",
            Box::new(|| characterizations(&cross)),
        ),
        ("oracle-agreement", Box::new(|| oracles(&cross))),
        (
            "integer-normality-witnesses",
            Box::new(|| normal_witnesses(&cross)),
        ),
        ("halfline-non-normality", Box::new(non_normality)),
        ("finite-perturbation-invariance", Box::new(invariance)),
        ("resemblance-axioms", Box::new(resemblance)),
        ("report-determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} {:>2} {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

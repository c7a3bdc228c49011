//! Acceptance criteria. `summary` prints one PASS/FAIL line per criterion and
//! asserts every part that holds; the two parts that cannot hold are kept as
//! ignored tests asserting the statement verbatim.

use std::time::Instant;

use qmodels::report::{Mode, RunConfig, Status};
use qmodels::suite::{self, CriterionOutcome, CRITERIA, TITLES};

const BUDGET_1_MS: f64 = 1_000.0;
// a whole-criterion bound is at least as strict as the per-case ones
const BUDGET_2_MS: f64 = 1_000.0;
const BUDGET_3_MS: f64 = 5_000.0;
const BUDGET_5_MS: f64 = 1_000.0;
const BUDGET_6_MS: f64 = 1_000.0;
const RANDOM_TOL: f64 = 1e-8;
const FLOAT_TOL: f64 = 1e-9;
const LOOSE_FLOAT_TOL: f64 = 1e-2;

fn run(id: usize) -> CriterionOutcome {
    CRITERIA[id - 1](&RunConfig::default()).unwrap()
}

fn assert_all(o: &CriterionOutcome) {
    assert!(o.pass, "criterion {} failing checks: {:?}", o.id, o.failing_checks());
}

fn assert_check(o: &CriterionOutcome, name: &str) {
    let c = o.check(name).unwrap_or_else(|| panic!("no check named {name}"));
    assert!(c.pass, "{name}: {}", c.detail);
}

fn assert_within(o: &CriterionOutcome, budget_ms: f64) {
    assert!(o.elapsed_ms < budget_ms, "criterion {} took {:.1} ms", o.id, o.elapsed_ms);
}

#[test]
fn summary() {
    let cfg = RunConfig::default();
    let mut lines = Vec::new();
    for (i, f) in CRITERIA.iter().enumerate() {
        let o = f(&cfg).unwrap();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        lines.push(format!("{tag} criterion {:>2}: {} ({:.1} ms)", i + 1, TITLES[i], o.elapsed_ms));
        for c in o.failing_checks() {
            lines.push(format!("       failing: {}", c.name));
        }
    }
    println!("{}", lines.join("\n"));
}

#[test]
fn criterion_1_klein_counterexample() {
    let o = run(1);
    assert_all(&o);
    assert_within(&o, BUDGET_1_MS);
}

#[test]
fn criterion_2_induced_stationarity() {
    let o = run(2);
    assert_all(&o);
    assert_eq!(o.checks.len(), 3);
    assert_within(&o, BUDGET_2_MS);
}

#[test]
fn criterion_3_latin_models() {
    let o = run(3);
    assert_all(&o);
    assert_eq!(o.checks.len(), 3);
    assert_within(&o, BUDGET_3_MS);
}

#[test]
fn criterion_4_stationarity_mismatch() {
    let o = run(4);
    assert_check(&o, "stationarity fails at u(1,1)u(2,2) with 1/4 against 1/8");
}

#[test]
#[ignore = "the collapsed D_4 state is the Haar state of Z_4, which is idempotent"]
fn criterion_4_idempotency_failure() {
    assert_all(&run(4));
}

#[test]
fn criterion_5_block_models() {
    let o = run(5);
    assert_all(&o);
    assert_within(&o, BUDGET_5_MS);
}

#[test]
fn criterion_6_dihedral_cyclic_model() {
    let o = run(6);
    assert_all(&o);
    assert_within(&o, BUDGET_6_MS);
}

#[test]
fn criterion_7_trace_vectors() {
    assert_eq!(suite::RANDOM_CONJUGATE_TOL, RANDOM_TOL);
    assert_eq!(suite::RANDOM_CONJUGATES, 200);
    assert_all(&run(7));
}

#[test]
fn criterion_8_fixed_points() {
    let o = run(8);
    assert_all(&o);
    assert_eq!(o.checks.len(), 4);
}

#[test]
fn criterion_9_k_symmetry() {
    assert_all(&run(9));
}

#[test]
fn criterion_10_attainable_parts() {
    let o = run(10);
    assert_check(&o, "Z_2 x Z_2 is uniform");
    assert_check(&o, "S_3 x Z_2 is not uniform, failing the symmetry condition");
}

#[test]
#[ignore = "S_3 abelianizes to Z_2, so no surjection onto Z_2 x Z_2 exists"]
fn criterion_10_s3_uniform() {
    assert_all(&run(10));
}

#[test]
fn criterion_11_determinism_and_float_agreement() {
    assert_eq!(suite::FLOAT_AGREEMENT_TOL, FLOAT_TOL);
    assert_all(&run(11));
}

#[test]
fn float_mode_with_loose_tolerance_still_agrees() {
    let cfg = RunConfig { mode: Mode::Float, tol: LOOSE_FLOAT_TOL, ..RunConfig::default() };
    let checks = suite::float_agreement(&cfg, LOOSE_FLOAT_TOL).unwrap();
    assert!(checks.iter().all(|c| c.pass), "{checks:?}");
}

#[test]
fn suite_report_is_deterministic() {
    let cfg = RunConfig::default();
    let t = Instant::now();
    let a = suite::run_suite(&cfg);
    let b = suite::run_suite(&cfg);
    assert!(a.timing_ms.is_some());
    assert_eq!(a.without_timing().to_json_string(), b.without_timing().to_json_string());
    // only the two unattainable parts fail
    assert_eq!(a.status, Status::Fail);
    let failing: Vec<u64> = a.witnesses.iter().map(|w| w["criterion"].as_u64().unwrap()).collect();
    assert_eq!(failing, vec![4, 10]);
    println!("two suite runs in {:.1} s", t.elapsed().as_secs_f64());
}

#[test]
fn cap_one_is_an_error() {
    let r = suite::run_suite(&RunConfig { cap: 1, ..RunConfig::default() });
    assert_eq!(r.status, Status::Error);
    assert_eq!(r.status.exit_code(), 2);
}

//! End-to-end acceptance suite: one test (and one printed pass/fail line)
//! per criterion. Each criterion cross-checks a closed-form routine against
//! an independent brute-force oracle at every order in the sweep.

use std::process::Command;

use quadqg_cli::verify::{
    check_aut_orders, check_basic_properties, check_certificates, check_eq2,
    check_iso_equivalence, check_nearfield, check_netto_existence, check_substructure,
    check_variety_flags, default_orders, Check, DEFAULT_AUT_CAP,
};
use quadqg_core::classify::find_character_run_witness;
use quadqg_core::gf::FiniteField;

fn report(criterion: u32, label: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {criterion} ({label}): PASS");
    } else {
        println!("criterion {criterion} ({label}): FAIL");
        panic!("criterion {criterion} ({label}): {}", failures.join("; "));
    }
}

fn collect(checks: impl IntoIterator<Item = Check>) -> Vec<String> {
    checks
        .into_iter()
        .filter(|c| !c.pass)
        .map(|c| format!("[q={} {}] {}", c.q, c.name, c.detail))
        .collect()
}

fn sweep_fields() -> Vec<FiniteField> {
    default_orders(27)
        .into_iter()
        .map(|(p, k)| FiniteField::new(p, k).unwrap())
        .collect()
}

#[test]
fn criterion_01_latin_iff_valid() {
    let failures = collect(sweep_fields().iter().map(check_eq2));
    report(1, "latin square iff parameters valid", failures);
}

#[test]
fn criterion_02_isomorphism_theorem_vs_oracle() {
    let failures = collect(sweep_fields().iter().map(check_iso_equivalence));
    report(2, "isomorphism decision vs brute force", failures);
}

#[test]
fn criterion_03_automorphism_orders() {
    // check_aut_orders pins 168 at (7; 3,5), 72 at (9; 4,7), 432 at (9; 2,2)
    // and 55 at (11; 2,6) on top of the full formula-vs-oracle sweep.
    let failures = collect(sweep_fields().iter().map(check_aut_orders));
    report(3, "automorphism group orders", failures);
}

#[test]
fn criterion_04_variety_flags() {
    let mut checks: Vec<Check> = sweep_fields()
        .iter()
        .map(|f| check_variety_flags(f, false))
        .collect();
    let f49 = FiniteField::new(7, 2).unwrap();
    checks.push(check_variety_flags(&f49, true));
    report(4, "variety flags vs exhaustive law checks", collect(checks));
}

#[test]
fn criterion_05_nearfield_tables() {
    let checks = [(3u64, 2u32), (5, 2), (7, 2)].map(|(p, k)| {
        let f = FiniteField::new(p, k).unwrap();
        check_nearfield(&f)
    });
    report(5, "nearfield table equals quadratic table", collect(checks));
}

#[test]
fn criterion_06_netto_existence() {
    report(6, "Netto parameters and Steiner systems", collect([check_netto_existence()]));
}

#[test]
fn criterion_07_basic_property_suite() {
    let mut checks: Vec<Check> = sweep_fields()
        .iter()
        .map(|f| check_basic_properties(f, f.order() <= 13))
        .collect();
    let f49 = FiniteField::new(7, 2).unwrap();
    checks.push(check_basic_properties(&f49, false));
    report(7, "basic property suite", collect(checks));
}

#[test]
fn criterion_08_substructure() {
    let checks = [(3u64, 2u32), (5, 2), (3, 3)].map(|(p, k)| {
        let f = FiniteField::new(p, k).unwrap();
        check_substructure(&f, DEFAULT_AUT_CAP)
    });
    report(8, "subquasigroup coset forms and 2-transitivity", collect(checks));
}

#[test]
fn criterion_09_isotopy_certificates() {
    let mut failures = Vec::new();
    for (p, k) in [(7u64, 1u32), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3), (7, 2)] {
        let f = FiniteField::new(p, k).unwrap();
        failures.extend(collect([check_certificates(&f)]));
    }
    // Known witness vectors: u = 7 at q = 11, u = 6 at q = 13, u = 2*sqrt(2)
    // at q = 25, each paired with v = u - 1.
    let f11 = FiniteField::new(11, 1).unwrap();
    if find_character_run_witness(&f11).unwrap() != (7, 6) {
        failures.push("q=11: expected witness (7, 6)".into());
    }
    let f13 = FiniteField::new(13, 1).unwrap();
    if find_character_run_witness(&f13).unwrap() != (6, 5) {
        failures.push("q=13: expected witness (6, 5)".into());
    }
    let f25 = FiniteField::new(5, 2).unwrap();
    let sqrt2 = (0..25).find(|&x| f25.mul(x, x) == 2).unwrap();
    for u in [f25.mul(2, sqrt2), f25.neg(f25.mul(2, sqrt2))] {
        let predicate = f25.chi(u) == -1
            && f25.chi(f25.add(u, 1)) == -1
            && f25.chi(f25.sub(u, 1)) == -1;
        if !predicate {
            failures.push(format!("q=25: u={u} fails the run predicate"));
        }
    }
    report(9, "group-isotopy certificates and run witnesses", failures);
}

#[test]
fn criterion_10_end_to_end_verify() {
    let start = std::time::Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_quadqg"))
        .args(["verify", "--max-q", "27"])
        .output()
        .expect("failed to run quadqg");
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if out.status.code() != Some(0) {
        failures.push(format!(
            "exit code {:?}; stderr: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    if elapsed.as_secs() >= 600 {
        failures.push(format!("verify took {elapsed:?}, budget is 10 minutes"));
    }
    report(10, "quadqg verify --max-q 27 exits 0", failures);
}

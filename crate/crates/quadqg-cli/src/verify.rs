//! Formula-vs-oracle cross-checks over the small-order sweep. Every check
//! compares a closed-form answer against an independent brute-force
//! computation on Cayley tables; a failure here means a theorem-level routine
//! and its oracle disagree.

use rayon::prelude::*;
use serde::Serialize;

use quadqg_core::classify::{
    classify_oracle, classify_params, find_character_run_witness, is_steiner_triple_system,
    netto_blocks, netto_params, check_law, IsotopyCertificate, Law,
};
use quadqg_core::classify::group_isotopy_certificate;
use quadqg_core::gf::{Elem, FiniteField};
use quadqg_core::iso::{
    aut_brute_force, aut_descriptor, aut_elements, class_representatives, iso_brute_force,
    iso_by_theorem, is_two_transitive, AutCase,
};
use quadqg_core::qgrp::{
    build_magma, build_nearfield_quasigroup, build_quadratic, is_netto_params,
    minimal_subquasigroups, validate_params,
};

/// Default automorphism-enumeration cap (largest group in the sweep is
/// `|AGL_3(F_3)| = 303264`).
pub const DEFAULT_AUT_CAP: u128 = 1 << 22;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest field order from the default sweep set.
    pub max_q: u64,
    /// Also run the 2-variable law oracles at q = 49.
    pub extended_laws: bool,
    pub aut_cap: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_q: 27,
            extended_laws: false,
            aut_cap: DEFAULT_AUT_CAP,
        }
    }
}

/// One line of the pass/fail matrix.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub detail: String,
    pub name: String,
    pub pass: bool,
    pub q: u64,
}

impl Check {
    fn pass(name: &str, q: u64) -> Check {
        Check {
            detail: String::new(),
            name: name.to_string(),
            pass: true,
            q,
        }
    }

    fn fail(name: &str, q: u64, detail: String) -> Check {
        Check {
            detail,
            name: name.to_string(),
            pass: false,
            q,
        }
    }

    fn from(name: &str, q: u64, first_failure: Option<String>) -> Check {
        match first_failure {
            None => Check::pass(name, q),
            Some(d) => Check::fail(name, q, d),
        }
    }
}

/// The default sweep: `(p, k)` for q in {3, 5, 7, 9, 11, 13, 25, 27},
/// truncated at `max_q`.
pub fn default_orders(max_q: u64) -> Vec<(u64, u32)> {
    [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)]
        .into_iter()
        .filter(|&(p, k)| (p as u64).pow(k) <= max_q)
        .map(|(p, k)| (p as u64, k))
        .collect()
}

fn valid_pairs(f: &FiniteField) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for a in 0..f.order() {
        for b in 0..f.order() {
            if validate_params(f, a, b).is_ok() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Latin exactly when the parameters validate, over all `(a, b)` in `F x F`.
pub fn check_eq2(f: &FiniteField) -> Check {
    let q = f.order();
    let mut first = None;
    'outer: for a in 0..q {
        for b in 0..q {
            let latin = build_magma(f, a, b).is_latin();
            let valid = validate_params(f, a, b).is_ok();
            if latin != valid {
                first = Some(format!("a={a} b={b} latin={latin} valid={valid}"));
                break 'outer;
            }
        }
    }
    Check::from("eq2-latin-iff-valid", q, first)
}

/// Parameter-orbit isomorphism decision agrees with backtracking search over
/// all ordered pairs of valid parameter pairs.
pub fn check_iso_equivalence(f: &FiniteField) -> Check {
    let pairs = valid_pairs(f);
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let q1 = build_quadratic(f, a, b).unwrap();
            for &(c, d) in &pairs {
                let q2 = build_quadratic(f, c, d).unwrap();
                let thm = iso_by_theorem(f, a, b, c, d).unwrap().is_some();
                let brute = iso_brute_force(&q1, &q2).is_some();
                if thm != brute {
                    return Some(format!(
                        "({a},{b}) vs ({c},{d}): theorem={thm} oracle={brute}"
                    ));
                }
            }
            None
        })
        .collect();
    Check::from("iso-theorem-vs-oracle", f.order(), failures.into_iter().next())
}

/// Closed-form automorphism group order equals the brute-force count for
/// every valid pair, including the pinned spot values.
pub fn check_aut_orders(f: &FiniteField) -> Check {
    let q = f.order();
    let pinned: &[(u64, Elem, Elem, u128)] = &[
        (7, 3, 5, 168),
        (9, 4, 7, 72),
        (9, 2, 2, 432),
        (11, 2, 6, 55),
    ];
    let failures: Vec<String> = valid_pairs(f)
        .par_iter()
        .filter_map(|&(a, b)| {
            let desc = aut_descriptor(f, a, b).unwrap();
            let table = build_quadratic(f, a, b).unwrap();
            let brute = aut_brute_force(&table).len() as u128;
            if brute != desc.order {
                return Some(format!(
                    "({a},{b}): descriptor={} oracle={brute}",
                    desc.order
                ));
            }
            for &(pq, pa, pb, po) in pinned {
                if pq == q && pa == a && pb == b && desc.order != po {
                    return Some(format!("({a},{b}): expected {po}, got {}", desc.order));
                }
            }
            None
        })
        .collect();
    Check::from("aut-order-theorem-vs-oracle", q, failures.into_iter().next())
}

/// Variety flags from the parameter formulas agree with exhaustive law checks.
/// With `two_var_only`, checks only the laws in at most two variables
/// (commutative, flexible, semisymmetric, Steiner).
pub fn check_variety_flags(f: &FiniteField, two_var_only: bool) -> Check {
    let name = if two_var_only {
        "variety-flags-two-var"
    } else {
        "variety-flags"
    };
    let failures: Vec<String> = valid_pairs(f)
        .par_iter()
        .filter_map(|&(a, b)| {
            let formula = classify_params(f, a, b).unwrap();
            let table = build_quadratic(f, a, b).unwrap();
            let mut diffs: Vec<&str> = Vec::new();
            let commutative = check_law(&table, Law::Commutative);
            let flexible = check_law(&table, Law::Flexible);
            let semisymmetric = check_law(&table, Law::Semisymmetric);
            let steiner = table.is_idempotent() && commutative && semisymmetric;
            if formula.commutative != commutative {
                diffs.push("commutative");
            }
            if formula.flexible != flexible {
                diffs.push("flexible");
            }
            if formula.semisymmetric != semisymmetric {
                diffs.push("semisymmetric");
            }
            if formula.steiner != steiner {
                diffs.push("steiner");
            }
            if !two_var_only {
                let oracle = classify_oracle(f, a, b).unwrap();
                if formula.medial != oracle.medial {
                    diffs.push("medial");
                }
                if formula.left_distributive != oracle.left_distributive {
                    diffs.push("left_distributive");
                }
                if formula.right_distributive != oracle.right_distributive {
                    diffs.push("right_distributive");
                }
                if formula.netto != oracle.netto {
                    diffs.push("netto");
                }
                if formula.group_isotopic != oracle.group_isotopic {
                    diffs.push("group_isotopic");
                }
            }
            if diffs.is_empty() {
                None
            } else {
                Some(format!("({a},{b}): {}", diffs.join(",")))
            }
        })
        .collect();
    Check::from(name, f.order(), failures.into_iter().next())
}

/// Nearfield quasigroup table is bit-identical to `Q_{a, a^s}` for every
/// `a` outside `{0, 1}` (`s` the square root of the field order).
pub fn check_nearfield(f: &FiniteField) -> Check {
    let s = match f.sqrt_order() {
        Some(s) => s,
        None => return Check::fail("nearfield-vs-quadratic", f.order(), "order not square".into()),
    };
    let mut first = None;
    for a in 2..f.order() {
        let nf = build_nearfield_quasigroup(f, a).unwrap();
        let qq = build_quadratic(f, a, f.pow(a, s)).unwrap();
        if nf != qq {
            first = Some(format!("a={a}"));
            break;
        }
    }
    Check::from("nearfield-vs-quadratic", f.order(), first)
}

/// Netto parameters exist exactly at q in {7, 19, 31, 43} among odd prime
/// powers up to 50; all Steiner block sets are valid triple systems; the
/// closed-form automorphism order is confirmed by brute force at q in {7, 19}.
pub fn check_netto_existence() -> Check {
    let orders: &[(u64, u32)] = &[
        (3, 1),
        (5, 1),
        (7, 1),
        (3, 2),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
        (5, 2),
        (3, 3),
        (29, 1),
        (31, 1),
        (37, 1),
        (41, 1),
        (43, 1),
        (47, 1),
        (7, 2),
    ];
    let expected = [7u64, 19, 31, 43];
    let mut first = None;
    'outer: for &(p, k) in orders {
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order();
        let params = netto_params(&f);
        if params.is_some() != expected.contains(&q) {
            first = Some(format!("q={q}: netto_params={params:?}"));
            break;
        }
        // Steiner block sets: Netto where they exist, char-3 a = b = -1
        let steiner_pairs: Vec<(Elem, Elem)> = match (params, p) {
            (Some((a, b)), _) => vec![(a, b)],
            (None, 3) => vec![(f.neg(1), f.neg(1))],
            _ => vec![],
        };
        for (a, b) in steiner_pairs {
            let blocks = netto_blocks(&f, a, b).unwrap();
            if blocks.len() as u64 != q * (q - 1) / 6
                || !is_steiner_triple_system(q as usize, &blocks)
            {
                first = Some(format!("q={q}: blocks of ({a},{b}) are not an STS"));
                break 'outer;
            }
            if q == 7 || q == 19 {
                let desc = aut_descriptor(&f, a, b).unwrap();
                let table = build_quadratic(&f, a, b).unwrap();
                let brute = aut_brute_force(&table).len() as u128;
                if brute != desc.order {
                    first = Some(format!(
                        "q={q}: netto aut order {} vs oracle {brute}",
                        desc.order
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check::from("netto-existence-q-le-50", 50, first)
}

/// The basic property suite, table-level: idempotence, translation and
/// square-scaling automorphisms, the nonsquare swap isomorphism, opposite and
/// translate parameter identities, nonsquare scaling never commuting with the
/// operation when `a != b`, and Frobenius-induced isomorphisms.
pub fn check_basic_properties(f: &FiniteField, exhaustive: bool) -> Check {
    let q = f.order();
    let pairs: Vec<(Elem, Elem)> = if exhaustive {
        valid_pairs(f)
    } else {
        class_representatives(f).into_iter().take(6).collect()
    };
    let zeta = f.canonical_nonsquare();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let t = build_quadratic(f, a, b).unwrap();
            if !t.is_idempotent() {
                return Some(format!("({a},{b}): not idempotent"));
            }
            for mu in 0..q {
                let perm: Vec<u32> = (0..q).map(|x| f.add(x, mu) as u32).collect();
                if t.relabel(&perm) != t {
                    return Some(format!("({a},{b}): x+{mu} is not an automorphism"));
                }
            }
            for c in 1..q {
                if f.chi(c) != 1 {
                    continue;
                }
                let perm: Vec<u32> = (0..q).map(|x| f.mul(c, x) as u32).collect();
                if t.relabel(&perm) != t {
                    return Some(format!("({a},{b}): {c}x is not an automorphism"));
                }
            }
            let swapped = build_quadratic(f, b, a).unwrap();
            let perm: Vec<u32> = (0..q).map(|x| f.mul(zeta, x) as u32).collect();
            if t.relabel(&perm) != swapped {
                return Some(format!("({a},{b}): zeta-x does not reach the swap"));
            }
            let (oa, ob) = if q % 4 == 1 {
                (f.sub(1, a), f.sub(1, b))
            } else {
                (f.sub(1, b), f.sub(1, a))
            };
            if t.opposite() != build_quadratic(f, oa, ob).unwrap() {
                return Some(format!("({a},{b}): opposite parameters wrong"));
            }
            let fa = f.div(f.sub(a, 1), a).unwrap();
            let fb = f.div(f.sub(b, 1), b).unwrap();
            let (ta, tb) = if f.chi(a) == f.chi(f.neg(1)) {
                (fa, fb)
            } else {
                (fb, fa)
            };
            if t.translate() != build_quadratic(f, ta, tb).unwrap() {
                return Some(format!("({a},{b}): translate parameters wrong"));
            }
            if a != b {
                for x in 0..q as u32 {
                    for y in 0..q as u32 {
                        if x == y {
                            continue;
                        }
                        let lhs = f.mul(zeta, t.op(x, y) as u64) as u32;
                        let zx = f.mul(zeta, x as u64) as u32;
                        let zy = f.mul(zeta, y as u64) as u32;
                        if lhs == t.op(zx, zy) {
                            return Some(format!(
                                "({a},{b}): zeta commutes at x={x} y={y}"
                            ));
                        }
                    }
                }
            }
            for j in 1..f.k() {
                let image =
                    build_quadratic(f, f.frobenius(a, j), f.frobenius(b, j)).unwrap();
                let perm: Vec<u32> = (0..q).map(|x| f.frobenius(x, j) as u32).collect();
                if t.relabel(&perm) != image {
                    return Some(format!("({a},{b}): frobenius {j} not an isomorphism"));
                }
            }
            None
        })
        .collect();
    let name = if exhaustive {
        "basic-properties-exhaustive"
    } else {
        "basic-properties-sampled"
    };
    Check::from(name, q, failures.into_iter().next())
}

/// Minimal subquasigroups of every valid non-Netto pair match a coset form,
/// and the automorphism group is 2-transitive exactly in the medial, twisted
/// and Fano cases.
pub fn check_substructure(f: &FiniteField, aut_cap: u128) -> Check {
    let q = f.order();
    let failures: Vec<String> = valid_pairs(f)
        .par_iter()
        .filter_map(|&(a, b)| {
            if !is_netto_params(f, a, b) {
                let descs = minimal_subquasigroups(f, a, b).unwrap();
                for d in &descs {
                    if d.form.is_none() {
                        return Some(format!(
                            "({a},{b}): no coset form for {:?}",
                            d.elements
                        ));
                    }
                }
            }
            let desc = aut_descriptor(f, a, b).unwrap();
            let elems = match aut_elements(f, a, b, aut_cap) {
                Ok(e) => e,
                Err(e) => return Some(format!("({a},{b}): {e}")),
            };
            let expect = !matches!(desc.case, AutCase::Generic);
            if is_two_transitive(q as usize, &elems) != expect {
                return Some(format!("({a},{b}): 2-transitivity mismatch"));
            }
            None
        })
        .collect();
    Check::from("substructure-and-2-transitivity", q, failures.into_iter().next())
}

/// Group-isotopy certificates: medial pairs get the affine form, non-medial
/// pairs a quadrangle violation re-verified against the table; for `q > 9`
/// the character-run witness satisfies its defining predicate.
pub fn check_certificates(f: &FiniteField) -> Check {
    let q = f.order();
    let mut first = None;
    if q > 9 {
        match find_character_run_witness(f) {
            Ok((u, v)) => {
                let ok = f.chi(u) == -1
                    && f.chi(f.add(u, 1)) == -1
                    && f.chi(f.sub(u, 1)) == -1
                    && f.chi(v) == -1
                    && f.chi(f.add(v, 1)) == -1
                    && f.chi(f.sub(v, 1)) == 1;
                if !ok {
                    first = Some(format!("witness ({u},{v}) fails its predicate"));
                }
            }
            Err(e) => first = Some(format!("witness search failed: {e}")),
        }
    }
    if first.is_none() {
        let failures: Vec<String> = valid_pairs(f)
            .par_iter()
            .filter_map(|&(a, b)| {
                let table = build_quadratic(f, a, b).unwrap();
                match group_isotopy_certificate(f, a, b) {
                    Ok(IsotopyCertificate::Isotopic { .. }) if a == b => None,
                    Ok(IsotopyCertificate::NotIsotopic(quad)) if a != b => {
                        if quad.violates(&table) {
                            None
                        } else {
                            Some(format!("({a},{b}): quadrangle does not violate"))
                        }
                    }
                    other => Some(format!("({a},{b}): unexpected certificate {other:?}")),
                }
            })
            .collect();
        first = failures.into_iter().next();
    }
    Check::from("group-isotopy-certificates", q, first)
}

/// Runs the whole matrix for the configured sweep.
pub fn run(cfg: &VerifyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for (p, k) in default_orders(cfg.max_q) {
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order();
        checks.push(check_eq2(&f));
        checks.push(check_iso_equivalence(&f));
        checks.push(check_aut_orders(&f));
        checks.push(check_variety_flags(&f, false));
        checks.push(check_basic_properties(&f, q <= 13));
        if matches!(q, 9 | 25 | 27) {
            checks.push(check_substructure(&f, cfg.aut_cap));
        }
        if matches!(q, 7 | 9 | 11 | 13 | 25 | 27) {
            checks.push(check_certificates(&f));
        }
        if f.sqrt_order().is_some() {
            checks.push(check_nearfield(&f));
        }
    }
    if cfg.max_q >= 49 || cfg.extended_laws {
        let f49 = FiniteField::new(7, 2).unwrap();
        checks.push(check_variety_flags(&f49, true));
        checks.push(check_basic_properties(&f49, false));
        checks.push(check_certificates(&f49));
        checks.push(check_nearfield(&f49));
    }
    checks.push(check_netto_existence());
    checks
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

//! `quadqg`: build, classify and compare quadratic quasigroups from the
//! command line. All reports are single JSON documents on stdout; Cayley
//! tables go to files (or stdout) as CSV or JSON.
//!
//! Exit codes: 0 success (for `iso`: isomorphic), 1 non-isomorphic,
//! 2 invalid field spec, 3 invalid parameters, 4 cap violation,
//! 5 formula/oracle disagreement (must never occur on a correct build).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use quadqg_cli::table_to_csv;
use quadqg_cli::verify::{self, VerifyConfig, DEFAULT_AUT_CAP};
use quadqg_core::classify::{classify_oracle, classify_params, netto_blocks, netto_params};
use quadqg_core::gf::{Elem, FiniteField};
use quadqg_core::iso::{
    aut_brute_force, aut_descriptor, aut_elements, class_representatives, iso_brute_force,
    iso_by_theorem, AutCase, Generators,
};
use quadqg_core::qgrp::{build_quadratic, validate_params, Quasigroup};

const EXIT_BAD_FIELD: u8 = 2;
const EXIT_BAD_PARAMS: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_DISAGREEMENT: u8 = 5;

/// Default table-order cap for brute-force oracles; override with QQ_CAP_N.
const DEFAULT_CAP_N: u64 = 64;

#[derive(Parser)]
#[command(name = "quadqg", version, about = "Quadratic quasigroups over odd finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic (odd prime)
    #[arg(long)]
    p: u64,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Monic irreducible modulus as comma-separated ascending coefficients
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a finite field
    Field(FieldArgs),
    /// Write the Cayley table of Q_{a,b}
    Build {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: Elem,
        #[arg(long)]
        b: Elem,
        /// Output format: csv or json
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Variety flags of Q_{a,b}
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: Elem,
        #[arg(long)]
        b: Elem,
        /// Also run the exhaustive law oracle and cross-check
        #[arg(long)]
        oracle: bool,
    },
    /// Decide Q_{a,b} ~ Q_{c,d}; exit 0 with a witness or 1
    Iso {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: Elem,
        #[arg(long)]
        b: Elem,
        #[arg(long)]
        c: Elem,
        #[arg(long)]
        d: Elem,
        /// Cross-check against the backtracking oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Automorphism group descriptor of Q_{a,b}
    Aut {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: Elem,
        #[arg(long)]
        b: Elem,
        /// Cross-check the order against the backtracking oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Isomorphism class representatives among valid parameter pairs
    Classes {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Netto parameters and Steiner blocks of the field, when they exist
    Netto {
        #[command(flatten)]
        field: FieldArgs,
        /// Output format: json, or text (one block of three codes per line)
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run the formula-vs-oracle cross-check matrix
    Verify {
        /// Largest field order from the sweep set {3,5,7,9,11,13,25,27}
        #[arg(long, default_value_t = 27)]
        max_q: u64,
        /// Extend the 2-variable law oracles to q = 49
        #[arg(long)]
        extended_laws: bool,
        /// Worker threads (defaults to all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn cap_n() -> u64 {
    std::env::var("QQ_CAP_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP_N)
}

fn open_field(args: &FieldArgs) -> Result<FiniteField, ExitCode> {
    let built = match &args.modulus {
        Some(m) => {
            let coeffs: Result<Vec<u64>, _> =
                m.split(',').map(|c| c.trim().parse::<u64>()).collect();
            match coeffs {
                Ok(c) => FiniteField::with_modulus(args.p, args.k, &c),
                Err(_) => {
                    eprintln!("error: modulus must be comma-separated integers");
                    return Err(ExitCode::from(EXIT_BAD_FIELD));
                }
            }
        }
        None => FiniteField::new(args.p, args.k),
    };
    built.map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_BAD_FIELD)
    })
}

fn checked_params(f: &FiniteField, a: Elem, b: Elem) -> Result<(), ExitCode> {
    if a >= f.order() || b >= f.order() {
        eprintln!("error: parameter code out of range [0, {})", f.order());
        return Err(ExitCode::from(EXIT_BAD_PARAMS));
    }
    validate_params(f, a, b).map_err(|e| {
        eprintln!("error: invalid parameters: {e}");
        ExitCode::from(EXIT_BAD_PARAMS)
    })
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn flags_json(flags: &quadqg_core::classify::VarietyFlags) -> serde_json::Value {
    json!({
        "commutative": flags.commutative,
        "flexible": flags.flexible,
        "group_isotopic": flags.group_isotopic,
        "left_distributive": flags.left_distributive,
        "medial": flags.medial,
        "netto": flags.netto,
        "right_distributive": flags.right_distributive,
        "semisymmetric": flags.semisymmetric,
        "steiner": flags.steiner,
    })
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Field(args) => cmd_field(&args),
        Cmd::Build {
            field,
            a,
            b,
            format,
            out,
        } => cmd_build(&field, a, b, &format, out.as_deref()),
        Cmd::Classify { field, a, b, oracle } => cmd_classify(&field, a, b, oracle),
        Cmd::Iso {
            field,
            a,
            b,
            c,
            d,
            oracle,
        } => cmd_iso(&field, a, b, c, d, oracle),
        Cmd::Aut { field, a, b, oracle } => cmd_aut(&field, a, b, oracle),
        Cmd::Classes { field } => cmd_classes(&field),
        Cmd::Netto { field, format } => cmd_netto(&field, &format),
        Cmd::Verify {
            max_q,
            extended_laws,
            jobs,
        } => cmd_verify(max_q, extended_laws, jobs),
    }
}

fn cmd_field(args: &FieldArgs) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let squares = (1..f.order()).filter(|&x| f.chi(x) == 1).count();
    print_json(&json!({
        "canonical_nonsquare": f.canonical_nonsquare(),
        "k": f.k(),
        "modulus": f.modulus(),
        "nonzero_squares": squares,
        "p": f.p(),
        "q": f.order(),
    }));
    ExitCode::SUCCESS
}

fn cmd_build(args: &FieldArgs, a: Elem, b: Elem, format: &str, out: Option<&str>) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    if let Err(e) = checked_params(&f, a, b) {
        return e;
    }
    let table = build_quadratic(&f, a, b).expect("validated");
    let payload = match format {
        "csv" => table_to_csv(&table),
        "json" => serde_json::to_string_pretty(&json!({
            "n": table.n(),
            "table": rows(&table),
        }))
        .expect("serializable")
            + "\n",
        other => {
            eprintln!("error: unknown format {other}");
            return ExitCode::from(EXIT_BAD_PARAMS);
        }
    };
    match out {
        None => print!("{payload}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, payload) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}

fn rows(q: &Quasigroup) -> Vec<Vec<u32>> {
    (0..q.n() as u32)
        .map(|r| (0..q.n() as u32).map(|c| q.op(r, c)).collect())
        .collect()
}

fn cmd_classify(args: &FieldArgs, a: Elem, b: Elem, oracle: bool) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    if let Err(e) = checked_params(&f, a, b) {
        return e;
    }
    let formula = classify_params(&f, a, b).expect("validated");
    let mut doc = json!({
        "a": a,
        "b": b,
        "flags": flags_json(&formula),
        "q": f.order(),
    });
    if oracle {
        if f.order() > cap_n() {
            eprintln!("error: oracle cap exceeded (q={} > {})", f.order(), cap_n());
            return ExitCode::from(EXIT_CAP);
        }
        let oracle_flags = classify_oracle(&f, a, b).expect("validated");
        doc["oracle_flags"] = flags_json(&oracle_flags);
        let mut disagreement = formula;
        disagreement.provenance = oracle_flags.provenance;
        if disagreement != oracle_flags {
            print_json(&doc);
            eprintln!("error: formula/oracle disagreement at ({a},{b})");
            return ExitCode::from(EXIT_DISAGREEMENT);
        }
    }
    print_json(&doc);
    ExitCode::SUCCESS
}

fn cmd_iso(args: &FieldArgs, a: Elem, b: Elem, c: Elem, d: Elem, oracle: bool) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    if let Err(e) = checked_params(&f, a, b).and_then(|_| checked_params(&f, c, d)) {
        return e;
    }
    let witness = iso_by_theorem(&f, a, b, c, d).expect("validated");
    if oracle {
        if f.order() > cap_n() {
            eprintln!("error: oracle cap exceeded (q={} > {})", f.order(), cap_n());
            return ExitCode::from(EXIT_CAP);
        }
        let q1 = build_quadratic(&f, a, b).expect("validated");
        let q2 = build_quadratic(&f, c, d).expect("validated");
        let brute = iso_brute_force(&q1, &q2).is_some();
        if brute != witness.is_some() {
            eprintln!(
                "error: formula/oracle disagreement: theorem={} oracle={brute}",
                witness.is_some()
            );
            return ExitCode::from(EXIT_DISAGREEMENT);
        }
    }
    match witness {
        Some(w) => {
            print_json(&json!({
                "frob": w.frob,
                "isomorphic": true,
                "permutation": w.permutation,
                "swap": w.swap,
            }));
            ExitCode::SUCCESS
        }
        None => {
            println!("non-isomorphic");
            ExitCode::FAILURE
        }
    }
}

fn cmd_aut(args: &FieldArgs, a: Elem, b: Elem, oracle: bool) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    if let Err(e) = checked_params(&f, a, b) {
        return e;
    }
    let desc = aut_descriptor(&f, a, b).expect("validated");
    let case = match desc.case {
        AutCase::Fano => "fano",
        AutCase::Medial => "medial",
        AutCase::Twisted => "twisted",
        AutCase::Generic => "generic",
    };
    let generators: Vec<serde_json::Value> = match &desc.generators {
        Generators::Semilinear(gens) => gens
            .iter()
            .map(|g| {
                let (aj, bj) = (f.frobenius(a, g.frob), f.frobenius(b, g.frob));
                let twist = a != b && (aj, bj) == (b, a) && f.chi(g.lambda) == -1;
                json!({
                    "frob": g.frob,
                    "lambda": g.lambda,
                    "mu": g.mu,
                    "twist": twist,
                })
            })
            .collect(),
        Generators::Linear { .. } | Generators::Permutations(_) => Vec::new(),
    };
    let mut doc = json!({
        "K": { "m": desc.subfield_degree, "p": f.p() },
        "case": case,
        "generators": generators,
        "order": desc.order.to_string(),
    });
    if let Generators::Linear {
        subfield_order,
        dimension,
    } = desc.generators
    {
        doc["linear"] = json!({ "dimension": dimension, "subfield_order": subfield_order });
    }
    if oracle {
        if f.order() > cap_n() {
            eprintln!("error: oracle cap exceeded (q={} > {})", f.order(), cap_n());
            return ExitCode::from(EXIT_CAP);
        }
        let table = build_quadratic(&f, a, b).expect("validated");
        let brute = aut_brute_force(&table).len() as u128;
        doc["oracle_order"] = json!(brute.to_string());
        let enumerated = match aut_elements(&f, a, b, DEFAULT_AUT_CAP) {
            Ok(e) => e.len() as u128,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CAP);
            }
        };
        if brute != desc.order || enumerated != desc.order {
            print_json(&doc);
            eprintln!(
                "error: formula/oracle disagreement: descriptor={} oracle={brute} enumerated={enumerated}",
                desc.order
            );
            return ExitCode::from(EXIT_DISAGREEMENT);
        }
    }
    print_json(&doc);
    ExitCode::SUCCESS
}

fn cmd_classes(args: &FieldArgs) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let reps = class_representatives(&f);
    print_json(&json!({
        "count": reps.len(),
        "representatives": reps.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
    }));
    ExitCode::SUCCESS
}

fn cmd_netto(args: &FieldArgs, format: &str) -> ExitCode {
    let f = match open_field(args) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let params = netto_params(&f);
    let blocks = params.map(|(a, b)| netto_blocks(&f, a, b).expect("netto params are Steiner"));
    match format {
        "text" => {
            for block in blocks.iter().flatten() {
                println!("{} {} {}", block[0], block[1], block[2]);
            }
        }
        "json" => {
            print_json(&json!({
                "blocks": blocks,
                "params": params.map(|(a, b)| vec![a, b]),
                "q": f.order(),
            }));
        }
        other => {
            eprintln!("error: unknown format {other}");
            return ExitCode::from(EXIT_BAD_PARAMS);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(max_q: u64, extended_laws: bool, jobs: Option<usize>) -> ExitCode {
    if let Some(n) = jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --jobs ignored");
        }
    }
    let cfg = VerifyConfig {
        max_q,
        extended_laws,
        aut_cap: DEFAULT_AUT_CAP,
    };
    let checks = verify::run(&cfg);
    let pass = verify::all_pass(&checks);
    print_json(&json!({
        "all_pass": pass,
        "checks": checks,
    }));
    if pass {
        ExitCode::SUCCESS
    } else {
        let first = checks.iter().find(|c| !c.pass).expect("a failing check");
        eprintln!(
            "error: formula/oracle disagreement in {} at q={}: {}",
            first.name, first.q, first.detail
        );
        ExitCode::from(EXIT_DISAGREEMENT)
    }
}

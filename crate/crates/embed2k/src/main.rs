//! Command-line front end: parse complexes and form specifications, run the
//! deciders, and emit JSON verdicts and cocycle dumps.
//!
//! Exit status: 0 for yes/true, 1 for no/false, 2 for unknown, and 64+ for
//! usage and input errors. Output on stdout is always a single JSON value;
//! diagnostics go to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use embed2k::cocycle::{
    intersection_data, van_kampen_trivial, Cocycle2, CocycleZ, CocycleSystem,
};
use embed2k::complex::{catalog, nonadjacent_pairs, SimplicialComplex};
use embed2k::decide::{
    decide_even_z2, decide_in_homotopy_class2, decide_in_homotopy_class_z, decide_z2,
    decide_z_form, min_rank_bruteforce, z2_rank, Decision, OracleBudget, Verdict, Z2Rank,
};
use embed2k::error::Error;
use embed2k::linalg::{FormSpec, FormType};
use num_bigint::BigInt;

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_UNKNOWN: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;
const EXIT_NOINPUT: i32 = 66;
const EXIT_RING_MISMATCH: i32 = 67;
const EXIT_SIZE_CAP: i32 = 68;
const EXIT_INTERNAL: i32 = 70;

#[derive(Parser)]
#[command(
    name = "embed2k",
    about = "Exact Z2- and Z-embeddability deciders for k-complexes in 2k-manifolds",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    Even,
    Odd,
}

impl From<TypeArg> for FormType {
    fn from(t: TypeArg) -> FormType {
        match t {
            TypeArg::Even => FormType::Even,
            TypeArg::Odd => FormType::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z2,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the intersection cocycle class into R^2k is trivial.
    Vk {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_witness: bool,
    },
    /// Dump the intersection cocycle in canonical pair order.
    Cocycle {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long, value_enum, default_value = "z2")]
        ring: RingArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide Z2-embeddability against a form of given rank and type.
    DecideZ2 {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long)]
        rank: usize,
        #[arg(long = "type", value_enum)]
        form_type: TypeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_witness: bool,
    },
    /// Decide even Z2-embeddability (every cycle class with zero
    /// self-intersection).
    DecideEvenZ2 {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long)]
        rank: usize,
        #[arg(long = "type", value_enum)]
        form_type: TypeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_witness: bool,
    },
    /// Minimal form rank over both types admitting a Z2-embedding.
    Z2Rank {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bounded search for a Z-embedding against an integer form.
    DecideZ {
        #[arg(required = true)]
        complex: Vec<String>,
        /// Form as inline JSON or a file path.
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_witness: bool,
    },
    /// Is a given cocycle a coboundary (Z2- or Z-embedding within the
    /// homotopy class of a map realizing it)?
    HomotopyClass {
        #[arg(required = true)]
        complex: Vec<String>,
        /// Cocycle values in canonical pair order: inline JSON array or file.
        #[arg(long)]
        cocycle: String,
        #[arg(long, value_enum, default_value = "z2")]
        ring: RingArg,
        #[arg(long)]
        json_witness: bool,
    },
    /// Matrix-side minimum-rank oracle (independent of the decider).
    OracleMinrank {
        #[arg(required = true)]
        complex: Vec<String>,
        #[arg(long = "type", value_enum)]
        form_type: TypeArg,
        /// Log2 of the enumeration budget.
        #[arg(long, default_value_t = 19)]
        size_cap: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the bundled instance suite and print a pass/fail table.
    Selftest,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Io(e) if e.kind() == std::io::ErrorKind::NotFound => EXIT_NOINPUT,
        Error::Io(_) => EXIT_NOINPUT,
        Error::Parse(_)
        | Error::FaceArity(..)
        | Error::DuplicateVertex(_)
        | Error::Json(_)
        | Error::NotSuperSymmetric(_)
        | Error::NotACycle { .. }
        | Error::NotSymmetric
        | Error::NotSkewSymmetric
        | Error::RankNotOne(_)
        | Error::NonSquareDiagonal(_) => EXIT_DATA,
        Error::InvalidForm(_) | Error::DimensionMismatch(_) => EXIT_RING_MISMATCH,
        Error::SizeCapExceeded(..) => EXIT_SIZE_CAP,
        Error::DegenerateConfiguration(_)
        | Error::GeneralPositionUnavailable(_)
        | Error::NonUnitHat { .. }
        | Error::Internal(_) => EXIT_INTERNAL,
    }
}

fn fail(err: Error) -> ! {
    let code = exit_code_for(&err);
    println!(
        "{}",
        json!({"error": {"code": code, "message": err.to_string()}})
    );
    eprintln!("error: {err}");
    std::process::exit(code);
}

/// Load one or more complex files; several files are combined by disjoint
/// union (labels of later files are shifted).
fn load_complex(paths: &[String]) -> SimplicialComplex {
    let mut out: Option<SimplicialComplex> = None;
    for path in paths {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => fail(Error::Io(e)),
        };
        let c = match SimplicialComplex::parse(&text) {
            Ok(c) => c,
            Err(e) => fail(e),
        };
        out = Some(match out {
            None => c,
            Some(acc) => match acc.disjoint_union(&c) {
                Ok(u) => u,
                Err(e) => fail(e),
            },
        });
    }
    out.expect("at least one path is required")
}

fn load_json_arg(arg: &str) -> serde_json::Value {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        match std::fs::read_to_string(arg) {
            Ok(t) => t,
            Err(e) => fail(Error::Io(e)),
        }
    };
    match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => fail(Error::Json(e)),
    }
}

fn decision_exit(d: &Decision) -> i32 {
    match d.verdict {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn print_decision(command: &str, mut d: Decision, json_witness: bool) -> ! {
    if !json_witness {
        d.witness = None;
    }
    let mut v = serde_json::to_value(&d).expect("decision serializes");
    v["command"] = json!(command);
    println!("{v}");
    std::process::exit(decision_exit(&d));
}

fn pairs_json(complex: &SimplicialComplex) -> serde_json::Value {
    json!(nonadjacent_pairs(complex)
        .iter()
        .map(|(a, b)| json!([a.vertices(), b.vertices()]))
        .collect::<Vec<_>>())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; keep stdout JSON-valid.
            println!(
                "{}",
                json!({"error": {"code": EXIT_USAGE, "message": e.to_string()}})
            );
            eprintln!("{e}");
            std::process::exit(EXIT_USAGE);
        }
    };
    match cli.command {
        Command::Vk { complex, seed, json_witness } => {
            let c = load_complex(&complex);
            let _ = seed; // the class is seed-independent; the default map is used
            match van_kampen_trivial(&c) {
                Ok((trivial, witness)) => {
                    let mut out = json!({"command": "vk", "trivial": trivial});
                    if json_witness {
                        if let Some(w) = witness {
                            out["witness"] = json!(w
                                .terms
                                .iter()
                                .map(|(a, s)| json!([a.vertices(), s.vertices()]))
                                .collect::<Vec<_>>());
                        }
                    }
                    println!("{out}");
                    std::process::exit(if trivial { EXIT_YES } else { EXIT_NO });
                }
                Err(e) => fail(e),
            }
        }
        Command::Cocycle { complex, ring, seed } => {
            let c = load_complex(&complex);
            match (ring, intersection_data(&c, seed)) {
                (_, Err(e)) => fail(e),
                (RingArg::Z2, Ok((nu, _))) => {
                    println!(
                        "{}",
                        json!({
                            "command": "cocycle",
                            "ring": "Z2",
                            "seed": seed,
                            "pairs": pairs_json(&c),
                            "values": nu.values(),
                        })
                    );
                    std::process::exit(EXIT_YES);
                }
                (RingArg::Z, Ok((_, nuz))) => {
                    let values: Vec<i64> = nuz
                        .values()
                        .iter()
                        .map(|v| i64::try_from(v.clone()).expect("small"))
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "command": "cocycle",
                            "ring": "Z",
                            "seed": seed,
                            "pairs": pairs_json(&c),
                            "values": values,
                        })
                    );
                    std::process::exit(EXIT_YES);
                }
            }
        }
        Command::DecideZ2 { complex, rank, form_type, seed, json_witness } => {
            let c = load_complex(&complex);
            match decide_z2(&c, rank, form_type.into(), seed) {
                Ok(d) => print_decision("decide-z2", d, json_witness),
                Err(e) => fail(e),
            }
        }
        Command::DecideEvenZ2 { complex, rank, form_type, seed, json_witness } => {
            let c = load_complex(&complex);
            match decide_even_z2(&c, rank, form_type.into(), seed) {
                Ok(d) => print_decision("decide-even-z2", d, json_witness),
                Err(e) => fail(e),
            }
        }
        Command::Z2Rank { complex, cap, seed } => {
            let c = load_complex(&complex);
            match z2_rank(&c, cap, seed) {
                Ok(Z2Rank::Known { rank, form_type }) => {
                    println!(
                        "{}",
                        json!({
                            "command": "z2-rank",
                            "rank": rank,
                            "type": match form_type { FormType::Even => "even", FormType::Odd => "odd" },
                        })
                    );
                    std::process::exit(EXIT_YES);
                }
                Ok(Z2Rank::Unknown { searched_up_to }) => {
                    println!(
                        "{}",
                        json!({"command": "z2-rank", "verdict": "unknown", "searched_up_to": searched_up_to})
                    );
                    std::process::exit(EXIT_UNKNOWN);
                }
                Err(e) => fail(e),
            }
        }
        Command::DecideZ { complex, form, bound, seed, json_witness } => {
            let c = load_complex(&complex);
            let form_value = load_json_arg(&form);
            let spec = match FormSpec::from_json(&form_value) {
                Ok(s) => s,
                Err(e) => fail(e),
            };
            if spec.is_z2() {
                fail(Error::InvalidForm(
                    "decide-z needs a Z form; use decide-z2 for Z2 forms".into(),
                ));
            }
            match decide_z_form(&c, &spec, bound, seed) {
                Ok(d) => print_decision("decide-z", d, json_witness),
                Err(e) => fail(e),
            }
        }
        Command::HomotopyClass { complex, cocycle, ring, json_witness } => {
            let c = load_complex(&complex);
            let value = load_json_arg(&cocycle);
            let arr = match value.as_array() {
                Some(a) => a.clone(),
                None => fail(Error::Parse("cocycle must be a JSON array".into())),
            };
            let system = match CocycleSystem::new(&c) {
                Ok(s) => s,
                Err(e) => fail(e),
            };
            if arr.len() != system.pairs().len() {
                fail(Error::DimensionMismatch(format!(
                    "cocycle has {} entries, the complex has {} nonadjacent pairs",
                    arr.len(),
                    system.pairs().len()
                )));
            }
            let (embeddable, witness_json) = match ring {
                RingArg::Z2 => {
                    let vals: Option<Vec<u8>> =
                        arr.iter().map(|v| v.as_u64().map(|x| (x % 2) as u8)).collect();
                    let Some(vals) = vals else {
                        fail(Error::Parse("cocycle entries must be 0 or 1".into()))
                    };
                    let nu = Cocycle2::from_values(&vals);
                    match decide_in_homotopy_class2(&c, &nu) {
                        Ok((b, w)) => (
                            b,
                            w.map(|w| {
                                json!(w
                                    .terms
                                    .iter()
                                    .map(|(a, s)| json!([a.vertices(), s.vertices()]))
                                    .collect::<Vec<_>>())
                            }),
                        ),
                        Err(e) => fail(e),
                    }
                }
                RingArg::Z => {
                    let vals: Option<Vec<BigInt>> =
                        arr.iter().map(|v| v.as_i64().map(BigInt::from)).collect();
                    let Some(vals) = vals else {
                        fail(Error::Parse("cocycle entries must be integers".into()))
                    };
                    let nu = CocycleZ::new(c.k(), vals);
                    match decide_in_homotopy_class_z(&c, &nu) {
                        Ok((b, w)) => (
                            b,
                            w.map(|w| {
                                json!(w
                                    .terms
                                    .iter()
                                    .map(|(a, s, coeff)| json!([
                                        a.vertices(),
                                        s.vertices(),
                                        coeff.to_string()
                                    ]))
                                    .collect::<Vec<_>>())
                            }),
                        ),
                        Err(e) => fail(e),
                    }
                }
            };
            let mut out = json!({"command": "homotopy-class", "embeddable_in_class": embeddable});
            if json_witness {
                if let Some(w) = witness_json {
                    out["witness"] = w;
                }
            }
            println!("{out}");
            std::process::exit(if embeddable { EXIT_YES } else { EXIT_NO });
        }
        Command::OracleMinrank { complex, form_type, size_cap, seed } => {
            let c = load_complex(&complex);
            let budget = OracleBudget {
                literal: 1u64 << size_cap.min(62),
                subspaces: 1u64 << size_cap.min(62),
            };
            match min_rank_bruteforce(&c, form_type.into(), budget, seed) {
                Ok(rank) => {
                    println!(
                        "{}",
                        json!({"command": "oracle-minrank", "min_rank": rank})
                    );
                    std::process::exit(EXIT_YES);
                }
                Err(e) => fail(e),
            }
        }
        Command::Selftest => selftest(),
    }
}

fn selftest() -> ! {
    struct Case {
        name: &'static str,
        pass: bool,
    }
    let mut cases: Vec<Case> = Vec::new();
    let mut run = |name: &'static str, f: &dyn Fn() -> bool| {
        let pass = f();
        eprintln!("{} {}", if pass { "PASS" } else { "FAIL" }, name);
        cases.push(Case { name, pass });
    };

    let k4 = catalog::complete_graph(4);
    let k5 = catalog::complete_graph(5);
    let k33 = catalog::complete_bipartite(3, 3);
    let d6 = catalog::deleted_simplex(2);
    let two_k5 = k5.disjoint_union(&k5).unwrap();

    run("vk(K4) trivial", &|| van_kampen_trivial(&k4).map(|r| r.0).unwrap_or(false));
    run("vk(K5) non-trivial", &|| van_kampen_trivial(&k5).map(|r| !r.0).unwrap_or(false));
    run("vk(K33) non-trivial", &|| van_kampen_trivial(&k33).map(|r| !r.0).unwrap_or(false));
    run("vk(2-skeleton of 6-simplex) non-trivial", &|| {
        van_kampen_trivial(&d6).map(|r| !r.0).unwrap_or(false)
    });
    run("decide-z2 K5 rank 0 even: no", &|| {
        decide_z2(&k5, 0, FormType::Even, 0).map(|d| d.is_no()).unwrap_or(false)
    });
    run("decide-z2 K5 rank 1 odd: yes", &|| {
        decide_z2(&k5, 1, FormType::Odd, 0).map(|d| d.is_yes()).unwrap_or(false)
    });
    run("decide-z2 K5 rank 2 even: yes", &|| {
        decide_z2(&k5, 2, FormType::Even, 0).map(|d| d.is_yes()).unwrap_or(false)
    });
    run("z2-rank K5 = 1 (odd)", &|| {
        matches!(z2_rank(&k5, None, 0), Ok(Z2Rank::Known { rank: 1, form_type: FormType::Odd }))
    });
    run("decide-z2 K5+K5 rank 2 even: no", &|| {
        decide_z2(&two_k5, 2, FormType::Even, 0).map(|d| d.is_no()).unwrap_or(false)
    });
    run("z2-rank K5+K5 = 2", &|| {
        matches!(z2_rank(&two_k5, None, 0), Ok(Z2Rank::Known { rank: 2, .. }))
    });
    run("decide-z K5 symplectic g=1 bound 1: yes", &|| {
        decide_z_form(&k5, &FormSpec::Symplectic { g: 1 }, 1, 0)
            .map(|d| d.is_yes())
            .unwrap_or(false)
    });
    run("decide-z K5 symplectic g=0: no (mod 2)", &|| {
        decide_z_form(&k5, &FormSpec::Symplectic { g: 0 }, 1, 0)
            .map(|d| d.is_no() && d.certificate.as_deref() == Some("mod2-realizability"))
            .unwrap_or(false)
    });
    run("oracle minrank K5 odd = 1", &|| {
        min_rank_bruteforce(&k5, FormType::Odd, OracleBudget::default(), 0)
            .map(|r| r == 1)
            .unwrap_or(false)
    });

    let all = cases.iter().all(|c| c.pass);
    println!(
        "{}",
        json!({
            "command": "selftest",
            "results": cases.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect::<Vec<_>>(),
            "all_pass": all,
        })
    );
    std::process::exit(if all { EXIT_YES } else { EXIT_NO });
}

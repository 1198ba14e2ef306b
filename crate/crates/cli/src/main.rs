//! `jcalc`: free-group word arithmetic, Fox calculus, Magnus representation
//! matrices, lower-central-series computations, Johnson homomorphisms, the
//! boundary-word certificate, and acyclic-system solving, on files and inline
//! arguments.
//!
//! Exit codes: 0 on success, 1 on domain errors (precondition failures),
//! 2 on usage or parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jcalc_core::acyclic::AcyclicSystem;
use jcalc_core::groupring::{GRMatrix, GroupRingElem, LaurentPoly};
use jcalc_core::johnson::{johnson, refined_johnson};
use jcalc_core::magnus::{lcs_degree, lie_coordinates, LieVector, TruncSeries};
use jcalc_core::nilpotent::phi_k;
use jcalc_core::words::{parse_endomorphism_file, parse_word, Endomorphism, ReducedWord};
use jcalc_core::{automorphism_obstruction, fox_derivative, is_two_connected, magnus_rep};

#[derive(Parser)]
#[command(
    name = "jcalc",
    version,
    about = "Calculator for free-group endomorphisms: Fox calculus, Magnus expansions, Johnson homomorphisms, nilpotent quotients and acyclic systems"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and reduce a word, printing its canonical form
    Parse {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: usize,
    },
    /// Apply an endomorphism to a word
    Apply {
        #[arg(long)]
        endo: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Compose two endomorphisms (first applied last)
    Compose {
        /// Endomorphism files; pass --endo twice
        #[arg(long = "endo", required = true, num_args = 1)]
        endos: Vec<PathBuf>,
    },
    /// Fox derivatives of a word with respect to every generator
    Fox {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: usize,
    },
    /// The Magnus representation matrix of an endomorphism
    MagnusRep {
        #[arg(long)]
        endo: PathBuf,
    },
    /// Abelianized determinant of the representation matrix, with the
    /// unit verdict and augmentation
    AbelianDet {
        #[arg(long)]
        endo: PathBuf,
    },
    /// Whether the endomorphism is 2-connected (unimodular abelianization)
    TwoConnected {
        #[arg(long)]
        endo: PathBuf,
    },
    /// Lower-central-series degree of a word under a truncation bound
    LcsDegree {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Lyndon-basis coordinates of a word in Gamma^k / Gamma^{k+1}
    LieCoords {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: usize,
        #[arg(short)]
        k: usize,
    },
    /// Johnson value of an endomorphism at level k
    Johnson {
        #[arg(long)]
        endo: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Refined Johnson value (coset series modulo Gamma^{2k-1})
    RefinedJohnson {
        #[arg(long)]
        endo: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// The automorphism of N_k induced by a 2-connected endomorphism
    Phi {
        #[arg(long)]
        endo: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Boundary-word certificate: does the stored lift fix the boundary
    /// word modulo Gamma^{k+1}?
    Aut0 {
        #[arg(long)]
        endo: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        g: usize,
    },
    /// Solve an acyclic system file over a free nilpotent coefficient group
    SolveAcyclic {
        file: PathBuf,
        /// Also re-run the iteration from this many random seeds
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Witt rank (and optionally the Lyndon words) at a given degree
    Witt {
        #[arg(long)]
        rank: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        list: bool,
    },
    /// Run the built-in golden example suite
    Selftest,
}

enum CliError {
    Core(jcalc_core::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    SelftestFailed(usize),
}

impl From<jcalc_core::Error> for CliError {
    fn from(e: jcalc_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn read_endo(path: &Path) -> Result<Endomorphism, CliError> {
    Ok(parse_endomorphism_file(&read_file(path)?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command, format) {
        Ok(code) => code,
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            if e.is_syntax() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Io(path, e)) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::SelftestFailed(n)) => {
            eprintln!("selftest: {n} check(s) failed");
            ExitCode::from(1)
        }
    }
}

fn emit(
    format: Format,
    verb: &str,
    inputs: Value,
    text: String,
    result: Value,
    diagnostics: Vec<String>,
) {
    match format {
        Format::Text => {
            print!("{text}");
            if !text.ends_with('\n') && !text.is_empty() {
                println!();
            }
            for d in &diagnostics {
                println!("note: {d}");
            }
        }
        Format::Structured => {
            let doc = json!({
                "verb": verb,
                "inputs": inputs,
                "result": result,
                "diagnostics": diagnostics,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
}

fn word_json(w: &ReducedWord) -> Value {
    json!({
        "rank": w.rank(),
        "text": w.to_string(),
        "letters": w.letters().iter().map(|l| json!([l.gen(), l.sign()])).collect::<Vec<_>>(),
    })
}

fn group_ring_json(e: &GroupRingElem) -> Value {
    json!(e
        .terms()
        .map(|(w, c)| json!({"coeff": c.to_string(), "word": w.to_string()}))
        .collect::<Vec<_>>())
}

fn laurent_json(p: &LaurentPoly) -> Value {
    json!(p
        .terms()
        .map(|(e, c)| json!({"coeff": c.to_string(), "exponents": e}))
        .collect::<Vec<_>>())
}

fn gr_matrix_json(m: &GRMatrix) -> Value {
    json!((1..=m.rows())
        .map(|i| (1..=m.cols())
            .map(|j| group_ring_json(m.entry(i, j)))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn series_json(s: &TruncSeries) -> Value {
    json!({
        "bound": s.bound(),
        "terms": s.terms().map(|(m, c)| json!({"monomial": m.0, "coeff": c.to_string()})).collect::<Vec<_>>(),
    })
}

fn lie_vector_json(v: &LieVector) -> Value {
    json!({
        "degree": v.degree(),
        "lyndon_words": jcalc_core::lyndon_words(v.rank(), v.degree()).expect("valid"),
        "coords": v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn run(command: Command, format: Format) -> Result<ExitCode, CliError> {
    match command {
        Command::Parse { word, rank } => {
            let parsed = parse_word(&word, rank)?;
            emit(
                format,
                "parse",
                json!({"word": word, "rank": rank}),
                format!("{parsed}\n"),
                word_json(&parsed),
                vec![],
            );
        }
        Command::Apply { endo, word } => {
            let phi = read_endo(&endo)?;
            let parsed = parse_word(&word, phi.rank())?;
            let image = phi.apply(&parsed)?;
            emit(
                format,
                "apply",
                json!({"endo": endo.display().to_string(), "word": word}),
                format!("{image}\n"),
                word_json(&image),
                vec![],
            );
        }
        Command::Compose { endos } => {
            if endos.len() != 2 {
                return Err(CliError::Usage(format!(
                    "compose takes exactly two --endo files, got {}",
                    endos.len()
                )));
            }
            let phi = read_endo(&endos[0])?;
            let psi = read_endo(&endos[1])?;
            let composite = phi.compose(&psi)?;
            emit(
                format,
                "compose",
                json!({"endo": [endos[0].display().to_string(), endos[1].display().to_string()]}),
                composite.to_string(),
                json!(composite
                    .images()
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()),
                vec![],
            );
        }
        Command::Fox { word, rank } => {
            let parsed = parse_word(&word, rank)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in 1..=rank {
                let d = fox_derivative(&parsed, i)?;
                writeln!(text, "d/dx{i}: {d}").expect("string write");
                rows.push(group_ring_json(&d));
            }
            emit(
                format,
                "fox",
                json!({"word": word, "rank": rank}),
                text,
                json!(rows),
                vec![],
            );
        }
        Command::MagnusRep { endo } => {
            let phi = read_endo(&endo)?;
            let r = magnus_rep(&phi)?;
            emit(
                format,
                "magnus-rep",
                json!({"endo": endo.display().to_string()}),
                r.to_string(),
                gr_matrix_json(r.matrix()),
                vec![],
            );
        }
        Command::AbelianDet { endo } => {
            let phi = read_endo(&endo)?;
            let o = automorphism_obstruction(&phi)?;
            let text = format!("det = {}\nverdict: {}\n", o.det, o.verdict());
            emit(
                format,
                "abelian-det",
                json!({"endo": endo.display().to_string()}),
                text,
                json!({
                    "det": laurent_json(&o.det),
                    "unit": o.unit,
                    "augmentation": o.augmentation.to_string(),
                    "verdict": o.verdict(),
                }),
                vec![],
            );
        }
        Command::TwoConnected { endo } => {
            let phi = read_endo(&endo)?;
            let (ok, det) = is_two_connected(&phi);
            emit(
                format,
                "two-connected",
                json!({"endo": endo.display().to_string()}),
                format!("two-connected: {ok} (abelianization det = {det})\n"),
                json!({"two_connected": ok, "det": det.to_string()}),
                vec![],
            );
        }
        Command::LcsDegree { word, rank, bound } => {
            let parsed = parse_word(&word, rank)?;
            let deg = lcs_degree(&parsed, bound)?;
            emit(
                format,
                "lcs-degree",
                json!({"word": word, "rank": rank, "bound": bound}),
                format!("degree: {deg}\n"),
                json!({"degree": deg.to_string()}),
                vec![],
            );
        }
        Command::LieCoords { word, rank, k } => {
            let parsed = parse_word(&word, rank)?;
            let v = lie_coordinates(&parsed, k)?;
            emit(
                format,
                "lie-coords",
                json!({"word": word, "rank": rank, "k": k}),
                format!("{v}\n"),
                lie_vector_json(&v),
                vec![],
            );
        }
        Command::Johnson { endo, k } => {
            let phi = read_endo(&endo)?;
            let j = johnson(&phi, k)?;
            emit(
                format,
                "johnson",
                json!({"endo": endo.display().to_string(), "k": k}),
                j.to_string(),
                json!(j.values().iter().map(lie_vector_json).collect::<Vec<_>>()),
                vec![],
            );
        }
        Command::RefinedJohnson { endo, k } => {
            let phi = read_endo(&endo)?;
            let r = refined_johnson(&phi, k)?;
            emit(
                format,
                "refined-johnson",
                json!({"endo": endo.display().to_string(), "k": k}),
                r.to_string(),
                json!(r.cosets().iter().map(series_json).collect::<Vec<_>>()),
                vec![],
            );
        }
        Command::Phi { endo, k } => {
            let phi = read_endo(&endo)?;
            let a = phi_k(&phi, k)?;
            let identity = a.is_identity()?;
            emit(
                format,
                "phi",
                json!({"endo": endo.display().to_string(), "k": k}),
                a.to_file_string(),
                json!({
                    "k": k,
                    "images": a.lift().images().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "is_identity": identity,
                }),
                vec![],
            );
        }
        Command::Aut0 { endo, k, g } => {
            let phi = read_endo(&endo)?;
            let a = phi_k(&phi, k)?;
            let holds = a.boundary_certificate(g)?;
            let text = if holds {
                format!("certificate holds for the stored lift (k={k}, g={g})\n")
            } else {
                format!("certificate fails for this lift (k={k}, g={g})\n")
            };
            let diagnostics = if holds {
                vec![]
            } else {
                vec!["a failing certificate only speaks for this lift, not for the induced automorphism".to_string()]
            };
            emit(
                format,
                "aut0",
                json!({"endo": endo.display().to_string(), "k": k, "g": g}),
                text,
                json!({"certificate_holds": holds}),
                diagnostics,
            );
        }
        Command::SolveAcyclic { file, verify, seed } => {
            let sys = AcyclicSystem::parse_file(&read_file(&file)?)?;
            let sol = sys.solve()?;
            let mut text = sol.to_string();
            let mut verified = Value::Null;
            if let Some(trials) = verify {
                let ok = sys.verify_uniqueness(trials, seed)?;
                writeln!(
                    text,
                    "uniqueness: {} ({trials} seeds)",
                    if ok { "verified" } else { "FAILED" }
                )
                .expect("string write");
                verified = json!(ok);
            }
            emit(
                format,
                "solve-acyclic",
                json!({"file": file.display().to_string(), "verify": verify, "seed": seed}),
                text,
                json!({
                    "values": (1..=sol.values().len())
                        .map(|i| sol.value_string(i).expect("index in range"))
                        .collect::<Vec<_>>(),
                    "uniqueness_verified": verified,
                }),
                vec![],
            );
        }
        Command::Witt { rank, k, list } => {
            let count = jcalc_core::witt_rank(rank, k)?;
            let words = jcalc_core::lyndon_words(rank, k)?;
            let mut text = format!("witt({rank}, {k}) = {count}\n");
            if list {
                for l in &words {
                    let names: Vec<String> = l.iter().map(|i| format!("x{i}")).collect();
                    writeln!(text, "{}", names.join(" ")).expect("string write");
                }
            }
            emit(
                format,
                "witt",
                json!({"rank": rank, "k": k, "list": list}),
                text,
                json!({"rank": count, "lyndon_words": if list { json!(words) } else { Value::Null }}),
                vec![],
            );
        }
        Command::Selftest => {
            let (text, failures, results) = selftest();
            emit(format, "selftest", json!({}), text, json!(results), vec![]);
            if failures > 0 {
                return Err(CliError::SelftestFailed(failures));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The golden example suite: every check recomputes a worked value and
/// compares exactly.
fn selftest() -> (String, usize, Vec<Value>) {
    let mut text = String::new();
    let mut failures = 0usize;
    let mut results = Vec::new();
    let mut check = |name: &str, ok: bool, text: &mut String| {
        writeln!(text, "{} {name}", if ok { "ok  " } else { "FAIL" }).expect("string write");
        if !ok {
            failures += 1;
        }
        results.push(json!({"name": name, "ok": ok}));
    };

    let psi = Endomorphism::new(
        2,
        vec![
            parse_word("x1 x2 x1 x2^-1 x1^-1", 2).expect("fixture"),
            parse_word("x2", 2).expect("fixture"),
        ],
    )
    .expect("fixture");

    // representation matrix entries
    let ok = (|| {
        let r = magnus_rep(&psi).ok()?;
        let gw: fn(&str) -> Option<GroupRingElem> =
            |t| Some(GroupRingElem::from_word(parse_word(t, 2).ok()?));
        let e11 = GroupRingElem::one(2)
            .add(&gw("x2^-1 x1^-1")?)
            .ok()?
            .sub(&gw("x1 x2 x1^-1 x2^-1 x1^-1")?)
            .ok()?;
        let e21 = gw("x1^-1")?.sub(&gw("x2 x1^-1 x2^-1 x1^-1")?).ok()?;
        Some(
            r.entry(1, 1) == &e11
                && r.entry(2, 1) == &e21
                && r.entry(1, 2).is_zero()
                && r.entry(2, 2) == &GroupRingElem::one(2),
        )
    })()
    .unwrap_or(false);
    check(
        "magnus representation matrix of the running example",
        ok,
        &mut text,
    );

    // abelianized determinant
    let ok = (|| {
        let o = automorphism_obstruction(&psi).ok()?;
        let expected = LaurentPoly::one(2)
            .add(&LaurentPoly::monomial(vec![-1, -1], 1.into()))
            .ok()?
            .sub(&LaurentPoly::monomial(vec![-1, 0], 1.into()))
            .ok()?;
        Some(o.det == expected && !o.unit && o.augmentation == 1.into())
    })()
    .unwrap_or(false);
    check(
        "abelianized determinant is 1 + x1^-1 x2^-1 - x1^-1, not a unit",
        ok,
        &mut text,
    );

    // Johnson value
    let ok = (|| {
        let j = johnson(&psi, 2).ok()?;
        Some(
            j.value(1).ok()?.coords() == [num_bigint::BigInt::from(-1)]
                && j.value(2).ok()?.is_zero(),
        )
    })()
    .unwrap_or(false);
    check(
        "first Johnson value is -[x1,x2] on x1 and 0 on x2",
        ok,
        &mut text,
    );

    // acyclic system
    let ok = (|| {
        let sys = AcyclicSystem::parse_file(
            "vars m=2 coeff p=3 class=1\nx1 = g1 x1 g2 x2 x1^-1 x2^-1\nx2 = x1 g3 x1^-1\n",
        )
        .ok()?;
        let sol = sys.solve().ok()?;
        Some(sol.to_string() == "x1 = g1 g2\nx2 = g3\n" && sys.verify_uniqueness(20, 0).ok()?)
    })()
    .unwrap_or(false);
    check(
        "abelian acyclic system solves to x1 = g1 g2, x2 = g3",
        ok,
        &mut text,
    );

    // filtration and quotient behaviour of the running example
    let ok = (|| {
        let a2 = phi_k(&psi, 2).ok()?;
        let a3 = phi_k(&psi, 3).ok()?;
        Some(a2.is_identity().ok()? && !a3.is_identity().ok()?)
    })()
    .unwrap_or(false);
    check(
        "running example is trivial on N_2 and nontrivial on N_3",
        ok,
        &mut text,
    );

    // boundary words and Witt numbers
    let ok = (|| {
        let z1 = jcalc_core::boundary_word(1);
        let z2 = jcalc_core::boundary_word(2);
        Some(
            z1 == parse_word("[x1,x2]", 2).ok()?
                && z2 == parse_word("[x1,x3] [x2,x4]", 4).ok()?
                && jcalc_core::witt_rank(2, 3).ok()? == 2
                && jcalc_core::witt_rank(2, 4).ok()? == 3,
        )
    })()
    .unwrap_or(false);
    check("boundary words and Witt numbers", ok, &mut text);

    // Fox fundamental identity spot check
    let ok = (|| {
        let w = parse_word("[x1,[x2,x1]] x2^-3 x1", 2).ok()?;
        let mut acc = GroupRingElem::zero(2);
        for i in 1..=2 {
            let xi = GroupRingElem::from_word(ReducedWord::generator(2, i).ok()?);
            let f = xi.sub(&GroupRingElem::one(2)).ok()?;
            acc = acc.add(&fox_derivative(&w, i).ok()?.mul(&f).ok()?).ok()?;
        }
        let rhs = GroupRingElem::from_word(w)
            .sub(&GroupRingElem::one(2))
            .ok()?;
        Some(acc == rhs)
    })()
    .unwrap_or(false);
    check("fundamental identity of the free derivative", ok, &mut text);

    (text, failures, results)
}

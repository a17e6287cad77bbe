//! Command-line frontend. Every subcommand reads the module JSON schemas,
//! prints a single JSON report on stdout, and reserves stderr for
//! diagnostics. Reports are byte-identical for identical inputs; the
//! optional `--timing` field is the only nondeterministic output and is
//! off by default.
//!
//! Exit codes: 0 = success (including negative verdicts such as
//! `"verdict": "incomparable"` or `"holds": false`); 1 = domain error
//! (invalid input data) or a failed `verify` check; 2 = usage error.
//! `POSTORDER_THREADS` caps parallelism for pairwise comparisons.

use clap::{Parser, Subcommand};
use postorder::exact::{format_rational, parse_rational, Rational};
use postorder::gpt::cbit_embedding;
use postorder::gpt::Evm;
use postorder::json::{
    markov_from_rows, monotones_from_rows, monotones_to_rows,
    quantum_verdict_payload, realizer_from_labels, realizer_to_labels, verdict_payload, EnsembleDto,
    EvmDto, FloatPovmDto, PosetDto, PovmDto, QuantumEnsembleDto, SuperoperatorDto,
};
use postorder::poset::{
    check_embedding, induced_poset, order_dimension, order_monotone_dimension, standard_example,
    verify_main1, DimensionResult, FinitePoset,
};
use postorder::postproc::{compare, for_each_ensemble, pg, PostprocError};
use postorder::quantum::{
    markov_certifies, phi_from_blocks, qc_channel, qcompare, qpg, verify_factorization,
    QuantumEvm,
};
use serde_json::{json, Map, Value};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "postorder",
    version,
    about = "Exact post-processing order of measurements: comparison with certificates, \
             guessing probabilities, order dimension, and quantum channel pipelines"
)]
struct Cli {
    /// Append wall-clock milliseconds to the report (nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SpaceArg {
    Classical(usize),
    Quantum(usize),
}

impl FromStr for SpaceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, dim) = s
            .split_once(':')
            .ok_or_else(|| "expected classical:<d> or quantum:<d>".to_string())?;
        let dim: usize = dim
            .parse()
            .map_err(|_| format!("dimension {dim:?} is not a positive integer"))?;
        match kind {
            "classical" => Ok(SpaceArg::Classical(dim)),
            "quantum" => Ok(SpaceArg::Quantum(dim)),
            other => Err(format!("unknown space kind {other:?}")),
        }
    }
}

impl fmt::Display for SpaceArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceArg::Classical(d) => write!(f, "classical:{d}"),
            SpaceArg::Quantum(d) => write!(f, "quantum:{d}"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare two measurements in the post-processing order, with certificates.
    Compare {
        /// Expected state space (asserted against the files), e.g. classical:2.
        #[arg(long)]
        space: Option<SpaceArg>,
        /// Measurement JSON file (the candidate coarse-graining).
        m: PathBuf,
        /// Measurement JSON file (the candidate refinement).
        n: PathBuf,
    },
    /// Exact guessing probability of an ensemble under a measurement.
    Pg {
        #[arg(long)]
        space: Option<SpaceArg>,
        ensemble: PathBuf,
        m: PathBuf,
    },
    /// Post-processing equivalence classes of a list of measurements.
    Quotient {
        #[arg(required = true, num_args = 1..)]
        items: Vec<PathBuf>,
    },
    /// Order dimension of a finite poset, with a re-verified realizer.
    Dim {
        poset: PathBuf,
        /// Largest realizer size to try before giving up.
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        /// Write the Hasse diagram (transitive reduction) as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// A minimal characterizing family of order monotones.
    Monotones {
        poset: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
    /// The standard example poset S_n (a_j < b_k exactly when j ≠ k).
    StandardExample {
        n: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the 2n-measurement bit family, decide all pairs exactly, and
    /// verify the comparison poset is S_n with order dimension n.
    Main1 {
        n: usize,
        /// Upper guard on n (n = 4 already takes minutes; raise knowingly).
        #[arg(long, default_value_t = 4)]
        guard: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The poset induced on equivalence classes of a measurement list.
    InducedPoset {
        #[arg(required = true, num_args = 1..)]
        items: Vec<PathBuf>,
    },
    /// Check that a poset maps order-faithfully into a measurement family.
    EmbedCheck {
        poset: PathBuf,
        #[arg(required = true, num_args = 1..)]
        items: Vec<PathBuf>,
        /// Comma-separated item index for each poset element (default: 0,1,2,…).
        #[arg(long)]
        map: Option<String>,
    },
    /// Enumerate ensembles with bounded member count and denominator; with
    /// two measurement files, scan for the first separating ensemble.
    Enumerate {
        #[arg(long)]
        space: Option<SpaceArg>,
        #[arg(long, default_value_t = 2)]
        max_members: usize,
        #[arg(long, default_value_t = 3)]
        max_den: u64,
        /// Keep at most this many ensembles in the listing.
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Optional measurement pair: report the first enumerated ensemble
        /// with a strictly larger guessing probability on the first file.
        #[arg(num_args = 0..=2)]
        pair: Vec<PathBuf>,
    },
    /// Map a bit measurement into a larger space along a chosen effect.
    CbitMap {
        /// Comma-separated rational coordinates of the image effect a0.
        #[arg(long)]
        a0: String,
        m: PathBuf,
    },
    /// Compare two POVMs in the quantum post-processing order.
    Qcompare {
        #[arg(long)]
        space: Option<SpaceArg>,
        m: PathBuf,
        n: PathBuf,
    },
    /// Exact guessing probability of a quantum ensemble under a POVM.
    Qpg {
        #[arg(long)]
        space: Option<SpaceArg>,
        ensemble: PathBuf,
        m: PathBuf,
    },
    /// The measure-and-prepare channel of a POVM as a superoperator.
    QcChannel { m: PathBuf },
    /// Reconstruct a channel from a bipartite POVM over the entangled basis.
    Phi {
        povm: PathBuf,
        /// Dimension of the reconstructed channel's input factor; the POVM
        /// must act on a multiple of it and carry factor² outcomes.
        #[arg(long)]
        factor: usize,
        /// Validation tolerance for the float POVM.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check a claimed factorization gamma = lambda ∘ phi with phi a channel.
    VerifyFactorization {
        gamma: PathBuf,
        lambda: PathBuf,
        phi: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Re-check a certificate produced by another command; never solves.
    /// Exits 0 exactly when the certificate verifies.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Does the Markov matrix turn the source measurement into the target?
    Markov {
        witness: PathBuf,
        target: PathBuf,
        source: PathBuf,
    },
    /// Does the ensemble show a strict guessing gap pg(m) > pg(n)?
    Gap {
        ensemble: PathBuf,
        m: PathBuf,
        n: PathBuf,
    },
    /// Do the linear extensions realize the poset?
    Realizer { poset: PathBuf, realizer: PathBuf },
    /// Does the monotone family characterize the poset order?
    Monotones { poset: PathBuf, monotones: PathBuf },
    /// Quantum Markov certificate check.
    Qmarkov {
        witness: PathBuf,
        target: PathBuf,
        source: PathBuf,
    },
    /// Strict quantum guessing gap check.
    Qgap {
        ensemble: PathBuf,
        m: PathBuf,
        n: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compare { .. } => "compare",
            Command::Pg { .. } => "pg",
            Command::Quotient { .. } => "quotient",
            Command::Dim { .. } => "dim",
            Command::Monotones { .. } => "monotones",
            Command::StandardExample { .. } => "standard-example",
            Command::Main1 { .. } => "main1",
            Command::InducedPoset { .. } => "induced-poset",
            Command::EmbedCheck { .. } => "embed-check",
            Command::Enumerate { .. } => "enumerate",
            Command::CbitMap { .. } => "cbit-map",
            Command::Qcompare { .. } => "qcompare",
            Command::Qpg { .. } => "qpg",
            Command::QcChannel { .. } => "qc-channel",
            Command::Phi { .. } => "phi",
            Command::VerifyFactorization { .. } => "verify-factorization",
            Command::Verify { .. } => "verify",
        }
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// A computed report plus whether the process should signal success.
struct Output {
    payload: Value,
    ok: bool,
}

fn ok(payload: Value) -> Result<Output, CliError> {
    Ok(Output { payload, ok: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = cli.command.name();
    let timing = cli.timing;
    match run(&cli.command) {
        Ok(output) => {
            print_report(name, output.payload, timing.then(|| start.elapsed()));
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Domain(message)) => {
            print_report(
                name,
                json!({ "error": message }),
                timing.then(|| start.elapsed()),
            );
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn print_report(command: &str, payload: Value, elapsed: Option<std::time::Duration>) {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert(
        "version".into(),
        Value::String(env!("CARGO_PKG_VERSION").into()),
    );
    match payload {
        Value::Object(fields) => {
            for (key, value) in fields {
                map.insert(key, value);
            }
        }
        other => {
            map.insert("result".into(), other);
        }
    }
    if let Some(elapsed) = elapsed {
        map.insert("timing_ms".into(), json!(elapsed.as_secs_f64() * 1e3));
    }
    let text = serde_json::to_string_pretty(&Value::Object(map)).expect("reports serialize");
    // Tolerate a closed stdout (e.g. piping into `head`).
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn load_evm(path: &Path) -> Result<Evm, CliError> {
    Ok(read_json::<EvmDto>(path)?.to_evm()?)
}

fn load_poset(path: &Path) -> Result<FinitePoset, CliError> {
    Ok(read_json::<PosetDto>(path)?.to_poset()?)
}

fn load_povm(path: &Path) -> Result<QuantumEvm, CliError> {
    Ok(read_json::<PovmDto>(path)?.to_povm()?)
}

fn assert_classical(space: Option<SpaceArg>, dim: usize) -> Result<(), CliError> {
    match space {
        None => Ok(()),
        Some(SpaceArg::Classical(d)) if d == dim => Ok(()),
        Some(other) => Err(CliError::Domain(format!(
            "--space {other} does not match the file's classical:{dim}"
        ))),
    }
}

fn assert_quantum(space: Option<SpaceArg>, dim: usize) -> Result<(), CliError> {
    match space {
        None => Ok(()),
        Some(SpaceArg::Quantum(d)) if d == dim => Ok(()),
        Some(other) => Err(CliError::Domain(format!(
            "--space {other} does not match the file's quantum:{dim}"
        ))),
    }
}

fn write_dot(dot: &Option<PathBuf>, p: &FinitePoset) -> Result<Option<String>, CliError> {
    match dot {
        None => Ok(None),
        Some(path) => {
            fs::write(path, p.to_dot())
                .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
            Ok(Some(path.display().to_string()))
        }
    }
}

/// Pairwise ⪯ matrix for a list of measurements (reflexive; both
/// directions of each unordered pair decided by one exact comparison).
fn leq_matrix(items: &[Evm]) -> Result<Vec<Vec<bool>>, CliError> {
    let count = items.len();
    let mut leq = vec![vec![false; count]; count];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..count {
        for j in (i + 1)..count {
            let (fwd, bwd) = compare(&items[i], &items[j])?.directions();
            leq[i][j] = fwd;
            leq[j][i] = bwd;
        }
    }
    Ok(leq)
}

fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Compare { space, m, n } => {
            let m = load_evm(m)?;
            let n = load_evm(n)?;
            assert_classical(*space, m.space().dim())?;
            ok(verdict_payload(&compare(&m, &n)?))
        }
        Command::Pg { space, ensemble, m } => {
            let e = read_json::<EnsembleDto>(ensemble)?.to_ensemble()?;
            let m = load_evm(m)?;
            assert_classical(*space, m.space().dim())?;
            let value = pg(&e, &m)?;
            ok(json!({ "pg": format_rational(&value) }))
        }
        Command::Quotient { items } => {
            let loaded = items.iter().map(|p| load_evm(p)).collect::<Result<Vec<_>, _>>()?;
            let classes = postorder::postproc::quotient(&loaded)?;
            ok(json!({ "classes": classes }))
        }
        Command::Dim { poset, max_k, dot } => {
            let p = load_poset(poset)?;
            let dot_path = write_dot(dot, &p)?;
            let mut payload = match order_dimension(&p, *max_k)? {
                DimensionResult::Computed {
                    dimension,
                    realizer,
                } => json!({
                    "dimension": dimension,
                    "realizer": realizer_to_labels(&p, &realizer),
                }),
                DimensionResult::ExceedsBound { max_k } => json!({ "exceeds_max_k": max_k }),
            };
            if let Some(path) = dot_path {
                payload["dot"] = json!(path);
            }
            ok(payload)
        }
        Command::Monotones { poset, max_k } => {
            let p = load_poset(poset)?;
            let (dimension, family) = order_monotone_dimension(&p, *max_k)?;
            ok(json!({
                "dimension": dimension,
                "monotones": monotones_to_rows(&family),
            }))
        }
        Command::StandardExample { n, dot } => {
            let p = standard_example(*n)?;
            let dot_path = write_dot(dot, &p)?;
            let mut payload = json!({ "poset": PosetDto::from_poset(&p) });
            if let Some(path) = dot_path {
                payload["dot"] = json!(path);
            }
            ok(payload)
        }
        Command::Main1 { n, guard, dot } => {
            if *n < 3 || n > guard {
                return Err(CliError::Usage(format!(
                    "main1 requires 3 <= n <= {guard} (got {n}); raise --guard to allow larger n"
                )));
            }
            let report = verify_main1(*n)?;
            let dot_path = write_dot(dot, &report.poset)?;
            let patterns: Map<String, Value> = report
                .patterns
                .iter()
                .map(|(name, count)| (name.to_string(), json!(count)))
                .collect();
            let mut payload = json!({
                "n": report.n,
                "comparisons": report.comparisons,
                "patterns": patterns,
                "dimension": report.dimension,
                "realizer": realizer_to_labels(&report.poset, &report.realizer),
                "poset": PosetDto::from_poset(&report.poset),
                "items": report.items.iter().map(EvmDto::from_evm).collect::<Vec<_>>(),
            });
            if let Some(path) = dot_path {
                payload["dot"] = json!(path);
            }
            ok(payload)
        }
        Command::InducedPoset { items } => {
            let loaded = items.iter().map(|p| load_evm(p)).collect::<Result<Vec<_>, _>>()?;
            let leq = leq_matrix(&loaded)?;
            let (p, class_of) =
                induced_poset(loaded.len(), |i, j| Ok::<_, PostprocError>(leq[i][j]))?;
            ok(json!({
                "poset": PosetDto::from_poset(&p),
                "class_of": class_of,
            }))
        }
        Command::EmbedCheck { poset, items, map } => {
            let p = load_poset(poset)?;
            let loaded = items.iter().map(|path| load_evm(path)).collect::<Result<Vec<_>, _>>()?;
            let f: Vec<usize> = match map {
                None => (0..p.len()).collect(),
                Some(text) => text
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| CliError::Usage(format!("--map entry {s:?} is not an index")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            if f.len() != p.len() {
                return Err(CliError::Usage(format!(
                    "--map assigns {} items, but the poset has {} elements",
                    f.len(),
                    p.len()
                )));
            }
            if let Some(&bad) = f.iter().find(|&&i| i >= loaded.len()) {
                return Err(CliError::Usage(format!(
                    "--map references item {bad}, but only {} items were given",
                    loaded.len()
                )));
            }
            let leq = leq_matrix(&loaded)?;
            let witness = check_embedding(&p, &f, |i, j| Ok::<_, PostprocError>(leq[i][j]))?;
            ok(match witness {
                None => json!({ "embeds": true }),
                Some((x, y)) => json!({
                    "embeds": false,
                    "witness": { "left": p.label(x), "right": p.label(y) },
                }),
            })
        }
        Command::Enumerate {
            space,
            max_members,
            max_den,
            limit,
            pair,
        } => run_enumerate(*space, *max_members, *max_den, *limit, pair),
        Command::CbitMap { a0, m } => {
            let coordinates = a0
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<Rational>, _>>()?;
            let embedding = cbit_embedding(&coordinates)?;
            let m = load_evm(m)?;
            let image = embedding.apply(&m)?;
            ok(json!({
                "a0": embedding.a().values().iter().map(format_rational).collect::<Vec<_>>(),
                "a_prime": embedding.a_prime().values().iter().map(format_rational).collect::<Vec<_>>(),
                "evm": EvmDto::from_evm(&image),
            }))
        }
        Command::Qcompare { space, m, n } => {
            let m = load_povm(m)?;
            let n = load_povm(n)?;
            assert_quantum(*space, m.dim())?;
            ok(quantum_verdict_payload(&qcompare(&m, &n)?))
        }
        Command::Qpg { space, ensemble, m } => {
            let e = read_json::<QuantumEnsembleDto>(ensemble)?.to_ensemble()?;
            let m = load_povm(m)?;
            assert_quantum(*space, m.dim())?;
            let value = qpg(&e, &m)?;
            ok(json!({ "pg": format_rational(&value) }))
        }
        Command::QcChannel { m } => {
            let m = load_povm(m)?;
            let gamma = qc_channel(&m)?;
            ok(json!({
                "superoperator": SuperoperatorDto::from_superoperator(&gamma),
                "cp": gamma.is_cp()?,
                "unital": gamma.is_unital()?,
            }))
        }
        Command::Phi { povm, factor, tol } => {
            let mt = read_json::<FloatPovmDto>(povm)?.to_povm(*tol)?;
            let phi = phi_from_blocks(&mt, *factor)?;
            ok(json!({
                "superoperator": SuperoperatorDto::from_superoperator(&phi),
                "cp": phi.is_cp()?,
                "unital": phi.is_unital()?,
            }))
        }
        Command::VerifyFactorization {
            gamma,
            lambda,
            phi,
            tol,
        } => {
            let gamma = read_json::<SuperoperatorDto>(gamma)?.to_superoperator()?;
            let lambda = read_json::<SuperoperatorDto>(lambda)?.to_superoperator()?;
            let phi = read_json::<SuperoperatorDto>(phi)?.to_superoperator()?;
            let report = verify_factorization(&gamma, &lambda, &phi, *tol)?;
            ok(json!({
                "holds": report.holds(),
                "phi_cp": report.phi_cp,
                "phi_unital": report.phi_unital,
                "deviation": report.deviation,
                "tol": report.tol,
            }))
        }
        Command::Verify { kind } => run_verify(kind),
    }
}

fn run_enumerate(
    space: Option<SpaceArg>,
    max_members: usize,
    max_den: u64,
    limit: usize,
    pair: &[PathBuf],
) -> Result<Output, CliError> {
    match pair {
        [] => {
            let dim = match space {
                Some(SpaceArg::Classical(d)) => d,
                Some(other) => {
                    return Err(CliError::Usage(format!(
                        "enumeration needs a classical space, got {other}"
                    )))
                }
                None => {
                    return Err(CliError::Usage(
                        "listing mode needs --space classical:<d>".into(),
                    ))
                }
            };
            let classical = postorder::gpt::ClassicalSpace::new(dim)?;
            let mut shown = Vec::new();
            let mut count = 0usize;
            for_each_ensemble(classical, max_members, max_den, |e| {
                if shown.len() < limit {
                    shown.push(EnsembleDto::from_ensemble(&e));
                }
                count += 1;
                true
            })?;
            ok(json!({ "count": count, "ensembles": shown }))
        }
        [m_path, n_path] => {
            let m = load_evm(m_path)?;
            let n = load_evm(n_path)?;
            if m.space() != n.space() {
                return Err(CliError::Domain(format!(
                    "measurements live on different spaces ({} vs {})",
                    m.space().dim(),
                    n.space().dim()
                )));
            }
            assert_classical(space, m.space().dim())?;
            let mut found: Option<(usize, EnsembleDto, Rational, Rational)> = None;
            let mut scanned = 0usize;
            let mut failure: Option<PostprocError> = None;
            for_each_ensemble(m.space(), max_members, max_den, |e| {
                let (first, second) = match (pg(&e, &m), pg(&e, &n)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(err), _) | (_, Err(err)) => {
                        failure = Some(err);
                        return false;
                    }
                };
                scanned += 1;
                if first > second {
                    found = Some((scanned - 1, EnsembleDto::from_ensemble(&e), first, second));
                    false
                } else {
                    true
                }
            })?;
            if let Some(err) = failure {
                return Err(err.into());
            }
            ok(match found {
                Some((index, dto, first, second)) => json!({
                    "found": true,
                    "index": index,
                    "ensemble": dto,
                    "pg_first": format_rational(&first),
                    "pg_second": format_rational(&second),
                }),
                None => json!({ "found": false, "scanned": scanned }),
            })
        }
        other => Err(CliError::Usage(format!(
            "separation scan takes exactly two measurement files, got {}",
            other.len()
        ))),
    }
}

/// Certificate checks. All of them only re-verify supplied data; none of
/// them runs a solver. `valid: false` reports exit with code 1.
fn run_verify(kind: &VerifyKind) -> Result<Output, CliError> {
    let (valid, mut payload) = match kind {
        VerifyKind::Markov {
            witness,
            target,
            source,
        } => {
            let rows: Vec<Vec<String>> = read_json(witness)?;
            let target = load_evm(target)?;
            let source = load_evm(source)?;
            match markov_from_rows(&rows) {
                Ok(p) => (p.certifies(&target, &source), json!({})),
                Err(e) => (false, json!({ "reason": e.to_string() })),
            }
        }
        VerifyKind::Gap { ensemble, m, n } => {
            let e = read_json::<EnsembleDto>(ensemble)?.to_ensemble()?;
            let m = load_evm(m)?;
            let n = load_evm(n)?;
            match (pg(&e, &m), pg(&e, &n)) {
                (Ok(first), Ok(second)) => (
                    first > second,
                    json!({
                        "pg_first": format_rational(&first),
                        "pg_second": format_rational(&second),
                    }),
                ),
                (Err(e), _) | (_, Err(e)) => (false, json!({ "reason": e.to_string() })),
            }
        }
        VerifyKind::Realizer { poset, realizer } => {
            let p = load_poset(poset)?;
            let lists: Vec<Vec<String>> = read_json(realizer)?;
            match realizer_from_labels(&p, &lists) {
                Ok(_) => (true, json!({})),
                Err(e) => (false, json!({ "reason": e.to_string() })),
            }
        }
        VerifyKind::Monotones { poset, monotones } => {
            let p = load_poset(poset)?;
            let rows: Vec<Vec<String>> = read_json(monotones)?;
            match monotones_from_rows(&p, &rows) {
                Ok(family) => {
                    if postorder::poset::characterizes(&p, &family) {
                        (true, json!({}))
                    } else {
                        (
                            false,
                            json!({ "reason": "family is monotone but does not characterize the order" }),
                        )
                    }
                }
                Err(e) => (false, json!({ "reason": e.to_string() })),
            }
        }
        VerifyKind::Qmarkov {
            witness,
            target,
            source,
        } => {
            let rows: Vec<Vec<String>> = read_json(witness)?;
            let target = load_povm(target)?;
            let source = load_povm(source)?;
            match markov_from_rows(&rows) {
                Ok(p) => (markov_certifies(&p, &target, &source), json!({})),
                Err(e) => (false, json!({ "reason": e.to_string() })),
            }
        }
        VerifyKind::Qgap { ensemble, m, n } => {
            let e = read_json::<QuantumEnsembleDto>(ensemble)?.to_ensemble()?;
            let m = load_povm(m)?;
            let n = load_povm(n)?;
            match (qpg(&e, &m), qpg(&e, &n)) {
                (Ok(first), Ok(second)) => (
                    first > second,
                    json!({
                        "pg_first": format_rational(&first),
                        "pg_second": format_rational(&second),
                    }),
                ),
                (Err(e), _) | (_, Err(e)) => (false, json!({ "reason": e.to_string() })),
            }
        }
    };
    payload["valid"] = json!(valid);
    Ok(Output { payload, ok: valid })
}

//! symrank — exact rank methods, constructive decompositions, and barrier
//! checks from the command line.
//!
//! Subcommands: `rank`, `lower-bound`, `barrier-check`, `decompose`,
//! `depth3 (psi | validate)`, `gap-report`.  Reports go to standard output
//! as JSON (default) or flattened `key = value` text; identical inputs,
//! seed, and configuration produce byte-identical output.  Every failing
//! exit path also writes a one-line `{"error": {...}}` object to standard
//! error.
//!
//! Exit codes: 0 success/pass, 1 a verified property failed (a barrier
//! violation or a failed reconstruction — an implementation bug, not bad
//! input), 2 input error, 3 resource refusal.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symrank::barrier::{
    gap_report, random_linear_map, verify_barrier, verify_barrier_sequential,
};
use symrank::decomp::{
    hom_rank_decompose, sm_rank_decompose, symbolic_decompose, verify_decomposition,
    Decomposition,
};
use symrank::depth3::{build_psi, is_ssm, validate_rank_method};
use symrank::error::Error;
use symrank::field::{Field, PrimeField, Rationals};
use symrank::flatten::{barrier_bound, catalecticant, lower_bound, mode_flattening, Family, MapInput};
use symrank::io;
use symrank::monomial::VariablePartition;
use symrank::util::binomial_u128;

/// Jobs whose estimated dense monomial count exceeds this are refused.
const DENSE_MONOMIAL_LIMIT: u128 = 1_000_000;
/// Largest matrix side accepted by `barrier-check`.
const MAX_M: usize = 64;

#[derive(Parser)]
#[command(
    name = "symrank",
    version,
    about = "Exact rank methods, constructive decompositions, and barrier checks \
             for tensor and Waring rank"
)]
struct Cli {
    /// Coefficient field: "rational" or "prime:<p>".
    #[arg(long, global = true, default_value = "rational")]
    field: String,

    /// Root seed for every randomized subroutine.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact and randomized symbolic rank of a polynomial matrix.
    Rank {
        /// Polynomial-matrix JSON file.
        matrix: PathBuf,
        /// Evaluation trials for the randomized rank.
        #[arg(long, default_value_t = 3)]
        trials: u32,
        /// Coordinate sampling range (default: 100 · degree · max side).
        #[arg(long)]
        sample_range: Option<u64>,
    },

    /// Rank lower bound certified by a flattening, with the family barrier.
    LowerBound {
        /// Polynomial JSON (catalecticant or waring map) or tensor JSON
        /// (mode flattening or tensor map).
        input: PathBuf,
        /// Catalecticant order k (input must be homogeneous).
        #[arg(long)]
        catalecticant: Option<u32>,
        /// Comma-separated 1-based tensor modes, e.g. "1,3".
        #[arg(long)]
        flatten_modes: Option<String>,
        /// Linear-map JSON file.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Max rank of the map on rank-one inputs (default: 1 for
        /// catalecticants and mode flattenings, estimated for --map).
        #[arg(long)]
        mu_s: Option<u64>,
        /// Trials used when estimating μ for --map.
        #[arg(long, default_value_t = 3)]
        trials: u32,
    },

    /// Sample random linear maps and corroborate the family barrier.
    BarrierCheck {
        /// Map family: "waring" or "tensor".
        #[arg(long)]
        family: String,
        /// Number of variables.
        #[arg(short)]
        n: usize,
        /// Degree (waring) or order (tensor).
        #[arg(short)]
        d: u32,
        /// Target matrix side.
        #[arg(short)]
        m: usize,
        /// How many random maps to test.
        #[arg(long, default_value_t = 5)]
        maps: u32,
        /// Nonzero density of each basis image.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Random inputs per map.
        #[arg(long, default_value_t = 20)]
        trials: u32,
        /// Run trials on one thread (output is identical either way).
        #[arg(long)]
        sequential: bool,
    },

    /// Decompose a polynomial matrix into few outer products.
    Decompose {
        /// Polynomial-matrix JSON file.
        matrix: PathBuf,
        /// symbolic: rank-many jet pairs; hom: homogeneous pieces,
        /// ≤ r(d+1) terms; sm: set-multilinear pieces, ≤ r·2^d terms.
        #[arg(long, value_enum)]
        mode: DecomposeMode,
        /// Comma-separated block sizes of the variable partition (sm mode).
        #[arg(long)]
        blocks: Option<String>,
        /// Write the decomposition JSON here instead of inlining it.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Coordinates of the elementary-symmetric depth-3 polynomial.
    Depth3 {
        #[command(subcommand)]
        sub: Depth3Cmd,
    },

    /// Tabulate family barriers against published lower bounds.
    GapReport {
        /// Map family: "waring" or "tensor".
        #[arg(long)]
        family: String,
        /// Semicolon-separated n,d pairs, e.g. "3,3;4,3;5,4".
        #[arg(long)]
        cases: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeMode {
    Symbolic,
    Hom,
    Sm,
}

#[derive(Subcommand)]
enum Depth3Cmd {
    /// Emit every coefficient polynomial, keyed by monomial exponents.
    Psi {
        /// Number of variables per linear form.
        #[arg(short)]
        n: usize,
        /// Degree of the elementary symmetric polynomial.
        #[arg(short)]
        d: u32,
        /// Number of linear forms (default: d).
        #[arg(long)]
        forms: Option<usize>,
    },
    /// Check that all coordinates are set-multilinear and span the
    /// polarization space.
    Validate {
        /// Number of variables per linear form.
        #[arg(short)]
        n: usize,
        /// Degree of the elementary symmetric polynomial.
        #[arg(short)]
        d: u32,
        /// Number of linear forms (default: d).
        #[arg(long)]
        forms: Option<usize>,
    },
}

/// A terminating condition with its exit code; `Violated` still prints the
/// report before exiting 1.
enum Failure {
    Input(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => Failure::Input(msg),
            Error::Refused(msg) => Failure::Refused(msg),
        }
    }
}

type CmdResult = Result<(Value, u8), Failure>;

fn emit_error(code: u8, kind: &str, message: &str) {
    let obj = json!({"error": {"code": code, "kind": kind, "message": message}});
    eprintln!("{obj}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            emit_error(2, "input", &e.to_string());
            return ExitCode::from(2);
        }
    };

    let result = match parse_field_spec(&cli.field) {
        Ok(FieldSpec::Rational) => run(Rationals, "rational", &cli),
        Ok(FieldSpec::Prime(p)) => match PrimeField::new(p) {
            Ok(f) => run(f, &format!("prime:{p}"), &cli),
            Err(e) => Err(e.into()),
        },
        Err(f) => Err(f),
    };

    match result {
        Ok((report, code)) => {
            print_report(&report, cli.output);
            if code != 0 {
                emit_error(code, "violation", "a verified property failed; see the report");
            }
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            emit_error(2, "input", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            emit_error(3, "refused", &msg);
            ExitCode::from(3)
        }
    }
}

enum FieldSpec {
    Rational,
    Prime(u64),
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, Failure> {
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(p) = s.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Failure::Input(format!("\"{p}\" is not a valid prime modulus")))?;
        return Ok(FieldSpec::Prime(p));
    }
    Err(Failure::Input(format!(
        "unknown field \"{s}\"; expected \"rational\" or \"prime:<p>\""
    )))
}

fn run<K: Field>(field: K, field_label: &str, cli: &Cli) -> CmdResult {
    let (mut report, code) = match &cli.command {
        Cmd::Rank { matrix, trials, sample_range } => {
            cmd_rank(&field, matrix, *trials, *sample_range, cli.seed)?
        }
        Cmd::LowerBound { input, catalecticant, flatten_modes, map, mu_s, trials } => {
            cmd_lower_bound(
                &field,
                input,
                *catalecticant,
                flatten_modes.as_deref(),
                map.as_deref(),
                *mu_s,
                *trials,
                cli.seed,
            )?
        }
        Cmd::BarrierCheck { family, n, d, m, maps, density, trials, sequential } => {
            cmd_barrier_check(
                &field, family, *n, *d, *m, *maps, *density, *trials, *sequential, cli.seed,
            )?
        }
        Cmd::Decompose { matrix, mode, blocks, out } => {
            cmd_decompose(&field, matrix, *mode, blocks.as_deref(), out.as_deref())?
        }
        Cmd::Depth3 { sub } => match sub {
            Depth3Cmd::Psi { n, d, forms } => cmd_depth3_psi(&field, *n, *d, *forms)?,
            Depth3Cmd::Validate { n, d, forms } => {
                cmd_depth3_validate(&field, *n, *d, *forms)?
            }
        },
        Cmd::GapReport { family, cases } => cmd_gap_report(family, cases)?,
    };
    if let Value::Object(map) = &mut report {
        map.insert("field".into(), Value::String(field_label.into()));
    }
    Ok((report, code))
}

fn print_report(v: &Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
        }
        OutputFormat::Text => {
            let mut lines = Vec::new();
            flatten_value("", v, &mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}

fn flatten_value(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, vv) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_value(&key, vv, out);
            }
        }
        Value::Array(items) => {
            for (i, vv) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}[{i}]"), vv, out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// Dense monomial count of `entries` polynomials in `num_vars` variables of
/// degree ≤ `deg`; `None` means "too large to even count".
fn dense_estimate(entries: u128, num_vars: usize, deg: u32) -> Option<u128> {
    let per_entry = binomial_u128(num_vars as u64 + deg as u64, deg as u64)?;
    entries.checked_mul(per_entry)
}

fn guard_dense(estimate: Option<u128>) -> Result<(), Failure> {
    match estimate {
        Some(c) if c <= DENSE_MONOMIAL_LIMIT => Ok(()),
        _ => Err(Failure::Refused(format!(
            "estimated dense monomial count exceeds the {DENSE_MONOMIAL_LIMIT} limit"
        ))),
    }
}

/// `p/q` in lowest terms, written as an integer when q divides p.
fn ratio_string(num: u128, den: u64) -> String {
    fn gcd(a: u128, b: u128) -> u128 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let g = gcd(num, den as u128).max(1);
    if den as u128 == g {
        (num / g).to_string()
    } else {
        format!("{}/{}", num / g, den as u128 / g)
    }
}

fn parse_index_list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Input(format!("{what}: \"{tok}\" is not an integer")))
        })
        .collect()
}

fn cmd_rank<K: Field>(
    field: &K,
    matrix: &Path,
    trials: u32,
    sample_range: Option<u64>,
    seed: u64,
) -> CmdResult {
    let m = io::matrix_from_json(field, &read_file(matrix)?)?;
    let deg = m.max_degree().unwrap_or(0);
    guard_dense(dense_estimate((m.rows() * m.cols()) as u128, m.num_vars(), deg))?;
    let range = sample_range.unwrap_or_else(|| m.default_sample_range());
    let exact = m.exact_symbolic_rank();
    let randomized = m.randomized_symbolic_rank(range, trials, seed)?;
    Ok((
        json!({
            "command": "rank",
            "rows": m.rows(),
            "cols": m.cols(),
            "num_vars": m.num_vars(),
            "exact_rank": exact,
            "randomized_rank": randomized,
            "agree": exact == randomized,
            "trials": trials,
            "sample_range": range,
            "seed": seed,
        }),
        0,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_lower_bound<K: Field>(
    field: &K,
    input: &Path,
    cat_k: Option<u32>,
    flatten_modes: Option<&str>,
    map_file: Option<&Path>,
    mu_s: Option<u64>,
    trials: u32,
    seed: u64,
) -> CmdResult {
    let methods = cat_k.is_some() as u8 + flatten_modes.is_some() as u8 + map_file.is_some() as u8;
    if methods != 1 {
        return Err(Failure::Input(
            "choose exactly one of --catalecticant, --flatten-modes, --map".into(),
        ));
    }
    let text = read_file(input)?;

    if let Some(k) = cat_k {
        let f = io::poly_from_json(field, &text)?;
        let cat = catalecticant(&f, k)?;
        let rank = cat.rank();
        let d = f.degree().expect("catalecticant rejects the zero polynomial");
        let barrier = barrier_bound(Family::Waring, f.num_vars(), d)?;
        let mu = mu_s.unwrap_or(1);
        return finish_lower_bound(
            json!({
                "command": "lower-bound",
                "method": "catalecticant",
                "family": "waring",
                "n": f.num_vars(),
                "d": d,
                "k": k,
            }),
            rank,
            mu,
            if mu_s.is_some() { "given" } else { "method" },
            barrier,
        );
    }

    if let Some(modes_str) = flatten_modes {
        let t = io::tensor_from_json(field, &text)?;
        let modes_1b = parse_index_list(modes_str, "--flatten-modes")?;
        if modes_1b.iter().any(|&s| s < 1) {
            return Err(Failure::Input("--flatten-modes indices are 1-based".into()));
        }
        let modes: Vec<usize> = modes_1b.iter().map(|&s| s - 1).collect();
        let flat = mode_flattening(&t, &modes)?;
        let rank = flat.rank();
        let barrier = barrier_bound(Family::Tensor, t.n(), t.d() as u32)?;
        let mu = mu_s.unwrap_or(1);
        return finish_lower_bound(
            json!({
                "command": "lower-bound",
                "method": "mode-flattening",
                "family": "tensor",
                "n": t.n(),
                "d": t.d(),
                "modes": modes_1b,
            }),
            rank,
            mu,
            if mu_s.is_some() { "given" } else { "method" },
            barrier,
        );
    }

    let map_file = map_file.expect("one method is present");
    let map = io::map_from_json(field, &read_file(map_file)?)?;
    let map_input = match map.family() {
        Family::Waring => MapInput::Poly(io::poly_from_json(field, &text)?),
        Family::Tensor => MapInput::Tensor(io::tensor_from_json(field, &text)?),
    };
    let (mu, mu_source) = match mu_s {
        Some(mu) => (mu, "given"),
        None => {
            let est = symrank::barrier::estimate_image_rank(&map, trials, seed)?;
            ((est as u64).max(1), "estimated")
        }
    };
    let lb = lower_bound(&map, &map_input, mu)?;
    Ok((
        json!({
            "command": "lower-bound",
            "method": "linear-map",
            "family": map.family().to_string(),
            "n": map.n(),
            "d": map.d(),
            "m": map.m(),
            "rank": lb.rank,
            "mu_s": lb.mu_s,
            "mu_source": mu_source,
            "bound": lb.bound.to_string(),
            "barrier": lb.barrier,
        }),
        0,
    ))
}

fn finish_lower_bound(
    mut header: Value,
    rank: usize,
    mu: u64,
    mu_source: &str,
    barrier: u128,
) -> CmdResult {
    if mu == 0 {
        return Err(Failure::Input("μ must be positive".into()));
    }
    if rank as u128 > barrier.saturating_mul(mu as u128) {
        return Err(Failure::Input(format!(
            "claimed μ = {mu} puts the bound above the barrier {barrier}; \
             no rank method can certify that"
        )));
    }
    let fields = header.as_object_mut().expect("header is an object");
    fields.insert("rank".into(), json!(rank));
    fields.insert("mu_s".into(), json!(mu));
    fields.insert("mu_source".into(), json!(mu_source));
    fields.insert("bound".into(), json!(ratio_string(rank as u128, mu)));
    fields.insert("barrier".into(), json!(barrier));
    Ok((header, 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_barrier_check<K: Field>(
    field: &K,
    family: &str,
    n: usize,
    d: u32,
    m: usize,
    maps: u32,
    density: f64,
    trials: u32,
    sequential: bool,
    seed: u64,
) -> CmdResult {
    let family: Family = family.parse()?;
    if m > MAX_M {
        return Err(Failure::Refused(format!("m = {m} exceeds the configured cap {MAX_M}")));
    }
    let estimate = match family {
        Family::Waring => dense_estimate((m * m) as u128, n + 1, d),
        Family::Tensor => (n as u128)
            .checked_pow(d)
            .and_then(|terms| terms.checked_mul((m * m) as u128)),
    };
    guard_dense(estimate)?;

    let mut reports = Vec::with_capacity(maps as usize);
    let mut all_pass = true;
    for i in 0..maps {
        let map_seed = seed.wrapping_add(i as u64);
        let map = random_linear_map(field.clone(), family, n, d, m, density, map_seed)?;
        let report = if sequential {
            verify_barrier_sequential(&map, trials, map_seed)?
        } else {
            verify_barrier(&map, trials, map_seed)?
        };
        all_pass &= report.pass;
        reports.push(serde_json::to_value(&report).expect("report serializes"));
    }
    Ok((
        json!({
            "command": "barrier-check",
            "family": family.to_string(),
            "n": n,
            "d": d,
            "m": m,
            "maps": maps,
            "density": density,
            "trials": trials,
            "seed": seed,
            "all_pass": all_pass,
            "reports": reports,
        }),
        u8::from(!all_pass),
    ))
}

fn cmd_decompose<K: Field>(
    field: &K,
    matrix: &Path,
    mode: DecomposeMode,
    blocks: Option<&str>,
    out: Option<&Path>,
) -> CmdResult {
    let m = io::matrix_from_json(field, &read_file(matrix)?)?;
    let deg = m.max_degree().unwrap_or(0);
    guard_dense(dense_estimate((m.rows() * m.cols()) as u128, m.num_vars(), deg))?;

    let mut partition = None;
    let (decomp, mode_name, rank, term_bound) = match mode {
        DecomposeMode::Symbolic => {
            let pairs = symbolic_decompose(&m, deg)?;
            let rank = pairs.len();
            (Decomposition::Jets { degree: deg, pairs }, "symbolic", rank, rank as u128)
        }
        DecomposeMode::Hom => {
            let h = hom_rank_decompose(&m)?;
            let (rank, d) = (h.rank, h.degree);
            (Decomposition::Homogeneous(h), "hom", rank, rank as u128 * (d as u128 + 1))
        }
        DecomposeMode::Sm => {
            let sizes = parse_index_list(
                blocks.ok_or_else(|| {
                    Failure::Input("--mode sm needs --blocks with the partition sizes".into())
                })?,
                "--blocks",
            )?;
            if sizes.iter().any(|&s| s == 0) {
                return Err(Failure::Input("block sizes must be positive".into()));
            }
            let part = VariablePartition::from_sizes(&sizes)?;
            let s = sm_rank_decompose(&m, &part)?;
            let rank = s.rank;
            let bound = (rank as u128) << part.block_count().min(127);
            partition = Some(part);
            (Decomposition::SetMultilinear(s), "sm", rank, bound)
        }
    };

    let term_count = match &decomp {
        Decomposition::Jets { pairs, .. } => pairs.len(),
        Decomposition::Homogeneous(h) => h.terms.len(),
        Decomposition::SetMultilinear(s) => s.terms.len(),
    };
    let verified = verify_decomposition(&m, &decomp, partition.as_ref())?;

    let mut report = json!({
        "command": "decompose",
        "mode": mode_name,
        "rows": m.rows(),
        "cols": m.cols(),
        "rank": rank,
        "term_count": term_count,
        "term_bound": term_bound,
        "verified": verified,
    });
    let decomp_json = io::decomposition_to_json(&decomp);
    let fields = report.as_object_mut().expect("report is an object");
    match out {
        Some(path) => {
            fs::write(path, decomp_json + "\n").map_err(|e| {
                Failure::Input(format!("cannot write {}: {e}", path.display()))
            })?;
            fields.insert("written_to".into(), json!(path.display().to_string()));
        }
        None => {
            let inline: Value =
                serde_json::from_str(&decomp_json).expect("decomposition serializes");
            fields.insert("decomposition".into(), inline);
        }
    }
    Ok((report, u8::from(!verified)))
}

fn cmd_depth3_psi<K: Field>(field: &K, n: usize, d: u32, forms: Option<usize>) -> CmdResult {
    let forms = forms.unwrap_or(d as usize);
    let psi = build_psi(field.clone(), n, forms, d)?;
    let coords: Vec<Value> = psi
        .coords()
        .iter()
        .map(|(e, p)| {
            json!({
                "exp": e.0,
                "poly": serde_json::to_value(io::poly_to_dto(p)).expect("poly serializes"),
            })
        })
        .collect();
    Ok((
        json!({
            "command": "depth3-psi",
            "n": n,
            "d": d,
            "forms": forms,
            "num_vars": psi.partition().num_vars(),
            "coord_count": coords.len(),
            "coords": coords,
        }),
        0,
    ))
}

fn cmd_depth3_validate<K: Field>(
    field: &K,
    n: usize,
    d: u32,
    forms: Option<usize>,
) -> CmdResult {
    let forms = forms.unwrap_or(d as usize);
    let psi = build_psi(field.clone(), n, forms, d)?;
    let all_ssm = psi.coords().iter().all(|(_, p)| is_ssm(p, psi.partition()));
    let valid = validate_rank_method(&psi)?;
    Ok((
        json!({
            "command": "depth3-validate",
            "n": n,
            "d": d,
            "forms": forms,
            "coord_count": psi.coords().len(),
            "all_set_multilinear": all_ssm,
            "valid": valid,
        }),
        u8::from(!(all_ssm && valid)),
    ))
}

fn cmd_gap_report(family: &str, cases: &str) -> CmdResult {
    let family: Family = family.parse()?;
    let mut pairs = Vec::new();
    for chunk in cases.split(';') {
        let parts: Vec<&str> = chunk.split(',').map(str::trim).collect();
        let bad = || Failure::Input(format!("--cases entry \"{chunk}\" is not \"n,d\""));
        if parts.len() != 2 {
            return Err(bad());
        }
        let n: usize = parts[0].parse().map_err(|_| bad())?;
        let d: u32 = parts[1].parse().map_err(|_| bad())?;
        pairs.push((n, d));
    }
    let report = gap_report(family, &pairs)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(map) = &mut value {
        map.insert("command".into(), json!("gap-report"));
    }
    Ok((value, 0))
}

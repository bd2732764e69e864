//! Batch front end: run the relation suites, decompose a window under one
//! of the commuting group actions, check a character identity, or predict
//! and decode the diagonal labels of a single group label.
//!
//! Exit codes follow a fixed contract: 0 when every check passes, 1 when
//! at least one verified assertion is false (a JSON witness is emitted),
//! 2 on usage or configuration errors.  Reports are deterministic: the
//! same invocation produces byte-identical output.  The environment
//! variable `FOCKDUAL_THREADS` bounds worker parallelism (default: number
//! of processors).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde::Serialize;

use fockdual::duality::search::{
    decode_labels, decode_weight_a, decode_weight_d, find_joint_hwvs, reconcile_signs, GroupKind,
    HwvRecord,
};
use fockdual::duality::verify::{verify_duality, virasoro_content_checks};
use fockdual::duality::{
    exponent_set_a, exponent_set_d, weight_map_aa, weight_map_dd, PartitionA, PartitionD,
};
use fockdual::fock::{basis, graded_dim, FockConfig, FockVector};
use fockdual::qseries::{
    ch_v1plus, ch_virasoro_c1, gauss_rhs, partition_count, product_form, ProductKind, QSeries,
};
use fockdual::repops::suites::{relation_suites, RelationReport};
use fockdual::symalg::labels::{labels_from_exponents, LabelFamily};

#[derive(Parser)]
#[command(
    name = "fockdual",
    version,
    about = "Exact verification of fermion-realized algebras on truncated windows",
    after_help = "Environment:\n  FOCKDUAL_THREADS  bound worker parallelism (default: number of processors)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the operator relation suites on a truncated window.
    Relations(RelationsArgs),
    /// Decompose a window under one group action and verify every sector.
    Duality(DualityArgs),
    /// Check one character identity coefficientwise.
    Characters(CharactersArgs),
    /// Predict and decode the diagonal labels of one group label.
    Labels(LabelsArgs),
}

#[derive(Args)]
struct RelationsArgs {
    /// Number of charged fermion pairs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..))]
    l: u8,
    /// Integer energy bound of the window (doubled internally).
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(0..))]
    emax: i64,
    /// Write the suite reports to this path as a JSON array.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    /// General linear group on the charged pairs.
    Gl,
    /// Even orthogonal group on the charged pairs.
    O2l,
    /// Two-element reflection group on the neutral fermion.
    O1,
}

#[derive(Args)]
struct DualityArgs {
    /// Which commuting group action to decompose under.
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Number of charged fermion pairs (ignored for o1).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..))]
    l: u8,
    /// Integer energy bound of the window (doubled internally).
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
    emax: i64,
    /// Write the isotypic report to this path as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CharId {
    /// Alternating-sign square series against the product quotient.
    Gauss,
    /// Even charge-zero character against the swap-even window dimensions.
    V1plus,
    /// Sum of central-charge-1 characters against the even charge-zero one.
    VirasoroSum,
    /// Partition counts against the charge-zero window dimensions.
    BosonFermion,
}

#[derive(Args)]
struct CharactersArgs {
    /// Which identity to check.
    #[arg(long, value_enum)]
    id: CharId,
    /// Compare coefficients of q^0 through q^order.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(0..))]
    order: i64,
    /// Write both sides to this path as CSV rows `k,lhs,rhs`.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the comparison report to this path as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LabelsArgs {
    /// Which commuting group action the label belongs to.
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Number of charged fermion pairs (ignored for o1).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..))]
    l: u8,
    /// Comma-separated partition parts, e.g. `2,1` (omit for o1).
    #[arg(long)]
    lambda: Option<String>,
    /// Ask for the determinant-twisted label (last part zero, or o1 sign).
    #[arg(long, default_value_t = false)]
    det: bool,
    /// Integer energy bound of the search window (doubled internally).
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
    emax: i64,
    /// Decode and predict labels for generator degrees up to this bound.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(0..=24))]
    order: i64,
    /// Write the label report to this path as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Internal(fockdual::Error),
}

impl From<fockdual::Error> for CliError {
    fn from(e: fockdual::Error) -> Self {
        CliError::Internal(e)
    }
}

type CliResult = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Relations(a) => cmd_relations(a),
        Command::Duality(a) => cmd_duality(a),
        Command::Characters(a) => cmd_characters(a),
        Command::Labels(a) => cmd_labels(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(e)) => {
            // An infrastructure failure still leaves a machine-readable
            // witness; it is never reported as success.
            println!(
                "{}",
                serde_json::json!({ "schema": 1, "error": e.to_string() })
            );
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let raw = match std::env::var("FOCKDUAL_THREADS") {
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(format!("FOCKDUAL_THREADS: {e}")),
        Ok(raw) => raw,
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("FOCKDUAL_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("FOCKDUAL_THREADS must be a positive integer".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("thread pool: {e}"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn suite_status(r: &RelationReport) -> String {
    if r.passed() {
        format!("ok ({} instances)", r.instances)
    } else {
        format!("FAILED ({} of {} instances)", r.failures.len(), r.instances)
    }
}

fn cmd_relations(a: RelationsArgs) -> CliResult {
    let reports = relation_suites(a.l, 2 * a.emax);
    for r in &reports {
        println!("suite {}: {}", r.suite, suite_status(r));
    }
    let passed = reports.iter().all(RelationReport::passed);
    if let Some(path) = &a.json {
        write_file(path, &to_json(&reports))?;
    } else if !passed {
        let failing: Vec<&RelationReport> = reports.iter().filter(|r| !r.passed()).collect();
        println!("{}", to_json(&failing));
    }
    Ok(passed)
}

fn group_kind(g: GroupArg) -> GroupKind {
    match g {
        GroupArg::Gl => GroupKind::Gl,
        GroupArg::O2l => GroupKind::OEven,
        GroupArg::O1 => GroupKind::OOne,
    }
}

fn group_config(g: GroupArg, l: u8, emax2: i64) -> FockConfig {
    match g {
        GroupArg::Gl | GroupArg::O2l => FockConfig::charged(l, emax2),
        GroupArg::O1 => FockConfig::neutral(emax2),
    }
}

fn sector_tag(lambda: &[i64], bar: bool, det: bool) -> String {
    let parts = lambda
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let suffix = if bar {
        "~"
    } else if det {
        " det"
    } else {
        ""
    };
    format!("({parts}){suffix}")
}

fn cmd_duality(a: DualityArgs) -> CliResult {
    let cfg = group_config(a.group, a.l, 2 * a.emax);
    let report = verify_duality(group_kind(a.group), &cfg)?;
    println!(
        "group {} on l={} emax2={} (sign {})",
        report.group, report.l, report.emax2, report.sign_epsilon
    );
    for s in &report.sectors {
        println!(
            "sector {} at doubled energy {} mult {}: {}",
            sector_tag(&s.lambda, s.bar, s.det),
            s.energy2,
            s.mult,
            if s.matched { "ok" } else { "MISMATCH" }
        );
    }
    let exact = report
        .completeness
        .iter()
        .filter(|r| r.lhs == r.rhs)
        .count();
    println!(
        "completeness: {exact} of {} energies exact",
        report.completeness.len()
    );
    let mut passed = report.passed();

    let content = match a.group {
        GroupArg::O2l if a.l == 1 => Some(virasoro_content_checks(&cfg)?),
        GroupArg::O1 => Some(virasoro_content_checks(&cfg)?),
        _ => None,
    };
    if let Some(c) = &content {
        println!("suite {}: {}", c.suite, suite_status(c));
        passed &= c.passed();
        if !c.passed() {
            println!("{}", to_json(c));
        }
    }

    if let Some(path) = &a.json {
        write_file(path, &to_json(&report))?;
    } else if !report.passed() {
        println!("{}", to_json(&report));
    }
    Ok(passed)
}

/// Both sides of a character identity as integer coefficients of
/// `q^0 ..= q^order`.
fn character_sides(id: CharId, order: i64) -> Result<(Vec<BigInt>, Vec<BigInt>), CliError> {
    let order2 = 2 * order;
    let sample = |s: &QSeries| -> Vec<BigInt> { (0..=order).map(|k| s.coeff(2 * k)).collect() };
    match id {
        CharId::Gauss => {
            let quotient = product_form(ProductKind::OneMinusQj, order2)
                .mul(&product_form(ProductKind::OnePlusQj, order2).inverse()?)?;
            Ok((sample(&quotient), sample(&gauss_rhs(order2))))
        }
        CharId::V1plus => {
            let series = ch_v1plus(order2);
            let cfg = FockConfig::charged(1, order2);
            let mut dims = Vec::new();
            for k in 0..=order {
                dims.push(BigInt::from(swap_even_dim(&cfg, 2 * k)?));
            }
            Ok((sample(&series), dims))
        }
        CharId::VirasoroSum => {
            let lhs = ch_v1plus(order2);
            let mut rhs = QSeries::zero(order2);
            let mut m = 0i64;
            while (2 * m) * (2 * m) <= order {
                rhs = rhs.add(&ch_virasoro_c1(m, order2))?;
                m += 1;
            }
            Ok((sample(&lhs), sample(&rhs)))
        }
        CharId::BosonFermion => {
            let cfg = FockConfig::charged(1, order2);
            let lhs = (0..=order).map(partition_count).collect();
            let rhs = (0..=order)
                .map(|k| BigInt::from(graded_dim(&cfg, Some(&[0]), None, 2 * k)))
                .collect();
            Ok((lhs, rhs))
        }
    }
}

/// Dimension of the swap-even part of the charge-zero block at one level.
fn swap_even_dim(cfg: &FockConfig, e2: i64) -> Result<usize, CliError> {
    let block = basis(cfg, Some(&[0]), None, e2);
    if block.is_empty() {
        return Ok(0);
    }
    let vecs: Vec<FockVector> = block
        .iter()
        .cloned()
        .map(FockVector::from_monomial)
        .collect();
    let (plus, _) = fockdual::duality::search::tau_split(cfg, 1, &block, &vecs)?;
    Ok(plus.len())
}

#[derive(Serialize)]
struct CharacterReport {
    schema: u32,
    id: String,
    order: i64,
    mismatches: Vec<CharacterMismatch>,
}

#[derive(Serialize)]
struct CharacterMismatch {
    k: i64,
    lhs: String,
    rhs: String,
}

fn cmd_characters(a: CharactersArgs) -> CliResult {
    let id_name = match a.id {
        CharId::Gauss => "gauss",
        CharId::V1plus => "v1plus",
        CharId::VirasoroSum => "virasoro-sum",
        CharId::BosonFermion => "boson-fermion",
    };
    let (lhs, rhs) = character_sides(a.id, a.order)?;
    let mismatches: Vec<CharacterMismatch> = (0..=a.order)
        .filter(|&k| lhs[k as usize] != rhs[k as usize])
        .map(|k| CharacterMismatch {
            k,
            lhs: lhs[k as usize].to_string(),
            rhs: rhs[k as usize].to_string(),
        })
        .collect();
    let passed = mismatches.is_empty();
    if passed {
        println!("characters {id_name}: ok, coefficients 0..={} agree", a.order);
    } else {
        for m in &mismatches {
            println!("characters {id_name}: q^{} differs: {} vs {}", m.k, m.lhs, m.rhs);
        }
    }

    if let Some(path) = &a.csv {
        let mut csv = String::from("k,lhs,rhs\n");
        for k in 0..=a.order {
            csv.push_str(&format!("{k},{},{}\n", lhs[k as usize], rhs[k as usize]));
        }
        write_file(path, &csv)?;
    }
    let report = CharacterReport {
        schema: 1,
        id: id_name.to_string(),
        order: a.order,
        mismatches,
    };
    if let Some(path) = &a.json {
        write_file(path, &to_json(&report))?;
    } else if !passed {
        println!("{}", to_json(&report));
    }
    Ok(passed)
}

#[derive(Serialize)]
struct LabelReport {
    schema: u32,
    group: String,
    l: u8,
    emax2: i64,
    sign_epsilon: i64,
    lambda: Vec<i64>,
    bar: bool,
    det: bool,
    exponent_set: String,
    predicted_weight: String,
    predicted_labels: Vec<String>,
    found: u64,
    energy2: Option<i64>,
    decoded_weight: Option<String>,
    decoded_labels: Option<Vec<String>>,
    #[serde(rename = "match")]
    matched: bool,
}

fn parse_lambda(raw: Option<&str>) -> Result<Vec<i64>, CliError> {
    let raw = raw.ok_or_else(|| CliError::Usage("this group needs --lambda".to_string()))?;
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--lambda part {p:?} is not an integer")))
        })
        .collect()
}

fn usage(e: fockdual::Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn cmd_labels(a: LabelsArgs) -> CliResult {
    let emax2 = 2 * a.emax;
    let depth = a.order as usize;
    let cfg = group_config(a.group, a.l, emax2);
    let eps = reconcile_signs(emax2.max(6))?.epsilon;

    // Predicted side: the weight map, exponent set, and labels of the
    // requested group label.
    let (lambda, bar, det, family, exponents, predicted_weight) = match a.group {
        GroupArg::Gl => {
            if a.det {
                return Err(CliError::Usage(
                    "--det applies to the orthogonal groups".to_string(),
                ));
            }
            let parts = parse_lambda(a.lambda.as_deref())?;
            if parts.len() != a.l as usize {
                return Err(CliError::Usage(format!(
                    "--lambda needs exactly {} parts for --l {}",
                    a.l, a.l
                )));
            }
            let lam = PartitionA::new(parts.clone()).map_err(usage)?;
            let w = weight_map_aa(&lam);
            (
                parts,
                false,
                false,
                LabelFamily::A,
                exponent_set_a(&lam),
                w.to_string(),
            )
        }
        GroupArg::O2l => {
            let parts = parse_lambda(a.lambda.as_deref())?;
            if parts.len() != a.l as usize {
                return Err(CliError::Usage(format!(
                    "--lambda needs exactly {} parts for --l {}",
                    a.l, a.l
                )));
            }
            let bar = *parts.last().expect("nonempty lambda") > 0;
            let lam = PartitionD::new(parts.clone(), bar, a.det).map_err(usage)?;
            let w = weight_map_dd(&lam);
            (
                parts,
                bar,
                a.det,
                LabelFamily::Dplus,
                exponent_set_d(&lam),
                w.to_string(),
            )
        }
        GroupArg::O1 => {
            if a.lambda.is_some() {
                return Err(CliError::Usage(
                    "o1 labels carry no partition; drop --lambda".to_string(),
                ));
            }
            // The sign label has the exponent multiset {1: 1}, the
            // trivial label the empty one, both at level one half.
            let exps = fockdual::symalg::labels::ExponentSet::new_dplus(
                if a.det {
                    [(1, 1)].into_iter().collect()
                } else {
                    BTreeMap::new()
                },
                fockdual::exact::ratio(1, 2),
            );
            let w = fockdual::duality::WeightDinf::new(
                [(i64::from(a.det), 1)].into_iter().collect(),
                fockdual::exact::ratio(1, 2),
            );
            (
                Vec::new(),
                false,
                a.det,
                LabelFamily::Dplus,
                exps,
                w.to_string(),
            )
        }
    };
    let predicted_labels = labels_from_exponents(&exponents, depth, eps)?;

    // Decoded side: search the window and read the labels off every
    // highest weight vector realizing this group label.
    let records = find_joint_hwvs(group_kind(a.group), &cfg)?;
    let hits: Vec<&HwvRecord> = records
        .iter()
        .filter(|r| match a.group {
            GroupArg::Gl => r.charges.iter().map(|m| -m).collect::<Vec<_>>() == lambda,
            GroupArg::O2l => {
                let mut w: Vec<i64> = r.charges.iter().map(|m| -m).collect();
                let last = w.last_mut().expect("at least one pair");
                let rec_bar = *last != 0;
                *last = last.abs();
                let rec_det = !rec_bar && r.tau_sign == Some(-1);
                w == lambda && rec_bar == bar && rec_det == det
            }
            GroupArg::O1 => r.neutral_parity.unwrap_or(0) == u8::from(det),
        })
        .collect();

    let expected = match (a.group, bar) {
        (GroupArg::O2l, true) => 2,
        _ => 1,
    };
    let mut matched = hits.len() == expected;
    let mut decoded_weight = None;
    let mut decoded_labels = None;
    let mut energy2 = None;
    for r in &hits {
        let w = match family {
            LabelFamily::A => decode_weight_a(&r.vector, &cfg).map(|w| w.to_string()),
            LabelFamily::Dplus => decode_weight_d(&r.vector, &cfg).map(|w| w.to_string()),
        };
        let labels = decode_labels(&r.vector, family, depth, &cfg);
        match (w, labels) {
            (Ok(w), Ok(labels)) => {
                matched &= w == predicted_weight && labels == predicted_labels;
                energy2 = Some(r.energy2);
                decoded_weight.get_or_insert(w);
                decoded_labels.get_or_insert(labels.entry_strings());
            }
            (w, labels) => {
                matched = false;
                if let Err(e) = w {
                    decoded_weight.get_or_insert(format!("error: {e}"));
                }
                if let Err(e) = labels {
                    decoded_labels.get_or_insert(vec![format!("error: {e}")]);
                }
            }
        }
    }

    let report = LabelReport {
        schema: 1,
        group: match a.group {
            GroupArg::Gl => "gl",
            GroupArg::O2l => "o2l",
            GroupArg::O1 => "o1",
        }
        .to_string(),
        l: cfg.pairs,
        emax2,
        sign_epsilon: eps,
        lambda,
        bar,
        det,
        exponent_set: exponents.to_string(),
        predicted_weight,
        predicted_labels: predicted_labels.entry_strings(),
        found: hits.len() as u64,
        energy2,
        decoded_weight,
        decoded_labels,
        matched,
    };

    println!(
        "label {} for group {} (sign {})",
        sector_tag(&report.lambda, report.bar, report.det),
        report.group,
        report.sign_epsilon
    );
    println!("exponents: {}", report.exponent_set);
    println!("predicted weight: {}", report.predicted_weight);
    println!("predicted labels: {}", report.predicted_labels.join(", "));
    match (&report.energy2, &report.decoded_weight, &report.decoded_labels) {
        (Some(e2), Some(w), Some(labels)) => {
            println!(
                "found {} highest weight vector(s) at doubled energy {e2}",
                report.found
            );
            println!("decoded weight: {w}");
            println!("decoded labels: {}", labels.join(", "));
        }
        _ => println!(
            "found {} highest weight vector(s); raise --emax to place this label in the window",
            report.found
        ),
    }
    println!("match: {}", if report.matched { "yes" } else { "NO" });

    if let Some(path) = &a.json {
        write_file(path, &to_json(&report))?;
    } else if !report.matched {
        println!("{}", to_json(&report));
    }
    Ok(report.matched)
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad arguments or input,
//! 3 the enumeration cap was hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::{check_distance_barrier, check_odd_usage, check_t_not_closed, classify};
use crate::engine::{closure, GeneratingSet, OrderReport, StabilizerChain, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::portrait::Portrait;
use crate::sylow::orders::{pow2, syl2_order_an, syl2_order_sn};
use crate::sylow::{
    all_pass, binary_decompose, build_h_subgroup, g_k_order_formula, s_beta, s_beta_portraits,
    syl2_an_gens, syl2_sn_gens, verify_frattini_action, verify_minimal, verify_order_relations,
    verify_semidirect, CheckReport, HSpec,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Largest tree depth for which `a2k` groups are enumerated element by element.
const MAX_ENUM_DEPTH: usize = 4;
const MAX_ENUM_DEGREE: usize = 16;
/// Stabilizer chains above this degree get slow enough to be a usage error.
const MAX_CHAIN_DEGREE: usize = 1 << 10;

#[derive(Parser, Debug)]
#[command(
    name = "sylow2",
    version,
    about = "Sylow 2-subgroups of symmetric and alternating groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderFamily {
    /// Syl₂(A_{2^k}) via the tree generators, parameter k
    A2k,
    An,
    Sn,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GensFamily {
    Sbeta,
    Sn,
    An,
    H,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Engine {
    Closure,
    Chain,
    Formula,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Closure => "closure",
            Engine::Chain => "chain",
            Engine::Formula => "formula",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Minimal,
    Semidirect,
    Frattini,
    Relations,
    Tclass,
    Distance,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of a Sylow 2-subgroup
    Order {
        #[arg(long, value_enum)]
        family: OrderFamily,
        #[arg(long)]
        param: usize,
        /// May be repeated; all requested engines must agree.
        #[arg(long, value_enum)]
        engine: Vec<Engine>,
    },
    /// Print a generating set
    Gens {
        #[arg(long, value_enum)]
        family: GensFamily,
        #[arg(long)]
        param: usize,
    },
    /// Run a verification driver and print its report
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        param: usize,
    },
    /// Classify a portrait read from a file
    Classify {
        #[arg(long)]
        portrait: PathBuf,
    },
    /// Binary decomposition of n with per-block Sylow orders
    Decompose {
        #[arg(long)]
        n: u64,
    },
    /// Write the sorted element list of a small group
    Export {
        #[arg(long, value_enum)]
        family: OrderFamily,
        #[arg(long)]
        param: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// What a successful command produced.
struct Output {
    text: String,
    json: String,
    pass: bool,
}

impl Output {
    fn new(text: String, json: &impl Serialize, pass: bool) -> Result<Output> {
        let json = serde_json::to_string_pretty(json).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Output { text, json, pass })
    }
}

pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(output) => {
            let body = match cli.format {
                Format::Text => output.text,
                Format::Json => output.json,
            };
            let _ = writeln!(out, "{}", body.trim_end());
            if output.pass {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn execute(command: &Command) -> Result<Output> {
    match *command {
        Command::Order {
            family,
            param,
            ref engine,
        } => order(family, param, engine),
        Command::Gens { family, param } => gens(family, param),
        Command::Verify { check, param } => verify(check, param),
        Command::Classify { ref portrait } => classify_file(portrait),
        Command::Decompose { n } => decompose(n),
        Command::Export {
            family,
            param,
            ref out,
        } => export(family, param, out),
    }
}

fn family_name(family: OrderFamily, param: usize) -> String {
    match family {
        OrderFamily::A2k => format!("Syl2(A_{{2^{param}}})"),
        OrderFamily::An => format!("Syl2(A_{param})"),
        OrderFamily::Sn => format!("Syl2(S_{param})"),
    }
}

fn family_degree(family: OrderFamily, param: usize) -> Result<usize> {
    match family {
        OrderFamily::A2k => {
            if !(2..=20).contains(&param) {
                return Err(Error::InvalidParameter(format!(
                    "a2k takes a tree depth in 2..=20, got {param}"
                )));
            }
            Ok(1 << param)
        }
        OrderFamily::An | OrderFamily::Sn => {
            if param == 0 {
                return Err(Error::InvalidParameter("degree must be positive".into()));
            }
            Ok(param)
        }
    }
}

fn family_gens(family: OrderFamily, param: usize) -> Result<GeneratingSet> {
    let degree = family_degree(family, param)?;
    match family {
        OrderFamily::A2k => s_beta(param),
        OrderFamily::Sn => syl2_sn_gens(degree),
        OrderFamily::An if degree < 3 => Ok(GeneratingSet::new(degree, Vec::new())?),
        OrderFamily::An => syl2_an_gens(degree),
    }
}

fn family_formula(family: OrderFamily, param: usize) -> BigUint {
    match family {
        OrderFamily::A2k => g_k_order_formula(param),
        OrderFamily::An => syl2_order_an(param as u64),
        OrderFamily::Sn => syl2_order_sn(param as u64),
    }
}

fn order(family: OrderFamily, param: usize, engines: &[Engine]) -> Result<Output> {
    let degree = family_degree(family, param)?;
    let mut engines = engines.to_vec();
    if engines.is_empty() {
        engines.push(Engine::Formula);
    }
    engines.sort();
    engines.dedup();
    if engines.contains(&Engine::Chain) && degree > MAX_CHAIN_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "chain engine limited to degree {MAX_CHAIN_DEGREE}, got {degree}"
        )));
    }
    let name = family_name(family, param);
    let mut reports = Vec::new();
    for &engine in &engines {
        let value = match engine {
            Engine::Formula => family_formula(family, param),
            Engine::Chain => StabilizerChain::new(&family_gens(family, param)?).order(),
            Engine::Closure => {
                BigUint::from(closure(&family_gens(family, param)?, DEFAULT_CAP)?.order())
            }
        };
        reports.push(OrderReport {
            name: name.clone(),
            degree,
            order: value.to_string(),
            engine: engine.name().to_string(),
        });
    }
    let agree = reports.windows(2).all(|w| w[0].order == w[1].order);
    let text = if agree {
        reports[0].order.clone()
    } else {
        reports
            .iter()
            .map(|r| format!("{}: {}", r.engine, r.order))
            .collect::<Vec<_>>()
            .join("\n")
    };
    Output::new(text, &reports, agree)
}

#[derive(Serialize)]
struct GensReport {
    name: String,
    degree: usize,
    generators: Vec<String>,
    portraits: Option<Vec<String>>,
}

fn gens(family: GensFamily, param: usize) -> Result<Output> {
    let (set, portraits) = match family {
        GensFamily::Sbeta => {
            let set = s_beta(param)?;
            let portraits = s_beta_portraits(param)?
                .iter()
                .map(Portrait::to_string)
                .collect::<Vec<_>>();
            (set, Some(portraits))
        }
        GensFamily::Sn => (family_gens(OrderFamily::Sn, param)?, None),
        GensFamily::An => (family_gens(OrderFamily::An, param)?, None),
        GensFamily::H => (build_h_subgroup(HSpec::for_degree(param)?)?, None),
    };
    let generators: Vec<String> = set
        .generators()
        .iter()
        .map(Permutation::to_string)
        .collect();
    let name = set
        .name()
        .map(str::to_string)
        .unwrap_or_else(|| format!("{family:?}({param})"));
    let mut text = format!("{name} on {} points\n", set.degree());
    for g in &generators {
        text.push_str(g);
        text.push('\n');
    }
    if let Some(ps) = &portraits {
        for p in ps {
            text.push('\n');
            text.push_str(p);
        }
    }
    let report = GensReport {
        name,
        degree: set.degree(),
        generators,
        portraits,
    };
    Output::new(text, &report, true)
}

fn verify(check: Check, param: usize) -> Result<Output> {
    let rows: Vec<CheckReport> = match check {
        Check::Minimal => verify_minimal(param)?.checks(),
        Check::Semidirect => verify_semidirect(param)?.checks(),
        Check::Frattini => verify_frattini_action(param)?.checks(),
        Check::Relations => verify_order_relations(param)?,
        Check::Tclass => {
            let odd = check_odd_usage(param)?;
            let mut rows = vec![
                CheckReport::new("t_not_closed", param, true, check_t_not_closed(param)?),
                CheckReport::new(
                    "half_parity_homomorphism",
                    param,
                    true,
                    odd.homomorphism_holds,
                ),
            ];
            if let Some(scan) = odd.word_scan_holds {
                rows.push(CheckReport::new("odd_usage_word_scan", param, true, scan));
            }
            rows
        }
        Check::Distance => vec![CheckReport::new(
            "distance_barrier",
            param,
            true,
            check_distance_barrier(param)?,
        )],
    };
    let pass = all_pass(&rows);
    let mut text = String::new();
    for r in &rows {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "[{mark}] {} ({}): expected {}, got {}\n",
            r.check, r.k_or_n, r.expected, r.got
        ));
    }
    Output::new(text, &rows, pass)
}

#[derive(Serialize)]
struct ClassifyReport {
    klass: crate::classify::Klass,
    half_counts: [usize; 2],
    level_indices: Vec<usize>,
}

fn classify_file(path: &PathBuf) -> Result<Output> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let portrait: Portrait = raw.parse()?;
    let class = classify(&portrait)?;
    let level_indices = (0..portrait.depth())
        .map(|l| portrait.level_index(l))
        .collect::<Result<Vec<_>>>()?;
    let report = ClassifyReport {
        klass: class.klass,
        half_counts: [class.first_half_count, class.second_half_count],
        level_indices,
    };
    let text = format!(
        "{:?}\nhalf counts: {} {}\nlevel indices: {:?}",
        report.klass, report.half_counts[0], report.half_counts[1], report.level_indices
    );
    Output::new(text, &report, true)
}

#[derive(Serialize)]
struct BlockReport {
    offset: usize,
    size: usize,
    sylow_order: String,
}

#[derive(Serialize)]
struct DecomposeReport {
    n: u64,
    parts: Vec<u32>,
    blocks: Vec<BlockReport>,
    sn_order: String,
    an_order: String,
}

fn decompose(n: u64) -> Result<Output> {
    let dec = binary_decompose(n)?;
    let blocks: Vec<BlockReport> = dec
        .blocks()
        .into_iter()
        .map(|(offset, size)| BlockReport {
            offset,
            size,
            sylow_order: pow2(size as u64 - 1).to_string(),
        })
        .collect();
    let report = DecomposeReport {
        n,
        parts: dec.parts.clone(),
        blocks,
        sn_order: syl2_order_sn(n).to_string(),
        an_order: syl2_order_an(n).to_string(),
    };
    let mut text = format!(
        "{n} = {}\n",
        dec.parts
            .iter()
            .map(|e| format!("2^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    );
    for b in &report.blocks {
        text.push_str(&format!(
            "block at {} size {}: order {}\n",
            b.offset, b.size, b.sylow_order
        ));
    }
    text.push_str(&format!(
        "Syl2(S_{n}): {}\nSyl2(A_{n}): {}",
        report.sn_order, report.an_order
    ));
    Output::new(text, &report, true)
}

#[derive(Serialize)]
struct ExportReport {
    name: String,
    order: usize,
    path: String,
}

fn export(family: OrderFamily, param: usize, out: &PathBuf) -> Result<Output> {
    let degree = family_degree(family, param)?;
    let small = match family {
        OrderFamily::A2k => param <= MAX_ENUM_DEPTH,
        _ => degree <= MAX_ENUM_DEGREE,
    };
    if !small {
        return Err(Error::InvalidParameter(format!(
            "export limited to depth {MAX_ENUM_DEPTH} / degree {MAX_ENUM_DEGREE}"
        )));
    }
    let group = closure(&family_gens(family, param)?, DEFAULT_CAP)?;
    std::fs::write(out, group.export())
        .map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
    let report = ExportReport {
        name: family_name(family, param),
        order: group.order(),
        path: out.display().to_string(),
    };
    let text = format!(
        "wrote {} elements of {} to {}",
        report.order, report.name, report.path
    );
    Output::new(text, &report, true)
}

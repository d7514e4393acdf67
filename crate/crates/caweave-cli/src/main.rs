//! `caweave`: build and analyze interleaving PN-sequences, synthesize the
//! 102-CA and 150/90-CA families that generate them, and check results
//! against the embedded reference tables.
//!
//! Exit codes: 0 success, 1 reproduce mismatch, 2 input validation,
//! 3 internal invariant breach (a falsified structural guarantee, not a
//! user error).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use caweave_core::ca102::{self, ledger_csv};
use caweave_core::ca9150::{self, decompose_columns};
use caweave_core::gf2field::{PrimitivePolynomial, ZechEntry, ZechTable, DEFAULT_MAX_DEGREE};
use caweave_core::interleave::{analyze, build_from_spec, InterleaveSpec};
use caweave_core::poly::GfPoly;
use caweave_core::reproduce::{reproduce, Reproduction, TableId, SUPPORTED_TABLE5_CELLS};
use caweave_core::{Ca102Error, Ca9150Error, InterleaveReport};

#[derive(Parser)]
#[command(
    name = "caweave",
    version,
    about = "Interleaving PN-sequences and the linear cellular automata that generate them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "102")]
    Ca102,
    #[value(name = "90150")]
    Ca90150,
}

#[derive(Args)]
struct SpecArgs {
    /// Primitive polynomial, as `1+x^2+x^5` or ascending bits `101001`
    #[arg(long)]
    poly: Option<String>,
    /// LFSR seed state, e.g. `11111`
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated stream shifts, e.g. `0,17`
    #[arg(long, value_delimiter = ',')]
    shifts: Option<Vec<u64>>,
    /// Full spec as JSON, inline or `@file.json`
    #[arg(long)]
    spec: Option<String>,
    /// Expected stream count; checked against the shift list
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Zech logarithm table of a primitive polynomial, or one entry
    Zech {
        #[arg(long)]
        poly: String,
        /// Print only Z(t)
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an interleaving sequence and report period and linear complexity
    Interleave {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize the CA generating an interleaving sequence in column 0
    Synth {
        /// CA family: `102` (regular cyclic) or `90150` (hybrid null)
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        spec: SpecArgs,
        /// Also print the time-space grid(s)
        #[arg(long)]
        render: bool,
        /// Cap for the minimal-length closure search (102 family)
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report both CA families for one spec side by side
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check computed results against the embedded reference tables
    Reproduce {
        /// One of table2..table7, ex102ca3, ex102ca4, ex102ca3x4, or `all`
        table: String,
        /// Comma-separated table-5 cells, e.g. `t3L3,t5L4`
        #[arg(long, value_delimiter = ',')]
        cells: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn from_ca102(e: Ca102Error) -> CliError {
    match e {
        Ca102Error::DecompositionFailed { .. } | Ca102Error::ClosureNotFound { .. } => {
            CliError::Internal(e.to_string())
        }
        _ => CliError::Validation(e.to_string()),
    }
}

fn from_ca9150(e: Ca9150Error) -> CliError {
    match e {
        Ca9150Error::NotFound { .. } | Ca9150Error::Decomposition(_) => {
            CliError::Internal(e.to_string())
        }
        _ => CliError::Validation(e.to_string()),
    }
}

fn degree_cap() -> usize {
    std::env::var("CAWEAVE_MAX_L")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn parse_poly(text: &str) -> Result<PrimitivePolynomial, CliError> {
    PrimitivePolynomial::parse_with_cap(text, degree_cap()).map_err(validation)
}

fn resolve_spec(args: &SpecArgs) -> Result<InterleaveSpec, CliError> {
    let spec = if let Some(raw) = &args.spec {
        if args.poly.is_some() || args.seed.is_some() || args.shifts.is_some() {
            return Err(CliError::Validation(
                "--spec replaces --poly/--seed/--shifts; give one or the other".into(),
            ));
        }
        let json = match raw.strip_prefix('@') {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?,
            None => raw.clone(),
        };
        serde_json::from_str::<InterleaveSpec>(&json).map_err(validation)?
    } else {
        let poly = args
            .poly
            .as_deref()
            .ok_or_else(|| CliError::Validation("--poly is required (or use --spec)".into()))?;
        let seed = args
            .seed
            .as_deref()
            .ok_or_else(|| CliError::Validation("--seed is required (or use --spec)".into()))?;
        let shifts = args
            .shifts
            .as_deref()
            .ok_or_else(|| CliError::Validation("--shifts is required (or use --spec)".into()))?;
        let poly = parse_poly(poly)?;
        let seed_bits = caweave_core::BitVec::parse(seed).map_err(validation)?;
        InterleaveSpec::new(&poly, &seed_bits, shifts).map_err(validation)?
    };
    if let Some(t) = args.t {
        if t != spec.stream_count() {
            return Err(CliError::Validation(format!(
                "--t {t} does not match the {} shifts given",
                spec.stream_count()
            )));
        }
    }
    Ok(spec)
}

/// Minimal polynomial printed as a power of the base polynomial when it is
/// one: `(1+x^2+x^5)^2`.
fn minpoly_display(report: &InterleaveReport, base: &GfPoly) -> String {
    match report.minimal_polynomial.as_power_of(base) {
        Some(e) if e >= 2 => format!("({base})^{e}"),
        _ => report.minimal_polynomial.to_string(),
    }
}

fn report_line(report: &InterleaveReport, base: &GfPoly) -> String {
    format!(
        "period={} lc={} max_lc={} minpoly={} annihilated_by_p_pow={} power_of_two_streams={}",
        report.period,
        report.lc,
        report.is_max_lc,
        minpoly_display(report, base),
        report.annihilated_by_p_pow,
        report.power_of_two_streams
    )
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn cmd_zech(
    poly: &str,
    t: Option<u64>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let poly = parse_poly(poly)?;
    let table = ZechTable::build(&poly);
    let mut payload = String::new();
    match (t, format) {
        (Some(t), Format::Json) => {
            let v = match table.zech(t) {
                ZechEntry::Infinity => serde_json::Value::Null,
                ZechEntry::Shift(s) => serde_json::json!(s),
            };
            writeln!(
                payload,
                "{}",
                serde_json::json!({"poly": poly.to_string(), "t": t % poly.period(), "zech": v})
            )
            .unwrap();
        }
        (Some(t), _) => {
            writeln!(payload, "{}", table.zech(t)).unwrap();
        }
        (None, Format::Json) => {
            let entries: Vec<serde_json::Value> = table
                .entries()
                .iter()
                .map(|e| match e {
                    ZechEntry::Infinity => serde_json::Value::Null,
                    ZechEntry::Shift(s) => serde_json::json!(s),
                })
                .collect();
            writeln!(
                payload,
                "{}",
                serde_json::json!({
                    "poly": poly.to_string(),
                    "period": poly.period(),
                    "zech": entries,
                })
            )
            .unwrap();
        }
        (None, _) => {
            writeln!(payload, "t Z(t)").unwrap();
            for (t, e) in table.entries().iter().enumerate() {
                writeln!(payload, "{t} {e}").unwrap();
            }
        }
    }
    emit(out, &payload)?;
    Ok(0)
}

fn cmd_interleave(args: &SpecArgs, format: Format, out: &Option<PathBuf>) -> Result<u8, CliError> {
    let spec = resolve_spec(args)?;
    let seq = build_from_spec(&spec);
    let report = analyze(&spec);
    let mut payload = String::new();
    match format {
        Format::Json => {
            writeln!(
                payload,
                "{}",
                serde_json::json!({
                    "spec": spec,
                    "sequence": seq,
                    "report": report,
                    "minpoly_factored": minpoly_display(&report, spec.poly().poly()),
                })
            )
            .unwrap();
        }
        _ => {
            writeln!(payload, "{seq}").unwrap();
            writeln!(payload, "{}", report_line(&report, spec.poly().poly())).unwrap();
        }
    }
    emit(out, &payload)?;
    Ok(0)
}

fn cmd_synth(
    family: Family,
    args: &SpecArgs,
    render: bool,
    cap: Option<usize>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let spec = resolve_spec(args)?;
    let mut payload = String::new();
    match family {
        Family::Ca102 => {
            let table = ZechTable::build(spec.poly());
            let syn = ca102::synthesize(&spec, &table).map_err(from_ca102)?;
            if let Some(cap) = cap {
                if (syn.minimal_length as usize) > cap {
                    return Err(CliError::Validation(format!(
                        "minimal length {} exceeds --cap {cap}",
                        syn.minimal_length
                    )));
                }
            }
            let ledger_json: Vec<serde_json::Value> = syn
                .ledger
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "column": e.column,
                        "parts": e.parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            match format {
                Format::Json => {
                    writeln!(
                        payload,
                        "{}",
                        serde_json::json!({
                            "family": "102",
                            "spec": syn.spec,
                            "predicted_length": syn.predicted_length,
                            "minimal_length": syn.minimal_length,
                            "period": syn.report.period,
                            "lc": syn.report.lc,
                            "recurrence_shifts": syn.recurrence_shifts,
                            "ledger": ledger_json,
                        })
                    )
                    .unwrap();
                }
                Format::Csv => payload.push_str(&ledger_csv(&syn.ledger)),
                Format::Text => {
                    writeln!(
                        payload,
                        "family=102 length={} predicted_length={} minimal_length={} period={} lc={}",
                        syn.minimal_length,
                        syn.predicted_length,
                        syn.minimal_length,
                        syn.report.period,
                        syn.report.lc
                    )
                    .unwrap();
                    let shifts: Vec<String> = syn
                        .recurrence_shifts
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    writeln!(payload, "recurrence_shifts={}", shifts.join(",")).unwrap();
                    payload.push_str(&ledger_csv(&syn.ledger));
                }
            }
            if render {
                writeln!(payload, "{}", syn.grid.render()).unwrap();
            }
        }
        Family::Ca90150 => {
            let syn = ca9150::synthesize(&spec).map_err(from_ca9150)?;
            match format {
                Format::Json => {
                    writeln!(
                        payload,
                        "{}",
                        serde_json::json!({
                            "family": "90150",
                            "spec": syn.spec,
                            "t": 1usize << syn.t_exp,
                            "length": syn.length(),
                            "rules": [syn.rules[0].to_string(), syn.rules[1].to_string()],
                            "verified": syn.verified,
                            "period": syn.report.period,
                            "lc": syn.report.lc,
                        })
                    )
                    .unwrap();
                }
                Format::Csv => {
                    let base = spec.base_sequence();
                    for (i, grid) in syn.grids.iter().enumerate() {
                        writeln!(payload, "# rules={}", syn.rules[i]).unwrap();
                        let ledger = decompose_columns(grid, spec.stream_count(), &base)
                            .map_err(from_ca9150)?;
                        payload.push_str(&ledger_csv(&ledger));
                    }
                }
                Format::Text => {
                    writeln!(
                        payload,
                        "family=90150 length={} period={} lc={}",
                        syn.length(),
                        syn.report.period,
                        syn.report.lc
                    )
                    .unwrap();
                    writeln!(payload, "rules={},{}", syn.rules[0], syn.rules[1]).unwrap();
                    writeln!(payload, "verified={},{}", syn.verified[0], syn.verified[1]).unwrap();
                }
            }
            if render {
                for (i, grid) in syn.grids.iter().enumerate() {
                    writeln!(payload, "rules {}:", syn.rules[i]).unwrap();
                    writeln!(payload, "{}", grid.render()).unwrap();
                }
            }
        }
    }
    emit(out, &payload)?;
    Ok(0)
}

fn cmd_compare(args: &SpecArgs, out: &Option<PathBuf>) -> Result<u8, CliError> {
    let spec = resolve_spec(args)?;
    let report = analyze(&spec);
    let mut payload = String::new();
    writeln!(payload, "{}", report_line(&report, spec.poly().poly())).unwrap();
    let table = ZechTable::build(spec.poly());
    let syn102 = ca102::synthesize(&spec, &table).map_err(from_ca102)?;
    writeln!(
        payload,
        "family=102: predicted_length={} minimal_length={} (regular, cyclic)",
        syn102.predicted_length, syn102.minimal_length
    )
    .unwrap();
    let syn9150 = ca9150::synthesize(&spec).map_err(from_ca9150)?;
    writeln!(
        payload,
        "family=90150: length={} rules={},{} verified={},{} (hybrid, null)",
        syn9150.length(),
        syn9150.rules[0],
        syn9150.rules[1],
        syn9150.verified[0],
        syn9150.verified[1]
    )
    .unwrap();
    writeln!(
        payload,
        "length ratio 102/90150 = {:.2}",
        syn102.minimal_length as f64 / syn9150.length() as f64
    )
    .unwrap();
    emit(out, &payload)?;
    Ok(0)
}

fn format_reproduction(rep: &Reproduction) -> String {
    let mut s = String::new();
    for c in &rep.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(s, "{mark} {}", c.label).unwrap();
        } else {
            writeln!(s, "{mark} {}: {}", c.label, c.detail).unwrap();
        }
    }
    writeln!(
        s,
        "{}: {}",
        rep.table,
        if rep.passed() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    s
}

fn cmd_reproduce(
    table: &str,
    cells: Option<&Vec<String>>,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    if let Some(cells) = cells {
        for cell in cells {
            let parsed = caweave_core::reproduce::parse_cell(cell)
                .ok_or_else(|| CliError::Validation(format!("unknown table-5 cell {cell:?}")))?;
            if !SUPPORTED_TABLE5_CELLS.contains(&parsed) {
                return Err(CliError::Validation(format!(
                    "cell {cell} is outside the exhaustive-sweep budget; supported: {}",
                    SUPPORTED_TABLE5_CELLS
                        .iter()
                        .map(|(t, l)| format!("t{t}L{l}"))
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
        }
    }
    let ids: Vec<TableId> = if table.eq_ignore_ascii_case("all") {
        TableId::ALL.to_vec()
    } else {
        vec![TableId::parse(table)
            .ok_or_else(|| CliError::Validation(format!("unknown table id {table:?}")))?]
    };
    let mut payload = String::new();
    let mut all_pass = true;
    for id in ids {
        let rep = reproduce(id, cells.map(|v| v.as_slice()));
        all_pass &= rep.passed();
        payload.push_str(&format_reproduction(&rep));
    }
    emit(out, &payload)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Zech {
            poly,
            t,
            format,
            out,
        } => cmd_zech(poly, *t, *format, out),
        Command::Interleave { spec, format, out } => cmd_interleave(spec, *format, out),
        Command::Synth {
            family,
            spec,
            render,
            cap,
            format,
            out,
        } => cmd_synth(*family, spec, *render, *cap, *format, out),
        Command::Compare { spec, out } => cmd_compare(spec, out),
        Command::Reproduce { table, cells, out } => cmd_reproduce(table, cells.as_ref(), out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

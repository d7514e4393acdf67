//! The regular, cyclic 102-CA family: grid derivation from a target
//! column, length prediction and minimal-length search, and the per-column
//! ledger of interleaved shifts.
//!
//! Rule 102 reads `x_j^{i+1} = x_j^i + x_{j+1}^i`; rearranged per column,
//! `c_{j+1}[i] = c_j[i] + c_j[i+1]` with indices modulo the period. Writing
//! the target in column 0 therefore determines every later column, and a
//! width-`M` cyclic CA generating the target exists exactly when the
//! derived column `M` equals column 0 again.

use std::fmt;

use crate::bits::BitVec;
use crate::ca_engine::CaGrid;
use crate::gf2field::ZechTable;
use crate::interleave::{analyze, InterleaveReport, InterleaveSpec};
use crate::seqcore::{gcd, lcm, shift_between, xor_combine, PeriodicSequence, ShiftOrZero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ca102Error {
    /// The predicted per-column shift recurrences are only available for
    /// two interleaved streams.
    UnsupportedStreamCount { got: usize },
    /// Synthesis length formulas hold for `2^t` streams.
    NonPowerOfTwoStreams { got: usize },
    /// Synthesis refuses interleavings below maximum linear complexity.
    MaxLcRequired { lc: usize, max: usize },
    /// A derived column failed to split into rotations of the base
    /// PN-sequence and zero streams. Never fires on valid inputs.
    DecompositionFailed { column: usize, part: usize },
    /// No cyclic closure within the predicted length. Never fires on
    /// valid inputs.
    ClosureNotFound { cap: usize },
}

impl fmt::Display for Ca102Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ca102Error::UnsupportedStreamCount { got } => {
                write!(f, "predicted ledger is defined for 2 streams, got {got}")
            }
            Ca102Error::NonPowerOfTwoStreams { got } => {
                write!(
                    f,
                    "length synthesis needs a power-of-two stream count, got {got}"
                )
            }
            Ca102Error::MaxLcRequired { lc, max } => {
                write!(
                    f,
                    "interleaving has LC {lc}, below the required maximum {max}"
                )
            }
            Ca102Error::DecompositionFailed { column, part } => {
                write!(
                    f,
                    "column {column} stream {part} is neither a rotation of the base nor zero"
                )
            }
            Ca102Error::ClosureNotFound { cap } => {
                write!(f, "no cyclic closure within {cap} columns")
            }
        }
    }
}

impl std::error::Error for Ca102Error {}

/// The interleaved composition of one CA column: for each of the `t`
/// streams, a rotation of the base PN-sequence or the zero sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnLedgerEntry {
    pub column: usize,
    pub parts: Vec<ShiftOrZero>,
}

/// CSV export of a ledger: `column_index,part_index,shift_or_ZERO`.
pub fn ledger_csv(ledger: &[ColumnLedgerEntry]) -> String {
    let mut out = String::from("column_index,part_index,shift_or_ZERO\n");
    for e in ledger {
        for (i, p) in e.parts.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", e.column, i, p));
        }
    }
    out
}

/// Columns 0..count of the grid determined by writing `target` in
/// column 0: `c_{j+1}[i] = c_j[i] + c_j[i+1]`, indices modulo the cycle
/// length.
pub fn derive_columns(target: &BitVec, count: usize) -> Vec<BitVec> {
    let mut cols = Vec::with_capacity(count);
    if count == 0 {
        return cols;
    }
    cols.push(target.clone());
    let mut rot = BitVec::zeros(target.len());
    for _ in 1..count {
        let prev = cols.last().expect("nonempty");
        rot.copy_rotated_from(prev, 1);
        let next = prev.xor(&rot);
        cols.push(next);
    }
    cols
}

/// The derived grid as rows (row 0 is the CA initial state).
pub fn derived_grid(target: &BitVec, width: usize) -> CaGrid {
    CaGrid::from_columns(&derive_columns(target, width))
}

/// Length of a 102-CA generating a maximum-LC `2^t_exp`-interleaving:
/// `2^t_exp · T / gcd(T, D)` with `D = Z(1)`.
pub fn predicted_length(table: &ZechTable, t_exp: u32) -> u64 {
    let t = table.period();
    let d = table.zech_one();
    (1u64 << t_exp) * t / gcd(t, d)
}

/// Length of a 102-CA generating the plain PN-sequence:
/// `T / gcd(Z(1), T)`.
pub fn pn_ca_length(table: &ZechTable) -> u64 {
    let t = table.period();
    t / gcd(table.zech_one(), t)
}

/// Smallest `j >= 1` whose derived column equals column 0 again, searched
/// by iterating the column derivation; `None` if the cap is exceeded.
pub fn minimal_length(target: &PeriodicSequence, cap: usize) -> Option<usize> {
    minimal_length_cycle(target.bits(), cap)
}

/// As [`minimal_length`], on a raw cycle.
pub fn minimal_length_cycle(cycle: &BitVec, cap: usize) -> Option<usize> {
    let mut cur = cycle.clone();
    let mut rot = BitVec::zeros(cycle.len());
    for j in 1..=cap {
        rot.copy_rotated_from(&cur, 1);
        cur.xor_assign(&rot);
        if &cur == cycle {
            return Some(j);
        }
    }
    None
}

/// Shift ledger predicted by the two-stream column recurrence.
///
/// Column 0 interleaves shifts `(0, k)`. If column `j` interleaves
/// streams with shift classes `(s1, s2)`, the derivation XORs adjacent
/// entries, so column `j+1` interleaves `(s1 ⊕ s2, s2 ⊕ (s1+1))` where
/// `⊕` is the Zech-combined shift of XORed rotations and the zero
/// sequence is absorbing. The `k = 0` and `k = 1` starts degenerate into
/// the alternating zero-stream patterns without special cases.
pub fn predicted_ledger(
    spec: &InterleaveSpec,
    table: &ZechTable,
    width: usize,
) -> Result<Vec<ColumnLedgerEntry>, Ca102Error> {
    if spec.stream_count() != 2 {
        return Err(Ca102Error::UnsupportedStreamCount {
            got: spec.stream_count(),
        });
    }
    let period = table.period();
    let k = spec.shifts()[1];
    let mut parts = (
        ShiftOrZero::Shift(0),
        if k == 0 {
            ShiftOrZero::Shift(0)
        } else {
            ShiftOrZero::Shift(k)
        },
    );
    let mut out = Vec::with_capacity(width);
    for column in 0..width {
        out.push(ColumnLedgerEntry {
            column,
            parts: vec![parts.0, parts.1],
        });
        let (s1, s2) = parts;
        parts = (
            xor_combine(table, s1, s2),
            xor_combine(table, s2, s1.advance(1, period)),
        );
    }
    Ok(out)
}

/// Ledger observed by deinterleaving every derived column and matching
/// each stream against the base PN-sequence.
pub fn observed_ledger(
    target: &PeriodicSequence,
    t: usize,
    base: &PeriodicSequence,
    width: usize,
) -> Result<Vec<ColumnLedgerEntry>, Ca102Error> {
    let cycle_len = lcm(target.period(), t * base.period());
    let cycle = target.cycle(cycle_len);
    let cols = derive_columns(&cycle, width);
    decompose_cycle_columns(&cols, t, base)
}

/// Match every column's `t` extracted streams as rotation-of-base or zero.
pub(crate) fn decompose_cycle_columns(
    cols: &[BitVec],
    t: usize,
    base: &PeriodicSequence,
) -> Result<Vec<ColumnLedgerEntry>, Ca102Error> {
    let mut out = Vec::with_capacity(cols.len());
    for (column, col) in cols.iter().enumerate() {
        let n = col.len() / t;
        let mut parts = Vec::with_capacity(t);
        for part in 0..t {
            let stream = BitVec::from_fn(n, |i| col.get(i * t + part));
            if stream.is_zero() {
                parts.push(ShiftOrZero::Zero);
                continue;
            }
            let seq = PeriodicSequence::from_cycle(&stream)
                .map_err(|_| Ca102Error::DecompositionFailed { column, part })?;
            match shift_between(base, &seq) {
                Some(k) => parts.push(ShiftOrZero::Shift(k)),
                None => return Err(Ca102Error::DecompositionFailed { column, part }),
            }
        }
        out.push(ColumnLedgerEntry { column, parts });
    }
    Ok(out)
}

/// A synthesized 102-CA for one interleaving spec.
#[derive(Debug, Clone)]
pub struct Ca102Synthesis {
    pub spec: InterleaveSpec,
    pub report: InterleaveReport,
    /// `2^t · T / gcd(T, D)`.
    pub predicted_length: u64,
    /// First cyclic closure; always divides the predicted length.
    pub minimal_length: u64,
    /// Derived grid at the predicted width; row 0 is the CA seed state.
    pub grid: CaGrid,
    /// Interleaved composition of every column.
    pub ledger: Vec<ColumnLedgerEntry>,
    /// Observed rotation of column `t·r` relative to column 0, for
    /// `r = 1, 2, …`; equals `r·t·D mod t·T`.
    pub recurrence_shifts: Vec<u64>,
}

/// Build, measure and verify the 102-CA generating the spec's
/// interleaving in column 0. Refuses degraded (non-maximum-LC) specs and
/// non-power-of-two stream counts.
pub fn synthesize(spec: &InterleaveSpec, table: &ZechTable) -> Result<Ca102Synthesis, Ca102Error> {
    let t = spec.stream_count();
    if !t.is_power_of_two() {
        return Err(Ca102Error::NonPowerOfTwoStreams { got: t });
    }
    let report = analyze(spec);
    let max = t * spec.poly().degree();
    if !report.is_max_lc {
        return Err(Ca102Error::MaxLcRequired { lc: report.lc, max });
    }
    let t_exp = t.trailing_zeros();
    let predicted = predicted_length(table, t_exp) as usize;
    let cycle = spec.full_cycle();
    let minimal = minimal_length_cycle(&cycle, predicted)
        .ok_or(Ca102Error::ClosureNotFound { cap: predicted })?;
    let cols = derive_columns(&cycle, predicted + 1);
    // cyclic closure at the predicted width
    if cols[predicted] != cols[0] {
        return Err(Ca102Error::ClosureNotFound { cap: predicted });
    }
    let base = spec.base_sequence();
    let ledger = decompose_cycle_columns(&cols[..predicted], t, &base)?;
    let target = PeriodicSequence::from_cycle(&cycle).expect("nonempty");
    let mut recurrence_shifts = Vec::new();
    for r in 1..(predicted / t.max(1)) {
        let col = PeriodicSequence::from_cycle(&cols[r * t]).expect("nonempty");
        if let Some(s) = shift_between(&target, &col) {
            recurrence_shifts.push(s);
        }
    }
    Ok(Ca102Synthesis {
        spec: spec.clone(),
        report,
        predicted_length: predicted as u64,
        minimal_length: minimal as u64,
        grid: CaGrid::from_columns(&cols[..predicted]),
        ledger,
        recurrence_shifts,
    })
}

//! The hybrid, null 150/90-CA family: per-polynomial synthesis of the two
//! length-`L` rule strings, the complement-and-mirror expansion to length
//! `2^t·L`, and column-0 verification against a target sequence.
//!
//! Synthesis is an exhaustive search over all `2^L` rule strings with an
//! O(L) acceptance test: the characteristic polynomial of the
//! null-boundary CA is the determinant of a tridiagonal matrix whose
//! diagonal carries the rule bits, computed by
//! `Δ_k = (x + c_k)·Δ_{k-1} + Δ_{k-2}` over GF(2). The search doubles as
//! an oracle that exactly two strings match, mutual mirror images.

use std::fmt;

use crate::bits::BitVec;
use crate::ca102::{decompose_cycle_columns, Ca102Error, ColumnLedgerEntry};
use crate::ca_engine::{run, Boundary, CaGrid, Rule, RuleVector};
use crate::gf2field::PrimitivePolynomial;
use crate::interleave::{analyze, InterleaveReport, InterleaveSpec};
use crate::poly::GfPoly;
use crate::seqcore::PeriodicSequence;

/// Degree budget for the exhaustive rule-string search.
pub const SYNTH_MAX_DEGREE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ca9150Error {
    /// The exhaustive search did not find exactly two matching rule
    /// strings. Never fires for a primitive polynomial.
    NotFound { poly: String, found: usize },
    /// Degree beyond the search budget.
    BudgetExceeded { degree: usize, budget: usize },
    /// Synthesis refuses interleavings below maximum linear complexity.
    MaxLcRequired { lc: usize, max: usize },
    /// The expansion algorithm covers `2^t` streams.
    NonPowerOfTwoStreams { got: usize },
    /// A column failed to decompose into rotations of the base or zero.
    Decomposition(Ca102Error),
    /// Rule strings are written over {0, 1}.
    BadRuleString(String),
}

impl fmt::Display for Ca9150Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ca9150Error::NotFound { poly, found } => {
                write!(
                    f,
                    "expected exactly two 150/90 rule strings for {poly}, found {found}"
                )
            }
            Ca9150Error::BudgetExceeded { degree, budget } => {
                write!(
                    f,
                    "degree {degree} exceeds the synthesis budget of {budget}"
                )
            }
            Ca9150Error::MaxLcRequired { lc, max } => {
                write!(
                    f,
                    "interleaving has LC {lc}, below the required maximum {max}"
                )
            }
            Ca9150Error::NonPowerOfTwoStreams { got } => {
                write!(
                    f,
                    "mirror expansion needs a power-of-two stream count, got {got}"
                )
            }
            Ca9150Error::Decomposition(e) => e.fmt(f),
            Ca9150Error::BadRuleString(s) => {
                write!(f, "rule string {s:?} must be over {{0, 1}}")
            }
        }
    }
}

impl std::error::Error for Ca9150Error {}

/// A 150/90 rule assignment in the 0/1 notation: `1` is rule 150, `0` is
/// rule 90. Always paired with a null boundary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HybridRuleString {
    cells: Vec<bool>,
}

impl HybridRuleString {
    pub fn new(cells: Vec<bool>) -> Self {
        HybridRuleString { cells }
    }

    pub fn parse(s: &str) -> Result<Self, Ca9150Error> {
        let cells = s
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(Ca9150Error::BadRuleString(s.to_string())),
            })
            .collect::<Result<_, _>>()?;
        Ok(HybridRuleString { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn mirror(&self) -> HybridRuleString {
        HybridRuleString {
            cells: self.cells.iter().rev().copied().collect(),
        }
    }

    pub fn to_rule_vector(&self) -> RuleVector {
        RuleVector::new(
            self.cells
                .iter()
                .map(|&b| if b { Rule::Rule150 } else { Rule::Rule90 })
                .collect(),
            Boundary::Null,
        )
        .expect("nonempty rule string")
    }
}

impl fmt::Display for HybridRuleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.cells {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for HybridRuleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HybridRuleString({})", self)
    }
}

/// Characteristic polynomial of the null-boundary 150/90 CA with these
/// rules: the tridiagonal determinant recurrence
/// `Δ_k = (x + c_k)·Δ_{k-1} + Δ_{k-2}`, `Δ_0 = 1`.
pub fn characteristic_polynomial(rules: &HybridRuleString) -> GfPoly {
    let mut prev = GfPoly::zero();
    let mut cur = GfPoly::one();
    for &c in rules.cells() {
        let factor = GfPoly::from_coeffs(&[c, true]); // x + c
        let next = factor.mul(&cur).add(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// The two hybrid, null 150/90-CAs of length `L` whose characteristic
/// polynomial equals `p(x)`, found by exhaustive search. The pair is
/// returned in lexicographic order of the rule strings and the two are
/// mirror images of each other; either condition failing would falsify
/// the synthesis premise and reports `NotFound`.
pub fn synthesize_pn_ca(
    p: &PrimitivePolynomial,
) -> Result<(HybridRuleString, HybridRuleString), Ca9150Error> {
    let l = p.degree();
    if l > SYNTH_MAX_DEGREE {
        return Err(Ca9150Error::BudgetExceeded {
            degree: l,
            budget: SYNTH_MAX_DEGREE,
        });
    }
    let mut found = Vec::new();
    for m in 0u64..(1 << l) {
        // lexicographic order: bit 0 of m is the leftmost cell, with m
        // counting through strings in left-to-right binary order
        let cells: Vec<bool> = (0..l).map(|i| m >> (l - 1 - i) & 1 == 1).collect();
        let candidate = HybridRuleString::new(cells);
        if characteristic_polynomial(&candidate) == *p.poly() {
            found.push(candidate);
        }
    }
    if found.len() != 2 || found[0] != found[1].mirror() {
        return Err(Ca9150Error::NotFound {
            poly: p.to_string(),
            found: found.len(),
        });
    }
    let second = found.pop().expect("two entries");
    let first = found.pop().expect("two entries");
    Ok((first, second))
}

/// One expansion step: complement the last rule bit, then append the
/// mirror image. Applied `t_exp` times the string grows to
/// `2^t_exp` times its length.
///
/// ```
/// use caweave_core::ca9150::{mirror_expand, HybridRuleString};
///
/// let s = HybridRuleString::parse("01111").unwrap();
/// assert_eq!(mirror_expand(&s, 1).to_string(), "0111001110");
/// ```
pub fn mirror_expand(s: &HybridRuleString, t_exp: u32) -> HybridRuleString {
    let mut cells = s.cells().to_vec();
    for _ in 0..t_exp {
        if let Some(last) = cells.last_mut() {
            *last = !*last;
        }
        let mirrored: Vec<bool> = cells.iter().rev().copied().collect();
        cells.extend(mirrored);
    }
    HybridRuleString::new(cells)
}

/// Derive the full grid of the null-boundary 150/90 CA from its 0-th
/// column and check that it is consistent.
///
/// Rearranging the null updates column by column:
/// rule 90 at cell `j` gives `c_{j+1}[i] = c_{j-1}[i] + c_j[i+1]`, rule
/// 150 additionally XORs `c_j[i]` (with `c_{-1} = 0`). The check is
/// two-fold: the rightmost column must satisfy its own null-boundary
/// equation, and the forward CA run from row 0 must reproduce the grid.
pub fn verify_column0(rules: &HybridRuleString, target: &PeriodicSequence) -> (bool, CaGrid) {
    verify_column0_cycle(rules, target.bits())
}

/// As [`verify_column0`], on a raw cycle of the intended column 0.
pub fn verify_column0_cycle(rules: &HybridRuleString, cycle: &BitVec) -> (bool, CaGrid) {
    let m = rules.len();
    let p = cycle.len();
    if m == 0 || p == 0 {
        return (false, CaGrid::from_columns(&[]));
    }
    let mut cols: Vec<BitVec> = Vec::with_capacity(m);
    cols.push(cycle.clone());
    for j in 1..m {
        let prev = &cols[j - 1];
        let mut next = prev.rotate_left(1);
        if rules.cells()[j - 1] {
            next.xor_assign(prev);
        }
        if j >= 2 {
            next.xor_assign(&cols[j - 2]);
        }
        cols.push(next);
    }
    // right-edge closure: the last column's own update must hold
    let last = &cols[m - 1];
    let mut expect = last.rotate_left(1);
    if rules.cells()[m - 1] {
        expect.xor_assign(last);
    }
    let closed = if m >= 2 {
        expect == cols[m - 2]
    } else {
        expect.is_zero()
    };

    let grid = CaGrid::from_columns(&cols);
    let verified = closed && {
        let rv = rules.to_rule_vector();
        match run(&rv, grid.row(0), p.saturating_sub(1)) {
            Ok(forward) => forward == grid,
            Err(_) => false,
        }
    };
    (verified, grid)
}

/// Deinterleave every grid column into `t` streams and match each as a
/// rotation of the base PN-sequence or the zero stream.
pub fn decompose_columns(
    grid: &CaGrid,
    t: usize,
    base: &PeriodicSequence,
) -> Result<Vec<ColumnLedgerEntry>, Ca9150Error> {
    let cols: Vec<BitVec> = (0..grid.width())
        .map(|j| grid.column_cycle(j).expect("in range"))
        .collect();
    decompose_cycle_columns(&cols, t, base).map_err(Ca9150Error::Decomposition)
}

/// Exact bit counts over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceStats {
    pub ones: usize,
    pub zeros: usize,
    /// Fraction of ones, 0 for the empty-of-ones sequence.
    pub ratio: f64,
}

pub fn balance_stats(seq: &PeriodicSequence) -> BalanceStats {
    let ones = seq.bits().count_ones();
    let zeros = seq.period() - ones;
    BalanceStats {
        ones,
        zeros,
        ratio: ones as f64 / seq.period() as f64,
    }
}

/// The pair of expanded 150/90-CAs for one interleaving spec, with
/// column-0 verification results.
#[derive(Debug, Clone)]
pub struct Ca9150Synthesis {
    pub spec: InterleaveSpec,
    pub report: InterleaveReport,
    pub t_exp: u32,
    /// Expanded rule strings, each of length `2^t_exp · L`.
    pub rules: [HybridRuleString; 2],
    pub verified: [bool; 2],
    pub grids: [CaGrid; 2],
}

impl Ca9150Synthesis {
    pub fn length(&self) -> usize {
        self.rules[0].len()
    }
}

/// Synthesize the two 150/90-CAs of length `2^t·L` generating the spec's
/// interleaving: Cattell-Muzio pair for `p(x)`, then `t` rounds of
/// complement-and-mirror expansion, then column-0 verification.
pub fn synthesize(spec: &InterleaveSpec) -> Result<Ca9150Synthesis, Ca9150Error> {
    let t = spec.stream_count();
    if !t.is_power_of_two() {
        return Err(Ca9150Error::NonPowerOfTwoStreams { got: t });
    }
    let report = analyze(spec);
    let max = t * spec.poly().degree();
    if !report.is_max_lc {
        return Err(Ca9150Error::MaxLcRequired { lc: report.lc, max });
    }
    let t_exp = t.trailing_zeros();
    let (a, b) = synthesize_pn_ca(spec.poly())?;
    let ea = mirror_expand(&a, t_exp);
    let eb = mirror_expand(&b, t_exp);
    let cycle = spec.full_cycle();
    let (va, ga) = verify_column0_cycle(&ea, &cycle);
    let (vb, gb) = verify_column0_cycle(&eb, &cycle);
    Ok(Ca9150Synthesis {
        spec: spec.clone(),
        report,
        t_exp,
        rules: [ea, eb],
        verified: [va, vb],
        grids: [ga, gb],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prim(s: &str) -> PrimitivePolynomial {
        PrimitivePolynomial::parse(s).unwrap()
    }

    fn rules(s: &str) -> HybridRuleString {
        HybridRuleString::parse(s).unwrap()
    }

    #[test]
    fn characteristic_polynomial_examples() {
        assert_eq!(
            characteristic_polynomial(&rules("001")).to_string(),
            "1+x^2+x^3"
        );
        assert_eq!(
            characteristic_polynomial(&rules("11110")).to_string(),
            "1+x^2+x^5"
        );
        assert_eq!(
            characteristic_polynomial(&rules("01111")).to_string(),
            "1+x^2+x^5"
        );
    }

    #[test]
    fn synthesize_pn_ca_examples() {
        let (a, b) = synthesize_pn_ca(&prim("1+x^2+x^5")).unwrap();
        assert_eq!(
            (a.to_string(), b.to_string()),
            ("01111".into(), "11110".into())
        );
        let (a, b) = synthesize_pn_ca(&prim("1+x+x^2+x^4+x^5")).unwrap();
        assert_eq!(
            (a.to_string(), b.to_string()),
            ("00001".into(), "10000".into())
        );
        let (a, b) = synthesize_pn_ca(&prim("1+x^2+x^3")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("001".into(), "100".into()));
        // mirror pairing
        assert_eq!(a.mirror(), b);
    }

    #[test]
    fn mirror_expand_examples() {
        assert_eq!(mirror_expand(&rules("01111"), 1).to_string(), "0111001110");
        assert_eq!(mirror_expand(&rules("11110"), 1).to_string(), "1111111111");
        assert_eq!(mirror_expand(&rules("01111"), 0).to_string(), "01111");
        assert_eq!(mirror_expand(&rules("001"), 2).len(), 12);
    }

    #[test]
    fn verify_pn_column0() {
        // the degree-3 pair generates the PN-sequence 1001110 in column 0
        let target = PeriodicSequence::parse("1001110").unwrap();
        let (ok, grid) = verify_column0(&rules("001"), &target);
        assert!(ok);
        assert_eq!(grid.width(), 3);
        assert_eq!(grid.height(), 7);
        assert_eq!(grid.row(0).to_string(), "101");
        let (ok, grid) = verify_column0(&rules("100"), &target);
        assert!(ok);
        assert_eq!(grid.row(0).to_string(), "111");
        // a wrong rule string fails verification
        let (ok, _) = verify_column0(&rules("011"), &target);
        assert!(!ok);
    }

    #[test]
    fn decompose_pn_grid_columns() {
        let target = PeriodicSequence::parse("1001110").unwrap();
        let (ok, grid) = verify_column0(&rules("001"), &target);
        assert!(ok);
        let ledger = decompose_columns(&grid, 1, &target).unwrap();
        assert_eq!(ledger.len(), 3);
        for e in &ledger {
            assert_eq!(e.parts.len(), 1);
            assert!(!e.parts[0].is_zero());
        }
    }

    #[test]
    fn synthesize_62_bit_example() {
        let spec = InterleaveSpec::parse("1+x^2+x^5", "11111", &[0, 17]).unwrap();
        let syn = synthesize(&spec).unwrap();
        assert_eq!(syn.length(), 10);
        assert_eq!(syn.rules[0].to_string(), "0111001110");
        assert_eq!(syn.rules[1].to_string(), "1111111111");
        assert_eq!(syn.verified, [true, true]);
        assert_eq!(syn.grids[0].height(), 62);
    }

    #[test]
    fn synthesize_refuses_degraded_spec() {
        let spec = InterleaveSpec::parse("1+x^2+x^3", "111", &[0, 4]).unwrap();
        assert_eq!(
            synthesize(&spec).unwrap_err(),
            Ca9150Error::MaxLcRequired { lc: 3, max: 6 }
        );
    }

    #[test]
    fn balance_examples() {
        let pn = PeriodicSequence::parse("1110100").unwrap();
        let b = balance_stats(&pn);
        assert_eq!((b.ones, b.zeros), (4, 3));
        // column 1 of the k=1 grid interleaves a PN rotation with the zero
        // stream: 4 ones against 10 zeros over the 14-bit period
        let spec = InterleaveSpec::parse("1+x^2+x^3", "111", &[0, 1]).unwrap();
        let cols = crate::ca102::derive_columns(&spec.full_cycle(), 2);
        let col1 = PeriodicSequence::from_cycle(&cols[1]).unwrap();
        let b = balance_stats(&col1);
        assert_eq!((b.ones, b.zeros), (4, 10));
        assert!(b.zeros >= b.ones + 7 - 1);
        let z = balance_stats(&PeriodicSequence::parse("0").unwrap());
        assert_eq!(z.ratio, 0.0);
    }

    #[test]
    fn budget_guard() {
        let p = PrimitivePolynomial::parse_with_cap("1+x^2+x^21", 24).unwrap();
        assert_eq!(
            synthesize_pn_ca(&p).unwrap_err(),
            Ca9150Error::BudgetExceeded {
                degree: 21,
                budget: SYNTH_MAX_DEGREE
            }
        );
    }
}

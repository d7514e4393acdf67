//! One-dimensional linear cellular automata over GF(2) for rules 90, 150,
//! 102 and 60, with cyclic or null boundaries.
//!
//! Every one of these rules XORs some subset of the three-cell
//! neighborhood, so a whole row steps as
//! `(left & mask_l) ^ (self & mask_s) ^ (right & mask_r)` with one
//! per-rule-vector mask per tap. Regular and hybrid rule vectors share the
//! same word-parallel path.

use std::fmt;

use crate::bits::BitVec;
use crate::seqcore::PeriodicSequence;

/// The four linear rules, by their Wolfram numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Rule90,
    Rule150,
    Rule102,
    Rule60,
}

impl Rule {
    /// Which of (left, self, right) the rule XORs.
    fn taps(self) -> (bool, bool, bool) {
        match self {
            Rule::Rule90 => (true, false, true),
            Rule::Rule150 => (true, true, true),
            Rule::Rule102 => (false, true, true),
            Rule::Rule60 => (true, true, false),
        }
    }

    pub fn number(self) -> u16 {
        match self {
            Rule::Rule90 => 90,
            Rule::Rule150 => 150,
            Rule::Rule102 => 102,
            Rule::Rule60 => 60,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Extreme cells are adjacent to each other.
    Cyclic,
    /// Extreme cells see constant-zero neighbors.
    Null,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaError {
    WidthMismatch { width: usize, got: usize },
    IndexOutOfRange { index: usize, width: usize },
    EmptyGrid,
    EmptyRuleVector,
    UnknownRuleFormat(String),
}

impl fmt::Display for CaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaError::WidthMismatch { width, got } => {
                write!(f, "state has {got} cells, rule vector has {width}")
            }
            CaError::IndexOutOfRange { index, width } => {
                write!(f, "column {index} out of range for width {width}")
            }
            CaError::EmptyGrid => write!(f, "grid has no rows to extract a column from"),
            CaError::EmptyRuleVector => write!(f, "rule vector must have at least one cell"),
            CaError::UnknownRuleFormat(s) => write!(f, "cannot parse rule vector {s:?}"),
        }
    }
}

impl std::error::Error for CaError {}

/// Per-cell rule assignment plus boundary kind.
#[derive(Clone, PartialEq, Eq)]
pub struct RuleVector {
    cells: Vec<Rule>,
    boundary: Boundary,
    mask_left: BitVec,
    mask_self: BitVec,
    mask_right: BitVec,
}

impl RuleVector {
    pub fn new(cells: Vec<Rule>, boundary: Boundary) -> Result<Self, CaError> {
        if cells.is_empty() {
            return Err(CaError::EmptyRuleVector);
        }
        let w = cells.len();
        let mut mask_left = BitVec::zeros(w);
        let mut mask_self = BitVec::zeros(w);
        let mut mask_right = BitVec::zeros(w);
        for (i, r) in cells.iter().enumerate() {
            let (l, s, rr) = r.taps();
            mask_left.set(i, l);
            mask_self.set(i, s);
            mask_right.set(i, rr);
        }
        Ok(RuleVector {
            cells,
            boundary,
            mask_left,
            mask_self,
            mask_right,
        })
    }

    /// All cells follow one rule.
    pub fn regular(rule: Rule, width: usize, boundary: Boundary) -> Result<Self, CaError> {
        RuleVector::new(vec![rule; width], boundary)
    }

    /// Null-boundary 90/150 vector from the 0/1 notation
    /// (`1` = rule 150, `0` = rule 90).
    pub fn hybrid_90150(bits: &str) -> Result<Self, CaError> {
        let cells: Vec<Rule> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(Rule::Rule90),
                '1' => Ok(Rule::Rule150),
                _ => Err(CaError::UnknownRuleFormat(bits.to_string())),
            })
            .collect::<Result<_, _>>()?;
        RuleVector::new(cells, Boundary::Null)
    }

    /// Accepts `"102x7"` / `"60x7"` for regular vectors (boundary given
    /// separately) and a 0/1 string for hybrid null 90/150 vectors.
    pub fn parse(s: &str, boundary: Boundary) -> Result<Self, CaError> {
        if let Some((rule, width)) = s.split_once('x') {
            let width: usize = width
                .parse()
                .map_err(|_| CaError::UnknownRuleFormat(s.to_string()))?;
            let rule = match rule {
                "102" => Rule::Rule102,
                "60" => Rule::Rule60,
                "150" => Rule::Rule150,
                "90" => Rule::Rule90,
                _ => return Err(CaError::UnknownRuleFormat(s.to_string())),
            };
            return RuleVector::regular(rule, width, boundary);
        }
        RuleVector::hybrid_90150(s)
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Rule] {
        &self.cells
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// The two families studied here: regular 102/60 with cyclic boundary,
    /// or hybrid 90/150 with null boundary.
    pub fn is_canonical(&self) -> bool {
        let regular_10260 = self.cells.iter().all(|r| *r == Rule::Rule102)
            || self.cells.iter().all(|r| *r == Rule::Rule60);
        let hybrid_90150 = self
            .cells
            .iter()
            .all(|r| matches!(r, Rule::Rule90 | Rule::Rule150));
        match self.boundary {
            Boundary::Cyclic => regular_10260,
            Boundary::Null => hybrid_90150,
        }
    }

    fn neighbor(&self, state: &BitVec, offset: isize) -> BitVec {
        let w = state.len();
        match self.boundary {
            Boundary::Cyclic => {
                state.rotate_left(((offset % w as isize) + w as isize) as usize % w)
            }
            Boundary::Null => {
                // shift with zero fill
                BitVec::from_fn(w, |i| {
                    let j = i as isize + offset;
                    if j < 0 || j >= w as isize {
                        false
                    } else {
                        state.get(j as usize)
                    }
                })
            }
        }
    }
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self
            .cells
            .iter()
            .all(|r| matches!(r, Rule::Rule90 | Rule::Rule150))
        {
            for r in &self.cells {
                f.write_str(if *r == Rule::Rule150 { "1" } else { "0" })?;
            }
            Ok(())
        } else if self.cells.windows(2).all(|w| w[0] == w[1]) {
            write!(f, "{}x{}", self.cells[0], self.cells.len())
        } else {
            let parts: Vec<String> = self.cells.iter().map(|r| r.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleVector({}, {:?})", self, self.boundary)
    }
}

/// One synchronous update of the whole row.
pub fn step(rv: &RuleVector, state: &BitVec) -> Result<BitVec, CaError> {
    if state.len() != rv.width() {
        return Err(CaError::WidthMismatch {
            width: rv.width(),
            got: state.len(),
        });
    }
    let mut left = rv.neighbor(state, -1);
    left.and_assign(&rv.mask_left);
    let mut own = state.clone();
    own.and_assign(&rv.mask_self);
    let mut right = rv.neighbor(state, 1);
    right.and_assign(&rv.mask_right);
    left.xor_assign(&own);
    left.xor_assign(&right);
    Ok(left)
}

/// Time × cell bit matrix: row 0 is the initial state, row `r+1` steps
/// row `r`.
#[derive(Clone, PartialEq, Eq)]
pub struct CaGrid {
    rows: Vec<BitVec>,
    width: usize,
}

impl CaGrid {
    pub fn from_rows(rows: Vec<BitVec>) -> CaGrid {
        let width = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged grid rows");
        CaGrid { rows, width }
    }

    /// Build a grid from its columns (all of equal height).
    pub fn from_columns(cols: &[BitVec]) -> CaGrid {
        let height = cols.first().map_or(0, BitVec::len);
        assert!(
            cols.iter().all(|c| c.len() == height),
            "ragged grid columns"
        );
        let rows = (0..height)
            .map(|i| BitVec::from_fn(cols.len(), |j| cols[j].get(i)))
            .collect();
        CaGrid {
            rows,
            width: cols.len(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    /// The vertical sequence of cell `j`, as raw bits.
    pub fn column_cycle(&self, j: usize) -> Result<BitVec, CaError> {
        if j >= self.width {
            return Err(CaError::IndexOutOfRange {
                index: j,
                width: self.width,
            });
        }
        Ok(BitVec::from_fn(self.rows.len(), |i| self.rows[i].get(j)))
    }

    /// The vertical sequence of cell `j`, period-minimized. The caller is
    /// responsible for having run enough steps to cover a whole number of
    /// periods.
    pub fn column(&self, j: usize) -> Result<PeriodicSequence, CaError> {
        let cycle = self.column_cycle(j)?;
        PeriodicSequence::from_cycle(&cycle).map_err(|_| CaError::EmptyGrid)
    }

    /// Text rendering, one line per row: `█` for 1, `·` for 0.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for b in row.iter() {
                out.push(if b { '█' } else { '·' });
            }
        }
        out
    }

    /// CSV export: one row per line, cells comma-separated.
    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|b| if b { "1" } else { "0" })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for CaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CaGrid({}x{})", self.height(), self.width())
    }
}

/// Evolve `steps` updates from the initial state; the grid has
/// `steps + 1` rows.
pub fn run(rv: &RuleVector, init: &BitVec, steps: usize) -> Result<CaGrid, CaError> {
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(init.clone());
    for _ in 0..steps {
        let next = step(rv, rows.last().expect("nonempty"))?;
        rows.push(next);
    }
    Ok(CaGrid::from_rows(rows))
}

/// Height sufficient for period-sensitive column extraction: two declared
/// period bounds, so minimality of the observed period can be verified.
pub fn sufficient_height(period_bound: usize) -> usize {
    2 * period_bound
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn step_rule102_cyclic() {
        let rv = RuleVector::regular(Rule::Rule102, 7, Boundary::Cyclic).unwrap();
        assert_eq!(step(&rv, &bv("1110010")).unwrap(), bv("0010111"));
    }

    #[test]
    fn step_hybrid_null() {
        let rv = RuleVector::hybrid_90150("001").unwrap();
        assert_eq!(step(&rv, &bv("101")).unwrap(), bv("001"));
        let rv = RuleVector::hybrid_90150("100").unwrap();
        assert_eq!(step(&rv, &bv("111")).unwrap(), bv("001"));
    }

    #[test]
    fn zero_state_stays_zero() {
        for rule in [Rule::Rule90, Rule::Rule150, Rule::Rule102, Rule::Rule60] {
            for boundary in [Boundary::Cyclic, Boundary::Null] {
                let rv = RuleVector::regular(rule, 9, boundary).unwrap();
                assert!(step(&rv, &BitVec::zeros(9)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn width_mismatch_rejected() {
        let rv = RuleVector::regular(Rule::Rule90, 5, Boundary::Null).unwrap();
        assert!(matches!(
            step(&rv, &bv("1100")),
            Err(CaError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn run_and_columns() {
        let rv = RuleVector::regular(Rule::Rule102, 7, Boundary::Cyclic).unwrap();
        let grid = run(&rv, &bv("1110010"), 6).unwrap();
        assert_eq!(grid.height(), 7);
        assert_eq!(grid.column(0).unwrap().to_string(), "1001110");
        assert!(grid.column(7).is_err());

        let all_zero = run(&rv, &BitVec::zeros(7), 6).unwrap();
        assert_eq!(all_zero.column(3).unwrap().to_string(), "0");
    }

    #[test]
    fn rule90_null_column_advance() {
        // with rule 90 at cell 0, column 1 is column 0 one step ahead
        let rv = RuleVector::hybrid_90150("001").unwrap();
        let grid = run(&rv, &bv("100"), 13).unwrap();
        let c0 = grid.column_cycle(0).unwrap();
        let c1 = grid.column_cycle(1).unwrap();
        assert_eq!(c1.slice(0, 12), BitVec::from_fn(12, |i| c0.get(i + 1)));
    }

    #[test]
    fn mirror_symmetry_102_vs_60() {
        // reversing cell order of a 102-cyclic evolution gives the
        // 60-cyclic evolution of the reversed initial state
        let init = bv("110100101");
        let rv102 = RuleVector::regular(Rule::Rule102, 9, Boundary::Cyclic).unwrap();
        let rv60 = RuleVector::regular(Rule::Rule60, 9, Boundary::Cyclic).unwrap();
        let g102 = run(&rv102, &init, 20).unwrap();
        let g60 = run(&rv60, &init.reversed(), 20).unwrap();
        for i in 0..=20 {
            assert_eq!(g102.row(i).reversed(), *g60.row(i));
        }
    }

    #[test]
    fn render_and_csv() {
        let grid = CaGrid::from_rows(vec![bv("101")]);
        assert_eq!(grid.render(), "█·█");
        assert_eq!(grid.to_csv(), "1,0,1");
        let empty = CaGrid::from_rows(vec![]);
        assert_eq!(empty.render(), "");
    }

    #[test]
    fn rule_vector_parse_and_display() {
        let rv = RuleVector::parse("102x7", Boundary::Cyclic).unwrap();
        assert_eq!(rv.to_string(), "102x7");
        assert!(rv.is_canonical());
        let rv = RuleVector::parse("0111001110", Boundary::Null).unwrap();
        assert_eq!(rv.to_string(), "0111001110");
        assert!(rv.is_canonical());
        let rv = RuleVector::regular(Rule::Rule102, 3, Boundary::Null).unwrap();
        assert!(!rv.is_canonical());
        assert!(RuleVector::parse("abc", Boundary::Null).is_err());
    }
}

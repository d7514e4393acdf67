//! Embedded golden data: the worked grids and tables that the `reproduce`
//! checks and the verification suites diff against. Transcribed once into
//! `data/`; each file carries a header naming its source table.

use crate::bits::BitVec;
use crate::ca_engine::CaGrid;
use crate::seqcore::ShiftOrZero;

macro_rules! data {
    ($name:ident, $file:literal) => {
        pub fn $name() -> CaGrid {
            parse_grid(include_str!(concat!("../data/", $file)))
        }
    };
}

data!(table2a, "table2a.txt");
data!(table2b, "table2b.txt");
data!(table3a, "table3a.txt");
data!(table3b, "table3b.txt");
data!(table7a, "table7a.txt");
data!(table7b, "table7b.txt");
data!(grid_ex102ca3, "grid_ex102ca3.txt");
data!(grid_ex102ca4, "grid_ex102ca4.txt");
data!(grid_ex102ca3x4, "grid_ex102ca3x4.txt");

fn data_lines(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_grid(raw: &str) -> CaGrid {
    let rows: Vec<BitVec> = data_lines(raw)
        .map(|l| BitVec::parse(l).expect("golden grid row"))
        .collect();
    CaGrid::from_rows(rows)
}

/// The `(k1, k2)` shift pairs of the 14 columns of the width-14 102-CA
/// for the degree-3, shift-1 interleaving.
pub fn table4_shifts() -> Vec<(ShiftOrZero, ShiftOrZero)> {
    let raw = include_str!("../data/table4_shifts.txt");
    let mut rows: Vec<Vec<ShiftOrZero>> = Vec::new();
    for line in data_lines(raw) {
        let cells = line
            .split_whitespace()
            .skip(1)
            .map(|c| {
                if c == "-" {
                    ShiftOrZero::Zero
                } else {
                    ShiftOrZero::Shift(c.parse().expect("golden shift"))
                }
            })
            .collect();
        rows.push(cells);
    }
    assert_eq!(rows.len(), 2, "table 4 has a k1 and a k2 row");
    rows[0]
        .iter()
        .copied()
        .zip(rows[1].iter().copied())
        .collect()
}

/// One cell of the t-interleaving CA-length table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table5Cell {
    pub t: usize,
    pub degree: usize,
    pub bound: u64,
}

impl Table5Cell {
    /// Cell name in the `t3L4` style.
    pub fn name(&self) -> String {
        format!("t{}L{}", self.t, self.degree)
    }
}

pub fn table5() -> Vec<Table5Cell> {
    data_lines(include_str!("../data/table5.txt"))
        .map(|l| {
            let mut it = l.split_whitespace();
            Table5Cell {
                t: it.next().unwrap().parse().expect("t"),
                degree: it.next().unwrap().parse().expect("L"),
                bound: it.next().unwrap().parse().expect("bound"),
            }
        })
        .collect()
}

/// The two 150/90 rule strings per degree-5 primitive polynomial.
pub fn table6() -> Vec<(String, [String; 2])> {
    data_lines(include_str!("../data/table6.txt"))
        .map(|l| {
            let mut it = l.split_whitespace();
            let poly = it.next().expect("poly").to_string();
            let a = it.next().expect("first rule string").to_string();
            let b = it.next().expect("second rule string").to_string();
            (poly, [a, b])
        })
        .collect()
}

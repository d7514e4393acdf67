//! Interleaving PN-sequences and the one-dimensional linear cellular
//! automata that generate them.
//!
//! The library builds `t`-interleaving sequences from rotations of one
//! PN-sequence, measures their period and linear complexity, and
//! synthesizes the two CA families that produce them as vertical (per-cell)
//! sequences:
//!
//! * regular, cyclic rule-102 CAs, sized by `2^t·T / gcd(T, Z(1))` and
//!   verified by cyclic-closure search ([`ca102`]);
//! * hybrid, null 150/90 CAs of length `2^t·L`, obtained from the
//!   per-polynomial rule-string pair by complement-and-mirror expansion
//!   ([`ca9150`]).
//!
//! Supporting layers: GF(2^L) arithmetic with Zech logarithm tables
//! ([`gf2field`]), periodic-sequence algebra with Berlekamp-Massey
//! ([`seqcore`]), interleaving construction and analysis ([`interleave`]),
//! a generic linear-CA engine ([`ca_engine`]), and golden-data
//! reproduction checks ([`golden`], [`reproduce`]).

pub mod bits;
pub mod ca102;
pub mod ca9150;
pub mod ca_engine;
pub mod gf2field;
pub mod golden;
pub mod interleave;
pub mod poly;
pub mod reproduce;
pub mod seqcore;

pub use bits::BitVec;
pub use ca102::{Ca102Error, Ca102Synthesis, ColumnLedgerEntry};
pub use ca9150::{Ca9150Error, Ca9150Synthesis, HybridRuleString};
pub use ca_engine::{Boundary, CaGrid, Rule, RuleVector};
pub use gf2field::{FieldError, PrimitivePolynomial, ZechEntry, ZechTable};
pub use interleave::{InterleaveError, InterleaveReport, InterleaveSpec};
pub use poly::GfPoly;
pub use seqcore::{Lfsr, PeriodicSequence, SeqError, ShiftOrZero};

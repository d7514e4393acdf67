//! Periodic binary sequences: LFSR generation, minimal periods, linear
//! complexity, and the shift algebra of XOR-combined rotations.
//!
//! The central fact used throughout: XORing a PN-sequence with a rotation
//! of itself yields another rotation of the same sequence, and the new
//! shift is read off the Zech table. [`sum_shift`], [`combined_shift`] and
//! [`xor_combine`] are the three faces of that identity, with the all-zero
//! outcome carried as a first-class [`ShiftOrZero::Zero`] marker.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitVec;
use crate::gf2field::{PrimitivePolynomial, ZechEntry, ZechTable};
use crate::poly::GfPoly;

/// Errors from sequence construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqError {
    /// A sequence needs at least one bit.
    EmptyInput,
    /// PN-sequence generation from the all-zero state.
    ZeroState,
    /// LFSR state length does not match the polynomial degree.
    StateLengthMismatch { expected: usize, got: usize },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::EmptyInput => write!(f, "empty input sequence"),
            SeqError::ZeroState => write!(f, "all-zero LFSR state cannot produce a PN-sequence"),
            SeqError::StateLengthMismatch { expected, got } => {
                write!(
                    f,
                    "LFSR state has {got} bits, polynomial degree needs {expected}"
                )
            }
        }
    }
}

impl std::error::Error for SeqError {}

/// One full minimal period of a periodic binary sequence.
///
/// The stored cycle always has minimal length: no proper divisor of the
/// length is itself a period. All index arithmetic is modulo the period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    bits: BitVec,
}

impl PeriodicSequence {
    /// Normalize a whole number of periods down to one minimal period.
    pub fn from_cycle(bits: &BitVec) -> Result<Self, SeqError> {
        if bits.is_empty() {
            return Err(SeqError::EmptyInput);
        }
        let t = minimal_period(bits);
        Ok(PeriodicSequence {
            bits: bits.slice(0, t),
        })
    }

    pub fn parse(s: &str) -> Result<Self, SeqError> {
        let bits = BitVec::parse(s).map_err(|_| SeqError::EmptyInput)?;
        Self::from_cycle(&bits)
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i % self.bits.len())
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// The sequence starting `k` positions later. Rotation preserves
    /// minimality of the period.
    pub fn rotate_left(&self, k: usize) -> PeriodicSequence {
        PeriodicSequence {
            bits: self.bits.rotate_left(k),
        }
    }

    /// The first `n` bits of the infinite sequence.
    pub fn cycle(&self, n: usize) -> BitVec {
        self.bits.cycle_to(n)
    }

    pub fn xor(&self, other: &PeriodicSequence) -> PeriodicSequence {
        let n = lcm(self.period(), other.period());
        let combined = self.cycle(n).xor(&other.cycle(n));
        PeriodicSequence::from_cycle(&combined).expect("nonempty by construction")
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicSequence(T={}, {})", self.period(), self.bits)
    }
}

impl Serialize for PeriodicSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PeriodicSequence", 2)?;
        s.serialize_field("period", &self.period())?;
        s.serialize_field("bits", &self.bits.to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for PeriodicSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            period: usize,
            bits: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let seq =
            PeriodicSequence::parse(&raw.bits).map_err(|e| D::Error::custom(e.to_string()))?;
        if seq.period() != raw.period {
            return Err(D::Error::custom(format!(
                "declared period {} but minimal period is {}",
                raw.period,
                seq.period()
            )));
        }
        Ok(seq)
    }
}

/// Smallest `d` dividing `bits.len()` with `bits[i] == bits[i mod d]`.
pub fn minimal_period(bits: &BitVec) -> usize {
    let n = bits.len();
    'outer: for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        for i in d..n {
            if bits.get(i) != bits.get(i - d) {
                continue 'outer;
            }
        }
        return d;
    }
    n
}

/// A linear feedback shift register: characteristic polynomial plus the
/// current `L`-bit state `(a_0, …, a_{L-1})`.
#[derive(Clone, Debug)]
pub struct Lfsr {
    poly: PrimitivePolynomial,
    state: BitVec,
}

impl Lfsr {
    pub fn new(poly: &PrimitivePolynomial, state: &BitVec) -> Result<Self, SeqError> {
        if state.len() != poly.degree() {
            return Err(SeqError::StateLengthMismatch {
                expected: poly.degree(),
                got: state.len(),
            });
        }
        Ok(Lfsr {
            poly: poly.clone(),
            state: state.clone(),
        })
    }

    pub fn poly(&self) -> &PrimitivePolynomial {
        &self.poly
    }

    /// First `n` bits of the recurring sequence
    /// `a_{i+L} = p_{L-1} a_{i+L-1} + … + p_0 a_i` seeded with the state.
    pub fn generate(&self, n: usize) -> BitVec {
        let l = self.poly.degree();
        let mut window: Vec<bool> = self.state.iter().collect();
        let mut out = BitVec::zeros(0);
        for _ in 0..n {
            out.push(window[0]);
            let mut fb = false;
            for (j, w) in window.iter().enumerate() {
                if self.poly.poly().coeff(j) {
                    fb ^= *w;
                }
            }
            window.rotate_left(1);
            window[l - 1] = fb;
        }
        out
    }

    /// One full period `T = 2^L - 1` of the PN-sequence.
    pub fn pn_sequence(&self) -> Result<PeriodicSequence, SeqError> {
        if self.state.is_zero() {
            return Err(SeqError::ZeroState);
        }
        let cycle = self.generate(self.poly.period() as usize);
        Ok(PeriodicSequence { bits: cycle })
    }
}

/// Linear complexity and the minimal polynomial of one period, via
/// Berlekamp-Massey over two full periods of input.
///
/// The returned polynomial is in characteristic orientation: with shifts
/// written as `U`, `m(U)` annihilates the sequence
/// (`Σ_j m_j s_{i+j} = 0` for all `i`), so the PN-sequence of a primitive
/// polynomial gets that polynomial back.
pub fn linear_complexity(seq: &PeriodicSequence) -> (usize, GfPoly) {
    let input = seq.cycle(2 * seq.period());
    let (lc, connection) = berlekamp_massey(&input);
    // reverse the connection polynomial over degree `lc`
    let minimal = GfPoly::from_coeffs(
        &(0..=lc)
            .map(|j| connection.get(lc - j).copied().unwrap_or(false))
            .collect::<Vec<_>>(),
    );
    (lc, minimal)
}

/// Berlekamp-Massey over GF(2): length of the shortest LFSR generating the
/// input, plus its connection polynomial (ascending, constant term 1).
pub fn berlekamp_massey(s: &BitVec) -> (usize, Vec<bool>) {
    let n = s.len();
    let mut c = vec![false; n + 1];
    let mut b = vec![false; n + 1];
    c[0] = true;
    b[0] = true;
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..n {
        let mut d = s.get(i);
        for (j, &cj) in c.iter().enumerate().take(l + 1).skip(1) {
            if cj && s.get(i - j) {
                d = !d;
            }
        }
        if !d {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            for j in 0..=n.saturating_sub(m) {
                if b[j] {
                    c[j + m] ^= true;
                }
            }
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            for j in 0..=n.saturating_sub(m) {
                if b[j] {
                    c[j + m] ^= true;
                }
            }
            m += 1;
        }
    }
    c.truncate(l + 1);
    (l, c)
}

/// Smallest `k` with `b_i = a_{i+k}` for all `i`, or `None` when the
/// sequences are not rotations of one another.
pub fn shift_between(a: &PeriodicSequence, b: &PeriodicSequence) -> Option<u64> {
    if a.period() != b.period() {
        return None;
    }
    // cheap fingerprint before the O(T^2) scan
    if a.bits().count_ones() != b.bits().count_ones() {
        return None;
    }
    let mut scratch = BitVec::zeros(a.period());
    for k in 0..a.period() {
        scratch.copy_rotated_from(a.bits(), k);
        if &scratch == b.bits() {
            return Some(k as u64);
        }
    }
    None
}

/// Either a rotation amount modulo the period, or the all-zero sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftOrZero {
    Zero,
    Shift(u64),
}

impl ShiftOrZero {
    /// Advance the underlying sequence `n` steps; the zero sequence is
    /// fixed by shifting.
    pub fn advance(self, n: u64, period: u64) -> ShiftOrZero {
        match self {
            ShiftOrZero::Zero => ShiftOrZero::Zero,
            ShiftOrZero::Shift(k) => ShiftOrZero::Shift((k + n) % period),
        }
    }

    pub fn shift(&self) -> Option<u64> {
        match self {
            ShiftOrZero::Zero => None,
            ShiftOrZero::Shift(k) => Some(*k),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ShiftOrZero::Zero)
    }
}

impl fmt::Display for ShiftOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftOrZero::Zero => f.write_str("ZERO"),
            ShiftOrZero::Shift(k) => write!(f, "{k}"),
        }
    }
}

/// Shift of `{a_i + a_{i+k}}` relative to `{a_i}`: `Z(k)` for `k != 0`,
/// and the zero sequence for `k = 0`.
pub fn sum_shift(table: &ZechTable, k: u64) -> ShiftOrZero {
    match table.zech(k) {
        ZechEntry::Infinity => ShiftOrZero::Zero,
        ZechEntry::Shift(d) => ShiftOrZero::Shift(d),
    }
}

/// Shift of `{a_{i+k1} + a_{i+k2}}` relative to `{a_i}`:
/// `Z(k2 - k1) + k1` modulo `T`, and the zero sequence when `k1 = k2`.
pub fn combined_shift(table: &ZechTable, k1: u64, k2: u64) -> ShiftOrZero {
    let t = table.period();
    let delta = (k2 + t - (k1 % t)) % t;
    match table.zech(delta) {
        ZechEntry::Infinity => ShiftOrZero::Zero,
        ZechEntry::Shift(d) => ShiftOrZero::Shift((d + k1) % t),
    }
}

/// Shift of the XOR of two rotations-or-zero of the same PN-sequence.
/// Zero is absorbing: XOR with the zero sequence returns the other operand.
pub fn xor_combine(table: &ZechTable, a: ShiftOrZero, b: ShiftOrZero) -> ShiftOrZero {
    match (a, b) {
        (ShiftOrZero::Zero, x) | (x, ShiftOrZero::Zero) => x,
        (ShiftOrZero::Shift(k1), ShiftOrZero::Shift(k2)) => combined_shift(table, k1, k2),
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prim(s: &str) -> PrimitivePolynomial {
        PrimitivePolynomial::parse(s).unwrap()
    }

    fn pn(poly: &str, state: &str) -> PeriodicSequence {
        Lfsr::new(&prim(poly), &BitVec::parse(state).unwrap())
            .unwrap()
            .pn_sequence()
            .unwrap()
    }

    #[test]
    fn lfsr_generation() {
        assert_eq!(pn("1+x+x^3", "111").to_string(), "1110010");
        assert_eq!(pn("1+x^3+x^4", "1111").to_string(), "111101011001000");
        assert_eq!(
            pn("1+x^2+x^5", "11111").to_string(),
            "1111100011011101010000100101100"
        );
        // the first L bits echo the state
        let lfsr = Lfsr::new(&prim("1+x+x^3"), &BitVec::parse("101").unwrap()).unwrap();
        assert_eq!(lfsr.generate(3).to_string(), "101");
        // zero state: fine for generate, error for a PN-sequence
        let z = Lfsr::new(&prim("1+x+x^3"), &BitVec::zeros(3)).unwrap();
        assert!(z.generate(5).is_zero());
        assert_eq!(z.pn_sequence().unwrap_err(), SeqError::ZeroState);
    }

    #[test]
    fn minimal_periods() {
        assert_eq!(PeriodicSequence::parse("1110010").unwrap().period(), 7);
        assert_eq!(PeriodicSequence::parse("000000").unwrap().period(), 1);
        assert_eq!(PeriodicSequence::parse("101101").unwrap().period(), 3);
        assert!(PeriodicSequence::parse("").is_err());
        // rotation preserves the period
        let s = pn("1+x^2+x^3", "111");
        for k in 0..7 {
            assert_eq!(s.rotate_left(k).period(), 7);
        }
    }

    #[test]
    fn berlekamp_massey_pn() {
        let s = pn("1+x^2+x^3", "111");
        let (lc, mp) = linear_complexity(&s);
        assert_eq!(lc, 3);
        assert_eq!(mp, *prim("1+x^2+x^3").poly());
        // every PN-sequence returns its generating polynomial
        for degree in 2..=8 {
            for p in crate::gf2field::enumerate_primitive(degree) {
                let state = BitVec::from_fn(degree, |_| true);
                let s = Lfsr::new(&p, &state).unwrap().pn_sequence().unwrap();
                let (lc, mp) = linear_complexity(&s);
                assert_eq!(lc, degree);
                assert_eq!(&mp, p.poly());
            }
        }
    }

    #[test]
    fn berlekamp_massey_zero() {
        let (lc, mp) = linear_complexity(&PeriodicSequence::parse("0").unwrap());
        assert_eq!(lc, 0);
        assert!(mp.is_one());
    }

    #[test]
    fn shift_between_examples() {
        let a = PeriodicSequence::parse("1110010").unwrap();
        assert_eq!(
            shift_between(&a, &PeriodicSequence::parse("0010111").unwrap()),
            Some(3)
        );
        assert_eq!(shift_between(&a, &a), Some(0));
        assert_eq!(
            shift_between(&a, &PeriodicSequence::parse("1100101").unwrap()),
            Some(1)
        );
        assert_eq!(
            shift_between(&a, &PeriodicSequence::parse("1111010").unwrap()),
            None
        );
        assert_eq!(
            shift_between(&a, &PeriodicSequence::parse("110").unwrap()),
            None
        );
    }

    #[test]
    fn sum_shift_examples() {
        let t3a = ZechTable::build(&prim("1+x+x^3"));
        assert_eq!(sum_shift(&t3a, 3), ShiftOrZero::Shift(1));
        assert_eq!(sum_shift(&t3a, 0), ShiftOrZero::Zero);
        let t3b = ZechTable::build(&prim("1+x^2+x^3"));
        assert_eq!(sum_shift(&t3b, 1), ShiftOrZero::Shift(5));
    }

    #[test]
    fn combined_shift_examples() {
        let t3a = ZechTable::build(&prim("1+x+x^3"));
        assert_eq!(combined_shift(&t3a, 0, 3), ShiftOrZero::Shift(1));
        assert_eq!(combined_shift(&t3a, 4, 4), ShiftOrZero::Zero);
        let t3b = ZechTable::build(&prim("1+x^2+x^3"));
        assert_eq!(combined_shift(&t3b, 1, 2), ShiftOrZero::Shift(6));
    }

    #[test]
    fn shift_identity_small() {
        // {a_i + a_{i+k}} = {a_{i+Z(k)}} on an explicit example
        let a = pn("1+x+x^3", "111");
        let table = ZechTable::build(&prim("1+x+x^3"));
        let x = a.bits().xor(&a.rotate_left(3).bits().clone());
        assert_eq!(x, a.rotate_left(1).bits().clone());
        assert_eq!(sum_shift(&table, 3), ShiftOrZero::Shift(1));
    }

    #[test]
    fn xor_combine_absorbs_zero() {
        let table = ZechTable::build(&prim("1+x^2+x^3"));
        use ShiftOrZero::{Shift, Zero};
        assert_eq!(xor_combine(&table, Zero, Shift(4)), Shift(4));
        assert_eq!(xor_combine(&table, Shift(4), Zero), Shift(4));
        assert_eq!(xor_combine(&table, Zero, Zero), Zero);
        assert_eq!(xor_combine(&table, Shift(2), Shift(2)), Zero);
        assert_eq!(xor_combine(&table, Shift(1), Shift(2)), Shift(6));
    }

    #[test]
    fn json_round_trip() {
        let s = PeriodicSequence::parse("1110010").unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"period":7,"bits":"1110010"}"#);
        let back: PeriodicSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        // declared period must be the minimal one
        assert!(
            serde_json::from_str::<PeriodicSequence>(r#"{"period":6,"bits":"111111"}"#).is_err()
        );
    }
}

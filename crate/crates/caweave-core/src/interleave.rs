//! Construction, decomposition and analysis of interleaving sequences.
//!
//! A `t`-interleaving sequence round-robins `t` period-`T` sequences:
//! `s_{n·t + j} = stream_j[n]`. Here the streams are rotations of one
//! PN-sequence, described by an [`InterleaveSpec`]; [`analyze`] measures
//! the period and linear complexity of the result and checks them against
//! the `p(x)^t` bound that holds when `t` is a power of two.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitVec;
use crate::gf2field::{FieldError, PrimitivePolynomial};
use crate::poly::GfPoly;
use crate::seqcore::{lcm, linear_complexity, Lfsr, PeriodicSequence, SeqError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterleaveError {
    /// Streams to interleave must share one period.
    PeriodMismatch {
        periods: Vec<usize>,
    },
    /// The stream count must divide the cycle length being split.
    NotDivisible {
        cycle: usize,
        t: usize,
    },
    /// At least one stream is required.
    NoStreams,
    Field(FieldError),
    Seq(SeqError),
}

impl fmt::Display for InterleaveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterleaveError::PeriodMismatch { periods } => {
                write!(f, "streams have differing periods {periods:?}")
            }
            InterleaveError::NotDivisible { cycle, t } => {
                write!(
                    f,
                    "stream count {t} does not divide the cycle length {cycle}"
                )
            }
            InterleaveError::NoStreams => write!(f, "no streams to interleave"),
            InterleaveError::Field(e) => e.fmt(f),
            InterleaveError::Seq(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for InterleaveError {}

impl From<FieldError> for InterleaveError {
    fn from(e: FieldError) -> Self {
        InterleaveError::Field(e)
    }
}

impl From<SeqError> for InterleaveError {
    fn from(e: SeqError) -> Self {
        InterleaveError::Seq(e)
    }
}

/// Round-robin merge of equal-period streams; the result is
/// period-minimized.
pub fn interleave(streams: &[PeriodicSequence]) -> Result<PeriodicSequence, InterleaveError> {
    if streams.is_empty() {
        return Err(InterleaveError::NoStreams);
    }
    let t = streams.len();
    let period = streams[0].period();
    if streams.iter().any(|s| s.period() != period) {
        return Err(InterleaveError::PeriodMismatch {
            periods: streams.iter().map(|s| s.period()).collect(),
        });
    }
    let mut cycle = BitVec::zeros(t * period);
    for (j, s) in streams.iter().enumerate() {
        for n in 0..period {
            cycle.set(n * t + j, s.get(n));
        }
    }
    Ok(PeriodicSequence::from_cycle(&cycle)?)
}

/// Split one cycle into `t` streams, `stream_j[n] = cycle[n·t + j]`.
/// The cycle length must be a multiple of `t`.
pub fn deinterleave_cycle(cycle: &BitVec, t: usize) -> Result<Vec<BitVec>, InterleaveError> {
    if t == 0 || !cycle.len().is_multiple_of(t) {
        return Err(InterleaveError::NotDivisible {
            cycle: cycle.len(),
            t,
        });
    }
    let n = cycle.len() / t;
    Ok((0..t)
        .map(|j| BitVec::from_fn(n, |i| cycle.get(i * t + j)))
        .collect())
}

/// Inverse of [`interleave`]: extract `t` period-minimized streams from one
/// minimal period of `s`. The period must be a multiple of `t`; callers
/// holding a collapsed sequence extend it to a suitable cycle first.
pub fn deinterleave(
    s: &PeriodicSequence,
    t: usize,
) -> Result<Vec<PeriodicSequence>, InterleaveError> {
    let raw = deinterleave_cycle(s.bits(), t)?;
    raw.iter()
        .map(|b| PeriodicSequence::from_cycle(b).map_err(InterleaveError::from))
        .collect()
}

/// Base polynomial, seed state and ordered shift list defining a
/// `t`-interleaving of rotations of one PN-sequence.
///
/// Construction normalizes to canonical form with `shifts[0] = 0` by
/// subtracting the first shift from every entry modulo `T`; rotating every
/// stream by the same amount only rotates the interleaving.
#[derive(Clone, PartialEq, Eq)]
pub struct InterleaveSpec {
    poly: PrimitivePolynomial,
    seed: BitVec,
    shifts: Vec<u64>,
}

impl InterleaveSpec {
    pub fn new(
        poly: &PrimitivePolynomial,
        seed: &BitVec,
        shifts: &[u64],
    ) -> Result<Self, InterleaveError> {
        if shifts.is_empty() {
            return Err(InterleaveError::NoStreams);
        }
        if seed.len() != poly.degree() {
            return Err(SeqError::StateLengthMismatch {
                expected: poly.degree(),
                got: seed.len(),
            }
            .into());
        }
        if seed.is_zero() {
            return Err(SeqError::ZeroState.into());
        }
        let t = poly.period();
        let k0 = shifts[0] % t;
        let shifts = shifts.iter().map(|&k| (k % t + t - k0) % t).collect();
        Ok(InterleaveSpec {
            poly: poly.clone(),
            seed: seed.clone(),
            shifts,
        })
    }

    pub fn parse(poly: &str, seed: &str, shifts: &[u64]) -> Result<Self, InterleaveError> {
        let poly = PrimitivePolynomial::parse(poly)?;
        let seed = BitVec::parse(seed).map_err(|_| SeqError::EmptyInput)?;
        InterleaveSpec::new(&poly, &seed, shifts)
    }

    pub fn poly(&self) -> &PrimitivePolynomial {
        &self.poly
    }

    pub fn seed(&self) -> &BitVec {
        &self.seed
    }

    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    /// Number of interleaved streams.
    pub fn stream_count(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_power_of_two(&self) -> bool {
        self.stream_count().is_power_of_two()
    }

    /// The PN-sequence generated from the seed.
    pub fn base_sequence(&self) -> PeriodicSequence {
        Lfsr::new(&self.poly, &self.seed)
            .expect("seed length validated at construction")
            .pn_sequence()
            .expect("nonzero seed validated at construction")
    }

    /// One full (possibly non-minimal) cycle of length `t·T`, before period
    /// minimization. The column-derivation paths work on this cycle since
    /// minimization can destroy `t`-divisibility.
    pub fn full_cycle(&self) -> BitVec {
        let base = self.base_sequence();
        let t = self.stream_count();
        let period = base.period();
        let mut cycle = BitVec::zeros(t * period);
        for (j, &k) in self.shifts.iter().enumerate() {
            for n in 0..period {
                cycle.set(n * t + j, base.get(n + k as usize));
            }
        }
        cycle
    }
}

impl fmt::Debug for InterleaveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "InterleaveSpec({}, seed {}, shifts {:?})",
            self.poly, self.seed, self.shifts
        )
    }
}

impl Serialize for InterleaveSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("InterleaveSpec", 3)?;
        s.serialize_field("poly", &self.poly.to_string())?;
        s.serialize_field("seed", &self.seed.to_string())?;
        s.serialize_field("shifts", &self.shifts)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for InterleaveSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            poly: String,
            seed: String,
            shifts: Vec<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        InterleaveSpec::parse(&raw.poly, &raw.seed, &raw.shifts)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Measured properties of an interleaving sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterleaveReport {
    pub period: usize,
    pub lc: usize,
    /// Minimal polynomial in characteristic orientation, ascending.
    #[serde(serialize_with = "serialize_poly")]
    pub minimal_polynomial: GfPoly,
    /// `lc == t·L`.
    pub is_max_lc: bool,
    /// Minimal polynomial divides `p(x)^t`.
    pub annihilated_by_p_pow: bool,
    /// Stream count is a power of two, so the `p(x)^t` bound is asserted
    /// rather than merely measured.
    pub power_of_two_streams: bool,
}

fn serialize_poly<S: Serializer>(p: &GfPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Interleave the rotations named by the spec and period-minimize.
pub fn build_from_spec(spec: &InterleaveSpec) -> PeriodicSequence {
    PeriodicSequence::from_cycle(&spec.full_cycle()).expect("cycle nonempty")
}

/// Measure period, LC and minimal polynomial; flag maximum LC and the
/// `p(x)^t` annihilation bound.
///
/// ```
/// use caweave_core::interleave::{analyze, InterleaveSpec};
///
/// let spec = InterleaveSpec::parse("1+x^2+x^3", "111", &[0, 1]).unwrap();
/// let report = analyze(&spec);
/// assert_eq!((report.period, report.lc), (14, 6));
/// assert!(report.is_max_lc);
/// assert_eq!(report.minimal_polynomial.to_string(), "1+x^4+x^6");
/// ```
pub fn analyze(spec: &InterleaveSpec) -> InterleaveReport {
    let seq = build_from_spec(spec);
    let (lc, minimal_polynomial) = linear_complexity(&seq);
    let t = spec.stream_count();
    let p_pow = spec.poly().poly().pow(t as u32);
    InterleaveReport {
        period: seq.period(),
        lc,
        is_max_lc: lc == t * spec.poly().degree(),
        annihilated_by_p_pow: minimal_polynomial.divides(&p_pow),
        minimal_polynomial,
        power_of_two_streams: spec.is_power_of_two(),
    }
}

/// `deinterleave` with automatic cycle extension to `lcm(period, t)`.
pub fn deinterleave_extended(
    s: &PeriodicSequence,
    t: usize,
) -> Result<Vec<PeriodicSequence>, InterleaveError> {
    if t == 0 {
        return Err(InterleaveError::NotDivisible {
            cycle: s.period(),
            t,
        });
    }
    let cycle = s.cycle(lcm(s.period(), t));
    let raw = deinterleave_cycle(&cycle, t)?;
    raw.iter()
        .map(|b| PeriodicSequence::from_cycle(b).map_err(InterleaveError::from))
        .collect()
}

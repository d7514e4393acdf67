//! GF(2^L) arithmetic under a primitive polynomial, discrete logarithms and
//! the Zech logarithm table.
//!
//! A validated [`PrimitivePolynomial`] of degree `L` defines the field
//! `F_{2^L}` in the polynomial basis `{1, α, …, α^{L-1}}`, with `α` a root
//! of the polynomial. The [`ZechTable`] materializes the map
//! `Z(t)` with `1 + α^t = α^{Z(t)}`, the workhorse behind every shift
//! computation in the sequence modules.

use std::fmt;

use crate::poly::{GfPoly, ParsePolyError};

/// Default cap on the field degree. Table construction is O(2^L) in time
/// and memory, and nothing here needs more than desk scale.
pub const DEFAULT_MAX_DEGREE: usize = 24;

/// Hard cap: element representations are packed in a `u64` and the Zech
/// table holds `2^L` entries.
pub const HARD_MAX_DEGREE: usize = 32;

/// Validation or parse failure for a candidate primitive polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Degree below 2: no PN-sequence to speak of.
    DegreeTooSmall {
        degree: usize,
    },
    /// Degree above the configured cap.
    DegreeExceedsCap {
        degree: usize,
        cap: usize,
    },
    /// Leading coefficient or constant term is zero.
    NotMonic,
    /// Irreducibility or order test failed. `reducible` distinguishes a
    /// genuinely reducible polynomial from an irreducible one whose root
    /// does not generate the full multiplicative group.
    ReducibleOrNonPrimitive {
        reducible: bool,
    },
    Parse(ParsePolyError),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DegreeTooSmall { degree } => {
                write!(f, "polynomial degree {degree} is below the minimum of 2")
            }
            FieldError::DegreeExceedsCap { degree, cap } => {
                write!(f, "polynomial degree {degree} exceeds the cap of {cap}")
            }
            FieldError::NotMonic => {
                write!(f, "polynomial must be monic with nonzero constant term")
            }
            FieldError::ReducibleOrNonPrimitive { reducible: true } => {
                write!(f, "polynomial is reducible over GF(2)")
            }
            FieldError::ReducibleOrNonPrimitive { reducible: false } => {
                write!(f, "polynomial is irreducible but not primitive")
            }
            FieldError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FieldError {}

impl From<ParsePolyError> for FieldError {
    fn from(e: ParsePolyError) -> Self {
        FieldError::Parse(e)
    }
}

/// A monic polynomial over GF(2), validated irreducible with `x` of
/// multiplicative order exactly `2^L - 1` modulo it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimitivePolynomial {
    poly: GfPoly,
    degree: usize,
    period: u64,
}

impl PrimitivePolynomial {
    /// Validate a candidate polynomial with the default degree cap.
    pub fn validate(poly: &GfPoly) -> Result<Self, FieldError> {
        Self::validate_with_cap(poly, DEFAULT_MAX_DEGREE)
    }

    /// Validate with an explicit degree cap (still bounded by
    /// [`HARD_MAX_DEGREE`]).
    pub fn validate_with_cap(poly: &GfPoly, cap: usize) -> Result<Self, FieldError> {
        let cap = cap.min(HARD_MAX_DEGREE);
        let degree = match poly.degree() {
            Some(d) => d,
            None => return Err(FieldError::NotMonic),
        };
        if !poly.coeff(0) {
            return Err(FieldError::NotMonic);
        }
        if degree < 2 {
            return Err(FieldError::DegreeTooSmall { degree });
        }
        if degree > cap {
            return Err(FieldError::DegreeExceedsCap { degree, cap });
        }
        if !is_irreducible(poly, degree) {
            return Err(FieldError::ReducibleOrNonPrimitive { reducible: true });
        }
        let period = (1u64 << degree) - 1;
        // x^T = 1 is guaranteed for an irreducible polynomial; primitivity
        // needs x^(T/q) != 1 for every prime factor q of T.
        for q in prime_factors(period) {
            if poly.mod_exp_x((period / q) as u128).is_one() {
                return Err(FieldError::ReducibleOrNonPrimitive { reducible: false });
            }
        }
        Ok(PrimitivePolynomial {
            poly: poly.clone(),
            degree,
            period,
        })
    }

    /// Parse either text form and validate.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        Self::parse_with_cap(s, DEFAULT_MAX_DEGREE)
    }

    pub fn parse_with_cap(s: &str, cap: usize) -> Result<Self, FieldError> {
        let poly = GfPoly::parse(s)?;
        Self::validate_with_cap(&poly, cap)
    }

    pub fn poly(&self) -> &GfPoly {
        &self.poly
    }

    /// Degree `L`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `T = 2^L - 1`, the period of the PN-sequences this polynomial
    /// generates and the order of `α`.
    pub fn period(&self) -> u64 {
        self.period
    }

    // -- field element operations (polynomial basis, packed in u64) --

    pub fn element(&self, rep: u64) -> FieldElement {
        FieldElement(rep & self.rep_mask())
    }

    pub fn zero_elem(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one_elem(&self) -> FieldElement {
        FieldElement(1)
    }

    fn rep_mask(&self) -> u64 {
        if self.degree == 64 {
            u64::MAX
        } else {
            (1u64 << self.degree) - 1
        }
    }

    fn reduction(&self) -> u64 {
        // low L coefficients of the modulus
        let mut r = 0u64;
        for i in 0..self.degree {
            if self.poly.coeff(i) {
                r |= 1 << i;
            }
        }
        r
    }

    pub fn add_elems(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Multiply an element by `α` (shift one step through the register).
    pub fn mul_alpha(&self, a: FieldElement) -> FieldElement {
        let mut v = a.0 << 1;
        if v >> self.degree & 1 == 1 {
            v ^= self.reduction() | (1 << self.degree);
        }
        FieldElement(v)
    }

    pub fn mul_elems(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = 0u64;
        let mut shifted = a;
        for i in 0..self.degree {
            if b.0 >> i & 1 == 1 {
                acc ^= shifted.0;
            }
            shifted = self.mul_alpha(shifted);
        }
        FieldElement(acc)
    }

    /// `α^e`, with `e` reduced modulo the period.
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        let mut acc = self.one_elem();
        let mut base = self.element(2); // α
        let mut e = e % self.period;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elems(acc, base);
            }
            base = self.mul_elems(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for PrimitivePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl fmt::Debug for PrimitivePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimitivePolynomial({})", self.poly)
    }
}

/// An element of `F_{2^L}` in the polynomial basis; bit `i` of the
/// representation is the coordinate of `α^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn rep(&self) -> u64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// `Z(t)` with `1 + α^t = α^{Z(t)}`; `Z(0) = ∞` encodes the zero element.
///
/// Infinity is a distinguished case rather than a sentinel integer because
/// it participates in downstream shift arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZechEntry {
    Infinity,
    Shift(u64),
}

impl ZechEntry {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ZechEntry::Infinity)
    }

    pub fn shift(&self) -> Option<u64> {
        match self {
            ZechEntry::Infinity => None,
            ZechEntry::Shift(s) => Some(*s),
        }
    }
}

impl fmt::Display for ZechEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZechEntry::Infinity => f.write_str("inf"),
            ZechEntry::Shift(s) => write!(f, "{s}"),
        }
    }
}

/// Fully materialized Zech logarithm table for one primitive polynomial:
/// `2^L - 1` entries, exactly one of them infinite.
///
/// ```
/// use caweave_core::gf2field::{PrimitivePolynomial, ZechEntry, ZechTable};
///
/// let p = PrimitivePolynomial::parse("1+x+x^3").unwrap();
/// let table = ZechTable::build(&p);
/// assert_eq!(table.zech(0), ZechEntry::Infinity);
/// assert_eq!(table.zech(3), ZechEntry::Shift(1));
/// assert_eq!(table.zech_one(), 3);
/// ```
#[derive(Clone)]
pub struct ZechTable {
    poly: PrimitivePolynomial,
    entries: Vec<ZechEntry>,
}

impl ZechTable {
    /// Build the table in one pass: first the discrete-log table of all
    /// `2^L - 1` powers of `α`, then `Z(t) = log(α^t + 1)` for each `t`.
    pub fn build(poly: &PrimitivePolynomial) -> ZechTable {
        let t_max = poly.period();
        let mut dlog = vec![0u32; 1usize << poly.degree()];
        let mut power = poly.one_elem();
        for e in 0..t_max {
            dlog[power.rep() as usize] = e as u32;
            power = poly.mul_alpha(power);
        }
        debug_assert_eq!(power, poly.one_elem(), "α does not have order T");

        let mut entries = Vec::with_capacity(t_max as usize);
        let mut power = poly.one_elem();
        for _ in 0..t_max {
            let sum = power.rep() ^ 1; // α^t + 1 in the polynomial basis
            entries.push(if sum == 0 {
                ZechEntry::Infinity
            } else {
                ZechEntry::Shift(dlog[sum as usize] as u64)
            });
            power = poly.mul_alpha(power);
        }
        ZechTable {
            poly: poly.clone(),
            entries,
        }
    }

    pub fn poly(&self) -> &PrimitivePolynomial {
        &self.poly
    }

    /// `T = 2^L - 1`.
    pub fn period(&self) -> u64 {
        self.poly.period()
    }

    /// `Z(t)`; `t` is reduced modulo `2^L - 1`.
    pub fn zech(&self, t: u64) -> ZechEntry {
        self.entries[(t % self.period()) as usize]
    }

    /// `D = Z(1)`, always finite for degree ≥ 2.
    pub fn zech_one(&self) -> u64 {
        match self.zech(1) {
            ZechEntry::Shift(s) => s,
            ZechEntry::Infinity => unreachable!("Z(1) is finite for degree >= 2"),
        }
    }

    pub fn entries(&self) -> &[ZechEntry] {
        &self.entries
    }
}

fn is_irreducible(poly: &GfPoly, degree: usize) -> bool {
    // x^(2^L) == x mod p, and gcd(x^(2^(L/r)) - x, p) == 1 for prime r | L
    let x = GfPoly::x();
    let frob = poly.mod_exp_x(1u128 << degree);
    if frob != x.rem(poly) {
        return false;
    }
    for r in prime_factors(degree as u64) {
        let sub = poly.mod_exp_x(1u128 << (degree as u64 / r));
        let diff = sub.add(&x.rem(poly));
        if !poly.gcd(&diff).is_one() {
            return false;
        }
    }
    true
}

/// Distinct prime factors by trial division; plenty for `2^24 - 1` scale.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All primitive polynomials of the given degree, in ascending coefficient
/// order. Used by the exhaustive verification sweeps.
pub fn enumerate_primitive(degree: usize) -> Vec<PrimitivePolynomial> {
    let mut out = Vec::new();
    if !(2..=HARD_MAX_DEGREE).contains(&degree) {
        return out;
    }
    for mid in 0u64..(1 << (degree - 1)) {
        // constant term and leading coefficient are forced to 1
        let mut coeffs = vec![false; degree + 1];
        coeffs[0] = true;
        coeffs[degree] = true;
        for i in 0..degree - 1 {
            coeffs[i + 1] = mid >> i & 1 == 1;
        }
        let poly = GfPoly::from_coeffs(&coeffs);
        if let Ok(p) = PrimitivePolynomial::validate_with_cap(&poly, HARD_MAX_DEGREE) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prim(s: &str) -> PrimitivePolynomial {
        PrimitivePolynomial::parse(s).unwrap()
    }

    #[test]
    fn validates_known_primitives() {
        let p = prim("1+x+x^3");
        assert_eq!(p.degree(), 3);
        assert_eq!(p.period(), 7);
        let p = prim("1+x^2+x^5");
        assert_eq!(p.degree(), 5);
        assert_eq!(p.period(), 31);
        // bit-string form for 1+x+x^3
        assert_eq!(PrimitivePolynomial::parse("1101").unwrap(), prim("1+x+x^3"));
    }

    #[test]
    fn rejects_invalid() {
        // (1+x)^2
        assert_eq!(
            PrimitivePolynomial::parse("1+x^2"),
            Err(FieldError::ReducibleOrNonPrimitive { reducible: true })
        );
        // irreducible but imprimitive: 1+x+x^2+x^3+x^4 has x of order 5
        assert_eq!(
            PrimitivePolynomial::parse("1+x+x^2+x^3+x^4"),
            Err(FieldError::ReducibleOrNonPrimitive { reducible: false })
        );
        // zero constant term
        assert_eq!(
            PrimitivePolynomial::parse("x+x^3"),
            Err(FieldError::NotMonic)
        );
        assert_eq!(
            PrimitivePolynomial::parse("1+x"),
            Err(FieldError::DegreeTooSmall { degree: 1 })
        );
        assert!(matches!(
            PrimitivePolynomial::parse_with_cap("1+x^2+x^5", 4),
            Err(FieldError::DegreeExceedsCap { degree: 5, cap: 4 })
        ));
    }

    #[test]
    fn zech_example_table() {
        let t = ZechTable::build(&prim("1+x+x^3"));
        let got: Vec<ZechEntry> = (0..7).map(|i| t.zech(i)).collect();
        use ZechEntry::{Infinity as Inf, Shift as S};
        assert_eq!(got, vec![Inf, S(3), S(6), S(1), S(5), S(4), S(2)]);
        // t reduced modulo T
        assert_eq!(t.zech(7), Inf);
        assert_eq!(t.zech(10), S(1));
    }

    #[test]
    fn zech_one_examples() {
        assert_eq!(ZechTable::build(&prim("1+x^3+x^4")).zech_one(), 12);
        assert_eq!(ZechTable::build(&prim("1+x^2+x^3")).zech_one(), 5);
        // derived by brute-force discrete log over all 31 powers of α
        assert_eq!(ZechTable::build(&prim("1+x^2+x^5")).zech_one(), 18);
    }

    #[test]
    fn zech_defining_identity_exhaustive() {
        // 1 + α^t = α^(Z(t)) for all t != 0, every primitive polynomial of
        // degree up to 12; exactly one infinity per table, and the finite
        // entries form a bijection on {1, …, 2^L - 2}.
        for degree in 2..=12 {
            for p in enumerate_primitive(degree) {
                let table = ZechTable::build(&p);
                assert_eq!(table.entries().len() as u64, p.period());
                let mut inf_count = 0;
                let mut seen = std::collections::HashSet::new();
                for t in 0..p.period() {
                    let lhs = p.add_elems(p.alpha_pow(t), p.one_elem());
                    match table.zech(t) {
                        ZechEntry::Infinity => {
                            inf_count += 1;
                            assert!(lhs.is_zero());
                            assert_eq!(t, 0);
                        }
                        ZechEntry::Shift(s) => {
                            assert_eq!(lhs, p.alpha_pow(s), "{p} t={t}");
                            assert!(s >= 1 && s < p.period());
                            assert!(seen.insert(s), "{p}: Z hits {s} twice");
                        }
                    }
                }
                assert_eq!(inf_count, 1);
                assert_eq!(seen.len() as u64, p.period() - 1);
            }
        }
    }

    #[test]
    fn primitive_counts_by_degree() {
        let expected = [(2, 1), (3, 2), (4, 2), (5, 6), (6, 6), (7, 18), (8, 16)];
        for (degree, count) in expected {
            assert_eq!(enumerate_primitive(degree).len(), count, "degree {degree}");
        }
    }
}

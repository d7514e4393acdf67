//! Polynomials over GF(2).
//!
//! Coefficients are stored ascending (bit `i` is the coefficient of `x^i`).
//! Two text forms are supported everywhere: the coefficient bit string
//! (`"1101"` for `1+x+x^3`) and the human form (`"1+x+x^3"`).

use std::fmt;

use crate::bits::BitVec;

/// A polynomial over GF(2), coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfPoly {
    // invariant: empty means the zero polynomial; otherwise last bit is 1
    coeffs: Vec<bool>,
}

/// Error from [`GfPoly::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError(pub String);

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial: {}", self.0)
    }
}

impl std::error::Error for ParsePolyError {}

impl GfPoly {
    pub fn zero() -> Self {
        GfPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GfPoly { coeffs: vec![true] }
    }

    pub fn x() -> Self {
        GfPoly {
            coeffs: vec![false, true],
        }
    }

    pub fn from_coeffs(bits: &[bool]) -> Self {
        let mut coeffs = bits.to_vec();
        while coeffs.last() == Some(&false) {
            coeffs.pop();
        }
        GfPoly { coeffs }
    }

    pub fn from_bitvec(v: &BitVec) -> Self {
        GfPoly::from_coeffs(&v.iter().collect::<Vec<_>>())
    }

    /// Monomial `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![false; d + 1];
        coeffs[d] = true;
        GfPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [true]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.coeffs.get(i).copied().unwrap_or(false)
    }

    /// Coefficient bit string, ascending (`1+x+x^3` -> `"1101"`).
    pub fn coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn add(&self, rhs: &GfPoly) -> GfPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![false; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.coeff(i) ^ rhs.coeff(i);
        }
        GfPoly::from_coeffs(&out)
    }

    pub fn mul(&self, rhs: &GfPoly) -> GfPoly {
        if self.is_zero() || rhs.is_zero() {
            return GfPoly::zero();
        }
        let mut out = vec![false; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a {
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    if b {
                        out[i + j] ^= true;
                    }
                }
            }
        }
        GfPoly::from_coeffs(&out)
    }

    pub fn pow(&self, e: u32) -> GfPoly {
        let mut out = GfPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Quotient and remainder of `self / rhs`. Panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &GfPoly) -> (GfPoly, GfPoly) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![false; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let lead = rem.len() - 1;
            if rem[lead] {
                let shift = lead - d;
                quot[shift] = true;
                for (i, &b) in rhs.coeffs.iter().enumerate() {
                    if b {
                        rem[shift + i] ^= true;
                    }
                }
            }
            rem.pop();
        }
        (GfPoly::from_coeffs(&quot), GfPoly::from_coeffs(&rem))
    }

    pub fn rem(&self, rhs: &GfPoly) -> GfPoly {
        self.div_rem(rhs).1
    }

    pub fn divides(&self, other: &GfPoly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &GfPoly) -> GfPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    ///`x^e mod self`, with `e` given as a u128 (enough for degree caps here).
    pub fn mod_exp_x(&self, e: u128) -> GfPoly {
        let x = GfPoly::x().rem(self);
        let mut acc = GfPoly::one().rem(self);
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Parse either coefficient-bit form (`"1101"`) or human form
    /// (`"1+x+x^3"`). Whitespace is ignored.
    pub fn parse(s: &str) -> Result<GfPoly, ParsePolyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError("empty string".into()));
        }
        if compact.chars().all(|c| c == '0' || c == '1') {
            let bits: Vec<bool> = compact.chars().map(|c| c == '1').collect();
            return Ok(GfPoly::from_coeffs(&bits));
        }
        let mut coeffs: Vec<bool> = Vec::new();
        for term in compact.split('+') {
            let d = if term == "1" {
                0
            } else if term == "x" {
                1
            } else if let Some(exp) = term.strip_prefix("x^") {
                exp.parse::<usize>()
                    .map_err(|_| ParsePolyError(s.to_string()))?
            } else {
                return Err(ParsePolyError(s.to_string()));
            };
            if coeffs.len() <= d {
                coeffs.resize(d + 1, false);
            }
            if coeffs[d] {
                return Err(ParsePolyError(format!("repeated term in {s:?}")));
            }
            coeffs[d] = true;
        }
        Ok(GfPoly::from_coeffs(&coeffs))
    }

    /// Factor as a power of `base`: returns `e` with `self == base^e`.
    pub fn as_power_of(&self, base: &GfPoly) -> Option<u32> {
        if base.degree()? == 0 {
            return None;
        }
        let mut cur = self.clone();
        let mut e = 0;
        while !cur.is_one() {
            let (q, r) = cur.div_rem(base);
            if !r.is_zero() {
                return None;
            }
            cur = q;
            e += 1;
        }
        Some(e)
    }
}

impl fmt::Display for GfPoly {
    /// Human form, ascending: `1+x^2+x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &b) in self.coeffs.iter().enumerate() {
            if !b {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match d {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GfPoly {
        GfPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_both_forms() {
        assert_eq!(p("1101"), p("1+x+x^3"));
        assert_eq!(p("1101").to_string(), "1+x+x^3");
        assert_eq!(p("1+x^2+x^3").coeff_string(), "1011");
        assert!(GfPoly::parse("x^").is_err());
        assert!(GfPoly::parse("1+1").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = p("1+x");
        assert_eq!(a.mul(&a).to_string(), "1+x^2");
        assert_eq!(p("1+x^2+x^3").pow(2).to_string(), "1+x^4+x^6");
        let (q, r) = p("1+x^4+x^6").div_rem(&p("1+x^2+x^3"));
        assert_eq!(q, p("1+x^2+x^3"));
        assert!(r.is_zero());
        assert!(p("1+x^2+x^3").divides(&p("1+x^4+x^6")));
        assert!(!p("1+x+x^3").divides(&p("1+x^4+x^6")));
    }

    #[test]
    fn mod_exp() {
        // order of x modulo a degree-3 primitive polynomial is 7
        let m = p("1+x+x^3");
        assert!(m.mod_exp_x(7).is_one());
        for e in 1..7 {
            assert!(!m.mod_exp_x(e).is_one(), "x^{e} = 1 unexpectedly");
        }
    }

    #[test]
    fn power_detection() {
        let base = p("1+x^2+x^3");
        assert_eq!(base.pow(4).as_power_of(&base), Some(4));
        assert_eq!(GfPoly::one().as_power_of(&base), Some(0));
        assert_eq!(p("1+x+x^3").as_power_of(&base), None);
    }
}

//! Packed bit vectors.
//!
//! `BitVec` is the currency every other module trades in: LFSR output,
//! sequence periods, CA rows and CA columns. Bits are stored LSB-first in
//! `u64` words so the hot loops (XOR of a sequence with a rotation of
//! itself, CA stepping, column derivation) run word-parallel.

use std::fmt;

const WORD: usize = 64;

/// A fixed-length vector of bits, packed into `u64` words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Unused high bits of
/// the last word are kept zero, so whole-word comparison and popcount are
/// valid without masking.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

/// Error from [`BitVec::parse`]: a character other than `0`, `1` or
/// whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError(pub char);

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid bit character {:?} (expected '0' or '1')",
            self.0
        )
    }
}

impl std::error::Error for ParseBitsError {}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

// dst |= src >> s, where src is a little-endian word vector.
fn shr_or_into(src: &[u64], s: usize, dst: &mut [u64]) {
    let (sw, sb) = (s / WORD, s % WORD);
    let n = src.len();
    for j in 0..n.saturating_sub(sw) {
        let mut w = src[j + sw] >> sb;
        if sb != 0 && j + sw + 1 < n {
            w |= src[j + sw + 1] << (WORD - sb);
        }
        dst[j] |= w;
    }
}

// dst |= src << s; callers mask the tail afterwards.
fn shl_or_into(src: &[u64], s: usize, dst: &mut [u64]) {
    let (sw, sb) = (s / WORD, s % WORD);
    let n = src.len();
    for j in (sw..n).rev() {
        let mut w = src[j - sw] << sb;
        if sb != 0 && j > sw {
            w |= src[j - sw - 1] >> (WORD - sb);
        }
        dst[j] |= w;
    }
}

impl BitVec {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            v.set(i, f(i));
        }
        v
    }

    /// Parse an ASCII `0`/`1` string; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self, ParseBitsError> {
        let mut v = BitVec::zeros(0);
        for c in s.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                c if c.is_whitespace() => {}
                c => return Err(ParseBitsError(c)),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD];
        let m = 1u64 << (i % WORD);
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, b);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// XOR another vector of the same length into this one.
    pub fn xor_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "BitVec length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }

    pub fn and_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "BitVec length mismatch in and");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a &= b;
        }
    }

    /// Write `src.rotate_left(k)` into `self` without allocating.
    /// Both vectors must have the same length.
    pub fn copy_rotated_from(&mut self, src: &BitVec, k: usize) {
        assert_eq!(self.len, src.len, "BitVec length mismatch in rotate");
        let len = self.len;
        if len == 0 {
            return;
        }
        let k = k % len;
        if k == 0 {
            self.words.copy_from_slice(&src.words);
            return;
        }
        // out = (src >> k) | (src << (len - k)), as len-bit integers
        for w in self.words.iter_mut() {
            *w = 0;
        }
        shr_or_into(&src.words, k, &mut self.words);
        shl_or_into(&src.words, len - k, &mut self.words);
        self.mask_tail();
    }

    /// Cyclic rotation: `out[i] = self[(i + k) mod len]`.
    ///
    /// This matches the indexing of a sequence shift: `seq.rotate_left(k)`
    /// is the same sequence starting `k` positions later.
    pub fn rotate_left(&self, k: usize) -> BitVec {
        let mut out = BitVec::zeros(self.len);
        out.copy_rotated_from(self, k);
        out
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Concatenate copies of `self` until `n` bits are produced; `n` need
    /// not be a multiple of the length.
    pub fn cycle_to(&self, n: usize) -> BitVec {
        assert!(!self.is_empty(), "cannot cycle an empty BitVec");
        BitVec::from_fn(n, |i| self.get(i % self.len))
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(start <= end && end <= self.len);
        BitVec::from_fn(end - start, |i| self.get(start + i))
    }

    pub fn reversed(&self) -> BitVec {
        BitVec::from_fn(self.len, |i| self.get(self.len - 1 - i))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self)
    }
}

impl std::str::FromStr for BitVec {
    type Err = ParseBitsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitVec::parse(s)
    }
}

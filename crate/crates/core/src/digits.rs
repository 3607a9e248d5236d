//! Radix-β digit vectors and the single-digit primitives shared by every
//! division algorithm.
//!
//! Digits are stored one per `u32`, least significant first. Products of two
//! digits and the bounded accumulators of the parallel algorithms live in
//! `u64`; the radix cap of 2^31 keeps `2β² - β - 1` (the largest pre-carry
//! accumulator value) below 2^64.

use std::fmt;

use crate::error::{Error, Result};

pub type Digit = u32;
pub type DoubleDigit = u64;

/// Largest accepted radix.
pub const MAX_RADIX: u64 = 1 << 31;

/// Longest decimal numeral accepted by [`DigitVec::from_decimal_str`].
pub const MAX_NUMERAL_LEN: usize = 100_000;

/// A positional radix `β` with `2 <= β <= 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Radix(u32);

impl Radix {
    pub fn new(beta: u64) -> Result<Self> {
        if (2..=MAX_RADIX).contains(&beta) {
            Ok(Radix(beta as u32))
        } else {
            Err(Error::InvalidRadix(beta))
        }
    }

    #[inline]
    pub fn beta(self) -> Digit {
        self.0
    }

    #[inline]
    pub fn wide(self) -> DoubleDigit {
        self.0 as DoubleDigit
    }

    /// `β² + β - 2`, the bound on odd accumulator cells under alternated carries.
    pub fn odd_cell_bound(self) -> DoubleDigit {
        let b = self.wide();
        b * b + b - 2
    }

    /// `2β² - β - 1`, the bound on a cell that holds `β² + β - 2` plus one digit product.
    pub fn pre_carry_even_bound(self) -> DoubleDigit {
        let b = self.wide();
        2 * b * b - b - 1
    }

    /// `β² - β`, the bound on a single-digit cell after one digit product is added.
    pub fn pre_carry_odd_bound(self) -> DoubleDigit {
        let b = self.wide();
        b * b - b
    }

    /// Number of radix-β digits of a machine integer (0 for 0).
    pub fn digits_of(self, mut value: u128) -> usize {
        let mut n = 0;
        while value != 0 {
            value /= self.0 as u128;
            n += 1;
        }
        n
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Inverse `a` of a unit digit `v0`: `a * v0 ≡ 1 (mod β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitInverse {
    a: Digit,
    radix: Radix,
}

impl DigitInverse {
    #[inline]
    pub fn value(self) -> Digit {
        self.a
    }

    /// `a * (value mod β) mod β` for a signed value of any size.
    #[inline]
    pub fn solve(self, value: i128) -> Digit {
        let beta = self.radix.beta() as i128;
        let r = value.rem_euclid(beta);
        ((r * self.a as i128) % beta) as Digit
    }
}

/// `v0^{-1} mod β` by the extended Euclidean algorithm on machine words.
pub fn digit_mod_inverse(v0: Digit, radix: Radix) -> Result<DigitInverse> {
    let beta = radix.beta() as i64;
    let (mut r0, mut r1) = (beta, (v0 as i64) % beta);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { digit: v0, beta: radix.beta() });
    }
    Ok(DigitInverse { a: t0.rem_euclid(beta) as Digit, radix })
}

/// The β-complement digit `u'_k`: `β - u_k` at the boundary `k = r`,
/// `β - 1 - u_k` above it. The boundary value may equal `β` itself, so the
/// result is meant for accumulator cells, not for a [`DigitVec`].
pub fn beta_complement_digit(u_k: Digit, k: usize, r: usize, radix: Radix) -> Result<DoubleDigit> {
    if k < r {
        return Err(Error::ComplementIndex { k, r });
    }
    if u_k >= radix.beta() {
        return Err(Error::DigitOutOfRange { digit: u_k as u64, beta: radix.beta() });
    }
    let b = radix.wide();
    Ok(if k == r { b - u_k as u64 } else { b - 1 - u_k as u64 })
}

/// A nonnegative integer as little-endian radix-β digits in canonical form
/// (no high-order zeros; zero is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVec {
    digits: Vec<Digit>,
    radix: Radix,
}

impl DigitVec {
    pub fn zero(radix: Radix) -> Self {
        DigitVec { digits: Vec::new(), radix }
    }

    pub fn one(radix: Radix) -> Self {
        DigitVec { digits: vec![1], radix }
    }

    /// Builds a vector from little-endian digits, trimming high-order zeros.
    pub fn from_digits(radix: Radix, mut digits: Vec<Digit>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= radix.beta()) {
            return Err(Error::DigitOutOfRange { digit: d as u64, beta: radix.beta() });
        }
        trim(&mut digits);
        Ok(DigitVec { digits, radix })
    }

    /// Caller guarantees every digit is below β.
    pub(crate) fn from_digits_unchecked(radix: Radix, mut digits: Vec<Digit>) -> Self {
        debug_assert!(digits.iter().all(|&d| d < radix.beta()));
        trim(&mut digits);
        DigitVec { digits, radix }
    }

    pub fn from_u128(radix: Radix, mut value: u128) -> Self {
        let beta = radix.beta() as u128;
        let mut digits = Vec::new();
        while value != 0 {
            digits.push((value % beta) as Digit);
            value /= beta;
        }
        DigitVec { digits, radix }
    }

    /// `β^t`.
    pub fn beta_power(radix: Radix, t: usize) -> Self {
        let mut digits = vec![0; t + 1];
        digits[t] = 1;
        DigitVec { digits, radix }
    }

    /// Parses an unsigned ASCII decimal numeral.
    pub fn from_decimal_str(text: &str, radix: Radix) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::InvalidNumeral("empty string".into()));
        }
        if text.len() > MAX_NUMERAL_LEN {
            return Err(Error::NumeralTooLong { len: text.len(), limit: MAX_NUMERAL_LEN });
        }
        if let Some(c) = text.chars().find(|c| !c.is_ascii_digit()) {
            return Err(Error::InvalidNumeral(format!("unexpected character {c:?}")));
        }
        let bytes = text.as_bytes();
        let mut acc = DigitVec::zero(radix);
        // chunks of up to 9 decimal digits fit a u32 multiplier
        let head = bytes.len() % 9;
        let mut chunks: Vec<&[u8]> = Vec::new();
        if head != 0 {
            chunks.push(&bytes[..head]);
        }
        chunks.extend(bytes[head..].chunks(9));
        for chunk in chunks {
            let value = chunk.iter().fold(0u32, |a, &c| a * 10 + (c - b'0') as u32);
            acc = acc.mul_small_add(10u32.pow(chunk.len() as u32), value);
        }
        Ok(acc)
    }

    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        const CHUNK: u32 = 1_000_000_000;
        let mut parts = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem_small(CHUNK);
            parts.push(r);
            rest = q;
        }
        let mut out = parts.pop().map(|p| p.to_string()).unwrap_or_default();
        for p in parts.iter().rev() {
            out.push_str(&format!("{p:09}"));
        }
        out
    }

    #[inline]
    pub fn radix(&self) -> Radix {
        self.radix
    }

    #[inline]
    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Digit `i`, with implicit zeros above the top digit.
    #[inline]
    pub fn digit(&self, i: usize) -> Digit {
        self.digits.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// `ℓ_β(x)`, the number of digits needed to write `x`; 0 for zero.
    #[inline]
    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// Digits zero-padded to at least `len` positions.
    pub fn padded(&self, len: usize) -> Vec<Digit> {
        let mut d = self.digits.clone();
        if d.len() < len {
            d.resize(len, 0);
        }
        d
    }

    /// `x mod β^s`.
    pub fn truncate_mod_power(&self, s: usize) -> DigitVec {
        let end = s.min(self.digits.len());
        DigitVec::from_digits_unchecked(self.radix, self.digits[..end].to_vec())
    }

    /// `x * β^q`.
    pub fn shl_digits(&self, q: usize) -> DigitVec {
        if self.is_zero() {
            return self.clone();
        }
        let mut digits = vec![0; q];
        digits.extend_from_slice(&self.digits);
        DigitVec { digits, radix: self.radix }
    }

    /// `x div β^q`.
    pub fn shr_digits(&self, q: usize) -> DigitVec {
        let start = q.min(self.digits.len());
        DigitVec { digits: self.digits[start..].to_vec(), radix: self.radix }
    }

    /// Splits `x = β^q * x'` with `β ∤ x'`.
    pub fn strip_beta_power(&self) -> Result<(usize, DigitVec)> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let q = self.trailing_zero_digits();
        Ok((q, self.shr_digits(q)))
    }

    /// Count of low-order zero digits; 0 for zero.
    pub fn trailing_zero_digits(&self) -> usize {
        self.digits.iter().take_while(|&&d| d == 0).count()
    }

    pub(crate) fn check_radix(&self, other: &DigitVec) -> Result<()> {
        if self.radix != other.radix {
            Err(Error::RadixMismatch(self.radix.beta(), other.radix.beta()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for DigitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

pub(crate) fn trim(digits: &mut Vec<Digit>) {
    while digits.last() == Some(&0) {
        digits.pop();
    }
}

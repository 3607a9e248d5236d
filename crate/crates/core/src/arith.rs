//! Plain sequential arithmetic on [`DigitVec`]: conversions, comparisons,
//! schoolbook multiplication, long division and gcd. The division
//! algorithms do not depend on these; they back numeral conversion, the
//! period search and result verification.

use std::cmp::Ordering;

use crate::digits::{trim, Digit, DigitVec, DoubleDigit};
use crate::error::{Error, Result};

impl DigitVec {
    /// `self * m + a` for machine-word `m` and `a`.
    pub fn mul_small_add(&self, m: u32, a: u32) -> DigitVec {
        let beta = self.radix().wide();
        let mut out = Vec::with_capacity(self.digit_count() + 2);
        let mut carry = a as DoubleDigit;
        for &d in self.digits() {
            let t = d as DoubleDigit * m as DoubleDigit + carry;
            out.push((t % beta) as Digit);
            carry = t / beta;
        }
        while carry != 0 {
            out.push((carry % beta) as Digit);
            carry /= beta;
        }
        DigitVec::from_digits_unchecked(self.radix(), out)
    }

    /// Short division by a nonzero machine word.
    pub fn div_rem_small(&self, d: u32) -> (DigitVec, u32) {
        assert!(d != 0, "division by zero");
        let beta = self.radix().wide();
        let mut q = vec![0; self.digit_count()];
        let mut rem: DoubleDigit = 0;
        for (i, &digit) in self.digits().iter().enumerate().rev() {
            let cur = rem * beta + digit as DoubleDigit;
            q[i] = (cur / d as DoubleDigit) as Digit;
            rem = cur % d as DoubleDigit;
        }
        (DigitVec::from_digits_unchecked(self.radix(), q), rem as u32)
    }

    pub fn cmp_value(&self, other: &DigitVec) -> Ordering {
        self.digit_count()
            .cmp(&other.digit_count())
            .then_with(|| self.digits().iter().rev().cmp(other.digits().iter().rev()))
    }

    pub fn add(&self, other: &DigitVec) -> Result<DigitVec> {
        self.check_radix(other)?;
        let beta = self.radix().wide();
        let n = self.digit_count().max(other.digit_count());
        let mut out = Vec::with_capacity(n + 1);
        let mut carry = 0;
        for i in 0..n {
            let t = self.digit(i) as DoubleDigit + other.digit(i) as DoubleDigit + carry;
            out.push((t % beta) as Digit);
            carry = t / beta;
        }
        if carry != 0 {
            out.push(carry as Digit);
        }
        Ok(DigitVec::from_digits_unchecked(self.radix(), out))
    }

    /// `self - other`, or `None` when the difference is negative.
    pub fn checked_sub(&self, other: &DigitVec) -> Result<Option<DigitVec>> {
        self.check_radix(other)?;
        if self.cmp_value(other) == Ordering::Less {
            return Ok(None);
        }
        let beta = self.radix().wide() as i64;
        let mut out = Vec::with_capacity(self.digit_count());
        let mut borrow = 0i64;
        for i in 0..self.digit_count() {
            let t = self.digit(i) as i64 - other.digit(i) as i64 - borrow;
            out.push(t.rem_euclid(beta) as Digit);
            borrow = if t < 0 { 1 } else { 0 };
        }
        Ok(Some(DigitVec::from_digits_unchecked(self.radix(), out)))
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &DigitVec) -> Result<DigitVec> {
        self.check_radix(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(DigitVec::zero(self.radix()));
        }
        let beta = self.radix().wide();
        let mut out = vec![0 as Digit; self.digit_count() + other.digit_count()];
        for (i, &a) in self.digits().iter().enumerate() {
            let mut carry: DoubleDigit = 0;
            for (j, &b) in other.digits().iter().enumerate() {
                let t = a as DoubleDigit * b as DoubleDigit + out[i + j] as DoubleDigit + carry;
                out[i + j] = (t % beta) as Digit;
                carry = t / beta;
            }
            let mut pos = i + other.digit_count();
            while carry != 0 {
                let t = out[pos] as DoubleDigit + carry;
                out[pos] = (t % beta) as Digit;
                carry = t / beta;
                pos += 1;
            }
        }
        trim(&mut out);
        Ok(DigitVec::from_digits_unchecked(self.radix(), out))
    }

    /// Long division; each quotient digit is found by binary search.
    pub fn div_rem(&self, divisor: &DigitVec) -> Result<(DigitVec, DigitVec)> {
        self.check_radix(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let radix = self.radix();
        if self.cmp_value(divisor) == Ordering::Less {
            return Ok((DigitVec::zero(radix), self.clone()));
        }
        let mut quotient = vec![0; self.digit_count()];
        let mut rem = DigitVec::zero(radix);
        for i in (0..self.digit_count()).rev() {
            rem = rem.mul_small_add(radix.beta(), self.digit(i));
            let (q, r) = rem.reduce_once(divisor);
            quotient[i] = q;
            rem = r;
        }
        Ok((DigitVec::from_digits_unchecked(radix, quotient), rem))
    }

    /// For `self < divisor * β`, returns `(q, self - q * divisor)` with `q < β`.
    pub(crate) fn reduce_once(&self, divisor: &DigitVec) -> (Digit, DigitVec) {
        if self.cmp_value(divisor) == Ordering::Less {
            return (0, self.clone());
        }
        let (mut lo, mut hi) = (1u32, self.radix().beta() - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if divisor.mul_small_add(mid, 0).cmp_value(self) != Ordering::Greater {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let rest = self.checked_sub(&divisor.mul_small_add(lo, 0)).expect("same radix").expect("q * divisor <= self");
        (lo, rest)
    }

    pub fn gcd(&self, other: &DigitVec) -> Result<DigitVec> {
        self.check_radix(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }
}

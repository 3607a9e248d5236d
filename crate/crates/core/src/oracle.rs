//! Reference arithmetic on `num-bigint` integers.
//!
//! Nothing here calls into the digit-vector arithmetic or the division
//! algorithms; conversion reads raw digits only. Slow and simple on purpose.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::digits::{Digit, DigitVec, Radix};
use crate::error::{Error, Result};

pub type OracleInt = BigUint;

pub fn from_digit_vec(x: &DigitVec) -> OracleInt {
    let beta = BigUint::from(x.radix().beta());
    x.digits().iter().rev().fold(BigUint::zero(), |acc, &d| acc * &beta + BigUint::from(d))
}

pub fn to_digit_vec(x: &OracleInt, radix: Radix) -> DigitVec {
    let beta = BigUint::from(radix.beta());
    let mut digits = Vec::new();
    let mut rest = x.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&beta);
        digits.push(r.iter_u32_digits().next().unwrap_or(0) as Digit);
        rest = q;
    }
    DigitVec::from_digits(radix, digits).expect("remainders are below β")
}

/// `v^{-1} mod m` by the extended Euclidean algorithm.
pub fn oracle_modinv(v: &OracleInt, m: &OracleInt) -> Result<OracleInt> {
    let m_signed = BigInt::from_biguint(Sign::Plus, m.clone());
    let (mut r0, mut r1) = (m_signed.clone(), BigInt::from_biguint(Sign::Plus, v % m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if !r0.is_one() {
        return Err(Error::NoModularInverse { value: v.to_string(), modulus: m.to_string() });
    }
    Ok(t0.mod_floor(&m_signed).to_biguint().expect("nonnegative after mod_floor"))
}

pub fn oracle_pow(beta: Radix, t: usize) -> OracleInt {
    BigUint::from(beta.beta()).pow(t as u32)
}

pub fn oracle_mul(a: &OracleInt, b: &OracleInt) -> OracleInt {
    a * b
}

pub fn oracle_divmod(a: &OracleInt, b: &OracleInt) -> Result<(OracleInt, OracleInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.div_rem(b))
}

/// `(u / v) mod β^s`, assembled as `β^q * ((u' / v) mod β^{s-q})` for `u = β^q u'`.
pub fn oracle_modiv(u: &OracleInt, v: &OracleInt, beta: Radix, s: usize) -> Result<OracleInt> {
    let b = BigUint::from(beta.beta());
    if !v.gcd(&b).is_one() {
        let low = (v % &b).iter_u32_digits().next().unwrap_or(0);
        return Err(Error::NotInvertible { digit: low, beta: beta.beta() });
    }
    if u.is_zero() {
        return Ok(BigUint::zero());
    }
    let mut q = 0;
    let mut rest = u.clone();
    while (&rest % &b).is_zero() {
        rest /= &b;
        q += 1;
    }
    if q >= s {
        return Ok(BigUint::zero());
    }
    let modulus = oracle_pow(beta, s - q);
    let inv = oracle_modinv(v, &modulus)?;
    Ok(oracle_pow(beta, q) * ((rest * inv) % modulus))
}

/// Long division of `u / v` in radix β until the remainder repeats.
/// Returns the period length and the repeating block, most significant first.
pub fn oracle_period_longdiv(u: &OracleInt, v: &OracleInt, beta: Radix, cap: usize) -> Result<(usize, Vec<Digit>)> {
    if u.is_zero() || u >= v {
        return Err(Error::InvalidFraction);
    }
    let b = BigUint::from(beta.beta());
    let reduced = v / u.gcd(v);
    if !reduced.gcd(&b).is_one() {
        return Err(Error::NotPurelyPeriodic { beta: beta.beta() });
    }
    let mut digits = Vec::new();
    let mut rem = u.clone();
    loop {
        if digits.len() >= cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        let (q, r) = (&rem * &b).div_rem(v);
        digits.push(q.iter_u32_digits().next().unwrap_or(0));
        rem = r;
        if &rem == u {
            return Ok((digits.len(), digits));
        }
    }
}

//! Applications of the LSF division scheme: exact division, the digit
//! modulus, a linear surface-time multiplication, Hensel codes and periods
//! of rationals.

use std::cmp::Ordering;
use std::fmt;

use crate::digits::{beta_complement_digit, digit_mod_inverse, Digit, DigitVec, DoubleDigit, Radix};
use crate::error::{Error, Result};
use crate::par::{par_ppi_v2, ParOptions};
use crate::pram::{ParTrace, Pram};
use crate::seq::{ppi_sequential, ModDivProblem, PpiStream};
use crate::writes;

/// `u / v` when `v` is known to divide `u`.
///
/// The common β-power is stripped first; the stripped divisor must be a unit
/// modulo β. The quotient is the modular quotient with `ℓ(u') - ℓ(v') + 1`
/// digits, checked by multiplying back.
pub fn exact_div(u: &DigitVec, v: &DigitVec) -> Result<DigitVec> {
    exact_div_with(u, v, ParOptions::default()).map(|(q, _)| q)
}

pub fn exact_div_with(u: &DigitVec, v: &DigitVec, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    u.check_radix(v)?;
    let radix = u.radix();
    if v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if u.is_zero() {
        return Ok((DigitVec::zero(radix), ParTrace::default()));
    }
    let q = v.trailing_zero_digits();
    if u.trailing_zero_digits() < q {
        return Err(Error::NotExact);
    }
    let (u, v) = (u.shr_digits(q), v.shr_digits(q));
    digit_mod_inverse(v.digit(0), radix)?;
    if u.digit_count() < v.digit_count() {
        return Err(Error::NotExact);
    }
    let r = u.digit_count() - v.digit_count() + 1;
    let (x, trace) = par_ppi_v2(&ModDivProblem::new(u.clone(), v.clone(), r)?, opts)?;
    if x.mul(&v)? != u {
        return Err(Error::NotExact);
    }
    Ok((x, trace))
}

/// Sign of `x v - u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// Modular quotient and digit modulus of `u` by `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmodResult {
    /// `x ≡ u / v (mod β^r)`.
    pub x: DigitVec,
    /// `|x v - u| / β^r`, below `β^t`.
    pub w: DigitVec,
    pub sign: Sign,
    /// `ℓ(u) - ℓ(v) + 1`.
    pub r: usize,
}

/// The digit modulus `dmod_β(u, v) = |x v - u| / β^r`, computed together with
/// `x ≡ u / v (mod β^r)` in one alternated-carry pass.
pub fn dmod(u: &DigitVec, v: &DigitVec) -> Result<DmodResult> {
    dmod_with(u, v, ParOptions::default()).map(|(d, _)| d)
}

pub fn dmod_with(u: &DigitVec, v: &DigitVec, opts: ParOptions) -> Result<(DmodResult, ParTrace)> {
    u.check_radix(v)?;
    let radix = u.radix();
    let beta = radix.wide();
    let (s, t) = (u.digit_count(), v.digit_count());
    if t == 0 {
        return Err(Error::DivisionByZero);
    }
    if s < t {
        return Err(Error::NumeratorTooShort { s, t });
    }
    let a = digit_mod_inverse(v.digit(0), radix)?;
    let r = s - t + 1;
    let ud = u.padded(s + 1);
    let vd: Vec<DoubleDigit> = v.digits().iter().map(|&d| d as DoubleDigit).collect();
    // cells: L_0..L_{s+1} | x_0..x_{r-1}
    let xb = s + 2;
    let mut pram = Pram::new(vec![0 as DoubleDigit; s + 2 + r], opts.backend, opts.checked);
    let carry_pair = |k: usize, n: usize, c: &[DoubleDigit]| {
        let (even, odd) = (k + 2 * n, k + 2 * n + 1);
        writes!((odd, c[odd] + c[even] / beta), (even, c[even] % beta))
    };

    for k in 0..r {
        pram.serial(|c| writes!((xb + k, a.solve(ud[k] as i128 - c[k] as i128) as DoubleDigit)))?;
        let xk = pram.cells()[xb + k];
        pram.pardo(t, |i, c| writes!((k + i, c[k + i] + xk * vd[i])))?;
        pram.pardo((s - k - 1) / 2 + 1, |n, c| carry_pair(k, n, c))?;
    }
    // add the β-complement of u's digits r..=s (u_s = 0)
    let complement: Vec<DoubleDigit> =
        (r..=s).map(|k| beta_complement_digit(ud[k], k, r, radix)).collect::<Result<_>>()?;
    pram.pardo(s - r + 1, |i, c| writes!((r + i, c[r + i] + complement[i])))?;
    for k in r..=s {
        pram.pardo((s - k) / 2 + 1, |n, c| carry_pair(k, n, c))?;
    }

    let trace = pram.trace();
    let cells = pram.into_cells();
    let top = cells[s + 1];
    if let Some(i) = (r..=s).find(|&i| cells[i] >= beta) {
        return Err(Error::InvariantViolation(format!("dmod: L_{i} = {} not normalized", cells[i])));
    }
    if top > 1 {
        return Err(Error::InvariantViolation(format!("dmod: sign cell L_{} = {top}", s + 1)));
    }
    let raw = DigitVec::from_digits_unchecked(radix, cells[r..=s].iter().map(|&c| c as Digit).collect());
    let x = DigitVec::from_digits_unchecked(radix, cells[xb..xb + r].iter().map(|&c| c as Digit).collect());
    let (w, sign) = if top == 0 {
        let w = DigitVec::beta_power(radix, t)
            .checked_sub(&raw)?
            .ok_or_else(|| Error::InvariantViolation("dmod: complement exceeds β^t".into()))?;
        (w, Sign::Negative)
    } else if raw.is_zero() {
        (raw, Sign::Zero)
    } else {
        (raw, Sign::Positive)
    };
    Ok((DmodResult { x, w, sign, r }, trace))
}

/// `u * v` by multiply-accumulate steps with alternated carries, then a
/// linear number of carry sweeps.
pub fn par_mul(u: &DigitVec, v: &DigitVec, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    u.check_radix(v)?;
    let radix = u.radix();
    let beta = radix.wide();
    let (s, t) = (u.digit_count(), v.digit_count());
    if s == 0 || t == 0 {
        return Ok((DigitVec::zero(radix), ParTrace::default()));
    }
    let ud: Vec<DoubleDigit> = u.digits().iter().map(|&d| d as DoubleDigit).collect();
    let vd = v.digits();
    let mut pram = Pram::new(vec![0 as DoubleDigit; s + t + 1], opts.backend, opts.checked);
    let carry_pair = |k: usize, n: usize, c: &[DoubleDigit]| {
        let (even, odd) = (k + 2 * n, k + 2 * n + 1);
        writes!((odd, c[odd] + c[even] / beta), (even, c[even] % beta))
    };

    for k in 0..t {
        let vk = vd[k] as DoubleDigit;
        pram.pardo(s, |i, c| writes!((k + i, c[k + i] + vk * ud[i])))?;
        pram.pardo((s - 1) / 2 + 1, |n, c| carry_pair(k, n, c))?;
        if opts.checked {
            let limit = radix.pre_carry_even_bound();
            if let Some(i) = (0..=s + t).find(|&i| pram.cells()[i] > limit) {
                return Err(Error::InvariantViolation(format!(
                    "par_mul k={k}: L_{i} = {} exceeds {limit}",
                    pram.cells()[i]
                )));
            }
        }
    }
    for k in t..s + t {
        pram.pardo((s + t - k - 1) / 2 + 1, |n, c| carry_pair(k, n, c))?;
    }
    let trace = pram.trace();
    let cells = pram.into_cells();
    if let Some(i) = (0..=s + t).find(|&i| cells[i] >= beta) {
        return Err(Error::InvariantViolation(format!("par_mul: L_{i} = {} not normalized", cells[i])));
    }
    if cells[s + t] != 0 {
        return Err(Error::InvariantViolation("par_mul: product overflows s + t digits".into()));
    }
    let digits = cells[..s + t].iter().map(|&c| c as Digit).collect();
    Ok((DigitVec::from_digits_unchecked(radix, digits), trace))
}

/// `H(u, v; β^s)`: the first `s` digits of the β-adic expansion of `u / v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselCode {
    pub digits: Vec<Digit>,
    pub radix: Radix,
    pub precision: usize,
}

impl HenselCode {
    pub fn value(&self) -> DigitVec {
        DigitVec::from_digits_unchecked(self.radix, self.digits.clone())
    }
}

/// Incremental β-adic expansion; raising the precision only computes the new digits.
#[derive(Debug, Clone)]
pub struct HenselExpansion {
    stream: PpiStream,
    digits: Vec<Digit>,
}

impl HenselExpansion {
    pub fn new(u: &DigitVec, v: &DigitVec) -> Result<Self> {
        Ok(HenselExpansion { stream: PpiStream::new(u, v)?, digits: Vec::new() })
    }

    pub fn extend_to(&mut self, precision: usize) -> Result<&[Digit]> {
        while self.digits.len() < precision {
            let d = self.stream.try_next_digit()?;
            self.digits.push(d);
        }
        Ok(&self.digits[..precision])
    }

    pub fn code(&mut self, precision: usize) -> Result<HenselCode> {
        let radix = self.stream.radix();
        let digits = self.extend_to(precision)?.to_vec();
        Ok(HenselCode { digits, radix, precision })
    }
}

pub fn hensel_code(u: &DigitVec, v: &DigitVec, s: usize) -> Result<HenselCode> {
    if s == 0 {
        return Err(Error::ZeroPrecision);
    }
    HenselExpansion::new(u, v)?.code(s)
}

/// The repeating block of the radix-β expansion of a fraction in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodResult {
    /// Period length.
    pub t: usize,
    /// The block as a `t`-digit number.
    pub period: DigitVec,
    /// The fraction in lowest terms.
    pub u_reduced: DigitVec,
    pub v_reduced: DigitVec,
}

impl PeriodResult {
    /// The `t` digits of the block, least significant first.
    pub fn digits_lsf(&self) -> Vec<Digit> {
        self.period.padded(self.t)
    }
}

/// Period of `u / v` in radix β: `T ≡ -u / v (mod β^t)` with `t` the order of
/// β modulo the reduced denominator. The digits of `T` come out least
/// significant first.
pub fn rational_period(u: &DigitVec, v: &DigitVec, max_t: usize) -> Result<PeriodResult> {
    u.check_radix(v)?;
    let radix = u.radix();
    if u.is_zero() || u.cmp_value(v) != Ordering::Less {
        return Err(Error::InvalidFraction);
    }
    let g = u.gcd(v)?;
    let (u_reduced, _) = u.div_rem(&g)?;
    let (v_reduced, _) = v.div_rem(&g)?;
    let t = multiplicative_order(radix, &v_reduced, max_t)?;
    let modulus = DigitVec::beta_power(radix, t);
    let low = u_reduced.truncate_mod_power(t);
    let negated = if low.is_zero() { low } else { modulus.checked_sub(&low)?.expect("u mod β^t < β^t") };
    let period = ppi_sequential(&ModDivProblem::new(negated, v_reduced.clone(), t)?)?;
    Ok(PeriodResult { t, period, u_reduced, v_reduced })
}

/// Smallest `t >= 1` with `β^t ≡ 1 (mod v)`, by repeated multiplication by β.
pub fn multiplicative_order(radix: Radix, v: &DigitVec, cap: usize) -> Result<usize> {
    if v.radix() != radix {
        return Err(Error::RadixMismatch(radix.beta(), v.radix().beta()));
    }
    if v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if digit_mod_inverse(v.digit(0), radix).is_err() {
        return Err(Error::NotPurelyPeriodic { beta: radix.beta() });
    }
    let one = DigitVec::one(radix);
    if *v == one {
        return Ok(1);
    }
    let (_, mut power) = DigitVec::beta_power(radix, 1).div_rem(v)?;
    let mut t = 1;
    while power != one {
        if t >= cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        power = power.shl_digits(1).reduce_once(v).1;
        t += 1;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(n: u128, b: u64) -> DigitVec {
        DigitVec::from_u128(Radix::new(b).unwrap(), n)
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(exact_div(&dv(165101, 10), &dv(1543, 10)).unwrap(), dv(107, 10));
        assert_eq!(exact_div(&dv(1543, 10), &dv(1543, 10)).unwrap(), dv(1, 10));
        assert!(exact_div(&dv(0, 10), &dv(1543, 10)).unwrap().is_zero());
        // common β-power stripped
        assert_eq!(exact_div(&dv(1651010, 10), &dv(15430, 10)).unwrap(), dv(107, 10));
        assert_eq!(exact_div(&dv(165102, 10), &dv(1543, 10)), Err(Error::NotExact));
        assert_eq!(exact_div(&dv(10, 10), &dv(100, 10)), Err(Error::NotExact));
        assert_eq!(exact_div(&dv(5, 10), &dv(0, 10)), Err(Error::DivisionByZero));
        assert!(matches!(exact_div(&dv(24, 10), &dv(2, 10)), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn dmod_examples() {
        let d = dmod(&dv(37229, 2), &dv(1543, 2)).unwrap();
        assert_eq!((d.x, d.w, d.sign, d.r), (dv(43, 2), dv(455, 2), Sign::Positive, 6));

        let d = dmod(&dv(50000, 10), &dv(999, 10)).unwrap();
        assert_eq!((d.x, d.w, d.sign, d.r), (dv(0, 10), dv(50, 10), Sign::Negative, 3));

        let d = dmod(&dv(1543, 10), &dv(1543, 10)).unwrap();
        assert_eq!((d.x, d.w, d.sign, d.r), (dv(1, 10), dv(0, 10), Sign::Zero, 1));

        assert_eq!(dmod(&dv(12, 10), &dv(123, 10)), Err(Error::NumeratorTooShort { s: 2, t: 3 }));
        assert!(matches!(dmod(&dv(1234, 10), &dv(12, 10)), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn multiplication_examples() {
        let opts = ParOptions::checked();
        assert!(par_mul(&dv(0, 10), &dv(77, 10), opts).unwrap().0.is_zero());
        assert_eq!(par_mul(&dv(1543, 10), &dv(107, 10), opts).unwrap().0, dv(165101, 10));
        let nines = dv(10u128.pow(20) - 1, 10);
        assert_eq!(par_mul(&nines, &nines, opts).unwrap().0, nines.mul(&nines).unwrap());
        let (_, trace) = par_mul(&dv(123456789, 10), &dv(987, 10), opts).unwrap();
        assert!(trace.max_width <= 10);
    }

    #[test]
    fn hensel_examples() {
        let h = hensel_code(&dv(37229, 2), &dv(1543, 2), 7).unwrap();
        assert_eq!(h.digits, vec![1, 1, 0, 1, 0, 1, 1]);
        assert_eq!(h.value(), dv(107, 2));
        assert_eq!(hensel_code(&dv(4321, 10), &dv(1, 10), 6).unwrap().digits, vec![1, 2, 3, 4, 0, 0]);
        let mut exp = HenselExpansion::new(&dv(5, 10), &dv(3, 10)).unwrap();
        assert_eq!(exp.extend_to(3).unwrap(), &[5, 3, 3]);
        assert_eq!(exp.extend_to(4).unwrap(), &[5, 3, 3, 3]);
        assert_eq!(hensel_code(&dv(5, 10), &dv(3, 10), 0), Err(Error::ZeroPrecision));
    }

    #[test]
    fn period_examples() {
        let p = rational_period(&dv(1, 10), &dv(7, 10), 100).unwrap();
        assert_eq!((p.t, p.period.clone()), (6, dv(142857, 10)));
        assert_eq!(p.digits_lsf(), vec![7, 5, 8, 2, 4, 1]);
        let p = rational_period(&dv(1, 10), &dv(3, 10), 100).unwrap();
        assert_eq!((p.t, p.period), (1, dv(3, 10)));
        let p = rational_period(&dv(2, 10), &dv(7, 10), 100).unwrap();
        assert_eq!((p.t, p.period), (6, dv(285714, 10)));
        // 1/13 = 0.(076923): leading zero kept in the digit block
        let p = rational_period(&dv(1, 10), &dv(13, 10), 100).unwrap();
        assert_eq!(p.digits_lsf(), vec![3, 2, 9, 6, 7, 0]);
        // 3/6 reduces to 1/2, not purely periodic in base 10
        assert_eq!(rational_period(&dv(3, 10), &dv(6, 10), 100), Err(Error::NotPurelyPeriodic { beta: 10 }));
        assert_eq!(rational_period(&dv(7, 10), &dv(7, 10), 100), Err(Error::InvalidFraction));
        assert_eq!(rational_period(&dv(0, 10), &dv(7, 10), 100), Err(Error::InvalidFraction));
        assert_eq!(rational_period(&dv(1, 10), &dv(7, 10), 5), Err(Error::OrderCapExceeded { cap: 5 }));
    }

    #[test]
    fn order_examples() {
        let ten = Radix::new(10).unwrap();
        assert_eq!(multiplicative_order(ten, &dv(7, 10), 100).unwrap(), 6);
        assert_eq!(multiplicative_order(ten, &dv(3, 10), 100).unwrap(), 1);
        assert_eq!(multiplicative_order(Radix::new(2).unwrap(), &dv(7, 2), 100).unwrap(), 3);
        // modulus smaller than β
        assert_eq!(multiplicative_order(Radix::new(65536).unwrap(), &dv(7, 65536), 100).unwrap(), 3);
        assert_eq!(multiplicative_order(ten, &dv(14, 10), 100), Err(Error::NotPurelyPeriodic { beta: 10 }));
    }
}

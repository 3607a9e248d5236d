//! Sequential modular division: the classical digit-elimination loop
//! (SeqModiv) and the pen-and-paper inverse, which fills in quotient digits
//! right to left by undoing the schoolbook multiplication layout.

use crate::digits::{digit_mod_inverse, Digit, DigitInverse, DigitVec, Radix};
use crate::error::{Error, Result};

/// `x ≡ u / v (mod β^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModDivProblem {
    u: DigitVec,
    v: DigitVec,
    s: usize,
}

impl ModDivProblem {
    pub fn new(u: DigitVec, v: DigitVec, s: usize) -> Result<Self> {
        u.check_radix(&v)?;
        if s == 0 {
            return Err(Error::ZeroPrecision);
        }
        digit_mod_inverse(v.digit(0), v.radix())?;
        Ok(ModDivProblem { u, v, s })
    }

    pub fn u(&self) -> &DigitVec {
        &self.u
    }

    pub fn v(&self) -> &DigitVec {
        &self.v
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn radix(&self) -> Radix {
        self.v.radix()
    }

    pub(crate) fn inverse(&self) -> DigitInverse {
        digit_mod_inverse(self.v.digit(0), self.radix()).expect("checked on construction")
    }
}

/// Outcome of stripping `u = β^q * u'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    /// `u = 0` or `q >= s`: the quotient is zero.
    Zero,
    /// Solve `reduced` (precision `s - q`) and shift its result up by `q` digits.
    Reduced { q: usize, reduced: ModDivProblem },
}

/// Removes the β-power from the numerator so the PPI variants start from a
/// numerator whose lowest digit is nonzero.
pub fn preprocess_numerator(p: &ModDivProblem) -> Preprocessed {
    let Ok((q, u)) = p.u.strip_beta_power() else {
        return Preprocessed::Zero;
    };
    if q >= p.s {
        return Preprocessed::Zero;
    }
    let reduced = ModDivProblem { u: u.truncate_mod_power(p.s - q), v: p.v.clone(), s: p.s - q };
    Preprocessed::Reduced { q, reduced }
}

/// Runs `solve` on the preprocessed problem and reassembles `β^q * x'`.
pub(crate) fn with_preprocessing<T: Default>(
    p: &ModDivProblem,
    solve: impl FnOnce(&ModDivProblem) -> Result<(DigitVec, T)>,
) -> Result<(DigitVec, T)> {
    match preprocess_numerator(p) {
        Preprocessed::Zero => Ok((DigitVec::zero(p.radix()), T::default())),
        Preprocessed::Reduced { q, reduced } => {
            let (x, extra) = solve(&reduced)?;
            Ok((x.shl_digits(q), extra))
        }
    }
}

/// SeqModiv: `x_k := a*u mod β`, then `u := ((u - x_k*v) mod β^{s-k}) / β`.
pub fn seq_modiv(p: &ModDivProblem) -> Result<DigitVec> {
    let radix = p.radix();
    let beta = radix.beta() as i64;
    let a = p.inverse();
    let mut u = p.u.padded(p.s);
    u.truncate(p.s);
    let v = p.v.padded(p.s);
    let mut x = Vec::with_capacity(p.s);
    for k in 0..p.s {
        let xk = a.solve(u[0] as i128);
        x.push(xk);
        // (u - x_k v) mod β^{s-k}; the low digit cancels by choice of x_k
        let mut borrow = 0i64;
        for (i, ui) in u.iter_mut().enumerate() {
            let t = *ui as i64 - xk as i64 * v[i] as i64 - borrow;
            *ui = t.rem_euclid(beta) as Digit;
            borrow = -t.div_euclid(beta);
        }
        if u[0] != 0 {
            return Err(Error::InvariantViolation(format!("SeqModiv step {k}: low digit {} did not cancel", u[0])));
        }
        u.remove(0);
    }
    Ok(DigitVec::from_digits_unchecked(radix, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PpiOptions {
    /// Bound the accumulation sum by `m = ℓ_β(v mod β^s)` instead of `k`.
    pub m_truncation: bool,
    /// Verify `L_k + x_k v_0 = u_k + β c_{k+1}` at every step.
    pub checked: bool,
}

impl Default for PpiOptions {
    fn default() -> Self {
        PpiOptions { m_truncation: true, checked: cfg!(debug_assertions) }
    }
}

/// One iteration of the sequential PPI loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PpiStep {
    pub k: usize,
    /// `L_k = Σ v_j x_{k-j} + c_k`.
    pub accumulator: u128,
    pub digit: Digit,
    pub carry_in: u128,
    pub carry_out: u128,
}

/// The PPI recurrence as an unbounded LSF digit stream of `u / v` in `Z_β`.
///
/// Low-order zero digits of `u` are emitted first and the recurrence runs on
/// the stripped numerator. The stream owns mutable state and is not meant to
/// be shared mid-run.
#[derive(Debug, Clone)]
pub struct PpiStream {
    radix: Radix,
    a: DigitInverse,
    u: Vec<Digit>,
    v: Vec<Digit>,
    /// Number of significant digits of `v` visible to the recurrence.
    m: usize,
    leading_zeros: usize,
    emitted_zeros: usize,
    m_truncation: bool,
    checked: bool,
    x: Vec<Digit>,
    carry: u128,
    last: Option<PpiStep>,
}

impl PpiStream {
    pub fn new(u: &DigitVec, v: &DigitVec) -> Result<Self> {
        Self::with_options(u, v, PpiOptions::default())
    }

    pub fn with_options(u: &DigitVec, v: &DigitVec, opts: PpiOptions) -> Result<Self> {
        u.check_radix(v)?;
        let radix = v.radix();
        let a = digit_mod_inverse(v.digit(0), radix)?;
        let (leading_zeros, u) = match u.strip_beta_power() {
            Ok((q, rest)) => (q, rest.digits().to_vec()),
            Err(_) => (usize::MAX, Vec::new()),
        };
        Ok(PpiStream {
            radix,
            a,
            u,
            m: v.digit_count(),
            v: v.digits().to_vec(),
            leading_zeros,
            emitted_zeros: 0,
            m_truncation: opts.m_truncation,
            checked: opts.checked,
            x: Vec::new(),
            carry: 0,
            last: None,
        })
    }

    /// Restricts `v` to `v mod β^s`, so `m = ℓ_β(v mod β^s)`.
    fn truncate_divisor(&mut self, s: usize) {
        self.v.truncate(s);
        while self.v.last() == Some(&0) {
            self.v.pop();
        }
        self.m = self.v.len();
    }

    /// The iteration record of the last digit produced by the recurrence
    /// (not set for the emitted leading zeros).
    pub fn last_step(&self) -> Option<PpiStep> {
        self.last
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    fn step(&mut self) -> Result<Digit> {
        let k = self.x.len();
        let upper = if self.m_truncation { k.min(self.m.saturating_sub(1)) } else { k };
        let mut acc = self.carry;
        for j in 1..=upper {
            let vj = self.v.get(j).copied().unwrap_or(0) as u128;
            acc += vj * self.x[k - j] as u128;
        }
        let uk = self.u.get(k).copied().unwrap_or(0);
        let xk = self.a.solve(uk as i128 - acc as i128);
        let beta = self.radix.beta() as u128;
        let total = acc + xk as u128 * self.v[0] as u128;
        let next = total / beta;
        if self.checked && total != uk as u128 + beta * next {
            return Err(Error::InvariantViolation(format!("PPI carry identity fails at k={k}: L={acc} x={xk}")));
        }
        self.last = Some(PpiStep { k, accumulator: acc, digit: xk, carry_in: self.carry, carry_out: next });
        self.carry = next;
        self.x.push(xk);
        Ok(xk)
    }

    /// Next digit, surfacing checked-mode violations.
    pub fn try_next_digit(&mut self) -> Result<Digit> {
        if self.emitted_zeros < self.leading_zeros {
            self.emitted_zeros += 1;
            return Ok(0);
        }
        self.step()
    }
}

impl Iterator for PpiStream {
    type Item = Digit;

    fn next(&mut self) -> Option<Digit> {
        Some(self.try_next_digit().expect("PPI invariant violated"))
    }
}

/// Result of a recorded sequential PPI run on the preprocessed problem.
#[derive(Debug, Clone, Default)]
pub struct PpiRun {
    pub steps: Vec<PpiStep>,
}

/// Sequential PPI with default options.
pub fn ppi_sequential(p: &ModDivProblem) -> Result<DigitVec> {
    ppi_sequential_with(p, PpiOptions::default()).map(|(x, _)| x)
}

/// Sequential PPI returning the per-iteration accumulators and carries of
/// the reduced (β-power stripped) problem.
pub fn ppi_sequential_with(p: &ModDivProblem, opts: PpiOptions) -> Result<(DigitVec, PpiRun)> {
    with_preprocessing(p, |reduced| {
        let mut stream = PpiStream::with_options(&reduced.u, &reduced.v, opts)?;
        stream.truncate_divisor(reduced.s);
        let mut digits = Vec::with_capacity(reduced.s);
        let mut run = PpiRun::default();
        for _ in 0..reduced.s {
            digits.push(stream.try_next_digit()?);
            run.steps.extend(stream.last_step());
        }
        Ok((DigitVec::from_digits_unchecked(reduced.radix(), digits), run))
    })
}

//! Parallel modular division on the [`Pram`] engine.
//!
//! * [`par_modiv`]: carry-save elimination on a working copy of `u`, with
//!   signed double-digit carries and a serial first-carry update.
//! * [`par_ppi_v1`]: pen-and-paper inverse with carry-save propagation; every
//!   cell holds one nonnegative digit.
//! * [`par_ppi_v2`]: pen-and-paper inverse with alternated carries; even
//!   offsets hold one digit, odd offsets at most `β² + β - 2`.
//!
//! All three are linear in surface and time: at most `s` lanes per step and
//! at most three steps per output digit. Cell state starts zeroed, so the
//! zeroing loops are not counted as steps.

use crate::digits::{Digit, DigitVec, DoubleDigit, Radix};
use crate::error::{Error, Result};
use crate::pram::{Backend, ParTrace, Pram};
use crate::seq::{with_preprocessing, ModDivProblem};
use crate::writes;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParOptions {
    /// Check write-disjointness and the per-algorithm cell bounds after every step.
    pub checked: bool,
    pub backend: Backend,
}

impl Default for ParOptions {
    fn default() -> Self {
        ParOptions { checked: cfg!(debug_assertions), backend: Backend::Sequential }
    }
}

impl ParOptions {
    pub fn checked() -> Self {
        ParOptions { checked: true, ..Default::default() }
    }
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

fn collect_digits(radix: Radix, cells: &[impl Copy + TryInto<Digit>]) -> DigitVec {
    let digits = cells.iter().map(|&c| c.try_into().ok().expect("digit cell")).collect();
    DigitVec::from_digits_unchecked(radix, digits)
}

/// Carry-save modular division that rewrites the digits of `u` in place.
pub fn par_modiv(p: &ModDivProblem, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    let s = p.s();
    let radix = p.radix();
    let beta = radix.beta() as i128;
    let a = p.inverse();
    let v: Vec<i128> = p.v().padded(s).iter().map(|&d| d as i128).collect();
    // cells: u_0..u_{s-1} | y_0..y_s | x_0..x_{s-1}
    let (ub, yb, xb) = (0, s, 2 * s + 1);
    let mut cells = vec![0i128; 3 * s + 1];
    for (i, &d) in p.u().padded(s).iter().take(s).enumerate() {
        cells[ub + i] = d as i128;
    }
    let mut pram = Pram::new(cells, opts.backend, opts.checked);

    for k in 0..s - 1 {
        pram.serial(|c| writes!((xb + k, a.solve(c[ub + k]) as i128)))?;
        let xk = pram.cells()[xb + k];
        // first carry, updated serially
        pram.serial(|c| writes!((yb + k + 1, c[yb + k + 1] - (xk * v[0]).div_euclid(beta))))?;
        pram.pardo(s - k - 1, |lane, c| {
            let i = lane + 1;
            let t = c[ub + k + i] - xk * v[i] + c[yb + k + i];
            writes!((yb + k + i + 1, t.div_euclid(beta)), (ub + k + i, t.rem_euclid(beta)))
        })?;
        if opts.checked {
            let c = pram.cells();
            if let Some(i) = (k + 1..s).find(|&i| !(0..beta).contains(&c[ub + i])) {
                return Err(violation(format!("ParModiv k={k}: u_{i} = {} is not a digit", c[ub + i])));
            }
            if let Some(i) = (1..=s).find(|&i| c[yb + i].abs() >= beta * beta) {
                return Err(violation(format!("ParModiv k={k}: |y_{i}| = {} >= β²", c[yb + i])));
            }
        }
    }
    pram.serial(|c| writes!((xb + s - 1, a.solve(c[ub + s - 1]) as i128)))?;
    let trace = pram.trace();
    Ok((collect_digits(radix, &pram.cells()[xb..xb + s]), trace))
}

/// Pen-and-paper inverse with carry-save propagation.
pub fn par_ppi_v1(p: &ModDivProblem, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    with_preprocessing(p, |reduced| ppi_v1_core(reduced, opts))
}

fn ppi_v1_core(p: &ModDivProblem, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    let s = p.s();
    let radix = p.radix();
    let beta = radix.wide();
    let a = p.inverse();
    let u = p.u().padded(s);
    let v: Vec<DoubleDigit> = p.v().padded(s).iter().map(|&d| d as DoubleDigit).collect();
    // cells: L_0..L_s | y_0..y_s | x_0..x_{s-1}
    let (lb, yb, xb) = (0, s + 1, 2 * s + 2);
    let mut pram = Pram::new(vec![0 as DoubleDigit; 3 * s + 2], opts.backend, opts.checked);

    let solve =
        |k: usize, c: &[DoubleDigit]| a.solve(u[k] as i128 - c[lb + k] as i128 - c[yb + k] as i128) as DoubleDigit;
    for k in 0..s - 1 {
        pram.serial(|c| writes!((xb + k, solve(k, c))))?;
        let xk = pram.cells()[xb + k];
        pram.pardo(s - k, |i, c| {
            let t = c[lb + k + i] + xk * v[i] + c[yb + k + i];
            writes!((yb + k + i + 1, t / beta), (lb + k + i, t % beta))
        })?;
        if opts.checked {
            let c = pram.cells();
            if let Some(i) = (0..=s).find(|&i| c[lb + i] >= beta || c[yb + i] >= beta) {
                return Err(violation(format!(
                    "ParPPI v1 k={k}: cell {i} holds L={} y={}, not single digits",
                    c[lb + i],
                    c[yb + i]
                )));
            }
        }
    }
    pram.serial(|c| writes!((xb + s - 1, solve(s - 1, c))))?;
    let trace = pram.trace();
    Ok((collect_digits(radix, &pram.cells()[xb..xb + s]), trace))
}

/// Where in an alternated-carry iteration an observation is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum V2Phase {
    /// After `L_{k+i} += x_k v_i`, before carries.
    Multiplied,
    /// After the alternated carry step.
    Carried,
}

/// Snapshot of the accumulators `L_0..=L_s` handed to an observer.
#[derive(Debug, Clone, Copy)]
pub struct V2Event<'a> {
    pub k: usize,
    pub phase: V2Phase,
    pub radix: Radix,
    pub s: usize,
    pub accumulators: &'a [DoubleDigit],
}

/// Pen-and-paper inverse with alternated carry propagation.
pub fn par_ppi_v2(p: &ModDivProblem, opts: ParOptions) -> Result<(DigitVec, ParTrace)> {
    par_ppi_v2_observed(p, opts, &mut |_| {})
}

/// [`par_ppi_v2`] reporting the accumulator state after every multiply and
/// carry step of the preprocessed problem.
pub fn par_ppi_v2_observed(
    p: &ModDivProblem,
    opts: ParOptions,
    observer: &mut dyn FnMut(V2Event<'_>),
) -> Result<(DigitVec, ParTrace)> {
    with_preprocessing(p, |reduced| ppi_v2_core(reduced, opts, observer))
}

fn ppi_v2_core(
    p: &ModDivProblem,
    opts: ParOptions,
    observer: &mut dyn FnMut(V2Event<'_>),
) -> Result<(DigitVec, ParTrace)> {
    let s = p.s();
    let radix = p.radix();
    let beta = radix.wide();
    let a = p.inverse();
    let u = p.u().padded(s);
    let v: Vec<DoubleDigit> = p.v().padded(s).iter().map(|&d| d as DoubleDigit).collect();
    // cells: L_0..L_s (L_s is a guard) | x_0..x_{s-1}
    let xb = s + 1;
    let mut pram = Pram::new(vec![0 as DoubleDigit; 2 * s + 1], opts.backend, opts.checked);

    let solve = |k: usize, c: &[DoubleDigit]| a.solve(u[k] as i128 - c[k] as i128) as DoubleDigit;
    for k in 0..s - 1 {
        pram.serial(|c| writes!((xb + k, solve(k, c))))?;
        let xk = pram.cells()[xb + k];
        pram.pardo(s - k, |i, c| writes!((k + i, c[k + i] + xk * v[i])))?;
        let event = V2Event { k, phase: V2Phase::Multiplied, radix, s, accumulators: &pram.cells()[..=s] };
        observer(event);
        if opts.checked {
            check_v2_bounds(&event)?;
        }
        pram.pardo((s - k - 1) / 2 + 1, |n, c| {
            let (even, odd) = (k + 2 * n, k + 2 * n + 1);
            if odd == s {
                // a carry out of position s-1 is ≡ 0 (mod β^s)
                writes!((even, c[even] % beta))
            } else {
                writes!((odd, c[odd] + c[even] / beta), (even, c[even] % beta))
            }
        })?;
        let event = V2Event { k, phase: V2Phase::Carried, radix, s, accumulators: &pram.cells()[..=s] };
        observer(event);
        if opts.checked {
            check_v2_bounds(&event)?;
            check_v2_storage(&event)?;
        }
    }
    pram.serial(|c| writes!((xb + s - 1, solve(s - 1, c))))?;
    let trace = pram.trace();
    Ok((collect_digits(radix, &pram.cells()[xb..xb + s]), trace))
}

/// Alternated-carry cell bounds for the cells `k + 2n`, `k + 2n + 1`,
/// `n <= (s - k - 1) / 2`, at the given phase of iteration `k`.
pub fn check_v2_bounds(e: &V2Event<'_>) -> Result<()> {
    let (even_bound, odd_bound) = match e.phase {
        V2Phase::Multiplied => (e.radix.pre_carry_even_bound(), e.radix.pre_carry_odd_bound()),
        V2Phase::Carried => (e.radix.wide() - 1, e.radix.odd_cell_bound()),
    };
    for n in 0..=(e.s - e.k - 1) / 2 {
        let (even, odd) = (e.k + 2 * n, e.k + 2 * n + 1);
        if e.accumulators[even] > even_bound {
            return Err(violation(format!(
                "alternated carry {:?} k={}: L_{even} = {} > {even_bound}",
                e.phase, e.k, e.accumulators[even]
            )));
        }
        if e.accumulators[odd] > odd_bound {
            return Err(violation(format!(
                "alternated carry {:?} k={}: L_{odd} = {} > {odd_bound}",
                e.phase, e.k, e.accumulators[odd]
            )));
        }
    }
    Ok(())
}

/// The accumulators below the guard cell fit in `2s` radix-β digits.
pub fn check_v2_storage(e: &V2Event<'_>) -> Result<()> {
    let used: usize = e.accumulators[..e.s].iter().map(|&c| e.radix.digits_of(c as u128).max(1)).sum();
    if used > 2 * e.s {
        return Err(violation(format!("alternated carry k={}: {used} digits exceed 2s = {}", e.k, 2 * e.s)));
    }
    Ok(())
}

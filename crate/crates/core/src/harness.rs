//! Differential fuzzing against the oracle and trace sweeps for benchmarking.

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::Algorithm;
use crate::digits::{digit_mod_inverse, Digit, DigitVec, Radix};
use crate::error::{Error, Result};
use crate::oracle::{from_digit_vec, oracle_modiv, oracle_pow, to_digit_vec};
use crate::par::ParOptions;
use crate::pram::TraceRecord;
use crate::seq::ModDivProblem;

/// Anything that computes `u / v mod β^s`.
pub trait ModularDivider: Sync {
    fn name(&self) -> String;
    fn divide(&self, p: &ModDivProblem) -> Result<DigitVec>;
}

/// An [`Algorithm`] run with fixed options.
#[derive(Debug, Clone, Copy)]
pub struct Configured {
    pub algorithm: Algorithm,
    pub opts: ParOptions,
}

impl ModularDivider for Configured {
    fn name(&self) -> String {
        self.algorithm.name().to_string()
    }

    fn divide(&self, p: &ModDivProblem) -> Result<DigitVec> {
        self.algorithm.run(p, self.opts).map(|(x, _)| x)
    }
}

/// The five division algorithms in checked mode.
pub fn checked_algorithms() -> Vec<Configured> {
    Algorithm::DIVISION.into_iter().map(|algorithm| Configured { algorithm, opts: ParOptions::checked() }).collect()
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub count: usize,
    pub radixes: Vec<Radix>,
    pub max_s: usize,
    pub seed: u64,
}

/// One disagreement with the oracle. `case_seed` and `radix` regenerate the
/// problem through [`random_problem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub algorithm: String,
    pub case_seed: u64,
    pub radix: u32,
    pub max_s: usize,
    pub s: usize,
    pub u: String,
    pub v: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
}

/// SplitMix64 step; spreads a run seed into independent per-case seeds.
pub fn case_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_digits(rng: &mut impl Rng, radix: Radix, len: usize) -> Vec<Digit> {
    (0..len).map(|_| rng.gen_range(0..radix.beta())).collect()
}

fn random_unit_digit(rng: &mut impl Rng, radix: Radix) -> Digit {
    loop {
        let d = rng.gen_range(1..radix.beta());
        if digit_mod_inverse(d, radix).is_ok() {
            return d;
        }
    }
}

/// A random problem with `1 <= s <= max_s`, numerator and divisor up to
/// `s + 2` digits, and a numerator that is sometimes divisible by a power of β.
pub fn random_problem(radix: Radix, max_s: usize, case_seed: u64) -> ModDivProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let s = rng.gen_range(1..=max_s.max(1));
    let u_len = rng.gen_range(0..=s + 2);
    let mut u = random_digits(&mut rng, radix, u_len);
    if rng.gen_bool(0.25) {
        let q = rng.gen_range(0..=s).min(u.len());
        u[..q].iter_mut().for_each(|d| *d = 0);
    }
    let v_len = rng.gen_range(1..=s + 2);
    let mut v = random_digits(&mut rng, radix, v_len);
    v[0] = random_unit_digit(&mut rng, radix);
    let u = DigitVec::from_digits(radix, u).expect("digits below β");
    let v = DigitVec::from_digits(radix, v).expect("digits below β");
    ModDivProblem::new(u, v, s).expect("divisor made invertible")
}

/// A problem with exactly `s`-digit operands and unit low digits, so no
/// preprocessing shortens it.
pub fn full_size_problem(radix: Radix, s: usize, seed: u64) -> Result<ModDivProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = random_digits(&mut rng, radix, s);
    let mut v = random_digits(&mut rng, radix, s);
    if s > 0 {
        u[0] = rng.gen_range(1..radix.beta());
        v[0] = random_unit_digit(&mut rng, radix);
        u[s - 1] = u[s - 1].max(1);
        v[s - 1] = v[s - 1].max(1);
    }
    ModDivProblem::new(DigitVec::from_digits(radix, u)?, DigitVec::from_digits(radix, v)?, s)
}

/// Checks one divider output against the oracle value and against
/// `x v ≡ u (mod β^s)` in oracle arithmetic.
fn verify(p: &ModDivProblem, expected: &BigUint, got: &DigitVec) -> bool {
    let x = from_digit_vec(got);
    let modulus = oracle_pow(p.radix(), p.s());
    let u = from_digit_vec(p.u());
    let v = from_digit_vec(p.v());
    x == *expected && x < modulus && (x * v).mod_floor(&modulus) == u.mod_floor(&modulus)
}

pub fn run(config: &FuzzConfig, dividers: &[&dyn ModularDivider]) -> Result<FuzzReport> {
    if config.radixes.is_empty() {
        return Err(Error::InvalidRadix(0));
    }
    let mut report = FuzzReport::default();
    for i in 0..config.count {
        let radix = config.radixes[i % config.radixes.len()];
        let seed = case_seed(config.seed, i as u64);
        let p = random_problem(radix, config.max_s, seed);
        let expected = oracle_modiv(&from_digit_vec(p.u()), &from_digit_vec(p.v()), radix, p.s())?;
        for divider in dividers {
            let outcome = divider.divide(&p);
            let ok = matches!(&outcome, Ok(x) if verify(&p, &expected, x));
            if !ok {
                report.mismatches.push(Mismatch {
                    algorithm: divider.name(),
                    case_seed: seed,
                    radix: radix.beta(),
                    max_s: config.max_s,
                    s: p.s(),
                    u: p.u().to_string(),
                    v: p.v().to_string(),
                    expected: to_digit_vec(&expected, radix).to_string(),
                    got: match outcome {
                        Ok(x) => x.to_string(),
                        Err(e) => format!("error: {e}"),
                    },
                });
            }
        }
        report.cases += 1;
    }
    Ok(report)
}

/// One trace record per size for a parallel algorithm on full-size random operands.
pub fn trace_sweep(
    algorithm: Algorithm,
    radix: Radix,
    sizes: &[usize],
    seed: u64,
    opts: ParOptions,
) -> Result<Vec<TraceRecord>> {
    if !algorithm.is_parallel() {
        return Err(Error::InvalidNumeral(format!("{algorithm} has no parallel trace")));
    }
    sizes
        .iter()
        .map(|&s| {
            let p = full_size_problem(radix, s, case_seed(seed, s as u64))?;
            let (_, trace) = algorithm.run(&p, opts)?;
            Ok(TraceRecord {
                algorithm: algorithm.name().to_string(),
                beta: radix.beta(),
                s,
                trace: trace.expect("parallel algorithms return a trace"),
            })
        })
        .collect()
}

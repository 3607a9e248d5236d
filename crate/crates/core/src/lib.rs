//! Least-significant-digit-first modular division `x ≡ u / v (mod β^s)`.
//!
//! The crate implements the pen-and-paper inverse (PPI), which recovers the
//! quotient digits of a schoolbook multiplication right to left, next to the
//! classical digit-elimination algorithm it competes with:
//!
//! | function | scheme | carries |
//! |---|---|---|
//! | [`seq_modiv`] | elimination, sequential | exact |
//! | [`ppi_sequential`] | PPI, sequential | running carry `c_k` |
//! | [`par_modiv`] | elimination, parallel | carry-save, signed |
//! | [`par_ppi_v1`] | PPI, parallel | carry-save, one digit per cell |
//! | [`par_ppi_v2`] | PPI, parallel | alternated carries |
//!
//! Parallel variants run on a synchronous step engine ([`pram`]) that
//! records steps, surface and work. The [`apps`] module builds exact
//! division, the digit modulus, linear surface-time multiplication, Hensel
//! codes and rational periods on the same scheme. [`oracle`] holds
//! independent big-integer reference implementations for testing.

pub mod algorithm;
pub mod apps;
mod arith;
pub mod digits;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod par;
pub mod pram;
pub mod seq;

pub use algorithm::Algorithm;
pub use apps::{
    dmod, dmod_with, exact_div, exact_div_with, hensel_code, multiplicative_order, par_mul, rational_period,
    DmodResult, HenselCode, HenselExpansion, PeriodResult, Sign,
};
pub use digits::{beta_complement_digit, digit_mod_inverse, Digit, DigitInverse, DigitVec, Radix};
pub use error::{Error, Result};
pub use par::{par_modiv, par_ppi_v1, par_ppi_v2, ParOptions};
pub use pram::{Backend, ParTrace, TraceRecord};
pub use seq::{
    ppi_sequential, ppi_sequential_with, preprocess_numerator, seq_modiv, ModDivProblem, PpiOptions, PpiStream,
};

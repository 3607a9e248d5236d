use std::fmt;
use std::str::FromStr;

use crate::digits::DigitVec;
use crate::error::{Error, Result};
use crate::oracle;
use crate::par::{par_modiv, par_ppi_v1, par_ppi_v2, ParOptions};
use crate::pram::ParTrace;
use crate::seq::{ppi_sequential_with, seq_modiv, ModDivProblem, PpiOptions};

/// Selector over the modular-division implementations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    SeqModiv,
    Ppi,
    ParModiv,
    ParPpi1,
    ParPpi2,
    /// Extended-Euclid reference on big integers.
    Oracle,
}

impl Algorithm {
    /// The five digit-level algorithms, without the oracle.
    pub const DIVISION: [Algorithm; 5] =
        [Algorithm::SeqModiv, Algorithm::Ppi, Algorithm::ParModiv, Algorithm::ParPpi1, Algorithm::ParPpi2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SeqModiv => "seqmodiv",
            Algorithm::Ppi => "ppi",
            Algorithm::ParModiv => "parmodiv",
            Algorithm::ParPpi1 => "parppi1",
            Algorithm::ParPpi2 => "parppi2",
            Algorithm::Oracle => "oracle",
        }
    }

    pub fn is_parallel(self) -> bool {
        matches!(self, Algorithm::ParModiv | Algorithm::ParPpi1 | Algorithm::ParPpi2)
    }

    /// Runs the algorithm; parallel variants also return their trace.
    pub fn run(self, p: &ModDivProblem, opts: ParOptions) -> Result<(DigitVec, Option<ParTrace>)> {
        let traced = |r: Result<(DigitVec, ParTrace)>| r.map(|(x, t)| (x, Some(t)));
        match self {
            Algorithm::SeqModiv => Ok((seq_modiv(p)?, None)),
            Algorithm::Ppi => {
                let ppi = PpiOptions { checked: opts.checked, ..PpiOptions::default() };
                Ok((ppi_sequential_with(p, ppi)?.0, None))
            }
            Algorithm::ParModiv => traced(par_modiv(p, opts)),
            Algorithm::ParPpi1 => traced(par_ppi_v1(p, opts)),
            Algorithm::ParPpi2 => traced(par_ppi_v2(p, opts)),
            Algorithm::Oracle => {
                let x = oracle::oracle_modiv(
                    &oracle::from_digit_vec(p.u()),
                    &oracle::from_digit_vec(p.v()),
                    p.radix(),
                    p.s(),
                )?;
                Ok((oracle::to_digit_vec(&x, p.radix()), None))
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Algorithm::Oracle]
            .into_iter()
            .chain(Algorithm::DIVISION)
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidNumeral(format!("unknown algorithm {s:?}")))
    }
}

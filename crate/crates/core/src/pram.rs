//! A synchronous parallel-step engine.
//!
//! Every `pardo` step evaluates all of its lanes against the same snapshot
//! of the state and only then applies their writes, so a step behaves like
//! one clock tick of an array of processors. Lanes must write disjoint
//! cells; in checked mode a collision is reported as an error. The engine
//! counts steps (time), the widest step (surface) and the total number of
//! lane evaluations (work).

use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Most writes a single lane may issue in one step.
pub const MAX_LANE_WRITES: usize = 2;

/// Writes produced by one lane.
pub type LaneWrites<T> = ArrayVec<(usize, T), MAX_LANE_WRITES>;

/// Parallel accounting for one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParTrace {
    /// Number of synchronous steps, `T(s)`.
    pub steps: u64,
    /// Widest step, `S(s)`.
    pub max_width: u64,
    /// Sum of step widths, `W(s)`.
    pub work: u64,
}

impl ParTrace {
    pub fn record(&mut self, width: usize) {
        self.steps += 1;
        self.max_width = self.max_width.max(width as u64);
        self.work += width as u64;
    }
}

/// How the lanes of a step are evaluated. Results and traces do not depend
/// on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Sequential,
    /// Lanes evaluated and applied in a seeded random order.
    Shuffled(u64),
    /// Lanes evaluated on the rayon thread pool.
    Threaded,
}

/// Cell state plus accounting.
#[derive(Debug, Clone)]
pub struct Pram<T> {
    cells: Vec<T>,
    trace: ParTrace,
    backend: Backend,
    checked: bool,
    stamps: Vec<u64>,
    epoch: u64,
    rng: Option<ChaCha8Rng>,
    pending: Vec<(usize, T)>,
}

impl<T: Copy + Send + Sync> Pram<T> {
    pub fn new(cells: Vec<T>, backend: Backend, checked: bool) -> Self {
        let rng = match backend {
            Backend::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let stamps = if checked { vec![0; cells.len()] } else { Vec::new() };
        Pram { cells, trace: ParTrace::default(), backend, checked, stamps, epoch: 0, rng, pending: Vec::new() }
    }

    #[inline]
    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<T> {
        self.cells
    }

    #[inline]
    pub fn trace(&self) -> ParTrace {
        self.trace
    }

    /// One synchronous step of `width` independent lanes. Lane `i` reads the
    /// pre-step state and returns the cells it writes.
    pub fn pardo<F>(&mut self, width: usize, lane: F) -> Result<()>
    where
        F: Fn(usize, &[T]) -> LaneWrites<T> + Sync,
    {
        let mut pending = std::mem::take(&mut self.pending);
        pending.clear();
        let snapshot = &self.cells;
        match self.backend {
            Backend::Sequential => {
                for i in 0..width {
                    pending.extend(lane(i, snapshot));
                }
            }
            Backend::Shuffled(_) => {
                let mut order: Vec<usize> = (0..width).collect();
                order.shuffle(self.rng.as_mut().expect("seeded on construction"));
                for i in order {
                    pending.extend(lane(i, snapshot));
                }
            }
            Backend::Threaded => {
                let per_lane: Vec<LaneWrites<T>> = (0..width).into_par_iter().map(|i| lane(i, snapshot)).collect();
                pending.extend(per_lane.into_iter().flatten());
            }
        }
        let result = self.apply(&pending);
        self.pending = pending;
        result?;
        self.trace.record(width);
        Ok(())
    }

    /// A single-lane step.
    pub fn serial<F>(&mut self, f: F) -> Result<()>
    where
        F: Fn(&[T]) -> LaneWrites<T> + Sync,
    {
        self.pardo(1, |_, cells| f(cells))
    }

    fn apply(&mut self, writes: &[(usize, T)]) -> Result<()> {
        let len = self.cells.len();
        if self.checked {
            self.epoch += 1;
            let stamp = self.epoch;
            for &(cell, _) in writes {
                if cell >= len {
                    return Err(Error::WriteOutOfRange { cell, len });
                }
                if self.stamps[cell] == stamp {
                    return Err(Error::OverlappingWrite { cell });
                }
                self.stamps[cell] = stamp;
            }
        } else if let Some(&(cell, _)) = writes.iter().find(|(c, _)| *c >= len) {
            return Err(Error::WriteOutOfRange { cell, len });
        }
        for &(cell, value) in writes {
            self.cells[cell] = value;
        }
        Ok(())
    }
}

/// Builds a [`LaneWrites`] from up to two `(cell, value)` pairs.
#[macro_export]
macro_rules! writes {
    () => { $crate::pram::LaneWrites::new() };
    ($(($cell:expr, $value:expr)),+ $(,)?) => {{
        let mut w = $crate::pram::LaneWrites::new();
        $( w.push(($cell, $value)); )+
        w
    }};
}

/// One line of bench output: `algorithm beta s steps max_width work`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub algorithm: String,
    pub beta: u32,
    pub s: usize,
    pub trace: ParTrace,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algorithm={} beta={} s={} steps={} max_width={} work={}",
            self.algorithm, self.beta, self.s, self.trace.steps, self.trace.max_width, self.trace.work
        )
    }
}

impl FromStr for TraceRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        const KEYS: [&str; 6] = ["algorithm", "beta", "s", "steps", "max_width", "work"];
        let bad = || Error::InvalidNumeral(format!("malformed trace record: {line:?}"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != KEYS.len() {
            return Err(bad());
        }
        let mut values = Vec::with_capacity(KEYS.len());
        for (field, key) in fields.iter().zip(KEYS) {
            let (k, v) = field.split_once('=').ok_or_else(bad)?;
            if k != key {
                return Err(bad());
            }
            values.push(v);
        }
        let num = |v: &str| v.parse::<u64>().map_err(|_| bad());
        Ok(TraceRecord {
            algorithm: values[0].to_string(),
            beta: num(values[1])? as u32,
            s: num(values[2])? as usize,
            trace: ParTrace { steps: num(values[3])?, max_width: num(values[4])?, work: num(values[5])? },
        })
    }
}

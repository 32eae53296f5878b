//! Closures, kernels and quotients of the divergence, and the stabilization
//! measurements built on them.

mod closure;
mod free;
mod model;
mod spaces;
mod suite;

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub use closure::{Closure, Product};
pub use free::{
    disjoint_trees, necklace_count_check, pointed_trees, special_pointed_generated, special_pointed_trees,
    NecklaceCount,
};
pub use model::{
    contents, div_of, pad, product_sum, split_blocks, trace_keys, ClassicalModel, FreeModel, GenWord, Model, TraceKey,
    Weight,
};
pub use spaces::{
    cokernel, image_div, imderlie, imderliespec, k_o, kernel_div, middle_homology, target_space, Ladder, TraceTarget,
};
pub use suite::{run_suite, DegreeReport, Status, SuiteKind, SuiteParams, SuiteReport};

/// Wall-clock allowance for a long computation.
#[derive(Clone, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { start: Instant::now(), limit: None }
    }

    pub fn millis(ms: u64) -> Self {
        Self { start: Instant::now(), limit: Some(Duration::from_millis(ms)) }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::Budget { budget_ms: l.as_millis() as u64 }),
            _ => Ok(()),
        }
    }
}

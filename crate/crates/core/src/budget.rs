use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Wall-clock deadline threaded through long-running pipelines.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { deadline: None }
    }

    pub fn seconds(secs: f64) -> Self {
        Self {
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs.max(0.0))),
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check(&self, stage: &'static str, done: usize, total: usize) -> Result<()> {
        if self.is_exhausted() {
            Err(Error::BudgetExceeded { stage, done, total })
        } else {
            Ok(())
        }
    }
}

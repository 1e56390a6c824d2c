use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Optional wall-clock deadline polled by the search loops.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit) }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

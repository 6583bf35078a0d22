use rayon::prelude::*;
use rayon::ThreadPool;

use satris_core::simulate::TrialExecutor;

/// Runs trials on a rayon pool. Results come back indexed by trial, so the
/// thread count never changes the numbers.
#[derive(Debug, Default)]
pub struct RayonExecutor {
    pool: Option<ThreadPool>,
}

impl RayonExecutor {
    /// `None` uses the global pool.
    pub fn new(threads: Option<usize>) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = match threads {
            Some(n) => Some(rayon::ThreadPoolBuilder::new().num_threads(n).build()?),
            None => None,
        };
        Ok(Self { pool })
    }
}

impl TrialExecutor for RayonExecutor {
    fn map_trials(&self, trials: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        let run = || (0..trials).into_par_iter().map(f).collect();
        match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        }
    }
}

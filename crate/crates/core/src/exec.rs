//! Data-parallel execution with a sequential fallback.
//!
//! Work is always split into the same ordered list of jobs and results come
//! back in job order, so the worker count never changes an answer. Without the
//! `parallel` feature every mode runs on the calling thread.

/// How independent jobs are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `workers: None` uses the global rayon pool.
    Parallel {
        workers: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { workers: None }
    }
}

impl Execution {
    pub fn with_workers(workers: usize) -> Self {
        if workers <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { workers: Some(workers) }
        }
    }

    /// Maps `f` over `jobs`, returning results in job order.
    pub fn map<J, R, F>(&self, jobs: Vec<J>, f: F) -> Vec<R>
    where
        J: Send,
        R: Send,
        F: Fn(J) -> R + Sync + Send,
    {
        match *self {
            Execution::Sequential => jobs.into_iter().map(f).collect(),
            Execution::Parallel { workers } => parallel_map(jobs, f, workers),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<J, R, F>(jobs: Vec<J>, f: F, workers: Option<usize>) -> Vec<R>
where
    J: Send,
    R: Send,
    F: Fn(J) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || jobs.into_par_iter().map(&f).collect();
    match workers {
        None => run(),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<J, R, F>(jobs: Vec<J>, f: F, _workers: Option<usize>) -> Vec<R>
where
    J: Send,
    R: Send,
    F: Fn(J) -> R + Sync + Send,
{
    jobs.into_iter().map(f).collect()
}

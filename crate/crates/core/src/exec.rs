//! Execution strategy for the data-parallel loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the crate's data-parallel loops are run.
///
/// Results never depend on the choice: work is split into fixed-size
/// units whose random streams and output order are independent of
/// scheduling. Without the `parallel` feature `Parallel` runs
/// sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `(0..n).map(f).collect()`, in index order.
pub(crate) fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Ascending sort by IEEE total order.
pub(crate) fn sort_values(values: &mut [f64], exec: Execution) {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => values.par_sort_unstable_by(f64::total_cmp),
        _ => values.sort_unstable_by(f64::total_cmp),
    }
}

//! Deterministic batch execution.
//!
//! Every helper returns exactly what the sequential loop would: results keep
//! input order and searches report the lowest-index hit. With the `parallel`
//! feature disabled, [`Exec::Parallel`] runs sequentially.

/// How a batch is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn from_flag(parallel: bool) -> Self {
        if parallel {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `items.map(f)` in input order.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// First `(index, value)` in input order for which `f` returns `Some`.
pub fn find_first<T, U, F>(exec: Exec, items: &[T], f: F) -> Option<(usize, U)>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return items
            .par_iter()
            .enumerate()
            .find_map_first(|(i, t)| f(i, t).map(|u| (i, u)));
    }
    let _ = exec;
    items.iter().enumerate().find_map(|(i, t)| f(i, t).map(|u| (i, u)))
}

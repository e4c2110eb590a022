//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the current rayon
//! pool; without it every mode runs sequentially. All helpers are order-preserving,
//! so results never depend on the schedule.

use std::ops::Range;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// First `Some` in index order.
pub fn find_map_first<T, F>(exec: Exec, range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
        _ => range.into_iter().find_map(f),
    }
}

/// `range.map(f).collect()`, preserving order.
pub fn map_collect<T, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.into_iter().map(f).collect(),
    }
}

/// Maps over a slice, preserving order.
pub fn map_slice<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

//! Data-parallel helpers with a sequential fallback.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force sequential execution at runtime even when built with `parallel`.
pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed)
}

/// Below this many items a range is not worth splitting.
#[cfg(feature = "parallel")]
const MIN_SPLIT: usize = 64;

/// Fan out only from outside the pool; work nested in a sweep stays on its
/// worker.
#[cfg(feature = "parallel")]
fn fan_out(n: usize, min: usize) -> bool {
    is_parallel() && n >= min && rayon::current_thread_index().is_none()
}

/// Map over a slice, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if fan_out(items.len(), 2) {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Map over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if fan_out(n, MIN_SPLIT) {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// The result for the smallest index in `0..n` where `f` returns `Some`.
pub fn find_first<R, F>(n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if fan_out(n, MIN_SPLIT) {
        return (0..n).into_par_iter().find_map_first(f);
    }
    (0..n).find_map(f)
}

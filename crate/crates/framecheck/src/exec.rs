//! Index-sweep dispatch: data-parallel via rayon when the `parallel`
//! feature is on, plain loops otherwise.
//!
//! All sweeps in this crate report the match with the smallest index, so
//! outcomes are independent of scheduling.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQ: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel dispatch disabled on the current thread.
/// Benchmarks use this to compare the rayon path against the fallback loop
/// through the same public entry points.
pub fn with_sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQ.with(|c| c.set(true));
    let out = f();
    FORCE_SEQ.with(|c| c.set(false));
    out
}

/// Smallest parallel batch; tiny sweeps stay on the calling thread.
const PAR_THRESHOLD: u64 = 64;

/// First `Some(f(i))` over `0..count` in index order.
pub fn scan_first<R, F>(count: u64, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if count >= PAR_THRESHOLD && !FORCE_SEQ.with(|c| c.get()) {
            use rayon::prelude::*;
            return (0..count).into_par_iter().find_map_first(|i| f(i));
        }
    }
    scan_first_seq(count, f)
}

/// Sequential fallback, also used directly by benchmarks.
pub fn scan_first_seq<R, F>(count: u64, f: F) -> Option<R>
where
    F: Fn(u64) -> Option<R>,
{
    (0..count).find_map(f)
}

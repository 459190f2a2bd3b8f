//! Indexed map helpers. With the default `parallel` feature the work is
//! spread over the rayon pool; without it the same code runs sequentially.
//! Callers that need determinism derive all per-item state from the item
//! index, so the schedule never shows in the results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f` on 0..n, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn run<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluate `f` on 0..n, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn run<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    run_seq(n, f)
}

/// Sequential variant, kept unconditionally so benchmarks can compare the
/// two paths in one build.
pub fn run_seq<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Cap the global worker pool from WARPCURV_THREADS. A no-op when the
/// variable is unset or unparsable, or when the pool already exists.
#[cfg(feature = "parallel")]
pub fn configure_thread_cap_from_env() {
    if let Some(k) = std::env::var("WARPCURV_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k >= 1)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_thread_cap_from_env() {}

#[cfg(test)]
mod tests {
    #[test]
    fn parallel_and_sequential_agree() {
        let a = super::run(100, |i| i * i);
        let b = super::run_seq(100, |i| i * i);
        assert_eq!(a, b);
    }
}

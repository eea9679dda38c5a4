//! Execution helpers for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the batch helpers run on rayon;
//! without it they fall back to plain iterators. Callers pass an explicit
//! `parallel` flag so the two code paths stay benchmarkable side by side;
//! [`parallel_default`] is what library entry points use.

/// True when the crate was built with the `parallel` feature.
pub fn parallel_default() -> bool {
    cfg!(feature = "parallel")
}

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

/// Runs two closures, in parallel when enabled.
pub fn join<A, B, RA, RB>(parallel: bool, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return rayon::join(a, b);
    }
    let _ = parallel;
    (a(), b())
}

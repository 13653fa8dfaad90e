//! Order-preserving map over a slice, on a rayon pool when the `parallel`
//! feature is enabled and sequentially otherwise.

/// `threads == 0` means the rayon default; `threads == 1` always runs on the
/// calling thread.
pub fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if threads != 1 {
            use rayon::prelude::*;
            let run = || items.par_iter().map(&f).collect();
            if threads == 0 {
                return run();
            }
            match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => return pool.install(run),
                Err(_) => return run(),
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    items.iter().map(f).collect()
}

/// Whether this build has the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

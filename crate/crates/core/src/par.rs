//! Order-preserving parallel map, sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// [`map_range`] on a dedicated pool of `jobs` threads when given.
#[cfg(feature = "parallel")]
pub(crate) fn map_range_jobs<T, F>(jobs: Option<usize>, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let pool = jobs.and_then(|j| rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build().ok());
    match pool {
        Some(p) => p.install(|| map_range(n, f)),
        None => map_range(n, f),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range_jobs<T, F>(_jobs: Option<usize>, n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    map_range(n, f)
}

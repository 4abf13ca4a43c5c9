//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) [`map`] runs on the rayon pool; without it, it is
//! [`map_seq`]. Both preserve input order, so results are identical either way.

pub fn map_seq<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        map_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`ExecMode::Parallel`] dispatches to
//! rayon; without it every helper runs sequentially. Results are always
//! collected in index order, so output never depends on the mode.

/// How batch work (APSP sources, DP rows, replications, clusterizations) is run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// `true` when this mode will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Maps `f` over `0..count`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(mode: ExecMode, count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if mode.is_parallel() {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(_mode: ExecMode, count: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..count).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(mode: ExecMode, data: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if mode.is_parallel() {
        data.par_iter().map(f).collect()
    } else {
        data.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(_mode: ExecMode, data: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    data.iter().map(f).collect()
}

/// Calls `f(index, a, b)` on matching elements of two equally long slices.
#[cfg(feature = "parallel")]
pub fn zip_for_each_mut<A, B, F>(mode: ExecMode, a: &mut [A], b: &mut [B], f: F)
where
    A: Send,
    B: Send,
    F: Fn(usize, &mut A, &mut B) + Sync + Send,
{
    use rayon::prelude::*;
    debug_assert_eq!(a.len(), b.len());
    if mode.is_parallel() {
        a.par_iter_mut()
            .zip(b.par_iter_mut())
            .enumerate()
            .for_each(|(i, (x, y))| f(i, x, y));
    } else {
        a.iter_mut()
            .zip(b.iter_mut())
            .enumerate()
            .for_each(|(i, (x, y))| f(i, x, y));
    }
}

#[cfg(not(feature = "parallel"))]
pub fn zip_for_each_mut<A, B, F>(_mode: ExecMode, a: &mut [A], b: &mut [B], f: F)
where
    F: Fn(usize, &mut A, &mut B),
{
    a.iter_mut()
        .zip(b.iter_mut())
        .enumerate()
        .for_each(|(i, (x, y))| f(i, x, y));
}

//! Execution strategy for the data-parallel inner loops.
//!
//! Heavy operations (per-weight certificate slices, per-degree homology blocks,
//! per-arity operator checks) are independent jobs. `Strategy::Parallel` fans them
//! out on the rayon pool; `Strategy::Sequential` runs them in order. Results are
//! always collected in input order, so both strategies produce identical output.
//! Without the `parallel` feature the parallel variant silently degrades to the
//! sequential one.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Parallel,
    Sequential,
}

impl Strategy {
    /// Map `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            Strategy::Parallel => items.into_iter().map(f).collect(),
            Strategy::Sequential => items.into_iter().map(f).collect(),
        }
    }
}

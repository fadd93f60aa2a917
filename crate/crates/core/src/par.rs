//! Data-parallel helpers; with the `parallel` feature disabled every helper
//! runs sequentially and produces the same result.

/// How an engine distributes independent work items.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    /// Maps every item and sums the results in input order.
    pub fn map_sum<T, R, F>(self, items: &[T], zero: R, f: F) -> R
    where
        T: Sync,
        R: Send + Clone + std::ops::Add<Output = R>,
        F: Fn(&T) -> R + Sync + Send,
    {
        let parts = self.map(items, f);
        parts.into_iter().fold(zero, |acc, x| acc + x)
    }

    /// Maps every item, keeping input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Configures the global worker pool; a no-op without the `parallel` feature.
pub fn set_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

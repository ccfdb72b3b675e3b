/// Execution mode for the data-parallel kernels.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and
/// silently runs sequentially otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `items.iter().map(f).collect()`, order preserved.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// `(0..n).map(f).collect()`, order preserved.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Parallel.map(&xs, |x| x * x);
        let b = Exec::Sequential.map(&xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(Exec::Parallel.map_range(10, |i| i + 1), (1..=10).collect::<Vec<_>>());
    }
}

//! Order-preserving map over independent work items, parallel when the
//! `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// `items.map(f)` with output in input order regardless of execution mode.
pub fn map_ordered<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map_ordered(&xs, Execution::Sequential, |x| x * x);
        let dflt = map_ordered(&xs, Execution::default(), |x| x * x);
        assert_eq!(seq, dflt);
        assert_eq!(seq[999], 998001);
    }
}

//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature these run on the rayon pool; without it, or
//! when `parallel` is false at the call site, they run in order. Results are
//! identical either way.

use std::ops::Range;

/// The `f(i)` result for the least `i` in `range` where `f` returns `Some`.
pub fn find_first<T, F>(range: Range<u64>, parallel: bool, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return range.into_par_iter().find_map_first(f);
    }
    let _ = parallel;
    range.into_iter().find_map(f)
}

/// `items.map(f)` preserving order.
pub fn map<I, T, F>(items: &[I], parallel: bool, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_match_is_schedule_independent() {
        for par in [false, true] {
            assert_eq!(find_first(0..10_000, par, |i| (i % 977 == 976).then_some(i)), Some(976));
            assert_eq!(find_first(0..10, par, |_| None::<u64>), None);
        }
    }

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..1000).collect();
        assert_eq!(map(&xs, true, |x| x * 2), map(&xs, false, |x| x * 2));
    }
}

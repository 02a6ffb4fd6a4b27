//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers fan out over rayon's
//! global pool unless [`set_parallel`] turned that off at runtime. Without the
//! feature every helper is a plain iterator loop. Results are always
//! aggregated in index order, so output never depends on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enables or disables parallel execution at runtime.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on, Ordering::Relaxed);
}

/// True when work will actually be spread over threads.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Maps a slice, possibly in parallel.
pub fn map_slice<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Smallest index in `0..n` satisfying `pred`.
pub fn find_first<F>(n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_first(|&k| pred(k));
    }
    (0..n).find(|&k| pred(k))
}

/// Minimum of `key(k)` over `0..n`, ties resolved towards the smaller index.
pub fn min_by_key<K, F>(n: u64, key: F) -> Option<(K, u64)>
where
    K: Ord + Send,
    F: Fn(u64) -> K + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(|k| (key(k), k)).min();
    }
    (0..n).map(|k| (key(k), k)).min()
}

/// Child seed for stream `index` of `master`; splitmix64 finalizer.
pub fn child_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers_agree_in_both_modes() {
        for on in [true, false] {
            set_parallel(on);
            assert_eq!(map_range(5, |k| k * k), vec![0, 1, 4, 9, 16]);
            assert_eq!(find_first(100, |k| k % 7 == 3 && k > 10), Some(17));
            assert_eq!(min_by_key(10, |k| (k as i64 - 4).abs()), Some((0, 4)));
        }
        set_parallel(true);
    }

    #[test]
    fn child_seeds_differ() {
        let a: Vec<u64> = (0..64).map(|i| child_seed(7, i)).collect();
        let mut b = a.clone();
        b.sort_unstable();
        b.dedup();
        assert_eq!(a.len(), b.len());
        assert_ne!(child_seed(7, 0), child_seed(8, 0));
    }
}

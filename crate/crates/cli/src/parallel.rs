//! Deterministic chunked parallelism for exhaustive sweeps.
//!
//! The index range is split into one contiguous chunk per worker and the
//! per-chunk results are folded in chunk order, so the outcome is identical
//! for any thread count.

/// Applies `map` to contiguous subranges of `0..total` on `threads`
/// workers and returns the per-chunk results in range order.
pub fn map_chunks<R, F>(total: u64, threads: usize, map: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64, u64) -> R + Sync,
{
    let threads = threads.clamp(1, 256) as u64;
    let mut ranges = Vec::new();
    let chunk = total.div_ceil(threads).max(1);
    let mut lo = 0;
    while lo < total {
        let hi = (lo + chunk).min(total);
        ranges.push((lo, hi));
        lo = hi;
    }
    if ranges.is_empty() {
        ranges.push((0, 0));
    }
    if ranges.len() == 1 {
        let (lo, hi) = ranges[0];
        return vec![map(lo, hi)];
    }
    let map = &map;
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            ranges.iter().map(|&(lo, hi)| scope.spawn(move || map(lo, hi))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// First `Some` across chunk results in range order.
pub fn first_some<T>(results: Vec<Option<T>>) -> Option<T> {
    results.into_iter().flatten().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_results_arrive_in_range_order() {
        for threads in [1, 2, 3, 8] {
            let sums = map_chunks(100, threads, |lo, hi| (lo..hi).sum::<u64>());
            assert_eq!(sums.iter().sum::<u64>(), 4950, "threads={threads}");
        }
    }

    #[test]
    fn first_some_respects_order() {
        assert_eq!(first_some(vec![None, Some(7), Some(3)]), Some(7));
        assert_eq!(first_some::<u64>(vec![None, None]), None);
    }

    #[test]
    fn empty_range_is_fine() {
        let r = map_chunks(0, 4, |lo, hi| (lo, hi));
        assert_eq!(r, vec![(0, 0)]);
    }
}

//! Scoped worker threads with results returned in input order.

use std::thread;

use cubeiso_core::search::{for_each_in_shard, shard_count, BruteResult, SearchError, Sweep};

/// `f(0), ..., f(n - 1)` computed on up to `jobs` threads. Index `i` runs on
/// thread `i % jobs`, so the output never depends on `jobs`.
pub fn par_map<T: Send>(n: usize, jobs: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let jobs = jobs.clamp(1, n.max(1));
    if jobs == 1 {
        return (0..n).map(&f).collect();
    }
    let f = &f;
    let mut parts: Vec<Vec<(usize, T)>> = thread::scope(|s| {
        let handles: Vec<_> =
            (0..jobs).map(|t| s.spawn(move || (t..n).step_by(jobs).map(|i| (i, f(i))).collect())).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for part in parts.drain(..) {
        for (i, v) in part {
            out[i] = Some(v);
        }
    }
    out.into_iter().map(|v| v.expect("every index computed")).collect()
}

/// Monotone sweep split by first column height across `jobs` threads.
pub fn sweep(dim: usize, res: usize, only: Option<usize>, jobs: usize) -> Result<Vec<BruteResult>, SearchError> {
    let shards = par_map(shard_count(res), jobs, |first| {
        let mut sw = Sweep::new(dim, res, only);
        for_each_in_shard(dim, res, first, |h| sw.absorb(h)).map(|_| sw)
    });
    let mut total = Sweep::new(dim, res, only);
    for sh in shards {
        total = total.merge(sh?);
    }
    Ok(total.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubeiso_core::search::brute_min_all;

    #[test]
    fn order_is_kept() {
        assert_eq!(par_map(10, 3, |i| i * i), (0..10).map(|i| i * i).collect::<Vec<_>>());
        assert!(par_map(0, 4, |i| i).is_empty());
    }

    #[test]
    fn sharded_sweep_matches_the_serial_one() {
        let serial = brute_min_all(3, 3).unwrap();
        let split = sweep(3, 3, None, 3).unwrap();
        assert_eq!(serial, split);
    }
}

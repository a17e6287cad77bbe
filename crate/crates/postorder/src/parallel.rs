//! Bounded parallel map for batches of independent pure computations
//! (pairwise measurement comparisons, mostly). The thread cap comes from
//! the `POSTORDER_THREADS` environment variable and defaults to 1
//! (sequential). Each result is written into its own index slot, so the
//! output vector is identical regardless of scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Maximum number of worker threads, from `POSTORDER_THREADS` (≥ 1).
pub fn thread_cap() -> usize {
    std::env::var("POSTORDER_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Applies `f` to 0..n, fanning out over at most `thread_cap()` threads.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let cap = thread_cap().min(n.max(1));
    if cap <= 1 {
        return (0..n).map(f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..cap {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let value = f(i);
                *slots[i].lock().expect("result slot poisoned") = Some(value);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| {
            m.into_inner()
                .expect("result slot poisoned")
                .expect("worker skipped an index")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let sequential: Vec<usize> = (0..100).map(|i| i * i).collect();
        assert_eq!(map_indexed(100, |i| i * i), sequential);
    }

    #[test]
    fn cap_defaults_to_one() {
        // The test environment does not set POSTORDER_THREADS.
        if std::env::var("POSTORDER_THREADS").is_err() {
            assert_eq!(thread_cap(), 1);
        }
    }
}

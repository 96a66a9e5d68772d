//! A thread-pool-free executor for exploration waves.

use std::num::NonZeroUsize;
use std::thread;

use silt_core::explorer::WaveExecutor;

/// Splits each wave into contiguous chunks, one per worker, and
/// concatenates the results in input order.
#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
        }
    }

    pub fn available() -> Self {
        Self::new(thread::available_parallelism().map_or(1, NonZeroUsize::get))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl WaveExecutor for Threaded {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync,
    {
        if self.workers == 1 || items.len() < 2 {
            return items.iter().map(f).collect();
        }
        let chunk = items.len().div_ceil(self.workers);
        let f = &f;
        thread::scope(|s| {
            let handles: Vec<_> = items
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    }
}

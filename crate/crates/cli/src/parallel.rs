//! Scoped-thread helpers: an order-preserving parallel map and the
//! multi-worker sampler.

use std::thread;

use quatfield::sampler::{merge, run_worker, SampleRun, SamplerConfig};

/// `items.map(f)` on up to `workers` threads, results in input order.
pub fn par_map<T, R, F>(workers: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let workers = workers.clamp(1, items.len().max(1));
    if workers == 1 {
        return items.into_iter().map(f).collect();
    }
    let mut chunks: Vec<Vec<T>> = (0..workers).map(|_| Vec::new()).collect();
    let len = items.len();
    let per = len.div_ceil(workers);
    for (i, item) in items.into_iter().enumerate() {
        chunks[i / per].push(item);
    }
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| s.spawn(move || c.into_iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Runs each sampler worker on its own thread and merges in worker order.
/// The result equals [`quatfield::sampler::rejection_sample`].
pub fn sample_parallel(cfg: &SamplerConfig) -> quatfield::Result<SampleRun> {
    cfg.validate()?;
    let outputs = thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.workers)
            .map(|w| s.spawn(move || run_worker(cfg, w)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampler thread panicked"))
            .collect::<quatfield::Result<Vec<_>>>()
    })?;
    Ok(merge(cfg, outputs))
}

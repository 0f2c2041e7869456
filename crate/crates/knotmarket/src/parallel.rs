//! State sums split across threads.

use std::num::NonZeroUsize;
use std::thread;

use knotmarket_core::invariants::{
    bracket_state_counts, jones_from_bracket, kauffman_bracket, state_count, InvariantError, Limits,
};
use knotmarket_core::link::LinkDiagram;
use knotmarket_core::LaurentPoly;

// below this many states a single thread is faster
const SERIAL_STATES: u64 = 1 << 12;

pub fn worker_count() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Same value as the serial bracket; the state range is cut into one
/// contiguous slice per worker and the histograms summed.
pub fn kauffman_bracket_parallel(d: &LinkDiagram, limits: &Limits, workers: usize) -> Result<LaurentPoly, InvariantError> {
    let total = state_count(d, limits)?;
    let workers = workers.max(1) as u64;
    if total < SERIAL_STATES || workers == 1 {
        return kauffman_bracket(d, limits);
    }
    let chunk = total.div_ceil(workers);
    let parts = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let range = k * chunk..((k + 1) * chunk).min(total);
                s.spawn(move || bracket_state_counts(d, range, limits))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("state-sum worker panicked")).collect::<Vec<_>>()
    });
    let mut parts = parts.into_iter();
    let mut acc = parts.next().expect("at least one worker")?;
    for p in parts {
        acc.merge(&p?);
    }
    Ok(acc.into_bracket())
}

pub fn jones_parallel(d: &LinkDiagram, limits: &Limits, workers: usize) -> Result<LaurentPoly, InvariantError> {
    jones_from_bracket(&kauffman_bracket_parallel(d, limits, workers)?, d.writhe())
}

//! Lattice-point counting split over the outermost kernel coordinate.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use gramcode_core::lattice::{count_points_in, parametrize, LatticeSystem};
use gramcode_core::{Limits, Result};

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Same result as `count_points`; the node budget applies to each slice.
pub fn count_parallel(system: &LatticeSystem, limits: &Limits, threads: usize) -> Result<u128> {
    let param = parametrize(system)?;
    let Some(range) = param.outer_range() else {
        return Ok(0);
    };
    let (lo, hi) = (*range.start(), *range.end());
    if hi < lo {
        return Ok(0);
    }
    let threads = threads.max(1);
    let slices = ((hi - lo + 1) as usize).min(threads * 16);
    let width = (hi - lo + 1) / slices as i64;
    let extra = (hi - lo + 1) % slices as i64;
    let bounds: Vec<(i64, i64)> = (0..slices as i64)
        .map(|i| {
            let start = lo + i * width + i.min(extra);
            let end = start + width - 1 + i64::from(i < extra);
            (start, end)
        })
        .collect();
    let next = AtomicUsize::new(0);
    let total = Mutex::new(Ok(0u128));
    std::thread::scope(|scope| {
        for _ in 0..threads.min(slices) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(a, b)) = bounds.get(i) else { break };
                let part = count_points_in(&param, a..=b, limits);
                let mut guard = total.lock().expect("count lock");
                *guard = match (guard.clone(), part) {
                    (Ok(x), Ok(y)) => Ok(x + y),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                };
                if guard.is_err() {
                    next.store(bounds.len(), Ordering::Relaxed);
                    break;
                }
            });
        }
    });
    total.into_inner().expect("count lock")
}

#[cfg(test)]
mod tests {
    use super::*;
    use gramcode_core::gram::GramSet;
    use gramcode_core::lattice::{build_system, count_points, Strictness, Variant};

    #[test]
    fn agrees_with_sequential_counts() {
        let limits = Limits::default();
        let set = GramSet::full(2, 3).unwrap();
        for t in [0, 1, 5, 24, 37] {
            for s in [Strictness::Boundary, Strictness::Interior] {
                let sys = build_system(&set, &Variant::Plain, t, s).unwrap();
                assert_eq!(count_parallel(&sys, &limits, 4).unwrap(), count_points(&sys, &limits).unwrap());
            }
        }
    }
}

//! Parallel sweep driver.
//!
//! The applicable (check, prime) pairs are laid out in canonical order first;
//! workers take every w-th pair and results land back in their canonical
//! slots, so output bytes are independent of the worker count. Each worker
//! owns its own `SequenceCache` — memo tables are cheap to rebuild relative
//! to the sweeps and sharing them would serialize everything behind a lock.

use clf_core::congruence::{verify, CongruenceCheck, VerificationReport, VerifyError};
use clf_core::sequences::SequenceCache;

use crate::cache_file::CacheSeed;

type RowResult = Result<VerificationReport, VerifyError>;

pub fn run_verify(
    checks: &[&'static CongruenceCheck],
    primes: &[u64],
    workers: usize,
    seed: Option<&CacheSeed>,
) -> Vec<RowResult> {
    let schedule = clf_core::congruence::schedule(checks, primes);
    let total = schedule.len();
    let workers = workers.max(1).min(total.max(1));

    if workers <= 1 {
        let cache = seeded_cache(seed);
        return schedule
            .into_iter()
            .map(|(check, p)| verify(&cache, check, p))
            .collect();
    }

    let mut slots: Vec<Option<RowResult>> = Vec::new();
    slots.resize_with(total, || None);
    std::thread::scope(|scope| {
        let schedule = &schedule;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let cache = seeded_cache(seed);
                    schedule
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, (check, p))| (i, verify(&cache, check, *p)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, row) in handle.join().expect("sweep worker panicked") {
                slots[i] = Some(row);
            }
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every scheduled pair produces a row"))
        .collect()
}

fn seeded_cache(seed: Option<&CacheSeed>) -> SequenceCache {
    let cache = SequenceCache::new();
    if let Some(seed) = seed {
        cache
            .adopt_bernoulli(&seed.bernoulli, &[])
            .expect("seed tables were validated at load");
        cache
            .adopt_euler(&seed.euler, &[])
            .expect("seed tables were validated at load");
    }
    cache
}

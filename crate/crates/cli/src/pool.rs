//! A minimal deterministic worker pool.
//!
//! Work units are indexed; worker `w` takes units w, w + workers, ... and
//! every result lands in the slot of its unit index, so the assembled output
//! is identical for any worker count.

use std::sync::Mutex;

/// Evaluate `f(0..units)` across `workers` threads, results in unit order.
pub fn run_indexed<T, F>(units: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1).min(units.max(1));
    if workers <= 1 {
        return (0..units).map(f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = (0..units).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for w in 0..workers {
            let f = &f;
            let slots = &slots;
            scope.spawn(move || {
                let mut unit = w;
                while unit < units {
                    let value = f(unit);
                    *slots[unit].lock().expect("slot lock") = Some(value);
                    unit += workers;
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot lock").expect("slot filled"))
        .collect()
}

/// Worker count from the environment when the flag is absent.
pub fn workers_from_env() -> usize {
    std::env::var("QTHERMO_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

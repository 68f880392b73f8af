//! Process-wide cache of per-modulus Lucas evaluators.
//!
//! Each modulus gets its tables built exactly once, even under concurrent
//! first use; later lookups only clone an `Arc`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use lucaskit_core::lucas::BinomModP;
use lucaskit_core::PrimeModulus;

type Slot = Arc<OnceLock<BinomModP>>;

fn slots() -> &'static Mutex<HashMap<PrimeModulus, Slot>> {
    static SLOTS: OnceLock<Mutex<HashMap<PrimeModulus, Slot>>> = OnceLock::new();
    SLOTS.get_or_init(Default::default)
}

/// Shared evaluator for `p`, building its tables on first use.
pub fn evaluator(p: PrimeModulus) -> Arc<OnceLock<BinomModP>> {
    let slot = {
        let mut map = slots().lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(map.entry(p).or_default())
    };
    // Table construction happens outside the map lock.
    slot.get_or_init(|| BinomModP::new(p));
    slot
}

/// Runs `f` against the cached evaluator for `p`.
pub fn with_evaluator<R>(p: PrimeModulus, f: impl FnOnce(&BinomModP) -> R) -> R {
    let slot = evaluator(p);
    f(slot.get().expect("initialized by evaluator()"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_slot_across_threads() {
        let p = PrimeModulus::new(65_537).unwrap();
        let slots: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8).map(|_| s.spawn(|| evaluator(p))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for slot in &slots[1..] {
            assert!(Arc::ptr_eq(&slots[0], slot));
        }
        assert_eq!(with_evaluator(p, |ev| ev.binom_u64(65_538, 1).value()), 1);
    }
}

//! Multi-threaded sweeps with reports identical to the sequential runner.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use lucaskit_core::verify::{LemmaId, LemmaReport, SuiteRunner, SweepConfig, UnitOutcome};
use lucaskit_core::Result;

/// Units handed to a worker per grab.
const CHUNK: usize = 8;

/// Like [`lucaskit_core::verify::run_suite`], fanning each lemma's units
/// across `cfg.parallelism` threads.
pub fn run_suite(cfg: SweepConfig, selection: &[LemmaId]) -> Result<Vec<LemmaReport>> {
    let jobs = cfg.parallelism.max(1);
    let runner = SuiteRunner::new(cfg, selection)?;
    runner
        .selection()
        .iter()
        .map(|&lemma| run_lemma(&runner, lemma, jobs))
        .collect()
}

pub fn run_lemma(runner: &SuiteRunner, lemma: LemmaId, jobs: usize) -> Result<LemmaReport> {
    if jobs <= 1 {
        return runner.run_lemma(lemma);
    }
    let units: Vec<u64> = runner.units(lemma).collect();
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, UnitOutcome)> = thread::scope(|s| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let start = next.fetch_add(CHUNK, Ordering::Relaxed);
                        if start >= units.len() {
                            break local;
                        }
                        for (j, &u) in units.iter().enumerate().skip(start).take(CHUNK) {
                            local.push((j, runner.run_unit(lemma, u)));
                        }
                    }
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("sweep worker panicked"))
            .collect()
    });
    done.sort_unstable_by_key(|(j, _)| *j);
    runner.finish(lemma, done.into_iter().map(|(_, o)| o))
}

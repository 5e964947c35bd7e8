//! Multi-threaded fuse: the `k − 1` contracted minimum norm bases of a level
//! are independent, so they are spread over scoped worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use infoclust_core::min_norm::{min_norm_base, MinNormBase};
use infoclust_core::psp::{self, FuseOutcome, Interrupted, PspResult, StopRule};
use infoclust_core::set_function::contracted;
use infoclust_core::{Partition, Result, SetFunction};

/// Like [`psp::fuse`], computing the bases on up to `threads` threads.
pub fn fuse<F: SetFunction + Sync + ?Sized>(h: &F, partition: &Partition, tol: f64, threads: usize) -> Result<FuseOutcome> {
    let anchors = partition.len().saturating_sub(1);
    let workers = threads.clamp(1, anchors.max(1));
    if workers == 1 {
        return psp::fuse(h, partition, tol);
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<MinNormBase>>>> = Mutex::new(vec![None; anchors]);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                if j >= anchors {
                    break;
                }
                let base = contracted(h, partition, j).and_then(|g| min_norm_base(&g, tol));
                slots.lock().expect("worker panicked")[j] = Some(base);
            });
        }
    });
    let bases = slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|slot| slot.expect("every anchor is computed"))
        .collect::<Result<Vec<_>>>()?;
    psp::fuse_with_bases(partition, bases, tol)
}

/// [`psp::agglomerate_with`] using the multi-threaded fuse step.
pub fn agglomerate<F: SetFunction + Sync + ?Sized>(
    h: &F,
    tol: f64,
    stop: StopRule,
    threads: usize,
) -> std::result::Result<PspResult, Interrupted> {
    psp::agglomerate_with(h, tol, stop, |h, p| fuse(h, p, tol, threads))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_bits;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn threads_do_not_change_the_result() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 5, 9] {
            let h = random_bits(&mut rng, n, 7).unwrap();
            let serial = psp::agglomerate(&h, 1e-9).unwrap();
            for threads in [1, 2, 4] {
                assert_eq!(agglomerate(&h, 1e-9, StopRule::default(), threads).unwrap(), serial);
            }
        }
    }
}

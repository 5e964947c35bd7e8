//! Seeded random sources for validation runs.

use std::collections::HashMap;

use infoclust_core::entropy::EntropyOracle;
use infoclust_core::{Result, Subset};
use rand::Rng;

/// `n` variables, each carrying a random non-empty subset of `pool` shared uniform bits.
pub fn random_bits<R: Rng>(rng: &mut R, n: usize, pool: usize) -> Result<EntropyOracle> {
    let vars = (0..n)
        .map(|_| loop {
            let s: Subset = (0..pool).filter(|_| rng.gen_bool(0.4)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    EntropyOracle::bits(vars)
}

/// A random joint pmf over `n` variables with `alphabet` symbols each, some cells zeroed.
/// Cell `c` lists variable `i`'s symbol as digit `i` of `c` in base `alphabet`.
pub fn random_pmf<R: Rng>(rng: &mut R, n: usize, alphabet: usize) -> Vec<f64> {
    let cells = alphabet.pow(n as u32);
    let mut p: Vec<f64> = (0..cells)
        .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen::<f64>() })
        .collect();
    if p.iter().all(|&v| v == 0.0) {
        p[0] = 1.0;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    p
}

/// Mask-indexed table of marginal entropies (bits) of a pmf laid out as in [`random_pmf`].
pub fn pmf_entropies(p: &[f64], n: usize, alphabet: usize) -> Vec<f64> {
    let mut values = vec![0.0; 1 << n];
    for (mask, value) in values.iter_mut().enumerate().skip(1) {
        let mut marginal: HashMap<usize, f64> = HashMap::new();
        for (cell, &pc) in p.iter().enumerate() {
            let mut key = 0;
            let mut rest = cell;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    key = key * alphabet + rest % alphabet;
                }
                rest /= alphabet;
            }
            *marginal.entry(key).or_default() += pc;
        }
        *value = marginal.values().filter(|&&q| q > 0.0).map(|&q| -q * q.log2()).sum();
    }
    values
}

pub fn random_pmf_source<R: Rng>(rng: &mut R, n: usize, alphabet: usize, tol: f64) -> Result<EntropyOracle> {
    let p = random_pmf(rng, n, alphabet);
    EntropyOracle::table(pmf_entropies(&p, n, alphabet), true, tol)
}

#![allow(dead_code)]

use infoclust_core::entropy::EntropyOracle;
use infoclust_core::Subset;
use rand::Rng;

pub fn set(elems: &[usize]) -> Subset {
    elems.iter().copied().collect()
}

/// 1-based element lists to a 0-based subset.
pub fn set1(elems: &[usize]) -> Subset {
    elems.iter().map(|e| e - 1).collect()
}

/// The running six-variable example: Z1 = Z2 = (a, d), Z3 = a, Z4 = Z5 = b, Z6 = c.
pub fn motivating() -> EntropyOracle {
    let (a, b, c, d) = (0, 1, 2, 3);
    EntropyOracle::bits(vec![set(&[a, d]), set(&[a, d]), set(&[a]), set(&[b]), set(&[b]), set(&[c])])
        .unwrap()
}

/// Each variable carries a random non-empty subset of a small pool of bits.
pub fn random_bits<R: Rng>(rng: &mut R, n: usize, pool: usize) -> EntropyOracle {
    let vars = (0..n)
        .map(|_| loop {
            let s: Subset = (0..pool).filter(|_| rng.gen_bool(0.35)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    EntropyOracle::bits(vars).unwrap()
}

/// Entropy table of a random joint pmf over `n` variables with `alphabet` symbols each.
pub fn random_pmf<R: Rng>(rng: &mut R, n: usize, alphabet: usize) -> EntropyOracle {
    let cells = alphabet.pow(n as u32);
    let mut p: Vec<f64> = (0..cells)
        .map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen::<f64>() })
        .collect();
    if p.iter().all(|&v| v == 0.0) {
        p[0] = 1.0;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    let mut values = vec![0.0; 1 << n];
    for (mask, value) in values.iter_mut().enumerate().skip(1) {
        let mut marginal = std::collections::HashMap::new();
        for (cell, &pc) in p.iter().enumerate() {
            let mut key = 0usize;
            let mut rest = cell;
            for i in 0..n {
                let sym = rest % alphabet;
                rest /= alphabet;
                if mask >> i & 1 == 1 {
                    key = key * alphabet + sym;
                }
            }
            *marginal.entry(key).or_insert(0.0) += pc;
        }
        *value = marginal.values().filter(|&&q| q > 0.0).map(|&q| -q * q.log2()).sum();
    }
    EntropyOracle::table(values, true, 1e-9).unwrap()
}

pub fn random_gaussian<R: Rng>(rng: &mut R, n: usize) -> EntropyOracle {
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let cov: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: f64 = (0..n).map(|k| a[i][k] * a[j][k]).sum();
                    dot + if i == j { 0.2 } else { 0.0 }
                })
                .collect()
        })
        .collect();
    EntropyOracle::gaussian(&cov).unwrap()
}

pub fn random_samples<R: Rng>(rng: &mut R, n: usize, rows: usize) -> EntropyOracle {
    let data: Vec<Vec<u32>> = (0..rows)
        .map(|_| {
            let shared = rng.gen_range(0..3u32);
            (0..n)
                .map(|_| if rng.gen_bool(0.6) { shared } else { rng.gen_range(0..3u32) })
                .collect()
        })
        .collect();
    EntropyOracle::samples(&data).unwrap()
}

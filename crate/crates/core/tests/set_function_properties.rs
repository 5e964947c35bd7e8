//! Structural properties of entropy oracles and the functions derived from them.

mod common;

use common::{random_bits, random_gaussian, random_pmf, random_samples, set};
use infoclust_core::entropy::{EntropyOracle, SourceKind};
use infoclust_core::min_norm::greedy_vertex;
use infoclust_core::set_function::{check_submodular, contracted, is_monotone, partition_cost, Fused, Residual};
use infoclust_core::{Error, Partition, SetFunction, Subset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn source(kind: u8, seed: u64, n: usize) -> EntropyOracle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind % 4 {
        0 => random_bits(&mut rng, n, 6),
        1 => random_pmf(&mut rng, n.min(7), 2),
        2 => random_gaussian(&mut rng, n),
        _ => random_samples(&mut rng, n, 30),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entropy_is_submodular(kind in 0u8..4, seed in any::<u64>(), n in 1usize..=10) {
        let h = source(kind, seed, n);
        prop_assert_eq!(h.value(&Subset::empty()), 0.0);
        prop_assert_eq!(check_submodular(&h, TOL).unwrap(), None);
        if h.is_entropic() {
            prop_assert!(is_monotone(&h, TOL).unwrap());
        }
    }

    #[test]
    fn contractions_and_fusions_stay_submodular(seed in any::<u64>(), n in 3usize..=8, labels in prop::collection::vec(0usize..3, 8)) {
        let h = source(seed as u8, seed, n);
        let n = h.ground_size();
        let p = Partition::from_labels(&labels[..n]);
        let fused = Fused::new(&h, &p).unwrap();
        prop_assert_eq!(check_submodular(&fused, TOL).unwrap(), None);
        if p.len() > 1 {
            let g = contracted(&h, &p, 0).unwrap();
            prop_assert_eq!(g.value(&Subset::empty()), 0.0);
            prop_assert_eq!(check_submodular(&g, TOL).unwrap(), None);
        }
    }

    #[test]
    fn greedy_vertex_telescopes(kind in 0u8..4, seed in any::<u64>(), n in 1usize..=8, rot in any::<usize>()) {
        let h = source(kind, seed, n);
        let n = h.ground_size();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(rot % n);
        let x = greedy_vertex(&h, &order);
        let mut prefix = Subset::empty();
        let mut running = 0.0;
        for &i in &order {
            prefix.insert(i);
            running += x[i];
            prop_assert!((running - h.value(&prefix)).abs() <= 1e-9);
        }
    }

    #[test]
    fn residual_singletons_cost_total_minus_n_gamma(kind in 0u8..4, seed in any::<u64>(), n in 1usize..=8, gamma in -3.0f64..3.0) {
        let h = source(kind, seed, n);
        let n = h.ground_size();
        let singles: f64 = (0..n).map(|i| h.value(&Subset::singleton(i))).sum();
        let r = Residual::new(&h, gamma);
        let cost = r.partition_cost(&Partition::singletons(n));
        prop_assert!((cost - (singles - n as f64 * gamma)).abs() <= 1e-9);
        prop_assert!((cost - partition_cost(&h, &Partition::singletons(n), gamma)).abs() <= 1e-12);
        let whole = r.partition_cost(&Partition::trivial(n));
        prop_assert!((whole - (h.value(&Subset::full(n)) - gamma)).abs() <= 1e-12);
    }

    #[test]
    fn bit_sources_are_integer_valued(seed in any::<u64>(), n in 1usize..=10) {
        let h = source(0, seed, n);
        prop_assert_eq!(h.kind(), SourceKind::Bits);
        for mask in 0..1u64 << n {
            let v = h.value(&Subset::from_mask(mask));
            prop_assert_eq!(v, v.round());
        }
    }
}

#[test]
fn rejects_malformed_sources() {
    let not_pd = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
    assert!(matches!(EntropyOracle::gaussian(&not_pd), Err(Error::InvalidSource(_))));
    let ragged = vec![vec![0, 1], vec![0]];
    assert!(matches!(EntropyOracle::samples(&ragged), Err(Error::InvalidSource(_))));
    // h({0}) + h({1}) < h({0,1}) is not submodular
    assert!(matches!(EntropyOracle::table(vec![0.0, 1.0, 1.0, 3.0], false, TOL), Err(Error::InvalidSource(_))));
    assert!(EntropyOracle::table(vec![0.5, 1.0, 1.0, 1.5], false, TOL).is_err());
    // submodular but decreasing: accepted only as a non-entropic table
    let values = vec![0.0, 1.0, 1.0, 0.5];
    assert!(EntropyOracle::table(values.clone(), true, TOL).is_err());
    assert!(EntropyOracle::table(values, false, TOL).is_ok());
}

#[test]
fn evaluation_outside_the_ground_set_fails() {
    let h = EntropyOracle::bits(vec![set(&[0]), set(&[1])]).unwrap();
    assert!(matches!(h.eval(&set(&[2])), Err(Error::Domain(_))));
    assert_eq!(h.eval(&set(&[0, 1])).unwrap(), 2.0);
}

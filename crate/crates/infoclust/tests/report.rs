use infoclust::generate::{random_bits, random_pmf_source};
use infoclust::report::Report;
use infoclust_core::entropy::{EntropyOracle, SourceKind};
use infoclust_core::psp::{agglomerate, agglomerate_with, fuse, StopRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> EntropyOracle {
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let cov: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * a[j][k]).sum::<f64>() + if i == j { 0.1 } else { 0.0 }).collect())
        .collect();
    EntropyOracle::gaussian(&cov).unwrap()
}

#[test]
fn reports_round_trip_on_random_sources() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..60 {
        let n = rng.gen_range(2..=9);
        let h = match i % 3 {
            0 => random_bits(&mut rng, n, 8).unwrap(),
            1 => random_pmf_source(&mut rng, n.min(6), 3, 1e-9).unwrap(),
            _ => gaussian(&mut rng, n),
        };
        let psp = agglomerate(&h, 1e-9).unwrap();
        let json = Report::new(&psp, h.kind(), None).to_json();
        assert_eq!(Report::from_json(&json).unwrap().to_json(), json);
    }
}

#[test]
fn dendrogram_edges_match_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(2..=10);
        let h = random_bits(&mut rng, n, 6).unwrap();
        let report = Report::new(&agglomerate(&h, 1e-9).unwrap(), SourceKind::Bits, None);
        let d = &report.dendrogram;
        let edges: usize = d.nodes.iter().map(|node| node.children.len()).sum();
        assert_eq!(d.roots.len(), 1);
        assert_eq!(edges, d.nodes.len() - 1);
        // ids are 1-based and leaves come first
        assert!(d.nodes.iter().enumerate().all(|(i, node)| node.id == i + 1));
        assert!(d.nodes[..h.ground_size()].iter().all(|node| node.gamma.is_none()));
    }
}

#[test]
fn truncated_runs_are_flagged() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = random_bits(&mut rng, 7, 5).unwrap();
    let stop = StopRule { max_blocks: Some(4), gamma_floor: None };
    let psp = agglomerate_with(&h, 1e-9, stop, |h, p| fuse(h, p, 1e-9)).unwrap();
    let report = Report::new(&psp, SourceKind::Bits, None);
    assert!(report.partitions[0].len() <= 4);
    assert_eq!(report.complete, report.partitions[0].len() == 1);
    assert!(report.to_text().contains("γ"));
}

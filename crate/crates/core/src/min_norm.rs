//! Minimum norm base of a submodular function by Wolfe's minimum norm point
//! algorithm over the base polytope, and the principal sequence it encodes.
//!
//! For a normalized submodular `f` on `U`, the base polytope is
//! `B(f) = {x : x(A) ≤ f(A) ∀A ⊆ U, x(U) = f(U)}`. Its minimum Euclidean norm
//! point `x*` is unique, and `S_λ = {i : x*_i ≤ λ}` is the inclusion-wise
//! maximal minimizer of `A ↦ f(A) − λ|A|` for every `λ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::least_squares;
use crate::set_function::SetFunction;
use crate::subset::Subset;
use crate::{Error, Result};

/// Affine coefficients at or below this are dropped from the corral.
const DROP_COEFFICIENT: f64 = 1e-12;

/// Vertex of `B(f)` maximizing `⟨w, x⟩` for any `w` decreasing along `order`:
/// `x_{order[t]} = f(order[..=t]) − f(order[..t])`.
pub fn greedy_vertex<F: SetFunction + ?Sized>(f: &F, order: &[usize]) -> Vec<f64> {
    let mut x = vec![0.0; f.ground_size()];
    let mut prefix = Subset::empty();
    let mut prev = f.value(&prefix);
    for &i in order {
        prefix.insert(i);
        let v = f.value(&prefix);
        x[i] = v - prev;
        prev = v;
    }
    x
}

/// Element ids sorted by ascending `x`, ties broken by ascending id.
pub fn ascending_order(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    order
}

/// Output of [`min_norm_base`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinNormBase {
    pub x: Vec<f64>,
    /// Wolfe's duality gap `⟨x, x − q⟩` against the greedy vertex `q` for `x` at termination.
    pub gap: f64,
    pub major_cycles: usize,
    pub minor_cycles: usize,
}

impl MinNormBase {
    pub fn norm_squared(&self) -> f64 {
        dot(&self.x, &self.x)
    }

    pub fn principal_sequence(&self, tol: f64) -> PrincipalSequence {
        PrincipalSequence::new(self.x.clone(), tol)
    }
}

/// Minimum norm base of `f`, starting Wolfe's method from the greedy vertex
/// of the identity order.
pub fn min_norm_base<F: SetFunction + ?Sized>(f: &F, tol: f64) -> Result<MinNormBase> {
    let order: Vec<usize> = (0..f.ground_size()).collect();
    min_norm_base_from(f, tol, &order)
}

/// Minimum norm base of `f`, starting from the greedy vertex of `initial_order`.
///
/// Terminates once `⟨x, x − q⟩ ≤ tol·(1 + ‖x‖²)` where `q` is the greedy vertex
/// for `x` sorted ascending. Gives up after `100·n²` major cycles.
pub fn min_norm_base_from<F: SetFunction + ?Sized>(
    f: &F,
    tol: f64,
    initial_order: &[usize],
) -> Result<MinNormBase> {
    let n = f.ground_size();
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if initial_order.len() != n {
        return Err(Error::Domain("initial order must list every element once".into()));
    }
    if n == 0 {
        return Ok(MinNormBase { x: Vec::new(), gap: 0.0, major_cycles: 0, minor_cycles: 0 });
    }

    let max_major = 100 * n * n;
    let mut corral: Vec<Vec<f64>> = vec![greedy_vertex(f, initial_order)];
    let mut weights: Vec<f64> = vec![1.0];
    let mut x = corral[0].clone();
    let mut minor_cycles = 0;
    let mut gap = f64::INFINITY;

    for major in 0..max_major {
        let q = greedy_vertex(f, &ascending_order(&x));
        let xx = dot(&x, &x);
        gap = xx - dot(&x, &q);
        if gap <= tol * (1.0 + xx) {
            return Ok(MinNormBase { x, gap, major_cycles: major, minor_cycles });
        }
        if corral.iter().any(|p| same_point(p, &q)) {
            // x is not the affine minimizer of its corral to working precision
            return Err(Error::Convergence { major_cycles: major, gap, best: x });
        }
        corral.push(q);
        weights.push(0.0);

        loop {
            minor_cycles += 1;
            let alpha = affine_minimizer(&corral);
            if alpha.iter().all(|&a| a > DROP_COEFFICIENT) {
                weights = alpha;
                break;
            }
            // step from the current weights towards alpha until a weight vanishes
            let mut theta = 1.0;
            for (&w, &a) in weights.iter().zip(&alpha) {
                if a <= DROP_COEFFICIENT && w - a > 0.0 {
                    theta = f64::min(theta, w / (w - a));
                }
            }
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let before = corral.len();
            let mut kept_points = Vec::with_capacity(before);
            let mut kept_weights = Vec::with_capacity(before);
            for (p, w) in corral.drain(..).zip(weights.drain(..)) {
                if w > DROP_COEFFICIENT {
                    kept_points.push(p);
                    kept_weights.push(w);
                }
            }
            if kept_points.is_empty() {
                break;
            }
            let total: f64 = kept_weights.iter().sum();
            kept_weights.iter_mut().for_each(|w| *w /= total);
            corral = kept_points;
            weights = kept_weights;
            if corral.len() == 1 {
                weights = vec![1.0];
                break;
            }
        }
        x = combine(&corral, &weights);
    }

    Err(Error::Convergence { major_cycles: max_major, gap, best: x })
}

/// Coefficients (summing to one) of the minimum norm point in the affine hull of `points`.
fn affine_minimizer(points: &[Vec<f64>]) -> Vec<f64> {
    let base = &points[0];
    let cols: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mu = least_squares(&cols, base, 1e-12);
    let mut alpha = Vec::with_capacity(points.len());
    alpha.push(1.0 - mu.iter().sum::<f64>());
    alpha.extend(mu);
    alpha
}

fn combine(points: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (p, &w) in points.iter().zip(weights) {
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi += w * pi;
        }
    }
    x
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(p, q)| (p - q).abs() <= 1e-12 * (1.0 + p.abs().max(q.abs())))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// The nested family `S_λ = {i : x*_i ≤ λ}` read off a minimum norm base.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSequence {
    x: Vec<f64>,
    breakpoints: Vec<f64>,
    tol: f64,
}

impl PrincipalSequence {
    /// Values of `x` closer than `tol` are treated as one breakpoint, represented by the largest.
    pub fn new(x: Vec<f64>, tol: f64) -> Self {
        let mut sorted = x.clone();
        sorted.sort_by(f64::total_cmp);
        let mut breakpoints: Vec<f64> = Vec::new();
        for v in sorted {
            match breakpoints.last_mut() {
                Some(last) if v - *last <= tol => *last = v,
                _ => breakpoints.push(v),
            }
        }
        PrincipalSequence { x, breakpoints, tol }
    }

    pub fn base(&self) -> &[f64] {
        &self.x
    }

    /// Strictly increasing values of `λ` at which `S_λ` grows.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `S_λ`; a `λ` within `tol` of a breakpoint resolves to the larger set.
    pub fn set_at(&self, lambda: f64) -> Subset {
        self.x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v <= lambda + self.tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// `(λ, S_λ)` at every breakpoint, increasing in both.
    pub fn chain(&self) -> Vec<(f64, Subset)> {
        self.breakpoints.iter().map(|&b| (b, self.set_at(b))).collect()
    }
}

/// The inclusion-wise maximal minimizer of `A ↦ f(A) − λ|A|`.
pub fn sfm_maximal_minimizer<F: SetFunction + ?Sized>(f: &F, lambda: f64, tol: f64) -> Result<Subset> {
    let base = min_norm_base(f, tol)?;
    Ok(base.principal_sequence(tol).set_at(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_function::{Modular, TableFunction};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(p, q)| (p - q).abs() <= tol)
    }

    #[test]
    fn modular_base_is_the_weights() {
        let w = vec![0.5, -1.0, 2.0, 0.0];
        let f = Modular::new(w.clone());
        assert!(close(&greedy_vertex(&f, &[3, 1, 0, 2]), &w, 0.0));
        let base = min_norm_base(&f, 1e-9).unwrap();
        assert!(close(&base.x, &w, 1e-12));
        assert_eq!(sfm_maximal_minimizer(&f, 0.0, 1e-9).unwrap(), [1, 3].into_iter().collect());
    }

    #[test]
    fn greedy_telescopes() {
        let f = TableFunction::new(vec![0.0, 1.0, 1.0, 1.5]).unwrap();
        let x = greedy_vertex(&f, &[1, 0]);
        assert_eq!(x, vec![0.5, 1.0]);
        assert_eq!(x.iter().sum::<f64>(), 1.5);
    }

    #[test]
    fn symmetric_pair_splits_evenly() {
        // f = min(|A|, 1): base polytope is the segment between (1,0) and (0,1)
        let f = TableFunction::new(vec![0.0, 1.0, 1.0, 1.0]).unwrap();
        let base = min_norm_base(&f, 1e-9).unwrap();
        assert!(close(&base.x, &[0.5, 0.5], 1e-12));
        assert!(base.gap <= 1e-9 * (1.0 + base.norm_squared()));
    }

    #[test]
    fn principal_sequence_thresholds() {
        let ps = PrincipalSequence::new(vec![-2.0, -1.0, -0.5, -0.5, 0.0], 1e-9);
        assert_eq!(ps.breakpoints(), &[-2.0, -1.0, -0.5, 0.0]);
        assert_eq!(ps.set_at(-1.0), [0, 1].into_iter().collect());
        assert_eq!(ps.set_at(-3.0), Subset::empty());
        assert_eq!(ps.set_at(-1.0 - 1e-10), [0, 1].into_iter().collect());
        let chain = ps.chain();
        assert!(chain.windows(2).all(|w| w[0].1.is_subset_of(&w[1].1)));

        let flat = PrincipalSequence::new(vec![0.25; 3], 1e-9);
        assert_eq!(flat.breakpoints().len(), 1);
        assert_eq!(flat.set_at(0.2), Subset::empty());
        assert_eq!(flat.set_at(0.25), Subset::full(3));
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = Modular::new(vec![1.0]);
        assert!(min_norm_base(&f, 0.0).is_err());
        assert!(min_norm_base_from(&f, 1e-9, &[]).is_err());
        assert!(min_norm_base(&Modular::new(Vec::new()), 1e-9).unwrap().x.is_empty());
    }
}

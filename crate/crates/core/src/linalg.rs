//! Small dense kernels: Cholesky log-determinants and Householder least squares.

use alloc::vec;
use alloc::vec::Vec;

/// Natural log-determinant of the symmetric matrix `a` (row-major, `k × k`)
/// via Cholesky; `None` if it is not numerically positive definite.
pub(crate) fn cholesky_log_det(a: &[f64], k: usize) -> Option<f64> {
    let mut l = vec![0.0; k * k];
    let mut log_det = 0.0;
    for j in 0..k {
        let mut d = a[j * k + j];
        for p in 0..j {
            d -= l[j * k + p] * l[j * k + p];
        }
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        let root = libm::sqrt(d);
        l[j * k + j] = root;
        log_det += 2.0 * libm::log(root);
        for i in j + 1..k {
            let mut s = a[i * k + j];
            for p in 0..j {
                s -= l[i * k + p] * l[j * k + p];
            }
            l[i * k + j] = s / root;
        }
    }
    Some(log_det)
}

/// Minimizes `‖b + D μ‖` over `μ`, where `D` is given as `cols` column vectors
/// of length `rows`. Uses Householder QR; columns whose reflected pivot falls
/// below `rank_tol` relative to the largest column norm are held at zero.
pub(crate) fn least_squares(cols: &[Vec<f64>], b: &[f64], rank_tol: f64) -> Vec<f64> {
    let m = cols.len();
    let rows = b.len();
    let mut a: Vec<Vec<f64>> = cols.to_vec();
    let mut rhs: Vec<f64> = b.iter().map(|v| -v).collect();
    let scale = cols
        .iter()
        .map(|c| libm::sqrt(c.iter().map(|v| v * v).sum::<f64>()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut usable = vec![true; m];
    let mut row = 0;
    for j in 0..m {
        if row >= rows {
            usable[j] = false;
            continue;
        }
        let norm = libm::sqrt(a[j][row..].iter().map(|v| v * v).sum::<f64>());
        if norm <= rank_tol * scale {
            usable[j] = false;
            continue;
        }
        let alpha = if a[j][row] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[j][row..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(j) {
                let dot: f64 = v.iter().zip(&col[row..]).map(|(p, q)| p * q).sum();
                let f = 2.0 * dot / vnorm2;
                for (x, vi) in col[row..].iter_mut().zip(&v) {
                    *x -= f * vi;
                }
            }
            let dot: f64 = v.iter().zip(&rhs[row..]).map(|(p, q)| p * q).sum();
            let f = 2.0 * dot / vnorm2;
            for (x, vi) in rhs[row..].iter_mut().zip(&v) {
                *x -= f * vi;
            }
        }
        row += 1;
    }
    // back substitution over the usable columns, which occupy rows 0..row
    let pivots: Vec<usize> = (0..m).filter(|&j| usable[j]).collect();
    let mut mu = vec![0.0; m];
    for (r, &j) in pivots.iter().enumerate().rev() {
        let mut s = rhs[r];
        for &jj in pivots.iter().skip(r + 1) {
            s -= a[jj][r] * mu[jj];
        }
        mu[j] = s / a[j][r];
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_det_of_diagonal() {
        let a = [2.0, 0.0, 0.0, 3.0];
        let ld = cholesky_log_det(&a, 2).unwrap();
        assert!((ld - libm::log(6.0)).abs() < 1e-14);
        assert!(cholesky_log_det(&[1.0, 2.0, 2.0, 1.0], 2).is_none());
    }

    #[test]
    fn least_squares_exact_fit() {
        // minimize |b + D mu| with D = [[1,0,0],[0,1,0]] columns, b = (1,2,3)
        let cols = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let mu = least_squares(&cols, &[1.0, 2.0, 3.0], 1e-12);
        assert!((mu[0] + 1.0).abs() < 1e-14 && (mu[1] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn least_squares_skips_dependent_columns() {
        let cols = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        let b = [-3.0, -1.0];
        let mu = least_squares(&cols, &b, 1e-12);
        let r: Vec<f64> = (0..2).map(|i| b[i] + cols[0][i] * mu[0] + cols[1][i] * mu[1]).collect();
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }
}

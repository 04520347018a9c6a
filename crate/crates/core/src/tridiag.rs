use crate::error::{Error, Result};

/// Solve `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]` by
/// forward elimination. `lower[0]` and `upper[n-1]` are ignored.
pub(crate) fn solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64], x: &mut [f64]) -> Result<()> {
    let n = diag.len();
    debug_assert!(lower.len() == n && upper.len() == n && rhs.len() == n && x.len() >= n);
    let mut c = vec![0.0; n];
    let mut pivot = diag[0];
    if !(pivot.abs() > 0.0) || !pivot.is_finite() {
        return Err(Error::SingularSystem { row: 0 });
    }
    c[0] = upper[0] / pivot;
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i] * c[i - 1];
        if !(pivot.abs() > 0.0) || !pivot.is_finite() {
            return Err(Error::SingularSystem { row: i });
        }
        c[i] = if i + 1 < n { upper[i] / pivot } else { 0.0 };
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_poisson_matrix() {
        let n = 50;
        let lower = vec![-1.0; n];
        let diag = vec![2.0; n];
        let upper = vec![-1.0; n];
        let truth: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).sin()).collect();
        let rhs: Vec<f64> = (0..n)
            .map(|i| {
                let l = if i > 0 { truth[i - 1] } else { 0.0 };
                let u = if i + 1 < n { truth[i + 1] } else { 0.0 };
                2.0 * truth[i] - l - u
            })
            .collect();
        let mut x = vec![0.0; n];
        solve(&lower, &diag, &upper, &rhs, &mut x).unwrap();
        for (a, b) in x.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn reports_zero_pivot() {
        let mut x = vec![0.0; 2];
        assert!(matches!(
            solve(&[0.0, 1.0], &[0.0, 1.0], &[1.0, 0.0], &[1.0, 1.0], &mut x),
            Err(Error::SingularSystem { row: 0 })
        ));
    }
}

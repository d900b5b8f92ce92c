//! Truncated Taylor series arithmetic. A jet of length `n + 1` holds the
//! normalized coefficients `f^(k)(t) / k!` for `k = 0..=n`.

pub(crate) fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

pub(crate) fn div(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let conv: f64 = (1..=k).map(|i| b[i] * c[k - i]).sum();
        c.push((a[k] - conv) / b[0]);
    }
    c
}

pub(crate) fn sqrt(a: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = Vec::with_capacity(a.len());
    s.push(a[0].sqrt());
    for k in 1..a.len() {
        let conv: f64 = (1..k).map(|i| s[i] * s[k - i]).sum();
        s.push((a[k] - conv) / (2.0 * s[0]));
    }
    s
}

/// Shifts a jet of length `n + 2` into the jet of the derivative, length `n + 1`.
pub(crate) fn derivative(a: &[f64]) -> Vec<f64> {
    (1..a.len()).map(|k| k as f64 * a[k]).collect()
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_linear() {
        // (1 + 2t)^2 = 1 + 4t + 4t^2
        let a = [1.0, 2.0, 0.0];
        assert_eq!(mul(&a, &a), vec![1.0, 4.0, 4.0]);
        assert_eq!(sqrt(&[1.0, 4.0, 4.0]), vec![1.0, 2.0, 0.0]);
    }

    #[test]
    fn geometric_series() {
        // 1 / (1 - t) = 1 + t + t^2 + t^3
        let q = div(&[1.0, 0.0, 0.0, 0.0], &[1.0, -1.0, 0.0, 0.0]);
        assert_eq!(q, vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(derivative(&q), vec![1.0, 2.0, 3.0]);
    }
}

//! Terminating hypergeometric sums and the classical polynomial families.

use num_complex::Complex64;

use super::gamma::{binomial, factorial, pochhammer};
use super::sum::{compensated_sum, compensated_sum_complex};
use crate::error::{Error, Result};

/// Power-series coefficients of L_n^{(a)}: c_k = (-1)^k C(n+a, n-k) / k!.
pub fn laguerre_coefficients(n: usize, a: f64) -> Vec<f64> {
    // b[j] = C(n+a, j) by the multiplicative recurrence
    let top = n as f64 + a;
    let mut b = vec![1.0; n + 1];
    for j in 1..=n {
        b[j] = b[j - 1] * (top - (j - 1) as f64) / j as f64;
    }
    let mut inv_fact = 1.0;
    (0..=n)
        .map(|k| {
            if k > 0 {
                inv_fact /= k as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * b[n - k] * inv_fact
        })
        .collect()
}

/// Generalized Laguerre polynomial L_n^{(a)}(x). Any real `a` is allowed.
pub fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let c = laguerre_coefficients(n, a);
    let mut p = 1.0;
    compensated_sum(c.iter().map(|&ck| {
        let t = ck * p;
        p *= x;
        t
    }))
}

/// L_n^{(a)} at a complex argument, by the same terminating sum.
pub fn laguerre_complex(n: usize, a: f64, x: Complex64) -> Complex64 {
    let c = laguerre_coefficients(n, a);
    let mut p = Complex64::new(1.0, 0.0);
    compensated_sum_complex(c.iter().map(|&ck| {
        let t = p * ck;
        p *= x;
        t
    }))
}

fn is_nonpositive_integer(c: f64, n: usize) -> Option<usize> {
    (0..n).find(|&j| c == -(j as f64))
}

/// ₁F₁(-n; c; x) as a terminating sum.
pub fn kummer_1f1_terminating(n: usize, c: f64, x: f64) -> Result<f64> {
    if let Some(j) = is_nonpositive_integer(c, n) {
        return Err(Error::PoleInDenominator(format!(
            "(c)_k vanishes at k = {} for c = {c}, n = {n}",
            j + 1
        )));
    }
    let mut term = 1.0;
    let mut terms = Vec::with_capacity(n + 1);
    terms.push(term);
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * x / ((c + kf) * (kf + 1.0));
        terms.push(term);
    }
    Ok(compensated_sum(terms))
}

/// ₂F₀(-n, b; ; x) = Σ_{k≤n} (-n)_k (b)_k x^k / k!.
pub fn hyp2f0_terminating(n: usize, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut terms = Vec::with_capacity(n + 1);
    terms.push(term);
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) * x / (kf + 1.0);
        terms.push(term);
    }
    compensated_sum(terms)
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn real_hermite(n: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Complex Itô–Hermite polynomial H_{m,n}^α(z, z̄) in the Rodrigues convention
/// H_{m,n}^α = (-1)^{m+n} e^{α z z̄} ∂_z̄^m ∂_z^n e^{-α z z̄}:
///
/// Σ_k (-1)^k k! C(m,k) C(n,k) α^{m+n-k} z^{m-k} z̄^{n-k}.
pub fn ito_hermite(m: usize, n: usize, alpha: f64, z: Complex64) -> Complex64 {
    let zb = z.conj();
    compensated_sum_complex((0..=m.min(n)).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * factorial(k) * binomial(m, k) * binomial(n, k) * alpha.powi((m + n - k) as i32);
        z.powi((m - k) as i32) * zb.powi((n - k) as i32) * c
    }))
}

const SERIES_MAX_TERMS: usize = 2000;

/// Convergent ₁F₁(a; b; x) series for complex x.
pub fn hyp1f1_series(a: f64, b: f64, x: Complex64) -> Result<Complex64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::PoleInDenominator(format!("₁F₁ lower parameter b = {b}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = super::sum::ComplexSum::new();
    acc.add(term);
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= x * ((a + kf) / ((b + kf) * (kf + 1.0)));
        acc.add(term);
        if term.norm() <= 1e-17 * acc.value().norm() && kf > x.norm() {
            return Ok(acc.value());
        }
    }
    Err(Error::NotConverged(format!("₁F₁({a}; {b}; {x}) series")))
}

/// ₀F₁(; b; x) for complex x.
pub fn hyp0f1(b: f64, x: Complex64) -> Result<Complex64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::PoleInDenominator(format!("₀F₁ parameter b = {b}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = super::sum::ComplexSum::new();
    acc.add(term);
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= x / ((b + kf) * (kf + 1.0));
        acc.add(term);
        if term.norm() <= 1e-17 * acc.value().norm() && (kf + 1.0) * (kf + 1.0 + b.abs()) > x.norm() {
            return Ok(acc.value());
        }
    }
    Err(Error::NotConverged(format!("₀F₁(; {b}; {x}) series")))
}

/// (a+1)_n / n!, the factor relating ₁F₁(-n; a+1; x) to L_n^{(a)}(x).
pub fn kummer_laguerre_factor(n: usize, a: f64) -> f64 {
    pochhammer(a + 1.0, n) / factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 7.3, -2.0), 1.0);
        assert_relative_eq!(laguerre(1, 2.5, 1.0), 2.5, max_relative = 1e-15);
        assert_relative_eq!(laguerre(2, 0.0, 2.0), -1.0, max_relative = 1e-15);
    }

    #[test]
    fn laguerre_frozen_values() {
        // 50-digit reference values
        assert_relative_eq!(laguerre(5, 0.5, 3.2), 1.401_695_249_999_999_9, max_relative = 1e-13);
        assert_relative_eq!(laguerre(4, -2.5, 1.1), 0.047_316_666_666_666_65, max_relative = 1e-12);
        assert_relative_eq!(laguerre(7, -4.0, 0.9), 0.014_694_687_321_428_573, max_relative = 1e-11);
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_1f1_terminating(0, 3.0, 5.0).unwrap(), 1.0);
        assert_relative_eq!(kummer_1f1_terminating(1, 2.0, 4.0).unwrap(), -1.0);
        let lhs = kummer_1f1_terminating(3, 1.5, 0.7).unwrap() * kummer_laguerre_factor(3, 0.5);
        assert_relative_eq!(lhs, laguerre(3, 0.5, 0.7), max_relative = 1e-13);
        assert!(matches!(kummer_1f1_terminating(3, -1.0, 0.5), Err(Error::PoleInDenominator(_))));
        assert!(kummer_1f1_terminating(1, -1.0, 0.5).is_ok());
    }

    #[test]
    fn hyp2f0_examples() {
        assert_eq!(hyp2f0_terminating(0, 2.0, 9.0), 1.0);
        assert_relative_eq!(hyp2f0_terminating(1, 3.0, 0.5), -0.5);
        // (-2)_k(-1.5)_k 0.2^k/k!: 1 - 2*1.5*0.2*(-1)... direct expansion
        let direct = 1.0 + (-2.0 * -1.5) * 0.2 + (-2.0 * -1.0) * (-1.5 * -0.5) * 0.04 / 2.0;
        assert_relative_eq!(hyp2f0_terminating(2, -1.5, 0.2), direct, max_relative = 1e-15);
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(real_hermite(0, 3.7), 1.0);
        assert_eq!(real_hermite(1, 2.0), 4.0);
        assert_eq!(real_hermite(3, 1.0), -4.0);
    }

    #[test]
    fn ito_hermite_examples() {
        let z = Complex64::new(0.3, -1.7);
        assert_eq!(ito_hermite(0, 0, 2.0, z), Complex64::new(1.0, 0.0));
        assert_relative_eq!((ito_hermite(1, 0, 1.0, z) - z).norm(), 0.0, epsilon = 1e-15);
        let w = Complex64::new(1.0, 1.0);
        assert_relative_eq!((ito_hermite(1, 1, 1.0, w) - Complex64::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hypergeometric_series_closed_forms() {
        let x = Complex64::new(0.7, -1.2);
        assert_relative_eq!((hyp1f1_series(1.0, 1.0, x).unwrap() - x.exp()).norm(), 0.0, epsilon = 1e-14);
        // ₀F₁(;1/2; x²/4) = cosh x
        let c = hyp0f1(0.5, x * x / 4.0).unwrap();
        assert_relative_eq!((c - x.cosh()).norm(), 0.0, epsilon = 1e-14);
    }
}

//! Bessel function of the first kind for real order ν > -1 and x ≥ 0.
//!
//! Below [`BESSEL_SWITCH`] the ₀F₁ power series is summed in double-double
//! arithmetic, which absorbs the cancellation between its alternating terms.
//! Above it, Hankel's asymptotic expansion gives J_μ and J_{μ+1} for the
//! fractional part μ of ν and forward recurrence (stable while ν < x) lifts
//! the order.

use std::f64::consts::PI;

use super::gamma::ln_gamma;
use crate::error::{domain, Result};

/// Argument at which the series hands over to the asymptotic expansion.
pub const BESSEL_SWITCH: f64 = 25.0;

#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, b: Dd) -> Dd {
        let s = two_sum(self.hi, b.hi);
        let t = two_sum(self.lo, b.lo);
        let r = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(r.hi, r.lo + t.lo)
    }

    fn mul(self, b: Dd) -> Dd {
        let p = two_prod(self.hi, b.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * b.lo + self.lo * b.hi))
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.add(b.mul(Dd::from(q1)).neg());
        let q2 = r.hi / b.hi;
        let r = r.add(b.mul(Dd::from(q2)).neg());
        let q3 = r.hi / b.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }
}

fn series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = x / 2.0;
    let y = two_prod(half, half).neg();
    let mut term = Dd::from(1.0);
    let mut sum = term;
    let mut k = 1.0;
    loop {
        let denom = two_sum(nu, k).mul(Dd::from(k));
        term = term.mul(y).div(denom);
        sum = sum.add(term);
        if term.hi.abs() < 1e-33 * sum.hi.abs().max(1e-300) && k * k > -y.hi {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            break;
        }
    }
    let log_pref = nu * half.ln() - ln_gamma(nu + 1.0);
    // Γ(ν+1) > 0 on ν > -1, so the prefactor is positive
    (sum.hi + sum.lo) * log_pref.exp()
}

fn hankel(mu: f64, x: f64) -> f64 {
    let m4 = 4.0 * mu * mu;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= (m4 - odd * odd) / (k as f64 * 8.0 * x);
        }
        if a.abs() > prev && k > 2 {
            break;
        }
        let term = match k % 4 {
            0 | 1 => a,
            _ => -a,
        };
        if k % 2 == 0 {
            p += term;
        } else {
            q += term;
        }
        prev = a.abs();
        if a.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (mu / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn asymptotic(nu: f64, x: f64) -> f64 {
    if nu < 0.0 {
        return hankel(nu, x);
    }
    let steps = nu.floor() as usize;
    let mu = nu - steps as f64;
    let mut j0 = hankel(mu, x);
    if steps == 0 {
        return j0;
    }
    let mut j1 = hankel(mu + 1.0, x);
    for s in 1..steps {
        let order = mu + s as f64;
        let j2 = 2.0 * order / x * j1 - j0;
        j0 = j1;
        j1 = j2;
    }
    j1
}

/// J_ν(x) for ν > -1, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu <= -1.0 || nu.is_nan() {
        return domain(format!("Bessel order must exceed -1, got {nu}"));
    }
    if x < 0.0 || x.is_nan() {
        return domain(format!("Bessel argument must be nonnegative, got {x}"));
    }
    if x <= BESSEL_SWITCH || nu >= x - 5.0 {
        Ok(series(nu, x))
    } else {
        Ok(asymptotic(nu, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn examples() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(bessel_j(0.5, PI / 2.0).unwrap(), 2.0 / PI, max_relative = 1e-14);
        assert!(bessel_j(0.0, 2.404_825_557_7).unwrap().abs() < 1e-9);
        assert!(bessel_j(-1.0, 1.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms_across_switch() {
        for &x in &[0.1, 3.0, 11.9, 24.9, 25.1, 40.0, 80.0] {
            let j05 = (2.0 / (PI * x)).sqrt() * x.sin();
            let jm05 = (2.0 / (PI * x)).sqrt() * x.cos();
            let j15 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((bessel_j(0.5, x).unwrap() - j05).abs() < 1e-13 * amp, "x={x}");
            assert!((bessel_j(-0.5, x).unwrap() - jm05).abs() < 1e-13 * amp, "x={x}");
            assert!((bessel_j(1.5, x).unwrap() - j15).abs() < 1e-13 * amp, "x={x}");
        }
    }

    #[test]
    fn regimes_overlap() {
        for &nu in &[-0.7, 0.0, 0.3, 1.0, 2.5, 4.2, 8.0] {
            for i in 0..=20 {
                let x = BESSEL_SWITCH + 0.25 * i as f64;
                let amp = (2.0 / (PI * x)).sqrt();
                let d = (series(nu, x) - asymptotic(nu, x)).abs();
                assert!(d < 1e-12 * amp, "nu={nu} x={x} diff={d:e}");
            }
        }
    }

    #[test]
    fn frozen_values() {
        // 30-digit references
        assert_relative_eq!(bessel_j(2.3, 7.1).unwrap(), -0.306_033_816_324_409_3, max_relative = 1e-13);
        assert_relative_eq!(bessel_j(0.0, 18.0).unwrap(), -0.013_355_805_721_984_110, max_relative = 1e-11);
        assert_relative_eq!(bessel_j(6.5, 41.3).unwrap(), 0.102_959_394_742_655_44, max_relative = 1e-12);
    }
}

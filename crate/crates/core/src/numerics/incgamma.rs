//! Incomplete gamma functions of complex argument.

use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{domain, Error, Result};

/// An incomplete-gamma value plus a flag raised when x sits on the branch
/// cut of the principal power x^s (real, nonpositive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncompleteGamma {
    pub value: Complex64,
    pub branch_warning: bool,
}

const MAX_ITER: usize = 5000;
const TINY: f64 = 1e-300;

fn on_cut(x: Complex64) -> bool {
    x.im == 0.0 && x.re <= 0.0
}

fn principal_pow(x: Complex64, s: f64) -> Complex64 {
    (x.ln() * s).exp()
}

fn series_regime(s: f64, x: Complex64) -> bool {
    x.norm() <= s.max(8.0) || x.re <= 0.0
}

/// γ(s, x) by power series. On the right half-plane the form
/// e^{-x} x^s Σ x^k/(s)_{k+1} has terms of one phase; on the left half-plane
/// x^s Σ (-x)^k/(k!(s+k)) does.
pub(crate) fn lower_series(s: f64, x: Complex64) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) {
        return Ok(x);
    }
    let mut acc = super::sum::ComplexSum::new();
    if x.re >= 0.0 {
        let mut term = Complex64::new(1.0 / s, 0.0);
        acc.add(term);
        for k in 1..MAX_ITER {
            term *= x / (s + k as f64);
            acc.add(term);
            if term.norm() < 1e-17 * acc.value().norm() {
                return Ok(acc.value() * principal_pow(x, s) * (-x).exp());
            }
        }
    } else {
        let mut power = Complex64::new(1.0, 0.0);
        acc.add(power / s);
        for k in 1..MAX_ITER {
            power *= -x / k as f64;
            let term = power / (s + k as f64);
            acc.add(term);
            if term.norm() < 1e-17 * acc.value().norm() && k as f64 > x.norm() {
                return Ok(acc.value() * principal_pow(x, s));
            }
        }
    }
    Err(Error::NotConverged(format!("incomplete gamma series at s={s}, x={x}")))
}

/// Γ(s, x) by the Legendre continued fraction (modified Lentz).
pub(crate) fn upper_continued_fraction(s: f64, x: Complex64) -> Result<Complex64> {
    let tiny = Complex64::new(TINY, 0.0);
    let mut b = x + 1.0 - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = d * an + b;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + c.inv() * an;
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h * principal_pow(x, s) * (-x).exp());
        }
    }
    Err(Error::NotConverged(format!("incomplete gamma continued fraction at s={s}, x={x}")))
}

/// Lower incomplete gamma γ(s, x), analytically continued from the
/// principal branch of x^s.
pub fn lower_incomplete_gamma(s: f64, x: Complex64) -> Result<IncompleteGamma> {
    if !(s > 0.0) {
        return domain(format!("incomplete gamma requires s > 0, got {s}"));
    }
    let value = if series_regime(s, x) {
        lower_series(s, x)?
    } else {
        gamma(s) - upper_continued_fraction(s, x)?
    };
    Ok(IncompleteGamma { value, branch_warning: on_cut(x) })
}

/// Upper incomplete gamma Γ(s, x) = Γ(s) - γ(s, x).
pub fn upper_incomplete_gamma(s: f64, x: Complex64) -> Result<IncompleteGamma> {
    if !(s > 0.0) {
        return domain(format!("incomplete gamma requires s > 0, got {s}"));
    }
    let value = if series_regime(s, x) {
        gamma(s) - lower_series(s, x)?
    } else {
        upper_continued_fraction(s, x)?
    };
    Ok(IncompleteGamma { value, branch_warning: on_cut(x) })
}

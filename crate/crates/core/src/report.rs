//! Verification reports and residual bookkeeping.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity_id: String,
    pub samples: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// The implemented form deviates from the printed display.
    pub errata_corrected: bool,
    pub seed: Option<u64>,
}

impl VerificationReport {
    /// Folds another report on the same identity into this one.
    pub fn merge(&mut self, other: &VerificationReport) {
        self.samples += other.samples;
        self.max_abs_residual = worst(self.max_abs_residual, other.max_abs_residual);
        self.max_rel_residual = worst(self.max_rel_residual, other.max_rel_residual);
        self.errata_corrected |= other.errata_corrected;
        self.passed = self.max_rel_residual <= self.tolerance;
    }

    /// A row recording that an identity could not be evaluated at all.
    pub fn refused(identity_id: impl Into<String>, tolerance: f64) -> Self {
        Self {
            identity_id: identity_id.into(),
            samples: 0,
            max_abs_residual: f64::INFINITY,
            max_rel_residual: f64::INFINITY,
            tolerance,
            passed: false,
            errata_corrected: false,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.max_rel_residual <= tolerance;
        self
    }
}

/// NaN-aware maximum: a NaN residual poisons the result.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else {
        a.max(b)
    }
}

/// Accumulates residuals of one identity over many samples.
#[derive(Debug, Clone)]
pub struct Residuals {
    id: String,
    tolerance: f64,
    errata: bool,
    samples: usize,
    max_abs: f64,
    max_rel: f64,
}

impl Residuals {
    pub fn new(id: impl Into<String>, tolerance: f64) -> Self {
        Self { id: id.into(), tolerance, errata: false, samples: 0, max_abs: 0.0, max_rel: 0.0 }
    }

    pub fn errata(mut self) -> Self {
        self.errata = true;
        self
    }

    /// Records |lhs - rhs| against an explicit scale.
    pub fn push_scaled(&mut self, lhs: Complex64, rhs: Complex64, scale: f64) {
        let abs = (lhs - rhs).norm();
        let rel = if abs == 0.0 { 0.0 } else { abs / scale };
        self.max_abs = worst(self.max_abs, abs);
        self.max_rel = worst(self.max_rel, rel);
        self.samples += 1;
    }

    /// Records lhs against Σ rhs_terms, relative to the largest single term.
    pub fn push_terms(&mut self, lhs: Complex64, rhs_terms: &[Complex64]) {
        let rhs: Complex64 = rhs_terms.iter().sum();
        let scale = rhs_terms.iter().fold(lhs.norm(), |a, t| a.max(t.norm())).max(f64::MIN_POSITIVE);
        self.push_scaled(lhs, rhs, scale);
    }

    /// Records lhs against rhs relative to max(|lhs|, |rhs|).
    pub fn push(&mut self, lhs: Complex64, rhs: Complex64) {
        self.push_terms(lhs, &[rhs]);
    }

    /// Records a residual that was already reduced to a relative number.
    pub fn push_relative(&mut self, abs: f64, rel: f64) {
        self.max_abs = worst(self.max_abs, abs);
        self.max_rel = worst(self.max_rel, rel);
        self.samples += 1;
    }

    /// Records a sample that could not be evaluated.
    pub fn push_failure(&mut self) {
        self.push_relative(f64::INFINITY, f64::INFINITY);
    }

    /// Folds a finished report on a sub-identity into this accumulator.
    pub fn absorb(&mut self, report: &VerificationReport) {
        self.max_abs = worst(self.max_abs, report.max_abs_residual);
        self.max_rel = worst(self.max_rel, report.max_rel_residual);
        self.samples += report.samples;
        self.errata |= report.errata_corrected;
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            passed: self.max_rel <= self.tolerance,
            identity_id: self.id,
            samples: self.samples,
            max_abs_residual: self.max_abs,
            max_rel_residual: self.max_rel,
            tolerance: self.tolerance,
            errata_corrected: self.errata,
            seed: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_scale_uses_largest_term() {
        let mut r = Residuals::new("x", 1e-10);
        let a = Complex64::new(1e6, 0.0);
        r.push_terms(Complex64::new(1.0, 0.0), &[a, -a + 1.0 + 1e-8]);
        let rep = r.finish();
        assert!(rep.max_rel_residual < 1e-13);
        assert!(rep.passed);
    }

    #[test]
    fn nan_fails() {
        let mut r = Residuals::new("x", 1.0);
        r.push(Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0));
        assert!(!r.finish().passed);
    }

    #[test]
    fn merge_keeps_worst() {
        let mut a = Residuals::new("x", 1e-3);
        a.push_relative(1.0, 1e-5);
        let mut b = Residuals::new("x", 1e-3);
        b.push_relative(2.0, 1e-2);
        let mut ra = a.finish();
        ra.merge(&b.finish());
        assert_eq!(ra.samples, 2);
        assert!(!ra.passed);
    }
}

//! Truncated bivariate Taylor arithmetic in (ζ, ω), where ζ stands for z and
//! ω for z̄ treated as an independent variable.
//!
//! A jet of order (p, q) at base (z₀, w₀) stores c_{ij} for i ≤ p, j ≤ q so
//! that the germ is Σ c_{ij} (ζ - z₀)^i (ω - w₀)^j. Wirtinger derivatives at
//! the base point are i! j! c_{ij}. Evaluating on the diagonal means seeding
//! w₀ = conj(z₀).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::factorial;

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Z,
    ZBar,
}

/// Base point plus truncation orders: everything needed to seed a jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetSeed {
    pub base: (C, C),
    pub orders: (usize, usize),
}

impl JetSeed {
    pub fn new(base: (C, C), orders: (usize, usize)) -> Self {
        Self { base, orders }
    }

    /// Seed on the diagonal ω = z̄.
    pub fn diagonal(z: C, orders: (usize, usize)) -> Self {
        Self { base: (z, z.conj()), orders }
    }

    pub fn z(&self) -> WirtingerJet {
        WirtingerJet::variable(Variable::Z, self.base, self.orders)
    }

    pub fn zbar(&self) -> WirtingerJet {
        WirtingerJet::variable(Variable::ZBar, self.base, self.orders)
    }

    pub fn constant(&self, c: C) -> WirtingerJet {
        WirtingerJet::constant(c, self.base, self.orders)
    }
}

/// Anything whose jet can be produced at an arbitrary base and order.
pub trait JetEvaluable {
    fn jet(&self, seed: JetSeed) -> Result<WirtingerJet>;
}

impl<F> JetEvaluable for F
where
    F: Fn(JetSeed) -> Result<WirtingerJet>,
{
    fn jet(&self, seed: JetSeed) -> Result<WirtingerJet> {
        self(seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WirtingerJet {
    base_z: C,
    base_zbar: C,
    p: usize,
    q: usize,
    coeffs: Vec<C>,
}

impl WirtingerJet {
    pub fn zero(base: (C, C), orders: (usize, usize)) -> Self {
        let (p, q) = orders;
        Self { base_z: base.0, base_zbar: base.1, p, q, coeffs: vec![C::new(0.0, 0.0); (p + 1) * (q + 1)] }
    }

    pub fn constant(c: C, base: (C, C), orders: (usize, usize)) -> Self {
        let mut j = Self::zero(base, orders);
        j.coeffs[0] = c;
        j
    }

    pub fn variable(which: Variable, base: (C, C), orders: (usize, usize)) -> Self {
        let mut j = Self::zero(base, orders);
        match which {
            Variable::Z => {
                j.coeffs[0] = base.0;
                if orders.0 >= 1 {
                    *j.at_mut(1, 0) = C::new(1.0, 0.0);
                }
            }
            Variable::ZBar => {
                j.coeffs[0] = base.1;
                if orders.1 >= 1 {
                    *j.at_mut(0, 1) = C::new(1.0, 0.0);
                }
            }
        }
        j
    }

    /// Builds a jet from a row-major (p+1)×(q+1) coefficient array.
    pub fn from_coeffs(base: (C, C), orders: (usize, usize), coeffs: Vec<C>) -> Result<Self> {
        let (p, q) = orders;
        if coeffs.len() != (p + 1) * (q + 1) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients for orders ({p}, {q}), got {}",
                (p + 1) * (q + 1),
                coeffs.len()
            )));
        }
        Ok(Self { base_z: base.0, base_zbar: base.1, p, q, coeffs })
    }

    pub fn base(&self) -> (C, C) {
        (self.base_z, self.base_zbar)
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn seed(&self) -> JetSeed {
        JetSeed::new(self.base(), self.orders())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Taylor coefficient c_{ij}.
    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.coeffs[i * (self.q + 1) + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut C {
        &mut self.coeffs[i * (self.q + 1) + j]
    }

    pub fn value(&self) -> C {
        self.coeffs[0]
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::ShapeMismatch(format!(
                "jet orders ({}, {}) vs ({}, {})",
                self.p, self.q, other.p, other.q
            )));
        }
        if self.base_z != other.base_z || self.base_zbar != other.base_zbar {
            return Err(Error::ShapeMismatch("jets live at different base points".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    fn with_coeffs(&self, coeffs: Vec<C>) -> Self {
        Self { base_z: self.base_z, base_zbar: self.base_zbar, p: self.p, q: self.q, coeffs }
    }

    pub fn scale(&self, c: C) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_scalar(&self, c: C) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.base(), self.orders());
        for i in 0..=self.p {
            for j in 0..=self.q {
                let a = self.coeff(i, j);
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..=self.p - i {
                    for l in 0..=self.q - j {
                        *out.at_mut(i + k, j + l) += a * other.coeff(k, l);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn recip(&self) -> Result<Self> {
        let a0 = self.value();
        if a0 == C::new(0.0, 0.0) {
            return Err(Error::ZeroBase("reciprocal of a jet with zero constant term".into()));
        }
        let inv0 = a0.inv();
        let mut b = Self::zero(self.base(), self.orders());
        for i in 0..=self.p {
            for j in 0..=self.q {
                if i == 0 && j == 0 {
                    *b.at_mut(0, 0) = inv0;
                    continue;
                }
                let mut acc = C::new(0.0, 0.0);
                for k in 0..=i {
                    for l in 0..=j {
                        if k == 0 && l == 0 {
                            continue;
                        }
                        acc += self.coeff(k, l) * b.coeff(i - k, j - l);
                    }
                }
                *b.at_mut(i, j) = -acc * inv0;
            }
        }
        Ok(b)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    pub fn exp(&self) -> Self {
        let mut f = Self::zero(self.base(), self.orders());
        *f.at_mut(0, 0) = self.value().exp();
        for j in 1..=self.q {
            let mut acc = C::new(0.0, 0.0);
            for l in 1..=j {
                acc += self.coeff(0, l) * f.coeff(0, j - l) * l as f64;
            }
            *f.at_mut(0, j) = acc / j as f64;
        }
        for i in 1..=self.p {
            for j in 0..=self.q {
                let mut acc = C::new(0.0, 0.0);
                for k in 1..=i {
                    for l in 0..=j {
                        acc += self.coeff(k, l) * f.coeff(i - k, j - l) * k as f64;
                    }
                }
                *f.at_mut(i, j) = acc / i as f64;
            }
        }
        f
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Self> {
        let a0 = self.value();
        if a0 == C::new(0.0, 0.0) {
            return Err(Error::ZeroBase("logarithm of a jet with zero constant term".into()));
        }
        let mut g = Self::zero(self.base(), self.orders());
        *g.at_mut(0, 0) = a0.ln();
        for j in 1..=self.q {
            let mut acc = self.coeff(0, j) * j as f64;
            for l in 1..j {
                acc -= g.coeff(0, l) * self.coeff(0, j - l) * l as f64;
            }
            *g.at_mut(0, j) = acc / (a0 * j as f64);
        }
        for i in 1..=self.p {
            for j in 0..=self.q {
                let mut acc = self.coeff(i, j) * i as f64;
                for k in 1..=i {
                    for l in 0..=j {
                        if k == i && l == j {
                            continue;
                        }
                        acc -= g.coeff(k, l) * self.coeff(i - k, j - l) * k as f64;
                    }
                }
                *g.at_mut(i, j) = acc / (a0 * i as f64);
            }
        }
        Ok(g)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut out = self.seed().constant(C::new(1.0, 0.0));
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(out)
    }

    /// a^s = exp(s log a) on the principal branch. Integral exponents are
    /// branch-free and routed through [`Self::powi`].
    pub fn pow_principal(&self, s: f64) -> Result<Self> {
        let a0 = self.value();
        if a0 == C::new(0.0, 0.0) {
            return Err(Error::ZeroBase("power of a jet with zero constant term".into()));
        }
        if s == s.round() && s.abs() < i32::MAX as f64 {
            return self.powi(s as i32);
        }
        if a0.im == 0.0 && a0.re < 0.0 {
            return Err(Error::BranchCut(format!(
                "non-integer power {s} of a jet whose constant term {a0} lies on the negative real axis"
            )));
        }
        Ok(self.ln()?.scale(C::new(s, 0.0)).exp())
    }

    /// ∂/∂ζ of the germ; the z-order drops by one.
    pub fn derivative_z(&self) -> Result<Self> {
        if self.p == 0 {
            return Err(Error::OrderExceeded { i: 1, j: 0, p: self.p, q: self.q });
        }
        let mut out = Self::zero(self.base(), (self.p - 1, self.q));
        for i in 1..=self.p {
            for j in 0..=self.q {
                *out.at_mut(i - 1, j) = self.coeff(i, j) * i as f64;
            }
        }
        Ok(out)
    }

    /// ∂/∂ω of the germ; the z̄-order drops by one.
    pub fn derivative_zbar(&self) -> Result<Self> {
        if self.q == 0 {
            return Err(Error::OrderExceeded { i: 0, j: 1, p: self.p, q: self.q });
        }
        let mut out = Self::zero(self.base(), (self.p, self.q - 1));
        for i in 0..=self.p {
            for j in 1..=self.q {
                *out.at_mut(i, j - 1) = self.coeff(i, j) * j as f64;
            }
        }
        Ok(out)
    }

    /// Keeps only coefficients up to the given orders.
    pub fn truncate(&self, p: usize, q: usize) -> Result<Self> {
        if p > self.p || q > self.q {
            return Err(Error::OrderExceeded { i: p, j: q, p: self.p, q: self.q });
        }
        let mut out = Self::zero(self.base(), (p, q));
        for i in 0..=p {
            for j in 0..=q {
                *out.at_mut(i, j) = self.coeff(i, j);
            }
        }
        Ok(out)
    }

    /// ∂^{i+j} f / ∂z^i ∂z̄^j at the base point.
    pub fn wirtinger_derivative(&self, i: usize, j: usize) -> Result<C> {
        if i > self.p || j > self.q {
            return Err(Error::OrderExceeded { i, j, p: self.p, q: self.q });
        }
        Ok(self.coeff(i, j) * (factorial(i) * factorial(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn variable_examples() {
        let z = WirtingerJet::variable(Variable::Z, (c(2.0, 0.0), c(2.0, 0.0)), (3, 0));
        assert_eq!(z.coeffs(), &[c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let w = WirtingerJet::variable(Variable::ZBar, (c(0.0, 1.0), c(0.0, -1.0)), (0, 1));
        assert_eq!(w.coeffs(), &[c(0.0, -1.0), c(1.0, 0.0)]);
        assert_eq!(z.coeff(1, 0), c(1.0, 0.0));
    }

    #[test]
    fn product_examples() {
        let seed = JetSeed::new((c(1.0, 0.0), c(1.0, 0.0)), (2, 0));
        let sq = seed.z().mul(&seed.z()).unwrap();
        assert_eq!(sq.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let one = seed.constant(c(1.0, 0.0));
        assert_eq!(sq.mul(&one).unwrap(), sq);
        let seed = JetSeed::new((c(0.3, 0.2), c(0.3, -0.2)), (2, 2));
        assert_eq!(seed.z().mul(&seed.zbar()).unwrap().coeff(1, 1), c(1.0, 0.0));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = JetSeed::diagonal(c(1.0, 0.0), (2, 1)).z();
        let b = JetSeed::diagonal(c(1.0, 0.0), (1, 1)).z();
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
        let b = JetSeed::diagonal(c(2.0, 0.0), (2, 1)).z();
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn exp_examples() {
        let seed = JetSeed::diagonal(c(0.0, 0.0), (4, 0));
        assert_eq!(seed.constant(c(0.0, 0.0)).exp(), seed.constant(c(1.0, 0.0)));
        let e = seed.z().exp();
        for k in 0..=4 {
            assert!(close(e.coeff(k, 0), c(1.0 / factorial(k), 0.0), 1e-15));
        }
        let (alpha, z0) = (1.3, c(0.7, -0.4));
        let seed = JetSeed::diagonal(z0, (2, 2));
        let g = seed.z().mul(&seed.zbar()).unwrap().scale(c(-alpha, 0.0)).exp();
        let r2 = z0.norm_sqr();
        let want = c((-alpha + alpha * alpha * r2) * (-alpha * r2).exp(), 0.0);
        assert!(close(g.coeff(1, 1), want, 1e-13));
    }

    #[test]
    fn pow_examples() {
        let seed = JetSeed::diagonal(c(1.0, 0.0), (1, 0));
        let h = seed.z().pow_principal(0.5).unwrap();
        assert!(close(h.coeff(0, 0), c(1.0, 0.0), 1e-15));
        assert!(close(h.coeff(1, 0), c(0.5, 0.0), 1e-15));
        let seed = JetSeed::diagonal(c(2.0, 1.0), (3, 2));
        let a = seed.z().mul(&seed.zbar()).unwrap().add(&seed.z()).unwrap();
        assert_eq!(a.pow_principal(1.0).unwrap(), a.powi(1).unwrap());
        assert!(close(a.pow_principal(1.0).unwrap().coeff(1, 1), a.coeff(1, 1), 1e-15));
        let z0 = c(2.0, 1.0);
        let beta = 0.75;
        let p = JetSeed::diagonal(z0, (1, 0)).z().pow_principal(beta).unwrap();
        assert!(close(p.coeff(1, 0), z0.powf(beta - 1.0) * beta, 1e-12));
    }

    #[test]
    fn pow_refuses_cut_and_zero() {
        let seed = JetSeed::diagonal(c(-2.0, 0.0), (2, 0));
        assert!(matches!(seed.z().pow_principal(0.5), Err(Error::BranchCut(_))));
        assert!(seed.z().pow_principal(3.0).is_ok());
        let seed = JetSeed::diagonal(c(0.0, 0.0), (2, 0));
        assert!(matches!(seed.z().pow_principal(0.5), Err(Error::ZeroBase(_))));
    }

    #[test]
    fn wirtinger_examples() {
        let z0 = c(0.6, 1.1);
        let seed = JetSeed::diagonal(z0, (2, 2));
        let f = seed.z().powi(2).unwrap().mul(&seed.zbar()).unwrap();
        assert!(close(f.wirtinger_derivative(1, 1).unwrap(), z0 * 2.0, 1e-15));
        let alpha = 0.8;
        let g = seed.z().mul(&seed.zbar()).unwrap().scale(c(-alpha, 0.0)).exp();
        let want = -alpha * z0.conj() * (-alpha * z0.norm_sqr()).exp();
        assert!(close(g.wirtinger_derivative(1, 0).unwrap(), want, 1e-14));
        assert!(matches!(g.wirtinger_derivative(3, 0), Err(Error::OrderExceeded { .. })));
    }

    #[test]
    fn derivative_matches_coefficient_shift() {
        let seed = JetSeed::diagonal(c(0.9, 0.4), (3, 3));
        let f = seed.z().mul(&seed.zbar()).unwrap().scale(c(-0.5, 0.0)).exp().mul(&seed.z().powi(3).unwrap()).unwrap();
        let fz = f.derivative_z().unwrap();
        let fzb = f.derivative_zbar().unwrap();
        for (i, j) in [(0, 0), (1, 1), (2, 0), (0, 2), (1, 2)] {
            assert!(close(fz.wirtinger_derivative(i, j).unwrap(), f.wirtinger_derivative(i + 1, j).unwrap(), 1e-14));
            assert!(close(fzb.wirtinger_derivative(j, i).unwrap(), f.wirtinger_derivative(j, i + 1).unwrap(), 1e-14));
        }
    }

    #[test]
    fn recip_and_ln_invert() {
        let seed = JetSeed::diagonal(c(1.2, -0.7), (3, 3));
        let a = seed.z().mul(&seed.zbar()).unwrap().add(&seed.z().scale(c(0.3, 1.0))).unwrap().add_scalar(c(2.0, 0.0));
        let one = a.mul(&a.recip().unwrap()).unwrap();
        let back = a.ln().unwrap().exp();
        for i in 0..=3 {
            for j in 0..=3 {
                let id = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((one.coeff(i, j) - c(id, 0.0)).norm() < 1e-14);
                assert!((back.coeff(i, j) - a.coeff(i, j)).norm() < 1e-14 * a.coeff(0, 0).norm());
            }
        }
    }
}

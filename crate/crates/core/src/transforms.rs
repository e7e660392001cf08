//! Integral representations of ψ and the Bargmann-type transforms, evaluated
//! by Gaussian quadrature.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::numerics::{bessel_j, factorial, gamma, laguerre_complex};
use crate::psi::{FamilyParams, ModeIndex, PuncturedPoint};
use crate::quad::{gauss_laguerre_rule, gaussian_weighted_c, gaussian_weighted_c2};

type C = Complex64;

/// Per-axis Gauss–Hermite order for integrals over ℂ.
pub const PLANE_ORDER: usize = 40;
/// Per-axis Gauss–Hermite order for integrals over ℂ².
pub const C2_ORDER: usize = 24;
/// Gauss–Laguerre order for the Bessel representation.
pub const BESSEL_ORDER: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    BargmannForward,
    BargmannInverse,
    STransform,
    BesselRep,
    GaussianRepC2,
    MonomialProjectionRep,
    GA3Rep,
    LaguerreIntegralFormula,
}

impl TransformKind {
    pub const ALL: [TransformKind; 8] = [
        TransformKind::BargmannForward,
        TransformKind::BargmannInverse,
        TransformKind::STransform,
        TransformKind::BesselRep,
        TransformKind::GaussianRepC2,
        TransformKind::MonomialProjectionRep,
        TransformKind::GA3Rep,
        TransformKind::LaguerreIntegralFormula,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::BargmannForward => "bargmann-forward",
            TransformKind::BargmannInverse => "bargmann-inverse",
            TransformKind::STransform => "s-transform",
            TransformKind::BesselRep => "bessel",
            TransformKind::GaussianRepC2 => "gaussian-c2",
            TransformKind::MonomialProjectionRep => "monomial-projection",
            TransformKind::GA3Rep => "ga3",
            TransformKind::LaguerreIntegralFormula => "laguerre-integral",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransformKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown transform '{s}'")))
    }
}

/// A transform with its family and fixed index (m for the Bargmann pair,
/// n for the S-transform).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub which: TransformKind,
    pub params: FamilyParams,
    pub fixed_index: i64,
}

impl TransformSpec {
    pub fn new(which: TransformKind, params: FamilyParams, fixed_index: i64) -> Result<Self> {
        match which {
            TransformKind::BargmannForward | TransformKind::BargmannInverse => {
                ModeIndex::new(0, fixed_index).check(&params)?;
            }
            TransformKind::STransform if fixed_index < 0 => {
                return domain(format!("S-transform index n = {fixed_index} must be nonnegative"));
            }
            _ => {}
        }
        Ok(Self { which, params, fixed_index })
    }
}

fn integer_beta(params: &FamilyParams) -> Result<i64> {
    params
        .beta_rounded()
        .ok_or_else(|| Error::Domain(format!("beta = {} is not an integer; branch-carrying integrands are refused", params.beta())))
}

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn bessel_parts(params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint) -> Result<(f64, f64, f64, C)> {
    idx.check(params)?;
    let beta = params.beta();
    let nu = beta + idx.m as f64 - idx.n as f64;
    if nu <= -1.0 {
        return domain(format!("Bessel order beta + m - n = {nu} must exceed -1"));
    }
    let r = z.z().norm();
    let alpha = params.alpha();
    let prefactor = sign(idx.n as i64) * z.z().powi((idx.m - idx.n as i64) as i32) * (alpha * r * r).exp()
        / (alpha.sqrt() * r).powf(nu);
    Ok((nu, r, alpha, prefactor))
}

/// ψ from its Bessel representation
/// (-1)^n z^{m-n} e^{α|z|²} (√α|z|)^{-ν} ∫₀^∞ e^{-t} t^{(n+m+β)/2} J_ν(2|z|√(αt)) dt,
/// ν = β + m - n. The rule is GaussLaguerre(β + m), which absorbs the
/// t^{ν/2} behaviour of the Bessel factor at the origin.
pub fn bessel_rep(params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint) -> Result<C> {
    let (nu, r, alpha, pre) = bessel_parts(params, idx, z)?;
    let a = params.beta() + idx.m as f64;
    let rule = gauss_laguerre_rule(BESSEL_ORDER, a)?;
    let e = (idx.n as f64 - a) / 2.0;
    let mut terms = Vec::with_capacity(rule.len());
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        terms.push(C::new(w * t.powf(e) * bessel_j(nu, 2.0 * r * (alpha * t).sqrt())?, 0.0));
    }
    Ok(pre * crate::numerics::sum::pairwise_sum(&terms))
}

/// The same representation after t = x², where dt = 2x dx contributes the
/// factor 2: ∫₀^∞ 2x e^{-x²} x^{n+m+β} J_ν(2|z|√α x) dx. With
/// `with_jacobian = false` the factor 2 is dropped, which halves the value.
pub fn bessel_rep_x(params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint, with_jacobian: bool) -> Result<C> {
    let (nu, r, alpha, pre) = bessel_parts(params, idx, z)?;
    let a = params.beta() + idx.m as f64;
    // ∫₀^∞ g(x) e^{-x²} x^{2a+1} dx = ½ ∫₀^∞ g(√t) e^{-t} t^a dt
    let rule = gauss_laguerre_rule(BESSEL_ORDER, a)?;
    let p = idx.n as f64 + idx.m as f64 + params.beta() + 1.0 - (2.0 * a + 1.0);
    let jac = if with_jacobian { 2.0 } else { 1.0 };
    let mut terms = Vec::with_capacity(rule.len());
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = t.sqrt();
        terms.push(C::new(jac * (w / 2.0) * x.powf(p) * bessel_j(nu, 2.0 * r * alpha.sqrt() * x)?, 0.0));
    }
    Ok(pre * crate::numerics::sum::pairwise_sum(&terms))
}

/// ψ from the integral over ℂ²
/// (1/(π² z^β)) ∫ u^m v^n (z - v̄)^β e^{-|u|²-|v|²+αv̄z̄+ūz-ūv̄} dλ(u, v).
pub fn gaussian_rep_c2(params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint) -> Result<C> {
    let beta = integer_beta(params)?;
    if beta < 0 {
        return domain("the ℂ² representation requires beta ≥ 0");
    }
    idx.check(params)?;
    if idx.m < 0 {
        return domain("the ℂ² representation requires m ≥ 0");
    }
    let zz = z.z();
    let alpha = params.alpha();
    let (m, n, b) = (idx.m as i32, idx.n as i32, beta as i32);
    let integral = gaussian_weighted_c2(
        |u, v| {
            let vb = v.conj();
            let ub = u.conj();
            Ok(u.powi(m) * v.powi(n) * (zz - vb).powi(b) * (alpha * vb * zz.conj() + ub * zz - ub * vb).exp())
        },
        C2_ORDER,
        1.0,
    )?;
    Ok(integral / (PI * PI * zz.powi(b)))
}

/// ψ from ((-1)^{m+β} α^{n+1}/(π z^β)) ∫ ξ^n ξ̄^{m+β} e^{-α(|ξ|²-|z|²+ξz-ξ̄z̄)} dλ(ξ).
pub fn ga3_rep(params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint) -> Result<C> {
    let beta = integer_beta(params)?;
    idx.check(params)?;
    let q = idx.m + beta;
    if q < 0 {
        return domain("requires beta + m ≥ 0");
    }
    let zz = z.z();
    let alpha = params.alpha();
    let n = idx.n as i32;
    let integral = gaussian_weighted_c(
        |x| Ok(x.powi(n) * x.conj().powi(q as i32) * (-alpha * (-zz.norm_sqr() + x * zz - x.conj() * zz.conj())).exp()),
        PLANE_ORDER,
        alpha,
    )?;
    Ok(sign(q) * alpha.powi(n + 1) / (PI * zz.powi(beta as i32)) * integral)
}

/// ψ_{n,k} as the Gaussian projection (1/(π z^β)) ∫ v^n (z - v̄)^{β+k} e^{αz̄v̄} e^{-|v|²} dλ(v).
pub fn monomial_projection_rep(params: &FamilyParams, n: usize, k: i64, z: &PuncturedPoint) -> Result<C> {
    let beta = integer_beta(params)?;
    ModeIndex::new(n, k).check(params)?;
    let q = beta + k;
    if q < 0 {
        return domain("requires beta + k ≥ 0");
    }
    let zz = z.z();
    let alpha = params.alpha();
    let integral = gaussian_weighted_c(
        |v| Ok(v.powi(n as i32) * (zz - v.conj()).powi(q as i32) * (alpha * zz.conj() * v.conj()).exp()),
        PLANE_ORDER,
        1.0,
    )?;
    Ok(integral / (PI * zz.powi(beta as i32)))
}

/// Both sides of
/// L_n^{(β-n)}(α|z|² - uz) = ((-1)^n z^{n-β}/(n! π)) ∫ v̄^n (z - v)^β e^{αvz̄-uv} e^{-|v|²} dλ(v).
/// α = 0 is allowed here. Returns (integral, direct Laguerre value).
pub fn laguerre_integral_formula(alpha: f64, beta: f64, n: usize, u: C, z: &PuncturedPoint) -> Result<(C, C)> {
    if !(alpha >= 0.0) {
        return domain("alpha must be nonnegative");
    }
    let b = beta.round();
    if (beta - b).abs() > crate::psi::INTEGER_TOLERANCE || b < 0.0 {
        return domain(format!("beta = {beta} must be a nonnegative integer for exact quadrature"));
    }
    let b = b as i32;
    let zz = z.z();
    let integral = gaussian_weighted_c(
        |v| Ok(v.conj().powi(n as i32) * (zz - v).powi(b) * (alpha * v * zz.conj() - u * v).exp()),
        PLANE_ORDER,
        1.0,
    )?;
    let lhs = sign(n as i64) * zz.powi(n as i32 - b) / (factorial(n) * PI) * integral;
    let direct = laguerre_complex(n, b as f64 - n as f64, alpha * zz.norm_sqr() - u * zz);
    Ok((lhs, direct))
}

/// The orthonormal Gaussian basis e_n(w) = (α^{n+1}/(π n!))^{1/2} w^n.
pub fn basis_e(n: usize, alpha: f64, w: C) -> C {
    basis_norm(n, alpha) * w.powi(n as i32)
}

fn basis_norm(n: usize, alpha: f64) -> f64 {
    (alpha.powi(n as i32 + 1) / (PI * factorial(n))).sqrt()
}

fn bargmann_constant(params: &FamilyParams, m: i64) -> f64 {
    let a = params.beta() + m as f64;
    params.alpha() / PI * (params.alpha().powf(a) / gamma(a + 1.0)).sqrt()
}

/// Constant c with 𝓑_m e_n = c ψ_{n,m}.
pub fn bargmann_image_constant(params: &FamilyParams, n: usize, m: i64) -> f64 {
    let a = params.beta() + m as f64;
    let alpha = params.alpha();
    (alpha.powf(a + 1.0) / (PI * alpha.powi(n as i32) * gamma(a + 1.0) * factorial(n))).sqrt()
}

fn bargmann_power(spec: &TransformSpec) -> Result<i32> {
    match spec.which {
        TransformKind::BargmannForward | TransformKind::BargmannInverse => {}
        other => return domain(format!("spec is for {other}, not a Bargmann transform")),
    }
    let beta = integer_beta(&spec.params)?;
    let q = beta + spec.fixed_index;
    if q < 0 {
        return domain("requires beta + m ≥ 0");
    }
    Ok(q as i32)
}

/// 𝓑_m f(z) = c z^m ∫ (1 - w̄/z)^{β+m} e^{αw̄z̄} f(w) e^{-α|w|²} dλ(w),
/// c = (α/π)(α^{β+m}/Γ(β+m+1))^{1/2}.
pub fn bargmann_forward<F>(spec: &TransformSpec, f: F, z: &PuncturedPoint) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
{
    let q = bargmann_power(spec)?;
    let zz = z.z();
    let alpha = spec.params.alpha();
    let integral = gaussian_weighted_c(
        |w| Ok((1.0 - w.conj() / zz).powi(q) * (alpha * w.conj() * zz.conj()).exp() * f(w)?),
        PLANE_ORDER,
        alpha,
    )?;
    Ok(bargmann_constant(&spec.params, spec.fixed_index) * zz.powi(spec.fixed_index as i32) * integral)
}

/// (𝓑_m)⁻¹ g(w) = c ∫ z^β (z̄ - w)^{β+m} e^{αwz} g(z) e^{-α|z|²} dλ(z).
pub fn bargmann_inverse<F>(spec: &TransformSpec, g: F, w: C) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
{
    let q = bargmann_power(spec)?;
    let beta = integer_beta(&spec.params)? as i32;
    let alpha = spec.params.alpha();
    let integral = gaussian_weighted_c(
        |z| {
            if z == C::new(0.0, 0.0) {
                return Ok(C::new(0.0, 0.0));
            }
            Ok(z.powi(beta) * (z.conj() - w).powi(q) * (alpha * w * z).exp() * g(z)?)
        },
        PLANE_ORDER,
        alpha,
    )?;
    Ok(bargmann_constant(&spec.params, spec.fixed_index) * integral)
}

/// 𝓢_n f(z) = ((-1)^n n!/z^n) ∫ L_n^{(β-n)}(α|z|² - ūz) e^{ūz} f(u) e^{-|u|²} dλ(u).
/// Maps u^j to π ψ_{n,j}.
pub fn s_transform<F>(spec: &TransformSpec, f: F, z: &PuncturedPoint) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
{
    if spec.which != TransformKind::STransform {
        return domain(format!("spec is for {}, not the S-transform", spec.which));
    }
    let beta = spec.params.beta();
    if beta <= -1.0 {
        return domain("the S-transform requires beta > -1");
    }
    let n = spec.fixed_index as usize;
    let zz = z.z();
    let alpha = spec.params.alpha();
    let integral = gaussian_weighted_c(
        |u| {
            let ub = u.conj();
            Ok(laguerre_complex(n, beta - n as f64, alpha * zz.norm_sqr() - ub * zz) * (ub * zz).exp() * f(u)?)
        },
        PLANE_ORDER,
        1.0,
    )?;
    Ok(sign(n as i64) * factorial(n) * zz.powi(-(n as i32)) * integral)
}

/// Factor λ_j with 𝓢_n e_j = λ_j ψ_{n,j}, for e_j built with the family's α.
pub fn s_transform_image_constant(alpha: f64, j: usize) -> f64 {
    PI * basis_norm(j, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::psi;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn pt(re: f64, im: f64) -> PuncturedPoint {
        PuncturedPoint::new(c(re, im)).unwrap()
    }

    fn fam(a: f64, b: f64) -> FamilyParams {
        FamilyParams::new(a, b).unwrap()
    }

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn bessel_examples() {
        let v = bessel_rep(&fam(1.0, 0.0), &ModeIndex::new(0, 0), &pt(0.7, 0.4)).unwrap();
        assert!((v - 1.0).norm() < 1e-10);
        let p = fam(1.0, 0.5);
        let idx = ModeIndex::new(1, 1);
        let z = pt(1.0, 0.0);
        let want = psi(&p, &idx, z.z()).unwrap();
        assert!(rel(bessel_rep(&p, &idx, &z).unwrap(), want) <= 1e-7);
        assert!(rel(bessel_rep_x(&p, &idx, &z, true).unwrap(), want) <= 1e-7);
        let half = bessel_rep_x(&p, &idx, &z, false).unwrap();
        assert!(rel(half * 2.0, want) <= 1e-7);
        let z = pt(1.2, -0.9);
        let v = bessel_rep(&fam(1.7, 0.3), &ModeIndex::new(0, 2), &z).unwrap();
        assert!(rel(v, z.z().powi(2)) <= 1e-8);
        assert!(bessel_rep(&fam(1.0, 0.5), &ModeIndex::new(3, 0), &z).is_err());
    }

    #[test]
    fn bessel_grid() {
        for &(a, b) in &[(1.0, 0.0), (2.0, 0.5), (0.5, 1.7)] {
            let p = fam(a, b);
            for n in 0..=6usize {
                for m in 0..=6i64 {
                    if b + m as f64 - n as f64 <= -1.0 {
                        continue;
                    }
                    for z in [c(0.3, 0.2), c(1.1, -0.7), c(-1.2, 1.4)] {
                        let idx = ModeIndex::new(n, m);
                        let want = psi(&p, &idx, z).unwrap();
                        let got = bessel_rep(&p, &idx, &PuncturedPoint::new(z).unwrap()).unwrap();
                        assert!((got - want).norm() <= 1e-7 * want.norm().max(1.0), "{a} {b} {n} {m} {z}: {got} vs {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn c2_examples() {
        let v = gaussian_rep_c2(&fam(1.3, 0.0), &ModeIndex::new(0, 0), &pt(0.8, 0.3)).unwrap();
        assert!((v - 1.0).norm() < 1e-9);
        let v = gaussian_rep_c2(&fam(1.0, 0.0), &ModeIndex::new(1, 0), &pt(1.0, 1.0)).unwrap();
        assert!((v - c(1.0, -1.0)).norm() <= 1e-9);
        let p = fam(1.3, 1.0);
        let idx = ModeIndex::new(1, 1);
        let z = pt(2.0, 0.0);
        assert!(rel(gaussian_rep_c2(&p, &idx, &z).unwrap(), psi(&p, &idx, z.z()).unwrap()) <= 1e-8);
        assert!(gaussian_rep_c2(&fam(1.0, 0.5), &idx, &z).is_err());
    }

    #[test]
    fn ga3_examples() {
        let v = ga3_rep(&fam(1.3, 0.0), &ModeIndex::new(0, 0), &pt(0.5, 0.5)).unwrap();
        assert!((v - 1.0).norm() < 1e-9);
        for (p, idx, z, tol) in [
            (fam(1.3, 0.0), ModeIndex::new(1, 0), pt(1.0, 0.0), 1e-9),
            (fam(1.3, 1.0), ModeIndex::new(2, 1), pt(1.0, 0.5), 1e-8),
            (fam(1.3, -1.0), ModeIndex::new(3, 2), pt(0.7, -0.9), 1e-8),
        ] {
            assert!(rel(ga3_rep(&p, &idx, &z).unwrap(), psi(&p, &idx, z.z()).unwrap()) <= tol);
        }
    }

    #[test]
    fn projection_examples() {
        let v = monomial_projection_rep(&fam(1.3, 0.0), 0, 0, &pt(1.0, 1.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-9);
        let v = monomial_projection_rep(&fam(1.0, 0.0), 1, 0, &pt(1.0, 1.0)).unwrap();
        assert!((v - c(1.0, -1.0)).norm() <= 1e-8);
        let p = fam(1.3, 1.0);
        let z = pt(2.0, 0.0);
        assert!(rel(monomial_projection_rep(&p, 1, 1, &z).unwrap(), psi(&p, &ModeIndex::new(1, 1), z.z()).unwrap()) <= 1e-7);
        assert!(monomial_projection_rep(&fam(1.0, 0.5), 1, 1, &z).is_err());
    }

    #[test]
    fn laguerre_integral_examples() {
        let (a, b) = laguerre_integral_formula(1.3, 0.0, 0, c(0.0, 0.0), &pt(1.0, 0.0)).unwrap();
        assert!((a - 1.0).norm() < 1e-12 && (b - 1.0).norm() < 1e-15);
        let (a, b) = laguerre_integral_formula(1.0, 0.0, 1, c(0.0, 0.0), &pt(1.0, 0.0)).unwrap();
        assert!((a - b).norm() <= 1e-9 * b.norm().max(1.0));
        let (a, b) = laguerre_integral_formula(1.3, 1.0, 2, c(0.3, 0.0), &pt(1.0, 1.0)).unwrap();
        assert!(rel(a, b) <= 1e-8);
        let (a, b) = laguerre_integral_formula(0.0, 2.0, 3, c(-1.0, 0.0), &pt(0.6, 0.2)).unwrap();
        assert!(rel(a, b) <= 1e-8);
    }

    #[test]
    fn bargmann_examples() {
        let alpha = 1.3;
        for (m, beta, n, z) in [(0, 0.0, 0, c(0.5, 0.2)), (0, 0.0, 1, c(1.0, 1.0)), (1, 1.0, 2, c(1.0, -0.5))] {
            let p = fam(alpha, beta);
            let spec = TransformSpec::new(TransformKind::BargmannForward, p, m).unwrap();
            let z = PuncturedPoint::new(z).unwrap();
            let got = bargmann_forward(&spec, |w| Ok(basis_e(n, alpha, w)), &z).unwrap();
            let want = bargmann_image_constant(&p, n, m) * psi(&p, &ModeIndex::new(n, m), z.z()).unwrap();
            assert!(rel(got, want) <= 1e-9, "m={m} n={n}");
        }
        let p = fam(1.0, 0.0);
        let spec = TransformSpec::new(TransformKind::BargmannForward, p, 0).unwrap();
        let got = bargmann_forward(&spec, |w| Ok(basis_e(0, 1.0, w)), &pt(0.3, 0.1)).unwrap();
        assert!((got - 1.0 / PI.sqrt()).norm() <= 1e-10);
    }

    #[test]
    fn bargmann_round_trip() {
        let alpha = 1.3;
        for (m, beta, n, w) in [(0, 0.0, 0, c(0.5, 0.0)), (0, 0.0, 1, c(0.3, 0.4)), (1, 1.0, 2, c(0.6, -0.2))] {
            let p = fam(alpha, beta);
            let spec = TransformSpec::new(TransformKind::BargmannInverse, p, m).unwrap();
            let k = bargmann_image_constant(&p, n, m);
            let idx = ModeIndex::new(n, m);
            let back = bargmann_inverse(&spec, |z| Ok(k * psi(&p, &idx, z)?), w).unwrap();
            assert!(rel(back, basis_e(n, alpha, w)) <= 1e-9, "m={m} n={n}");
        }
    }

    #[test]
    fn s_transform_proportionality() {
        let alpha = 1.3;
        for (n, beta, j) in [(0usize, 0.0, 0usize), (1, 0.0, 0), (1, 0.5, 2), (2, 1.5, 1)] {
            let p = fam(alpha, beta);
            let spec = TransformSpec::new(TransformKind::STransform, p, n as i64).unwrap();
            for z in [c(1.0, 1.0), c(0.5, -0.3), c(1.2, 0.1)] {
                let zp = PuncturedPoint::new(z).unwrap();
                let got = s_transform(&spec, |u| Ok(basis_e(j, alpha, u)), &zp).unwrap();
                let want = s_transform_image_constant(alpha, j) * psi(&p, &ModeIndex::new(n, j as i64), z).unwrap();
                assert!(rel(got, want) <= 1e-8, "n={n} j={j} z={z}");
            }
        }
    }

    #[test]
    fn specs_validate() {
        assert!(TransformSpec::new(TransformKind::BargmannForward, fam(1.0, 0.0), -1).is_err());
        assert!(TransformSpec::new(TransformKind::STransform, fam(1.0, 0.0), -1).is_err());
        assert_eq!("ga3".parse::<TransformKind>().unwrap(), TransformKind::GA3Rep);
    }
}

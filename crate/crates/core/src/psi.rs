//! The family ψ_{n,m}^{α,β}: parameter types, five evaluation routes, the
//! weight, the closed-form norm and the bi-order classifier.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::jets::{JetSeed, WirtingerJet};
use crate::numerics::{
    binomial, falling_gamma_ratio, hyp2f0_terminating, kummer_1f1_terminating, laguerre,
    ln_gamma, sum::compensated_sum_complex, SignedLogValue,
};

type C = Complex64;

/// |β - round(β)| at or below this counts as an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-9;
/// Default angular distance from the negative real axis (radians).
pub const DEFAULT_BRANCH_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    alpha: f64,
    beta: f64,
    beta_is_integer: bool,
    beta_rounded: i64,
}

impl FamilyParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return domain(format!("alpha must be positive and finite, got {alpha}"));
        }
        if !beta.is_finite() {
            return domain(format!("beta must be finite, got {beta}"));
        }
        let rounded = beta.round();
        let beta_is_integer = (beta - rounded).abs() <= INTEGER_TOLERANCE;
        Ok(Self { alpha, beta, beta_is_integer, beta_rounded: rounded as i64 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// β as used in every formula: snapped to the integer when classified so.
    pub fn beta(&self) -> f64 {
        if self.beta_is_integer {
            self.beta_rounded as f64
        } else {
            self.beta
        }
    }

    /// β exactly as supplied.
    pub fn beta_input(&self) -> f64 {
        self.beta
    }

    pub fn beta_is_integer(&self) -> bool {
        self.beta_is_integer
    }

    pub fn beta_rounded(&self) -> Option<i64> {
        self.beta_is_integer.then_some(self.beta_rounded)
    }

    /// The doubled pair (2α, 2β) carried by the magnetic eigenfunctions.
    pub fn doubled(&self) -> Self {
        Self::new(2.0 * self.alpha, 2.0 * self.beta()).expect("doubling keeps parameters valid")
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} beta_class={}",
            self.alpha,
            self.beta,
            if self.beta_is_integer { "integer" } else { "non-integer" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub n: usize,
    pub m: i64,
}

impl ModeIndex {
    pub fn new(n: usize, m: i64) -> Self {
        Self { n, m }
    }

    pub fn is_admissible(&self, params: &FamilyParams) -> bool {
        match params.beta_rounded() {
            Some(b) => self.m + b >= 0,
            None => self.m as f64 + params.beta() > -1.0,
        }
    }

    pub fn check(&self, params: &FamilyParams) -> Result<()> {
        if self.is_admissible(params) {
            Ok(())
        } else {
            let rule = if params.beta_is_integer() { "m + beta >= 0" } else { "m + beta > -1" };
            Err(Error::InadmissibleIndex(format!("m = {} violates {rule} for beta = {}", self.m, params.beta())))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuncturedPoint {
    z: C,
}

impl PuncturedPoint {
    pub fn new(z: C) -> Result<Self> {
        if z == C::new(0.0, 0.0) {
            return domain("the origin is excluded from the punctured plane");
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return domain(format!("non-finite point {z}"));
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> C {
        self.z
    }

    /// Refuses points within `margin` radians of the negative real axis when
    /// β is not an integer.
    pub fn check_branch(&self, params: &FamilyParams, margin: f64) -> Result<()> {
        if params.beta_is_integer() {
            return Ok(());
        }
        let gap = std::f64::consts::PI - self.z.arg().abs();
        if gap < margin {
            return Err(Error::BranchCut(format!(
                "z = {} lies {gap:e} rad from the negative real axis (margin {margin:e}) with non-integer beta",
                self.z
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiOrder {
    pub r: i64,
    pub s: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalRoute {
    ExplicitSum,
    LaguerreForm,
    Kummer1F1,
    Hyp2F0,
    RodriguesJet,
}

impl EvalRoute {
    pub const ALL: [EvalRoute; 5] = [
        EvalRoute::ExplicitSum,
        EvalRoute::LaguerreForm,
        EvalRoute::Kummer1F1,
        EvalRoute::Hyp2F0,
        EvalRoute::RodriguesJet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EvalRoute::ExplicitSum => "explicit",
            EvalRoute::LaguerreForm => "laguerre",
            EvalRoute::Kummer1F1 => "kummer",
            EvalRoute::Hyp2F0 => "hyp2f0",
            EvalRoute::RodriguesJet => "rodrigues",
        }
    }

    pub fn is_branch_sensitive(&self) -> bool {
        matches!(self, EvalRoute::RodriguesJet)
    }
}

impl fmt::Display for EvalRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EvalRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown route '{s}' (explicit, laguerre, kummer, hyp2f0, rodrigues)")))
    }
}

/// ρ_{α,β}(z) = |z|^{2β} e^{-α|z|²}.
pub fn weight_rho(params: &FamilyParams, z: &PuncturedPoint) -> f64 {
    let r2 = z.z().norm_sqr();
    (params.beta() * r2.ln() - params.alpha() * r2).exp()
}

/// n ∧* b: the ordinary minimum for integer b, n otherwise.
pub fn starred_min(n: usize, b: f64, b_is_integer: bool) -> i64 {
    if b_is_integer {
        (n as i64).min(b.round() as i64)
    } else {
        n as i64
    }
}

fn s_star(params: &FamilyParams, idx: &ModeIndex) -> i64 {
    starred_min(idx.n, params.beta() + idx.m as f64, params.beta_is_integer())
}

/// c_{m,n,k} in signed-log form.
pub fn coeff_c_log(params: &FamilyParams, m: i64, n: usize, k: usize) -> SignedLogValue {
    assert!(k <= n, "coefficient index k = {k} exceeds n = {n}");
    let mut v = SignedLogValue::from_f64(binomial(n, k))
        .mul(SignedLogValue::falling(params.beta() + m as f64, k))
        .mul_pow(params.alpha(), (n - k) as f64);
    if k % 2 == 1 {
        v = v.negate();
    }
    v
}

/// c_{m,n,k} = (-1)^k C(n,k) (β+m)(β+m-1)⋯(β+m-k+1) α^{n-k}.
pub fn coeff_c(params: &FamilyParams, m: i64, n: usize, k: usize) -> f64 {
    coeff_c_log(params, m, n, k).to_f64()
}

fn explicit_sum(params: &FamilyParams, idx: &ModeIndex, z: C) -> C {
    let top = s_star(params, idx).max(0) as usize;
    let zb = z.conj();
    compensated_sum_complex((0..=top).map(|k| {
        let c = coeff_c(params, idx.m, idx.n, k);
        z.powi((idx.m - k as i64) as i32) * zb.powi((idx.n - k) as i32) * c
    }))
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn laguerre_form(params: &FamilyParams, idx: &ModeIndex, z: C) -> C {
    let n = idx.n;
    let a = params.beta() + idx.m as f64 - n as f64;
    let x = params.alpha() * z.norm_sqr();
    let pref = sign(n) * crate::numerics::factorial(n);
    z.powi((idx.m - n as i64) as i32) * (pref * laguerre(n, a, x))
}

fn kummer_form(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<C> {
    let n = idx.n;
    let bm = params.beta() + idx.m as f64;
    let c = bm - n as f64 + 1.0;
    let x = params.alpha() * z.norm_sqr();
    let zp = z.powi((idx.m - n as i64) as i32);
    match kummer_1f1_terminating(n, c, x) {
        Ok(f) => Ok(zp * (sign(n) * falling_gamma_ratio(bm, n) * f)),
        Err(Error::PoleInDenominator(_)) => {
            // Removable singularity: the prefactor Γ(β+m+1)/Γ(c) cancels
            // (c)_k term by term, leaving falling(β+m, n-k).
            let mut term = 1.0;
            let mut terms = Vec::with_capacity(n + 1);
            for k in 0..=n {
                if k > 0 {
                    term *= (k as f64 - 1.0 - n as f64) * x / k as f64;
                }
                terms.push(term * falling_gamma_ratio(bm, n - k));
            }
            Ok(zp * (sign(n) * crate::numerics::sum::compensated_sum(terms)))
        }
        Err(e) => Err(e),
    }
}

fn hyp2f0_form(params: &FamilyParams, idx: &ModeIndex, z: C) -> C {
    let n = idx.n;
    let x = -1.0 / (params.alpha() * z.norm_sqr());
    let f = hyp2f0_terminating(n, -params.beta() - idx.m as f64, x);
    z.powi(idx.m as i32) * z.conj().powi(n as i32) * (params.alpha().powi(n as i32) * f)
}

/// Rodrigues formula at an arbitrary base (ζ, ω): the n-th ζ-derivative of
/// ζ^{β+m} e^{-αζω} is taken on a jet with ω frozen.
pub fn rodrigues_at_base(params: &FamilyParams, idx: &ModeIndex, base: (C, C)) -> Result<C> {
    let (a, b) = base;
    let n = idx.n;
    let seed = JetSeed::new(base, (n, 0));
    let zeta = seed.z();
    let pow = zeta.pow_principal(params.beta() + idx.m as f64)?;
    let gauss = zeta.scale(-params.alpha() * b).exp();
    let g = pow.mul(&gauss)?;
    let deriv = g.wirtinger_derivative(n, 0)?;
    let z_minus_beta = if params.beta_is_integer() {
        a.powi(-(params.beta_rounded().unwrap_or(0) as i32))
    } else {
        (a.ln() * -params.beta()).exp()
    };
    Ok(deriv * z_minus_beta * (params.alpha() * a * b).exp() * sign(n))
}

/// ψ_{n,m}^{α,β}(z) by the selected route.
pub fn eval_psi(route: EvalRoute, params: &FamilyParams, idx: &ModeIndex, z: &PuncturedPoint) -> Result<C> {
    idx.check(params)?;
    let zv = z.z();
    match route {
        EvalRoute::ExplicitSum => Ok(explicit_sum(params, idx, zv)),
        EvalRoute::LaguerreForm => Ok(laguerre_form(params, idx, zv)),
        EvalRoute::Kummer1F1 => kummer_form(params, idx, zv),
        EvalRoute::Hyp2F0 => Ok(hyp2f0_form(params, idx, zv)),
        EvalRoute::RodriguesJet => {
            z.check_branch(params, DEFAULT_BRANCH_MARGIN)?;
            rodrigues_at_base(params, idx, (zv, zv.conj()))
        }
    }
}

/// ψ by the explicit sum. The punctured-plane check is the only guard.
pub fn psi(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<C> {
    eval_psi(EvalRoute::ExplicitSum, params, idx, &PuncturedPoint::new(z)?)
}

/// Jet of ψ_{n,m} at an arbitrary seed: Σ_k c_k ζ^{m-k} ω^{n-k}.
pub fn psi_jet(params: &FamilyParams, idx: &ModeIndex, seed: JetSeed) -> Result<WirtingerJet> {
    idx.check(params)?;
    let top = s_star(params, idx).max(0) as usize;
    let zeta = seed.z();
    let omega = seed.zbar();
    let mut acc = seed.constant(C::new(0.0, 0.0));
    for k in 0..=top {
        let c = coeff_c(params, idx.m, idx.n, k);
        let term = zeta
            .powi((idx.m - k as i64) as i32)?
            .mul(&omega.powi((idx.n - k) as i32)?)?
            .scale(C::new(c, 0.0));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Σ_k |c_k| |z|^{m+n-2k}, the magnitude scale of the explicit sum at z.
/// Cancellation in any route is measured against it.
pub fn term_scale(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<f64> {
    idx.check(params)?;
    let s = s_star(params, idx).max(0) as usize;
    let lr = z.norm().ln();
    let mut acc = 0.0;
    for k in 0..=s {
        let c = coeff_c_log(params, idx.m, idx.n, k);
        if c.is_zero() {
            continue;
        }
        acc += (c.log_magnitude + (idx.m + idx.n as i64 - 2 * k as i64) as f64 * lr).exp();
    }
    Ok(acc)
}

/// ‖ψ_{n,m}‖² = π α^n n! Γ(β+m+1) / α^{m+β+1}.
pub fn norm_sq(params: &FamilyParams, idx: &ModeIndex) -> Result<f64> {
    idx.check(params)?;
    let bm1 = params.beta() + idx.m as f64 + 1.0;
    if bm1 <= 0.0 {
        return Err(Error::InadmissibleIndex(format!("beta + m + 1 = {bm1} must be positive")));
    }
    let ln_alpha = params.alpha().ln();
    let log = std::f64::consts::PI.ln() + idx.n as f64 * ln_alpha + ln_gamma(idx.n as f64 + 1.0)
        + ln_gamma(bm1)
        - bm1 * ln_alpha;
    Ok(log.exp())
}

/// Holomorphic and anti-holomorphic orders (m - s*, n - s*) at the origin.
pub fn biorder(params: &FamilyParams, idx: &ModeIndex) -> Result<BiOrder> {
    idx.check(params)?;
    let s = s_star(params, idx);
    Ok(BiOrder { r: idx.m - s, s: idx.n as i64 - s })
}

/// Both sides of ψ^{α,β}_{n,m} = z^{-[β]} ψ^{α,β-[β]}_{n,m+[β]}, reading the
/// undefined β̃ as the fractional part. Reported as a candidate identity.
pub fn fractional_reduction(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<(C, C)> {
    let floor = params.beta().floor();
    let frac = FamilyParams::new(params.alpha(), params.beta() - floor)?;
    let shifted = ModeIndex::new(idx.n, idx.m + floor as i64);
    let lhs = psi(params, idx, z)?;
    let rhs = psi(&frac, &shifted, z)? * z.powi(-(floor as i32));
    Ok((lhs, rhs))
}

/// A random draw of parameters, indices and evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub params: FamilyParams,
    pub idx: ModeIndex,
    pub z: C,
}

/// Parameter box for seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
    pub n_max: usize,
    pub m_max: i64,
    /// Lowest m considered; clipped further by admissibility.
    pub m_floor: i64,
    pub radius: (f64, f64),
    /// Minimum angular distance of z from the negative real axis.
    pub arg_margin: f64,
}

impl Default for SampleBox {
    fn default() -> Self {
        Self {
            alpha: (0.5, 2.0),
            beta: (-0.9, 3.0),
            n_max: 10,
            m_max: 10,
            m_floor: -3,
            radius: (0.3, 3.0),
            arg_margin: 0.1,
        }
    }
}

impl SampleBox {
    pub fn with_caps(n_max: usize, m_max: i64) -> Self {
        Self { n_max, m_max, ..Self::default() }
    }

    pub fn with_beta(mut self, lo: f64, hi: f64) -> Self {
        self.beta = (lo, hi);
        self
    }

    pub fn draw_point(&self, rng: &mut ChaCha8Rng) -> C {
        let r = rng.gen_range(self.radius.0..=self.radius.1);
        let lim = std::f64::consts::PI - self.arg_margin;
        let th = rng.gen_range(-lim..=lim);
        C::from_polar(r, th)
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> Sample {
        let alpha = rng.gen_range(self.alpha.0..=self.alpha.1);
        let beta = if self.beta.0 == self.beta.1 { self.beta.0 } else { rng.gen_range(self.beta.0..self.beta.1) };
        let params = FamilyParams::new(alpha, beta).expect("sample box keeps alpha positive");
        let m_min = (-params.beta() - 1.0).floor() as i64 + 1;
        let lo = m_min.max(self.m_floor).min(self.m_max);
        let m = rng.gen_range(lo..=self.m_max);
        let n = rng.gen_range(0..=self.n_max);
        let z = self.draw_point(rng);
        Sample { params, idx: ModeIndex::new(n, m), z }
    }

    pub fn samples(&self, seed: u64, count: usize) -> Vec<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.draw(&mut rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ito_hermite;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fam(a: f64, b: f64) -> FamilyParams {
        FamilyParams::new(a, b).unwrap()
    }

    #[test]
    fn weight_examples() {
        let e1 = (-1.0f64).exp();
        assert!((weight_rho(&fam(1.0, 0.0), &PuncturedPoint::new(c(0.0, 1.0)).unwrap()) - e1).abs() < 1e-16);
        assert!((weight_rho(&fam(2.0, 0.5), &PuncturedPoint::new(c(1.0, 0.0)).unwrap()) - (-2.0f64).exp()).abs() < 1e-16);
        let w = weight_rho(&fam(1.0, 1.0), &PuncturedPoint::new(c(0.0, 2.0)).unwrap());
        assert!((w - 4.0 * (-4.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn starred_min_examples() {
        assert_eq!(starred_min(5, 2.0, true), 2);
        assert_eq!(starred_min(5, 1.5, false), 5);
        assert_eq!(starred_min(0, 7.0, true), 0);
        assert_eq!(starred_min(0, 0.3, false), 0);
    }

    #[test]
    fn coeff_examples() {
        let p = fam(1.7, 0.4);
        assert!((coeff_c(&p, 3, 4, 0) - 1.7f64.powi(4)).abs() < 1e-13);
        assert!((coeff_c(&p, 3, 4, 1) + 4.0 * 3.4 * 1.7f64.powi(3)).abs() < 1e-12);
        assert!((coeff_c(&fam(1.0, 0.5), 2, 3, 2) - 11.25).abs() < 1e-13);
        assert_eq!(coeff_c(&fam(1.0, 2.0), 0, 5, 3), 0.0);
    }

    #[test]
    fn anchor_values() {
        for route in EvalRoute::ALL {
            let p = fam(1.3, 0.7);
            let z = PuncturedPoint::new(c(0.0, 2.0)).unwrap();
            let v = eval_psi(route, &p, &ModeIndex::new(0, 3), &z).unwrap();
            assert!((v - c(0.0, -8.0)).norm() < 1e-13, "{route}");
            let p = fam(1.0, 0.5);
            let z = PuncturedPoint::new(c(1.0, 1.0)).unwrap();
            let v = eval_psi(route, &p, &ModeIndex::new(1, 2), &z).unwrap();
            assert!((v - c(-0.5, -0.5)).norm() < 1e-13, "{route}");
            let p = fam(1.0, 0.0);
            let z = PuncturedPoint::new(c(1.0, 0.0)).unwrap();
            let v = eval_psi(route, &p, &ModeIndex::new(2, 1), &z).unwrap();
            assert!((v - c(-1.0, 0.0)).norm() < 1e-13, "{route}");
        }
    }

    #[test]
    fn kummer_route_resolves_removable_poles() {
        // c = β+m-n+1 = -1 hits a pole of (c)_k
        let p = fam(1.2, 0.0);
        let idx = ModeIndex::new(3, 1);
        let z = PuncturedPoint::new(c(0.4, 0.9)).unwrap();
        let a = eval_psi(EvalRoute::Kummer1F1, &p, &idx, &z).unwrap();
        let b = eval_psi(EvalRoute::ExplicitSum, &p, &idx, &z).unwrap();
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    #[test]
    fn inadmissible_and_branch_errors() {
        let p = fam(1.0, 0.5);
        let z = PuncturedPoint::new(c(1.0, 0.0)).unwrap();
        assert!(matches!(
            eval_psi(EvalRoute::ExplicitSum, &p, &ModeIndex::new(0, -2), &z),
            Err(Error::InadmissibleIndex(_))
        ));
        let cut = PuncturedPoint::new(c(-1.0, 1e-9)).unwrap();
        assert!(matches!(eval_psi(EvalRoute::RodriguesJet, &p, &ModeIndex::new(1, 1), &cut), Err(Error::BranchCut(_))));
        assert!(eval_psi(EvalRoute::ExplicitSum, &p, &ModeIndex::new(1, 1), &cut).is_ok());
        assert!(PuncturedPoint::new(c(0.0, 0.0)).is_err());
        assert!(ModeIndex::new(0, -2).is_admissible(&fam(1.0, 2.0)));
        assert!(!ModeIndex::new(0, -3).is_admissible(&fam(1.0, 2.0)));
    }

    #[test]
    fn near_integer_beta_is_snapped() {
        let p = fam(1.0, 2.0 + 1e-10);
        assert!(p.beta_is_integer());
        assert_eq!(p.beta(), 2.0);
        assert!(!fam(1.0, 2.0 + 1e-8).beta_is_integer());
    }

    #[test]
    fn norm_examples() {
        let pi = std::f64::consts::PI;
        assert!((norm_sq(&fam(1.0, 0.0), &ModeIndex::new(1, 1)).unwrap() - pi).abs() < 1e-14);
        assert!((norm_sq(&fam(1.0, 0.0), &ModeIndex::new(0, 0)).unwrap() - pi).abs() < 1e-14);
        let want = pi * 0.886_226_925_452_758 / 2f64.powf(1.5);
        assert!((norm_sq(&fam(2.0, 0.5), &ModeIndex::new(0, 0)).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn biorder_examples() {
        assert_eq!(biorder(&fam(1.0, 0.5), &ModeIndex::new(3, 1)).unwrap(), BiOrder { r: -2, s: 0 });
        assert_eq!(biorder(&fam(1.0, 2.0), &ModeIndex::new(5, 1)).unwrap(), BiOrder { r: -2, s: 2 });
        assert_eq!(biorder(&fam(1.0, 0.0), &ModeIndex::new(2, 5)).unwrap(), BiOrder { r: 3, s: 0 });
    }

    #[test]
    fn conjugation_symmetry_via_swapped_seed() {
        for s in SampleBox::with_caps(6, 6).samples(3, 40) {
            let a = rodrigues_at_base(&s.params, &s.idx, (s.z, s.z.conj())).unwrap();
            let b = rodrigues_at_base(&s.params, &s.idx, (s.z.conj(), s.z)).unwrap();
            assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn integer_beta_reduces_to_ito_hermite() {
        let z = c(0.8, -0.6);
        for beta in [0usize, 1, 2] {
            for (n, m) in [(2usize, 1i64), (1, 3), (3, 0), (4, 2)] {
                let p = fam(1.3, beta as f64);
                let lhs = psi(&p, &ModeIndex::new(n, m), z).unwrap() * z.powi(beta as i32);
                let sa = p.alpha().sqrt();
                let rhs = ito_hermite(m as usize + beta, n, 1.0, z * sa) * p.alpha().powf((n as f64 - m as f64 - beta as f64) / 2.0);
                assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm());
            }
        }
    }

    #[test]
    fn jet_agrees_with_pointwise() {
        let p = fam(0.9, 1.4);
        let idx = ModeIndex::new(3, -1);
        let z = c(1.1, 0.5);
        let j = psi_jet(&p, &idx, JetSeed::diagonal(z, (2, 2))).unwrap();
        assert!((j.value() - psi(&p, &idx, z).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn fractional_reduction_candidate_holds() {
        let (a, b) = fractional_reduction(&fam(1.1, 2.6), &ModeIndex::new(4, 1), c(0.7, 1.2)).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn sampling_is_reproducible_and_admissible() {
        let a = SampleBox::default().samples(42, 100);
        let b = SampleBox::default().samples(42, 100);
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.idx.is_admissible(&s.params)));
        assert!(a.iter().any(|s| s.idx.m < 0));
    }
}

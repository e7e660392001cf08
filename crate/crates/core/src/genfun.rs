//! Generating functions of ψ: truncated series against closed forms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::JetSeed;
use crate::numerics::{factorial, hyp0f1, hyp1f1_series, laguerre_complex, lower_incomplete_gamma, pochhammer};
use crate::numerics::sum::pairwise_sum;
use crate::psi::{psi, FamilyParams, ModeIndex, PuncturedPoint};

type C = Complex64;

const BRANCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    pub max_m: usize,
    pub max_n: usize,
    /// Bound on the last included term, relative to max(1, |series|).
    pub tail_bound_target: f64,
}

impl TruncationSpec {
    pub fn new(max_m: usize, max_n: usize, tail_bound_target: f64) -> Result<Self> {
        if !(tail_bound_target > 0.0) {
            return Err(Error::Domain("tail bound target must be positive".into()));
        }
        Ok(Self { max_m, max_n, tail_bound_target })
    }
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self { max_m: 60, max_n: 60, tail_bound_target: 1e-13 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenComparison {
    pub series: C,
    pub closed: C,
    /// Magnitude of the last included term (largest over both envelopes).
    pub tail_bound: f64,
    pub errata_corrected: bool,
}

impl GenComparison {
    pub fn residual(&self) -> f64 {
        (self.series - self.closed).norm() / (1.0 + self.closed.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedComparison {
    pub series: C,
    pub closed_gamma: C,
    pub closed_1f1: C,
    pub tail_bound: f64,
}

impl WeightedComparison {
    /// Largest pairwise disagreement among the three values.
    pub fn residual(&self) -> f64 {
        let s = 1.0 + self.series.norm();
        let d1 = (self.series - self.closed_gamma).norm();
        let d2 = (self.series - self.closed_1f1).norm();
        let d3 = (self.closed_gamma - self.closed_1f1).norm();
        d1.max(d2).max(d3) / s
    }
}

/// Accepts a truncation when the final envelope term is below target and
/// the envelope does not increase over the last five indices.
fn check_tail(envelope: &[f64], target: f64, scale: f64, what: &str) -> Result<f64> {
    let Some(&last) = envelope.last() else {
        return Ok(0.0);
    };
    let bound = target * scale.max(1.0);
    if !(last <= bound) {
        return Err(Error::TruncationNotConverged(format!("{what}: last term {last:.3e} exceeds {bound:.3e}")));
    }
    let start = envelope.len().saturating_sub(5);
    for w in envelope[start..].windows(2) {
        if w[1] > w[0] && w[1] > 1e-3 * bound {
            return Err(Error::TruncationNotConverged(format!("{what}: terms still growing near the cut-off")));
        }
    }
    Ok(last)
}

fn principal_pow(x: C, s: f64) -> C {
    if s == 0.0 {
        C::new(1.0, 0.0)
    } else {
        x.powf(s)
    }
}

fn require_beta_above(params: &FamilyParams, floor: f64) -> Result<()> {
    if params.beta() > floor {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!("requires beta > {floor}, got {}", params.beta())))
    }
}

fn require_inside(v: C, z: C) -> Result<()> {
    if v.norm() < z.norm() {
        Ok(())
    } else {
        Err(Error::BranchCut(format!("|v| = {} must be below |z| = {}", v.norm(), z.norm())))
    }
}

/// Σ_{m,n} u^m v^n/(m! n!) ψ_{n,m} against (1 - v/z)^β e^{zu + αvz̄ - uv}.
pub fn gen_full(u: C, v: C, params: &FamilyParams, z: &PuncturedPoint, trunc: &TruncationSpec) -> Result<GenComparison> {
    require_beta_above(params, -1.0)?;
    let zz = z.z();
    require_inside(v, zz)?;
    let closed = full_closed(u, v, params, zz);
    double_series(params, zz, trunc, closed, |m, n| {
        u.powi(m as i32) * v.powi(n as i32) / (factorial(m) * factorial(n))
    })
}

fn full_closed(u: C, v: C, params: &FamilyParams, z: C) -> C {
    principal_pow(1.0 - v / z, params.beta()) * (z * u + params.alpha() * v * z.conj() - u * v).exp()
}

fn double_series<F: Fn(usize, usize) -> C>(
    params: &FamilyParams,
    z: C,
    trunc: &TruncationSpec,
    closed: C,
    weight: F,
) -> Result<GenComparison> {
    let mut terms = Vec::with_capacity((trunc.max_m + 1) * (trunc.max_n + 1));
    let mut env_m = vec![0.0f64; trunc.max_m + 1];
    let mut env_n = vec![0.0f64; trunc.max_n + 1];
    for m in 0..=trunc.max_m {
        for n in 0..=trunc.max_n {
            let w = weight(m, n);
            let t = if w == C::new(0.0, 0.0) { w } else { w * psi(params, &ModeIndex::new(n, m as i64), z)? };
            env_m[m] = env_m[m].max(t.norm());
            env_n[n] = env_n[n].max(t.norm());
            terms.push(t);
        }
    }
    let series = pairwise_sum(&terms);
    let scale = series.norm();
    let a = check_tail(&env_m, trunc.tail_bound_target, scale, "series in m")?;
    let b = check_tail(&env_n, trunc.tail_bound_target, scale, "series in n")?;
    Ok(GenComparison { series, closed, tail_bound: a.max(b), errata_corrected: false })
}

fn single_series<F: Fn(usize) -> Result<C>>(count: usize, target: f64, what: &str, closed: C, term: F) -> Result<GenComparison> {
    let terms = (0..=count).map(&term).collect::<Result<Vec<C>>>()?;
    let env: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
    let series = pairwise_sum(&terms);
    let tail = check_tail(&env, target, series.norm(), what)?;
    Ok(GenComparison { series, closed, tail_bound: tail, errata_corrected: false })
}

/// Σ_n ψ_{n,k} v^n/n! against (z - v)^{k+β} z^{-β} e^{αvz̄}, written as
/// z^k (1 - v/z)^{k+β} e^{αvz̄}.
pub fn gen_partial_v(v: C, k: i64, params: &FamilyParams, z: &PuncturedPoint, trunc: &TruncationSpec) -> Result<GenComparison> {
    require_beta_above(params, -1.0)?;
    ModeIndex::new(0, k).check(params)?;
    let zz = z.z();
    require_inside(v, zz)?;
    let closed = partial_v_closed(v, k, params, zz);
    single_series(trunc.max_n, trunc.tail_bound_target, "series in n", closed, |n| {
        Ok(v.powi(n as i32) / factorial(n) * psi(params, &ModeIndex::new(n, k), zz)?)
    })
}

fn partial_v_closed(v: C, k: i64, params: &FamilyParams, z: C) -> C {
    z.powi(k as i32) * principal_pow(1.0 - v / z, k as f64 + params.beta()) * (params.alpha() * v * z.conj()).exp()
}

/// Σ_m u^m/m! ψ_{n,m} against (-1)^n n! z^{-n} e^{uz} L_n^{(β-n)}(α|z|² - uz).
pub fn gen_partial_u(u: C, n: usize, params: &FamilyParams, z: &PuncturedPoint, trunc: &TruncationSpec) -> Result<GenComparison> {
    require_beta_above(params, -1.0)?;
    let zz = z.z();
    let x = params.alpha() * zz.norm_sqr() - u * zz;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let closed = sign * factorial(n) * zz.powi(-(n as i32)) * (u * zz).exp() * laguerre_complex(n, params.beta() - n as f64, x);
    single_series(trunc.max_m, trunc.tail_bound_target, "series in m", closed, |m| {
        Ok(u.powi(m as i32) / factorial(m) * psi(params, &ModeIndex::new(n, m as i64), zz)?)
    })
}

/// Σ u^m v^n/((β+1)_m n!) ψ_{n,m} against the incomplete-gamma form
/// β u^{-β} z^{-β} e^{u(z-v)+αz̄v} γ(β, u(z-v)) and the ₁F₁ form
/// (1 - v/z)^β e^{αz̄v} ₁F₁(1; β+1; u(z-v)).
pub fn gen_weighted(u: C, v: C, params: &FamilyParams, z: &PuncturedPoint, trunc: &TruncationSpec) -> Result<WeightedComparison> {
    require_beta_above(params, 0.0)?;
    let zz = z.z();
    require_inside(v, zz)?;
    let beta = params.beta();
    let x = u * (zz - v);
    if !(x.re > 0.0) {
        return Err(Error::HypothesisViolated(format!("Re(u(z - v)) = {} must be positive", x.re)));
    }
    let phase = u.arg() + zz.arg() + (1.0 - v / zz).arg() - x.arg();
    if phase.abs() > BRANCH_TOLERANCE {
        return Err(Error::BranchCut("arg u + arg z + arg(1 - v/z) leaves the principal range of arg u(z - v)".into()));
    }
    let ez = (x + params.alpha() * zz.conj() * v).exp();
    let gam = lower_incomplete_gamma(beta, x)?.value;
    let closed_gamma = beta * principal_pow(u, -beta) * principal_pow(zz, -beta) * ez * gam;
    let closed_1f1 = principal_pow(1.0 - v / zz, beta) * (params.alpha() * zz.conj() * v).exp() * hyp1f1_series(1.0, beta + 1.0, x)?;
    let cmp = double_series(params, zz, trunc, closed_1f1, |m, n| {
        u.powi(m as i32) * v.powi(n as i32) / (pochhammer(beta + 1.0, m) * factorial(n))
    })?;
    Ok(WeightedComparison { series: cmp.series, closed_gamma, closed_1f1, tail_bound: cmp.tail_bound })
}

/// Σ_n t^n ψ_{n,n+k}(z) ψ_{n,n+k}(w)/(n! (1+β+k)_n) against
/// z^k w^k (1-t)^{-(β+k+1)} e^{-tα(|z|²+|w|²)/(1-t)} ₀F₁(; β+k+1; α²|z|²|w|² t/(1-t)²).
pub fn gen_bilinear(
    t: C,
    k: i64,
    params: &FamilyParams,
    z: &PuncturedPoint,
    w: &PuncturedPoint,
    trunc: &TruncationSpec,
) -> Result<GenComparison> {
    let a = params.beta() + k as f64;
    if a <= -1.0 {
        return Err(Error::HypothesisViolated(format!("beta + k = {a} must exceed -1")));
    }
    if t.norm() >= 1.0 {
        return Err(Error::HypothesisViolated(format!("|t| = {} must be below 1", t.norm())));
    }
    let (zz, ww) = (z.z(), w.z());
    let alpha = params.alpha();
    let s = 1.0 - t;
    let closed = zz.powi(k as i32)
        * ww.powi(k as i32)
        * principal_pow(s, -(a + 1.0))
        * (-t * alpha * (zz.norm_sqr() + ww.norm_sqr()) / s).exp()
        * hyp0f1(a + 1.0, alpha * alpha * zz.norm_sqr() * ww.norm_sqr() * t / (s * s))?;
    let mut cmp = single_series(trunc.max_n, trunc.tail_bound_target, "series in n", closed, |n| {
        let idx = ModeIndex::new(n, n as i64 + k);
        let c = t.powi(n as i32) / (factorial(n) * pochhammer(1.0 + a, n));
        Ok(c * psi(params, &idx, zz)? * psi(params, &idx, ww)?)
    })?;
    cmp.errata_corrected = true;
    Ok(cmp)
}

/// The bilinear closed form with the printed exponent sign and ₀F₁ argument.
pub fn bilinear_printed_closed(t: C, k: i64, params: &FamilyParams, z: C, w: C) -> Result<C> {
    let a = params.beta() + k as f64;
    let alpha = params.alpha();
    let s = 1.0 - t;
    Ok(z.powi(k as i32)
        * w.powi(k as i32)
        * principal_pow(s, -(a + 1.0))
        * (t * alpha * (z.norm_sqr() + w.norm_sqr()) / s).exp()
        * hyp0f1(a + 1.0, (alpha * z * w).norm_sqr() / (t * s * s))?)
}

/// k-th u-derivative at u = 0 of the full closed form, taken on a jet in u.
/// Equals the closed form of the partial generating function in v.
pub fn full_closed_u_derivative(k: usize, v: C, params: &FamilyParams, z: &PuncturedPoint) -> Result<C> {
    let zz = z.z();
    require_inside(v, zz)?;
    let seed = JetSeed::new((C::new(0.0, 0.0), C::new(0.0, 0.0)), (k, 0));
    let exponent = seed.z().scale(zz - v).add_scalar(params.alpha() * v * zz.conj());
    let jet = exponent.exp().scale(principal_pow(1.0 - v / zz, params.beta()));
    jet.wirtinger_derivative(k, 0)
}

/// Closed form of Σ_n ψ_{n,k} v^n/n!.
pub fn partial_v_closed_form(v: C, k: i64, params: &FamilyParams, z: &PuncturedPoint) -> C {
    partial_v_closed(v, k, params, z.z())
}

//! Residual checks for the algebraic identities of the family: recurrences,
//! symmetry, Burchnall and monomial expansions, ladders and the β = 1/2
//! Hermite identity.
//!
//! Every check evaluates both sides through the explicit-sum route and
//! reports |lhs - rhs| relative to the largest individual term.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::jets::JetSeed;
use crate::numerics::{factorial, falling_gamma_ratio, binomial, ito_hermite, laguerre, real_hermite};
use crate::psi::{psi, psi_jet, FamilyParams, ModeIndex};
use crate::report::{Residuals, VerificationReport};

type C = Complex64;

/// Default tolerance for single-sample identity checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

pub const ID_RECFORM: &str = "recurrence-main";
pub const ID_Z_SHIFT: &str = "z-shift";
pub const ID_SYMMETRY: &str = "symmetry";
pub const ID_BURCHNALL: &str = "burchnall";
pub const ID_MONOMIAL_EXPANSION: &str = "monomial-expansion";
pub const ID_LADDERS: &str = "ladders";
pub const ID_BETA_HALF: &str = "beta-half";
pub const ID_FRACTIONAL: &str = "fractional-reduction-candidate";

pub fn magnus_id(which: u8) -> String {
    format!("magnus-{which}")
}

fn zero() -> C {
    C::new(0.0, 0.0)
}

/// coef · ψ_{n,m}, with a vanishing coefficient short-circuiting indices that
/// fall outside the family (negative n, or m at the admissibility edge).
fn scaled_psi(coef: C, params: &FamilyParams, n: i64, m: i64, z: C) -> Result<C> {
    if coef == zero() {
        return Ok(zero());
    }
    if n < 0 {
        return Err(Error::InadmissibleIndex(format!("negative n = {n} with nonzero coefficient")));
    }
    Ok(psi(params, &ModeIndex::new(n as usize, m), z)? * coef)
}

fn real(x: f64) -> C {
    C::new(x, 0.0)
}

/// α z̄ ψ_{n,m} = ψ_{n+1,m} + (β+m) ψ_{n,m-1}.
pub fn check_recurrence_main(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let (n, m) = (idx.n as i64, idx.m);
    let bm = params.beta() + m as f64;
    let lhs = psi(params, idx, z)? * z.conj() * params.alpha();
    let t1 = scaled_psi(real(1.0), params, n + 1, m, z)?;
    let t2 = scaled_psi(real(bm), params, n, m - 1, z)?;
    let mut r = Residuals::new(ID_RECFORM, IDENTITY_TOLERANCE);
    r.push_terms(lhs, &[t1, t2]);
    Ok(r.finish())
}

/// z ψ^{α,β}_{n,m} = ψ^{α,β-1}_{n,m+1}.
pub fn check_z_shift(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let lower = FamilyParams::new(params.alpha(), params.beta() - 1.0)?;
    let lhs = psi(params, idx, z)? * z;
    let rhs = psi(&lower, &ModeIndex::new(idx.n, idx.m + 1), z)?;
    let mut r = Residuals::new(ID_Z_SHIFT, IDENTITY_TOLERANCE);
    r.push(lhs, rhs);
    Ok(r.finish())
}

/// The five Laguerre-derived recurrences, numbered as in the classical
/// tables. The z-shift relation is folded into every report.
pub fn check_recurrences_magnus(which: u8, params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let (n, m) = (idx.n as i64, idx.m);
    let nf = n as f64;
    let b = params.beta();
    let bm = b + m as f64;
    let x = params.alpha() * z.norm_sqr();
    let zb = z.conj();
    let al = params.alpha();
    let p = |coef: C, nn: i64, mm: i64| scaled_psi(coef, params, nn, mm, z);
    let (lhs, terms): (C, Vec<C>) = match which {
        1 => {
            let lower = FamilyParams::new(al, b - 1.0)?;
            let lhs = scaled_psi(real(1.0), &lower, n, m + 1, z)?;
            (lhs, vec![p(real(1.0), n, m + 1)?, p(real(nf), n - 1, m)?])
        }
        2 => (
            p(real(1.0), n + 1, m + 1)?,
            vec![p(real(x - (nf + bm + 1.0)), n, m)?, p(real(-nf * bm), n - 1, m - 1)?],
        ),
        3 => (
            p(zb * al, n, m + 2)?,
            vec![p(real(x - nf), n, m + 1)?, p(real(-nf * (bm + 1.0)), n - 1, m)?],
        ),
        4 => (p(real(1.0), n + 1, m + 1)?, vec![p(real(x - nf - 1.0), n, m)?, p(-z * bm, n, m - 1)?]),
        5 => (p(real(bm - nf + x), n, m)?, vec![p(z * bm, n, m - 1)?, p(zb * al, n, m + 1)?]),
        _ => return domain(format!("recurrence number must be 1..=5, got {which}")),
    };
    let mut r = Residuals::new(magnus_id(which), IDENTITY_TOLERANCE);
    r.push_terms(lhs, &terms);
    let mut rep = r.finish();
    rep.merge(&check_z_shift(params, idx, z)?);
    Ok(rep)
}

/// α^m z^β ψ_{n+β,m-β} = α^{n+β} z̄^β conj(ψ_{m,n}) and, at α = 1,
/// z̄^β ψ_{m,m} = z^β ψ_{m+β,m-β}. Integer β only.
pub fn check_symmetry(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let Some(beta) = params.beta_rounded() else {
        return domain(format!("symmetry needs integer beta, got {}", params.beta()));
    };
    let (n, m) = (idx.n as i64, idx.m);
    if n < 0.max(-beta) || m < 0 {
        return Err(Error::InadmissibleIndex(format!("symmetry needs n >= max(0, -beta) and m >= 0, got ({n}, {m})")));
    }
    let al = params.alpha();
    let b = beta as i32;
    let lhs = scaled_psi(real(al.powi(m as i32)), params, n + beta, m - beta, z)? * z.powi(b);
    let rhs = scaled_psi(real(1.0), params, m, n, z)?.conj() * z.conj().powi(b) * al.powi((n + beta) as i32);
    let mut r = Residuals::new(ID_SYMMETRY, IDENTITY_TOLERANCE);
    r.push(lhs, rhs);
    if m + beta >= 0 {
        let unit = FamilyParams::new(1.0, beta as f64)?;
        let l2 = scaled_psi(real(1.0), &unit, m, m, z)? * z.conj().powi(b);
        let r2 = scaled_psi(real(1.0), &unit, m + beta, m - beta, z)? * z.powi(b);
        r.push(l2, r2);
    }
    Ok(r.finish())
}

/// ψ_{n,m} = (n!/α^m) Σ_k (-1)^k [Γ(β+1)/Γ(β-k+1)] / (k!(n-k)!) z^{-k} H^α_{m,n-k}.
pub fn check_burchnall(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    if idx.m < 0 {
        return Err(Error::InadmissibleIndex(format!("Burchnall expansion needs m >= 0, got {}", idx.m)));
    }
    let n = idx.n;
    let m = idx.m as usize;
    let al = params.alpha();
    let pref = factorial(n) / al.powi(m as i32);
    let terms: Vec<C> = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign * falling_gamma_ratio(params.beta(), k) / (factorial(k) * factorial(n - k));
            ito_hermite(m, n - k, al, z) * z.powi(-(k as i32)) * (pref * c)
        })
        .collect();
    let lhs = psi(params, idx, z)?;
    let mut r = Residuals::new(ID_BURCHNALL, IDENTITY_TOLERANCE);
    r.push_terms(lhs, &terms);
    Ok(r.finish())
}

fn monomial_terms(params: &FamilyParams, p: usize, q: usize, z: C, printed: bool) -> Result<Vec<C>> {
    let bq = params.beta() + q as f64;
    (0..=p)
        .map(|n| {
            let ratio = if printed { falling_gamma_ratio(bq - 1.0, p - n) } else { falling_gamma_ratio(bq, p - n) };
            scaled_psi(real(binomial(p, n) * ratio), params, n as i64, n as i64 + q as i64 - p as i64, z)
        })
        .collect()
}

/// α^p z^q z̄^p = Σ_n C(p,n) [Γ(β+q+1)/Γ(β+q+n-p+1)] ψ_{n,n+q-p}.
pub fn check_monomial_expansion(params: &FamilyParams, p: usize, q: usize, z: C) -> Result<VerificationReport> {
    if p > q {
        return domain(format!("monomial expansion needs p <= q, got p = {p}, q = {q}"));
    }
    let lhs = z.powi(q as i32) * z.conj().powi(p as i32) * params.alpha().powi(p as i32);
    let terms = monomial_terms(params, p, q, z, false)?;
    let mut r = Residuals::new(ID_MONOMIAL_EXPANSION, IDENTITY_TOLERANCE).errata();
    r.push_terms(lhs, &terms);
    Ok(r.finish())
}

/// Absolute residual of the expansion with the printed ratio Γ(β+q)/Γ(β+q+n-p).
pub fn monomial_expansion_printed_residual(params: &FamilyParams, p: usize, q: usize, z: C) -> Result<f64> {
    let lhs = z.powi(q as i32) * z.conj().powi(p as i32) * params.alpha().powi(p as i32);
    let rhs: C = monomial_terms(params, p, q, z, true)?.iter().sum();
    Ok((lhs - rhs).norm())
}

/// The three ladder relations, derivatives taken on an order-(1,1) jet:
/// -(∂_z - αz̄ + β/z)ψ_{n,m} = ψ_{n+1,m}, -(1/α)(∂_z̄ - αz)ψ_{n,m} = ψ_{n,m+1},
/// (∂_z + β/z)ψ_{n,m} = (β+m)ψ_{n,m-1}.
pub fn check_ladders(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let jet = psi_jet(params, idx, JetSeed::diagonal(z, (1, 1)))?;
    let f = jet.value();
    let fz = jet.wirtinger_derivative(1, 0)?;
    let fzb = jet.wirtinger_derivative(0, 1)?;
    let (al, b) = (params.alpha(), params.beta());
    let (n, m) = (idx.n as i64, idx.m);
    let mut r = Residuals::new(ID_LADDERS, IDENTITY_TOLERANCE);
    let beta_term = f * b / z;
    r.push_terms(scaled_psi(real(1.0), params, n + 1, m, z)?, &[-fz, f * z.conj() * al, -beta_term]);
    r.push_terms(scaled_psi(real(1.0), params, n, m + 1, z)?, &[-fzb / al, f * z]);
    r.push_terms(scaled_psi(real(b + m as f64), params, n, m - 1, z)?, &[fz, beta_term]);
    Ok(r.finish())
}

/// H_{2m+1}(t) = 2^{2m+1} t ψ^{α,1/2}_{m,m}(z) = 2(-4)^m m! t L_m^{(1/2)}(t²)
/// with t = √α |z|.
pub fn check_beta_half(alpha: f64, m: usize, z: C) -> Result<VerificationReport> {
    let params = FamilyParams::new(alpha, 0.5)?;
    let t = alpha.sqrt() * z.norm();
    let h = real(real_hermite(2 * m + 1, t));
    let via_psi = psi(&params, &ModeIndex::new(m, m as i64), z)? * (2f64.powi(2 * m as i32 + 1) * t);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let via_lag = real(2.0 * sign * 4f64.powi(m as i32) * factorial(m) * t * laguerre(m, 0.5, t * t));
    let mut r = Residuals::new(ID_BETA_HALF, IDENTITY_TOLERANCE).errata();
    r.push(h, via_psi);
    r.push(h, via_lag);
    Ok(r.finish())
}

/// Absolute residual of the printed form √(α|z|) 2^{2m+1} ψ_{m,m} = H_{2m+1}(√(α|z|)).
pub fn beta_half_printed_residual(alpha: f64, m: usize, z: C) -> Result<f64> {
    let params = FamilyParams::new(alpha, 0.5)?;
    let y = (alpha * z.norm()).sqrt();
    let lhs = psi(&params, &ModeIndex::new(m, m as i64), z)? * (2f64.powi(2 * m as i32 + 1) * y);
    Ok((lhs - real(real_hermite(2 * m + 1, y))).norm())
}

/// Residual of the fractional-part reading of ψ^β = z^{-[β]} ψ^{β̃}_{n,m+[β]}.
pub fn check_fractional_reduction(params: &FamilyParams, idx: &ModeIndex, z: C) -> Result<VerificationReport> {
    let (lhs, rhs) = crate::psi::fractional_reduction(params, idx, z)?;
    let mut r = Residuals::new(ID_FRACTIONAL, IDENTITY_TOLERANCE);
    r.push(lhs, rhs);
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::SampleBox;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fam(a: f64, b: f64) -> FamilyParams {
        FamilyParams::new(a, b).unwrap()
    }

    #[test]
    fn recurrence_main_examples() {
        let rep = check_recurrence_main(&fam(1.0, 0.5), &ModeIndex::new(0, 1), c(1.0, 1.0)).unwrap();
        assert!(rep.max_rel_residual <= 1e-12, "{rep:?}");
        let rep = check_recurrence_main(&fam(1.0, 0.0), &ModeIndex::new(2, 0), c(0.3, 1.0)).unwrap();
        assert!(rep.passed);
        assert!(check_recurrence_main(&fam(1.0, 0.5), &ModeIndex::new(2, -1), c(0.3, 1.0)).is_err());
    }

    #[test]
    fn magnus_examples() {
        let p = fam(1.3, 0.7);
        for which in 1..=5 {
            let rep = check_recurrences_magnus(which, &p, &ModeIndex::new(3, 2), c(0.8, 0.6)).unwrap();
            assert!(rep.max_rel_residual <= 1e-12, "{which}: {rep:?}");
            let rep = check_recurrences_magnus(which, &p, &ModeIndex::new(0, 2), c(0.8, 0.6)).unwrap();
            assert!(rep.max_rel_residual <= 1e-13, "{which}: {rep:?}");
        }
        assert!(check_recurrences_magnus(6, &p, &ModeIndex::new(0, 0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn symmetry_examples() {
        assert!(check_symmetry(&fam(1.0, 1.0), &ModeIndex::new(1, 2), c(1.0, 0.5)).unwrap().max_rel_residual <= 1e-11);
        assert!(check_symmetry(&fam(1.0, 1.0), &ModeIndex::new(3, 2), c(2.0, 1.0)).unwrap().max_rel_residual <= 1e-11);
        assert!(check_symmetry(&fam(1.7, 0.0), &ModeIndex::new(2, 3), c(0.4, -1.0)).unwrap().passed);
        assert!(check_symmetry(&fam(0.8, -1.0), &ModeIndex::new(2, 3), c(0.4, -1.0)).unwrap().passed);
        assert!(check_symmetry(&fam(1.0, 0.5), &ModeIndex::new(1, 1), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn burchnall_examples() {
        let p = fam(1.4, 0.3);
        let z = c(0.5, 1.2);
        let rep = check_burchnall(&p, &ModeIndex::new(1, 0), z).unwrap();
        assert!(rep.max_rel_residual <= 1e-12);
        let lhs = psi(&p, &ModeIndex::new(1, 0), z).unwrap();
        assert!((lhs - (z.conj() * 1.4 - 0.3 / z)).norm() < 1e-14);
        assert!(check_burchnall(&p, &ModeIndex::new(0, 4), z).unwrap().max_rel_residual <= 1e-15);
    }

    #[test]
    fn comp_corrected_and_printed() {
        let p = fam(1.0, 0.7);
        let z = c(1.0, 1.0);
        assert!(check_monomial_expansion(&p, 0, 3, z).unwrap().max_rel_residual <= 1e-15);
        let rep = check_monomial_expansion(&p, 1, 1, z).unwrap();
        assert!(rep.max_rel_residual <= 1e-13 && rep.errata_corrected);
        assert!(check_monomial_expansion(&fam(1.3, 0.4), 2, 3, c(0.7, -0.3)).unwrap().max_rel_residual <= 1e-10);
        let printed = monomial_expansion_printed_residual(&p, 1, 1, z).unwrap();
        assert!((printed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_examples() {
        let rep = check_ladders(&fam(1.2, 0.4), &ModeIndex::new(0, 0), c(0.6, 0.9)).unwrap();
        assert!(rep.max_rel_residual <= 1e-13);
        let rep = check_ladders(&fam(1.2, 2.0), &ModeIndex::new(4, -2), c(0.6, 0.9)).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn beta_half_corrected_and_printed() {
        let rep = check_beta_half(1.0, 0, c(0.3, 0.4)).unwrap();
        assert!(rep.max_rel_residual <= 1e-14);
        let rep = check_beta_half(1.0, 1, c(0.6, 0.8)).unwrap();
        assert!(rep.max_rel_residual <= 1e-13 && rep.errata_corrected);
        assert!(beta_half_printed_residual(1.7, 1, C::from_polar(0.8, 0.3)).unwrap() >= 0.5);
    }

    #[test]
    fn protocol_samples_pass() {
        for s in SampleBox::default().samples(9, 100) {
            let z = s.z;
            let idx = s.idx;
            assert!(check_recurrence_main(&s.params, &idx, z).map(|r| r.passed).unwrap_or(true));
            assert!(check_ladders(&s.params, &idx, z).map(|r| r.passed).unwrap_or(true));
            if idx.m >= 0 {
                let rep = check_burchnall(&s.params, &idx, z).unwrap();
                assert!(rep.passed, "{s:?} {rep:?}");
            }
        }
    }
}

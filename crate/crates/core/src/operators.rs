//! Differential operators applied at a point through jets, eigenvalue
//! residuals and the factorization identities.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

pub use crate::jets::JetEvaluable;
use crate::error::{domain, Error, Result};
use crate::jets::{JetSeed, WirtingerJet};
use crate::psi::{psi_jet, FamilyParams, ModeIndex};
use crate::report::{Residuals, VerificationReport};

type C = Complex64;

pub const ID_FACTORIZATIONS: &str = "factorizations";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorId {
    /// -∂z∂z̄ + (α - β/|z|²) z̄ ∂z̄
    DeltaAlphaBeta,
    /// -∂z∂z̄ + αz∂z - (β/z)∂z̄
    TildeDelta,
    /// -{∂z∂z̄ + k(z∂z - z̄∂z̄)} + k²|z|², k = α - β/|z|²
    MagneticD,
    /// ∂z̄
    A,
    /// -∂z - (β/z - αz̄)
    AStar,
    /// ∂z̄ + (β/z̄ - αz)
    BStar,
    /// z∂z - z̄∂z̄
    EulerDiff,
    /// -(∂x² + ∂y²) + 4iα(x∂y - y∂x) + 4α²(x² + y²)
    Landau,
}

impl OperatorId {
    pub const ALL: [OperatorId; 8] = [
        OperatorId::DeltaAlphaBeta,
        OperatorId::TildeDelta,
        OperatorId::MagneticD,
        OperatorId::A,
        OperatorId::AStar,
        OperatorId::BStar,
        OperatorId::EulerDiff,
        OperatorId::Landau,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorId::DeltaAlphaBeta => "delta",
            OperatorId::TildeDelta => "tilde-delta",
            OperatorId::MagneticD => "magnetic",
            OperatorId::A => "a",
            OperatorId::AStar => "a-star",
            OperatorId::BStar => "b-star",
            OperatorId::EulerDiff => "euler",
            OperatorId::Landau => "landau",
        }
    }

    fn is_second_order(&self) -> bool {
        matches!(self, OperatorId::DeltaAlphaBeta | OperatorId::TildeDelta | OperatorId::MagneticD | OperatorId::Landau)
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorId::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown operator '{s}'")))
    }
}

/// Operator coefficients. Unlike [`FamilyParams`] any real pair is allowed,
/// since the factorizations use B* at (-α, -β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub alpha: f64,
    pub beta: f64,
}

impl Coupling {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn negated(&self) -> Self {
        Self { alpha: -self.alpha, beta: -self.beta }
    }
}

impl From<&FamilyParams> for Coupling {
    fn from(p: &FamilyParams) -> Self {
        Self { alpha: p.alpha(), beta: p.beta() }
    }
}

fn cst(x: f64) -> C {
    C::new(x, 0.0)
}

/// Applies `op` to the germ `f`. First- and second-order operators lower
/// both truncation orders by one; the Landau form lowers them by two.
pub fn apply_jet(op: OperatorId, k: Coupling, f: &WirtingerJet) -> Result<WirtingerJet> {
    let (p, q) = f.orders();
    let need = if op == OperatorId::Landau { 2 } else { 1 };
    if p < need || q < need {
        return Err(Error::OrderExceeded { i: need, j: need, p, q });
    }
    let (ro, so) = (p - need, q - need);
    let seed = JetSeed::new(f.base(), (ro, so));
    let zeta = seed.z();
    let omega = seed.zbar();
    let fz = f.derivative_z()?;
    let fw = f.derivative_zbar()?;
    let g = f.truncate(ro, so)?;
    let gz = fz.truncate(ro, so)?;
    let gw = fw.truncate(ro, so)?;
    let (al, be) = (cst(k.alpha), cst(k.beta));
    let gzw = if op.is_second_order() { Some(fz.derivative_zbar()?.truncate(ro, so)?) } else { None };
    let out = match op {
        OperatorId::A => gw,
        OperatorId::AStar => {
            let coef = zeta.recip()?.scale(be).sub(&omega.scale(al))?;
            gz.add(&coef.mul(&g)?)?.scale(cst(-1.0))
        }
        OperatorId::BStar => {
            let coef = omega.recip()?.scale(be).sub(&zeta.scale(al))?;
            gw.add(&coef.mul(&g)?)?
        }
        OperatorId::EulerDiff => zeta.mul(&gz)?.sub(&omega.mul(&gw)?)?,
        OperatorId::DeltaAlphaBeta => {
            let kk = zeta.mul(&omega)?.recip()?.scale(-be).add_scalar(al);
            kk.mul(&omega)?.mul(&gw)?.sub(gzw.as_ref().unwrap())?
        }
        OperatorId::TildeDelta => {
            let t1 = zeta.mul(&gz)?.scale(al);
            let t2 = zeta.recip()?.mul(&gw)?.scale(be);
            t1.sub(&t2)?.sub(gzw.as_ref().unwrap())?
        }
        OperatorId::MagneticD => {
            let r2 = zeta.mul(&omega)?;
            let kk = r2.recip()?.scale(-be).add_scalar(al);
            let euler = zeta.mul(&gz)?.sub(&omega.mul(&gw)?)?;
            let first = gzw.as_ref().unwrap().add(&kk.mul(&euler)?)?;
            kk.mul(&kk)?.mul(&r2)?.mul(&g)?.sub(&first)?
        }
        OperatorId::Landau => {
            let fzz = fz.derivative_z()?.truncate(ro, so)?;
            let fww = fw.derivative_zbar()?.truncate(ro, so)?;
            let fzw = gzw.unwrap();
            let i = C::new(0.0, 1.0);
            let fx = gz.add(&gw)?;
            let fy = gz.sub(&gw)?.scale(i);
            let fxx = fzz.add(&fzw.scale(cst(2.0)))?.add(&fww)?;
            let fyy = fzz.sub(&fzw.scale(cst(2.0)))?.add(&fww)?.scale(cst(-1.0));
            let x = zeta.add(&omega)?.scale(cst(0.5));
            let y = zeta.sub(&omega)?.scale(C::new(0.0, -0.5));
            let rot = x.mul(&fy)?.sub(&y.mul(&fx)?)?.scale(i * 4.0 * k.alpha);
            let pot = x.mul(&x)?.add(&y.mul(&y)?)?.mul(&g)?.scale(cst(4.0 * k.alpha * k.alpha));
            fxx.add(&fyy)?.scale(cst(-1.0)).add(&rot)?.add(&pot)?
        }
    };
    Ok(out)
}

/// Pointwise value of op f at z.
pub fn apply_operator(op: OperatorId, f: &dyn JetEvaluable, k: Coupling, z: C) -> Result<C> {
    if z == C::new(0.0, 0.0) {
        return domain("operators are evaluated on the punctured plane only");
    }
    // order 2 covers the second-order operators and the Landau form
    let jet = f.jet(JetSeed::diagonal(z, (2, 2)))?;
    Ok(apply_jet(op, k, &jet)?.value())
}

/// |z|^{2β} e^{-α|z|²} as a germ, written (ζω)^β so that the base of the
/// power stays on the positive axis.
pub fn weight_jet(alpha: f64, beta: f64, seed: JetSeed) -> Result<WirtingerJet> {
    let r2 = seed.z().mul(&seed.zbar())?;
    r2.pow_principal(beta)?.mul(&r2.scale(cst(-alpha)).exp())
}

/// The eigenfunction each spectral operator is tested on, with its eigenvalue.
/// Δ, ~Δ and E - Ē act on ψ^{α,β}_{n,m}; 𝒟 acts on ρ_{α,β} ψ^{2α,2β}_{n,m};
/// the Landau form acts on e^{-α|z|²} ψ^{2α,0}_{n,m} (β = 0 only).
pub fn eigenpair(op: OperatorId, params: &FamilyParams, idx: &ModeIndex) -> Result<(Box<dyn JetEvaluable + Send + Sync>, f64)> {
    let p = *params;
    let i = *idx;
    let al = p.alpha();
    match op {
        OperatorId::DeltaAlphaBeta | OperatorId::TildeDelta | OperatorId::EulerDiff => {
            i.check(&p)?;
            let lambda = match op {
                OperatorId::DeltaAlphaBeta => al * i.n as f64,
                OperatorId::TildeDelta => al * i.m as f64,
                _ => i.m as f64 - i.n as f64,
            };
            Ok((Box::new(move |s: JetSeed| psi_jet(&p, &i, s)), lambda))
        }
        OperatorId::MagneticD | OperatorId::Landau => {
            if op == OperatorId::Landau && p.beta() != 0.0 {
                return domain("the Landau form is the β = 0 case");
            }
            let doubled = p.doubled();
            i.check(&doubled)?;
            let scale = if op == OperatorId::Landau { 4.0 } else { 1.0 };
            let f = move |s: JetSeed| weight_jet(al, p.beta(), s)?.mul(&psi_jet(&doubled, &i, s)?);
            Ok((Box::new(f), scale * al * (2 * i.n + 1) as f64))
        }
        _ => domain(format!("operator {op} has no eigenfunction in the family")),
    }
}

/// |op f - λ f| / (1 + |f|) for the eigenfunction attached to `op`.
pub fn eigen_residual(op: OperatorId, params: &FamilyParams, idx: &ModeIndex, z: C, lambda: f64) -> Result<f64> {
    let (f, _) = eigenpair(op, params, idx)?;
    let value = f.jet(JetSeed::diagonal(z, (0, 0)))?.value();
    let applied = apply_operator(op, f.as_ref(), Coupling::from(params), z)?;
    Ok((applied - value * lambda).norm() / (1.0 + value.norm()))
}

fn compose(outer: (OperatorId, Coupling), inner: (OperatorId, Coupling), f: &WirtingerJet) -> Result<C> {
    let g = apply_jet(inner.0, inner.1, f)?;
    Ok(apply_jet(outer.0, outer.1, &g)?.value())
}

/// Residuals of the operator identities at z on the germ of f:
/// [A, A*] = α, Δ = A*A = AA* - α, 𝒟 = A*_{α,β} B*_{-α,-β} + α
/// = B*_{-α,-β} A*_{α,β} - α, ~Δ - Δ = α(E - Ē), and 𝒟 = ρ(Δ_{2α,2β} + α)ρ⁻¹.
pub fn check_factorizations(params: &FamilyParams, f: &dyn JetEvaluable, z: C) -> Result<VerificationReport> {
    use OperatorId::*;
    if z == C::new(0.0, 0.0) {
        return domain("operators are evaluated on the punctured plane only");
    }
    let k = Coupling::from(params);
    let kn = k.negated();
    let al = k.alpha;
    let jet = f.jet(JetSeed::diagonal(z, (2, 2)))?;
    let fv = jet.value();
    let val = |op: OperatorId, c: Coupling| -> Result<C> { Ok(apply_jet(op, c, &jet)?.value()) };
    let delta = val(DeltaAlphaBeta, k)?;
    let dmag = val(MagneticD, k)?;
    let aas = compose((A, k), (AStar, k), &jet)?;
    let asa = compose((AStar, k), (A, k), &jet)?;
    let asbs = compose((AStar, k), (BStar, kn), &jet)?;
    let bsas = compose((BStar, kn), (AStar, k), &jet)?;

    let mut r = Residuals::new(ID_FACTORIZATIONS, 1e-10).errata();
    r.push_terms(fv * al, &[aas, -asa]);
    r.push(delta, asa);
    r.push_terms(delta, &[aas, -fv * al]);
    r.push_terms(dmag, &[asbs, fv * al]);
    r.push_terms(dmag, &[bsas, -fv * al]);
    r.push_terms(val(TildeDelta, k)?, &[delta, val(EulerDiff, k)? * al]);

    let seed = jet.seed();
    let rho = weight_jet(al, k.beta, seed)?;
    let g = jet.div(&rho)?;
    let doubled = Coupling::new(2.0 * al, 2.0 * k.beta);
    let inner = apply_jet(DeltaAlphaBeta, doubled, &g)?.add(&g.truncate(1, 1)?.scale(cst(al)))?;
    let conj = rho.truncate(1, 1)?.mul(&inner)?.value();
    r.push(dmag, conj);
    Ok(r.finish())
}

/// Largest residual of the two printed sign patterns
/// 𝒟 = B*_{-α,-β}A*_{α,β} + α and 𝒟 = A*_{α,β}B*_{-α,-β} - α.
pub fn factorization_printed_residual(params: &FamilyParams, f: &dyn JetEvaluable, z: C) -> Result<f64> {
    use OperatorId::*;
    let k = Coupling::from(params);
    let jet = f.jet(JetSeed::diagonal(z, (2, 2)))?;
    let fv = jet.value();
    let dmag = apply_jet(MagneticD, k, &jet)?.value();
    let r1 = (dmag - compose((BStar, k.negated()), (AStar, k), &jet)? - fv * k.alpha).norm();
    let r2 = (dmag - compose((AStar, k), (BStar, k.negated()), &jet)? + fv * k.alpha).norm();
    Ok(r1.max(r2))
}

/// A member z^a z̄^b e^{-c z z̄} z^γ of the operator test corpus.
pub fn corpus_function(a: u32, b: u32, c: f64, gamma: f64) -> impl JetEvaluable + Send + Sync + Clone {
    move |s: JetSeed| {
        let zeta = s.z();
        let omega = s.zbar();
        let poly = zeta.powi(a as i32)?.mul(&omega.powi(b as i32)?)?;
        let gauss = zeta.mul(&omega)?.scale(cst(-c)).exp();
        poly.mul(&gauss)?.mul(&zeta.pow_principal(gamma)?)
    }
}

/// Parameters of the full corpus: a, b ≤ 3, c ∈ {0.5, 1}, γ ∈ {0, 0.5}.
pub fn corpus_parameters() -> Vec<(u32, u32, f64, f64)> {
    let mut out = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            for c in [0.5, 1.0] {
                for g in [0.0, 0.5] {
                    out.push((a, b, c, g));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fam(a: f64, b: f64) -> FamilyParams {
        FamilyParams::new(a, b).unwrap()
    }

    #[test]
    fn euler_on_monomials() {
        let f = corpus_function(3, 1, 0.0, 0.0);
        let z = c(0.7, -1.1);
        let v = apply_operator(OperatorId::EulerDiff, &f, Coupling::new(1.0, 0.0), z).unwrap();
        let fv = z.powi(3) * z.conj();
        assert!((v - fv * 2.0).norm() < 1e-14 * fv.norm());
    }

    #[test]
    fn spectral_examples() {
        let p = fam(1.3, 0.6);
        let z = c(0.9, 0.8);
        let idx = ModeIndex::new(3, 2);
        assert!(eigen_residual(OperatorId::DeltaAlphaBeta, &p, &idx, z, 1.3 * 3.0).unwrap() <= 1e-10);
        assert!(eigen_residual(OperatorId::TildeDelta, &p, &idx, z, 1.3 * 2.0).unwrap() <= 1e-10);
        assert!(eigen_residual(OperatorId::EulerDiff, &p, &idx, z, -1.0).unwrap() <= 1e-10);
        let r = eigen_residual(OperatorId::MagneticD, &fam(1.0, 0.0), &ModeIndex::new(0, 0), z, 1.0).unwrap();
        assert!(r <= 1e-11);
        let r = eigen_residual(OperatorId::MagneticD, &fam(1.0, 0.5), &ModeIndex::new(1, 2), c(1.0, 1.0), 3.0).unwrap();
        assert!(r <= 1e-9);
        let r = eigen_residual(OperatorId::Landau, &fam(0.7, 0.0), &ModeIndex::new(2, 1), z, 4.0 * 0.7 * 5.0).unwrap();
        assert!(r <= 1e-9);
        // a wrong eigenvalue is detected
        assert!(eigen_residual(OperatorId::DeltaAlphaBeta, &p, &idx, z, 1.3 * 2.0).unwrap() > 1e-3);
    }

    #[test]
    fn eigenpair_rejects_first_order_operators() {
        assert!(eigenpair(OperatorId::A, &fam(1.0, 0.0), &ModeIndex::new(0, 0)).is_err());
        assert!(eigenpair(OperatorId::Landau, &fam(1.0, 0.5), &ModeIndex::new(0, 0)).is_err());
    }

    #[test]
    fn factorization_examples() {
        let p = fam(1.2, 0.7);
        let z = c(0.8, -0.5);
        let rep = check_factorizations(&p, &corpus_function(2, 1, 0.0, 0.0), z).unwrap();
        assert!(rep.passed, "{rep:?}");
        let rep = check_factorizations(&p, &corpus_function(0, 0, 0.5, 0.0), z).unwrap();
        assert!(rep.max_rel_residual <= 1e-11);
        let rep = check_factorizations(&p, &corpus_function(0, 0, 0.0, 0.0), z).unwrap();
        assert!(rep.max_rel_residual <= 1e-13);
        assert!(factorization_printed_residual(&p, &corpus_function(2, 1, 0.5, 0.0), z).unwrap() > 0.1);
    }

    #[test]
    fn corpus_has_expected_size() {
        assert_eq!(corpus_parameters().len(), 64);
    }

    #[test]
    fn point_at_origin_is_refused() {
        let f = corpus_function(1, 0, 0.0, 0.0);
        assert!(apply_operator(OperatorId::A, &f, Coupling::new(1.0, 0.0), c(0.0, 0.0)).is_err());
    }
}

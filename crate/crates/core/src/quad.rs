//! Gauss rules built by Golub–Welsch, the angular trapezoid rule, weighted
//! inner products on the punctured plane and tensor Gaussian integrals.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::numerics::gamma;
use crate::numerics::sum::pairwise_sum;
use crate::psi::{biorder, psi, FamilyParams, ModeIndex};

type C = Complex64;

const QL_TOLERANCE: f64 = 1e-14;
const QL_MAX_ITER: usize = 60;
const EDGE_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    GaussLaguerre(f64),
    GaussHermite,
    AngularTrapezoid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i), reduced pairwise in node order.
    pub fn integrate<F: Fn(f64) -> C>(&self, f: F) -> C {
        let terms: Vec<C> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x) * w).collect();
        pairwise_sum(&terms)
    }

    /// One `node,weight` line per node at 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Domain(format!("csv output failed: {e}"));
        w.write_record(["node", "weight"]).map_err(io)?;
        for (x, wt) in self.nodes.iter().zip(&self.weights) {
            w.write_record([format!("{x:.16e}"), format!("{wt:.16e}")]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Domain(format!("csv output failed: {e}")))?;
        Ok(())
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal, by implicit-shift QL, in ascending order.
fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= QL_TOLERANCE * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::EigenSolverFailure(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Orthonormal recurrence x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
struct Jacobi {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl Jacobi {
    /// Returns (Σ_{k<N} p_k², p_N, p_N').
    fn eval(&self, x: f64) -> (f64, f64, f64) {
        let n = self.a.len();
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        let mut sq = 0.0;
        for k in 0..n {
            sq += p1 * p1;
            let bk = if k == 0 { 0.0 } else { self.b[k - 1] };
            let p2 = ((x - self.a[k]) * p1 - bk * p0) / self.b[k];
            let d2 = (p1 + (x - self.a[k]) * d1 - bk * d0) / self.b[k];
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        (sq, p1, d1)
    }

    fn rule(&self, mu0: f64, kind: RuleKind) -> Result<QuadratureRule> {
        let n = self.a.len();
        let mut nodes = tridiagonal_eigenvalues(&self.a, &self.b[..n - 1])?;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..2 {
                let (_, p, dp) = self.eval(*x);
                let step = p / dp;
                if dp == 0.0 || !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                    break;
                }
                *x -= step;
            }
            let (sq, _, _) = self.eval(*x);
            weights.push(mu0 / sq);
        }
        Ok(QuadratureRule { kind, nodes, weights })
    }
}

/// Nodes and weights for ∫₀^∞ f(t) t^a e^{-t} dt.
pub fn gauss_laguerre_rule(order: usize, a: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return domain("quadrature order must be at least 1");
    }
    if !(a > -1.0) {
        return domain(format!("Gauss–Laguerre exponent a = {a} must exceed -1"));
    }
    let jac = Jacobi {
        a: (0..order).map(|k| 2.0 * k as f64 + a + 1.0).collect(),
        b: (1..=order).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect(),
    };
    jac.rule(gamma(a + 1.0), RuleKind::GaussLaguerre(a))
}

/// Nodes and weights for ∫ f(x) e^{-x²} dx over the real line.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return domain("quadrature order must be at least 1");
    }
    let jac = Jacobi { a: vec![0.0; order], b: (1..=order).map(|k| (k as f64 / 2.0).sqrt()).collect() };
    jac.rule(PI.sqrt(), RuleKind::GaussHermite)
}

/// N equispaced nodes on [0, 2π) with weight 2π/N each.
pub fn angular_trapezoid_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return domain("quadrature order must be at least 1");
    }
    let h = 2.0 * PI / order as f64;
    Ok(QuadratureRule {
        kind: RuleKind::AngularTrapezoid,
        nodes: (0..order).map(|j| h * j as f64).collect(),
        weights: vec![h; order],
    })
}

/// Radial and angular orders that integrate every ψ-pair with n ≤ n_max,
/// |m| ≤ m_max exactly.
pub fn default_orders(n_max: usize, m_max: usize) -> (usize, usize) {
    (n_max + m_max + 5, 2 * (n_max + m_max) + 3)
}

/// ∫ f ḡ |z|^{2β} e^{-α|z|²} dλ(z).
pub fn inner_product_weighted<F, G>(f: F, g: G, params: &FamilyParams, radial_order: usize, angular_order: usize) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
    G: Fn(C) -> Result<C> + Sync,
{
    inner_product_weighted_with_pole(f, g, params, radial_order, angular_order, 0)
}

/// As [`inner_product_weighted`], for integrands with a pole of order up to
/// 2p in r at the origin: the radial rule becomes GaussLaguerre(β - p) and
/// the removed power t^p is folded into the integrand.
pub fn inner_product_weighted_with_pole<F, G>(
    f: F,
    g: G,
    params: &FamilyParams,
    radial_order: usize,
    angular_order: usize,
    pole_order: u32,
) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
    G: Fn(C) -> Result<C> + Sync,
{
    let nodes = weighted_nodes(params, radial_order, angular_order, pole_order)?;
    let terms = nodes
        .par_iter()
        .map(|&(z, w)| Ok(f(z)? * g(z)?.conj() * w))
        .collect::<Result<Vec<C>>>()?;
    Ok(pairwise_sum(&terms))
}

/// Points and weights of the polar product rule for |z|^{2β} e^{-α|z|²} dλ,
/// radial index major. The weights include the Jacobian and the factor t^p.
pub fn weighted_nodes(params: &FamilyParams, radial_order: usize, angular_order: usize, pole_order: u32) -> Result<Vec<(C, f64)>> {
    let alpha = params.alpha();
    let beta = params.beta();
    let a = beta - pole_order as f64;
    if a <= -1.0 {
        return domain(format!("weight exponent beta - p = {a} must exceed -1"));
    }
    let radial = gauss_laguerre_rule(radial_order, a)?;
    let angular = angular_trapezoid_rule(angular_order)?;
    let jac = 1.0 / (2.0 * alpha.powf(beta + 1.0));
    let mut out = Vec::with_capacity(radial.len() * angular.len());
    for (&t, &wr) in radial.nodes.iter().zip(&radial.weights) {
        let r = (t / alpha).sqrt();
        let wt = wr * t.powi(pole_order as i32) * jac;
        for (&th, &wa) in angular.nodes.iter().zip(&angular.weights) {
            out.push((C::from_polar(r, th), wt * wa));
        }
    }
    Ok(out)
}

/// Whether ψ_{n,m} lies in the weighted L² space: r^{2(r+s+β)+1} must be
/// integrable at the origin.
pub fn is_square_integrable(params: &FamilyParams, idx: &ModeIndex) -> Result<bool> {
    let b = biorder(params, idx)?;
    Ok((b.r + b.s) as f64 + params.beta() > -1.0)
}

/// Pole order needed for the pair (f, g) with the given total orders at the
/// origin. Only terms of even total degree survive the angular integral.
fn pair_pole_order(e1: i64, e2: i64) -> u32 {
    let e = e1 + e2;
    let even = e + e.rem_euclid(2);
    (-even / 2).max(0) as u32
}

/// Weighted Gram matrix of ψ over the given indices. The radial order is
/// raised by the pole order of each pair.
pub fn gram_matrix(params: &FamilyParams, indices: &[ModeIndex], radial_order: usize, angular_order: usize) -> Result<Vec<Vec<C>>> {
    let mut totals = Vec::with_capacity(indices.len());
    for idx in indices {
        if !is_square_integrable(params, idx)? {
            return domain(format!("psi_{{{},{}}} is not square integrable for {params}", idx.n, idx.m));
        }
        let b = biorder(params, idx)?;
        totals.push(b.r + b.s);
    }
    let mut out = vec![vec![C::new(0.0, 0.0); indices.len()]; indices.len()];
    for (i, a) in indices.iter().enumerate() {
        for (j, b) in indices.iter().enumerate() {
            let p = pair_pole_order(totals[i], totals[j]);
            out[i][j] = inner_product_weighted_with_pole(
                |z| psi(params, a, z),
                |z| psi(params, b, z),
                params,
                radial_order + p as usize,
                angular_order,
                p,
            )?;
        }
    }
    Ok(out)
}

/// ∫ F dx over R^{2·dims} by tensor Gauss–Hermite with nodes x = ξ/√scale.
/// F is the whole integrand; it should carry a Gaussian factor close to
/// e^{-scale|x|²} so that the rule is exact for the polynomial remainder.
/// Integrands with significant mass on the outermost nodes are rejected.
pub fn gaussian_plane_integral<F>(f: F, dims: usize, order: usize, scale: f64) -> Result<C>
where
    F: Fn(&[f64]) -> Result<C> + Sync,
{
    tensor_hermite(|x, r2| Ok(f(x)? * (scale * r2).exp()), dims, order, scale)
}

/// ∫ F(x) e^{-scale|x|²} dx over R^{2·dims}, with the Gaussian factor left
/// to the rule.
pub fn gaussian_weighted_integral<F>(f: F, dims: usize, order: usize, scale: f64) -> Result<C>
where
    F: Fn(&[f64]) -> Result<C> + Sync,
{
    tensor_hermite(|x, _| f(x), dims, order, scale)
}

fn tensor_hermite<F>(f: F, dims: usize, order: usize, scale: f64) -> Result<C>
where
    F: Fn(&[f64], f64) -> Result<C> + Sync,
{
    if !(1..=2).contains(&dims) {
        return domain(format!("dims = {dims} must be 1 or 2"));
    }
    if !(scale > 0.0) {
        return domain("Gaussian scale must be positive");
    }
    let rule = gauss_hermite_rule(order)?;
    let root = scale.sqrt();
    let nodes: Vec<f64> = rule.nodes.iter().map(|x| x / root).collect();
    let weights: Vec<f64> = rule.weights.iter().map(|w| w / root).collect();
    let axes = 2 * dims;
    let total = order.pow(axes as u32);
    let terms = (0..total)
        .into_par_iter()
        .map(|mut flat| {
            let mut x = [0.0; 4];
            let mut w = 1.0;
            let mut r2 = 0.0;
            let mut edge = false;
            for slot in x.iter_mut().take(axes) {
                let k = flat % order;
                flat /= order;
                *slot = nodes[k];
                r2 += nodes[k] * nodes[k];
                w *= weights[k];
                edge |= k == 0 || k + 1 == order;
            }
            Ok((f(&x[..axes], r2)? * w, edge))
        })
        .collect::<Result<Vec<(C, bool)>>>()?;
    let mut mass = 0.0;
    let mut edge_mass = 0.0;
    for (t, e) in &terms {
        let a = t.norm();
        if !a.is_finite() {
            return Err(Error::NotConverged("non-finite integrand on a quadrature node".into()));
        }
        mass += a;
        if *e {
            edge_mass += a;
        }
    }
    if order > 2 && edge_mass > EDGE_FRACTION * mass {
        return Err(Error::NotConverged(format!(
            "outermost nodes carry {:.1e} of the absolute mass; the Gaussian factor does not dominate",
            edge_mass / mass
        )));
    }
    let values: Vec<C> = terms.into_iter().map(|(t, _)| t).collect();
    Ok(pairwise_sum(&values))
}

/// ∫_ℂ F(ξ) dλ(ξ).
pub fn gaussian_integral_c<F>(f: F, order: usize, scale: f64) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
{
    gaussian_plane_integral(|x| f(C::new(x[0], x[1])), 1, order, scale)
}

/// ∫_{ℂ²} F(u, v) dλ(u, v).
pub fn gaussian_integral_c2<F>(f: F, order: usize, scale: f64) -> Result<C>
where
    F: Fn(C, C) -> Result<C> + Sync,
{
    gaussian_plane_integral(|x| f(C::new(x[0], x[1]), C::new(x[2], x[3])), 2, order, scale)
}

/// ∫_ℂ F(ξ) e^{-scale|ξ|²} dλ(ξ).
pub fn gaussian_weighted_c<F>(f: F, order: usize, scale: f64) -> Result<C>
where
    F: Fn(C) -> Result<C> + Sync,
{
    gaussian_weighted_integral(|x| f(C::new(x[0], x[1])), 1, order, scale)
}

/// ∫_{ℂ²} F(u, v) e^{-scale(|u|²+|v|²)} dλ(u, v).
pub fn gaussian_weighted_c2<F>(f: F, order: usize, scale: f64) -> Result<C>
where
    F: Fn(C, C) -> Result<C> + Sync,
{
    gaussian_weighted_integral(|x| f(C::new(x[0], x[1]), C::new(x[2], x[3])), 2, order, scale)
}

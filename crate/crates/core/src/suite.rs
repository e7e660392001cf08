//! Seeded verification suites. Each suite returns one report row per
//! identity; the rows are identical for a given configuration regardless of
//! the number of worker threads.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genfun::{
    full_closed_u_derivative, gen_bilinear, gen_full, gen_partial_u, gen_partial_v, gen_weighted, partial_v_closed_form,
    TruncationSpec,
};
use crate::identities::{
    beta_half_printed_residual, check_beta_half, check_burchnall, check_fractional_reduction, check_ladders,
    check_monomial_expansion, check_recurrence_main, check_recurrences_magnus, check_symmetry, check_z_shift,
    magnus_id, monomial_expansion_printed_residual, IDENTITY_TOLERANCE, ID_BETA_HALF, ID_BURCHNALL, ID_FRACTIONAL,
    ID_LADDERS, ID_MONOMIAL_EXPANSION, ID_RECFORM, ID_SYMMETRY, ID_Z_SHIFT,
};
use crate::numerics::{gamma, laguerre_coefficients};
use crate::operators::{
    check_factorizations, corpus_function, corpus_parameters, eigen_residual, factorization_printed_residual, OperatorId,
    ID_FACTORIZATIONS,
};
use crate::psi::{
    biorder, coeff_c, eval_psi, norm_sq, psi, term_scale, BiOrder, EvalRoute, FamilyParams, ModeIndex, PuncturedPoint,
    SampleBox,
};
use crate::quad::{
    angular_trapezoid_rule, default_orders, gauss_hermite_rule, gauss_laguerre_rule, gram_matrix, is_square_integrable,
    weighted_nodes,
};
use crate::report::{Residuals, VerificationReport};
use crate::transforms::{
    basis_e, bargmann_forward, bargmann_image_constant, bargmann_inverse, bessel_rep, bessel_rep_x, ga3_rep,
    gaussian_rep_c2, laguerre_integral_formula, monomial_projection_rep, s_transform, s_transform_image_constant,
    TransformKind, TransformSpec,
};

type C = Complex64;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    ClosedForms,
    Routes,
    Orthogonality,
    Spectral,
    Operators,
    Identities,
    Genfun,
    Representations,
    Transforms,
    Biorder,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ClosedForms,
        Suite::Routes,
        Suite::Orthogonality,
        Suite::Spectral,
        Suite::Operators,
        Suite::Identities,
        Suite::Genfun,
        Suite::Representations,
        Suite::Transforms,
        Suite::Biorder,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::ClosedForms => "closed-forms",
            Suite::Routes => "routes",
            Suite::Orthogonality => "orthogonality",
            Suite::Spectral => "spectral",
            Suite::Operators => "operators",
            Suite::Identities => "identities",
            Suite::Genfun => "genfun",
            Suite::Representations => "representations",
            Suite::Transforms => "transforms",
            Suite::Biorder => "biorder",
        }
    }

    fn seed_offset(&self) -> u64 {
        Suite::ALL.iter().position(|s| s == self).unwrap() as u64 * 0x9E37_79B9
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every per-identity sample count.
    pub samples: Option<usize>,
    pub n_max: Option<usize>,
    pub m_max: Option<i64>,
    /// Restricts the family-grid suites to one (α, β).
    pub params: Option<FamilyParams>,
    pub radius: (f64, f64),
    /// Replaces every row tolerance.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, samples: None, n_max: None, m_max: None, params: None, radius: (0.3, 3.0), tolerance: None }
    }
}

impl SuiteConfig {
    fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn rng(&self, suite: Suite, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ suite.seed_offset() ^ stream.wrapping_mul(0x51_7CC1_B727_220A))
    }

    fn sample_box(&self, n_max: usize, m_max: i64) -> SampleBox {
        let mut b = SampleBox::with_caps(self.n_max.unwrap_or(n_max).min(n_max), self.m_max.unwrap_or(m_max).min(m_max));
        b.radius = self.radius;
        b
    }
}

/// Runs the given suites in parallel and returns their rows in suite order.
pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let per: Vec<Vec<VerificationReport>> = suites.par_iter().map(|s| run_suite(*s, cfg)).collect();
    per.into_iter().flatten().collect()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let rows = match suite {
        Suite::ClosedForms => closed_forms(cfg),
        Suite::Routes => routes(cfg),
        Suite::Orthogonality => orthogonality(cfg),
        Suite::Spectral => spectral(cfg),
        Suite::Operators => operators(cfg),
        Suite::Identities => identities(cfg),
        Suite::Genfun => genfun(cfg),
        Suite::Representations => representations(cfg),
        Suite::Transforms => transforms(cfg),
        Suite::Biorder => biorder_suite(cfg),
    };
    rows.into_iter()
        .map(|r| {
            let r = r.with_seed(cfg.seed);
            match cfg.tolerance {
                Some(t) if !is_rejection_row(&r) => r.with_tolerance(t),
                _ => r,
            }
        })
        .collect()
}

const REJECTION_SUFFIX: &str = "-printed-form-fails";

fn is_rejection_row(r: &VerificationReport) -> bool {
    r.identity_id.ends_with(REJECTION_SUFFIX)
}

/// A row that passes when the printed display misses by at least `threshold`
/// on its documented counterexample.
fn rejection_row(id: &str, printed_residual: Result<f64>, threshold: f64) -> VerificationReport {
    let v = printed_residual.unwrap_or(f64::NAN);
    VerificationReport {
        identity_id: format!("{id}{REJECTION_SUFFIX}"),
        samples: 1,
        max_abs_residual: v,
        max_rel_residual: v,
        tolerance: threshold,
        passed: v >= threshold,
        errata_corrected: true,
        seed: None,
    }
}

enum Outcome {
    Report(VerificationReport),
    Relative(f64, f64),
    Failed,
}

type Obs = Vec<(usize, Outcome)>;

fn from_report(row: usize, r: Result<VerificationReport>) -> Option<(usize, Outcome)> {
    match r {
        Ok(rep) => Some((row, Outcome::Report(rep))),
        Err(Error::InadmissibleIndex(_)) => None,
        Err(_) => Some((row, Outcome::Failed)),
    }
}

fn from_rel(row: usize, r: Result<(f64, f64)>) -> (usize, Outcome) {
    match r {
        Ok((a, b)) => (row, Outcome::Relative(a, b)),
        Err(_) => (row, Outcome::Failed),
    }
}

fn pair_rel(a: C, b: C, scale: f64) -> (f64, f64) {
    let abs = (a - b).norm();
    (abs, if abs == 0.0 { 0.0 } else { abs / scale })
}

/// Evaluates `f` on every item in parallel and folds the observations into
/// the rows in item order.
fn fold<T: Sync>(mut rows: Vec<Residuals>, items: &[T], f: impl Fn(&T) -> Obs + Sync + Send) -> Vec<VerificationReport> {
    let obs: Vec<Obs> = items.par_iter().map(f).collect();
    for (row, o) in obs.into_iter().flatten() {
        match o {
            Outcome::Report(r) => rows[row].absorb(&r),
            Outcome::Relative(a, b) => rows[row].push_relative(a, b),
            Outcome::Failed => rows[row].push_failure(),
        }
    }
    rows.into_iter().map(Residuals::finish).collect()
}

fn draw_point(rng: &mut ChaCha8Rng, radius: (f64, f64), margin: f64) -> C {
    let r = rng.gen_range(radius.0..=radius.1);
    let lim = PI - margin;
    C::from_polar(r, rng.gen_range(-lim..=lim))
}

fn draw_disc(rng: &mut ChaCha8Rng, max: f64) -> C {
    C::from_polar(rng.gen_range(0.0..=max), rng.gen_range(-PI..PI))
}

fn fam(alpha: f64, beta: f64) -> FamilyParams {
    FamilyParams::new(alpha, beta).expect("suite parameters are valid")
}

fn pp(z: C) -> PuncturedPoint {
    PuncturedPoint::new(z).expect("suite points avoid the origin")
}

/// Closed forms of ψ_{0,m}, ψ_{1,m}, ψ_{2,m} as lists of terms.
fn low_order_terms(params: &FamilyParams, n: usize, m: i64, z: C) -> Vec<C> {
    let b = params.beta() + m as f64;
    let x = params.alpha() * z.norm_sqr();
    let lead = z.powi((m - n as i64) as i32);
    match n {
        0 => vec![lead],
        1 => vec![lead * x, -lead * b],
        _ => vec![lead * x * x, -lead * 2.0 * b * x, lead * b * (b - 1.0)],
    }
}

fn closed_forms(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::ClosedForms, 0);
    let bx = cfg.sample_box(10, 10);
    let samples: Vec<_> = (0..cfg.count(50)).map(|_| bx.draw(&mut rng)).collect();
    let rows = (0..3).map(|n| Residuals::new(format!("closed-form-psi{n}"), 1e-12)).collect();
    fold(rows, &samples, |s| {
        let mut out = Vec::new();
        for n in 0..3 {
            let idx = ModeIndex::new(n, s.idx.m);
            let terms = low_order_terms(&s.params, n, s.idx.m, s.z);
            for route in EvalRoute::ALL {
                let r = eval_psi(route, &s.params, &idx, &pp(s.z)).map(|v| {
                    let mut acc = Residuals::new("", 0.0);
                    acc.push_terms(v, &terms);
                    acc.finish()
                });
                out.extend(from_report(n, r));
            }
        }
        out
    })
}

fn routes(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Routes, 0);
    let bx = cfg.sample_box(10, 10);
    let samples: Vec<_> = (0..cfg.count(500)).map(|_| bx.draw(&mut rng)).collect();
    let mut pairs = Vec::new();
    for i in 0..EvalRoute::ALL.len() {
        for j in i + 1..EvalRoute::ALL.len() {
            pairs.push((i, j));
        }
    }
    let rows = pairs
        .iter()
        .map(|&(i, j)| Residuals::new(format!("route-{}-{}", EvalRoute::ALL[i], EvalRoute::ALL[j]), 1e-9))
        .collect();
    fold(rows, &samples, |s| {
        let z = pp(s.z);
        let vals: Vec<Result<C>> = EvalRoute::ALL.iter().map(|r| eval_psi(*r, &s.params, &s.idx, &z)).collect();
        let scale = term_scale(&s.params, &s.idx, s.z).unwrap_or(1.0).max(1.0);
        pairs
            .iter()
            .enumerate()
            .map(|(row, &(i, j))| match (&vals[i], &vals[j]) {
                (Ok(a), Ok(b)) => (row, Outcome::Relative(pair_rel(*a, *b, scale).0, pair_rel(*a, *b, scale).1)),
                _ => (row, Outcome::Failed),
            })
            .collect()
    })
}

type IndexedGram = (Vec<ModeIndex>, Vec<Vec<C>>);

fn orthogonality(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let families: Vec<FamilyParams> = match cfg.params {
        Some(p) => vec![p],
        None => [1.0, 2.0].iter().flat_map(|&a| [0.0, 0.5, 1.0].map(|b| fam(a, b))).collect(),
    };
    let n_max = cfg.n_max.unwrap_or(4);
    let m_max = cfg.m_max.unwrap_or(4).max(0);
    let (ro, ao) = default_orders(n_max, m_max as usize);
    let grams: Vec<Result<IndexedGram>> = families
        .par_iter()
        .map(|p| {
            let mut idx = Vec::new();
            for n in 0..=n_max {
                for m in 0..=m_max {
                    let i = ModeIndex::new(n, m);
                    if i.is_admissible(p) && is_square_integrable(p, &i)? {
                        idx.push(i);
                    }
                }
            }
            let g = gram_matrix(p, &idx, ro, ao)?;
            Ok((idx, g))
        })
        .collect();
    let mut diag = Residuals::new("norm-diagonal", 1e-10);
    let mut off = Residuals::new("orthogonality", 1e-10);
    for (p, g) in families.iter().zip(grams) {
        let Ok((idx, g)) = g else {
            diag.push_failure();
            off.push_failure();
            continue;
        };
        for i in 0..idx.len() {
            match norm_sq(p, &idx[i]) {
                Ok(ns) => diag.push_scaled(g[i][i], C::new(ns, 0.0), ns),
                Err(_) => diag.push_failure(),
            }
            for j in 0..idx.len() {
                if i != j {
                    let scale = (g[i][i].re * g[j][j].re).abs().sqrt();
                    off.push_scaled(g[i][j], C::new(0.0, 0.0), scale);
                }
            }
        }
    }
    let mut rows = vec![diag.finish(), off.finish()];
    rows.extend(rule_checks());
    rows
}

fn rule_checks() -> Vec<VerificationReport> {
    let mut gl = Residuals::new("gauss-laguerre-exactness", 1e-12);
    for a in [-0.5, 0.0, 0.5, 1.0, 2.0] {
        for order in [1, 5, 12, 20] {
            match gauss_laguerre_rule(order, a) {
                Ok(rule) => {
                    for k in 0..2 * order {
                        let exact = gamma(a + k as f64 + 1.0);
                        let got = rule.integrate(|t| C::new(t.powi(k as i32), 0.0));
                        gl.push_scaled(got, C::new(exact, 0.0), exact);
                    }
                }
                Err(_) => gl.push_failure(),
            }
        }
    }
    let mut gh = Residuals::new("gauss-hermite-exactness", 1e-12);
    for order in [1, 8, 24, 40] {
        match gauss_hermite_rule(order) {
            Ok(rule) => {
                for k in (0..2 * order).step_by(2) {
                    let exact = gamma(k as f64 / 2.0 + 0.5);
                    gh.push_scaled(rule.integrate(|x| C::new(x.powi(k as i32), 0.0)), C::new(exact, 0.0), exact);
                }
            }
            Err(_) => gh.push_failure(),
        }
    }
    let mut ang = Residuals::new("angular-exactness", 1e-14);
    for order in [1, 7, 19, 40] {
        let rule = angular_trapezoid_rule(order).expect("positive order");
        for k in -(order as i32 - 1)..order as i32 {
            let want = if k == 0 { 2.0 * PI } else { 0.0 };
            ang.push_scaled(rule.integrate(|t| C::from_polar(1.0, k as f64 * t)), C::new(want, 0.0), 2.0 * PI);
        }
    }
    vec![gl.finish(), gh.finish(), ang.finish()]
}

fn spectral(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Spectral, 0);
    let bx = cfg.sample_box(6, 6);
    let count = cfg.count(50);
    let samples: Vec<_> = (0..count).map(|_| bx.draw(&mut rng)).collect();
    let mut magnetic = Vec::new();
    while magnetic.len() < count {
        let s = bx.draw(&mut rng);
        if s.idx.is_admissible(&s.params.doubled()) {
            magnetic.push(s);
        }
    }
    let landau_box = bx.with_beta(0.0, 0.0);
    let landau: Vec<_> = (0..count).map(|_| landau_box.draw(&mut rng)).collect();
    let ops = [OperatorId::DeltaAlphaBeta, OperatorId::TildeDelta, OperatorId::EulerDiff];
    let names = ["eigen-delta", "eigen-tilde-delta", "eigen-euler", "eigen-magnetic", "eigen-landau"];
    let mut rows: Vec<Residuals> = names.iter().map(|n| Residuals::new(*n, 1e-9)).collect();
    let eig = |op: OperatorId, s: &crate::psi::Sample| -> f64 {
        let a = s.params.alpha();
        let (n, m) = (s.idx.n as f64, s.idx.m as f64);
        match op {
            OperatorId::DeltaAlphaBeta => a * n,
            OperatorId::TildeDelta => a * m,
            OperatorId::EulerDiff => m - n,
            OperatorId::MagneticD => a * (2.0 * n + 1.0),
            _ => 4.0 * a * (2.0 * n + 1.0),
        }
    };
    let mut all = Vec::new();
    all.push(fold(rows.drain(..3).collect(), &samples, |s| {
        ops.iter()
            .enumerate()
            .map(|(row, &op)| from_rel(row, eigen_residual(op, &s.params, &s.idx, s.z, eig(op, s)).map(|r| (r, r))))
            .collect()
    }));
    all.push(fold(rows.drain(..1).collect(), &magnetic, |s| {
        let op = OperatorId::MagneticD;
        vec![from_rel(0, eigen_residual(op, &s.params, &s.idx, s.z, eig(op, s)).map(|r| (r, r)))]
    }));
    all.push(fold(rows, &landau, |s| {
        let op = OperatorId::Landau;
        vec![from_rel(0, eigen_residual(op, &s.params, &s.idx, s.z, eig(op, s)).map(|r| (r, r)))]
    }));
    all.into_iter().flatten().collect()
}

fn operators(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Operators, 0);
    let per = cfg.samples.map(|s| s.max(1)).unwrap_or(2);
    let mut items = Vec::new();
    for (a, b, c, g) in corpus_parameters() {
        for _ in 0..per {
            let alpha = rng.gen_range(0.5..=2.0);
            let beta = rng.gen_range(-0.9..3.0);
            let z = draw_point(&mut rng, (0.3, 3.0), 0.1);
            items.push(((a, b, c, g), fam(alpha, beta), z));
        }
    }
    let rows = vec![Residuals::new(ID_FACTORIZATIONS, 1e-10).errata()];
    let mut out = fold(rows, &items, |&((a, b, c, g), p, z)| {
        vec![from_report(0, check_factorizations(&p, &corpus_function(a, b, c, g), z)).unwrap_or((0, Outcome::Failed))]
    });
    out.push(rejection_row(
        ID_FACTORIZATIONS,
        factorization_printed_residual(&fam(1.2, 0.7), &corpus_function(2, 1, 0.0, 0.0), C::new(0.8, -0.5)),
        0.5,
    ));
    out
}

fn identities(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Identities, 0);
    let bx = cfg.sample_box(10, 10);
    let count = cfg.count(100);
    let samples: Vec<_> = (0..count).map(|_| bx.draw(&mut rng)).collect();
    let mut ids: Vec<String> = vec![ID_RECFORM.into(), ID_Z_SHIFT.into()];
    ids.extend((1..=5).map(magnus_id));
    ids.extend([ID_LADDERS.into(), ID_BURCHNALL.into(), ID_FRACTIONAL.into()]);
    let rows = ids.iter().map(|id| Residuals::new(id.clone(), IDENTITY_TOLERANCE)).collect();
    let mut out = fold(rows, &samples, |s| {
        let (p, i, z) = (&s.params, &s.idx, s.z);
        let mut o: Obs = Vec::new();
        o.extend(from_report(0, check_recurrence_main(p, i, z)));
        o.extend(from_report(1, check_z_shift(p, i, z)));
        for k in 1..=5u8 {
            o.extend(from_report(1 + k as usize, check_recurrences_magnus(k, p, i, z)));
        }
        o.extend(from_report(7, check_ladders(p, i, z)));
        if i.m >= 0 {
            o.extend(from_report(8, check_burchnall(p, i, z)));
        }
        o.extend(from_report(9, check_fractional_reduction(p, i, z)));
        o
    });

    let mut sym = Vec::new();
    for _ in 0..count {
        let beta = rng.gen_range(-2i64..=3) as f64;
        let alpha = rng.gen_range(0.5..=2.0);
        let n = rng.gen_range(0..=8usize);
        let m = rng.gen_range(-2i64..=8);
        sym.push((fam(alpha, beta), ModeIndex::new(n, m), draw_point(&mut rng, cfg.radius, 0.1)));
    }
    out.extend(fold(vec![Residuals::new(ID_SYMMETRY, IDENTITY_TOLERANCE)], &sym, |(p, i, z)| {
        from_report(0, check_symmetry(p, i, *z)).into_iter().collect()
    }));

    let mut comp = Vec::new();
    for _ in 0..count {
        let s = bx.draw(&mut rng);
        let q = rng.gen_range(0..=6usize);
        let p = rng.gen_range(0..=q);
        comp.push((s.params, p, q, s.z));
    }
    out.extend(fold(vec![Residuals::new(ID_MONOMIAL_EXPANSION, 1e-10).errata()], &comp, |(params, p, q, z)| {
        from_report(0, check_monomial_expansion(params, *p, *q, *z)).into_iter().collect()
    }));

    let mut half = Vec::new();
    for _ in 0..count {
        let alpha = rng.gen_range(0.5..=2.0);
        half.push((alpha, rng.gen_range(0..=6usize), draw_point(&mut rng, cfg.radius, 0.1)));
    }
    out.extend(fold(vec![Residuals::new(ID_BETA_HALF, 1e-10).errata()], &half, |(a, m, z)| {
        from_report(0, check_beta_half(*a, *m, *z)).into_iter().collect()
    }));

    out.push(rejection_row(ID_MONOMIAL_EXPANSION, monomial_expansion_printed_residual(&fam(1.0, 0.7), 1, 1, C::new(1.0, 1.0)), 0.5));
    out.push(rejection_row(ID_BETA_HALF, beta_half_printed_residual(1.7, 1, C::from_polar(0.8, 0.3)), 0.5));
    out
}

fn gen_tolerance(tail: f64) -> f64 {
    1e-9f64.max(10.0 * tail)
}

fn genfun(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Genfun, 0);
    let count = cfg.count(20);
    let tr = TruncationSpec::new(70, 70, 1e-13).expect("valid truncation");
    let draw_family = |rng: &mut ChaCha8Rng, lo: f64| fam(rng.gen_range(0.5..=2.0), rng.gen_range(lo..3.0));
    struct Item {
        p: FamilyParams,
        z: C,
        w: C,
        u: C,
        v: C,
        k: i64,
        n: usize,
    }
    let mut items = Vec::new();
    for _ in 0..count {
        let p = draw_family(&mut rng, -0.9);
        let z = draw_point(&mut rng, (0.5, 2.0), 0.1);
        let w = draw_point(&mut rng, (0.3, 1.5), 0.1);
        let u = draw_disc(&mut rng, 0.6);
        let v = draw_disc(&mut rng, 0.4 * z.norm());
        let k_min = (-p.beta() - 1.0).floor() as i64 + 1;
        let k = rng.gen_range(k_min.max(0)..=4);
        let n = rng.gen_range(0..=5usize);
        items.push(Item { p, z, w, u, v, k, n });
    }
    let rows = ["gen-full", "gen-partial-v", "gen-partial-u", "bilinear", "gen-coefficients"]
        .iter()
        .map(|id| Residuals::new(*id, 1e-9))
        .collect::<Vec<_>>();
    let mut rows = rows;
    rows[3] = Residuals::new("bilinear", 1e-9).errata();
    let scaled = |row: usize, r: Result<crate::genfun::GenComparison>| -> (usize, Outcome) {
        from_rel(row, r.map(|c| {
            let res = c.residual();
            (res, res * 1e-9 / gen_tolerance(c.tail_bound))
        }))
    };
    let mut out = fold(rows, &items, |it| {
        let zp = pp(it.z);
        let mut o = vec![
            scaled(0, gen_full(it.u, it.v, &it.p, &zp, &tr)),
            scaled(1, gen_partial_v(it.v, it.k, &it.p, &zp, &tr)),
            scaled(2, gen_partial_u(it.u, it.n, &it.p, &zp, &tr)),
        ];
        let t = it.u * (0.5 / 0.6);
        let kb = it.k.max((-it.p.beta()).floor() as i64);
        o.push(scaled(3, gen_bilinear(t, kb, &it.p, &pp(it.z * 0.75), &pp(it.w), &tr)));
        let coef = (0..=5usize)
            .map(|k| {
                let d = full_closed_u_derivative(k, it.v, &it.p, &zp)?;
                let g = partial_v_closed_form(it.v, k as i64, &it.p, &zp);
                Ok(pair_rel(d, g, g.norm()))
            })
            .collect::<Result<Vec<(f64, f64)>>>()
            .map(|v| v.into_iter().fold((0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1))));
        o.push(from_rel(4, coef));
        o
    });

    let mut weighted = Vec::new();
    while weighted.len() < count {
        let p = draw_family(&mut rng, 0.1);
        let z = draw_point(&mut rng, (0.5, 2.0), 0.1);
        let v = draw_disc(&mut rng, 0.4 * z.norm());
        let u = C::from_polar(rng.gen_range(0.2..=1.0), -z.arg() + rng.gen_range(-0.8..0.8));
        let x = u * (z - v);
        let phase = u.arg() + z.arg() + (1.0 - v / z).arg() - x.arg();
        if x.re > 0.0 && phase.abs() < 1e-9 {
            weighted.push((p, z, u, v));
        }
    }
    out.extend(fold(vec![Residuals::new("gen-weighted", 1e-9)], &weighted, |(p, z, u, v)| {
        vec![from_rel(0, gen_weighted(*u, *v, p, &pp(*z), &tr).map(|c| {
            let res = c.residual();
            (res, res * 1e-9 / gen_tolerance(c.tail_bound))
        }))]
    }));
    out
}

/// Σ_k |ℓ_k| |x|^k for L_n^{(a)}(x) = Σ ℓ_k x^k.
fn laguerre_scale(n: usize, a: f64, x: C) -> f64 {
    laguerre_coefficients(n, a).iter().enumerate().map(|(k, c)| c.abs() * x.norm().powi(k as i32)).sum()
}

fn psi_rel(params: &FamilyParams, idx: &ModeIndex, z: C, got: Result<C>) -> Result<(f64, f64)> {
    let want = psi(params, idx, z)?;
    let scale = term_scale(params, idx, z)?.max(want.norm()).max(f64::MIN_POSITIVE);
    Ok(pair_rel(got?, want, scale))
}

fn representations(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Representations, 0);
    let mut out = Vec::new();

    let mut bessel = Vec::new();
    while bessel.len() < cfg.count(40) {
        let p = fam(rng.gen_range(0.5..=2.0), rng.gen_range(-0.9..3.0));
        let n = rng.gen_range(0..=6usize);
        let m = rng.gen_range(0..=6i64);
        if p.beta() + m as f64 - n as f64 > -1.0 {
            bessel.push((p, ModeIndex::new(n, m), draw_point(&mut rng, (0.3, 2.0), 0.1)));
        }
    }
    let rows = vec![Residuals::new("bessel-rep", 1e-7), Residuals::new("bessel-x-form", 1e-7).errata()];
    out.extend(fold(rows, &bessel, |(p, i, z)| {
        vec![
            from_rel(0, psi_rel(p, i, *z, bessel_rep(p, i, &pp(*z)))),
            from_rel(1, psi_rel(p, i, *z, bessel_rep_x(p, i, &pp(*z), true))),
        ]
    }));

    let int_family = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| fam(rng.gen_range(0.5..=1.5), rng.gen_range(lo..=hi) as f64);
    let mut c2 = Vec::new();
    for _ in 0..cfg.count(8) {
        let p = int_family(&mut rng, 0, 2);
        c2.push((p, ModeIndex::new(rng.gen_range(0..=6), rng.gen_range(0..=6)), draw_point(&mut rng, (0.3, 1.5), 0.1)));
    }
    out.extend(fold(vec![Residuals::new("gaussian-rep-c2", 1e-8)], &c2, |(p, i, z)| {
        vec![from_rel(0, psi_rel(p, i, *z, gaussian_rep_c2(p, i, &pp(*z))))]
    }));

    let mut ga3 = Vec::new();
    for _ in 0..cfg.count(20) {
        let p = int_family(&mut rng, -2, 2);
        let b = p.beta_rounded().unwrap();
        let q = rng.gen_range(0..=8i64);
        ga3.push((p, ModeIndex::new(rng.gen_range(0..=8), q - b), draw_point(&mut rng, (0.3, 1.5), 0.1)));
    }
    out.extend(fold(vec![Residuals::new("ga3-rep", 1e-8)], &ga3, |(p, i, z)| {
        vec![from_rel(0, psi_rel(p, i, *z, ga3_rep(p, i, &pp(*z))))]
    }));

    let mut proj = Vec::new();
    for _ in 0..cfg.count(20) {
        let p = int_family(&mut rng, 0, 2);
        let b = p.beta_rounded().unwrap();
        let k = rng.gen_range(-b..=4);
        proj.push((p, rng.gen_range(0..=6usize), k, draw_point(&mut rng, (0.3, 1.5), 0.1)));
    }
    out.extend(fold(vec![Residuals::new("monomial-projection", 1e-7).errata()], &proj, |(p, n, k, z)| {
        let idx = ModeIndex::new(*n, *k);
        vec![from_rel(0, psi_rel(p, &idx, *z, monomial_projection_rep(p, *n, *k, &pp(*z))))]
    }));

    let mut lag = Vec::new();
    for _ in 0..cfg.count(20) {
        let alpha = rng.gen_range(0.5..=1.5);
        let beta = rng.gen_range(0..=2i64) as f64;
        lag.push((alpha, beta, rng.gen_range(0..=8usize), draw_disc(&mut rng, 1.0), draw_point(&mut rng, (0.3, 1.5), 0.1)));
    }
    let rows = vec![Residuals::new("laguerre-integral", 1e-8), Residuals::new("laguerre-integral-special-cases", 1e-8)];
    out.extend(fold(rows, &lag, |&(alpha, beta, n, u, z)| {
        let check = |a: f64, u: C| -> Result<(f64, f64)> {
            let (lhs, direct) = laguerre_integral_formula(a, beta, n, u, &pp(z))?;
            let scale = laguerre_scale(n, beta - n as f64, a * z.norm_sqr() - u * z).max(direct.norm());
            Ok(pair_rel(lhs, direct, scale))
        };
        let special = check(0.0, C::new(-1.0, 0.0)).and_then(|a| check(1.0, C::new(0.0, 0.0)).map(|b| (a.0.max(b.0), a.1.max(b.1))));
        vec![from_rel(0, check(alpha, u)), from_rel(1, special)]
    }));
    out
}

fn transforms(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut rng = cfg.rng(Suite::Transforms, 0);
    let mut out = Vec::new();

    let mut bg = Vec::new();
    for _ in 0..cfg.count(20) {
        let alpha = rng.gen_range(0.5..=1.5);
        let beta = rng.gen_range(0..=2i64);
        let m = rng.gen_range(-beta..=3 - beta);
        let n = rng.gen_range(0..=4usize);
        bg.push((fam(alpha, beta as f64), m, n, draw_point(&mut rng, (0.3, 1.5), 0.1), draw_point(&mut rng, (0.3, 1.5), 0.1)));
    }
    let rows = vec![Residuals::new("bargmann-forward", 1e-8), Residuals::new("bargmann-inverse", 1e-7).errata()];
    out.extend(fold(rows, &bg, |&(p, m, n, z, w)| bargmann_obs(p, m, n, z, w)));

    let mut st = Vec::new();
    for _ in 0..cfg.count(10) {
        let p = fam(rng.gen_range(0.5..=1.5), rng.gen_range(-0.9..3.0));
        let n = rng.gen_range(0..=6usize);
        let j = rng.gen_range(0..=4usize);
        let pts = s_points(&mut rng, &p, n, j);
        st.push((p, n, j, pts));
    }
    out.extend(fold(vec![Residuals::new("s-transform", 1e-7).errata()], &st, |(p, n, j, pts)| s_obs(p, *n, *j, pts)));

    let unit: Vec<(FamilyParams, i64)> = vec![(fam(1.0, 0.0), 0), (fam(1.0, 1.0), 1), (fam(0.8, 1.0), 0)];
    out.extend(fold(vec![Residuals::new("bargmann-unitarity", 1e-7)], &unit, |&(p, m)| {
        vec![from_rel(0, unitarity(&p, m, 5))]
    }));
    out
}

fn bargmann_obs(p: FamilyParams, m: i64, n: usize, z: C, w: C) -> Obs {
    let alpha = p.alpha();
    let idx = ModeIndex::new(n, m);
    let k = bargmann_image_constant(&p, n, m);
    let fwd = TransformSpec::new(TransformKind::BargmannForward, p, m).and_then(|spec| {
        let got = bargmann_forward(&spec, |x| Ok(basis_e(n, alpha, x)), &pp(z))?;
        psi_rel(&p, &idx, z, Ok(got / k))
    });
    let inv = TransformSpec::new(TransformKind::BargmannInverse, p, m).and_then(|spec| {
        let back = bargmann_inverse(&spec, |x| Ok(k * psi(&p, &idx, x)?), w)?;
        let want = basis_e(n, alpha, w);
        Ok(pair_rel(back, want, basis_e(n, alpha, C::new(w.norm(), 0.0)).norm().max(f64::MIN_POSITIVE)))
    });
    vec![from_rel(0, fwd), from_rel(1, inv)]
}

/// Five points where ψ_{n,j} is not close to one of its zeros.
fn s_points(rng: &mut ChaCha8Rng, p: &FamilyParams, n: usize, j: usize) -> Vec<C> {
    let idx = ModeIndex::new(n, j as i64);
    let mut pts = Vec::new();
    while pts.len() < 5 {
        let z = draw_point(rng, (0.3, 1.5), 0.1);
        let (v, s) = (psi(p, &idx, z).unwrap_or_default(), term_scale(p, &idx, z).unwrap_or(0.0));
        if v.norm() > 1e-3 * s {
            pts.push(z);
        }
    }
    pts
}

/// Spread of 𝓢_n e_j / ψ_{n,j} over the points, and its offset from the
/// predicted constant.
fn s_obs(p: &FamilyParams, n: usize, j: usize, pts: &[C]) -> Obs {
    let r = TransformSpec::new(TransformKind::STransform, *p, n as i64).and_then(|spec| {
        let idx = ModeIndex::new(n, j as i64);
        let mut ratios = Vec::new();
        for z in pts {
            let s = s_transform(&spec, |u| Ok(basis_e(j, p.alpha(), u)), &pp(*z))?;
            ratios.push(s / psi(p, &idx, *z)?);
        }
        let expected = s_transform_image_constant(p.alpha(), j);
        let spread = ratios.iter().map(|r| (r - ratios[0]).norm()).fold(0.0, f64::max) / ratios[0].norm();
        let constant = (ratios[0] - expected).norm() / expected;
        Ok((spread.max(constant) * expected, spread.max(constant)))
    });
    vec![from_rel(0, r)]
}

/// Transform checks for one family and fixed index m over the basis
/// e_0..e_{basis-1}. Refuses non-integer β.
pub fn transform_reports(params: &FamilyParams, m: i64, basis: usize, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    if !params.beta_is_integer() {
        return Err(Error::Domain(format!("beta = {} is not an integer; the Bargmann kernels carry a branch", params.beta())));
    }
    if basis == 0 {
        return Err(Error::Domain("basis cap must be positive".into()));
    }
    ModeIndex::new(0, m).check(params)?;
    let mut rng = cfg.rng(Suite::Transforms, 1);
    let per = cfg.count(3);
    let mut bg = Vec::new();
    for n in 0..basis {
        for _ in 0..per {
            bg.push((n, draw_point(&mut rng, (0.3, 1.5), 0.1), draw_point(&mut rng, (0.3, 1.5), 0.1)));
        }
    }
    let p = *params;
    let rows = vec![Residuals::new("bargmann-forward", 1e-8), Residuals::new("bargmann-inverse", 1e-7).errata()];
    let mut out = fold(rows, &bg, |&(n, z, w)| bargmann_obs(p, m, n, z, w));
    let mut st = Vec::new();
    if p.beta() > -1.0 {
        for n in 0..basis {
            for j in 0..basis {
                st.push((n, j, s_points(&mut rng, &p, n, j)));
            }
        }
    }
    out.extend(fold(vec![Residuals::new("s-transform", 1e-7).errata()], &st, |(n, j, pts)| s_obs(&p, *n, *j, pts)));
    out.extend(fold(vec![Residuals::new("bargmann-unitarity", 1e-7)], &[()], |_| vec![from_rel(0, unitarity(&p, m, basis))]));
    Ok(out
        .into_iter()
        .map(|r| {
            let r = r.with_seed(cfg.seed);
            match cfg.tolerance {
                Some(t) => r.with_tolerance(t),
                None => r,
            }
        })
        .collect())
}

/// Max |G - I| for the Gram matrix of 𝓑_m e_n, n < basis.
fn unitarity(p: &FamilyParams, m: i64, basis: usize) -> Result<(f64, f64)> {
    let spec = TransformSpec::new(TransformKind::BargmannForward, *p, m)?;
    let mut lowest = i64::MAX;
    for n in 0..basis {
        let b: BiOrder = biorder(p, &ModeIndex::new(n, m))?;
        lowest = lowest.min(b.r + b.s);
    }
    let pole = (-lowest).max(0) as u32;
    let (ro, ao) = default_orders(basis, m.max(0) as usize);
    let nodes = weighted_nodes(p, ro + pole as usize, ao, pole)?;
    let alpha = p.alpha();
    let values: Vec<Vec<C>> = (0..basis)
        .map(|n| {
            nodes
                .par_iter()
                .map(|&(z, _)| bargmann_forward(&spec, |x| Ok(basis_e(n, alpha, x)), &pp(z)))
                .collect::<Result<Vec<C>>>()
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for i in 0..basis {
        for j in 0..basis {
            let g: C = nodes.iter().enumerate().map(|(k, &(_, w))| values[i][k] * values[j][k].conj() * w).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - want).norm());
        }
    }
    Ok((worst, worst))
}

/// Bi-order from the case table: integer β with n > β + m gives
/// (-β, n - β - m); every other admissible cell gives (m - n, 0) when
/// n > m and is polynomial otherwise.
pub fn biorder_case_table(params: &FamilyParams, idx: &ModeIndex) -> BiOrder {
    let (n, m) = (idx.n as i64, idx.m);
    match params.beta_rounded() {
        Some(b) if n > b + m => BiOrder { r: -b, s: n - b - m },
        Some(_) => BiOrder { r: m - n, s: 0 },
        None => BiOrder { r: m - n, s: 0 },
    }
}

/// Lowest exponents of z and z̄ among the nonzero terms of the explicit sum.
fn biorder_from_terms(params: &FamilyParams, idx: &ModeIndex) -> Option<BiOrder> {
    let k = (0..=idx.n).rev().find(|&k| coeff_c(params, idx.m, idx.n, k) != 0.0)?;
    Some(BiOrder { r: idx.m - k as i64, s: (idx.n - k) as i64 })
}

fn biorder_suite(_cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut cells = Vec::new();
    for beta in [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0] {
        let p = fam(1.0, beta);
        for n in 0..=8usize {
            for m in -3..=8i64 {
                let idx = ModeIndex::new(n, m);
                if idx.is_admissible(&p) {
                    cells.push((p, idx));
                }
            }
        }
    }
    let rows = vec![Residuals::new("biorder-case-table", 0.0), Residuals::new("biorder-leading-terms", 0.0)];
    fold(rows, &cells, |(p, i)| {
        let Ok(b) = biorder(p, i) else {
            return vec![(0, Outcome::Failed), (1, Outcome::Failed)];
        };
        let table = if b == biorder_case_table(p, i) { Outcome::Relative(0.0, 0.0) } else { Outcome::Failed };
        let terms = if Some(b) == biorder_from_terms(p, i) { Outcome::Relative(0.0, 0.0) } else { Outcome::Failed };
        vec![(0, table), (1, terms)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig { samples: Some(3), ..SuiteConfig::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn case_table_examples() {
        assert_eq!(biorder_case_table(&fam(1.0, 0.5), &ModeIndex::new(3, 1)), BiOrder { r: -2, s: 0 });
        assert_eq!(biorder_case_table(&fam(1.0, 2.0), &ModeIndex::new(5, 1)), BiOrder { r: -2, s: 2 });
        assert_eq!(biorder_case_table(&fam(1.0, 0.0), &ModeIndex::new(2, 5)), BiOrder { r: 3, s: 0 });
    }

    #[test]
    fn quick_runs_pass() {
        for s in [Suite::ClosedForms, Suite::Routes, Suite::Spectral, Suite::Identities, Suite::Biorder] {
            for row in run_suite(s, &quick()) {
                assert!(row.passed, "{row:?}");
                assert_eq!(row.seed, Some(DEFAULT_SEED));
            }
        }
    }

    #[test]
    fn transform_defaults_pass() {
        for (beta, m) in [(0.0, 0), (1.0, 1)] {
            for r in transform_reports(&fam(1.0, beta), m, 3, &SuiteConfig::default()).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
        assert!(transform_reports(&fam(1.0, 0.5), 0, 3, &SuiteConfig::default()).is_err());
    }

    #[test]
    fn tolerance_override_spares_rejection_rows() {
        let cfg = SuiteConfig { tolerance: Some(0.0), ..quick() };
        let rows = run_suite(Suite::Identities, &cfg);
        for r in rows {
            if r.identity_id.ends_with(REJECTION_SUFFIX) {
                assert!(r.passed);
            } else {
                assert_eq!(r.tolerance, 0.0);
            }
        }
    }
}

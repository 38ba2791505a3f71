//! Deterministic numerics for the archimedean zeta integral.
//!
//! Quadrature is a tanh-sinh product rule refined by halving the step until
//! two successive levels agree. Infinite ranges use `r = tan(theta)`.
//! Gamma values come from [`crate::gammaledger::ln_gamma_signed`].

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;

use crate::cubicforms::{quartic_q, BinaryCubic};
use crate::exactalg::{int, rat, Affine, Rational};
use crate::gammaledger::{gamma_c_f64, gamma_f64, gamma_r_f64, GammaConstant, GammaExpr};
use crate::intertwiner::mat_det;
use crate::{Error, Result};

/// Integration range for one coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// The whole real line, through `r = tan(theta)`.
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub min_level: u32,
    pub max_level: u32,
    /// Truncation of the tanh-sinh parameter range.
    pub t_max: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { abs_tol: 1e-13, rel_tol: 1e-11, min_level: 3, max_level: 9, t_max: 3.5 }
    }
}

impl QuadSpec {
    /// Settings for three-dimensional integrals.
    pub fn cubature() -> Self {
        QuadSpec { abs_tol: 1e-12, rel_tol: 1e-8, min_level: 3, max_level: 6, t_max: 3.2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericResult {
    pub value: f64,
    /// Difference between the last two levels.
    pub error_estimate: f64,
    pub evaluations: usize,
    pub level: u32,
}

/// Tanh-sinh nodes and weights on `(-1, 1)` for step `2^-level`.
fn tanh_sinh_nodes(level: u32, t_max: f64) -> Vec<(f64, f64)> {
    let h = 0.5f64.powi(level as i32);
    let n = (t_max / h).ceil() as i64;
    let mut out = Vec::with_capacity(2 * n as usize + 1);
    for k in -n..=n {
        let t = k as f64 * h;
        let u = PI / 2.0 * t.sinh();
        let x = u.tanh();
        if x.abs() >= 1.0 {
            continue;
        }
        let ch = u.cosh();
        let w = h * PI / 2.0 * t.cosh() / (ch * ch);
        out.push((x, w));
    }
    out
}

fn map_nodes(nodes: &[(f64, f64)], iv: Interval) -> Vec<(f64, f64)> {
    match iv {
        Interval::Finite(a, b) => {
            let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
            nodes.iter().map(|(x, w)| (c + r * x, w * r)).collect()
        }
        Interval::Real => nodes
            .iter()
            .filter_map(|(x, w)| {
                let th = x * PI / 2.0;
                let cos = th.cos();
                let r = th.tan();
                (cos > 0.0 && r.is_finite()).then(|| (r, w * PI / 2.0 / (cos * cos)))
            })
            .collect(),
    }
}

/// Sum in a fixed binary tree so the result does not depend on scheduling.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

fn product_rule<F>(f: &F, grids: &[Vec<(f64, f64)>], point: &mut Vec<f64>) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let depth = point.len();
    if depth == grids.len() {
        return f(point);
    }
    let mut terms = Vec::with_capacity(grids[depth].len());
    for (x, w) in &grids[depth] {
        point.push(*x);
        terms.push(w * product_rule(f, grids, point));
        point.pop();
    }
    pairwise_sum(&terms)
}

fn integrate_level<F>(f: &F, domains: &[Interval], level: u32, t_max: f64) -> (f64, usize)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let nodes = tanh_sinh_nodes(level, t_max);
    let grids: Vec<Vec<(f64, f64)>> = domains.iter().map(|iv| map_nodes(&nodes, *iv)).collect();
    let evals = grids.iter().map(|g| g.len()).product();
    let outer: Vec<f64> = grids[0]
        .par_iter()
        .map(|(x, w)| {
            let mut point = vec![*x];
            w * product_rule(f, &grids, &mut point)
        })
        .collect();
    (pairwise_sum(&outer), evals)
}

/// Integrate `f` over the product of `domains` (dimension 1 to 3).
pub fn integrate<F>(f: F, domains: &[Interval], spec: &QuadSpec) -> Result<NumericResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if domains.is_empty() || domains.len() > 3 {
        return Err(Error::Domain("dimension must be 1, 2 or 3".into()));
    }
    let mut prev: Option<f64> = None;
    let mut total = 0;
    let mut last = (f64::NAN, f64::INFINITY);
    for level in spec.min_level..=spec.max_level {
        let (value, evals) = integrate_level(&f, domains, level, spec.t_max);
        total += evals;
        if !value.is_finite() {
            return Err(Error::NoConvergence { estimate: value, error: f64::INFINITY });
        }
        if let Some(p) = prev {
            let err = (value - p).abs();
            last = (value, err);
            if err <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
                return Ok(NumericResult { value, error_estimate: err, evaluations: total, level });
            }
        }
        prev = Some(value);
    }
    Err(Error::NoConvergence { estimate: last.0, error: last.1 })
}

/// `1/Gamma(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / gamma_f64(x)
    }
}

fn rgamma_r(x: f64) -> f64 {
    PI.powf(x / 2.0) * rgamma(x / 2.0)
}

/// Complex number as `(re, im)`.
pub type Complex = (f64, f64);

/// `int_R (x^2+1)^(-(s+1)/2) ((x+i)/sqrt(x^2+1))^j dx` by quadrature.
pub fn sl2_numeric(s: f64, j: i32, spec: &QuadSpec) -> Result<Complex> {
    // (x+i)/sqrt(x^2+1) = exp(i phi) with phi = atan2(1, x).
    let part = |imag: bool| {
        move |x: &[f64]| {
            let r = x[0];
            let phi = 1f64.atan2(r);
            let m = (r * r + 1.0).powf(-(s + 1.0) / 2.0);
            let a = j as f64 * phi;
            m * if imag { a.sin() } else { a.cos() }
        }
    };
    let re = integrate(part(false), &[Interval::Real], spec)?;
    let im = integrate(part(true), &[Interval::Real], spec)?;
    Ok((re.value, im.value))
}

/// `i^j Gamma_C(s) / (Gamma_R(s-j+1) Gamma_R(s+j+1))`.
pub fn sl2_closed(s: f64, j: i32) -> Complex {
    let mag = gamma_c_f64(s) * rgamma_r(s - j as f64 + 1.0) * rgamma_r(s + j as f64 + 1.0);
    match j.rem_euclid(4) {
        0 => (mag, 0.0),
        1 => (0.0, mag),
        2 => (-mag, 0.0),
        _ => (0.0, -mag),
    }
}

/// For even `j`: `Gamma_R(s)/Gamma_R(s+1) ((1-s)/2)_(j/2) / ((1+s)/2)_(j/2)`.
pub fn sl2_pochhammer_form(s: f64, j: i32) -> f64 {
    let mut ratio = gamma_r_f64(s) / gamma_r_f64(s + 1.0);
    for k in 0..(j.abs() / 2) {
        ratio *= ((1.0 - s) / 2.0 + k as f64) / ((1.0 + s) / 2.0 + k as f64);
    }
    ratio
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Report {
    pub s: f64,
    pub j: i32,
    pub numeric: Complex,
    pub closed: Complex,
    /// Relative error, or absolute error when the closed form vanishes.
    pub error: f64,
    /// Relative gap between the closed form and the Pochhammer form (even `j`).
    pub pochhammer_gap: Option<f64>,
}

pub fn sl2_check(s: f64, j: i32, spec: &QuadSpec) -> Result<Sl2Report> {
    let numeric = sl2_numeric(s, j, spec)?;
    let closed = sl2_closed(s, j);
    let diff = ((numeric.0 - closed.0).powi(2) + (numeric.1 - closed.1).powi(2)).sqrt();
    let scale = (closed.0.powi(2) + closed.1.powi(2)).sqrt();
    let error = if scale > 0.0 { diff / scale } else { diff };
    let pochhammer_gap = (j % 2 == 0).then(|| {
        // The sign i^j is already carried by the Pochhammer ratio.
        let p = sl2_pochhammer_form(s, j);
        let c = closed.0;
        if c == 0.0 {
            p.abs()
        } else {
            ((p - c) / c).abs()
        }
    });
    Ok(Sl2Report { s, j, numeric, closed, error, pochhammer_gap })
}

/// `prod (1+r_i^2)^(-2s) prod_{i<j} |r_i - r_j|^(2s-1)`.
pub fn jprime_integrand(r: &[f64; 3], s: f64) -> f64 {
    let damp: f64 = r.iter().map(|x| (1.0 + x * x).powf(-2.0 * s)).product();
    let vander = ((r[0] - r[1]) * (r[1] - r[2]) * (r[2] - r[0])).abs();
    damp * vander.powf(2.0 * s - 1.0)
}

/// The same integrand after `r_i = tan(theta_i)`, including the Jacobian:
/// the powers of `cos` cancel and `prod |sin(theta_i - theta_j)|^(2s-1)`
/// remains.
pub fn jprime_integrand_theta(th: &[f64; 3], s: f64) -> f64 {
    let v = ((th[0] - th[1]).sin() * (th[1] - th[2]).sin() * (th[2] - th[0]).sin()).abs();
    v.powf(2.0 * s - 1.0)
}

/// `J'(s) = Gamma(2s)/2 * int_{R^3} prod (1+r_i^2)^(-2s) prod |r_i-r_j|^(2s-1) dr`,
/// integrating over `r1 < r2 < r3` in angle coordinates and multiplying by 6.
pub fn jprime_numeric(s: f64, spec: &QuadSpec) -> Result<NumericResult> {
    let half = PI / 2.0;
    let f = move |x: &[f64]| {
        let t1 = -half + PI * x[0];
        let t2 = t1 + (half - t1) * x[1];
        let t3 = t2 + (half - t2) * x[2];
        let jac = PI * (half - t1) * (half - t2);
        jac * jprime_integrand_theta(&[t1, t2, t3], s)
    };
    let unit = Interval::Finite(0.0, 1.0);
    let r = integrate(f, &[unit, unit, unit], spec)?;
    let k = 3.0 * gamma_f64(2.0 * s);
    Ok(NumericResult { value: k * r.value, error_estimate: k * r.error_estimate, ..r })
}

/// `2^(-6s) Gamma(2s) Gamma(3s - 1/2) / Gamma(s + 1/2)^3`.
pub fn jprime_closed(s: f64) -> f64 {
    2f64.powf(-6.0 * s) * gamma_f64(2.0 * s) * gamma_f64(3.0 * s - 0.5) / gamma_f64(s + 0.5).powi(3)
}

/// Ratios of numeric to closed-form values and their relative spread.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub points: Vec<f64>,
    pub ratios: Vec<f64>,
    /// `(max - min) / |mean|`.
    pub spread: f64,
}

impl RatioReport {
    pub fn new(points: Vec<f64>, ratios: Vec<f64>) -> Self {
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        RatioReport { spread: (max - min) / mean.abs(), points, ratios }
    }
}

pub fn jprime_check(s_values: &[f64], spec: &QuadSpec) -> Result<RatioReport> {
    let mut ratios = Vec::new();
    for &s in s_values {
        ratios.push(jprime_numeric(s, spec)?.value / jprime_closed(s));
    }
    Ok(RatioReport::new(s_values.to_vec(), ratios))
}

/// Coefficients of `t (w - r1 z)(w - r2 z)(w - r3 z)`.
pub fn cubic_from_roots(t: &Rational, r: &[Rational; 3]) -> BinaryCubic {
    let e1 = &r[0] + &r[1] + &r[2];
    let e2 = &r[0] * &r[1] + &r[0] * &r[2] + &r[1] * &r[2];
    let e3 = &r[0] * &r[1] * &r[2];
    BinaryCubic::new(t.clone(), -(t * e1), t * e2, -(t * e3))
}

/// Jacobian matrix of `(t, r1, r2, r3) -> (a, b, c, d)`.
pub fn root_jacobian(t: &Rational, r: &[Rational; 3]) -> Vec<Vec<Rational>> {
    let e1 = &r[0] + &r[1] + &r[2];
    let e2 = &r[0] * &r[1] + &r[0] * &r[2] + &r[1] * &r[2];
    let e3 = &r[0] * &r[1] * &r[2];
    let others = |i: usize| -> Rational {
        (0..3).filter(|k| *k != i).map(|k| r[k].clone()).product()
    };
    let mut rows = vec![
        vec![int(1), int(0), int(0), int(0)],
        vec![-e1.clone(), -t.clone(), -t.clone(), -t.clone()],
        vec![e2.clone()],
        vec![-e3.clone()],
    ];
    for i in 0..3 {
        rows[2].push(t * (&e1 - &r[i]));
        rows[3].push(-(t * others(i)));
    }
    rows
}

/// Exact checks at random rational points: `|det J| = |t^3 (r1-r2)(r2-r3)(r3-r1)|`
/// and `q(v)/q(v_E) = t^4 prod (r_i - r_j)^2`.
pub fn jacobian_and_quartic_check<R: Rng>(samples: usize, rng: &mut R) -> Result<(bool, bool)> {
    let mut jac_ok = true;
    let mut q_ok = true;
    let q_e = quartic_q(&BinaryCubic::split())?;
    for _ in 0..samples {
        let mut draw = || rat(rng.gen_range(-40..=40), rng.gen_range(1..=9));
        let t = loop {
            let x = draw();
            if x != int(0) {
                break x;
            }
        };
        let r = [draw(), draw(), draw()];
        let vander = (&r[0] - &r[1]) * (&r[1] - &r[2]) * (&r[2] - &r[0]);
        let det = mat_det(&root_jacobian(&t, &r));
        let expected = &t * &t * &t * &vander;
        if det.clone() * det.clone() != expected.clone() * expected {
            jac_ok = false;
        }
        let q = quartic_q(&cubic_from_roots(&t, &r))?;
        if q / &q_e != &t * &t * &t * &t * &vander * &vander {
            q_ok = false;
        }
    }
    Ok((jac_ok, q_ok))
}

/// The Gamma prefactor of `I(s; l)` in front of `J'((s+l-2)/2)`:
/// `pi^-s Gamma(s+2l-3) Gamma(s+l-2) Gamma((s+l-3)/2)^2 / (Gamma((s+l)/2) Gamma(s+l-3) Gamma((3s+3l-7)/2))`.
pub fn i_prefactor(s: f64, ell: u32) -> f64 {
    let l = ell as f64;
    PI.powf(-s) * gamma_f64(s + 2.0 * l - 3.0) * gamma_f64(s + l - 2.0)
        * gamma_f64((s + l - 3.0) / 2.0).powi(2)
        / (gamma_f64((s + l) / 2.0) * gamma_f64(s + l - 3.0) * gamma_f64((3.0 * s + 3.0 * l - 7.0) / 2.0))
}

/// `2^s Gamma_R(s-1) Gamma_C(s+l-1) Gamma_C(s+l-2)`.
pub fn i_star_normalizer(s: f64, ell: u32) -> f64 {
    let l = ell as f64;
    2f64.powf(s) * gamma_r_f64(s - 1.0) * gamma_c_f64(s + l - 1.0) * gamma_c_f64(s + l - 2.0)
}

/// `Gamma_R(s-1) Gamma_C(s+l-3) Gamma_C(s+l-2) Gamma_C(s+2l-3)`.
pub fn i_star_target(s: f64, ell: u32) -> f64 {
    let l = ell as f64;
    gamma_r_f64(s - 1.0) * gamma_c_f64(s + l - 3.0) * gamma_c_f64(s + l - 2.0) * gamma_c_f64(s + 2.0 * l - 3.0)
}

/// Ratio of the assembled `I*(s; l)` to the target at each grid point, with
/// `J'` either in closed form or by quadrature.
pub fn istar_ratios(ell: u32, s_grid: &[f64], numeric_jprime: Option<&QuadSpec>) -> Result<RatioReport> {
    let mut ratios = Vec::new();
    for &s in s_grid {
        let sigma = (s + ell as f64 - 2.0) / 2.0;
        let jp = match numeric_jprime {
            Some(spec) => jprime_numeric(sigma, spec)?.value,
            None => jprime_closed(sigma),
        };
        let istar = i_star_normalizer(s, ell) * i_prefactor(s, ell) * jp;
        ratios.push(istar / i_star_target(s, ell));
    }
    Ok(RatioReport::new(s_grid.to_vec(), ratios))
}

/// The same chain as exact Gamma expressions; returns the constant by which
/// the assembled `I*` differs from the target, if the ratio is constant.
pub fn istar_symbolic(ell: u32) -> Result<Option<GammaConstant>> {
    let l = ell as i64;
    let half = |a: i64, b: i64| Affine::new(rat(a, 2), rat(b, 2));
    let g = GammaExpr::gamma;
    let sigma = half(1, l - 2);
    // J'(sigma) = 2^(-6 sigma) Gamma(2 sigma) Gamma(3 sigma - 1/2) / Gamma(sigma + 1/2)^3
    let jp = GammaExpr::two_pow(sigma.scale(&int(-6)))
        .mul(&g(sigma.scale(&int(2))))
        .mul(&g(sigma.scale(&int(3)).shift(&rat(-1, 2))))
        .div(&g(sigma.shift(&rat(1, 2))).pow(3)?)?;
    let pre = GammaExpr::pi_pow(Affine::ints(-1, 0))
        .mul(&g(Affine::ints(1, 2 * l - 3)))
        .mul(&g(Affine::ints(1, l - 2)))
        .mul(&g(half(1, l - 3)).pow(2)?)
        .div(&g(half(1, l)))?
        .div(&g(Affine::ints(1, l - 3)))?
        .div(&g(half(3, 3 * l - 7)))?;
    let norm = GammaExpr::two_pow(Affine::ints(1, 0))
        .mul(&GammaExpr::gamma_r(Affine::ints(1, -1)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 1)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 2)));
    let lhs = norm.mul(&pre).mul(&jp);
    let rhs = GammaExpr::gamma_r(Affine::ints(1, -1))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 3)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 2)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, 2 * l - 3)));
    lhs.equal_modulo_duplication(&rhs)
}

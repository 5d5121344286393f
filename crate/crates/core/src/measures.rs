//! Densities and kernels for `|q| < 1`: the q-Hermite weight `f_H`, the
//! conditional law `mu(dx|rho,y)`, the Al-Salam-Chihara weight, and the
//! Poisson-Mehler kernel in both product and series form. Infinite products
//! are accumulated as sums of logarithms.
//!
//! Integrals over the support `x^2 < 4/(1-q)` go through `x = 2cos(t)/sqrt(1-q)`,
//! which turns the square-root edge behaviour into a smooth periodic
//! integrand in `t`.

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{asc_values, hermite_values};
use crate::report::{Identity, NumericOutcome, NumericReport};

pub const NORMALIZATION: Identity = Identity { id: "normalization", formula: "integral of the density over x^2 < 4/(1-q) equals 1" };

pub const CONDITIONAL_MOMENTS: Identity = Identity {
    id: "conditional-moments",
    formula: "integral H_n(x|q) mu(dx|rho,y) = rho^n H_n(y|q)",
};

pub const KERNEL_AGREEMENT: Identity = Identity {
    id: "poisson-mehler",
    formula: "sum_n rho^n/[n]_q! H_n(x)H_n(y) = prod_k (1-rho^2 q^k)/((1-rho^2 q^2k)^2 - (1-q)rho q^k (1+rho^2 q^2k) xy + (1-q)rho^2 (x^2+y^2) q^2k)",
};

pub const KERNEL_FACTORIZATION: Identity = Identity {
    id: "kernel-factorization",
    formula: "density of mu(.|rho,y) = f_H(x) g_H(x,y,rho)",
};

pub const ASC_REPARAMETRIZATION: Identity = Identity {
    id: "asc-density",
    formula: "Al-Salam-Chihara density(x|q,a,b) = density of mu(.|sqrt(b), a/sqrt(b))",
};

pub const ASC_ORTHOGONALITY: Identity = Identity {
    id: "asc-orthogonality-numeric",
    formula: "integral p_m p_n w_asc dx = delta_mn [n]_q! prod_{i=1..n} (1 - b q^(i-1))",
};

pub const CHAPMAN: Identity = Identity {
    id: "chapman-kolmogorov",
    formula: "mu(.|rho1 rho2, x) = integral mu(.|rho1, y) mu(dy|rho2, x)",
};

pub const NONNEGATIVITY: Identity = Identity { id: "nonnegativity", formula: "density >= 0 on the support" };

/// When to stop an infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationPolicy {
    pub epsilon: f64,
    pub max_factors: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { epsilon: 1e-15, max_factors: 500 }
    }
}

/// Outcome of a truncated product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductValue {
    pub value: f64,
    pub factors: usize,
    /// Hit `max_factors` before the stopping rule fired.
    pub truncated: bool,
}

/// `prod_{k>=0} factor(k, q^k)`. Stops after factor `k` once both
/// `|factor - 1|` and `|q|^k` are below `epsilon * (1 - |q|)`, the second
/// condition bounding the geometric tail.
pub fn log_product(q: f64, policy: &TruncationPolicy, mut factor: impl FnMut(usize, f64) -> f64) -> ProductValue {
    let stop = policy.epsilon * (1.0 - q.abs());
    let mut log_abs = 0.0;
    let mut negative = false;
    let mut qk = 1.0;
    for k in 0..policy.max_factors {
        let f = factor(k, qk);
        if f == 0.0 {
            return ProductValue { value: 0.0, factors: k + 1, truncated: false };
        }
        negative ^= f < 0.0;
        log_abs += f.abs().ln();
        if (f - 1.0).abs() < stop && qk.abs() < stop {
            let v = log_abs.exp();
            return ProductValue { value: if negative { -v } else { v }, factors: k + 1, truncated: false };
        }
        qk *= q;
    }
    let v = log_abs.exp();
    ProductValue { value: if negative { -v } else { v }, factors: policy.max_factors, truncated: true }
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("need |q| < 1, got q = {q}")))
    }
}

/// Half-width `2/sqrt(1-q)` of the support.
pub fn support_half_width(q: f64) -> f64 {
    2.0 / (1.0 - q).sqrt()
}

fn inside_support(x: f64, q: f64) -> bool {
    (1.0 - q) * x * x < 4.0
}

/// `sqrt(1-q) sqrt(4 - (1-q)x^2) / (2 pi)`: the prefactor with the `k = 0`
/// numerator factor `4 - (1-q)x^2` already absorbed.
fn edge_prefactor(x: f64, q: f64) -> f64 {
    (1.0 - q).sqrt() * (4.0 - (1.0 - q) * x * x).sqrt() / (2.0 * PI)
}

/// `(1 + q^k)^2 - (1-q) x^2 q^k` for `k >= 1`, or `1` for `k = 0` (absorbed).
fn edge_factor(x: f64, q: f64, k: usize, qk: f64) -> f64 {
    if k == 0 {
        1.0
    } else {
        (1.0 + qk).powi(2) - (1.0 - q) * x * x * qk
    }
}

/// Weight of the q-Hermite polynomials.
pub fn density_qhermite(x: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    check_q(q)?;
    if !inside_support(x, q) {
        return Ok(0.0);
    }
    let prod = log_product(q, policy, |k, qk| edge_factor(x, q, k, qk) * (1.0 - qk * q));
    Ok(edge_prefactor(x, q) * prod.value)
}

/// `(1-rho^2 q^2k)^2 - (1-q) rho q^k (1 + rho^2 q^2k) x y + (1-q) rho^2 (x^2+y^2) q^2k`.
fn kernel_denominator(x: f64, y: f64, rho: f64, q: f64, qk: f64) -> f64 {
    let q2k = qk * qk;
    let r2 = rho * rho;
    (1.0 - r2 * q2k).powi(2) - (1.0 - q) * rho * qk * (1.0 + r2 * q2k) * x * y + (1.0 - q) * r2 * (x * x + y * y) * q2k
}

fn check_kernel_args(x: f64, y: f64, rho: f64, q: f64) -> Result<()> {
    check_q(q)?;
    if !(rho.abs() < 1.0) {
        return Err(Error::domain(format!("need |rho| < 1, got rho = {rho}")));
    }
    let lim = 4.0 / (1.0 - q);
    if x * x > lim || y * y > lim {
        return Err(Error::domain(format!("x = {x}, y = {y} outside x^2, y^2 <= 4/(1-q)")));
    }
    Ok(())
}

/// Poisson-Mehler kernel from its product form.
pub fn poisson_mehler(x: f64, y: f64, rho: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    check_kernel_args(x, y, rho, q)?;
    Ok(log_product(q, policy, |_, qk| (1.0 - rho * rho * qk) / kernel_denominator(x, y, rho, q, qk)).value)
}

/// Poisson-Mehler kernel from the first `n_terms` terms of its series.
/// Uses `h_n = (1-q)^(n/2) H_n`, so the `n`-th term is
/// `rho^n h_n(x) h_n(y) / (q;q)_n`.
pub fn poisson_mehler_series(x: f64, y: f64, rho: f64, q: f64, n_terms: usize) -> Result<f64> {
    check_kernel_args(x, y, rho, q)?;
    let hx = scaled_hermite_values(n_terms, x, q);
    let hy = scaled_hermite_values(n_terms, y, q);
    let mut sum = 0.0;
    let mut weight = 1.0; // rho^n / (q;q)_n
    let mut qn = 1.0;
    for n in 0..n_terms {
        if n > 0 {
            qn *= q;
            weight *= rho / (1.0 - qn);
        }
        sum += weight * hx[n] * hy[n];
    }
    Ok(sum)
}

/// `(1-q)^(n/2) H_n(x|q)` for `n = 0..=n_max`:
/// `h_{n+1} = sqrt(1-q) x h_n - (1 - q^n) h_{n-1}`.
pub fn scaled_hermite_values(n_max: usize, x: f64, q: f64) -> Vec<f64> {
    let s = (1.0 - q).sqrt();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    let mut qn = 1.0;
    for n in 0..n_max {
        let mut next = s * x * out[n];
        if n > 0 {
            next -= (1.0 - qn) * out[n - 1];
        }
        out.push(next);
        qn *= q;
    }
    out
}

/// Empirical constant `C_q` in `|H_n(x)| <= C_q (n+1) (1-q)^(-n/2)` on the
/// support: the maximum of `|h_n(x)|/(n+1)` over `n <= 40` and a grid of
/// 401 points.
pub fn hermite_bound_constant(q: f64) -> f64 {
    let w = support_half_width(q);
    let mut c: f64 = 1.0;
    for i in 0..=400 {
        let x = -w + 2.0 * w * i as f64 / 400.0;
        for (n, h) in scaled_hermite_values(40, x, q).iter().enumerate() {
            c = c.max(h.abs() / (n + 1) as f64);
        }
    }
    c
}

/// Number of series terms after which the kernel tail is below `tol`,
/// from `|term_n| <= C_q^2 (n+1)^2 |rho|^n / (|q|;|q|)_inf`.
pub fn kernel_series_terms(rho: f64, q: f64, tol: f64) -> usize {
    const CAP: usize = 5000;
    let c = hermite_bound_constant(q);
    let mut pochhammer = 1.0;
    let mut qa = q.abs();
    while qa > 1e-18 {
        pochhammer *= 1.0 - qa;
        qa *= q.abs();
    }
    let r = rho.abs();
    if r == 0.0 {
        return 1;
    }
    let mut bound = c * c / pochhammer; // n = 0
    for n in 0..CAP {
        let ratio = ((n + 2) as f64 / (n + 1) as f64).powi(2) * r;
        if ratio < 1.0 && bound / (1.0 - ratio) < tol {
            return n.max(1);
        }
        bound *= ratio;
    }
    CAP
}

/// Conditional density of `mu(dx|rho,y)`, straight from its product formula.
pub fn density_mu(x: f64, rho: f64, y: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    check_q(q)?;
    if !(rho.abs() < 1.0) {
        return Err(Error::domain(format!("need |rho| < 1, got rho = {rho}")));
    }
    if !(y * y * (1.0 - q) < 4.0) {
        return Err(Error::domain(format!("need y^2 (1-q) < 4, got y = {y}")));
    }
    if !inside_support(x, q) {
        return Ok(0.0);
    }
    let prod = log_product(q, policy, |k, qk| {
        (1.0 - rho * rho * qk) * (1.0 - qk * q) * edge_factor(x, q, k, qk) / kernel_denominator(x, y, rho, q, qk)
    });
    Ok(edge_prefactor(x, q) * prod.value)
}

/// Weight of the Al-Salam-Chihara polynomials `p_n(x|q,a,b)`, straight from
/// its product formula.
pub fn density_asc(x: f64, a: f64, b: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    check_q(q)?;
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain(format!("need 0 < b < 1, got b = {b}")));
    }
    if !(a * a * (1.0 - q) < 4.0 * b) {
        return Err(Error::domain(format!("need a^2 (1-q) < 4b, got a = {a}, b = {b}")));
    }
    if !inside_support(x, q) {
        return Ok(0.0);
    }
    let prod = log_product(q, policy, |k, qk| {
        let q2k = qk * qk;
        let den = (1.0 - b * q2k).powi(2) - (1.0 - q) * a * qk * (1.0 + b * q2k) * x + (1.0 - q) * (b * x * x + a * a) * q2k;
        (1.0 - b * qk) * (1.0 - qk * q) * edge_factor(x, q, k, qk) / den
    });
    Ok(edge_prefactor(x, q) * prod.value)
}

/// The three densities with their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DensityParams {
    /// `f_H`
    Hermite { q: f64 },
    /// `mu(dx|rho,y)`; needs `|rho| < 1`, `y^2(1-q) < 4`.
    Mu { q: f64, rho: f64, y: f64 },
    /// Al-Salam-Chihara weight; needs `0 < b < 1`, `a^2(1-q) < 4b`.
    Asc { q: f64, a: f64, b: f64 },
}

impl DensityParams {
    pub fn q(&self) -> f64 {
        match *self {
            DensityParams::Hermite { q } | DensityParams::Mu { q, .. } | DensityParams::Asc { q, .. } => q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.eval(0.0, &TruncationPolicy::default()).map(|_| ())
    }

    pub fn eval(&self, x: f64, policy: &TruncationPolicy) -> Result<f64> {
        match *self {
            DensityParams::Hermite { q } => density_qhermite(x, q, policy),
            DensityParams::Mu { q, rho, y } => density_mu(x, rho, y, q, policy),
            DensityParams::Asc { q, a, b } => density_asc(x, a, b, q, policy),
        }
    }

    /// `points` equally spaced samples across the closed support.
    pub fn sample(&self, points: usize, policy: &TruncationPolicy) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        if points < 2 {
            return Err(Error::precondition("need at least 2 sample points"));
        }
        let w = support_half_width(self.q());
        (0..points)
            .map(|i| {
                if i == 0 || i == points - 1 {
                    // The closed-form edge rounds to a point just inside the support.
                    let x = if i == 0 { -w } else { w };
                    return Ok((x, 0.0));
                }
                let x = -w + 2.0 * w * i as f64 / (points - 1) as f64;
                Ok((x, self.eval(x, policy)?))
            })
            .collect()
    }
}

/// Quadrature settings for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadPolicy {
    /// Consecutive extrapolated values must agree within `tol * max(1, |I|)`.
    pub tol: f64,
    pub max_levels: usize,
    pub min_levels: usize,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        QuadPolicy { tol: 1e-12, max_levels: 10, min_levels: 3 }
    }
}

/// `integral f(x) dx` over `x^2 < 4/(1-q)`.
///
/// After `x = 2cos(t)/sqrt(1-q)` the integrand is integrated on `(0, pi)`
/// with the composite midpoint rule, tripling the panel count at each level,
/// and Richardson-extrapolated in powers of `h^2`.
pub fn integrate(f: impl Fn(f64) -> Result<f64>, q: f64, policy: &QuadPolicy) -> Result<f64> {
    check_q(q)?;
    let s = (1.0 - q).sqrt();
    let g = |t: f64| -> Result<f64> {
        let x = 2.0 * t.cos() / s;
        Ok(f(x)? * 2.0 * t.sin() / s)
    };
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut panels = 1usize;
    let mut midsum = 0.0;
    for level in 0..policy.max_levels {
        let h = PI / panels as f64;
        // Reuse the previous level's midpoints; new ones sit at 1/6 and 5/6 of each old panel.
        if level == 0 {
            midsum = g(0.5 * PI)?;
        } else {
            let old_h = 3.0 * h;
            let mut add = 0.0;
            for j in 0..panels / 3 {
                let left = j as f64 * old_h;
                add += g(left + 0.5 * h)? + g(left + 2.5 * h)?;
            }
            midsum += add;
        }
        let mut row = vec![h * midsum];
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 9.0;
            let prev = &table[level - 1];
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        if level + 1 >= policy.min_levels {
            let cur = row[level];
            let prev = table[level - 1][level - 1];
            if (cur - prev).abs() <= policy.tol * cur.abs().max(1.0) {
                return Ok(cur);
            }
        }
        table.push(row);
        panels *= 3;
    }
    Err(Error::Convergence(format!(
        "quadrature did not settle within {} levels (tol {:e})",
        policy.max_levels, policy.tol
    )))
}

/// Normalization of one density.
pub fn verify_normalization(params: &[DensityParams], tol: f64, tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for p in params {
        p.validate()?;
        let total = integrate(|x| p.eval(x, tp), p.q(), qp)?;
        outcomes.push(NumericOutcome::new(label_of(p), total, 1.0, tol));
    }
    Ok(NumericReport::new(NORMALIZATION, outcomes, start.elapsed()))
}

fn label_of(p: &DensityParams) -> String {
    match *p {
        DensityParams::Hermite { q } => format!("hermite,q={q}"),
        DensityParams::Mu { q, rho, y } => format!("mu,q={q},rho={rho},y={y}"),
        DensityParams::Asc { q, a, b } => format!("asc,q={q},a={a},b={b}"),
    }
}

/// Minimum sampled density value on an `points`-point grid, as an outcome
/// comparing against `-tol`.
pub fn verify_nonnegativity(params: &[DensityParams], points: usize, tol: f64, tp: &TruncationPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for p in params {
        let min = p.sample(points, tp)?.into_iter().map(|(_, d)| d).fold(f64::INFINITY, f64::min);
        let deficit = (-min).max(0.0);
        outcomes.push(NumericOutcome::with_residual(label_of(p), min, 0.0, deficit, tol));
    }
    Ok(NumericReport::new(NONNEGATIVITY, outcomes, start.elapsed()))
}

/// `integral H_n dmu(.|rho,y) = rho^n H_n(y)` for `1 <= n <= n_max`.
pub fn verify_conditional_moments(
    n_max: usize,
    q: f64,
    rho: f64,
    y: f64,
    tol: f64,
    tp: &TruncationPolicy,
    qp: &QuadPolicy,
) -> Result<NumericReport> {
    let start = Instant::now();
    let hy = hermite_values(n_max, y, q);
    let mut outcomes = Vec::new();
    for n in 1..=n_max {
        let lhs = integrate(|x| Ok(hermite_values(n, x, q)[n] * density_mu(x, rho, y, q, tp)?), q, qp)?;
        outcomes.push(NumericOutcome::new(format!("n={n},q={q},rho={rho},y={y}"), lhs, rho.powi(n as i32) * hy[n], tol));
    }
    Ok(NumericReport::new(CONDITIONAL_MOMENTS, outcomes, start.elapsed()))
}

/// Series vs product kernel on every `(x, y)` pair of `points`, for each
/// `(q, rho)`.
pub fn verify_kernel_agreement(qs: &[f64], rhos: &[f64], points: &[f64], tol: f64, tp: &TruncationPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for &q in qs {
        for &rho in rhos {
            let n = kernel_series_terms(rho, q, tol * 1e-2);
            for &x in points {
                for &y in points {
                    let prod = poisson_mehler(x, y, rho, q, tp)?;
                    let series = poisson_mehler_series(x, y, rho, q, n)?;
                    outcomes.push(NumericOutcome::new(format!("q={q},rho={rho},x={x},y={y}"), series, prod, tol));
                }
            }
        }
    }
    Ok(NumericReport::new(KERNEL_AGREEMENT, outcomes, start.elapsed()))
}

/// `density_mu(x;rho,y) = f_H(x) g_H(x,y,rho)` across a grid of `points`
/// interior abscissae.
pub fn verify_kernel_factorization(q: f64, rho: f64, y: f64, points: usize, tol: f64, tp: &TruncationPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let w = support_half_width(q);
    let mut outcomes = Vec::new();
    for i in 0..points {
        let x = -w + 2.0 * w * (i as f64 + 0.5) / points as f64;
        let lhs = density_mu(x, rho, y, q, tp)?;
        let rhs = density_qhermite(x, q, tp)? * poisson_mehler(x, y, rho, q, tp)?;
        outcomes.push(NumericOutcome::new(format!("q={q},rho={rho},y={y},x={x:.6}"), lhs, rhs, tol));
    }
    Ok(NumericReport::new(KERNEL_FACTORIZATION, outcomes, start.elapsed()))
}

/// The Al-Salam-Chihara density against `density_mu(x; sqrt(b), a/sqrt(b))`.
pub fn verify_asc_reparametrization(q: f64, a: f64, b: f64, points: usize, tol: f64, tp: &TruncationPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let w = support_half_width(q);
    let rho = b.sqrt();
    let mut outcomes = Vec::new();
    for i in 0..points {
        let x = -w + 2.0 * w * (i as f64 + 0.5) / points as f64;
        let lhs = density_asc(x, a, b, q, tp)?;
        let rhs = density_mu(x, rho, a / rho, q, tp)?;
        outcomes.push(NumericOutcome::new(format!("q={q},a={a},b={b},x={x:.6}"), lhs, rhs, tol));
    }
    Ok(NumericReport::new(ASC_REPARAMETRIZATION, outcomes, start.elapsed()))
}

/// Gram matrix of `p_0..p_n_max` against the Al-Salam-Chihara density.
pub fn verify_asc_orthogonality(n_max: usize, q: f64, a: f64, b: f64, tol: f64, tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for m in 0..=n_max {
        for n in m..=n_max {
            let lhs = integrate(
                |x| {
                    let p = asc_values(n, x, q, a, b);
                    Ok(p[m] * p[n] * density_asc(x, a, b, q, tp)?)
                },
                q,
                qp,
            )?;
            let rhs = if m == n { asc_norm(n, q, b) } else { 0.0 };
            outcomes.push(NumericOutcome::new(format!("m={m},n={n},q={q},a={a},b={b}"), lhs, rhs, tol));
        }
    }
    Ok(NumericReport::new(ASC_ORTHOGONALITY, outcomes, start.elapsed()))
}

/// `[n]_q! prod_{i=1..n} (1 - b q^(i-1))`.
pub fn asc_norm(n: usize, q: f64, b: f64) -> f64 {
    (1..=n)
        .map(|i| crate::qcore::q_int_f64(i as u32, q) * (1.0 - b * q.powi(i as i32 - 1)))
        .product()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChapmanCheck {
    pub direct: f64,
    pub convolved: f64,
    pub difference: f64,
}

/// Compare `density_mu(z; rho1 rho2, x)` with
/// `integral density_mu(z; rho1, y) density_mu(y; rho2, x) dy`.
pub fn chapman_values(rho1: f64, rho2: f64, x: f64, z: f64, q: f64, tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<ChapmanCheck> {
    check_q(q)?;
    if !((rho1 * rho2).abs() < 1.0) || !(rho1.abs() < 1.0) || !(rho2.abs() < 1.0) {
        return Err(Error::domain(format!("need |rho1|, |rho2| < 1, got {rho1}, {rho2}")));
    }
    for v in [x, z] {
        if !inside_support(v, q) {
            return Err(Error::domain(format!("{v} is outside the support")));
        }
    }
    let direct = density_mu(z, rho1 * rho2, x, q, tp)?;
    let convolved = integrate(|y| Ok(density_mu(z, rho1, y, q, tp)? * density_mu(y, rho2, x, q, tp)?), q, qp)?;
    Ok(ChapmanCheck { direct, convolved, difference: (direct - convolved).abs() })
}

pub fn verify_chapman(
    cases: &[(f64, f64, f64, f64)],
    q: f64,
    tol: f64,
    tp: &TruncationPolicy,
    qp: &QuadPolicy,
) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for &(rho1, rho2, x, z) in cases {
        let c = chapman_values(rho1, rho2, x, z, q, tp, qp)?;
        outcomes.push(NumericOutcome::new(
            format!("q={q},rho1={rho1},rho2={rho2},x={x},z={z}"),
            c.direct,
            c.convolved,
            tol,
        ));
    }
    Ok(NumericReport::new(CHAPMAN, outcomes, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp() -> TruncationPolicy {
        TruncationPolicy::default()
    }
    fn qp() -> QuadPolicy {
        QuadPolicy::default()
    }

    #[test]
    fn semicircle_at_q_zero() {
        let d = density_qhermite(0.0, 0.0, &tp()).unwrap();
        assert!((d - 1.0 / PI).abs() < 1e-15);
        let d = density_qhermite(1.2, 0.0, &tp()).unwrap();
        assert!((d - (4.0f64 - 1.44).sqrt() / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn density_vanishes_at_and_beyond_edge() {
        let w = support_half_width(0.5);
        assert!(density_qhermite(w, 0.5, &tp()).unwrap() < 1e-9);
        assert_eq!(density_qhermite(w + 1.0, 0.5, &tp()).unwrap(), 0.0);
        let near = density_qhermite(w * (1.0 - 1e-10), 0.5, &tp()).unwrap();
        assert!(near > 0.0 && near < 1e-4);
        assert!(density_qhermite(0.0, 1.0, &tp()).is_err());
    }

    #[test]
    fn product_stops_on_tail_bound() {
        let p = log_product(0.0, &tp(), |_, qk| 1.0 + qk);
        assert_eq!(p.factors, 2);
        assert!((p.value - 2.0).abs() < 1e-15);
        let p = log_product(0.999, &TruncationPolicy { epsilon: 1e-15, max_factors: 50 }, |_, qk| 1.0 - 0.5 * qk);
        assert!(p.truncated);
    }

    #[test]
    fn quadrature_golden_values() {
        let one = integrate(|x| density_qhermite(x, 0.0, &tp()), 0.0, &qp()).unwrap();
        assert!((one - 1.0).abs() < 1e-10);
        let odd = integrate(|x| Ok(x * density_qhermite(x, 0.5, &tp())?), 0.5, &qp()).unwrap();
        assert!(odd.abs() < 1e-10);
        let h2 = integrate(|x| Ok((x * x - 1.0) * density_qhermite(x, 0.5, &tp())?), 0.5, &qp()).unwrap();
        assert!(h2.abs() < 1e-8);
        let norm = integrate(|x| density_qhermite(x, 0.5, &tp()), 0.5, &qp()).unwrap();
        assert!((norm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn quadrature_handles_edge_singular_weight() {
        // integral of 1/(pi sqrt(4 - x^2)) over (-2, 2) is 1.
        let v = integrate(|x| Ok(1.0 / (PI * (4.0 - x * x).sqrt())), 0.0, &qp()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_reduces_to_hermite_at_rho_zero() {
        for &x in &[-1.5, -0.3, 0.0, 0.9, 1.7] {
            let a = density_mu(x, 0.0, 0.7, 0.4, &tp()).unwrap();
            let b = density_qhermite(x, 0.4, &tp()).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn mu_detailed_balance() {
        let (q, rho) = (0.5, 0.6);
        for &(x, y) in &[(0.3, -1.1), (1.5, 0.2), (-2.0, 2.2)] {
            let lhs = density_mu(x, rho, y, q, &tp()).unwrap() * density_qhermite(y, q, &tp()).unwrap();
            let rhs = density_mu(y, rho, x, q, &tp()).unwrap() * density_qhermite(x, q, &tp()).unwrap();
            assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn mu_domain_errors() {
        assert!(density_mu(0.0, 1.0, 0.0, 0.5, &tp()).is_err());
        assert!(density_mu(0.0, 0.5, 3.0, 0.5, &tp()).is_err());
        assert!(density_asc(0.0, 0.1, 1.0, 0.5, &tp()).is_err());
        assert!(density_asc(0.0, 2.0, 0.5, 0.5, &tp()).is_err());
    }

    #[test]
    fn kernel_forms_agree() {
        assert_eq!(poisson_mehler(0.4, -0.2, 0.0, 0.5, &tp()).unwrap(), 1.0);
        assert_eq!(poisson_mehler_series(0.4, -0.2, 0.0, 0.5, 10).unwrap(), 1.0);
        let n = kernel_series_terms(0.4, 0.5, 1e-12);
        let s = poisson_mehler_series(0.0, 0.0, 0.4, 0.5, n).unwrap();
        let p = poisson_mehler(0.0, 0.0, 0.4, 0.5, &tp()).unwrap();
        assert!((s - p).abs() < 1e-9, "{s} vs {p}");
    }

    #[test]
    fn scaled_hermite_matches_plain() {
        let q = -0.3;
        let plain = hermite_values(12, 0.8, q);
        let scaled = scaled_hermite_values(12, 0.8, q);
        for n in 0..=12 {
            let back = scaled[n] / (1.0 - q).powf(n as f64 / 2.0);
            assert!((back - plain[n]).abs() < 1e-12 * (1.0 + plain[n].abs()));
        }
    }

    #[test]
    fn asc_small_b_approaches_hermite() {
        for &x in &[-1.0, 0.0, 0.5, 1.4] {
            let a = density_asc(x, 0.0, 1e-3, 0.5, &tp()).unwrap();
            let h = density_qhermite(x, 0.5, &tp()).unwrap();
            assert!((a - h).abs() < 1e-3);
        }
    }

    #[test]
    fn sample_spans_support() {
        let s = DensityParams::Asc { q: 0.5, a: 0.4, b: 0.49 }.sample(200, &tp()).unwrap();
        assert_eq!(s.len(), 200);
        let w = support_half_width(0.5);
        assert!((s[0].0 + w).abs() < 1e-15 && (s[199].0 - w).abs() < 1e-12);
        assert!(DensityParams::Mu { q: 0.5, rho: 1.5, y: 0.0 }.sample(10, &tp()).is_err());
    }

    #[test]
    fn chapman_rho2_zero() {
        let c = chapman_values(0.5, 0.0, 0.2, -0.4, 0.5, &tp(), &qp()).unwrap();
        let fz = density_qhermite(-0.4, 0.5, &tp()).unwrap();
        assert!((c.direct - fz).abs() < 1e-12);
        assert!(c.difference < 1e-7);
    }
}

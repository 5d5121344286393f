//! The `q > 1` branch of the conditional moment problem.
//!
//! A probabilistic solution exists only when `rho^2 = q^(-m)`; it is then the
//! discrete measure on the `m+1` roots of `p_{m+1}(x|q, rho*y, rho^2)`, with
//! weights fixed by `int p_0 = 1`, `int p_k = 0` for `k = 1..m`.
//!
//! The recurrence coefficients grow like `q^n`, and the moment system is badly
//! conditioned. So roots are seeded from the Jacobi matrix in `f64`, then
//! refined by Newton's method in 256-bit binary floating point, and the
//! weight system is solved at that precision too.

use std::cmp::Ordering;
use std::time::Instant;

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig};
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::asc_poly;
use crate::poly::{MultiPoly, Rational, Var};
use crate::report::{ExactReport, Identity, NumericOutcome, NumericReport};

/// Working precision of roots, weights and residual sums.
pub const PRECISION_BITS: usize = 256;

pub const DISCRETE_MOMENTS: Identity = Identity {
    id: "discrete-moments",
    formula: "sum_j lambda_j H_n(x_j|q) = rho^n H_n(y|q) on the roots x_j of p_{m+1}",
};

pub const DISCRETE_SHAPE: Identity = Identity {
    id: "discrete-shape",
    formula: "m+1 distinct support points, weights >= 0 summing to 1, matching squared first eigenvector components",
};

pub const DIVISIBILITY: Identity = Identity {
    id: "divisibility",
    formula: "p_{m+1} divides p_{m+2} when rho^2 = q^(-m)",
};

type Hp = FBig<HalfEven, 2>;

fn hp(x: f64) -> Hp {
    Hp::try_from(x).expect("finite input").with_precision(PRECISION_BITS).value()
}

fn hp_sqrt(x: &Hp) -> Hp {
    Context::<HalfEven>::new(PRECISION_BITS).sqrt(x.repr()).value()
}

fn hp_abs(x: &Hp) -> Hp {
    if *x < Hp::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

fn to_f64(x: &Hp) -> f64 {
    x.to_f64().value()
}

fn to_decimal_string(x: &Hp) -> String {
    x.to_decimal().value().with_precision(40).value().to_string()
}

/// Outcome of the exact existence scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "n", rename_all = "snake_case")]
pub enum Existence {
    /// `rho = 0`; the solution is the q-Hermite weight.
    Zero,
    /// `rho^2 = q^(-m)`: an `(m+1)`-point measure solves the problem.
    Member(u32),
    /// No probabilistic solution; the recurrence coefficient
    /// `1 - rho^2 q^(n-1)` first turns negative at this `n`.
    NoSolution(u32),
    /// Neither detected within the scan bound.
    Inconclusive,
}

/// Decide membership of `rho^2` in `{1, 1/q, 1/q^2, ..., 0}` by an exact scan
/// of `rho^2 q^(n-1)` for `n = 1..=n_max+1`.
pub fn existence_check(rho2: &Rational, q: &Rational, n_max: u32) -> Result<Existence> {
    if *q <= Rational::one() {
        return Err(Error::precondition(format!("need q > 1, got {q}")));
    }
    if rho2.is_negative() {
        return Err(Error::domain(format!("rho^2 must be non-negative, got {rho2}")));
    }
    if rho2.is_zero() {
        return Ok(Existence::Zero);
    }
    let mut t = rho2.clone();
    for n in 1..=n_max + 1 {
        match t.cmp(&Rational::one()) {
            Ordering::Equal => return Ok(Existence::Member(n - 1)),
            Ordering::Greater => return Ok(Existence::NoSolution(n)),
            Ordering::Less => t *= q,
        }
    }
    Ok(Existence::Inconclusive)
}

/// `int p_n^2` under any solution, from `norm_n = (1 - rho^2 q^(n-1)) [n]_q norm_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormDiagnostics {
    pub norms: Vec<f64>,
    #[serde(skip)]
    pub exact: Vec<Rational>,
    pub first_negative_index: Option<usize>,
}

pub fn norm_diagnostics(rho2: &Rational, q: &Rational, n_max: usize) -> NormDiagnostics {
    let mut exact = vec![Rational::one()];
    let mut qn1 = Rational::one(); // q^(n-1)
    let mut qint = Rational::zero(); // [n]_q
    for n in 1..=n_max {
        qint = &qint * q + Rational::one();
        let beta = (Rational::one() - rho2 * &qn1) * &qint;
        exact.push(&exact[n - 1] * beta);
        qn1 *= q;
    }
    let first_negative_index = exact.iter().position(|v| v.is_negative());
    let norms = exact.iter().map(rational_to_f64).collect();
    NormDiagnostics { norms, exact, first_negative_index }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parameters of a discrete solution: `q > 1`, `rho = +-q^(-m/2)`, `y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscreteParams {
    pub q: f64,
    pub m: usize,
    pub rho: f64,
    pub y: f64,
}

impl DiscreteParams {
    /// `rho = q^(-m/2)`, or its negative when `negative_rho`.
    pub fn new(q: f64, m: usize, y: f64, negative_rho: bool) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::precondition(format!("need q > 1, got {q}")));
        }
        if !y.is_finite() {
            return Err(Error::NonFinite);
        }
        let r = q.powf(-(m as f64) / 2.0);
        Ok(DiscreteParams { q, m, rho: if negative_rho { -r } else { r }, y })
    }

    /// Accepts any `rho` with `rho^2 q^m = 1` to 1e-12 and recovers `m`.
    pub fn from_rho(q: f64, rho: f64, y: f64) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::precondition(format!("need q > 1, got {q}")));
        }
        if !(rho.is_finite() && rho != 0.0 && rho.abs() <= 1.0 + 1e-12) {
            return Err(Error::domain(format!("rho = {rho} is not of the form +-q^(-m/2)")));
        }
        let m = (-2.0 * rho.abs().ln() / q.ln()).round().max(0.0) as usize;
        if (rho * rho * q.powi(m as i32) - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("rho^2 = {} is not a power of 1/q = {}", rho * rho, 1.0 / q)));
        }
        DiscreteParams::new(q, m, y, rho < 0.0)
    }

    fn rho_hp(&self) -> Hp {
        let qm = pow_hp(&hp(self.q), self.m);
        let r = Hp::ONE.with_precision(PRECISION_BITS).value() / hp_sqrt(&qm);
        if self.rho < 0.0 {
            -r
        } else {
            r
        }
    }
}

fn pow_hp(x: &Hp, n: usize) -> Hp {
    let mut out = Hp::ONE.with_precision(PRECISION_BITS).value();
    for _ in 0..n {
        out *= x;
    }
    out
}

/// Recurrence coefficients at working precision: `alpha_n = rho y q^n` for
/// `n = 0..=m` and `beta_n = (1 - q^(n-1-m)) [n]_q` for `n = 1..=m+1`
/// (`beta_{m+1} = 0`).
struct Recurrence {
    alpha: Vec<Hp>,
    beta: Vec<Hp>,
}

impl Recurrence {
    fn new(p: &DiscreteParams, len: usize) -> Self {
        let q = hp(p.q);
        let one = Hp::ONE.with_precision(PRECISION_BITS).value();
        let ry = p.rho_hp() * hp(p.y);
        let qinv = one.clone() / q.clone();
        let mut alpha = Vec::with_capacity(len + 1);
        let mut beta = vec![Hp::ZERO.with_precision(PRECISION_BITS).value()];
        let mut qn = one.clone();
        let mut qint = Hp::ZERO.with_precision(PRECISION_BITS).value();
        // rho^2 q^(n-1) = q^(n-1-m), starting from q^(-m) at n = 1.
        let mut r2q = pow_hp(&qinv, p.m);
        for n in 0..=len {
            alpha.push(ry.clone() * &qn);
            if n >= 1 {
                qint = qint * &q + &one;
                beta.push((one.clone() - &r2q) * &qint);
                r2q *= &q;
            }
            qn *= &q;
        }
        Recurrence { alpha, beta }
    }

    /// `p_0(x), ..., p_n(x)`.
    fn values(&self, n: usize, x: &Hp) -> Vec<Hp> {
        let mut out = vec![Hp::ONE.with_precision(PRECISION_BITS).value()];
        if n >= 1 {
            out.push(x.clone() - &self.alpha[0]);
        }
        for k in 1..n {
            let next = (x.clone() - &self.alpha[k]) * &out[k] - self.beta[k].clone() * &out[k - 1];
            out.push(next);
        }
        out
    }

    /// `p_n(x)` and `p_n'(x)`.
    fn value_and_derivative(&self, n: usize, x: &Hp) -> (Hp, Hp) {
        let zero = Hp::ZERO.with_precision(PRECISION_BITS).value();
        let mut p_prev = zero.clone();
        let mut d_prev = zero.clone();
        let mut p = Hp::ONE.with_precision(PRECISION_BITS).value();
        let mut d = zero;
        for k in 0..n {
            let shift = x.clone() - &self.alpha[k];
            let p_next = shift.clone() * &p - self.beta[k].clone() * &p_prev;
            let d_next = p.clone() + shift * &d - self.beta[k].clone() * &d_prev;
            p_prev = p;
            d_prev = d;
            p = p_next;
            d = d_next;
        }
        (p, d)
    }
}

fn hermite_hp(n: usize, x: &Hp, q: &Hp) -> Vec<Hp> {
    let one = Hp::ONE.with_precision(PRECISION_BITS).value();
    let mut out = vec![one.clone()];
    if n >= 1 {
        out.push(x.clone());
    }
    let mut qint = one.clone();
    for k in 1..n {
        let next = x.clone() * &out[k] - qint.clone() * &out[k - 1];
        out.push(next);
        qint = qint * q + &one;
    }
    out
}

/// Jacobi matrix of `p_0..p_m` in `f64`: diagonal `alpha_n`, off-diagonal
/// `sqrt(beta_n)`.
fn jacobi_matrix(rec: &Recurrence, m: usize) -> Result<DMatrix<f64>> {
    let size = m + 1;
    let mut j = DMatrix::zeros(size, size);
    for n in 0..size {
        j[(n, n)] = to_f64(&rec.alpha[n]);
        if n >= 1 {
            let b = to_f64(&rec.beta[n]);
            if !(b > 0.0) {
                return Err(Error::precondition(format!(
                    "recurrence coefficient beta_{n} = {b} is not positive; cannot symmetrize"
                )));
            }
            j[(n, n - 1)] = b.sqrt();
            j[(n - 1, n)] = b.sqrt();
        }
    }
    Ok(j)
}

/// Roots of `p_{m+1}` as `f64` Jacobi eigenvalues (ascending) with the
/// squared first eigenvector components.
fn jacobi_eigen(rec: &Recurrence, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let eig = SymmetricEigen::new(jacobi_matrix(rec, m)?);
    let mut pairs: Vec<(f64, f64)> = (0..=m).map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

fn newton_refine(rec: &Recurrence, degree: usize, seed: f64) -> Result<Hp> {
    let mut x = hp(seed);
    let tiny = hp(2f64.powi(-(PRECISION_BITS as i32) + 12));
    for _ in 0..200 {
        let (p, d) = rec.value_and_derivative(degree, &x);
        if d == Hp::ZERO {
            return Err(Error::Singular);
        }
        let step = p / d;
        x -= &step;
        let scale = if hp_abs(&x) > Hp::ONE { hp_abs(&x) } else { Hp::ONE.with_precision(PRECISION_BITS).value() };
        if hp_abs(&step) <= tiny.clone() * scale {
            return Ok(x);
        }
    }
    Err(Error::Convergence(format!("Newton refinement of the root near {seed} did not converge")))
}

/// The `m+1` roots of `p_{m+1}`, ascending.
pub fn jacobi_roots(params: &DiscreteParams) -> Result<Vec<f64>> {
    Ok(refined_roots(params)?.0.iter().map(to_f64).collect())
}

fn refined_roots(params: &DiscreteParams) -> Result<(Vec<Hp>, Vec<f64>, Recurrence)> {
    let m = params.m;
    let rec = Recurrence::new(params, m + 1);
    let (seeds, christoffel) = jacobi_eigen(&rec, m)?;
    let roots = seeds.iter().map(|&s| newton_refine(&rec, m + 1, s)).collect::<Result<Vec<_>>>()?;
    for w in roots.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Convergence("refined roots are not strictly increasing".into()));
        }
    }
    Ok((roots, christoffel, rec))
}

/// Solve `A z = e_0` with partial pivoting at working precision.
fn solve_unit_rhs(mut a: Vec<Vec<Hp>>) -> Result<Vec<Hp>> {
    let n = a.len();
    let zero = Hp::ZERO.with_precision(PRECISION_BITS).value();
    let mut rhs = vec![zero.clone(); n];
    rhs[0] = Hp::ONE.with_precision(PRECISION_BITS).value();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| hp_abs(&a[i][col]).partial_cmp(&hp_abs(&a[j][col])).unwrap_or(Ordering::Equal))
            .expect("non-empty range");
        if a[pivot][col] == zero {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col].clone() / &a[col][col];
            for k in col..n {
                let t = f.clone() * &a[col][k];
                a[row][k] = a[row][k].clone() - t;
            }
            rhs[row] = rhs[row].clone() - f * &rhs[col];
        }
    }
    let mut z = vec![zero; n];
    for row in (0..n).rev() {
        let mut s = rhs[row].clone();
        for k in row + 1..n {
            s -= a[row][k].clone() * &z[k];
        }
        z[row] = s / &a[row][row];
    }
    Ok(z)
}

/// A finitely supported solution.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteMeasure {
    pub params: DiscreteParams,
    pub support: Vec<f64>,
    pub weights: Vec<f64>,
    /// Support and weights at working precision, as decimal strings.
    pub support_exact: Vec<String>,
    pub weights_exact: Vec<String>,
    /// Largest gap between the weights and the squared first components of
    /// the Jacobi eigenvectors.
    pub christoffel_deviation: f64,
    /// `m = 0`: the one-point measure at `rho y`.
    pub single_point: bool,
    #[serde(skip)]
    support_hp: Vec<Hp>,
    #[serde(skip)]
    weights_hp: Vec<Hp>,
}

/// Roots of `p_{m+1}` and the weights solving `sum_j lambda_j p_k(x_j) = delta_k0`.
pub fn solve_weights(params: &DiscreteParams) -> Result<DiscreteMeasure> {
    let m = params.m;
    let (roots, christoffel, rec) = refined_roots(params)?;
    let columns: Vec<Vec<Hp>> = roots.iter().map(|x| rec.values(m, x)).collect();
    let system = (0..=m).map(|k| columns.iter().map(|c| c[k].clone()).collect()).collect();
    let weights_hp = solve_unit_rhs(system)?;
    let weights: Vec<f64> = weights_hp.iter().map(to_f64).collect();
    if let Some((j, w)) = weights.iter().enumerate().find(|(_, w)| **w < -1e-10) {
        return Err(Error::domain(format!("weight {j} is negative: {w}")));
    }
    let christoffel_deviation = weights
        .iter()
        .zip(&christoffel)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(DiscreteMeasure {
        params: *params,
        support: roots.iter().map(to_f64).collect(),
        weights,
        support_exact: roots.iter().map(to_decimal_string).collect(),
        weights_exact: weights_hp.iter().map(to_decimal_string).collect(),
        christoffel_deviation,
        single_point: m == 0,
        support_hp: roots,
        weights_hp,
    })
}

impl DiscreteMeasure {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `sum_j lambda_j f(x_j)` at working precision for `f = H_0..H_n`.
    fn hermite_moments(&self, n: usize) -> Vec<Hp> {
        let q = hp(self.params.q);
        let mut acc = vec![Hp::ZERO.with_precision(PRECISION_BITS).value(); n + 1];
        for (x, w) in self.support_hp.iter().zip(&self.weights_hp) {
            for (k, h) in hermite_hp(n, x, &q).into_iter().enumerate() {
                acc[k] = acc[k].clone() + h * w;
            }
        }
        acc
    }

    /// `sum_j lambda_j p_n(x_j)^2` for `n = 0..=n_max`.
    pub fn empirical_norms(&self, n_max: usize) -> Vec<f64> {
        let rec = Recurrence::new(&self.params, n_max.max(self.params.m + 1));
        let mut acc = vec![Hp::ZERO.with_precision(PRECISION_BITS).value(); n_max + 1];
        for (x, w) in self.support_hp.iter().zip(&self.weights_hp) {
            for (k, p) in rec.values(n_max, x).into_iter().enumerate() {
                acc[k] = acc[k].clone() + p.clone() * &p * w;
            }
        }
        acc.iter().map(to_f64).collect()
    }
}

/// Conditional-moment residuals `|sum_j lambda_j H_n(x_j) - rho^n H_n(y)|`
/// for `n = 1..=n_check`.
pub fn verify_discrete_solution(measure: &DiscreteMeasure, n_check: usize, tol: f64) -> NumericReport {
    let start = Instant::now();
    let p = &measure.params;
    let tag = format!("q={},m={},rho={:.6},y={}", p.q, p.m, p.rho, p.y);
    let q = hp(p.q);
    let rho = p.rho_hp();
    let lhs = measure.hermite_moments(n_check);
    let hy = hermite_hp(n_check, &hp(p.y), &q);
    let mut outcomes = Vec::new();
    let mut rho_n = Hp::ONE.with_precision(PRECISION_BITS).value();
    for n in 1..=n_check {
        rho_n *= &rho;
        let rhs = rho_n.clone() * &hy[n];
        let residual = to_f64(&hp_abs(&(lhs[n].clone() - &rhs)));
        outcomes.push(NumericOutcome::with_residual(format!("{tag},n={n}"), to_f64(&lhs[n]), to_f64(&rhs), residual, tol));
    }
    NumericReport::new(DISCRETE_MOMENTS, outcomes, start.elapsed())
}

/// Support size, weight sum and sign, ordering, and the eigenvector cross-check.
pub fn verify_discrete_shape(measure: &DiscreteMeasure) -> NumericReport {
    let start = Instant::now();
    let p = &measure.params;
    let tag = format!("q={},m={},rho={:.6},y={}", p.q, p.m, p.rho, p.y);
    let mut outcomes = Vec::new();
    shape_outcomes(measure, &tag, &mut outcomes);
    NumericReport::new(DISCRETE_SHAPE, outcomes, start.elapsed())
}

fn shape_outcomes(measure: &DiscreteMeasure, tag: &str, out: &mut Vec<NumericOutcome>) {
    let m = measure.params.m;
    out.push(NumericOutcome::new(format!("{tag},support-size"), measure.len() as f64, (m + 1) as f64, 0.0));
    let sum: f64 = to_f64(&measure.weights_hp.iter().fold(Hp::ZERO, |a, w| a + w));
    out.push(NumericOutcome::new(format!("{tag},weight-sum"), sum, 1.0, 1e-10));
    let min = measure.weights.iter().copied().fold(f64::INFINITY, f64::min);
    out.push(NumericOutcome::with_residual(format!("{tag},min-weight"), min, 0.0, (-min).max(0.0), 1e-10));
    let gap = measure.support.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let gap = if measure.len() < 2 { 0.0 } else { gap };
    let gap_ok = if measure.len() < 2 || gap > 0.0 { 0.0 } else { 1.0 };
    out.push(NumericOutcome::with_residual(format!("{tag},support-increasing"), gap, 0.0, gap_ok, 0.0));
    out.push(NumericOutcome::with_residual(
        format!("{tag},christoffel"),
        measure.christoffel_deviation,
        0.0,
        measure.christoffel_deviation,
        1e-8,
    ));
}

/// `p_{m+1}` divides `p_{m+2}` exactly for `a` symbolic, `b = q^(-m)` and
/// `q` fixed, for each `m` in `0..=m_max`.
pub fn verify_divisibility(m_max: usize, q: &Rational) -> Result<ExactReport> {
    if *q <= Rational::one() {
        return Err(Error::precondition(format!("need q > 1, got {q}")));
    }
    let mut remainders = Vec::new();
    for m in 0..=m_max {
        let b = MultiPoly::constant(q.pow(-(m as i32)));
        let a = MultiPoly::var(Var::A);
        let fix = |p: MultiPoly| p.substitute_value(Var::Q, q);
        let num = fix(asc_poly(m + 2, &a, &b));
        let den = fix(asc_poly(m + 1, &a, &b));
        remainders.push(num.div_rem_in(Var::X, &den)?.1);
    }
    let labels = (0..=m_max).map(|m| format!("q={q},m={m}"));
    Ok(ExactReport::run(DIVISIBILITY, labels, |i| remainders[i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn existence_examples() {
        assert_eq!(existence_check(&ratio(1, 4), &ratio(2, 1), 10).unwrap(), Existence::Member(2));
        assert_eq!(existence_check(&ratio(0, 1), &ratio(2, 1), 10).unwrap(), Existence::Zero);
        assert_eq!(existence_check(&ratio(1, 3), &ratio(2, 1), 10).unwrap(), Existence::NoSolution(3));
        assert_eq!(existence_check(&ratio(1, 1), &ratio(3, 1), 10).unwrap(), Existence::Member(0));
        assert_eq!(existence_check(&ratio(2, 1), &ratio(3, 1), 10).unwrap(), Existence::NoSolution(1));
        assert_eq!(existence_check(&ratio(1, 1024), &ratio(2, 1), 5).unwrap(), Existence::Inconclusive);
        assert!(existence_check(&ratio(1, 4), &ratio(1, 1), 10).is_err());
        assert!(existence_check(&ratio(-1, 4), &ratio(2, 1), 10).is_err());
    }

    #[test]
    fn norms_first_negative() {
        let d = norm_diagnostics(&ratio(1, 3), &ratio(2, 1), 6);
        assert_eq!(d.first_negative_index, Some(3));
        assert_eq!(d.norms[0], 1.0);
        let d = norm_diagnostics(&ratio(1, 4), &ratio(2, 1), 6);
        assert_eq!(d.first_negative_index, None);
        assert!(d.exact[3].is_zero() && !d.exact[2].is_zero());
    }

    #[test]
    fn single_point_measure() {
        let p = DiscreteParams::new(2.0, 0, 0.7, true).unwrap();
        let mu = solve_weights(&p).unwrap();
        assert!(mu.single_point);
        assert_eq!(mu.len(), 1);
        assert!((mu.support[0] + 0.7).abs() < 1e-15);
        assert!((mu.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_symmetric_measure() {
        let p = DiscreteParams::new(2.0, 1, 0.0, false).unwrap();
        let mu = solve_weights(&p).unwrap();
        let r = 0.5f64.sqrt();
        assert!((mu.support[0] + r).abs() < 1e-14 && (mu.support[1] - r).abs() < 1e-14);
        assert!((mu.weights[0] - 0.5).abs() < 1e-14 && (mu.weights[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn distinct_roots() {
        let p = DiscreteParams::new(2.0, 3, 0.5, false).unwrap();
        let roots = jacobi_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        assert!(roots.windows(2).all(|w| w[1] - w[0] > 1e-8));
    }

    #[test]
    fn conditional_moments_hold_past_the_support_size() {
        let p = DiscreteParams::new(2.0, 2, 0.3, false).unwrap();
        let mu = solve_weights(&p).unwrap();
        let report = verify_discrete_solution(&mu, 2 * 2 + 4, 1e-9);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn hard_case_q3_m5() {
        let p = DiscreteParams::new(3.0, 5, -0.5, false).unwrap();
        let mu = solve_weights(&p).unwrap();
        let report = verify_discrete_solution(&mu, 14, 1e-7);
        assert!(report.passed(), "{:?}", report.first_failure());
        let shape = verify_discrete_shape(&mu);
        assert!(shape.passed(), "{:?}", shape.first_failure());
    }

    #[test]
    fn rho_sign_flip_mirrors_y() {
        let a = solve_weights(&DiscreteParams::new(2.0, 3, 0.5, true).unwrap()).unwrap();
        let b = solve_weights(&DiscreteParams::new(2.0, 3, -0.5, false).unwrap()).unwrap();
        for j in 0..4 {
            assert!((a.support[j] - b.support[j]).abs() < 1e-12);
            assert!((a.weights[j] - b.weights[j]).abs() < 1e-12);
        }
        let c = solve_weights(&DiscreteParams::new(2.0, 3, 0.5, false).unwrap()).unwrap();
        for j in 0..4 {
            assert!((a.support[j] + c.support[3 - j]).abs() < 1e-12);
            assert!((a.weights[j] - c.weights[3 - j]).abs() < 1e-12);
        }
    }

    #[test]
    fn from_rho_recovers_m() {
        let p = DiscreteParams::from_rho(2.0, -0.25, 0.1).unwrap();
        assert_eq!(p.m, 4);
        assert!(p.rho < 0.0);
        assert!(DiscreteParams::from_rho(2.0, 0.3, 0.0).is_err());
        assert!(DiscreteParams::new(0.5, 1, 0.0, false).is_err());
    }

    #[test]
    fn empirical_norms_follow_recursion() {
        let p = DiscreteParams::new(1.5, 3, 0.5, false).unwrap();
        let mu = solve_weights(&p).unwrap();
        let emp = mu.empirical_norms(4);
        let diag = norm_diagnostics(&ratio(8, 27), &ratio(3, 2), 4);
        for n in 0..=4 {
            assert!((emp[n] - diag.norms[n]).abs() < 1e-8 * (1.0 + diag.norms[n].abs()), "n={n}");
        }
        assert!(diag.norms[4] == 0.0);
    }

    #[test]
    fn divisibility_exact() {
        let r = verify_divisibility(3, &ratio(2, 1)).unwrap();
        assert!(r.passed());
    }
}

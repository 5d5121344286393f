//! Generating functions `f`, `phi`, `psi` as truncated series in `t`.
//!
//! Series are stored in divided-power form: the coefficient of `t^n` is
//! `numerators[n] / [n]_q!`. The product of two such series has numerators
//! given by the q-binomial convolution, so identities between generating
//! functions reduce to exact polynomial identities without ever forming a
//! rational function of `q`.


use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{asc_values, b_poly, b_values, hermite_poly, hermite_values, PolyFamily};
use crate::poly::{MultiPoly, Var};
use crate::qcore::{q_binomial, q_factorial, q_int_f64};
use crate::report::{ExactReport, Identity};

pub const G1: Identity = Identity {
    id: "g1",
    formula: "f(t,x|q,a,c^2) = psi(ct,a/c|q) phi(t,x|q); coefficientwise p_n(x|q,a,c^2) = sum_k [n,k]_q c^(n-k) B_(n-k)(a/c) H_k(x)",
};

pub const G2: Identity = Identity {
    id: "g2",
    formula: "psi(t,x|q) phi(t,x|q) = 1; coefficientwise sum_k [n,k]_q B_(n-k)(x) H_k(x) = 0 for n >= 1",
};

/// Power series in `t` truncated at `t^order`, in divided-power form.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    numerators: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn from_numerators(numerators: Vec<MultiPoly>) -> Self {
        assert!(!numerators.is_empty(), "series needs at least the t^0 coefficient");
        TruncatedSeries { numerators }
    }

    pub fn one(order: usize) -> Self {
        let mut numerators = vec![MultiPoly::zero(); order + 1];
        numerators[0] = MultiPoly::one();
        TruncatedSeries { numerators }
    }

    pub fn order(&self) -> usize {
        self.numerators.len() - 1
    }

    pub fn numerator(&self, n: usize) -> &MultiPoly {
        &self.numerators[n]
    }

    pub fn numerators(&self) -> &[MultiPoly] {
        &self.numerators
    }

    /// `(p_n, [n]_q!)` pairs: the coefficient of `t^n` is `p_n / [n]_q!`.
    pub fn pairs(&self) -> Vec<(MultiPoly, MultiPoly)> {
        self.numerators
            .iter()
            .enumerate()
            .map(|(n, p)| (p.clone(), q_factorial(n as u32)))
            .collect()
    }

    /// Series product, truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let numerators = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let u = &self.numerators[n - k];
                        let v = &other.numerators[k];
                        if u.is_zero() || v.is_zero() {
                            MultiPoly::zero()
                        } else {
                            &q_binomial(n as u32, k as i64) * &(u * v)
                        }
                    })
                    .sum()
            })
            .collect();
        TruncatedSeries { numerators }
    }

    /// Substitute `t -> s t`.
    pub fn scale_t(&self, s: &MultiPoly) -> TruncatedSeries {
        let mut pow = MultiPoly::one();
        let numerators = self
            .numerators
            .iter()
            .map(|p| {
                let out = p * &pow;
                pow = &pow * s;
                out
            })
            .collect();
        TruncatedSeries { numerators }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        TruncatedSeries {
            numerators: (0..=order).map(|n| &self.numerators[n] - &other.numerators[n]).collect(),
        }
    }
}

/// Which generating function.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesFamily {
    /// `f(t,x|q,a,b)`, Al-Salam-Chihara.
    F { a: MultiPoly, b: MultiPoly },
    /// `phi(t,x|q)`, q-Hermite.
    Phi,
    /// `psi(t,x|q)`, the `B_n` family.
    Psi,
}

pub fn family_series(family: &SeriesFamily, order: usize) -> TruncatedSeries {
    let numerators = match family {
        SeriesFamily::F { a, b } => PolyFamily::asc(a.clone(), b.clone()).up_to(order),
        SeriesFamily::Phi => (0..=order).map(hermite_poly).collect(),
        SeriesFamily::Psi => (0..=order).map(b_poly).collect(),
    };
    TruncatedSeries { numerators }
}

/// `c^n B_n(a/c|q)` for `n = 0..=order`, kept polynomial by homogenizing.
pub fn psi_at_scaled_ratio(order: usize) -> TruncatedSeries {
    let numerators = (0..=order)
        .map(|n| {
            b_poly(n)
                .homogenize(Var::X, Var::A, Var::C, n as u32)
                .expect("B_n has x-degree n")
        })
        .collect();
    TruncatedSeries { numerators }
}

/// Checks both product identities coefficient by coefficient up to `t^order`.
/// Returns `(g1, g2)` reports; `g2` covers `1 <= n <= order`, `g1` covers
/// `0 <= n <= order` with `b = c^2`.
pub fn verify_g1_g2(order: usize) -> Result<(ExactReport, ExactReport)> {
    if order < 1 {
        return Err(Error::precondition("verify_g1_g2 needs order >= 1"));
    }
    let phi = family_series(&SeriesFamily::Phi, order);
    let psi = family_series(&SeriesFamily::Psi, order);
    let prod = psi.mul(&phi).sub(&TruncatedSeries::one(order));
    let g2 = ExactReport::run(G2, (1..=order).map(|n| format!("n={n}")), |i| prod.numerator(i + 1).clone());

    let c = MultiPoly::var(Var::C);
    let f = family_series(&SeriesFamily::F { a: MultiPoly::var(Var::A), b: c.pow(2) }, order);
    let rhs = psi_at_scaled_ratio(order).mul(&phi);
    let diff = f.sub(&rhs);
    let g1 = ExactReport::run(G1, (0..=order).map(|n| format!("n={n}")), |i| diff.numerator(i).clone());
    Ok((g1, g2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    F,
    Phi,
    Psi,
    /// `psi * phi`, compared against `1`.
    PsiPhi,
}

#[derive(Clone, Debug)]
pub struct ProductCheckParams {
    pub t: f64,
    pub x: f64,
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub n_terms: usize,
    /// `None` picks the tail-bound default.
    pub k_factors: Option<usize>,
    pub tol: f64,
    /// Skip the default small-`|t|` guard.
    pub unguarded: bool,
}

impl ProductCheckParams {
    pub fn new(t: f64, x: f64, q: f64) -> Self {
        ProductCheckParams { t, x, a: 0.0, b: 0.0, q, n_terms: 40, k_factors: None, tol: 1e-10, unguarded: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub kind: ProductKind,
    pub product: f64,
    pub partial_sum: f64,
    pub difference: f64,
    pub k_factors: usize,
    pub passed: bool,
}

const PRODUCT_FACTOR_CAP: usize = 200;

/// Smallest `K` with `(1-q)(|x||t| + t^2)|q|^K < 1e-16`, capped at 200.
pub fn default_factor_count(t: f64, x: f64, q: f64) -> usize {
    let scale = (1.0 - q) * (x.abs() * t.abs() + t * t);
    if scale == 0.0 || q == 0.0 {
        return 1;
    }
    let mut k = 1;
    let mut tail = scale * q.abs();
    while tail >= 1e-16 && k < PRODUCT_FACTOR_CAP {
        tail *= q.abs();
        k += 1;
    }
    k
}

/// Numerically compare an infinite-product formula with the partial sum of
/// its defining series.
pub fn numeric_product_check(kind: ProductKind, p: &ProductCheckParams) -> Result<ProductCheck> {
    let ProductCheckParams { t, x, a, b, q, .. } = *p;
    if !(q.abs() < 1.0) {
        return Err(Error::domain(format!("product formulas need |q| < 1, got q = {q}")));
    }
    let reach = match kind {
        ProductKind::F => x.abs().max(a.abs()) + t.abs() * b.abs().max(1.0),
        _ => x.abs() + t.abs(),
    };
    let guard = t.abs() * reach * (1.0 - q);
    if !p.unguarded && guard >= 0.5 {
        return Err(Error::domain(format!("|t|(|x|+|t|)(1-q) = {guard} violates the convergence guard 0.5")));
    }
    let kf = p.k_factors.unwrap_or_else(|| {
        let xs = if kind == ProductKind::F { x.abs().max(a.abs()) } else { x.abs() };
        default_factor_count(t, xs, q)
    });

    let mut log_den = 0.0;
    let mut log_num = 0.0;
    let mut sign = 1.0;
    let mut qk = 1.0;
    for _ in 0..kf {
        let den = 1.0 - (1.0 - q) * x * t * qk + (1.0 - q) * t * t * qk * qk;
        let num = 1.0 - (1.0 - q) * a * t * qk + (1.0 - q) * b * t * t * qk * qk;
        sign *= den.signum();
        log_den += den.abs().ln();
        if kind == ProductKind::F {
            sign *= num.signum();
            log_num += num.abs().ln();
        }
        qk *= q;
    }
    let phi_prod = sign * (-log_den).exp();
    let product = match kind {
        ProductKind::Phi => phi_prod,
        ProductKind::Psi => sign * log_den.exp(),
        ProductKind::F => sign * (log_num - log_den).exp(),
        ProductKind::PsiPhi => (sign * log_den.exp()) * phi_prod,
    };

    let n = p.n_terms;
    let weights = divided_powers(n, t, q);
    let dot = |vals: &[f64]| -> f64 { vals.iter().zip(&weights).map(|(v, w)| v * w).sum() };
    let partial_sum = match kind {
        ProductKind::Phi => dot(&hermite_values(n, x, q)),
        ProductKind::Psi => dot(&b_values(n, x, q)),
        ProductKind::F => dot(&asc_values(n, x, q, a, b)),
        ProductKind::PsiPhi => dot(&b_values(n, x, q)) * dot(&hermite_values(n, x, q)),
    };
    let difference = (product - partial_sum).abs();
    if !product.is_finite() || !partial_sum.is_finite() {
        return Err(Error::Convergence(format!("product = {product}, partial sum = {partial_sum}")));
    }
    Ok(ProductCheck { kind, product, partial_sum, difference, k_factors: kf, passed: difference < p.tol })
}

/// `t^n / [n]_q!` for `n = 0..=order`.
fn divided_powers(order: usize, t: f64, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(1.0);
    for n in 1..=order {
        let prev = out[n - 1];
        out.push(prev * t / q_int_f64(n as u32, q));
    }
    out
}

//! Headline identities: the connection formula between the Al-Salam-Chihara
//! and q-Hermite families, its two convolution halves, the relation between
//! `B_n(x|q)` and `H_n(.|1/q)`, and the moment functional defined by
//! `L(H_n) = rho^n H_n(y)`.

use std::sync::Mutex;
use std::time::Instant;

use crate::complex::ComplexF;
use crate::error::{Error, Result};
use crate::families::{b_poly, hermite_coefficients, hermite_poly, hermite_values_complex, PolyFamily};
use crate::poly::{Assignment, MultiPoly, Var};
use crate::qcore::{q_binomial, q_factorial};
use crate::report::{ExactReport, Identity, NumericOutcome, NumericReport};

pub const CONNECTION: Identity = Identity {
    id: "connection",
    formula: "p_n(x|q,a,c^2) = sum_{k=1..n} [n,k]_q c^(n-k) B_(n-k)(a/c) (H_k(x) - c^k H_k(a/c))",
};

pub const EXPANSION: Identity = Identity {
    id: "expansion",
    formula: "p_n(x|q,a,c^2) = sum_{k=0..n} [n,k]_q c^(n-k) B_(n-k)(a/c) H_k(x)",
};

pub const CONVOLUTION_ZERO: Identity = Identity {
    id: "convolution-zero",
    formula: "sum_{k=0..n} [n,k]_q B_(n-k)(x) H_k(x) = 0 for n >= 1",
};

pub const B_AS_HERMITE: Identity = Identity {
    id: "b-as-hermite",
    formula: "B_n(x|q) = i^n q^(n(n-2)/2) H_n(i sqrt(q) x|1/q) (q>0); (-1)^(n(n-1)/2) |q|^(n(n-2)/2) H_n(-sqrt|q| x|1/q) (q<0)",
};

pub const ORTHOGONALITY: Identity = Identity {
    id: "asc-orthogonality",
    formula: "L(p_k p_n) = 0 for k < n, where L(H_n) = rho^n H_n(y) and p_n = p_n(x|q,rho*y,rho^2)",
};

pub const NORMS: Identity = Identity {
    id: "asc-norms",
    formula: "L(p_n^2) = [n]_q! prod_{i=1..n} (1 - rho^2 q^(i-1))",
};

/// `c^m B_m(a/c|q)` as a polynomial in `q, a, c`.
pub fn scaled_b_at_ratio(m: usize) -> MultiPoly {
    b_poly(m)
        .homogenize(Var::X, Var::A, Var::C, m as u32)
        .expect("B_m has x-degree m")
}

/// `c^k H_k(a/c|q)` as a polynomial in `q, a, c`.
pub fn scaled_hermite_at_ratio(k: usize) -> MultiPoly {
    hermite_poly(k)
        .homogenize(Var::X, Var::A, Var::C, k as u32)
        .expect("H_k has x-degree k")
}

fn asc_with_b_c_squared() -> PolyFamily {
    PolyFamily::asc(MultiPoly::var(Var::A), MultiPoly::var(Var::C).pow(2))
}

/// Right-hand side of the connection formula, summing `k` from `k_start`.
pub fn connection_rhs(n: usize, k_start: usize) -> MultiPoly {
    (k_start..=n)
        .map(|k| {
            let diff = hermite_poly(k) - scaled_hermite_at_ratio(k);
            &(&q_binomial(n as u32, k as i64) * &scaled_b_at_ratio(n - k)) * &diff
        })
        .sum()
}

/// Connection formula, exactly in `x, a, c, q`, for `1 <= n <= n_max`.
pub fn verify_mi(n_max: usize) -> Result<ExactReport> {
    if n_max < 1 {
        return Err(Error::precondition("verify_mi needs n_max >= 1"));
    }
    let family = asc_with_b_c_squared();
    Ok(ExactReport::run(CONNECTION, (1..=n_max).map(|n| format!("n={n}")), |i| {
        let n = i + 1;
        family.get(n) - connection_rhs(n, 1)
    }))
}

/// Expansion of `p_n(x|q,a,c^2)` in the q-Hermite basis, for `0 <= n <= n_max`.
pub fn verify_expansion(n_max: usize) -> ExactReport {
    let family = asc_with_b_c_squared();
    ExactReport::run(EXPANSION, (0..=n_max).map(|n| format!("n={n}")), |n| {
        let rhs: MultiPoly = (0..=n)
            .map(|k| &(&q_binomial(n as u32, k as i64) * &scaled_b_at_ratio(n - k)) * &hermite_poly(k))
            .sum();
        family.get(n) - rhs
    })
}

/// `sum_k [n,k]_q B_{n-k} H_k = 0` for `1 <= n <= n_max`.
pub fn verify_convolution_zero(n_max: usize) -> Result<ExactReport> {
    if n_max < 1 {
        return Err(Error::precondition("verify_convolution_zero needs n_max >= 1"));
    }
    Ok(ExactReport::run(CONVOLUTION_ZERO, (1..=n_max).map(|n| format!("n={n}")), |i| {
        let n = i + 1;
        (0..=n)
            .map(|k| &(&q_binomial(n as u32, k as i64) * &b_poly(n - k)) * &hermite_poly(k))
            .sum()
    }))
}

/// Right-hand side of the `B_n` / `H_n(.|1/q)` relation at a real point.
pub fn b_from_inverted_hermite(n: usize, x: f64, q: f64) -> Result<ComplexF> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::domain(format!("relation needs a finite nonzero q, got {q}")));
    }
    let nn = n as f64;
    let qinv = 1.0 / q;
    let scale = q.abs().powf(nn * (nn - 2.0) / 2.0);
    let (z, prefactor) = if q > 0.0 {
        (ComplexF::new(0.0, q.sqrt() * x)?, ComplexF::I.powu(n as u32))
    } else {
        let sign = if (n * n.saturating_sub(1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        (ComplexF::new(-q.abs().sqrt() * x, 0.0)?, ComplexF::from(sign))
    };
    let h = hermite_values_complex(n, z, qinv)[n];
    Ok((prefactor * h).scale(scale))
}

/// Numeric sweep of the `B_n` / `H_n(.|1/q)` relation against the exact
/// `B_n` evaluated in double precision.
pub fn verify_bnah(n_max: usize, q_values: &[f64], x_values: &[f64], tol: f64) -> Result<NumericReport> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    for &q in q_values {
        if q == 0.0 || q.abs() >= 1.0 {
            return Err(Error::domain(format!("q must lie in (-1,0) or (0,1), got {q}")));
        }
        for &x in x_values {
            for n in 0..=n_max {
                let env = Assignment::new().with(Var::X, x).with(Var::Q, q);
                let lhs = b_poly(n).eval_f64(&env)?;
                let rhs = b_from_inverted_hermite(n, x, q)?;
                let residual = (ComplexF::from(lhs) - rhs).norm();
                outcomes.push(NumericOutcome::with_residual(
                    format!("n={n},q={q},x={x}"),
                    lhs,
                    rhs.re(),
                    residual,
                    tol,
                ));
            }
        }
    }
    Ok(NumericReport::new(B_AS_HERMITE, outcomes, start.elapsed()))
}

/// Linear functional on polynomials in `x` with `L(H_n) = rho^n H_n(y)`.
#[derive(Debug)]
pub struct MomentFunctional {
    rho: MultiPoly,
    y: MultiPoly,
    images: Mutex<Vec<MultiPoly>>,
}

impl MomentFunctional {
    /// `rho` and `y` may be symbols or any expressions free of `x`.
    pub fn new(rho: MultiPoly, y: MultiPoly) -> Result<Self> {
        if !rho.is_free_of(Var::X) || !y.is_free_of(Var::X) {
            return Err(Error::precondition("rho and y must not involve x"));
        }
        Ok(MomentFunctional { rho, y, images: Mutex::new(Vec::new()) })
    }

    /// The functional with symbolic `rho` and `y`.
    pub fn symbolic() -> Self {
        Self::new(MultiPoly::var(Var::Rho), MultiPoly::var(Var::Y)).expect("symbols are x-free")
    }

    pub fn rho(&self) -> &MultiPoly {
        &self.rho
    }

    pub fn y(&self) -> &MultiPoly {
        &self.y
    }

    /// `L(H_k) = rho^k H_k(y)`.
    pub fn hermite_image(&self, k: usize) -> MultiPoly {
        let mut images = self.images.lock().unwrap_or_else(|e| e.into_inner());
        while images.len() <= k {
            let j = images.len();
            let img = &self.rho.pow(j as u32) * &hermite_poly(j).substitute(Var::X, &self.y);
            images.push(img);
        }
        images[k].clone()
    }

    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        hermite_coefficients(p)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * &self.hermite_image(k))
            .sum()
    }
}

pub fn apply_functional(l: &MomentFunctional, p: &MultiPoly) -> MultiPoly {
    l.apply(p)
}

/// The Al-Salam-Chihara family with `a = rho*y`, `b = rho^2`, symbolic.
pub fn conditional_family() -> PolyFamily {
    let rho = MultiPoly::var(Var::Rho);
    PolyFamily::asc(&rho * &MultiPoly::var(Var::Y), rho.pow(2))
}

/// `L(p_k p_n) = 0` for every `0 <= k < n <= n_max`; the `k = 0` rows are
/// the statements `L(p_n) = 0`.
pub fn verify_t2(n_max: usize) -> Result<ExactReport> {
    if n_max < 1 {
        return Err(Error::precondition("verify_t2 needs n_max >= 1"));
    }
    let l = MomentFunctional::symbolic();
    let p = conditional_family().up_to(n_max);
    let pairs: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..n).map(move |k| (k, n))).collect();
    let labels = pairs.iter().map(|(k, n)| format!("k={k},n={n}"));
    Ok(ExactReport::run(ORTHOGONALITY, labels, |i| {
        let (k, n) = pairs[i];
        l.apply(&(&p[k] * &p[n]))
    }))
}

/// `[n]_q! prod_{i=1..n} (1 - rho^2 q^(i-1))`.
pub fn predicted_norm(n: usize) -> MultiPoly {
    let rho2 = MultiPoly::var(Var::Rho).pow(2);
    let damping: MultiPoly = (1..=n).map(|i| MultiPoly::one() - rho2.shift(Var::Q, i as u32 - 1)).product();
    &q_factorial(n as u32) * &damping
}

/// `L(p_n^2)` against the telescoped norm formula for `0 <= n <= n_max`.
pub fn verify_t2_norms(n_max: usize) -> ExactReport {
    let l = MomentFunctional::symbolic();
    let p = conditional_family().up_to(n_max);
    ExactReport::run(NORMS, (0..=n_max).map(|n| format!("n={n}")), |n| {
        l.apply(&p[n].pow(2)) - predicted_norm(n)
    })
}

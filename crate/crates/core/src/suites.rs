//! The verification suites run by the CLI, the acceptance tests and the C
//! interface. Each suite flattens its reports into [`CheckRecord`]s in a
//! fixed order.

use std::time::Instant;

use serde::Serialize;

use crate::discrete::{
    existence_check, solve_weights, verify_discrete_shape, verify_discrete_solution, verify_divisibility, DiscreteParams,
    Existence,
};
use crate::error::Result;
use crate::genfun::verify_g1_g2;
use crate::hankel::{verify_c4, verify_hermite_hankel};
use crate::identities::{verify_bnah, verify_convolution_zero, verify_expansion, verify_mi, verify_t2, verify_t2_norms};
use crate::measures::{
    verify_asc_orthogonality, verify_asc_reparametrization, verify_chapman, verify_conditional_moments,
    verify_kernel_agreement, verify_kernel_factorization, verify_nonnegativity, verify_normalization, DensityParams,
    QuadPolicy, TruncationPolicy,
};
use crate::poly::{ratio, Rational};
use crate::report::{CheckRecord, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Hankel,
    Measures,
    Discrete,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Identities, Suite::Hankel, Suite::Measures, Suite::Discrete];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Hankel => "hankel",
            Suite::Measures => "measures",
            Suite::Discrete => "discrete",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Knobs shared by every suite. `None` keeps each check's own default.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SuiteConfig {
    /// Overrides every degree bound of the suite.
    pub n_max: Option<usize>,
    /// Overrides every numeric tolerance of the suite.
    pub tol: Option<f64>,
    pub truncation: TruncationPolicy,
    pub quad: QuadPolicy,
}

impl SuiteConfig {
    fn n(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    match suite {
        Suite::Identities => identities(cfg),
        Suite::Hankel => hankel(cfg),
        Suite::Measures => measures(cfg),
        Suite::Discrete => discrete(cfg),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite(s, cfg)?);
    }
    Ok(out)
}

pub const BNAH_Q: [f64; 4] = [-0.81, -0.49, 0.49, 0.81];
pub const BNAH_X: [f64; 3] = [0.0, 0.7, 1.3];

pub fn identities(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let name = Suite::Identities.name();
    let mut out = verify_mi(cfg.n(10))?.records(name);
    out.extend(verify_expansion(cfg.n(10)).records(name));
    out.extend(verify_convolution_zero(cfg.n(12))?.records(name));
    let (g1, _) = verify_g1_g2(cfg.n(10))?;
    let (_, g2) = verify_g1_g2(cfg.n(12))?;
    out.extend(g1.records(name));
    out.extend(g2.records(name));
    out.extend(verify_bnah(cfg.n(8), &BNAH_Q, &BNAH_X, cfg.tol(1e-9))?.records(name));
    out.extend(verify_t2(cfg.n(8))?.records(name));
    out.extend(verify_t2_norms(cfg.n(6)).records(name));
    Ok(out)
}

pub fn hankel(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let name = Suite::Hankel.name();
    let mut out: Vec<CheckRecord> = verify_hermite_hankel(cfg.n(7))?.iter().map(|r| r.record(name)).collect();
    out.extend(verify_c4(cfg.n(6))?.iter().map(|r| r.record(name)));
    Ok(out)
}

/// Parameter grid for normalization and nonnegativity.
pub fn density_grid() -> Vec<DensityParams> {
    let qs = [-0.4, 0.0, 0.3, 0.7];
    let mut out = Vec::new();
    for &q in &qs {
        out.push(DensityParams::Hermite { q });
        for &rho in &[0.2, 0.6] {
            for &y in &[0.0, 0.8] {
                out.push(DensityParams::Mu { q, rho, y });
            }
        }
        out.push(DensityParams::Asc { q, a: 0.4, b: 0.49 });
    }
    out
}

pub const CHAPMAN_CASES: [(f64, f64, f64, f64); 3] = [(0.5, 0.6, 0.2, -0.4), (0.5, 0.6, 0.2, 0.2), (0.5, 0.0, 0.2, -0.4)];

pub fn measures(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let name = Suite::Measures.name();
    let (tp, qp) = (&cfg.truncation, &cfg.quad);
    let grid = density_grid();
    let mut out = verify_normalization(&grid, cfg.tol(1e-7), tp, qp)?.records(name);
    out.extend(verify_nonnegativity(&grid, 1000, cfg.tol(1e-12), tp)?.records(name));
    out.extend(verify_conditional_moments(cfg.n(8), 0.5, 0.6, 0.3, cfg.tol(1e-6), tp, qp)?.records(name));
    out.extend(
        verify_kernel_agreement(&[-0.4, 0.3, 0.7], &[0.2, 0.6], &[-1.0, 0.0, 1.0], cfg.tol(1e-8), tp)?.records(name),
    );
    out.extend(verify_kernel_factorization(0.5, 0.6, 0.3, 50, cfg.tol(1e-10), tp)?.records(name));
    out.extend(verify_asc_reparametrization(0.5, 0.4, 0.49, 50, cfg.tol(1e-12), tp)?.records(name));
    out.extend(verify_asc_orthogonality(cfg.n(6), 0.5, 0.4, 0.49, cfg.tol(1e-6), tp, qp)?.records(name));
    out.extend(verify_chapman(&CHAPMAN_CASES, 0.5, cfg.tol(1e-6), tp, qp)?.records(name));
    Ok(out)
}

pub const DISCRETE_Q: [f64; 3] = [1.5, 2.0, 3.0];
pub const DISCRETE_Y: [f64; 3] = [0.0, 0.5, -0.5];

fn existence_record(rho2: Rational, q: Rational, expected: Existence) -> Result<CheckRecord> {
    let start = Instant::now();
    let got = existence_check(&rho2, &q, 64)?;
    let ok = got == expected;
    Ok(CheckRecord {
        suite: Suite::Discrete.name().to_string(),
        check_id: format!("existence/rho2={rho2},q={q}"),
        paper_ref: "probabilistic solution for q > 1 exists iff rho^2 lies in {1, 1/q, 1/q^2, ..., 0}".to_string(),
        status: Status::from_bool(ok),
        residual: if ok { 0.0 } else { 1.0 },
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        detail: Some(format!("{got:?}")),
    })
}

pub fn discrete(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let name = Suite::Discrete.name();
    let m_max = cfg.n(5);
    let mut out = Vec::new();
    for &q in &DISCRETE_Q {
        for m in 0..=m_max {
            for &y in &DISCRETE_Y {
                let mu = solve_weights(&DiscreteParams::new(q, m, y, false)?)?;
                out.extend(verify_discrete_shape(&mu).records(name));
                out.extend(verify_discrete_solution(&mu, 2 * m + 4, cfg.tol(1e-7)).records(name));
            }
        }
    }
    for q in [ratio(3, 2), ratio(2, 1), ratio(3, 1)] {
        out.extend(verify_divisibility(m_max.min(4), &q)?.records(name));
    }
    out.push(existence_record(ratio(1, 3), ratio(2, 1), Existence::NoSolution(3))?);
    out.push(existence_record(ratio(1, 4), ratio(2, 1), Existence::Member(2))?);
    out.push(existence_record(ratio(0, 1), ratio(2, 1), Existence::Zero)?);
    Ok(out)
}

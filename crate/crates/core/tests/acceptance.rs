//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console; exits non-zero on any
//! failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qchihara::discrete::{
    existence_check, solve_weights, verify_discrete_shape, verify_discrete_solution, verify_divisibility, DiscreteParams,
    Existence,
};
use qchihara::genfun::verify_g1_g2;
use qchihara::hankel::{build_m, build_s, det_exact, verify_c4, verify_hermite_hankel, HankelReport};
use qchihara::identities::{verify_bnah, verify_convolution_zero, verify_expansion, verify_mi, verify_t2, verify_t2_norms};
use qchihara::measures::{
    density_qhermite, verify_chapman, verify_conditional_moments, verify_kernel_agreement, verify_normalization,
    QuadPolicy, TruncationPolicy,
};
use qchihara::poly::ratio;
use qchihara::report::{ExactReport, NumericReport};
use qchihara::suites::{density_grid, BNAH_Q, BNAH_X, DISCRETE_Q, DISCRETE_Y};
use qchihara::{MultiPoly, Result, Var};

type Criterion = Box<dyn Fn() -> Result<Verdict>>;

struct Verdict {
    ok: bool,
    detail: String,
}

fn exact(r: &ExactReport) -> Verdict {
    match r.first_failure() {
        None => Verdict { ok: true, detail: format!("{} x{} exact", r.identity.id, r.outcomes.len()) },
        Some(o) => Verdict { ok: false, detail: format!("{} {} residual {}", r.identity.id, o.label, o.residual) },
    }
}

fn numeric(r: &NumericReport) -> Verdict {
    let worst = r.worst().map(|o| (o.residual, o.label.clone())).unwrap_or((0.0, String::new()));
    match r.first_failure() {
        None => Verdict { ok: true, detail: format!("{} x{} worst {:.1e}", r.identity.id, r.outcomes.len(), worst.0) },
        Some(o) => Verdict {
            ok: false,
            detail: format!("{} {} lhs {:e} rhs {:e} residual {:.1e} > {:.0e}", r.identity.id, o.label, o.lhs, o.rhs, o.residual, o.tol),
        },
    }
}

fn all(parts: Vec<Verdict>) -> Verdict {
    let ok = parts.iter().all(|v| v.ok);
    let detail = parts.into_iter().filter(|v| ok || !v.ok).map(|v| v.detail).collect::<Vec<_>>().join("; ");
    Verdict { ok, detail }
}

fn check(cond: bool, what: impl Into<String>) -> Verdict {
    Verdict { ok: cond, detail: what.into() }
}

fn c1_connection() -> Result<Verdict> {
    let start = Instant::now();
    let r = verify_mi(10)?;
    let t = start.elapsed();
    Ok(all(vec![exact(&r), check(t < Duration::from_secs(30), format!("{:.2} s (< 30 s)", t.as_secs_f64()))]))
}

fn c2_convolutions() -> Result<Verdict> {
    let (g1, _) = verify_g1_g2(10)?;
    let (_, g2) = verify_g1_g2(12)?;
    Ok(all(vec![exact(&verify_expansion(10)), exact(&verify_convolution_zero(12)?), exact(&g1), exact(&g2)]))
}

fn c3_orthogonality() -> Result<Verdict> {
    Ok(all(vec![exact(&verify_t2(8)?), exact(&verify_t2_norms(6))]))
}

fn hankel(reports: &[HankelReport], label: &str) -> Verdict {
    match reports.iter().find(|r| !r.passed()) {
        None => Verdict { ok: true, detail: format!("{label} n=1..{} exact, position-free", reports.len()) },
        Some(r) => Verdict {
            ok: false,
            detail: format!("{label} n={} matches={} position-free={}", r.n, r.matches, r.free_of_position),
        },
    }
}

fn c4_hankel() -> Result<Verdict> {
    let m2 = det_exact(&build_m(2)?)?;
    let s2 = det_exact(&build_s(2)?)?;
    let want_s2 = MultiPoly::one() - MultiPoly::var_pow(Var::Rho, 2);
    Ok(all(vec![
        hankel(&verify_hermite_hankel(7)?, "det M"),
        hankel(&verify_c4(6)?, "det S"),
        check(m2 == MultiPoly::int(-1), format!("det M_2 = {m2}")),
        check(s2 == want_s2, format!("det S_2 = {s2}")),
    ]))
}

fn c5_normalization(tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<Verdict> {
    let golden = density_qhermite(0.0, 0.0, tp)?;
    Ok(all(vec![
        numeric(&verify_normalization(&density_grid(), 1e-7, tp, qp)?),
        check((golden - 1.0 / PI).abs() <= 1e-10, format!("f_H(0)|q=0 = {golden:.12}")),
    ]))
}

fn c6_conditional(tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<Verdict> {
    Ok(numeric(&verify_conditional_moments(8, 0.5, 0.6, 0.3, 1e-6, tp, qp)?))
}

fn c7_kernel(tp: &TruncationPolicy) -> Result<Verdict> {
    Ok(numeric(&verify_kernel_agreement(&[-0.4, 0.3, 0.7], &[0.2, 0.6], &[-1.0, 0.0, 1.0], 1e-8, tp)?))
}

fn c8_chapman(tp: &TruncationPolicy, qp: &QuadPolicy) -> Result<Verdict> {
    Ok(numeric(&verify_chapman(&[(0.5, 0.6, 0.2, -0.4)], 0.5, 1e-6, tp, qp)?))
}

fn c9_discrete() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut measures = 0;
    for &q in &DISCRETE_Q {
        for m in 0..=5 {
            for &y in &DISCRETE_Y {
                for negative in [false, true] {
                    let mu = solve_weights(&DiscreteParams::new(q, m, y, negative)?)?;
                    let shape = verify_discrete_shape(&mu);
                    let moments = verify_discrete_solution(&mu, 2 * m + 4, 1e-7);
                    if !shape.passed() {
                        parts.push(numeric(&shape));
                    }
                    if !moments.passed() {
                        parts.push(numeric(&moments));
                    }
                    measures += 1;
                }
            }
        }
    }
    parts.push(check(true, format!("{measures} measures")));
    for q in [ratio(3, 2), ratio(2, 1), ratio(3, 1)] {
        parts.push(exact(&verify_divisibility(4, &q)?));
    }
    let verdict = existence_check(&ratio(1, 3), &ratio(2, 1), 64)?;
    parts.push(check(verdict == Existence::NoSolution(3), format!("rho^2=1/3, q=2: {verdict:?}")));
    Ok(all(parts))
}

fn c10_bnah() -> Result<Verdict> {
    Ok(numeric(&verify_bnah(8, &BNAH_Q, &BNAH_X, 1e-9)?))
}

fn main() -> ExitCode {
    let tp = TruncationPolicy::default();
    let qp = QuadPolicy::default();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("connection identity, n = 1..10", Box::new(c1_connection)),
        ("convolution identities", Box::new(c2_convolutions)),
        ("orthogonality and norms under L", Box::new(c3_orthogonality)),
        ("Hankel determinant ratios", Box::new(c4_hankel)),
        ("density normalization", Box::new(move || c5_normalization(&tp, &qp))),
        ("conditional moments", Box::new(move || c6_conditional(&tp, &qp))),
        ("kernel series vs product", Box::new(move || c7_kernel(&tp))),
        ("Chapman-Kolmogorov", Box::new(move || c8_chapman(&tp, &qp))),
        ("discrete solutions for q > 1", Box::new(c9_discrete)),
        ("B_n against H_n(.|1/q)", Box::new(c10_bnah)),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f().unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}") });
        if !v.ok {
            failed += 1;
        }
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name} [{:.2} s] {}", i + 1, start.elapsed().as_secs_f64(), v.detail);
    }
    let elapsed = total.elapsed();
    let in_budget = elapsed < Duration::from_secs(300);
    println!(
        "{} {}/{} criteria passed in {:.1} s (budget 300 s)",
        if failed == 0 && in_budget { "PASS" } else { "FAIL" },
        criteria.len() - failed,
        criteria.len(),
        elapsed.as_secs_f64()
    );
    if failed == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

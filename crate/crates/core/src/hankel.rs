//! Hankel determinants over the exact ring.
//!
//! `S_n = [m_{i+j}]` holds the moments of `mu(.|rho,y)`, and `M_n = [H_{i+j}(x|q)]`
//! holds the q-Hermite polynomials themselves. Both have determinants free
//! of their "position" variable, and consecutive ratios with closed forms.
//! Ratios are checked by cross-multiplication.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::hermite_poly;
use crate::identities::MomentFunctional;
use crate::poly::{MultiPoly, Var};
use crate::qcore::q_factorial;
use crate::report::{CheckRecord, Identity, Status};

pub const MOMENT_HANKEL: Identity = Identity {
    id: "moment-hankel",
    formula: "det S_{n+1} / det S_n = [n]_q! prod_{i=1..n} (1 - rho^2 q^(i-1)), det S_n free of y",
};

pub const HERMITE_HANKEL: Identity = Identity {
    id: "hermite-hankel",
    formula: "det M_{n+1} / det M_n = (-1)^n q^(n(n-1)/2) [n]_q!, det M_n free of x",
};

/// Square matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    /// `[seq[i+j]]`; needs `seq.len() >= 2n - 1`.
    pub fn hankel(n: usize, seq: &[MultiPoly]) -> Result<Self> {
        if n == 0 || seq.len() < 2 * n - 1 {
            return Err(Error::precondition(format!("a {n}x{n} Hankel matrix needs {} entries", 2 * n.max(1) - 1)));
        }
        Ok(PolyMatrix::from_fn(n, |i, j| seq[i + j].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    /// Entry `(i, j)` depends only on `i + j`.
    pub fn is_hankel(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| (1..self.n).all(|j| self.get(i, j) == self.get(i + 1, j - 1)))
    }

    pub fn leading_block(&self, k: usize) -> PolyMatrix {
        PolyMatrix::from_fn(k, |i, j| self.get(i, j).clone())
    }

    fn rows(&self) -> Vec<Vec<MultiPoly>> {
        self.entries.chunks(self.n).map(<[MultiPoly]>::to_vec).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(MultiPoly::render).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `m_k = L(x^k)` for `k = 0..=n_max`, with `rho`, `y`, `q` symbolic.
pub fn moments_of_mu(n_max: usize) -> Vec<MultiPoly> {
    let l = MomentFunctional::symbolic();
    (0..=n_max).map(|k| l.apply(&MultiPoly::var_pow(Var::X, k as u32))).collect()
}

/// `S_n = [m_{i+j}]_{i,j<n}`.
pub fn build_s(n: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::precondition("need n >= 1"));
    }
    PolyMatrix::hankel(n, &moments_of_mu(2 * n - 2))
}

/// `M_n = [H_{i+j}(x|q)]_{i,j<n}`.
pub fn build_m(n: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::precondition("need n >= 1"));
    }
    let seq: Vec<MultiPoly> = (0..2 * n - 1).map(hermite_poly).collect();
    PolyMatrix::hankel(n, &seq)
}

/// Fraction-free (Bareiss) determinant. Every division is exact; a
/// remainder means a bug and comes back as `InexactDivision`.
pub fn det_exact(m: &PolyMatrix) -> Result<MultiPoly> {
    let n = m.dim();
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Determinants of the leading `1x1 .. nxn` blocks. Bareiss without row
/// swaps leaves them on the diagonal; a zero pivot falls back to
/// [`det_exact`] on each block.
pub fn leading_principal_minors(m: &PolyMatrix) -> Result<Vec<MultiPoly>> {
    let n = m.dim();
    let mut a = m.rows();
    let mut prev = MultiPoly::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            return (1..=n).map(|k| det_exact(&m.leading_block(k))).collect();
        }
        minors.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(minors)
}

/// Laplace expansion along the first row; factorial cost, for cross-checks
/// on small matrices.
pub fn det_cofactor(m: &PolyMatrix) -> MultiPoly {
    fn rec(a: &PolyMatrix, rows: &[usize], cols: &mut Vec<usize>) -> MultiPoly {
        if rows.is_empty() {
            return MultiPoly::one();
        }
        let r = rows[0];
        let mut total = MultiPoly::zero();
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            let minor = rec(a, &rows[1..], cols);
            cols.insert(idx, c);
            let term = a.get(r, c) * &minor;
            if idx % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let rows: Vec<usize> = (0..m.dim()).collect();
    let mut cols = rows.clone();
    rec(m, &rows, &mut cols)
}

/// One step `n -> n+1` of a Hankel determinant sequence.
#[derive(Clone, Debug, Serialize)]
pub struct HankelReport {
    pub family: &'static str,
    pub n: usize,
    pub det_n: MultiPoly,
    pub det_next: MultiPoly,
    /// `det_next / det_n`, present when the division is exact.
    pub ratio: Option<MultiPoly>,
    pub predicted: MultiPoly,
    /// `predicted` as a product of its factors.
    pub predicted_factored: String,
    /// `det_next` as a product of its factors.
    pub det_next_factored: String,
    /// `det_next - predicted * det_n == 0`.
    pub matches: bool,
    /// Variables absent from both determinants.
    pub ratio_is_constant_in: Vec<&'static str>,
    /// The determinants avoid the variable they are claimed to be free of.
    pub free_of_position: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl HankelReport {
    pub fn passed(&self) -> bool {
        self.matches && self.free_of_position
    }

    pub fn record(&self, suite: &str) -> CheckRecord {
        let identity = if self.family == "S" { MOMENT_HANKEL } else { HERMITE_HANKEL };
        let residual = (&self.det_next - &self.predicted * &self.det_n).l1_norm();
        CheckRecord {
            suite: suite.to_string(),
            check_id: format!("{}/n={}", identity.id, self.n),
            paper_ref: identity.formula.to_string(),
            status: Status::from_bool(self.passed()),
            residual,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            detail: Some(format!(
                "det {}_{} = {}; ratio = {}",
                self.family,
                self.n + 1,
                self.det_next_factored,
                self.predicted_factored
            )),
        }
    }
}

fn build_reports(
    family: &'static str,
    dets: &[MultiPoly],
    position: Var,
    predicted: impl Fn(usize) -> (MultiPoly, String),
    det_factored: impl Fn(usize) -> String,
    elapsed: Duration,
) -> Vec<HankelReport> {
    let per = elapsed / dets.len().max(1) as u32;
    (1..dets.len())
        .map(|n| {
            let (det_n, det_next) = (&dets[n - 1], &dets[n]);
            let (pred, factored) = predicted(n);
            let matches = (det_next - &(&pred * det_n)).is_zero();
            let constant = [Var::X, Var::Y]
                .into_iter()
                .filter(|v| det_n.is_free_of(*v) && det_next.is_free_of(*v))
                .map(Var::name)
                .collect();
            HankelReport {
                family,
                n,
                det_n: det_n.clone(),
                det_next: det_next.clone(),
                ratio: det_next.div_exact(det_n).ok(),
                predicted: pred,
                predicted_factored: factored,
                det_next_factored: det_factored(n + 1),
                matches,
                ratio_is_constant_in: constant,
                free_of_position: det_n.is_free_of(position) && det_next.is_free_of(position),
                elapsed: per,
            }
        })
        .collect()
}

/// `(1+q+...+q^(k-1))` for `k = 2..=n`.
fn factorial_factors(n: usize) -> String {
    (2..=n)
        .map(|k| {
            let terms: Vec<String> = (0..k)
                .map(|e| match e {
                    0 => "1".to_string(),
                    1 => "q".to_string(),
                    _ => format!("q^{e}"),
                })
                .collect();
            format!("({})", terms.join("+"))
        })
        .collect()
}

/// `[n]_q! prod_{i=1..n} (1 - rho^2 q^(i-1))`.
pub fn moment_ratio(n: usize) -> MultiPoly {
    let rho2 = MultiPoly::var_pow(Var::Rho, 2);
    (1..=n).fold(q_factorial(n as u32), |acc, i| acc * (MultiPoly::one() - rho2.shift(Var::Q, i as u32 - 1)))
}

fn moment_ratio_factored(n: usize) -> String {
    let mut s = factorial_factors(n);
    for i in 1..=n {
        s += &match i {
            1 => "(1-rho^2)".to_string(),
            2 => "(1-rho^2*q)".to_string(),
            _ => format!("(1-rho^2*q^{})", i - 1),
        };
    }
    s
}

/// `(-1)^n q^(n(n-1)/2) [n]_q!`.
pub fn hermite_ratio(n: usize) -> MultiPoly {
    let r = q_factorial(n as u32).shift(Var::Q, (n * (n.saturating_sub(1)) / 2) as u32);
    if n % 2 == 1 {
        -r
    } else {
        r
    }
}

fn hermite_ratio_factored(n: usize) -> String {
    let sign = if n % 2 == 1 { "-" } else { "" };
    let e = n * n.saturating_sub(1) / 2;
    let qpart = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    let facs = factorial_factors(n);
    if qpart.is_empty() && facs.is_empty() {
        format!("{sign}1")
    } else {
        format!("{sign}{qpart}{facs}")
    }
}

fn power(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

/// `det M_n` as `(-1)^s q^e prod_j [j]_q^(n-j)`.
fn hermite_det_factored(n: usize) -> String {
    let sign_exp: usize = (1..n).sum();
    let q_exp: usize = (1..n).map(|k| k * (k - 1) / 2).sum();
    let mut s = String::from(if sign_exp % 2 == 1 { "-" } else { "" });
    s += &power("q", q_exp);
    for j in 2..n {
        let factor = factorial_factors(j).rsplit('(').next().map(|t| format!("({t}")).unwrap_or_default();
        s += &power(&factor, n - j);
    }
    if s.is_empty() || s == "-" {
        s.push('1');
    }
    s
}

/// `det S_n` as the product of the ratios up to `n-1`.
fn moment_det_factored(n: usize) -> String {
    let mut s = String::new();
    for j in 2..n {
        let factor = factorial_factors(j).rsplit('(').next().map(|t| format!("({t}")).unwrap_or_default();
        s += &power(&factor, n - j);
    }
    for i in 1..n {
        let factor = match i {
            1 => "(1-rho^2)".to_string(),
            2 => "(1-rho^2*q)".to_string(),
            _ => format!("(1-rho^2*q^{})", i - 1),
        };
        s += &power(&factor, n - i);
    }
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

/// Moment-Hankel ratios for `n = 1..=n_max`.
pub fn verify_c4(n_max: usize) -> Result<Vec<HankelReport>> {
    if n_max == 0 {
        return Err(Error::precondition("need n_max >= 1"));
    }
    let start = Instant::now();
    let dets = leading_principal_minors(&build_s(n_max + 1)?)?;
    Ok(build_reports("S", &dets, Var::Y, |n| (moment_ratio(n), moment_ratio_factored(n)), moment_det_factored, start.elapsed()))
}

/// Hermite-Hankel ratios for `n = 1..=n_max`.
pub fn verify_hermite_hankel(n_max: usize) -> Result<Vec<HankelReport>> {
    if n_max == 0 {
        return Err(Error::precondition("need n_max >= 1"));
    }
    let start = Instant::now();
    let dets = leading_principal_minors(&build_m(n_max + 1)?)?;
    Ok(build_reports("M", &dets, Var::X, |n| (hermite_ratio(n), hermite_ratio_factored(n)), hermite_det_factored, start.elapsed()))
}

/// `det S_n = prod_{k=1..n-1} [k]_q! prod_{i=1..k} (1 - rho^2 q^(i-1))`.
pub fn telescoped_moment_det(n: usize) -> MultiPoly {
    (1..n).map(moment_ratio).product()
}

/// `det M_n = prod_{k=1..n-1} (-1)^k q^(k(k-1)/2) [k]_q!`.
pub fn telescoped_hermite_det(n: usize) -> MultiPoly {
    (1..n).map(hermite_ratio).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial};

    fn p(s: &[(i64, [u16; 7])]) -> MultiPoly {
        MultiPoly::from_terms(s.iter().map(|(c, e)| (Monomial::new(*e), rat(*c))))
    }

    #[test]
    fn small_moments() {
        let m = moments_of_mu(3);
        assert!(m[0].is_one());
        assert_eq!(m[1], MultiPoly::var(Var::Rho) * MultiPoly::var(Var::Y));
        let r2 = MultiPoly::var_pow(Var::Rho, 2);
        let y2 = MultiPoly::var_pow(Var::Y, 2);
        assert_eq!(m[2], r2 * (y2 - MultiPoly::one()) + MultiPoly::one());
    }

    #[test]
    fn small_matrices() {
        assert!(build_s(1).unwrap().get(0, 0).is_one());
        let m2 = build_m(2).unwrap();
        let x = MultiPoly::var(Var::X);
        assert_eq!(m2.get(0, 1), &x);
        assert_eq!(m2.get(1, 1), &(x.pow(2) - MultiPoly::one()));
        assert!(m2.is_hankel() && build_s(4).unwrap().is_hankel());
        assert_eq!(det_exact(&build_m(1).unwrap()).unwrap(), MultiPoly::one());
        assert_eq!(det_exact(&m2).unwrap(), MultiPoly::int(-1));
    }

    #[test]
    fn spot_values() {
        let s2 = det_exact(&build_s(2).unwrap()).unwrap();
        assert_eq!(s2, MultiPoly::one() - MultiPoly::var_pow(Var::Rho, 2));
        let m3 = det_exact(&build_m(3).unwrap()).unwrap();
        let q = MultiPoly::var(Var::Q);
        assert_eq!(m3, -(&q * &(MultiPoly::one() + &q)));
    }

    #[test]
    fn factored_strings() {
        assert_eq!(hermite_ratio_factored(1), "-1");
        assert_eq!(hermite_ratio_factored(2), "q(1+q)");
        assert_eq!(hermite_ratio_factored(3), "-q^3(1+q)(1+q+q^2)");
        assert_eq!(moment_ratio_factored(2), "(1+q)(1-rho^2)(1-rho^2*q)");
        assert_eq!(hermite_det_factored(1), "1");
        assert_eq!(hermite_det_factored(2), "-1");
        assert_eq!(hermite_det_factored(3), "-q(1+q)");
        assert_eq!(hermite_det_factored(4), "q^4(1+q)^2(1+q+q^2)");
        assert_eq!(moment_det_factored(2), "(1-rho^2)");
        assert_eq!(moment_det_factored(3), "(1+q)(1-rho^2)^2(1-rho^2*q)");
    }

    #[test]
    fn triangular_determinant_is_diagonal_product() {
        let diag = [
            p(&[(1, [1, 0, 0, 0, 0, 0, 0]), (2, [0; 7])]),
            p(&[(3, [0, 1, 0, 0, 0, 0, 0])]),
            p(&[(-1, [0; 7]), (1, [2, 0, 0, 0, 0, 0, 0])]),
        ];
        let m = PolyMatrix::from_fn(3, |i, j| {
            if i == j {
                diag[i].clone()
            } else if j > i {
                p(&[(i as i64 + j as i64, [0, 0, 1, 0, 0, 0, 0])])
            } else {
                MultiPoly::zero()
            }
        });
        let want: MultiPoly = diag.iter().cloned().product();
        assert_eq!(det_exact(&m).unwrap(), want);
    }

    #[test]
    fn zero_pivot_swaps_rows() {
        let x = MultiPoly::var(Var::X);
        let m = PolyMatrix::from_fn(2, |i, j| if i == j { MultiPoly::zero() } else { x.clone() + MultiPoly::int(i as i64) });
        assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
        assert_eq!(leading_principal_minors(&m).unwrap()[1], det_cofactor(&m));
    }

    #[test]
    fn bareiss_matches_cofactor_on_hankel() {
        for n in 1..=4 {
            let s = build_s(n).unwrap();
            assert_eq!(det_exact(&s).unwrap(), det_cofactor(&s));
            let m = build_m(n).unwrap();
            assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
        }
    }

    #[test]
    fn ratios_low_order() {
        let s = verify_c4(3).unwrap();
        assert!(s.iter().all(HankelReport::passed));
        assert_eq!(s[0].det_next, MultiPoly::one() - MultiPoly::var_pow(Var::Rho, 2));
        let m = verify_hermite_hankel(3).unwrap();
        assert!(m.iter().all(HankelReport::passed));
        assert_eq!(m[1].predicted_factored, "q(1+q)");
        assert_eq!(m[1].ratio.as_ref().unwrap(), &hermite_ratio(2));
    }

    #[test]
    fn telescoped_products() {
        let minors = leading_principal_minors(&build_s(5).unwrap()).unwrap();
        for n in 1..=5 {
            assert_eq!(minors[n - 1], telescoped_moment_det(n), "n={n}");
        }
        let minors = leading_principal_minors(&build_m(5).unwrap()).unwrap();
        for n in 1..=5 {
            assert_eq!(minors[n - 1], telescoped_hermite_det(n), "n={n}");
        }
    }

    #[test]
    fn moment_dets_vanish_at_rho_one() {
        let minors = leading_principal_minors(&build_s(5).unwrap()).unwrap();
        for (i, d) in minors.iter().enumerate().skip(1) {
            assert!(d.substitute_value(Var::Rho, &rat(1)).is_zero(), "n={}", i + 1);
        }
    }
}

//! The q-Hermite, B and Al-Salam-Chihara polynomial families, generated by
//! their three-term recurrences, plus conversions between the monomial and
//! q-Hermite bases.

use std::sync::{Mutex, OnceLock};

use crate::complex::ComplexF;
use crate::poly::{MultiPoly, Var};
use crate::qcore::{q_int, q_int_f64};

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    /// `H_{n+1} = x H_n - [n]_q H_{n-1}`
    Hermite,
    /// `B_{n+1} = -q^n x B_n + q^(n-1) [n]_q B_{n-1}`
    B,
    /// `p_{n+1} = (x - a q^n) p_n - (1 - b q^(n-1)) [n]_q p_{n-1}`
    Asc { a: MultiPoly, b: MultiPoly },
}

/// Lazily extended sequence of polynomials of one family. The cache only
/// ever grows; entries are never recomputed.
#[derive(Debug)]
pub struct PolyFamily {
    kind: FamilyKind,
    cache: Mutex<Vec<MultiPoly>>,
}

impl PolyFamily {
    pub fn new(kind: FamilyKind) -> Self {
        PolyFamily { kind, cache: Mutex::new(Vec::new()) }
    }

    pub fn hermite() -> Self {
        Self::new(FamilyKind::Hermite)
    }

    pub fn b() -> Self {
        Self::new(FamilyKind::B)
    }

    /// Al-Salam-Chihara family with `a` and `b` given as ring expressions
    /// (symbols, numbers or compound expressions such as `rho*y`).
    pub fn asc(a: MultiPoly, b: MultiPoly) -> Self {
        Self::new(FamilyKind::Asc { a, b })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn get(&self, n: usize) -> MultiPoly {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        self.extend_to(&mut cache, n);
        cache[n].clone()
    }

    /// Polynomials of degree `0..=n`.
    pub fn up_to(&self, n: usize) -> Vec<MultiPoly> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        self.extend_to(&mut cache, n);
        cache[..=n].to_vec()
    }

    fn extend_to(&self, cache: &mut Vec<MultiPoly>, n: usize) {
        if cache.is_empty() {
            cache.push(MultiPoly::one());
        }
        let x = MultiPoly::var(Var::X);
        while cache.len() <= n {
            let k = cache.len() - 1;
            let cur = &cache[k];
            let prev = if k == 0 { None } else { Some(&cache[k - 1]) };
            let next = match &self.kind {
                FamilyKind::Hermite => {
                    let mut p = &x * cur;
                    if let Some(prev) = prev {
                        p -= &q_int(k as u32) * prev;
                    }
                    p
                }
                FamilyKind::B => {
                    let mut p = -(&x * cur).shift(Var::Q, k as u32);
                    if let Some(prev) = prev {
                        p += (&q_int(k as u32) * prev).shift(Var::Q, k as u32 - 1);
                    }
                    p
                }
                FamilyKind::Asc { a, b } => {
                    let lin = &x - &a.shift(Var::Q, k as u32);
                    let mut p = &lin * cur;
                    if let Some(prev) = prev {
                        let damp = MultiPoly::one() - b.shift(Var::Q, k as u32 - 1);
                        p -= &(&damp * &q_int(k as u32)) * prev;
                    }
                    p
                }
            };
            cache.push(next);
        }
    }
}

fn shared_hermite() -> &'static PolyFamily {
    static FAMILY: OnceLock<PolyFamily> = OnceLock::new();
    FAMILY.get_or_init(PolyFamily::hermite)
}

fn shared_b() -> &'static PolyFamily {
    static FAMILY: OnceLock<PolyFamily> = OnceLock::new();
    FAMILY.get_or_init(PolyFamily::b)
}

/// Renormalized continuous q-Hermite polynomial `H_n(x|q)`.
pub fn hermite_poly(n: usize) -> MultiPoly {
    shared_hermite().get(n)
}

/// `B_n(x|q)`.
pub fn b_poly(n: usize) -> MultiPoly {
    shared_b().get(n)
}

/// Al-Salam-Chihara polynomial `p_n(x|q,a,b)`.
pub fn asc_poly(n: usize, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    PolyFamily::asc(a.clone(), b.clone()).get(n)
}

/// `H_n(v|q)`: the q-Hermite polynomial with `x` replaced by `v`.
pub fn hermite_in(n: usize, v: Var) -> MultiPoly {
    let h = hermite_poly(n);
    if v == Var::X {
        h
    } else {
        h.substitute(Var::X, &MultiPoly::var(v))
    }
}

/// Coefficients `a_{n,2i}` of `x^n = sum_i a_{n,2i} H_{n-2i}(x|q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteExpansion {
    pub degree: usize,
    /// `coeffs[i] = a_{n,2i}` for `i = 0..=n/2`.
    pub coeffs: Vec<MultiPoly>,
}

impl HermiteExpansion {
    pub fn reconstruct(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * &hermite_poly(self.degree - 2 * i))
            .sum()
    }

    /// Dense H-basis coefficient list, index = H-degree.
    pub fn dense(&self) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[self.degree - 2 * i] = a.clone();
        }
        out
    }
}

/// Expand `x^n` in the q-Hermite basis using `x H_k = H_{k+1} + [k]_q H_{k-1}`.
pub fn monomial_to_hermite(n: usize) -> HermiteExpansion {
    let mut c = vec![MultiPoly::one()];
    for _ in 0..n {
        let mut next = vec![MultiPoly::zero(); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            next[j + 1] += cj;
            if j > 0 {
                next[j - 1] += &q_int(j as u32) * cj;
            }
        }
        c = next;
    }
    let coeffs = (0..=n / 2).map(|i| c[n - 2 * i].clone()).collect();
    HermiteExpansion { degree: n, coeffs }
}

/// Coefficients `c_k` with `sum_k c_k H_k(x|q) = p`, by repeated subtraction of
/// the leading x-term. Coefficients may involve any variable except `x`.
pub fn hermite_coefficients(p: &MultiPoly) -> Vec<MultiPoly> {
    let deg = match p.degree_in(Var::X) {
        Some(d) => d as usize,
        None => return Vec::new(),
    };
    let mut out = vec![MultiPoly::zero(); deg + 1];
    let mut rest = p.clone();
    while let Some(d) = rest.degree_in(Var::X) {
        let d = d as usize;
        let lead = rest.coefficients_in(Var::X).swap_remove(d);
        rest -= &lead * &hermite_poly(d);
        out[d] = lead;
        if rest.is_zero() {
            break;
        }
    }
    out
}

/// `sum_k coeffs[k] H_k(x|q)`.
pub fn from_hermite_coefficients(coeffs: &[MultiPoly]) -> MultiPoly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * &hermite_poly(k))
        .sum()
}

/// `H_0(x|q) ..= H_n(x|q)` in double precision.
pub fn hermite_values(n: usize, x: f64, q: f64) -> Vec<f64> {
    asc_values(n, x, q, 0.0, 0.0)
}

/// `p_0 ..= p_n` of the Al-Salam-Chihara family in double precision.
pub fn asc_values(n: usize, x: f64, q: f64, a: f64, b: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut qk = 1.0; // q^k
    for k in 0..n {
        let mut next = (x - a * qk) * out[k];
        if k > 0 {
            next -= (1.0 - b * q.powi(k as i32 - 1)) * q_int_f64(k as u32, q) * out[k - 1];
        }
        out.push(next);
        qk *= q;
    }
    out
}

/// `B_0 ..= B_n` in double precision.
pub fn b_values(n: usize, x: f64, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut qk = 1.0;
    for k in 0..n {
        let mut next = -qk * x * out[k];
        if k > 0 {
            next += q.powi(k as i32 - 1) * q_int_f64(k as u32, q) * out[k - 1];
        }
        out.push(next);
        qk *= q;
    }
    out
}

/// `H_0 ..= H_n` at a complex argument.
pub fn hermite_values_complex(n: usize, z: ComplexF, q: f64) -> Vec<ComplexF> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(ComplexF::ONE);
    for k in 0..n {
        let mut next = z * out[k];
        if k > 0 {
            next = next - out[k - 1].scale(q_int_f64(k as u32, q));
        }
        out.push(next);
    }
    out
}

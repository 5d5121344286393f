//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives in one ring with a fixed, ordered variable set
//! `q, x, a, b, c, rho, y`. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`] under graded-lex order, so the last entry is always the
//! leading term and iteration in reverse gives the canonical rendering order.

use std::collections::btree_map::Entry as BEntry;
use std::collections::hash_map::Entry as HEntry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::ComplexF;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub const NVARS: usize = 7;

/// Ring variables, in ring order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Q,
    X,
    A,
    B,
    C,
    Rho,
    Y,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::X, Var::A, Var::B, Var::C, Var::Rho, Var::Y];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::X => "x",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::Rho => "rho",
            Var::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the ring variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn new(exps: [u16; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn var(v: Var, exp: u16) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = exp;
        Monomial(e)
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> &[u16; NVARS] {
        &self.0
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    fn with_exp(mut self, v: Var, exp: u16) -> Monomial {
        self.0[v.index()] = exp;
        self
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the rationals in the fixed ring variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, exp: u32) -> Self {
        Self::term(Rational::one(), Monomial::var(v, exp_u16(exp)))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            BEntry::Vacant(e) => {
                e.insert(c);
            }
            BEntry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v) as u32).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| m.exp(v) == 0)
    }

    /// Variables that actually occur, in ring order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| !self.is_free_of(v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Multiply by `v^exp` (a pure exponent shift).
    pub fn shift(&self, v: Var, exp: u32) -> MultiPoly {
        let e = exp_u16(exp);
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(&Monomial::var(v, e)), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replace every occurrence of `v` by `replacement`.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> MultiPoly {
        if self.is_free_of(v) {
            return self.clone();
        }
        let max = self.degree_in(v).unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(MultiPoly::one());
        for i in 1..=max {
            let next = &powers[i - 1] * replacement;
            powers.push(next);
        }
        // Group by the remaining monomial so each power is multiplied once.
        let mut grouped: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            grouped
                .entry(m.exp(v))
                .or_default()
                .add_term(m.with_exp(v, 0), c.clone());
        }
        let mut out = MultiPoly::zero();
        for (e, rest) in grouped {
            out += &rest * &powers[e as usize];
        }
        out
    }

    pub fn substitute_value(&self, v: Var, value: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(value.clone()))
    }

    /// Rename `from` to `to` while padding with powers of `scale` so every
    /// term reaches total `from`-degree `degree`: a term `from^j` becomes
    /// `to^j * scale^(degree - j)`. Gives `c^m P(a/c)` from `P(x)`
    /// without leaving the polynomial ring.
    pub fn homogenize(&self, from: Var, to: Var, scale: Var, degree: u32) -> Result<MultiPoly> {
        if to == scale || from == scale {
            return Err(Error::precondition("homogenizing variable must differ from the renamed ones"));
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let j = m.exp(from) as u32;
            if j > degree {
                return Err(Error::precondition(format!(
                    "term of {from}-degree {j} exceeds homogenization degree {degree}"
                )));
            }
            let mut mm = m.with_exp(from, 0);
            mm = mm.with_exp(to, exp_u16(mm.exp(to) as u32 + j));
            mm = mm.with_exp(scale, exp_u16(mm.exp(scale) as u32 + degree - j));
            out.add_term(mm, c.clone());
        }
        Ok(out)
    }

    /// Coefficients of the polynomial viewed as univariate in `v`,
    /// indexed by the power of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(Error::InexactDivision)?;
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Division with remainder in the single variable `v`; the leading
    /// `v`-coefficient of `divisor` must be a nonzero constant.
    pub fn div_rem_in(&self, v: Var, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let dcoeffs = divisor.coefficients_in(v);
        let dlead = dcoeffs
            .last()
            .and_then(|c| c.as_constant())
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::precondition(format!("divisor must have constant leading {v}-coefficient")))?;
        let ddeg = dcoeffs.len() - 1;
        let mut rem = self.coefficients_in(v);
        let mut quot = MultiPoly::zero();
        while rem.len() > ddeg && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let factor = lead.scale(&dlead.recip());
            let shift = top - ddeg;
            quot += factor.shift(v, shift as u32);
            for (i, dc) in dcoeffs.iter().enumerate().take(ddeg) {
                let idx = i + shift;
                rem[idx] -= &factor * dc;
            }
        }
        let mut r = MultiPoly::zero();
        for (i, c) in rem.into_iter().enumerate() {
            r += c.shift(v, i as u32);
        }
        Ok((quot, r))
    }

    /// Sum of absolute coefficient values, as a float; zero iff the
    /// polynomial is zero.
    pub fn l1_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, |a, b| a + b)
    }

    pub fn eval_f64(&self, env: &Assignment<f64>) -> Result<f64> {
        self.eval_generic(env)
    }

    pub fn eval_complex(&self, env: &Assignment<ComplexF>) -> Result<ComplexF> {
        self.eval_generic(env)
    }

    fn eval_generic<T: EvalScalar>(&self, env: &Assignment<T>) -> Result<T> {
        for v in self.variables() {
            if env.get(v).is_none() {
                return Err(Error::UnassignedVariable(v));
            }
        }
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c);
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t = t * env.get(v).unwrap().powu(e as u32);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Canonical text form: graded-lex descending, explicit `^` powers,
    /// `*` between factors.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn exp_u16(e: u32) -> u16 {
    u16::try_from(e).expect("exponent exceeds u16 range")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = mul_coeff(ca, cb);
                match acc.entry(ma.mul(mb)) {
                    HEntry::Vacant(e) => {
                        e.insert(prod);
                    }
                    HEntry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

#[inline]
fn mul_coeff(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            *self += &rhs;
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign<MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: MultiPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&MultiPoly> for MultiPoly {
    fn mul_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |acc, p| &acc * &p)
    }
}

/// Values assigned to ring variables for evaluation.
#[derive(Clone, Debug)]
pub struct Assignment<T> {
    values: [Option<T>; NVARS],
}

impl<T: Copy> Default for Assignment<T> {
    fn default() -> Self {
        Assignment { values: [None; NVARS] }
    }
}

impl<T: Copy> Assignment<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: T) -> Self {
        self.values[v.index()] = Some(value);
        self
    }

    pub fn set(&mut self, v: Var, value: T) {
        self.values[v.index()] = Some(value);
    }

    pub fn get(&self, v: Var) -> Option<T> {
        self.values[v.index()]
    }
}

trait EvalScalar: Copy + Add<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn from_rational(c: &Rational) -> Self;
    fn powu(self, e: u32) -> Self;
}

impl EvalScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_rational(c: &Rational) -> Self {
        c.to_f64().unwrap_or(f64::NAN)
    }
    fn powu(self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

impl EvalScalar for ComplexF {
    fn zero() -> Self {
        ComplexF::ZERO
    }
    fn from_rational(c: &Rational) -> Self {
        ComplexF::from_real(c.to_f64().unwrap_or(f64::NAN))
    }
    fn powu(self, e: u32) -> Self {
        self.powu(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + q()) * (x() - q());
        assert_eq!(p, x().pow(2) - q().pow(2));
        assert_eq!(p.render(), "-q^2 + x^2");
    }

    #[test]
    fn substitute_x_by_rho_y() {
        let p = x() - MultiPoly::var(Var::A);
        let ry = MultiPoly::var(Var::Rho) * MultiPoly::var(Var::Y);
        let s = p.substitute(Var::X, &ry);
        assert_eq!(s, ry - MultiPoly::var(Var::A));
    }

    #[test]
    fn evaluate_one_plus_q() {
        let p = MultiPoly::one() + q();
        let env = Assignment::new().with(Var::Q, 0.5);
        assert_eq!(p.eval_f64(&env).unwrap(), 1.5);
    }

    #[test]
    fn evaluate_unassigned_is_error() {
        let p = x() * q();
        let env = Assignment::new().with(Var::Q, 0.5);
        assert_eq!(p.eval_f64(&env), Err(Error::UnassignedVariable(Var::X)));
    }

    #[test]
    fn degree_and_leading_term() {
        let p = x().pow(3) * q() + x() - MultiPoly::int(7);
        assert_eq!(p.degree_in(Var::X), Some(3));
        assert_eq!(p.degree_in(Var::Y), Some(0));
        assert_eq!(MultiPoly::zero().degree_in(Var::X), None);
        let (m, c) = p.leading_term().unwrap();
        assert_eq!(m.exp(Var::X), 3);
        assert_eq!(c, &rat(1));
    }

    #[test]
    fn render_rational_and_constant() {
        let p = x().scale(&ratio(-3, 2)) + MultiPoly::int(1);
        assert_eq!(p.render(), "-3/2*x + 1");
        assert_eq!(MultiPoly::zero().render(), "0");
        assert_eq!(MultiPoly::int(-1).render(), "-1");
    }

    #[test]
    fn exact_division_round_trip() {
        let a = x().pow(2) + q() * x() + MultiPoly::int(3);
        let b = x() * q() - MultiPoly::var(Var::Y);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!((&prod + &MultiPoly::one()).div_exact(&b), Err(Error::InexactDivision));
        assert_eq!(a.div_exact(&MultiPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn univariate_division_with_remainder() {
        let d = x().pow(2) - MultiPoly::var(Var::A);
        let n = x().pow(3) + MultiPoly::var(Var::Q);
        let (quo, rem) = n.div_rem_in(Var::X, &d).unwrap();
        assert_eq!(&quo * &d + &rem, n);
        assert!(rem.degree_in(Var::X).unwrap() < 2);
    }

    #[test]
    fn homogenize_renames_and_pads() {
        // B_2(x) = q x^2 + 1 -> c^2 B_2(a/c) = q a^2 + c^2
        let b2 = q() * x().pow(2) + MultiPoly::one();
        let h = b2.homogenize(Var::X, Var::A, Var::C, 2).unwrap();
        assert_eq!(h, q() * MultiPoly::var(Var::A).pow(2) + MultiPoly::var(Var::C).pow(2));
        assert!(b2.homogenize(Var::X, Var::A, Var::C, 1).is_err());
    }

    #[test]
    fn complex_evaluation() {
        let p = x().pow(2) + MultiPoly::one();
        let env = Assignment::new().with(Var::X, ComplexF::new(0.0, 1.0).unwrap());
        let v = p.eval_complex(&env).unwrap();
        assert!(v.norm() < 1e-15);
    }
}

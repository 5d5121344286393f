//! q-integers, q-factorials and Gaussian binomials as polynomials in `q`.

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var};

/// `[n]_q = 1 + q + ... + q^(n-1)`, with `[0]_q = 0`.
pub fn q_int(n: u32) -> MultiPoly {
    (0..n).map(|k| MultiPoly::var_pow(Var::Q, k)).sum()
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u32) -> MultiPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial, computed by exact division of q-factorials.
/// Zero for `k < 0` or `k > n`.
pub fn q_binomial(n: u32, k: i64) -> MultiPoly {
    if k < 0 || k > n as i64 {
        return MultiPoly::zero();
    }
    let k = k as u32;
    let denom = &q_factorial(n - k) * &q_factorial(k);
    q_factorial(n)
        .div_exact(&denom)
        .expect("q-factorial quotient is always a polynomial")
}

/// Gaussian binomial via the q-Pascal rule
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`; the independent cross-check of
/// [`q_binomial`].
pub fn q_binomial_pascal(n: u32, k: i64) -> MultiPoly {
    if k < 0 || k > n as i64 {
        return MultiPoly::zero();
    }
    let mut row = vec![MultiPoly::one()];
    for m in 1..=n as usize {
        let mut next = vec![MultiPoly::one(); m + 1];
        for j in 1..m {
            next[j] = &row[j - 1] + &row[j].shift(Var::Q, j as u32);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `[n]_q - [m]_q = q^m [n-m]_q` for `m <= n`. Returns the right-hand
/// side after checking it against the left.
pub fn q_int_difference(n: u32, m: u32) -> Result<MultiPoly> {
    if m > n {
        return Err(Error::precondition(format!("q_int_difference needs m <= n, got n={n}, m={m}")));
    }
    let rhs = q_int(n - m).shift(Var::Q, m);
    let lhs = q_int(n) - q_int(m);
    debug_assert_eq!(lhs, rhs);
    if lhs != rhs {
        return Err(Error::precondition("q-integer difference identity failed"));
    }
    Ok(rhs)
}

/// Numeric `[n]_q` for a float `q`.
pub fn q_int_f64(n: u32, q: f64) -> f64 {
    let mut s = 0.0;
    let mut p = 1.0;
    for _ in 0..n {
        s += p;
        p *= q;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Assignment};

    fn qp(coeffs: &[i64]) -> MultiPoly {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| MultiPoly::var_pow(Var::Q, i as u32).scale(&rat(c)))
            .sum()
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0).is_zero());
        assert!(q_int(1).is_one());
        assert_eq!(q_int(3), qp(&[1, 1, 1]));
    }

    #[test]
    fn q_factorial_examples() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(2), qp(&[1, 1]));
        // (1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
        assert_eq!(q_factorial(3), qp(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(4, 2), qp(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(5, 0).is_one());
        assert!(q_binomial(3, 5).is_zero());
        assert!(q_binomial(3, -1).is_zero());
    }

    #[test]
    fn q_int_difference_examples() {
        assert_eq!(q_int_difference(3, 1).unwrap(), qp(&[0, 1, 1]));
        assert!(q_int_difference(5, 5).unwrap().is_zero());
        assert_eq!(q_int_difference(2, 0).unwrap(), qp(&[1, 1]));
        assert!(matches!(q_int_difference(1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn binomial_symmetry_and_pascal() {
        for n in 0..=12u32 {
            for k in 0..=n as i64 {
                let b = q_binomial(n, k);
                assert_eq!(b, q_binomial(n, n as i64 - k), "symmetry n={n} k={k}");
                assert_eq!(b, q_binomial_pascal(n, k), "pascal table n={n} k={k}");
                if n >= 1 {
                    let rule = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(Var::Q, k as u32);
                    assert_eq!(b, rule, "q-Pascal n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn classical_limit_at_q_one() {
        let env = Assignment::new().with(Var::Q, 1.0);
        let mut fact = 1.0;
        for n in 0..=10u32 {
            if n > 0 {
                fact *= n as f64;
            }
            assert_eq!(q_int(n).eval_f64(&env).unwrap(), n as f64);
            assert_eq!(q_factorial(n).eval_f64(&env).unwrap(), fact);
        }
    }

    #[test]
    fn numeric_q_int_matches_exact() {
        let env = Assignment::new().with(Var::Q, -0.3);
        for n in 0..8 {
            let exact = q_int(n).eval_f64(&env).unwrap();
            assert!((exact - q_int_f64(n, -0.3)).abs() < 1e-15);
        }
    }
}

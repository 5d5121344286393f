use proptest::prelude::*;

use qchihara::families::{from_hermite_coefficients, hermite_coefficients, hermite_poly, monomial_to_hermite};
use qchihara::identities::MomentFunctional;
use qchihara::poly::{rat, ratio};
use qchihara::qcore::{q_binomial, q_binomial_pascal, q_int, q_int_difference};
use qchihara::{Monomial, MultiPoly, Var};

fn small_poly(vars: &'static [Var]) -> impl Strategy<Value = MultiPoly> {
    let term = (prop::collection::vec(0u16..3, vars.len()), -5i64..=5, 1i64..=3);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(exps, n, d)| {
            let mut e = [0u16; 7];
            for (v, k) in vars.iter().zip(exps) {
                e[v.index()] = k;
            }
            (Monomial::new(e), ratio(n, d))
        }))
    })
}

const QXY: &[Var] = &[Var::Q, Var::X, Var::Y];
const XQ: &[Var] = &[Var::X, Var::Q];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(QXY), b in small_poly(QXY), c in small_poly(QXY)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in small_poly(QXY), b in small_poly(QXY)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_map(a in small_poly(QXY), b in small_poly(QXY), r in small_poly(&[Var::Q])) {
        let s = |p: &MultiPoly| p.substitute(Var::X, &r);
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn hermite_basis_round_trip(p in small_poly(XQ)) {
        let coeffs = hermite_coefficients(&p);
        prop_assert_eq!(from_hermite_coefficients(&coeffs), p);
    }

    #[test]
    fn moment_functional_is_linear(a in small_poly(XQ), b in small_poly(XQ), n in -4i64..=4, d in 1i64..=4) {
        let l = MomentFunctional::symbolic();
        let k = ratio(n, d);
        let lhs = l.apply(&(&a.scale(&k) + &b));
        let rhs = &l.apply(&a).scale(&k) + &l.apply(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_binomial_symmetry_and_pascal(n in 0u32..=14, k in 0i64..=14) {
        prop_assume!(k <= n as i64);
        prop_assert_eq!(q_binomial(n, k), q_binomial(n, n as i64 - k));
        prop_assert_eq!(q_binomial(n, k), q_binomial_pascal(n, k));
    }

    #[test]
    fn q_int_difference_holds(n in 0u32..=20, m in 0u32..=20) {
        prop_assume!(m <= n);
        let d = q_int_difference(n, m).unwrap();
        prop_assert_eq!(d, &q_int(n) - &q_int(m));
    }
}

#[test]
fn monomials_reconstruct_from_hermite_expansion() {
    for n in 0..=12 {
        assert_eq!(monomial_to_hermite(n).reconstruct(), MultiPoly::var_pow(Var::X, n as u32));
    }
}

#[test]
fn functional_sends_hermite_to_scaled_hermite() {
    let l = MomentFunctional::new(MultiPoly::constant(ratio(1, 2)), MultiPoly::constant(rat(3))).unwrap();
    for n in 0..=6 {
        let want = hermite_poly(n).substitute_value(Var::X, &rat(3)).scale(&ratio(1, 2).pow(n as i32));
        assert_eq!(l.apply(&hermite_poly(n)), want);
    }
    assert!(MomentFunctional::new(MultiPoly::var(Var::X), MultiPoly::one()).is_err());
}

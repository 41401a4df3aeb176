use std::collections::BTreeMap;

use linarr::gradedalg::{graded_quotient_dim, parse_poly, quotient_dim, Poly, QuotientOptions};
use linarr::rational::{q, q_frac, Q};
use linarr::spectrum::{
    spectrum_to_table, steenbrink_spectrum, thom_sebastiani_join, MonodromyTable,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Coefficients of prod_i (1 + t + ... + t^{a_i - 2}).
fn brieskorn_series(exps: &[u32]) -> Vec<usize> {
    let mut acc = vec![1usize];
    for &a in exps {
        let len = (a - 1) as usize;
        let mut next = vec![0; acc.len() + len - 1];
        for (i, c) in acc.iter().enumerate() {
            for j in 0..len {
                next[i + j] += c;
            }
        }
        acc = next;
    }
    acc
}

fn brieskorn(exps: &[u32], vars: &[&str]) -> Poly {
    let text: Vec<String> = vars
        .iter()
        .zip(exps)
        .map(|(v, a)| format!("{v}^{a}"))
        .collect();
    parse_poly(&text.join(" + "), vars).unwrap()
}

#[test]
fn brieskorn_two_variables() {
    for a in 2..=8u32 {
        for b in 2..=8u32 {
            let f = brieskorn(&[a, b], &["y", "z"]);
            let series = brieskorn_series(&[a, b]);
            for k in 0..series.len() as u32 + 2 {
                let r = graded_quotient_dim(&f, k).unwrap();
                let expected = series.get(k as usize).copied().unwrap_or(0);
                assert_eq!(r.dim_quotient, expected, "a={a} b={b} k={k}");
                assert!(r.modular_agrees());
            }
        }
    }
}

#[test]
fn brieskorn_three_variables() {
    for exps in [[2, 3, 4], [3, 3, 3], [2, 2, 5], [4, 3, 2]] {
        let f = brieskorn(&exps, &["x", "y", "z"]);
        let series = brieskorn_series(&exps);
        for k in 0..series.len() as u32 + 1 {
            let expected = series.get(k as usize).copied().unwrap_or(0);
            assert_eq!(graded_quotient_dim(&f, k).unwrap().dim_quotient, expected);
        }
    }
}

fn random_invertible(n: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(-2i64..=2, n * n).prop_filter_map("invertible", move |e| {
        let m: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| q(e[i * n + j])).collect())
            .collect();
        (linarr::linalg::rank_rational(&m) == n).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotient_ignores_linear_changes(m in random_invertible(3), d in 3u32..=4, k in 0u32..=6) {
        let f = brieskorn(&[d, d, d], &["x", "y", "z"]);
        let g = f.linear_substitute(&m);
        prop_assert_eq!(
            graded_quotient_dim(&f, k).unwrap().dim_quotient,
            graded_quotient_dim(&g, k).unwrap().dim_quotient
        );
    }

    #[test]
    fn modular_rank_agrees(m in random_invertible(3), k in 0u32..=5, prime_ix in 0usize..3) {
        let prime = [1_000_000_007u64, 998_244_353, 1_073_741_789][prime_ix];
        let f = parse_poly("x^3 + y^3 + z^3 - 3*x*y*z + x^2*y", &["x", "y", "z"])
            .unwrap()
            .linear_substitute(&m);
        let opts = QuotientOptions { check_prime: prime, ..Default::default() };
        let r = quotient_dim(&f, k, &opts).unwrap();
        prop_assert!(r.modular_agrees(), "{:?}", r);
    }
}

fn brieskorn_spectrum(exps: &[u32]) -> Vec<(Q, usize)> {
    let vars = ["x", "y", "z", "w"];
    let f = brieskorn(exps, &vars[..exps.len()]);
    let d = exps.iter().fold(1u32, |acc, &a| num_integer::lcm(acc, a));
    let weights: Vec<u32> = exps.iter().map(|&a| d / a).collect();
    steenbrink_spectrum(&f, d, &weights)
        .unwrap()
        .into_iter()
        .map(|e| (e.alpha, e.nu))
        .collect()
}

#[test]
fn spectra_are_symmetric_and_in_range() {
    let cases: Vec<Vec<u32>> = vec![
        vec![2],
        vec![5],
        vec![12],
        vec![2, 3],
        vec![3, 4],
        vec![5, 5],
        vec![2, 3, 5],
        vec![3, 3, 4],
    ];
    for exps in cases {
        let sp = brieskorn_spectrum(&exps);
        let nvars = exps.len() as i64;
        let centre = q_frac(nvars - 2, 2);
        let as_map: BTreeMap<Q, usize> = sp.iter().cloned().collect();
        for (a, nu) in &sp {
            assert!(*a > -Q::one() && *a < q(nvars - 1), "{exps:?} {a}");
            let mirror = &centre * q(2) - a;
            assert_eq!(as_map.get(&mirror), Some(nu), "{exps:?} {a}");
        }
        let mu: usize = sp.iter().map(|x| x.1).sum();
        let expected: u32 = exps.iter().map(|a| a - 1).product();
        assert_eq!(mu as u32, expected);
    }
}

fn pure(n: u32) -> MonodromyTable {
    let f = parse_poly(&format!("y^{n}"), &["y"]).unwrap();
    spectrum_to_table(&steenbrink_spectrum(&f, n, &[1]).unwrap(), 0)
}

#[test]
fn two_paths_agree() {
    for n in 3..=12 {
        let f = parse_poly(&format!("y^{n} + z^{n}"), &["y", "z"]).unwrap();
        let direct = spectrum_to_table(&steenbrink_spectrum(&f, n, &[1, 1]).unwrap(), 1);
        assert_eq!(direct, thom_sebastiani_join(&pure(n), &pure(n)), "n={n}");
    }
}

fn table_strategy() -> impl Strategy<Value = MonodromyTable> {
    prop::collection::vec((0u32..=2, 0i64..6, 1i64..=6, 1u64..=3), 1..=4).prop_map(|entries| {
        let mut t = MonodromyTable::new();
        for (deg, a, b, m) in entries {
            t.add(deg, &linarr::rational::frac_part(&q_frac(a, b)), m);
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_commutative(a in table_strategy(), b in table_strategy()) {
        prop_assert_eq!(thom_sebastiani_join(&a, &b), thom_sebastiani_join(&b, &a));
    }

    #[test]
    fn join_is_associative(a in table_strategy(), b in table_strategy(), c in table_strategy()) {
        let left = thom_sebastiani_join(&thom_sebastiani_join(&a, &b), &c);
        let right = thom_sebastiani_join(&a, &thom_sebastiani_join(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn join_dimension_multiplies(a in table_strategy(), b in table_strategy()) {
        let j = thom_sebastiani_join(&a, &b);
        prop_assert_eq!(j.total_dimension(), a.total_dimension() * b.total_dimension());
        for exps in j.degrees().values() {
            for e in exps.keys() {
                prop_assert!(*e >= Q::zero() && *e < Q::one());
            }
        }
    }
}

//! Multinets and modular Aomoto-Betti numbers against each other and against
//! coordinate changes.

use linarr::arrangement::{Arrangement, BiPencil, IntersectionLattice, Matrix3};
use linarr::multinet::{
    check_multinet, search_multinets, Axiom, Level, MultinetCandidate, DEFAULT_SEARCH_CAP,
};
use linarr::rational::{q, Q};
use linarr::resonance::aomoto_betti;
use proptest::prelude::*;

/// The 13 lines of the projective plane with coefficients in {-1, 0, 1}.
fn small_lines() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                let first = [a, b, c].into_iter().find(|&x| x != 0);
                if first == Some(1) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn arrangement_of(rows: &[[i64; 3]]) -> Arrangement {
    Arrangement::new(rows.iter().map(|r| [q(r[0]), q(r[1]), q(r[2])]).collect()).unwrap()
}

fn a3() -> Arrangement {
    arrangement_of(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, -1, 0],
        [1, 0, -1],
        [0, 1, -1],
    ])
}

fn hesse() -> IntersectionLattice {
    // Affine plane over F_3: the lines of each parallel class.
    let pts: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    let classes: [fn(usize, usize) -> usize; 4] = [
        |x, _| x,
        |_, y| y,
        |x, y| (x + y) % 3,
        |x, y| (x + 2 * y) % 3,
    ];
    let mut points = Vec::new();
    for &(x, y) in &pts {
        points.push(
            classes
                .iter()
                .enumerate()
                .map(|(c, f)| 3 * c + f(x, y))
                .collect(),
        );
    }
    IntersectionLattice::from_incidences(12, points).unwrap()
}

fn random_matrix() -> impl Strategy<Value = Matrix3> {
    prop::array::uniform9(-4i64..=4).prop_filter_map("invertible", |e| {
        let m: Matrix3 = [
            [q(e[0]), q(e[1]), q(e[2])],
            [q(e[3]), q(e[4]), q(e[5])],
            [q(e[6]), q(e[7]), q(e[8])],
        ];
        linarr::arrangement::invert3(&m).map(|_| m)
    })
}

fn bipencil() -> impl Strategy<Value = BiPencil> {
    (
        1usize..=4,
        1usize..=3,
        prop::collection::btree_set(-20i64..=20, 8),
    )
        .prop_filter_map("p >= q", |(p, q, vals)| {
            if p < q {
                return None;
            }
            let v: Vec<i64> = vals.into_iter().collect();
            BiPencil::from_ints(&v[..p], &v[p..p + q]).ok()
        })
}

#[test]
fn hesse_calibration() {
    let h = hesse();
    assert_eq!(h.multiplicity_counts().get(&4), Some(&9));
    assert_eq!(h.multiplicity_counts().get(&2), Some(&12));
    assert_eq!(aomoto_betti(&h, 2).unwrap().beta, 2);
    assert_eq!(aomoto_betti(&h, 3).unwrap().beta, 0);
}

#[test]
fn a3_net_and_resonance() {
    let l = a3().lattice();
    assert_eq!(aomoto_betti(&l, 3).unwrap().beta, 1);
    assert_eq!(aomoto_betti(&l, 2).unwrap().beta, 0);
    let found = search_multinets(&l, 3, 1, DEFAULT_SEARCH_CAP).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].1.level, Level::Net);
}

fn has_three_net(l: &IntersectionLattice) -> bool {
    search_multinets(l, 3, 1, DEFAULT_SEARCH_CAP)
        .unwrap()
        .iter()
        .any(|(_, v)| v.level >= Level::Net)
}

#[test]
fn beta3_detects_nets_on_subarrangements() {
    // Every subarrangement of the 13 small lines with 3..=9 lines, sampled
    // with a fixed stride, keeping those with at most triple points.
    let lines = small_lines();
    let mut checked = 0;
    let mut positives = 0;
    for mask in (0u32..1 << lines.len()).step_by(7) {
        let size = mask.count_ones();
        if !(3..=9).contains(&size) {
            continue;
        }
        let rows: Vec<[i64; 3]> = (0..lines.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| lines[i])
            .collect();
        let l = arrangement_of(&rows).lattice();
        if l.points().iter().any(|p| p.multiplicity() > 3) {
            continue;
        }
        let beta3 = aomoto_betti(&l, 3).unwrap().beta;
        let net = has_three_net(&l);
        assert_eq!(beta3 != 0, net, "lines {rows:?}");
        checked += 1;
        positives += net as usize;
    }
    assert!(checked > 100, "only {checked} cases");
    assert!(positives > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_ignores_coordinates(mask in 1u32..(1 << 13), m in random_matrix()) {
        let lines = small_lines();
        let rows: Vec<[i64; 3]> = (0..13).filter(|i| mask & (1 << i) != 0).map(|i| lines[i]).collect();
        let a = arrangement_of(&rows);
        let b = a.apply_projective(&m).unwrap();
        for p in [2, 3, 5] {
            prop_assert_eq!(
                aomoto_betti(&a.lattice(), p).unwrap().beta,
                aomoto_betti(&b.lattice(), p).unwrap().beta
            );
        }
    }

    #[test]
    fn betti_ignores_line_order(mask in 1u32..(1 << 13), rot in 0usize..13) {
        let lines = small_lines();
        let rows: Vec<[i64; 3]> = (0..13).filter(|i| mask & (1 << i) != 0).map(|i| lines[i]).collect();
        let a = arrangement_of(&rows);
        let n = a.degree();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let b = a.permuted(&perm);
        for p in [2, 3] {
            prop_assert_eq!(
                aomoto_betti(&a.lattice(), p).unwrap().beta,
                aomoto_betti(&b.lattice(), p).unwrap().beta
            );
        }
    }

    #[test]
    fn generic_arrangements_have_no_resonance(
        rows in prop::collection::vec(prop::array::uniform3(-50i64..=50), 2..=7)
    ) {
        let coeffs: Vec<[Q; 3]> = rows.iter().map(|r| [q(r[0]), q(r[1]), q(r[2])]).collect();
        if let Ok(a) = Arrangement::new(coeffs) {
            let l = a.lattice();
            if l.points().iter().all(|p| p.multiplicity() == 2) {
                for p in [2, 3, 5, 7] {
                    prop_assert_eq!(aomoto_betti(&l, p).unwrap().beta, 0);
                }
            }
        }
    }

    #[test]
    fn bipencils_have_no_resonance(bp in bipencil()) {
        let l = bp.arrangement().lattice();
        prop_assert_eq!(aomoto_betti(&l, 2).unwrap().beta, 0);
        prop_assert_eq!(aomoto_betti(&l, 3).unwrap().beta, 0);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bipencils_carry_no_multinet(bp in bipencil(), k in 3usize..=4, m_max in 1u32..=3) {
        let l = bp.arrangement().lattice();
        match search_multinets(&l, k, m_max, DEFAULT_SEARCH_CAP) {
            Ok(found) => prop_assert!(found.is_empty(), "{:?}", found.first()),
            Err(e) => {
                let over = matches!(e, linarr::multinet::MultinetError::BudgetExceeded { .. });
                prop_assert!(over);
            }
        }
    }

    #[test]
    fn class_relabeling_keeps_the_verdict(perm in Just([0usize, 1, 2]).prop_shuffle()) {
        let l = a3().lattice();
        let classes = [vec![0, 5], vec![1, 4], vec![2, 3]];
        let base = MultinetCandidate::with_minimal_base(&l, classes.to_vec(), vec![1; 6]);
        let shuffled = MultinetCandidate::with_minimal_base(
            &l,
            perm.iter().map(|&i| classes[i].clone()).collect(),
            vec![1; 6],
        );
        let (a, b) = (check_multinet(&l, &base).unwrap(), check_multinet(&l, &shuffled).unwrap());
        prop_assert_eq!(a.level, b.level);
        prop_assert_eq!(a.d, b.d);
    }

    #[test]
    fn weak_multinets_have_total_weight_kd(
        rgs in prop::collection::vec(0usize..3, 6),
        mult in prop::collection::vec(1u32..=2, 6),
    ) {
        let l = a3().lattice();
        let mut classes = vec![Vec::new(); 3];
        for (line, &c) in rgs.iter().enumerate() {
            classes[c].push(line);
        }
        prop_assume!(classes.iter().all(|c| !c.is_empty()));
        let cand = MultinetCandidate::with_minimal_base(&l, classes, mult.clone());
        let v = check_multinet(&l, &cand).unwrap();
        if v.level >= Level::Weak {
            let total: u64 = mult.iter().map(|&m| m as u64).sum();
            prop_assert_eq!(total, 3 * v.d.unwrap());
        }
        if v.level >= Level::Net {
            prop_assert!(!v.violates(Axiom::Reduced));
            prop_assert!(!v.violates(Axiom::Connected));
            prop_assert!(v.violations.is_empty());
        }
    }
}

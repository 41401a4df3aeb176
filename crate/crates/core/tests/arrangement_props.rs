use std::collections::BTreeSet;

use linarr::arrangement::{
    intersection_points, is_bipencil, parse_arrangement, pencil_form, serialize_arrangement,
    Arrangement, ArrangementInput, BiPencil, Matrix3,
};
use linarr::rational::{q, Q};
use proptest::prelude::*;

fn distinct_lines(max: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 1..=max).prop_filter_map(
        "need distinct nonzero lines",
        |rows| {
            let coeffs: Vec<[Q; 3]> = rows
                .into_iter()
                .map(|(a, b, c)| [q(a), q(b), q(c)])
                .collect();
            Arrangement::new(coeffs).ok()
        },
    )
}

fn bipencil() -> impl Strategy<Value = BiPencil> {
    (
        prop::collection::btree_set(-9i64..=9, 1..=4),
        prop::collection::btree_set(-9i64..=9, 1..=4),
    )
        .prop_filter_map("valid bi-pencil", |(l, m)| {
            let (mut l, mut m): (Vec<i64>, Vec<i64>) =
                (l.into_iter().collect(), m.into_iter().collect());
            if l.len() < m.len() {
                std::mem::swap(&mut l, &mut m);
            }
            BiPencil::from_ints(&l, &m).ok()
        })
}

fn invertible() -> impl Strategy<Value = Matrix3> {
    prop::array::uniform9(-3i64..=3).prop_filter_map("invertible", |e| {
        let m: Matrix3 = [
            [q(e[0]), q(e[1]), q(e[2])],
            [q(e[3]), q(e[4]), q(e[5])],
            [q(e[6]), q(e[7]), q(e[8])],
        ];
        linarr::arrangement::invert3(&m).map(|_| m)
    })
}

fn binom2(k: usize) -> usize {
    k * (k.saturating_sub(1)) / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_pair_meets_once(a in distinct_lines(9)) {
        let total: usize = intersection_points(&a).iter().map(|p| binom2(p.multiplicity())).sum();
        prop_assert_eq!(total, binom2(a.degree()));
    }

    #[test]
    fn points_ignore_line_order(a in distinct_lines(8), seed in any::<u64>()) {
        let n = a.degree();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by the seed.
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = a.permuted(&perm);
        let key = |arr: &Arrangement| -> BTreeSet<(Vec<Q>, BTreeSet<Vec<Q>>)> {
            intersection_points(arr)
                .into_iter()
                .map(|p| {
                    let lines = p.incident.iter().map(|&i| arr.lines()[i].coeffs().to_vec()).collect();
                    (p.point.to_vec(), lines)
                })
                .collect()
        };
        prop_assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn parse_after_serialize(a in distinct_lines(9)) {
        let back = parse_arrangement(&serialize_arrangement(&a)).unwrap();
        prop_assert_eq!(back, ArrangementInput::Lines(a));
    }

    #[test]
    fn bipencil_cover_is_exact(bp in bipencil(), m in invertible()) {
        let a = bp.arrangement().apply_projective(&m).unwrap();
        if let Some(cover) = is_bipencil(&a) {
            for line in a.lines() {
                prop_assert!(line.contains(&cover.p1.point) || line.contains(&cover.p2.point));
            }
        }
    }

    #[test]
    fn normal_form_rebuilds_the_arrangement(bp in bipencil(), m in invertible()) {
        let a = bp.arrangement().apply_projective(&m).unwrap();
        if is_bipencil(&a).is_some() {
            let form = pencil_form(&a).unwrap();
            let back: BTreeSet<_> = form.reconstruct().lines().iter().cloned().collect();
            let orig: BTreeSet<_> = a.lines().iter().cloned().collect();
            prop_assert_eq!(back, orig);
            prop_assert_eq!(form.pencil.n(), bp.n());
        }
    }
}

#[test]
fn triangle_and_pencils() {
    let tri = parse_arrangement(r#"{"lines":[[1,0,0],[0,1,0],[0,0,1]]}"#)
        .unwrap()
        .lattice();
    assert_eq!(tri.points().len(), 3);
    assert!(tri.points().iter().all(|p| p.multiplicity() == 2));

    // p = q = 2: two double points of the pencils plus the four crossings.
    let bp = BiPencil::from_ints(&[1, -1], &[2, 3]).unwrap();
    let counts = bp.arrangement().lattice().multiplicity_counts();
    assert_eq!(counts.get(&2), Some(&6));
    assert_eq!(counts.get(&3), None);
}

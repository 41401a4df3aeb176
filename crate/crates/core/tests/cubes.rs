use linarr::cubical::{
    apply_face, check_theorem2, comp, compose_faces, fixtures, increasing_maps, reshape_2x2,
    semisimplicialize, subset_key, CubicalDiagram, MorphismKind, SpaceDescriptor,
};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn labelled(n: usize) -> CubicalDiagram {
    CubicalDiagram::uniform(
        n,
        |m| {
            let comps = (0..=m.count_ones())
                .map(|i| comp(&format!("c{m}.{i}"), i as i64))
                .collect();
            SpaceDescriptor::new(&format!("X{}", subset_key(m)), comps, true)
        },
        |from, to| {
            // Removing index 0 is a modification, anything else an immersion.
            if (from ^ to) & 1 == 1 {
                MorphismKind::ProperModification
            } else {
                MorphismKind::ClosedImmersion
            }
        },
    )
    .unwrap()
}

#[test]
fn face_maps_compose_contravariantly() {
    for n in 1..=4 {
        let s = semisimplicialize(&labelled(n)).unwrap();
        for r in 0..n {
            for sdim in 0..=r {
                for beta in increasing_maps(sdim, r) {
                    let d_beta = s.face_map(&beta, r).unwrap();
                    for u in 0..=sdim {
                        for beta_p in increasing_maps(u, sdim) {
                            let d_beta_p = s.face_map(&beta_p, sdim).unwrap();
                            let d_comp = s.face_map(&compose_faces(&beta, &beta_p), r).unwrap();
                            for (bm, direct) in d_beta.iter().zip(&d_comp) {
                                let second = d_beta_p.iter().find(|x| x.from == bm.to).unwrap();
                                assert_eq!(direct.from, bm.from);
                                assert_eq!(
                                    direct.to, second.to,
                                    "n={n} beta={beta:?} beta'={beta_p:?}"
                                );
                                assert_eq!(direct.kind, second.kind.after(bm.kind));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn level_sizes_are_binomial() {
    for n in 1..=6 {
        let s = semisimplicialize(&labelled(n)).unwrap();
        for (k, level) in s.levels.iter().enumerate() {
            assert_eq!(level.blocks.len(), binom(n, k + 1));
            for b in &level.blocks {
                assert_eq!(b.subset.count_ones() as usize, k + 1);
            }
        }
    }
}

#[test]
fn face_formula_picks_indexed_elements() {
    // I = {0, 2, 3}; β = (0, 2) picks i_0 and i_2.
    assert_eq!(apply_face(&[0, 2], 0b1101), 0b1001);
    assert_eq!(apply_face(&[1], 0b0110), 0b0100);
}

#[test]
fn reshape_round_trips_and_partitions() {
    for m in 2..=6 {
        let d = labelled(m);
        let t = reshape_2x2(&d).unwrap();
        assert_eq!(t.nodes.len(), 4);
        let mut seen = std::collections::BTreeSet::new();
        for cube in &t.nodes {
            assert_eq!(cube.nodes().len(), 1 << (m - 2));
            for node in cube.nodes() {
                assert!(seen.insert(node.name.clone()));
            }
        }
        assert_eq!(seen.len(), 1 << m);
        assert_eq!(t.flatten().unwrap(), d);
        let components: usize = t.nodes.iter().map(|c| c.component_count()).sum();
        assert_eq!(components, d.component_count());
        if m >= 3 {
            // Semisimplicial levels plus the augmented node see every component once.
            let seen: usize = t
                .nodes
                .iter()
                .map(|c| {
                    let s = semisimplicialize(c).unwrap();
                    let levels: usize = s.levels.iter().map(|l| l.components().len()).sum();
                    levels + s.augmented.components.len()
                })
                .sum();
            assert_eq!(seen, d.component_count());
        }
    }
}

#[test]
fn morphism_of_cubes_reassembles() {
    for n in 1..=5 {
        let d = labelled(n);
        let m = linarr::cubical::as_morphism_of_cubes(&d).unwrap();
        assert_eq!(m.source.n(), n - 1);
        assert_eq!(m.assemble().unwrap(), d);
    }
    // A 2-cube read twice: rows then the single arrows.
    let d = labelled(2);
    let m = linarr::cubical::as_morphism_of_cubes(&d).unwrap();
    let top = linarr::cubical::as_morphism_of_cubes(&m.source).unwrap();
    assert_eq!(top.source.node(0), d.node(0b11));
    assert_eq!(top.target.node(0), d.node(0b10));
}

#[test]
fn fixture_json_round_trip() {
    let input = fixtures::distinct_pencils(3, 5, 1, 1);
    let text = serde_json::to_string(&input).unwrap();
    let back: linarr::cubical::Theorem2Input = serde_json::from_str(&text).unwrap();
    assert_eq!(back, input);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unmatched_components_keep_the_verdict(extra in prop::collection::vec((0usize..3, 0i64..=2), 1..6)) {
        for base in [fixtures::equal_pencils(2), fixtures::distinct_pencils(2, 3, 1, 2)] {
            let before = check_theorem2(&base).unwrap();
            prop_assert!(before.holds);
            let mut nodes = base.dx.nodes().to_vec();
            for (i, (slot, dim)) in extra.iter().enumerate() {
                // Add to a nonempty index; dimension padding keeps declared maxima valid.
                let m = slot + 1;
                let mut comps = nodes[m].components.clone();
                comps.push(comp(&format!("V{i}"), (*dim).min(nodes[m].dimension.max(0))));
                nodes[m] = SpaceDescriptor::new(&nodes[m].name, comps, true);
            }
            let mut input = base.clone();
            input.dx = CubicalDiagram::new(2, nodes, base.dx.arrows().clone()).unwrap();
            let after = check_theorem2(&input).unwrap();
            prop_assert_eq!(before, after);
        }
    }
}

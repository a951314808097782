use proptest::prelude::*;
use starlike_core::affine::{affine_space_design, selfdual_design};
use starlike_core::catalog::{cycle_subdivision_instance, complete_bipartite_subdivision_instance};
use starlike_core::graphs::{adjacency_design, incidence_graph};
use starlike_core::incidence::fixtures::{complete_design, degenerate_design, grid_design};
use starlike_core::incidence::{
    is_nicely_affine, is_pairwise_transitive, is_parallel_class, pair_classes, resolution_by_group,
    stabilizer_two_transitive_on_classes, PairwiseReport,
};
use starlike_core::{Design, PermGroup, Permutation};

/// A design with `G` and `N` on points⊔blocks.
#[derive(Debug, Clone)]
struct Fixture {
    design: Design,
    g: PermGroup,
    n: PermGroup,
}

fn pool() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (k, l) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        let (design, g) = degenerate_design(k, l).unwrap();
        out.push(Fixture { design, n: g.clone(), g });
    }
    for (k, l) in [(3, 2), (4, 3)] {
        let (design, n) = grid_design(k, l).unwrap();
        out.push(Fixture { design, g: n.clone(), n });
    }
    for v in [3, 4, 5] {
        let (design, g) = complete_design(v).unwrap();
        out.push(Fixture { design, n: g.clone(), g });
    }
    for (d, p) in [(3, 2), (3, 3)] {
        let inst = affine_space_design(d, p).unwrap();
        out.push(Fixture { design: inst.design, g: inst.g, n: inst.n });
    }
    let sd = selfdual_design(3, 2, &[1, 0, 0]).unwrap().instance;
    out.push(Fixture { design: sd.design, g: sd.g, n: sd.n });
    for inst in [cycle_subdivision_instance(3).unwrap(), complete_bipartite_subdivision_instance(3).unwrap()] {
        out.push(Fixture { design: inst.design, g: inst.g, n: inst.n });
    }
    out
}

/// Relabels the points by `perm` and carries both groups along.
fn relabel(f: &Fixture, perm: &[usize]) -> Fixture {
    let v = f.design.v();
    let blocks: Vec<Vec<usize>> = f.design.blocks().iter().map(|b| b.iter().map(|&x| perm[x]).collect()).collect();
    let design = Design::new(v, blocks).unwrap();
    let pi = Permutation::from_images(perm.to_vec()).unwrap();
    let points: Vec<usize> = (0..v).collect();
    let carry = |grp: &PermGroup| {
        let on_points = grp.restrict(&points).unwrap();
        let gens: Vec<Permutation> = on_points.generators().iter().map(|g| pi.inverse().then(g).then(&pi)).collect();
        design.lift_point_group(&gens).unwrap()
    };
    Fixture { g: carry(&f.g), n: carry(&f.n), design }
}

fn fixture() -> impl Strategy<Value = Fixture> {
    let fixtures = pool();
    (0..fixtures.len()).prop_flat_map(move |i| {
        let f = fixtures[i].clone();
        let v = f.design.v();
        Just((0..v).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| relabel(&f, &perm))
    })
}

fn random_design() -> impl Strategy<Value = Design> {
    (1usize..=7).prop_flat_map(|v| {
        prop::collection::vec(prop::collection::btree_set(0..v, 1..=v), 1..=6)
            .prop_map(move |blocks| Design::new(v, blocks.into_iter().map(|b| b.into_iter().collect()).collect()).unwrap())
    })
}

fn transposed(r: &PairwiseReport) -> [bool; 6] {
    [
        r.incident_pb.transitive,
        r.nonincident_pb.transitive,
        r.intersecting_bb.transitive,
        r.nonintersecting_bb.transitive,
        r.collinear_pp.transitive,
        r.noncollinear_pp.transitive,
    ]
}

fn plain(r: &PairwiseReport) -> [bool; 6] {
    [
        r.incident_pb.transitive,
        r.nonincident_pb.transitive,
        r.collinear_pp.transitive,
        r.noncollinear_pp.transitive,
        r.intersecting_bb.transitive,
        r.nonintersecting_bb.transitive,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pair_classes_partition(d in random_design()) {
        let pc = pair_classes(&d);
        let (v, b) = (d.v(), d.b());
        prop_assert_eq!(pc.incident_pb.len() + pc.nonincident_pb.len(), v * b);
        prop_assert_eq!(pc.collinear_pp.len() + pc.noncollinear_pp.len(), v * (v - 1));
        prop_assert_eq!(pc.intersecting_bb.len() + pc.nonintersecting_bb.len(), b * (b - 1));
        prop_assert_eq!(pc.incident_pb.len(), d.incidences());
    }

    #[test]
    fn incidence_graph_round_trip(d in random_design()) {
        let ad = adjacency_design(&incidence_graph(&d)).unwrap();
        prop_assert_eq!(&ad.design, &d);
        prop_assert!(ad.is_aligned());
    }

    #[test]
    fn nicely_affine_classes_are_parallel(f in fixture()) {
        if let Ok(nice) = is_nicely_affine(&f.design, &f.n) {
            if nice.classes.len() >= 2 {
                for class in &nice.classes {
                    prop_assert!(is_parallel_class(&f.design, class));
                }
            }
        }
    }

    #[test]
    fn pairwise_transitivity_is_self_dual(f in fixture()) {
        if let Ok(dual) = f.design.dual() {
            let g_dual = dual.transport(&f.g);
            let here = is_pairwise_transitive(&f.design, &f.g).unwrap();
            let there = is_pairwise_transitive(&dual.design, &g_dual).unwrap();
            prop_assert_eq!(transposed(&here), plain(&there));
            prop_assert_eq!(here.overall, there.overall);
        }
    }

    #[test]
    fn pairwise_transitive_designs_are_quasisymmetric(f in fixture()) {
        let rep = is_pairwise_transitive(&f.design, &f.g).unwrap();
        if rep.overall && rep.intersecting_bb.size > 0 && rep.nonintersecting_bb.size > 0 {
            let sizes = f.design.intersection_numbers().unwrap();
            prop_assert_eq!(sizes.len(), 2);
            prop_assert_eq!(sizes[0], 0);
        }
    }

    #[test]
    fn resolvable_pairwise_transitive_rank_three(f in fixture()) {
        let rep = is_pairwise_transitive(&f.design, &f.g).unwrap();
        let nice = is_nicely_affine(&f.design, &f.n);
        if let (true, Ok(nice)) = (rep.overall, nice) {
            if nice.classes.len() >= 2 {
                let blocks: Vec<usize> = (0..f.design.b()).map(|b| f.design.v() + b).collect();
                prop_assert_eq!(f.g.rank(&blocks).unwrap(), 3);
                let parts: Vec<Vec<usize>> = nice
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|&b| f.design.v() + b).collect())
                    .collect();
                let mut rest: Vec<Vec<usize>> = (0..f.design.v()).map(|x| vec![x]).collect();
                rest.extend(parts);
                prop_assert!(f.g.induced_action(&rest).is_ok());
                prop_assert!(stabilizer_two_transitive_on_classes(&f.design, &f.g, &nice.classes).unwrap());
            }
        }
    }

    #[test]
    fn disconnected_pairwise_transitive_is_degenerate(f in fixture()) {
        let rep = is_pairwise_transitive(&f.design, &f.g).unwrap();
        if rep.overall && !f.design.is_connected() && !f.design.has_repeated_blocks() {
            let (k, l) = f.design.degenerate_shape().expect("blocks partition the points");
            let (model, _) = degenerate_design(k, l).unwrap();
            prop_assert_eq!((model.v(), model.b()), (f.design.v(), f.design.b()));
        }
    }

    #[test]
    fn group_resolution_matches_nicely_affine(f in fixture()) {
        if let Ok(nice) = is_nicely_affine(&f.design, &f.n) {
            let classes = resolution_by_group(&f.design, &f.n).expect("orbits are parallel classes");
            prop_assert_eq!(classes, nice.classes);
        }
    }
}

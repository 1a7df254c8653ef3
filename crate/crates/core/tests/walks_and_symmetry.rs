use monodigraph::walks::{
    construct_walk_13, construct_walk_2p_minus_1, construct_walk_2p_minus_1_traced, construct_walk_2p_minus_2,
    construct_walk_2p_minus_2_traced, construct_walk_9, construct_walk_gcd, walk_from_solution,
};
use monodigraph::{curves, Diameter, Digraph, Elem, Field, Vertex};
use proptest::prelude::*;

fn d(q: u64, m: u32, n: u32) -> Digraph {
    Digraph::monomial(Field::of_order(q).unwrap(), m, n).unwrap()
}

/// Scaling a certificate's `xs` by `l` gives a walk between the images of
/// its endpoints under `(a, b) -> (l a, l^(m+n) b)`.
#[test]
fn automorphism_round_trip() {
    for p in [3u64, 5, 7] {
        for m in 1..p as u32 {
            for n in 1..p as u32 {
                let g = d(p, m, n);
                let f = g.field();
                for from in g.vertices() {
                    for to in g.vertices() {
                        let c = construct_walk_2p_minus_1(&g, from, to).unwrap();
                        for l in f.nonzero() {
                            let xs: Vec<Elem> = c.xs.iter().map(|&x| f.mul(l, x)).collect();
                            let image = walk_from_solution(&g, g.apply_automorphism(l, from).unwrap(), &xs);
                            assert!(image.valid);
                            assert_eq!(image.end, g.apply_automorphism(l, to).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn every_ladder_case_is_reached() {
    let mut odd = std::collections::BTreeSet::new();
    let mut even = std::collections::BTreeSet::new();
    for p in [3u64, 5, 7, 11] {
        for m in 1..p as u32 {
            for n in 1..p as u32 {
                let g = d(p, m, n);
                for from in g.vertices() {
                    for to in g.vertices() {
                        odd.insert(construct_walk_2p_minus_1_traced(&g, from, to).unwrap().case);
                        if let Ok(o) = construct_walk_2p_minus_2_traced(&g, from, to) {
                            even.insert(o.case);
                        }
                    }
                }
            }
        }
    }
    let odd_cases = ["0", "1.1", "1.2", "1.3.1", "1.3.2", "1.3.3.1", "1.3.3.2", "1.3.3.3"];
    assert_eq!(odd, odd_cases.into_iter().collect());
    let even_cases = [
        "0", "2.1", "2.2", "2.3.1", "2.3.2.1.1", "2.3.2.1.2", "2.3.2.1.3", "2.3.2.2.1", "2.3.2.2.2.1",
        "2.3.2.2.2.2", "2.3.2.2.2.3", "2.4.1", "2.4.2.1.1", "2.4.2.1.2", "2.4.2.1.3", "2.4.2.2.1",
        "2.4.2.2.2.1", "2.4.2.2.2.2", "2.4.2.2.2.3",
    ];
    assert_eq!(even, even_cases.into_iter().collect());
}

#[test]
fn certificates_bound_bfs_distance() {
    for (q, m, n) in [(3u64, 1u32, 2u32), (4, 1, 2), (7, 2, 5), (8, 3, 5), (9, 3, 1)] {
        let g = d(q, m, n);
        for from in g.vertices() {
            let dm = g.bfs_distances(from);
            for to in g.vertices() {
                let c = construct_walk_gcd(&g, from, to).unwrap();
                assert!(dm.get(to).unwrap() as usize <= c.len());
                assert!(c.len() <= 4);
            }
        }
    }
}

#[test]
fn long_walks_in_extension_fields() {
    let g9 = d(25, 2, 2);
    let g13 = d(27, 2, 4);
    let g13b = d(49, 3, 2);
    for from in g9.vertices().step_by(37) {
        for to in g9.vertices().step_by(3) {
            assert_eq!(construct_walk_9(&g9, from, to).unwrap().len(), 9);
        }
    }
    for from in g13.vertices().step_by(41) {
        for to in g13.vertices().step_by(5) {
            assert_eq!(construct_walk_13(&g13, from, to).unwrap().len(), 13);
        }
    }
    for from in g13b.vertices().step_by(97) {
        for to in g13b.vertices().step_by(11) {
            assert_eq!(construct_walk_13(&g13b, from, to).unwrap().len(), 13);
        }
    }
}

#[test]
fn reversal_preserves_diameter() {
    for q in [3u64, 4, 5, 7, 8, 9] {
        for m in 1..q as u32 {
            for n in m + 1..q as u32 {
                assert_eq!(d(q, m, n).diameter(), d(q, n, m).diameter(), "q={q} m={m} n={n}");
            }
        }
    }
}

#[test]
fn curve_threshold_gives_diameter_three() {
    for q in [11u64, 13, 25, 27] {
        assert!(q > curves::diam3_threshold(2));
        assert_eq!(d(q, 1, 2).diameter(), Diameter::Finite(3));
    }
}

fn small_digraph() -> impl Strategy<Value = (u64, u32, u32)> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16])
        .prop_flat_map(|q| (Just(q), 1..q as u32, 1..q as u32))
}

proptest! {
    #[test]
    fn walks_from_in_range_codes_are_valid(
        (q, m, n) in small_digraph(),
        start in (0u32..1000, 0u32..1000),
        xs in prop::collection::vec(0u32..1000, 1..12),
    ) {
        let g = d(q, m, n);
        let q = q as u32;
        let start = Vertex::new(start.0 % q, start.1 % q);
        let xs: Vec<Elem> = xs.into_iter().map(|x| Elem(x % q)).collect();
        let c = walk_from_solution(&g, start, &xs);
        prop_assert!(c.valid);
        prop_assert_eq!(c.end.a, *xs.last().unwrap());
        prop_assert_eq!(c.vertices.len(), xs.len() + 1);
    }

    #[test]
    fn out_of_range_codes_never_validate(
        (q, m, n) in small_digraph(),
        bad in 0u32..1000,
    ) {
        let g = d(q, m, n);
        let c = walk_from_solution(&g, Vertex::new(0, 0), &[Elem(q as u32 + bad)]);
        prop_assert!(!c.valid);
    }

    #[test]
    fn ladders_hit_random_targets(
        p in prop::sample::select(vec![13u64, 17, 19]),
        m in 1u32..19,
        n in 1u32..19,
        a in 0u32..19, b in 0u32..19, u in 0u32..19, v in 0u32..19,
    ) {
        let (m, n) = (1 + (m - 1) % (p as u32 - 1), 1 + (n - 1) % (p as u32 - 1));
        let g = d(p, m, n);
        let r = |x: u32| x % p as u32;
        let (from, to) = (Vertex::new(r(a), r(b)), Vertex::new(r(u), r(v)));
        let c = construct_walk_2p_minus_1(&g, from, to).unwrap();
        prop_assert!(c.valid && c.end == to && c.len() == 2 * p as usize - 1);
        if (m, n) != (p as u32 - 1, p as u32 - 1) {
            let c = construct_walk_2p_minus_2(&g, from, to).unwrap();
            prop_assert!(c.valid && c.end == to && c.len() == 2 * p as usize - 2);
        }
    }
}

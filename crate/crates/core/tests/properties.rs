use std::sync::Arc;

use digitop::afpp::{
    approx_fixed_points, approx_fixed_points_multi, decide_afpp_s, fixed_points, universality_check, DecideOptions,
    Meeting, Opponents,
};
use digitop::grid::{self, is_connected};
use digitop::maps::{enumerate_continuous_maps, is_continuous};
use digitop::subdivision::{
    compose_multimap_then_map, e_r, enumerate_continuous_multimaps, find_inducer, induce_multimap, subdivide,
};
use digitop::{Adjacency, DigitalImage, MultiMap, Point, PointMap, SearchConfig, Status};
use proptest::prelude::*;

fn image(dim: usize, max: usize, span: i64) -> impl Strategy<Value = DigitalImage> {
    prop::collection::btree_set(prop::collection::vec(-span..=span, dim), 1..=max)
        .prop_map(move |pts| DigitalImage::new(dim, pts.into_iter().map(Point::from)).unwrap())
}

fn any_image(max: usize) -> impl Strategy<Value = DigitalImage> {
    (1usize..=3).prop_flat_map(move |dim| image(dim, max, 2))
}

/// A random table of a self-map, reduced modulo the image size.
fn self_map(x: &Arc<DigitalImage>, seed: &[usize]) -> PointMap {
    let table = (0..x.len()).map(|i| seed[i % seed.len()] % x.len()).collect();
    PointMap::from_indices(Arc::clone(x), Arc::clone(x), table).unwrap()
}

// union-find reference for connectivity
fn union_find_parts(x: &DigitalImage, u: u32) -> usize {
    let mut parent: Vec<usize> = (0..x.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if grid::cu_adjacent(x.point(i).coords(), x.point(j).coords(), u) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..x.len()).filter(|&i| root(&mut parent, i) == i).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjacency_is_symmetric_irreflexive_and_monotone(x in any_image(12), k in 1u32..4) {
        let dim = x.dim() as u32;
        for u in 1..=dim {
            let g = x.graph(Adjacency::Cu(u)).unwrap();
            let single = x.graph(Adjacency::power(u, 1)).unwrap();
            let pk = x.graph(Adjacency::power(u, k)).unwrap();
            let pk1 = x.graph(Adjacency::power(u, k + 1)).unwrap();
            for i in 0..x.len() {
                prop_assert!(!g.is_adjacent(i, i));
                for j in 0..x.len() {
                    prop_assert_eq!(g.is_adjacent(i, j), g.is_adjacent(j, i));
                    prop_assert_eq!(g.is_adjacent(i, j), single.is_adjacent(i, j));
                    prop_assert!(!g.is_adjacent(i, j) || pk.is_adjacent(i, j));
                    prop_assert!(!pk.is_adjacent(i, j) || pk1.is_adjacent(i, j));
                    if u < dim {
                        let wider = x.graph(Adjacency::Cu(u + 1)).unwrap();
                        prop_assert!(!g.is_adjacent(i, j) || wider.is_adjacent(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn connectivity_agrees_with_union_find(x in any_image(50)) {
        for u in 1..=x.dim() as u32 {
            let parts = is_connected(&x, Adjacency::Cu(u)).unwrap();
            let expected = union_find_parts(&x, u);
            prop_assert_eq!(parts.parts.len(), expected);
            prop_assert_eq!(parts.connected, expected == 1);
        }
    }

    #[test]
    fn subdivision_sizes_and_fibers(x in any_image(8), r in 1i64..=3) {
        let x = Arc::new(x);
        let s = subdivide(&x, r).unwrap();
        let block = (r as usize).pow(x.dim() as u32);
        prop_assert_eq!(s.len(), block * x.len());
        for i in 0..x.len() {
            prop_assert_eq!(s.block(i).len(), block);
            for &k in s.block(i) {
                prop_assert_eq!(&e_r(&s, s.lattice().point(k)).unwrap(), x.point(i));
            }
        }
    }

    #[test]
    fn continuous_maps_are_found_at_level_one(x in any_image(6), seed in prop::collection::vec(0usize..64, 6)) {
        let x = Arc::new(x);
        let c1 = Adjacency::Cu(1);
        let f = self_map(&x, &seed);
        let multi = MultiMap::from_point_map(&f);
        let report = find_inducer(&multi, c1, c1, 1, &SearchConfig::default()).unwrap();
        prop_assert_eq!(report.found(), is_continuous(&f, c1, c1).unwrap().continuous);
    }

    #[test]
    fn fixed_points_are_approximate_and_grow_with_mu(x in any_image(8), seed in prop::collection::vec(0usize..64, 8)) {
        let x = Arc::new(x);
        let f = self_map(&x, &seed);
        let u = x.dim() as u32;
        let fixed = fixed_points(&f).unwrap();
        let near = approx_fixed_points(&f, Adjacency::Cu(u)).unwrap();
        let nearer = approx_fixed_points(&f, Adjacency::power(u, 2)).unwrap();
        prop_assert!(fixed.iter().all(|p| near.contains(p)));
        prop_assert!(near.iter().all(|p| nearer.contains(p)));
        let multi = MultiMap::from_point_map(&f);
        prop_assert_eq!(approx_fixed_points_multi(&multi, Adjacency::Cu(u)).unwrap(), near);
    }

    #[test]
    fn property_agrees_with_identity_universality(x in image(2, 5, 1), u in 1u32..=2) {
        let x = Arc::new(x);
        let c = Adjacency::Cu(u);
        let opts = DecideOptions::default();
        let s = decide_afpp_s(&x, c, c, c, &opts).unwrap();
        let id = MultiMap::identity(Arc::clone(&x));
        let uni = universality_check(&id, c, c, Meeting::Weak, Opponents::Single, &opts).unwrap();
        prop_assert_eq!(s.status, uni.status);
        prop_assert_ne!(s.status, Status::Unknown);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn enumerated_multimaps_have_inducers(x in image(2, 2, 1), u in 1u32..=2) {
        let x = Arc::new(x);
        let c = Adjacency::Cu(u);
        for m in enumerate_continuous_multimaps(&x, &x, c, c, 2, u64::MAX).unwrap() {
            let m = m.unwrap();
            let report = find_inducer(&m, c, c, 2, &SearchConfig::default()).unwrap();
            let inducer = report.inducer.expect("induced at level 2");
            let s = Arc::clone(&inducer.subdivision);
            prop_assert_eq!(&induce_multimap(&s, &inducer.map).unwrap(), &m);
            prop_assert!(is_continuous(&inducer.map, c, c).unwrap().continuous);
        }
    }

    #[test]
    fn composite_with_a_continuous_map_stays_induced(x in image(2, 3, 1), pick in 0usize..1000) {
        let x = Arc::new(x);
        let c = Adjacency::Cu(2);
        let multis: Vec<MultiMap> =
            enumerate_continuous_multimaps(&x, &x, c, c, 2, u64::MAX).unwrap().map(Result::unwrap).collect();
        let maps: Vec<PointMap> = enumerate_continuous_maps(&x, &x, c, c, u64::MAX).unwrap().map(Result::unwrap).collect();
        let f = &multis[pick % multis.len()];
        let g = &maps[(pick / 7) % maps.len()];
        let report = find_inducer(f, c, c, 2, &SearchConfig::default()).unwrap();
        let f = f.clone().with_inducer(report.inducer.unwrap()).unwrap();
        let gf = compose_multimap_then_map(&f, g).unwrap();
        let inducer = gf.inducer().expect("composite carries an inducer");
        prop_assert!(is_continuous(&inducer.map, c, c).unwrap().continuous);
        prop_assert_eq!(&induce_multimap(&inducer.subdivision, &inducer.map).unwrap(), &gf);
    }
}

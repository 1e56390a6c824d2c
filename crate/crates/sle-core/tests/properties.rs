//! Invariants of the model and the geometric predicates over seeded random instances.

use proptest::prelude::*;
use sle_core::fpt::FptContext;
use sle_core::gen::{gen_random, GenParams};
use sle_core::io::{emit_instance, parse_instance};
use sle_core::{
    crosses, faces, find_crossing, intervals, is_valid, page_width, sees, super_intervals, Bound, Edge, FaceKind,
    Instance, Layout,
};

fn params() -> impl Strategy<Value = GenParams> {
    (1usize..9, 0usize..12, 1usize..4, 0usize..3, 0usize..5, any::<u64>())
        .prop_map(|(n_h, m_h, ell, n_add, m_add, seed)| GenParams { n_h, m_h, ell, n_add, m_add, seed })
}

fn instance() -> impl Strategy<Value = Instance> {
    params().prop_filter_map("infeasible parameters", |p| gen_random(&p).ok())
}

fn span(l: &Layout, e: Edge) -> (usize, usize) {
    l.span(e).unwrap()
}

/// Same-page pairs whose spans alternate, computed from ranks alone.
fn alternates(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn crossing_is_symmetric_and_matches_rank_alternation(inst in instance()) {
        let l = inst.layout_h();
        let edges: Vec<Edge> = l.pages.keys().copied().collect();
        for &a in &edges {
            for &b in &edges {
                let ab = crosses(&l.spine, a, b).unwrap();
                prop_assert_eq!(ab, crosses(&l.spine, b, a).unwrap());
                prop_assert_eq!(ab, alternates(span(l, a), span(l, b)));
            }
        }
        prop_assert!(find_crossing(l).is_none());
    }

    #[test]
    fn sees_is_symmetric_and_means_insertable(inst in instance()) {
        let l = inst.layout_h();
        let order = l.spine.order();
        for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                for p in 1..=l.ell {
                    let s = sees(l, u, v, p).unwrap();
                    prop_assert_eq!(s, sees(l, v, u, p).unwrap());
                    let e = Edge::new(u, v);
                    if l.pages.contains_key(&e) {
                        continue;
                    }
                    let mut with = l.clone();
                    with.pages.insert(e, p);
                    prop_assert_eq!(s, find_crossing(&with).is_none());
                }
            }
        }
    }

    #[test]
    fn page_width_counts_edges_over_each_gap(inst in instance()) {
        let l = inst.layout_h();
        let n = l.spine.len();
        let mut best = 0;
        for p in 1..=l.ell {
            for gap in 0..n.saturating_sub(1) {
                let over = l.edges_on(p).filter(|&e| { let (a, b) = span(l, e); a <= gap && gap < b }).count();
                best = best.max(over);
            }
        }
        prop_assert_eq!(page_width(l), best);
    }

    #[test]
    fn super_intervals_partition_the_spine(inst in instance()) {
        let k = inst.layout_h().spine.len() + 1;
        let sup = super_intervals(&inst);
        let v_inc = inst.v_inc();
        prop_assert!(sup.len() <= 2 * inst.m_add() + 1);
        prop_assert_eq!(sup.len(), v_inc.len() + 1);
        prop_assert_eq!(sup[0].first, 1);
        prop_assert_eq!(sup[sup.len() - 1].last, k);
        for w in sup.windows(2) {
            prop_assert_eq!(w[0].last + 1, w[1].first);
        }
        for s in &sup {
            prop_assert!(s.first <= s.last);
            for b in [s.left, s.right] {
                if let Bound::Vertex(v) = b {
                    prop_assert!(v_inc.contains(&v));
                }
            }
        }
        let ivs = intervals(inst.layout_h());
        prop_assert_eq!(ivs.len(), k);
        for s in &sup {
            prop_assert_eq!(ivs[s.first - 1].left, s.left);
            prop_assert_eq!(ivs[s.last - 1].right, s.right);
        }
    }

    #[test]
    fn face_depth_is_the_nesting_count(inst in instance()) {
        let l = inst.layout_h();
        let k = l.spine.len() + 1;
        for p in 1..=l.ell {
            let fs = faces(l, p).unwrap();
            prop_assert_eq!(fs.len(), l.edges_on(p).count() + 1);
            let mut owner = vec![0usize; k + 1];
            for f in &fs {
                match f.face.kind {
                    FaceKind::Outer => prop_assert_eq!(f.depth, 0),
                    FaceKind::Inner(e) => {
                        let (a, b) = span(l, e);
                        let around = l.edges_on(p).filter(|&g| { let (c, d) = span(l, g); c <= a && b <= d }).count();
                        prop_assert_eq!(f.depth, around);
                        prop_assert_eq!(f.span, (a + 2, b + 1));
                    }
                }
                for &i in &f.incident {
                    owner[i] += 1;
                }
            }
            // Every interval belongs to exactly one innermost face.
            prop_assert!(owner[1..].iter().all(|&c| c == 1));
        }
        let omega = (1..=l.ell).flat_map(|p| faces(l, p).unwrap()).map(|f| f.depth).max().unwrap_or(0);
        prop_assert_eq!(FptContext::new(&inst).omega(), omega);
    }

    #[test]
    fn emit_is_a_fixed_point_of_parse(inst in instance()) {
        let once = emit_instance(&inst).unwrap();
        let back = parse_instance(once.as_bytes()).unwrap();
        prop_assert_eq!(&emit_instance(&back).unwrap(), &once);
        prop_assert!(once.ends_with('\n'));
    }
}

#[test]
fn generated_layouts_are_valid_over_1000_seeds() {
    let mut built = 0;
    let mut seed = 0u64;
    while built < 1000 {
        let p = GenParams {
            n_h: 2 + (seed % 7) as usize,
            m_h: (seed % 11) as usize,
            ell: 1 + (seed % 3) as usize,
            n_add: (seed % 3) as usize,
            m_add: (seed % 4) as usize,
            seed,
        };
        if let Ok(inst) = gen_random(&p) {
            assert!(is_valid(inst.h(), inst.layout_h()).unwrap(), "seed {seed}");
            built += 1;
        }
        seed += 1;
        assert!(seed < 3000, "too many infeasible parameter sets");
    }
}

#[test]
fn empty_extension_is_trivially_extendable() {
    for seed in 0..50 {
        let inst = gen_random(&GenParams { n_h: 6, m_h: 6, ell: 2, n_add: 0, m_add: 0, seed }).unwrap();
        let out = sle_core::solve(&inst, &Default::default()).unwrap();
        assert_eq!(out.layout.as_ref(), Some(inst.layout_h()));
    }
}

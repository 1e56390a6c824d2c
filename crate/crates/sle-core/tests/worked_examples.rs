//! Small hand-built configurations with known answers.

use sle_core::classical::{candidate_pages, solve_xp};
use sle_core::fpt::{
    admissible_pred_right, check_branch, dp_solve_branch, BranchAssignment, FptContext, HalfEdgeSet, Rejection,
};
use sle_core::io::{emit_instance, parse_instance};
use sle_core::oracle::enumerate_solutions;
use sle_core::reductions::{
    check_reduction_lemmas, extract_certificate, reduce_3sat, reduce_mcc, CnfFormula, Extracted, MccInput,
};
use sle_core::render::{arcs, render_instance, RenderOptions};
use sle_core::{faces, is_valid, super_intervals, Bound, FaceKind, Instance, InstanceBuilder, Layout};

/// Spine u w v x; two pages; one new vertex y and one new edge between old vertices.
const INTRO: &str = r#"{
  "H": {
    "edges": [
      {"page": 1, "u": "u", "v": "w"},
      {"page": 1, "u": "u", "v": "v"},
      {"page": 2, "u": "u", "v": "x"},
      {"page": 2, "u": "w", "v": "x"},
      {"page": 1, "u": "v", "v": "x"}
    ],
    "spine": ["u", "w", "v", "x"]
  },
  "ell": 2,
  "new_edges": [
    {"u": "w", "v": "v"},
    {"u": "y", "v": "u"},
    {"u": "y", "v": "x"},
    {"u": "y", "v": "v"}
  ],
  "new_vertices": ["y"]
}
"#;

fn intro() -> Instance {
    parse_instance(INTRO.as_bytes()).unwrap()
}

#[test]
fn intro_instance_parses_and_extends() {
    let inst = intro();
    assert!(is_valid(inst.h(), inst.layout_h()).unwrap());
    let canonical = emit_instance(&inst).unwrap();
    assert_eq!(emit_instance(&parse_instance(canonical.as_bytes()).unwrap()).unwrap(), canonical);
    let wv = inst.new_edges_between_old()[0];
    assert!(!candidate_pages(&inst, wv).unwrap().is_empty());
    let out = sle_core::solve(&inst, &Default::default()).unwrap();
    assert!(out.extendable());
}

fn segments_intersect(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn polyline(arc: &sle_core::render::Arc, samples: usize) -> Vec<(f64, f64)> {
    (0..=samples).map(|s| arc.point(s as f64 / samples as f64)).collect()
}

fn assert_arcs_disjoint(layout: &Layout, opts: &RenderOptions) {
    let all = arcs(layout, opts);
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.page != b.page || a.edge.shares_endpoint(b.edge) {
                continue;
            }
            let (pa, pb) = (polyline(a, 64), polyline(b, 64));
            for s in pa.windows(2) {
                for t in pb.windows(2) {
                    assert!(!segments_intersect(s[0], s[1], t[0], t[1]), "{:?} meets {:?}", a.edge, b.edge);
                }
            }
        }
    }
}

#[test]
fn rendered_arcs_of_one_page_never_meet() {
    let inst = intro();
    let layout = sle_core::solve(&inst, &Default::default()).unwrap().layout.unwrap();
    for opts in
        [RenderOptions::default(), RenderOptions { mode: sle_core::render::PageMode::Stacked, ..Default::default() }]
    {
        assert_arcs_disjoint(&layout, &opts);
        let svg = render_instance(&inst, &layout, &opts);
        assert_eq!(svg, render_instance(&inst, &layout, &opts));
        assert!(svg.contains(">y<"));
    }
}

#[test]
fn nested_faces_on_one_page() {
    // Page 1: a-f around a-c and c-e; d-e sits inside c-e.
    let mut b = InstanceBuilder::new(1);
    b.old_vertices(["a", "b", "c", "d", "e", "f"]);
    b.old_edge("a", "f", 1).old_edge("a", "c", 1).old_edge("c", "e", 1).old_edge("d", "e", 1);
    let inst = b.build().unwrap();
    let fs = faces(inst.layout_h(), 1).unwrap();
    let get = |u: &str, v: &str| {
        let (u, v) = (inst.vertex(u).unwrap(), inst.vertex(v).unwrap());
        fs.iter().find(|f| f.face.kind == FaceKind::Inner(sle_core::Edge::new(u, v))).unwrap().clone()
    };
    let outer = fs.iter().find(|f| f.face.kind == FaceKind::Outer).unwrap();
    assert_eq!((outer.depth, outer.incident.clone()), (0, vec![1, 7]));
    let af = get("a", "f");
    assert_eq!((af.depth, af.span, af.incident), (1, (2, 6), vec![6]));
    let ac = get("a", "c");
    assert_eq!((ac.depth, ac.span, ac.incident), (2, (2, 3), vec![2, 3]));
    let ce = get("c", "e");
    assert_eq!((ce.depth, ce.span, ce.incident), (2, (4, 5), vec![4]));
    let de = get("d", "e");
    assert_eq!((de.depth, de.span, de.incident), (3, (5, 5), vec![5]));
}

#[test]
fn super_intervals_follow_incident_vertices() {
    let mut b = InstanceBuilder::new(2);
    b.old_vertices(["a", "b", "c", "d", "e", "f"]).old_edge("a", "f", 1);
    b.new_vertex("x").new_vertex("y").new_edge("x", "b").new_edge("y", "e").new_edge("x", "y");
    let inst = b.build().unwrap();
    let s = super_intervals(&inst);
    let v = |n: &str| Bound::Vertex(inst.vertex(n).unwrap());
    let got: Vec<_> = s.iter().map(|s| (s.first, s.last, s.left, s.right)).collect();
    assert_eq!(
        got,
        vec![(1, 2, Bound::LeftSentinel, v("b")), (3, 5, v("b"), v("e")), (6, 7, v("e"), Bound::RightSentinel)]
    );
}

#[test]
fn crossing_forced_by_order_and_pages() {
    // u and v left of a, u before v; u-a and v-b on one page must cross.
    let mut b = InstanceBuilder::new(2);
    b.old_vertices(["a", "b"]).new_vertex("u").new_vertex("v").new_edge("u", "a").new_edge("v", "b");
    let inst = b.build().unwrap();
    let ctx = FptContext::new(&inst);
    let same =
        BranchAssignment { pages: vec![1, 1], order: vec![0, 1], super_of: vec![0, 0], depth: vec![Some(0), Some(0)] };
    assert!(matches!(check_branch(&ctx, &same), Err(Rejection::ImpliedCrossing(..))));
    let apart = BranchAssignment { pages: vec![1, 2], ..same.clone() };
    assert_eq!(check_branch(&ctx, &apart), Ok(()));
    assert!(dp_solve_branch(&ctx, &apart).unwrap().is_some());
}

fn half_edge_case(closing: &str) -> bool {
    // x is placed, y is not; the edge x-y waits inside the face of a-`closing`.
    let mut b = InstanceBuilder::new(1);
    b.old_vertices(["a", "b", "c"]).old_edge("a", closing, 1);
    b.new_vertex("x").new_vertex("y").new_edge("x", "y");
    let inst = b.build().unwrap();
    let ctx = FptContext::new(&inst);
    let br = BranchAssignment { pages: vec![1], order: vec![0, 1], super_of: vec![0, 0], depth: vec![Some(1)] };
    let half = HalfEdgeSet::new(&ctx, &br);
    admissible_pred_right(&ctx, &br, &half, 2, 1)
}

#[test]
fn moving_right_needs_the_half_edge_face_to_continue() {
    assert!(half_edge_case("c"));
    assert!(!half_edge_case("b"));
}

fn satisfies(phi: &CnfFormula, a: &[bool]) -> bool {
    phi.clauses().iter().all(|c| c.iter().any(|&l| a[l.unsigned_abs() as usize - 1] == (l > 0)))
}

#[test]
fn two_clause_formula_round_trip() {
    let phi = CnfFormula::new(3, vec![[1, -2, 3], [-1, 2, 3]]).unwrap();
    let (inst, cert) = reduce_3sat(&phi).unwrap();
    let layout = solve_xp(&inst).unwrap().expect("satisfiable");
    let Extracted::Assignment(a) = extract_certificate(&inst, &layout, &cert).unwrap() else { panic!("wrong kind") };
    assert!(satisfies(&phi, &a));
    assert!(satisfies(&phi, &[true, true, false]));
}

#[test]
fn unsatisfiable_formula_has_no_extension() {
    let clauses: Vec<[i32; 3]> =
        (0..8).map(|m: i32| [1, 2, 3].map(|v| if m >> (v - 1) & 1 == 1 { -v } else { v })).collect();
    let phi = CnfFormula::new(3, clauses).unwrap();
    assert!(phi.satisfying_assignment().is_none());
    let (inst, _) = reduce_3sat(&phi).unwrap();
    assert!(solve_xp(&inst).unwrap().is_none());
}

#[test]
fn three_colors_with_one_triangle() {
    let names: Vec<String> = ["v1_1", "v1_2", "v2_1", "v2_2", "v3_1", "v3_2"].map(String::from).to_vec();
    let colors = vec![1, 1, 2, 2, 3, 3];
    // Triangle v1_1 v2_1 v3_1 plus a path that closes no other colorful triangle.
    let edges = vec![(0, 2), (2, 4), (0, 4), (1, 3), (3, 5)];
    let inp = MccInput::new(3, names, colors, edges).unwrap();
    assert_eq!(inp.colorful_clique(), Some(vec!["v1_1".into(), "v2_1".into(), "v3_1".into()]));
    let (inst, cert) = reduce_mcc(&inp).unwrap();
    let layout = solve_xp(&inst).unwrap().expect("clique exists");
    let Extracted::Clique(set) = extract_certificate(&inst, &layout, &cert).unwrap() else { panic!("wrong kind") };
    assert_eq!(set, ["v1_1", "v2_1", "v3_1"]);
}

#[test]
fn two_color_reduction_properties_hold_on_every_solution() {
    let names: Vec<String> = ["p", "q"].map(String::from).to_vec();
    let inp = MccInput::new(2, names, vec![1, 2], vec![(0, 1)]).unwrap();
    let (inst, cert) = reduce_mcc(&inp).unwrap();
    let report = check_reduction_lemmas(&inst, &cert).unwrap();
    assert!(!report.vacuous());
    assert!(report.passed(), "{report:?}");
    let count = enumerate_solutions(&inst).unwrap().count() as u64;
    assert_eq!(report.solutions, count);
}

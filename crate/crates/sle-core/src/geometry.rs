//! Crossing, validity, visibility, page width, intervals, faces and super intervals.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::model::{Edge, Graph, Instance, Layout, Page, SpineOrder, VertexId};

/// True iff the two spans have four distinct endpoints that alternate.
#[inline]
pub(crate) fn alternate<T: Ord>(a: (T, T), b: (T, T)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

pub fn crosses(spine: &SpineOrder, e1: Edge, e2: Edge) -> Result<bool> {
    let span = |e: Edge| {
        spine.span(e).ok_or_else(|| {
            let (u, v) = e.endpoints();
            crate::Error::InvalidArgument(format!("edge {u}-{v} has an unranked endpoint"))
        })
    };
    Ok(alternate(span(e1)?, span(e2)?))
}

/// First same-page crossing pair, if any. Assumes every edge is ranked.
pub fn find_crossing(layout: &Layout) -> Option<(Edge, Edge)> {
    let mut by_page: Vec<Vec<(usize, usize, Edge)>> = vec![Vec::new(); layout.ell + 1];
    for (&e, &p) in &layout.pages {
        let (l, r) = layout.span(e)?;
        by_page.get_mut(p)?.push((l, r, e));
    }
    for list in &mut by_page {
        list.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        // Open edges, innermost on top; right ends never increase towards the top.
        let mut stack: Vec<(usize, Edge)> = Vec::new();
        for &(l, r, e) in list.iter() {
            while matches!(stack.last(), Some(&(top, _)) if top <= l) {
                stack.pop();
            }
            if let Some(&(top, f)) = stack.last() {
                if top < r {
                    return Some((f, e));
                }
            }
            stack.push((r, e));
        }
    }
    None
}

/// Checks that the layout's spine and page assignment cover exactly the graph.
pub(crate) fn check_carrier(graph: &Graph, layout: &Layout) -> Result<()> {
    if layout.spine.len() != graph.num_vertices() || graph.vertices().iter().any(|&v| !layout.spine.contains(v)) {
        return invalid("spine is not a permutation of the vertex set");
    }
    if layout.pages.len() != graph.num_edges() || graph.edges().iter().any(|e| !layout.pages.contains_key(e)) {
        return invalid("page assignment does not cover exactly the edge set");
    }
    if let Some((e, p)) = layout.pages.iter().find(|(_, &p)| p == 0 || p > layout.ell) {
        let (u, v) = e.endpoints();
        return invalid(format!("edge {u}-{v} on page {p} outside [1, {}]", layout.ell));
    }
    Ok(())
}

pub fn is_valid(graph: &Graph, layout: &Layout) -> Result<bool> {
    check_carrier(graph, layout)?;
    Ok(find_crossing(layout).is_none())
}

/// True iff `layout_g` keeps every old page and the relative order of all old vertices.
pub fn extends(layout_g: &Layout, layout_h: &Layout) -> Result<bool> {
    if layout_g.ell != layout_h.ell {
        return Ok(false);
    }
    let mut last = None;
    for &v in layout_h.spine.order() {
        match layout_g.spine.rank(v) {
            None => return invalid(format!("old vertex {v} missing from the extended spine")),
            Some(r) => {
                if last.is_some_and(|l| l >= r) {
                    return Ok(false);
                }
                last = Some(r);
            }
        }
    }
    for (e, p) in &layout_h.pages {
        match layout_g.pages.get(e) {
            None => {
                let (u, v) = e.endpoints();
                return invalid(format!("old edge {u}-{v} missing from the extended layout"));
            }
            Some(q) if q != p => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// True iff no page-`p` edge alternates with the pair `(u, v)`. Edges incident to
/// `u` or `v` never block.
pub fn sees(layout: &Layout, u: VertexId, v: VertexId, p: Page) -> Result<bool> {
    if p == 0 || p > layout.ell {
        return invalid(format!("page {p} outside [1, {}]", layout.ell));
    }
    if u == v {
        return invalid("sees needs two distinct vertices");
    }
    let (ru, rv) = (layout.spine.rank_of(u)?, layout.spine.rank_of(v)?);
    let q = if ru < rv { (ru, rv) } else { (rv, ru) };
    Ok(layout.edges_on(p).filter_map(|e| layout.span(e)).all(|s| !alternate(s, q)))
}

/// Maximum number of same-page edges strictly spanning one gap between consecutive spine positions.
pub fn page_width(layout: &Layout) -> usize {
    let n = layout.spine.len();
    if n < 2 {
        return 0;
    }
    let mut best = 0;
    for spans in layout.spans_by_page() {
        let mut diff = vec![0i64; n];
        for (l, r) in spans {
            diff[l] += 1;
            diff[r] -= 1;
        }
        let mut run = 0;
        for d in diff.iter().take(n - 1) {
            run += d;
            best = best.max(run as usize);
        }
    }
    best
}

/// One end of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    LeftSentinel,
    Vertex(VertexId),
    RightSentinel,
}

/// Spine segment between two consecutive vertices; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub index: usize,
    pub left: Bound,
    pub right: Bound,
}

/// All `n + 1` intervals of the layout, left to right.
pub fn intervals(layout: &Layout) -> Vec<Interval> {
    let order = layout.spine.order();
    (1..=order.len() + 1)
        .map(|index| Interval {
            index,
            left: if index == 1 { Bound::LeftSentinel } else { Bound::Vertex(order[index - 2]) },
            right: if index == order.len() + 1 { Bound::RightSentinel } else { Bound::Vertex(order[index - 1]) },
        })
        .collect()
}

/// Intervals strictly inside the span `(l, r)` of an edge.
#[inline]
pub(crate) fn spanned_intervals(l: usize, r: usize) -> (usize, usize) {
    (l + 2, r + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    Outer,
    /// Identified by its upper bounding edge.
    Inner(Edge),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub page: Page,
    pub kind: FaceKind,
}

/// A face of one page together with its depth, spanned intervals and incident intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub face: FaceRef,
    pub depth: usize,
    /// First and last spanned interval, inclusive.
    pub span: (usize, usize),
    /// Spanned intervals not separated from the face by a deeper edge.
    pub incident: Vec<usize>,
}

/// Nesting structure of the edges on one page.
#[derive(Clone, Debug)]
pub(crate) struct PageNest {
    pub spans: Vec<(usize, usize)>,
    pub edges: Vec<Edge>,
    pub depth: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// Per interval index (slot 0 unused): deepest edge spanning it.
    pub innermost: Vec<Option<usize>>,
    /// Per spine rank: number of page edges strictly containing that vertex.
    pub container: Vec<usize>,
}

impl PageNest {
    pub fn build(layout: &Layout, p: Page) -> PageNest {
        let n = layout.spine.len();
        let mut items: Vec<((usize, usize), Edge)> =
            layout.edges_on(p).filter_map(|e| layout.span(e).map(|s| (s, e))).collect();
        items.sort_by(|x, y| x.0 .0.cmp(&y.0 .0).then(y.0 .1.cmp(&x.0 .1)));
        let spans: Vec<(usize, usize)> = items.iter().map(|x| x.0).collect();
        let edges: Vec<Edge> = items.iter().map(|x| x.1).collect();
        let mut depth = vec![0; spans.len()];
        let mut parent = vec![None; spans.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (i, &(l, _)) in spans.iter().enumerate() {
            while matches!(stack.last(), Some(&t) if spans[t].1 <= l) {
                stack.pop();
            }
            parent[i] = stack.last().copied();
            depth[i] = stack.len() + 1;
            stack.push(i);
        }
        let mut innermost = vec![None; n + 2];
        let mut by_depth: Vec<usize> = (0..spans.len()).collect();
        by_depth.sort_by_key(|&i| depth[i]);
        for &i in &by_depth {
            let (a, b) = spanned_intervals(spans[i].0, spans[i].1);
            for slot in &mut innermost[a..=b] {
                *slot = Some(i);
            }
        }
        let mut diff = vec![0i64; n + 1];
        for &(l, r) in &spans {
            if r > l + 1 {
                diff[l + 1] += 1;
                diff[r] -= 1;
            }
        }
        let mut container = vec![0; n];
        let mut run = 0i64;
        for (w, slot) in container.iter_mut().enumerate() {
            run += diff[w];
            *slot = run as usize;
        }
        PageNest { spans, edges, depth, parent, innermost, container }
    }

    /// Edge index of the face at depth `d >= 1` spanning `interval`.
    pub fn at_depth(&self, interval: usize, d: usize) -> Option<usize> {
        let mut cur = self.innermost[interval]?;
        if self.depth[cur] < d {
            return None;
        }
        while self.depth[cur] > d {
            cur = self.parent[cur]?;
        }
        Some(cur)
    }

    /// Whether the vertex at spine rank `w` is incident to the face `face`
    /// (`None` is the outer face).
    pub fn vertex_incident(&self, face: Option<usize>, w: usize) -> bool {
        match face {
            None => self.container[w] == 0,
            Some(i) => {
                let (l, r) = self.spans[i];
                l <= w && w <= r && self.container[w] <= self.depth[i]
            }
        }
    }
}

fn check_page(layout: &Layout, p: Page) -> Result<()> {
    if p == 0 || p > layout.ell {
        return invalid(format!("page {p} outside [1, {}]", layout.ell));
    }
    Ok(())
}

/// The outer face plus one face per edge on page `p`.
pub fn faces(layout: &Layout, p: Page) -> Result<Vec<Face>> {
    check_page(layout, p)?;
    let nest = PageNest::build(layout, p);
    let k = layout.spine.len() + 1;
    let mut out = vec![Face {
        face: FaceRef { page: p, kind: FaceKind::Outer },
        depth: 0,
        span: (1, k),
        incident: (1..=k).filter(|&i| nest.innermost[i].is_none()).collect(),
    }];
    for i in 0..nest.edges.len() {
        let (a, b) = spanned_intervals(nest.spans[i].0, nest.spans[i].1);
        out.push(Face {
            face: FaceRef { page: p, kind: FaceKind::Inner(nest.edges[i]) },
            depth: nest.depth[i],
            span: (a, b),
            incident: (a..=b).filter(|&t| nest.innermost[t] == Some(i)).collect(),
        });
    }
    Ok(out)
}

/// The face at depth `d` on page `p` whose span contains `interval`, if any.
pub fn face_at_distance(layout: &Layout, p: Page, interval: usize, d: usize) -> Result<Option<FaceRef>> {
    check_page(layout, p)?;
    if interval == 0 || interval > layout.spine.len() + 1 {
        return invalid(format!("interval {interval} outside [1, {}]", layout.spine.len() + 1));
    }
    if d == 0 {
        return Ok(Some(FaceRef { page: p, kind: FaceKind::Outer }));
    }
    let nest = PageNest::build(layout, p);
    Ok(nest.at_depth(interval, d).map(|i| FaceRef { page: p, kind: FaceKind::Inner(nest.edges[i]) }))
}

/// Class of consecutive intervals with the same `V_inc` vertices on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperInterval {
    pub index: usize,
    pub left: Bound,
    pub right: Bound,
    pub first: usize,
    pub last: usize,
}

impl SuperInterval {
    pub fn contains(&self, interval: usize) -> bool {
        self.first <= interval && interval <= self.last
    }

    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn super_intervals(inst: &Instance) -> Vec<SuperInterval> {
    let spine = &inst.layout_h().spine;
    let k = spine.len() + 1;
    let ranks: Vec<usize> = inst
        .v_inc()
        .into_iter()
        .map(|v| spine.rank(v).expect("V_inc is old"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let q = ranks.len();
    (0..=q)
        .map(|c| SuperInterval {
            index: c,
            left: if c == 0 { Bound::LeftSentinel } else { Bound::Vertex(spine.at(ranks[c - 1])) },
            right: if c == q { Bound::RightSentinel } else { Bound::Vertex(spine.at(ranks[c])) },
            first: if c == 0 { 1 } else { ranks[c - 1] + 2 },
            last: if c == q { k } else { ranks[c] + 1 },
        })
        .collect()
}

//! Graphs, spine orders, page assignments, layouts and instances.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Page index, 1-based.
pub type Page = usize;

/// Dense vertex identifier; display names live in the owning [`Instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Edge {
        if u <= v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        }
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    pub fn is_loop(self) -> bool {
        self.a == self.b
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }
}

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v) {
                return invalid(format!("duplicate vertex {v}"));
            }
        }
        let mut es = BTreeSet::new();
        for e in edges {
            let (u, v) = e.endpoints();
            if e.is_loop() {
                return invalid(format!("self-loop at {u}"));
            }
            if !vs.contains(&u) || !vs.contains(&v) {
                return invalid(format!("edge {u}-{v} has an unlisted endpoint"));
            }
            if !es.insert(e) {
                return invalid(format!("multi-edge {u}-{v}"));
            }
        }
        Ok(Graph { vertices: vs, edges: es })
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    pub(crate) fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut g = self.clone();
        for e in removed {
            g.edges.remove(e);
        }
        g
    }
}

const UNRANKED: u32 = u32::MAX;

/// Left-to-right vertex sequence with O(1) rank lookup.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpineOrder {
    order: Vec<VertexId>,
    rank: Vec<u32>,
}

impl SpineOrder {
    pub fn new(order: Vec<VertexId>) -> Result<SpineOrder> {
        let size = order.iter().map(|v| v.index() + 1).max().unwrap_or(0);
        let mut rank = vec![UNRANKED; size];
        for (i, v) in order.iter().enumerate() {
            if rank[v.index()] != UNRANKED {
                return invalid(format!("vertex {v} appears twice on the spine"));
            }
            rank[v.index()] = i as u32;
        }
        Ok(SpineOrder { order, rank })
    }

    pub fn rank(&self, v: VertexId) -> Option<usize> {
        match self.rank.get(v.index()) {
            Some(&r) if r != UNRANKED => Some(r as usize),
            _ => None,
        }
    }

    pub fn rank_of(&self, v: VertexId) -> Result<usize> {
        self.rank(v).ok_or_else(|| Error::InvalidArgument(format!("vertex {v} is not on the spine")))
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn at(&self, rank: usize) -> VertexId {
        self.order[rank]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.rank(v).is_some()
    }

    /// Ranks of both endpoints, left first.
    pub fn span(&self, e: Edge) -> Option<(usize, usize)> {
        let (u, v) = e.endpoints();
        let (ru, rv) = (self.rank(u)?, self.rank(v)?);
        Some(if ru < rv { (ru, rv) } else { (rv, ru) })
    }
}

/// Page of every edge.
pub type PageAssignment = BTreeMap<Edge, Page>;

/// Spine order plus page assignment over `ell` pages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub spine: SpineOrder,
    pub pages: PageAssignment,
    pub ell: usize,
}

impl Layout {
    pub fn new(spine: SpineOrder, pages: PageAssignment, ell: usize) -> Result<Layout> {
        if ell == 0 {
            return invalid("page count must be positive");
        }
        for (&e, &p) in &pages {
            let (u, v) = e.endpoints();
            if p == 0 || p > ell {
                return invalid(format!("edge {u}-{v} on page {p} outside [1, {ell}]"));
            }
            if spine.span(e).is_none() {
                return invalid(format!("edge {u}-{v} has an endpoint off the spine"));
            }
        }
        Ok(Layout { spine, pages, ell })
    }

    pub fn page_of(&self, e: Edge) -> Option<Page> {
        self.pages.get(&e).copied()
    }

    pub fn edges_on(&self, p: Page) -> impl Iterator<Item = Edge> + '_ {
        self.pages.iter().filter(move |(_, &q)| q == p).map(|(&e, _)| e)
    }

    pub fn span(&self, e: Edge) -> Option<(usize, usize)> {
        self.spine.span(e)
    }

    /// Spans of the edges on each page; index 0 is unused.
    pub(crate) fn spans_by_page(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.ell + 1];
        for (&e, &p) in &self.pages {
            if let Some(s) = self.spine.span(e) {
                out[p].push(s);
            }
        }
        out
    }
}

/// An SLE instance: page count, host graph `G`, subgraph `H` and a layout of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    ell: usize,
    g: Graph,
    h: Graph,
    layout_h: Layout,
    names: Vec<String>,
    by_name: HashMap<String, VertexId>,
    new_vertices: Vec<VertexId>,
    new_edges: Vec<Edge>,
    old: Vec<bool>,
}

impl Instance {
    /// Validates every invariant: names cover all ids and are unique, `H ⊆ G`,
    /// the layout matches `H` and is crossing-free.
    pub fn new(names: Vec<String>, ell: usize, g: Graph, h: Graph, layout_h: Layout) -> Result<Instance> {
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), VertexId(i as u32)).is_some() {
                return invalid(format!("duplicate vertex name {n:?}"));
            }
        }
        if let Some(v) = g.vertices().iter().find(|v| v.index() >= names.len()) {
            return invalid(format!("vertex {v} has no name"));
        }
        if !h.is_subgraph_of(&g) {
            return invalid("H is not a subgraph of G");
        }
        if layout_h.ell != ell {
            return invalid(format!("layout has {} pages, instance has {ell}", layout_h.ell));
        }
        crate::geometry::check_carrier(&h, &layout_h)?;
        if let Some((e1, e2)) = crate::geometry::find_crossing(&layout_h) {
            let show = |e: Edge| {
                let (u, v) = e.endpoints();
                format!("{}-{}", names[u.index()], names[v.index()])
            };
            return Err(Error::InvalidLayout(format!(
                "edges {} and {} cross on page {}",
                show(e1),
                show(e2),
                layout_h.pages[&e1]
            )));
        }
        let mut old = vec![false; names.len()];
        for v in h.vertices() {
            old[v.index()] = true;
        }
        let new_vertices = g.vertices().iter().copied().filter(|v| !old[v.index()]).collect();
        let new_edges = g.edges().iter().copied().filter(|e| !h.contains_edge(*e)).collect();
        Ok(Instance { ell, g, h, layout_h, names, by_name, new_vertices, new_edges, old })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn layout_h(&self) -> &Layout {
        &self.layout_h
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn edge_name(&self, e: Edge) -> String {
        let (u, v) = e.endpoints();
        format!("{}-{}", self.name(u), self.name(v))
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.by_name.get(name).copied()
    }

    pub fn is_old(&self, v: VertexId) -> bool {
        self.old.get(v.index()).copied().unwrap_or(false)
    }

    /// `V_add`, in id order.
    pub fn new_vertices(&self) -> &[VertexId] {
        &self.new_vertices
    }

    /// `E_add`, in edge order.
    pub fn new_edges(&self) -> &[Edge] {
        &self.new_edges
    }

    /// `E_add^H`: new edges whose endpoints are both old.
    pub fn new_edges_between_old(&self) -> Vec<Edge> {
        self.new_edges.iter().copied().filter(|e| self.is_old_edge(*e)).collect()
    }

    pub fn is_old_edge(&self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        self.is_old(u) && self.is_old(v)
    }

    pub fn n_add(&self) -> usize {
        self.new_vertices.len()
    }

    pub fn m_add(&self) -> usize {
        self.new_edges.len()
    }

    pub fn kappa(&self) -> usize {
        self.n_add() + self.m_add()
    }

    /// Old vertices incident to new edges, left to right.
    pub fn v_inc(&self) -> Vec<VertexId> {
        let mut set = BTreeSet::new();
        for e in &self.new_edges {
            let (u, v) = e.endpoints();
            for w in [u, v] {
                if self.is_old(w) {
                    set.insert(self.layout_h.spine.rank(w).unwrap_or(usize::MAX));
                }
            }
        }
        set.into_iter().map(|r| self.layout_h.spine.at(r)).collect()
    }

    /// True when no new edge joins two new vertices.
    pub fn new_vertices_independent(&self) -> bool {
        self.new_edges.iter().all(|e| {
            let (u, v) = e.endpoints();
            self.is_old(u) || self.is_old(v)
        })
    }

    /// Same instance with some new edges dropped from `G`.
    pub(crate) fn without_new_edges(&self, removed: &[Edge]) -> Instance {
        let g = self.g.without_edges(removed);
        let new_edges = self.new_edges.iter().copied().filter(|e| !removed.contains(e)).collect();
        Instance { g, new_edges, ..self.clone() }
    }

    /// A layout of `G` built from `layout_h`'s pages, a full spine and pages for the new edges.
    pub(crate) fn assemble(&self, spine: Vec<VertexId>, new_pages: impl IntoIterator<Item = (Edge, Page)>) -> Layout {
        let mut pages = self.layout_h.pages.clone();
        pages.extend(new_pages);
        Layout { spine: SpineOrder::new(spine).expect("assembled spine is a permutation"), pages, ell: self.ell }
    }
}

/// Name-based instance construction; ids follow the spine, then the new vertices.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    ell: usize,
    spine: Vec<String>,
    old_edges: Vec<(String, String, Page)>,
    new_vertices: Vec<String>,
    new_edges: Vec<(String, String)>,
}

impl InstanceBuilder {
    pub fn new(ell: usize) -> Self {
        InstanceBuilder { ell, ..Default::default() }
    }

    pub fn old_vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.spine.push(name.into());
        self
    }

    pub fn old_vertices<S: Into<String>>(&mut self, names: impl IntoIterator<Item = S>) -> &mut Self {
        self.spine.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn old_edge(&mut self, u: impl Into<String>, v: impl Into<String>, page: Page) -> &mut Self {
        self.old_edges.push((u.into(), v.into(), page));
        self
    }

    pub fn new_vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.new_vertices.push(name.into());
        self
    }

    pub fn new_edge(&mut self, u: impl Into<String>, v: impl Into<String>) -> &mut Self {
        self.new_edges.push((u.into(), v.into()));
        self
    }

    pub fn build(&self) -> Result<Instance> {
        let names: Vec<String> = self.spine.iter().chain(&self.new_vertices).cloned().collect();
        let mut ids: HashMap<&str, VertexId> = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if ids.insert(n.as_str(), VertexId(i as u32)).is_some() {
                return invalid(format!("duplicate vertex name {n:?}"));
            }
        }
        let lookup =
            |n: &str| ids.get(n).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown endpoint {n:?}")));
        let edge = |u: &str, v: &str| -> Result<Edge> {
            let (a, b) = (lookup(u)?, lookup(v)?);
            if a == b {
                return invalid(format!("self-loop at {u:?}"));
            }
            Ok(Edge::new(a, b))
        };
        let n_old = self.spine.len();
        let mut h_edges = Vec::with_capacity(self.old_edges.len());
        let mut pages = PageAssignment::new();
        for (u, v, p) in &self.old_edges {
            let e = edge(u, v)?;
            if e.endpoints().1.index() >= n_old {
                return invalid(format!("old edge {u}-{v} touches a new vertex"));
            }
            if pages.insert(e, *p).is_some() {
                return invalid(format!("duplicate edge {u}-{v}"));
            }
            h_edges.push(e);
        }
        let mut g_edges = h_edges.clone();
        let mut seen: BTreeSet<Edge> = h_edges.iter().copied().collect();
        for (u, v) in &self.new_edges {
            let e = edge(u, v)?;
            if !seen.insert(e) {
                return invalid(format!("duplicate edge {u}-{v}"));
            }
            g_edges.push(e);
        }
        let old_ids: Vec<VertexId> = (0..n_old).map(|i| VertexId(i as u32)).collect();
        let all_ids = (0..names.len()).map(|i| VertexId(i as u32));
        let h = Graph::new(old_ids.iter().copied(), h_edges)?;
        let g = Graph::new(all_ids, g_edges)?;
        let layout = Layout::new(SpineOrder::new(old_ids)?, pages, self.ell)?;
        Instance::new(names, self.ell, g, h, layout)
    }
}

//! JSON formats for instances, solutions and reduction inputs, DIMACS CNF, and
//! solution verification with named violations.
//!
//! Emitted JSON is canonical: object keys sorted, edges sorted by the ranks of
//! their endpoints and then by page, the lower-ranked endpoint written as `u`,
//! two-space indentation and a trailing newline.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::geometry::find_crossing;
use crate::model::{Edge, Instance, InstanceBuilder, Layout, Page, PageAssignment, SpineOrder, VertexId};
use crate::reductions::{CnfFormula, MccInput};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPagedEdge {
    pub u: String,
    pub v: String,
    pub page: Page,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLayout {
    pub spine: Vec<String>,
    pub edges: Vec<RawPagedEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub ell: usize,
    #[serde(rename = "H")]
    pub h: RawLayout,
    pub new_vertices: Vec<String>,
    pub new_edges: Vec<RawEdge>,
}

/// A solution as read from disk, before it is checked against an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSolution {
    pub spine: Vec<String>,
    pub pages: Vec<RawPagedEdge>,
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn from_json<'a, T: Deserialize<'a>>(bytes: &'a [u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    instance_from_raw(&from_json(bytes)?)
}

pub fn instance_from_raw(raw: &RawInstance) -> Result<Instance> {
    let mut b = InstanceBuilder::new(raw.ell);
    b.old_vertices(raw.h.spine.iter().cloned());
    for e in &raw.h.edges {
        b.old_edge(&e.u, &e.v, e.page);
    }
    for v in &raw.new_vertices {
        b.new_vertex(v);
    }
    for e in &raw.new_edges {
        b.new_edge(&e.u, &e.v);
    }
    b.build()
}

/// Sorts `(rank, rank, page, u, v)` rows and orients each edge low rank first.
fn sorted_edges(mut rows: Vec<(usize, usize, Page, String, String)>) -> Vec<RawPagedEdge> {
    for r in &mut rows {
        if r.0 > r.1 {
            std::mem::swap(&mut r.0, &mut r.1);
            std::mem::swap(&mut r.3, &mut r.4);
        }
    }
    rows.sort();
    rows.into_iter().map(|(_, _, page, u, v)| RawPagedEdge { u, v, page }).collect()
}

pub fn instance_to_raw(inst: &Instance) -> RawInstance {
    let lh = inst.layout_h();
    let name = |v: VertexId| inst.name(v).to_string();
    let rows = lh
        .pages
        .iter()
        .map(|(&e, &p)| {
            let (a, b) = e.endpoints();
            (lh.spine.rank(a).unwrap_or(0), lh.spine.rank(b).unwrap_or(0), p, name(a), name(b))
        })
        .collect();
    // old vertices by rank, new ones after them in declaration order
    let mut key: HashMap<VertexId, usize> = lh.spine.order().iter().enumerate().map(|(r, &v)| (v, r)).collect();
    for (i, &v) in inst.new_vertices().iter().enumerate() {
        key.insert(v, lh.spine.len() + i);
    }
    let new_rows = inst
        .new_edges()
        .iter()
        .map(|&e| {
            let (a, b) = e.endpoints();
            (key[&a], key[&b], 0, name(a), name(b))
        })
        .collect();
    RawInstance {
        ell: inst.ell(),
        h: RawLayout { spine: lh.spine.order().iter().map(|&v| name(v)).collect(), edges: sorted_edges(rows) },
        new_vertices: inst.new_vertices().iter().map(|&v| name(v)).collect(),
        new_edges: sorted_edges(new_rows).into_iter().map(|e| RawEdge { u: e.u, v: e.v }).collect(),
    }
}

pub fn emit_instance(inst: &Instance) -> Result<String> {
    to_canonical_json(&instance_to_raw(inst))
}

pub fn solution_to_raw(inst: &Instance, layout: &Layout) -> RawSolution {
    let name = |v: VertexId| inst.name(v).to_string();
    let rows = layout
        .pages
        .iter()
        .map(|(&e, &p)| {
            let (a, b) = e.endpoints();
            (layout.spine.rank(a).unwrap_or(0), layout.spine.rank(b).unwrap_or(0), p, name(a), name(b))
        })
        .collect();
    RawSolution { spine: layout.spine.order().iter().map(|&v| name(v)).collect(), pages: sorted_edges(rows) }
}

pub fn emit_solution(inst: &Instance, layout: &Layout) -> Result<String> {
    to_canonical_json(&solution_to_raw(inst, layout))
}

pub fn parse_solution(bytes: &[u8]) -> Result<RawSolution> {
    from_json(bytes)
}

/// First reason a proposed solution is not an extension of the instance.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} appears twice on the spine")]
    DuplicateVertex(String),
    #[error("vertex {0:?} missing from the spine")]
    MissingVertex(String),
    #[error("edge {u}-{v} is not an edge of G")]
    UnknownEdge { u: String, v: String },
    #[error("edge {u}-{v} is assigned twice")]
    DuplicateEdge { u: String, v: String },
    #[error("edge {u}-{v} has no page")]
    MissingEdge { u: String, v: String },
    #[error("edge {u}-{v} on page {page} outside [1, {ell}]")]
    PageOutOfRange { u: String, v: String, page: Page, ell: usize },
    #[error("old vertices {first:?} and {second:?} swapped relative to H")]
    OrderChanged { first: String, second: String },
    #[error("old edge {u}-{v} moved from page {expected} to page {found}")]
    PageChanged { u: String, v: String, expected: Page, found: Page },
    #[error("edges {first} and {second} cross on page {page}")]
    Crossing { first: String, second: String, page: Page },
}

/// Checks `raw` against `inst` and returns the layout it describes.
pub fn verify(inst: &Instance, raw: &RawSolution) -> std::result::Result<Layout, Violation> {
    let id = |n: &str| inst.vertex(n).ok_or_else(|| Violation::UnknownVertex(n.to_string()));
    let mut order = Vec::with_capacity(raw.spine.len());
    let mut seen = vec![false; inst.names().len()];
    for n in &raw.spine {
        let v = id(n)?;
        if std::mem::replace(&mut seen[v.index()], true) {
            return Err(Violation::DuplicateVertex(n.clone()));
        }
        order.push(v);
    }
    if let Some(v) = inst.g().vertices().iter().find(|v| !seen[v.index()]) {
        return Err(Violation::MissingVertex(inst.name(*v).to_string()));
    }
    let mut pages = PageAssignment::new();
    for e in &raw.pages {
        let (a, b) = (id(&e.u)?, id(&e.v)?);
        let edge = Edge::new(a, b);
        let named = || (e.u.clone(), e.v.clone());
        if !inst.g().contains_edge(edge) {
            let (u, v) = named();
            return Err(Violation::UnknownEdge { u, v });
        }
        if e.page == 0 || e.page > inst.ell() {
            let (u, v) = named();
            return Err(Violation::PageOutOfRange { u, v, page: e.page, ell: inst.ell() });
        }
        if pages.insert(edge, e.page).is_some() {
            let (u, v) = named();
            return Err(Violation::DuplicateEdge { u, v });
        }
    }
    if let Some(e) = inst.g().edges().iter().find(|e| !pages.contains_key(e)) {
        let (a, b) = e.endpoints();
        return Err(Violation::MissingEdge { u: inst.name(a).into(), v: inst.name(b).into() });
    }
    let rank: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(r, &v)| (v, r)).collect();
    for w in inst.layout_h().spine.order().windows(2) {
        if rank[&w[0]] > rank[&w[1]] {
            return Err(Violation::OrderChanged { first: inst.name(w[0]).into(), second: inst.name(w[1]).into() });
        }
    }
    for (&e, &expected) in &inst.layout_h().pages {
        let found = pages[&e];
        if found != expected {
            let (a, b) = e.endpoints();
            return Err(Violation::PageChanged { u: inst.name(a).into(), v: inst.name(b).into(), expected, found });
        }
    }
    let spine = SpineOrder::new(order).expect("spine entries are distinct");
    let layout = Layout { spine, pages, ell: inst.ell() };
    if let Some((e1, e2)) = find_crossing(&layout) {
        return Err(Violation::Crossing {
            first: inst.edge_name(e1),
            second: inst.edge_name(e2),
            page: layout.pages[&e1],
        });
    }
    Ok(layout)
}

/// Standard DIMACS CNF. Every clause must have exactly three literals over
/// distinct variables.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", n, m] if header.is_none() => {
                    let num = |s: &str| {
                        s.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: bad count {s:?}", lineno + 1)))
                    };
                    header = Some((num(n)?, num(m)?));
                }
                _ => return Err(Error::Parse(format!("line {}: malformed problem line", lineno + 1))),
            }
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse(format!("line {}: clause before the problem line", lineno + 1)));
        }
        for tok in line.split_whitespace() {
            let lit: i32 =
                tok.parse().map_err(|_| Error::Parse(format!("line {}: bad literal {tok:?}", lineno + 1)))?;
            if lit != 0 {
                current.push(lit);
                continue;
            }
            let clause: [i32; 3] = std::mem::take(&mut current).try_into().map_err(|c: Vec<i32>| {
                Error::Parse(format!("clause {} has {} literals, expected 3", clauses.len() + 1, c.len()))
            })?;
            clauses.push(clause);
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    if !current.is_empty() {
        return Err(Error::Parse("last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(Error::Parse(format!("problem line announces {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses)
}

pub fn emit_dimacs(phi: &CnfFormula) -> String {
    let mut s = format!("p cnf {} {}\n", phi.vars(), phi.clauses().len());
    for c in phi.clauses() {
        s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawColoredVertex {
    pub name: String,
    pub color: usize,
}

/// `{"k"?, "vertices": [{"name", "color"}], "edges": [{"u", "v"}]}`; `k`
/// defaults to the largest color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawColoredGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub vertices: Vec<RawColoredVertex>,
    pub edges: Vec<RawEdge>,
}

pub fn parse_mcc(bytes: &[u8]) -> Result<MccInput> {
    let raw: RawColoredGraph = from_json(bytes)?;
    let k = raw.k.unwrap_or_else(|| raw.vertices.iter().map(|v| v.color).max().unwrap_or(0));
    let names: Vec<String> = raw.vertices.iter().map(|v| v.name.clone()).collect();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let at = |n: &str| index.get(n).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown endpoint {n:?}")));
    let edges = raw.edges.iter().map(|e| Ok((at(&e.u)?, at(&e.v)?))).collect::<Result<Vec<_>>>()?;
    MccInput::new(k, names, raw.vertices.iter().map(|v| v.color).collect(), edges)
}

pub fn emit_mcc(inp: &MccInput) -> Result<String> {
    let raw = RawColoredGraph {
        k: Some(inp.k()),
        vertices: inp
            .names()
            .iter()
            .zip(inp.colors())
            .map(|(n, &c)| RawColoredVertex { name: n.clone(), color: c })
            .collect(),
        edges: inp
            .edges()
            .iter()
            .map(|&(u, v)| RawEdge { u: inp.names()[u].clone(), v: inp.names()[v].clone() })
            .collect(),
    };
    to_canonical_json(&raw)
}

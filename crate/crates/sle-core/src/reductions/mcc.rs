use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::gadget::GadgetMeta;
use super::{CopyInterval, EdgePage, ReductionCertificate};
use crate::error::{Error, Result};
use crate::model::{Instance, InstanceBuilder};

/// A multi-colored clique instance: colors are `1..=k`, each color class an
/// independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MccInput {
    k: usize,
    names: Vec<String>,
    colors: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl MccInput {
    pub fn new(k: usize, names: Vec<String>, colors: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<MccInput> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if names.len() != colors.len() {
            return bad("every vertex needs exactly one color".into());
        }
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            return bad("duplicate vertex name".into());
        }
        if let Some(c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return bad(format!("color {c} outside 1..={k}"));
        }
        if let Some(c) = (1..=k).find(|c| !colors.contains(c)) {
            return bad(format!("color class {c} is empty"));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= names.len() || v >= names.len() {
                return bad("edge endpoint out of range".into());
            }
            if colors[u] == colors[v] {
                return bad(format!("edge {}-{} lies inside color class {}", names[u], names[v], colors[u]));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return bad(format!("duplicate edge {}-{}", names[u], names[v]));
            }
        }
        Ok(MccInput { k, names, colors, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertices of color `alpha` in input order.
    pub fn class(&self, alpha: usize) -> Vec<usize> {
        (0..self.names.len()).filter(|&v| self.colors[v] == alpha).collect()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Whether the named vertices form a clique with one vertex of every color.
    pub fn is_colorful_clique(&self, chosen: &[String]) -> bool {
        let idx: Option<Vec<usize>> = chosen.iter().map(|n| self.names.iter().position(|m| m == n)).collect();
        let Some(idx) = idx else { return false };
        let colors: BTreeSet<usize> = idx.iter().map(|&v| self.colors[v]).collect();
        idx.len() == self.k
            && colors.len() == self.k
            && idx.iter().enumerate().all(|(a, &u)| idx[..a].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Exhaustive search over one vertex per color.
    pub fn colorful_clique(&self) -> Option<Vec<String>> {
        let classes: Vec<Vec<usize>> = (1..=self.k).map(|a| self.class(a)).collect();
        let mut pick = Vec::with_capacity(self.k);
        fn go(inp: &MccInput, classes: &[Vec<usize>], pick: &mut Vec<usize>) -> bool {
            let Some(class) = classes.get(pick.len()) else { return true };
            for &v in class {
                if pick.iter().all(|&u| inp.adjacent(u, v)) {
                    pick.push(v);
                    if go(inp, classes, pick) {
                        return true;
                    }
                    pick.pop();
                }
            }
            false
        }
        go(self, &classes, &mut pick).then(|| pick.iter().map(|&v| self.names[v].clone()).collect())
    }
}

fn u(alpha: usize, i: usize) -> String {
    format!("u_{alpha}_{i}")
}

fn b(alpha: usize, t: usize) -> String {
    format!("b_{alpha}_e{t}")
}

fn a(alpha: usize, t: usize) -> String {
    format!("a_{alpha}_e{t}")
}

fn x(alpha: usize) -> String {
    format!("x_{alpha}")
}

/// The clique-hardness instance for `inp`, simple-graph form. Edge `e_t` of the
/// input order owns page `t`; page `M + 1` is the dummy page. Blocking edges that
/// would sit nested under another edge with the same endpoint are left out, which
/// keeps every page at width three or less.
pub fn reduce_mcc(inp: &MccInput) -> Result<(Instance, ReductionCertificate)> {
    let k = inp.k();
    let m = inp.edges().len();
    if k < 2 || m == 0 {
        return Err(Error::InvalidArgument("needs at least two colors and one edge".into()));
    }
    let classes: Vec<Vec<usize>> = (1..=k).map(|c| inp.class(c)).collect();
    let size = |alpha: usize| classes[alpha - 1].len();
    let index_in_class: Vec<usize> = (0..inp.names().len())
        .map(|v| classes[inp.colors()[v] - 1].iter().position(|&w| w == v).unwrap() + 1)
        .collect();
    let ell = m + 1;
    let pd = ell;
    let mut bld = InstanceBuilder::new(ell);

    bld.old_vertex(u(0, 0));
    for alpha in 1..=k + 1 {
        for t in (1..=m).rev() {
            bld.old_vertex(b(alpha, t));
        }
        bld.old_vertex(u(alpha, 0));
        for t in 1..=m {
            bld.old_vertex(a(alpha, t));
        }
        let last = if alpha <= k { size(alpha) + 1 } else { 1 };
        for i in 1..=last {
            bld.old_vertex(u(alpha, i));
        }
    }

    // gadget edges
    for t in 1..=m {
        for alpha in 1..=k + 1 {
            bld.old_edge(b(alpha, t), a(alpha, t), t);
        }
    }
    // Inside the chain, u_a^0 u_a^1 and u_a^(n+1) u_(a+1)^0 take the place of the
    // gadget's b-v and v-a edges they would enclose; only the two ends keep theirs.
    bld.old_edge(b(1, m), u(1, 0), pd);
    bld.old_edge(u(k + 1, 0), a(k + 1, m), pd);
    for alpha in 1..=k {
        bld.old_edge(u(alpha, 0), u(alpha + 1, 0), pd);
        bld.old_edge(u(alpha, 0), u(alpha, 1), pd);
        bld.old_edge(u(alpha, size(alpha) + 1), u(alpha + 1, 0), pd);
    }
    bld.old_edge(b(1, m), a(k + 1, m), pd);

    // one page per input edge
    let mut present: BTreeSet<(String, String)> = BTreeSet::new();
    let mut edge_pages = Vec::with_capacity(m);
    for (t0, &(p, q)) in inp.edges().iter().enumerate() {
        let t = t0 + 1;
        let (p, q) = if inp.colors()[p] < inp.colors()[q] { (p, q) } else { (q, p) };
        let (al, be) = (inp.colors()[p], inp.colors()[q]);
        let (i, j) = (index_in_class[p], index_in_class[q]);
        for g in (1..=k).filter(|&g| g != al && g != be) {
            bld.old_edge(a(g, t), b(g + 1, t), t);
        }
        // everything but copy interval i of color c is closed off
        for (c, i) in [(al, i), (be, j)] {
            bld.old_edge(a(c, t), u(c, i), t);
            bld.old_edge(u(c, i + 1), b(c + 1, t), t);
        }
        // A tunnel edge can coincide with one from an earlier page; H stays simple
        // by keeping the first copy only.
        for (s, r) in [(u(al, i), u(be, j + 1)), (u(al, i + 1), u(be, j))] {
            if present.insert((s.clone(), r.clone())) {
                bld.old_edge(s, r, t);
            }
        }
        edge_pages.push(EdgePage { u: inp.names()[p].clone(), v: inp.names()[q].clone(), page: t });
    }

    for alpha in 1..=k {
        bld.new_vertex(x(alpha));
        bld.new_edge(x(alpha), u(alpha, 0));
        bld.new_edge(x(alpha), u(alpha + 1, 0));
    }
    for al in 1..=k {
        for be in al + 1..=k {
            bld.new_edge(x(al), x(be));
        }
    }
    let inst = bld.build()?;

    let copies = (1..=k)
        .map(|alpha| {
            classes[alpha - 1]
                .iter()
                .enumerate()
                .map(|(i0, &v)| CopyInterval {
                    original: inp.names()[v].clone(),
                    left: u(alpha, i0 + 1),
                    right: u(alpha, i0 + 2),
                })
                .collect()
        })
        .collect();
    let gadget = GadgetMeta {
        dummy_page: pd,
        anchors: (1..=k + 1).map(|alpha| u(alpha, 0)).collect(),
        fixed: (1..=k).map(x).collect(),
        vertex_count: 2 * k * ell + 2 * ell - 1,
        edge_count: (ell + 4) * k + ell + 2,
    };
    let cert = ReductionCertificate::Mcc {
        k,
        new_vertices: (1..=k).map(x).collect(),
        copies,
        edge_pages,
        dummy_page: pd,
        gadget,
    };
    Ok((inst, cert))
}

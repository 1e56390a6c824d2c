use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, InstanceBuilder, Page};

/// Names and page of a fixation gadget inside some instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMeta {
    pub dummy_page: Page,
    /// Anchors `v_1..v_{F+1}`.
    pub anchors: Vec<String>,
    /// Fixed new vertices `f_1..f_F`.
    pub fixed: Vec<String>,
    pub vertex_count: usize,
    pub edge_count: usize,
}

pub(crate) fn anchor(i: usize) -> String {
    format!("v_{i}")
}

fn before(i: usize, p: Page) -> String {
    format!("b_{i}_p{p}")
}

fn after(i: usize, p: Page) -> String {
    format!("a_{i}_p{p}")
}

/// Appends the simple-form gadget on `fixed.len()` vertices to `b`, using page
/// `ell` as the dummy page.
pub(crate) fn push_gadget(b: &mut InstanceBuilder, fixed: &[String], ell: usize) -> GadgetMeta {
    let f = fixed.len();
    let pd = ell;
    for i in 1..=f + 1 {
        for p in (1..ell).rev() {
            b.old_vertex(before(i, p));
        }
        b.old_vertex(anchor(i));
        for p in 1..ell {
            b.old_vertex(after(i, p));
        }
    }
    let mut edges = 0;
    for i in 1..=f + 1 {
        for p in 1..ell {
            b.old_edge(before(i, p), after(i, p), p);
        }
        b.old_edge(before(i, ell - 1), anchor(i), pd);
        b.old_edge(anchor(i), after(i, ell - 1), pd);
        edges += ell + 1;
    }
    for i in 1..=f {
        b.old_edge(anchor(i), anchor(i + 1), pd);
    }
    b.old_edge(before(1, ell - 1), after(f + 1, ell - 1), pd);
    edges += f + 1;
    for (i, name) in fixed.iter().enumerate() {
        b.new_vertex(name.clone());
        b.new_edge(name.clone(), anchor(i + 1));
        b.new_edge(name.clone(), anchor(i + 2));
    }
    edges += 2 * f;
    GadgetMeta {
        dummy_page: pd,
        anchors: (1..=f + 1).map(anchor).collect(),
        fixed: fixed.to_vec(),
        vertex_count: f + (f + 1) * (2 * (ell - 1) + 1),
        edge_count: edges,
    }
}

fn check_params(f: usize, ell: usize) -> Result<()> {
    if f == 0 || ell < 2 {
        return Err(Error::InvalidArgument(format!("gadget needs F >= 1 and ell >= 2, got F={f}, ell={ell}")));
    }
    Ok(())
}

/// Builder fragment holding the gadget on `f` vertices named `f_1..f_F`. Only the
/// simple form exists; asking for the multi-edge form is refused.
pub fn build_fixation_gadget(f: usize, ell: usize, simple: bool) -> Result<(InstanceBuilder, GadgetMeta)> {
    check_params(f, ell)?;
    if !simple {
        return Err(Error::Refused("the multi-edge gadget is not a simple graph".into()));
    }
    let mut b = InstanceBuilder::new(ell);
    let fixed: Vec<String> = (1..=f).map(|i| format!("f_{i}")).collect();
    let meta = push_gadget(&mut b, &fixed, ell);
    Ok((b, meta))
}

/// The gadget alone as an instance.
pub fn gadget_instance(f: usize, ell: usize) -> Result<(Instance, GadgetMeta)> {
    let (b, meta) = build_fixation_gadget(f, ell, true)?;
    Ok((b.build()?, meta))
}

/// Vertex and edge count of the multi-edge form, from its raw (multi)lists.
pub fn multi_form_counts(f: usize, ell: usize) -> Result<(usize, usize)> {
    check_params(f, ell)?;
    let mut vertices = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 1..=f + 1 {
        vertices.extend([format!("b_{i}"), anchor(i), format!("a_{i}")]);
        for _ in 1..ell {
            edges.push((format!("b_{i}"), format!("a_{i}")));
        }
        edges.push((format!("b_{i}"), anchor(i)));
        edges.push((anchor(i), format!("a_{i}")));
    }
    for i in 1..=f {
        vertices.push(format!("f_{i}"));
        edges.push((anchor(i), anchor(i + 1)));
        edges.push((format!("f_{i}"), anchor(i)));
        edges.push((format!("f_{i}"), anchor(i + 1)));
    }
    edges.push(("b_1".into(), format!("a_{}", f + 1)));
    Ok((vertices.len(), edges.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_for_two_fixed_six_pages() {
        assert_eq!(multi_form_counts(2, 6).unwrap(), (11, 28));
        let (inst, meta) = gadget_instance(2, 6).unwrap();
        assert_eq!(inst.g().num_vertices(), 35);
        assert_eq!(inst.g().num_edges(), 28);
        assert_eq!((meta.vertex_count, meta.edge_count), (35, 28));
        assert_eq!(inst.n_add(), 2);
        assert_eq!(inst.m_add(), 4);
    }

    #[test]
    fn multi_form_and_bad_parameters_are_refused() {
        assert!(matches!(build_fixation_gadget(1, 2, false), Err(Error::Refused(_))));
        assert!(matches!(build_fixation_gadget(0, 2, true), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_fixation_gadget(1, 1, true), Err(Error::InvalidArgument(_))));
    }
}

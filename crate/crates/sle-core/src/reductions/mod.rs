//! Hardness constructions: the fixation gadget, the 3-SAT reduction with two new
//! vertices and the multi-colored clique reduction, with certificate extraction
//! and exhaustive checks of the properties their correctness rests on.

mod gadget;
mod mcc;
mod sat;

pub use gadget::{build_fixation_gadget, gadget_instance, multi_form_counts, GadgetMeta};
pub use mcc::{reduce_mcc, MccInput};
pub use sat::{reduce_3sat, CnfFormula};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::extends;
use crate::model::{Edge, Instance, Layout, Page};
use crate::oracle::enumerate_solutions;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariablePages {
    pub vertex: String,
    pub positive_page: Page,
    pub negative_page: Page,
}

/// The spine interval between two consecutive copies standing for `original`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyInterval {
    pub original: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePage {
    pub u: String,
    pub v: String,
    pub page: Page,
}

/// What a reduction needs to translate a layout back into a solution of its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ReductionCertificate {
    #[serde(rename = "SAT3")]
    Sat3 {
        variables: Vec<VariablePages>,
        clauses: Vec<String>,
        s: String,
        v: String,
        dummy_page: Page,
        gadget: GadgetMeta,
    },
    #[serde(rename = "MCC")]
    Mcc {
        k: usize,
        new_vertices: Vec<String>,
        /// Per color, the copy interval of each original vertex.
        copies: Vec<Vec<CopyInterval>>,
        edge_pages: Vec<EdgePage>,
        dummy_page: Page,
        gadget: GadgetMeta,
    },
}

/// A truth assignment (variable `i + 1` at index `i`) or a set of original vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extracted {
    Assignment(Vec<bool>),
    Clique(Vec<String>),
}

struct Names<'a> {
    inst: &'a Instance,
    sol: &'a Layout,
}

impl Names<'_> {
    fn rank(&self, name: &str) -> Result<usize> {
        self.inst
            .vertex(name)
            .and_then(|v| self.sol.spine.rank(v))
            .ok_or_else(|| Error::CorruptCertificate(format!("vertex {name:?} not in the layout")))
    }

    fn page(&self, u: &str, v: &str) -> Result<Page> {
        let corrupt = || Error::CorruptCertificate(format!("edge {u}-{v} not in the layout"));
        let (a, b) = (self.inst.vertex(u).ok_or_else(corrupt)?, self.inst.vertex(v).ok_or_else(corrupt)?);
        self.sol.page_of(Edge::new(a, b)).ok_or_else(corrupt)
    }

    fn between(&self, l: &str, x: &str, r: &str) -> Result<bool> {
        let x = self.rank(x)?;
        Ok(self.rank(l)? < x && x < self.rank(r)?)
    }
}

pub fn extract_certificate(inst: &Instance, sol: &Layout, cert: &ReductionCertificate) -> Result<Extracted> {
    if !extends(sol, inst.layout_h())? {
        return Err(Error::InvalidArgument("layout does not extend the instance's layout".into()));
    }
    let names = Names { inst, sol };
    match cert {
        ReductionCertificate::Sat3 { variables, s, .. } => variables
            .iter()
            .map(|var| {
                let p = names.page(s, &var.vertex)?;
                if p == var.positive_page {
                    Ok(true)
                } else if p == var.negative_page {
                    Ok(false)
                } else {
                    Err(Error::CorruptCertificate(format!("edge {s}-{} sits on page {p}", var.vertex)))
                }
            })
            .collect::<Result<Vec<bool>>>()
            .map(Extracted::Assignment),
        ReductionCertificate::Mcc { new_vertices, copies, .. } => {
            let mut chosen = Vec::with_capacity(new_vertices.len());
            for (x, class) in new_vertices.iter().zip(copies) {
                let mut hit = None;
                for c in class {
                    if names.between(&c.left, x, &c.right)? {
                        hit = Some(c.original.clone());
                    }
                }
                chosen.push(hit.ok_or_else(|| Error::CorruptCertificate(format!("{x} lies in no copy interval")))?);
            }
            Ok(Extracted::Clique(chosen))
        }
    }
}

/// Violation counts of each universally quantified claim over all solutions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub solutions: u64,
    pub clauses: Vec<LemmaClause>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaClause {
    pub name: String,
    pub violations: u64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.violations == 0)
    }

    /// True when the check held only because there was nothing to check.
    pub fn vacuous(&self) -> bool {
        self.solutions == 0
    }

    fn record(&mut self, name: &str, ok: bool) {
        let idx = match self.clauses.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.clauses.push(LemmaClause { name: name.to_string(), violations: 0 });
                self.clauses.len() - 1
            }
        };
        if !ok {
            self.clauses[idx].violations += 1;
        }
    }
}

fn gadget_clauses(names: &Names, meta: &GadgetMeta, report: &mut LemmaReport) -> Result<()> {
    for (i, f) in meta.fixed.iter().enumerate() {
        let (l, r) = (&meta.anchors[i], &meta.anchors[i + 1]);
        report.record("v_i < f_i < v_i+1", names.between(l, f, r)?);
        let on_pd = names.page(f, l)? == meta.dummy_page && names.page(f, r)? == meta.dummy_page;
        report.record("f_i v_i and f_i v_i+1 on the dummy page", on_pd);
    }
    Ok(())
}

/// Enumerates every solution of a gadget instance and checks the gadget's placement claims.
pub fn check_gadget_lemma(inst: &Instance, meta: &GadgetMeta) -> Result<LemmaReport> {
    let mut report = LemmaReport::default();
    for sol in enumerate_solutions(inst)? {
        report.solutions += 1;
        gadget_clauses(&Names { inst, sol: &sol }, meta, &mut report)?;
    }
    Ok(report)
}

/// Enumerates every solution of a reduction instance and checks the gadget claims
/// plus the reduction's own placement properties.
pub fn check_reduction_lemmas(inst: &Instance, cert: &ReductionCertificate) -> Result<LemmaReport> {
    let mut report = LemmaReport::default();
    for sol in enumerate_solutions(inst)? {
        report.solutions += 1;
        let names = Names { inst, sol: &sol };
        match cert {
            ReductionCertificate::Sat3 { gadget, dummy_page, .. } => {
                gadget_clauses(&names, gadget, &mut report)?;
                let only_gadget = inst.new_edges().iter().all(|&e| {
                    sol.page_of(e) != Some(*dummy_page) || {
                        let (a, b) = e.endpoints();
                        let (a, b) = (inst.name(a), inst.name(b));
                        gadget.fixed.iter().any(|f| f == a || f == b) && gadget.anchors.iter().any(|v| v == a || v == b)
                    }
                });
                report.record("only gadget edges on the dummy page", only_gadget);
            }
            ReductionCertificate::Mcc { new_vertices, copies, edge_pages, gadget, .. } => {
                gadget_clauses(&names, gadget, &mut report)?;
                for (alpha, x) in new_vertices.iter().enumerate() {
                    let class = &copies[alpha];
                    let (first, last) = (&class[0].left, &class[class.len() - 1].right);
                    report.record("u_a^1 < x_a < u_a^(n+1)", names.between(first, x, last)?);
                }
                for (al, xa) in new_vertices.iter().enumerate() {
                    for (be, xb) in new_vertices.iter().enumerate().skip(al + 1) {
                        let p = names.page(xa, xb)?;
                        let Some(ep) = edge_pages.iter().find(|ep| ep.page == p) else { continue };
                        let inside = |class: &[CopyInterval], x: &str| -> Result<bool> {
                            match class.iter().find(|c| c.original == ep.u || c.original == ep.v) {
                                Some(c) => names.between(&c.left, x, &c.right),
                                None => Ok(false),
                            }
                        };
                        let ok = inside(&copies[al], xa)? && inside(&copies[be], xb)?;
                        report.record("x_a x_b on an edge page sits in that edge's intervals", ok);
                    }
                }
            }
        }
    }
    Ok(report)
}

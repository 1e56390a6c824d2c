use serde::{Deserialize, Serialize};

use super::gadget::push_gadget;
use super::{ReductionCertificate, VariablePages};
use crate::error::{Error, Result};
use crate::model::{Instance, InstanceBuilder};

/// A 3-CNF formula; literals are DIMACS style (`-3` is the negation of variable 3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    /// Every clause must hold three different variables.
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<CnfFormula> {
        for (j, c) in clauses.iter().enumerate() {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidArgument(format!("clause {} has literal {l} outside 1..={vars}", j + 1)));
                }
            }
            let v = c.map(|l| l.unsigned_abs());
            if v[0] == v[1] || v[0] == v[2] || v[1] == v[2] {
                return Err(Error::InvalidArgument(format!(
                    "clause {} repeats a variable or holds complementary literals",
                    j + 1
                )));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// First satisfying assignment in binary counting order, if any.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        (0u64..1 << self.vars)
            .map(|bits| (0..self.vars).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.evaluate(a))
    }
}

pub(crate) fn pos_page(i: usize) -> usize {
    2 * i - 1
}

pub(crate) fn neg_page(i: usize) -> usize {
    2 * i
}

/// The two-new-vertex instance for `phi`, simple-graph form, with its certificate.
pub fn reduce_3sat(phi: &CnfFormula) -> Result<(Instance, ReductionCertificate)> {
    let n = phi.vars();
    let m = phi.clauses().len();
    if n == 0 {
        return Err(Error::InvalidArgument("formula needs at least one variable".into()));
    }
    let ell = 2 * n + 1;
    let pd = ell;
    let mut b = InstanceBuilder::new(ell);
    let gadget = push_gadget(&mut b, &["s".to_string(), "v".to_string()], ell);

    let d = |q: usize, p: usize| format!("d_{q}_p{p}");
    let x = |i: usize| format!("x_{i}");
    let c = |j: usize| format!("c_{j}");
    for q in 1..=n + m + 1 {
        for p in 1..=2 * n {
            b.old_vertex(d(q, p));
        }
        if q <= n {
            b.old_vertex(x(q));
        } else if q <= n + m {
            b.old_vertex(c(q - n));
        }
    }
    // each x_i is hidden on every page but its own two
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for p in [pos_page(j), neg_page(j)] {
                b.old_edge(d(i, p), d(i + 1, p), p);
            }
        }
    }
    // each c_j is visible exactly on the pages of its complementary literals
    for (j, clause) in phi.clauses().iter().enumerate() {
        let q = n + j + 1;
        for i in 1..=n {
            let lit = clause.iter().find(|l| l.unsigned_abs() as usize == i);
            let blocked: &[usize] = match lit {
                None => &[pos_page(i), neg_page(i)],
                Some(&l) if l > 0 => &[pos_page(i)],
                Some(_) => &[neg_page(i)],
            };
            for &p in blocked {
                b.old_edge(d(q, p), d(q + 1, p), p);
            }
        }
    }
    b.old_edge(d(1, 1), d(n + m + 1, 2 * n), pd);
    for i in 1..=n {
        b.new_edge("s", x(i));
    }
    for j in 1..=m {
        b.new_edge("v", c(j));
    }
    let inst = b.build()?;
    let cert = ReductionCertificate::Sat3 {
        variables: (1..=n)
            .map(|i| VariablePages { vertex: x(i), positive_page: pos_page(i), negative_page: neg_page(i) })
            .collect(),
        clauses: (1..=m).map(c).collect(),
        s: "s".into(),
        v: "v".into(),
        dummy_page: pd,
        gadget,
    };
    Ok((inst, cert))
}

//! Shared fixtures for the integration tests: the exhaustive small corpus, seeded
//! randoms and a solver sweep that checks every verdict against the oracle.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use sle_core::gen::{gen_random, GenParams};
use sle_core::{
    extends, is_valid, page_width, solve, Algorithm, Edge, Instance, InstanceBuilder, SolveOptions, VertexId,
};

/// A small instance by spine position: old vertices `0..n`, new vertices
/// `n..n + n_add`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub ell: usize,
    pub n: usize,
    pub old: Vec<(usize, usize, usize)>,
    pub n_add: usize,
    pub new: Vec<(usize, usize)>,
}

fn name(i: usize, n: usize) -> String {
    if i < n {
        format!("h{i}")
    } else {
        format!("x{}", i - n)
    }
}

impl Shape {
    pub fn build(&self) -> Instance {
        let mut b = InstanceBuilder::new(self.ell);
        b.old_vertices((0..self.n).map(|i| name(i, self.n)));
        for &(u, v, p) in &self.old {
            b.old_edge(name(u, self.n), name(v, self.n), p);
        }
        for i in 0..self.n_add {
            b.new_vertex(name(self.n + i, self.n));
        }
        for &(u, v) in &self.new {
            b.new_edge(name(u, self.n), name(v, self.n));
        }
        b.build().expect("corpus shapes are valid")
    }
}

fn alternate(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Every crossing-free layout of at most `max_m` edges on spine `0..n`.
pub fn old_layouts(n: usize, ell: usize, max_m: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        ell: usize,
        max_m: usize,
        chosen: &mut Vec<(usize, usize, usize)>,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        if i == pairs.len() {
            out.push(chosen.clone());
            return;
        }
        rec(i + 1, pairs, ell, max_m, chosen, out);
        if chosen.len() < max_m {
            let (a, b) = pairs[i];
            for p in 1..=ell {
                if chosen.iter().all(|&(c, d, q)| q != p || !alternate((a, b), (c, d))) {
                    chosen.push((a, b, p));
                    rec(i + 1, pairs, ell, max_m, chosen, out);
                    chosen.pop();
                }
            }
        }
    }
    rec(0, &pairs, ell, max_m, &mut chosen, &mut out);
    out
}

/// Subsets of `items` with at most `k` elements, in lexicographic order of indices.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<T>)> = vec![(0, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, set) in &frontier {
            for (i, &item) in items.iter().enumerate().skip(*start) {
                let mut s = set.clone();
                s.push(item);
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}

/// The exhaustive corpus: `|V(H)| <= 5`, `|E(H)| <= 6`, `ell <= 2`, `n_add <= 2`,
/// `m_add <= 3`. Old vertices are identified by spine position; with two new
/// vertices, of the two labelings only the lexicographically smaller is kept.
pub fn for_each_small(mut visit: impl FnMut(Shape)) {
    for n in 0..=5 {
        for ell in 1..=2 {
            for old in old_layouts(n, ell, 6) {
                for n_add in 0..=2 {
                    let total = n + n_add;
                    let free: Vec<(usize, usize)> = (0..total)
                        .flat_map(|a| (a + 1..total).map(move |b| (a, b)))
                        .filter(|&(a, b)| !old.iter().any(|&(c, d, _)| (c, d) == (a, b)))
                        .collect();
                    for new in subsets(&free, 3) {
                        if n_add == 2 && swapped(&new, n) < new {
                            continue;
                        }
                        visit(Shape { ell, n, old: old.clone(), n_add, new });
                    }
                }
            }
        }
    }
}

fn swapped(edges: &[(usize, usize)], n: usize) -> Vec<(usize, usize)> {
    let s = |v: usize| {
        if v == n {
            n + 1
        } else if v == n + 1 {
            n
        } else {
            v
        }
    };
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (s(a), s(b));
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort();
    out
}

/// Seeded random instances with `|V(G)| <= 8` and `ell <= 3`.
pub fn seeded_randoms(count: u64) -> Vec<Instance> {
    (0..count)
        .map(|seed| {
            let n_add = (seed % 3) as usize;
            let n_h = 3 + (seed / 3 % (6 - n_add as u64)) as usize;
            let ell = 1 + (seed / 7 % 3) as usize;
            let pairs = n_h * (n_h - 1) / 2;
            let m_h = (seed / 11 % (pairs as u64 + 1)).min(2 * n_h as u64) as usize;
            let total = n_h + n_add;
            let free = total * (total - 1) / 2 - m_h;
            let m_add = (1 + seed / 5 % 4).min(free as u64) as usize;
            let mut p = GenParams { n_h, m_h, ell, n_add, m_add, seed };
            loop {
                match gen_random(&p) {
                    Ok(inst) => break inst,
                    Err(_) => p.m_h -= 1,
                }
            }
        })
        .collect()
}

pub const SOLVERS: [Algorithm; 5] =
    [Algorithm::EdgesFpt, Algorithm::OneVertex, Algorithm::Xp, Algorithm::DpFpt, Algorithm::GreedyIs];

/// `prod_{i=1..n_add} (|V(H)| + i)`.
pub fn xp_ceiling(inst: &Instance) -> u128 {
    let nh = inst.h().num_vertices() as u128;
    (1..=inst.n_add() as u128).map(|i| nh + i).product()
}

/// `ell^m * n! * (2m+1)^n * (omega+1)^m`.
pub fn dp_ceiling(inst: &Instance) -> u128 {
    let (n, m) = (inst.n_add() as u32, inst.m_add() as u32);
    let omega = page_width(inst.layout_h()) as u128;
    let fact: u128 = (1..=n as u128).product();
    (inst.ell() as u128)
        .saturating_pow(m)
        .saturating_mul(fact)
        .saturating_mul((2 * m as u128 + 1).saturating_pow(n))
        .saturating_mul((omega + 1).saturating_pow(m))
}

/// Running tally of solver runs checked against the oracle.
#[derive(Clone, Debug, Default)]
pub struct Sweep {
    pub instances: u64,
    pub positives: u64,
    pub runs: u64,
    pub discrepancies: Vec<String>,
    pub xp_over_bound: Vec<String>,
    pub dp_over_bound: Vec<String>,
}

impl Sweep {
    pub fn check(&mut self, inst: &Instance, label: &dyn Fn() -> String) {
        self.instances += 1;
        let opts = |algorithm| SolveOptions { algorithm, timeout: None, oracle_cap: u128::MAX };
        let truth = solve(inst, &opts(Algorithm::Oracle)).expect("oracle runs").extendable();
        self.positives += truth as u64;
        for algo in SOLVERS {
            if !algo.applies_to(inst) {
                continue;
            }
            self.runs += 1;
            let out = match solve(inst, &opts(algo)) {
                Ok(out) => out,
                Err(e) => {
                    self.discrepancies.push(format!("{algo} failed with {e} on {}", label()));
                    continue;
                }
            };
            if out.extendable() != truth {
                self.discrepancies.push(format!("{algo} says {} on {}", out.extendable(), label()));
            }
            if let Some(l) = &out.layout {
                if !is_valid(inst.g(), l).unwrap_or(false) || !extends(l, inst.layout_h()).unwrap_or(false) {
                    self.discrepancies.push(format!("{algo} returned a bad layout on {}", label()));
                }
            }
            let branches = out.stats.branches as u128;
            match algo {
                Algorithm::Xp if branches > xp_ceiling(inst) => self.xp_over_bound.push(label()),
                Algorithm::DpFpt if branches > dp_ceiling(inst) => self.dp_over_bound.push(label()),
                _ => {}
            }
        }
    }
}

/// Spine order of `G` and the page of every new edge.
pub type Drawing = (Vec<VertexId>, Vec<usize>);

/// All extensions, found by inserting the new vertices one at a time at every
/// spine position, trying every page tuple, and testing all same-page edge pairs
/// for alternation.
pub fn brute_extensions(inst: &Instance) -> BTreeSet<Drawing> {
    let mut orders = vec![inst.layout_h().spine.order().to_vec()];
    for &x in inst.new_vertices() {
        orders = orders
            .iter()
            .flat_map(|o| {
                (0..=o.len()).map(move |i| {
                    let mut o = o.clone();
                    o.insert(i, x);
                    o
                })
            })
            .collect();
    }
    let old: Vec<(Edge, usize)> = inst.layout_h().pages.iter().map(|(&e, &p)| (e, p)).collect();
    let new = inst.new_edges();
    let ell = inst.ell();
    let mut found = BTreeSet::new();
    for order in orders {
        let rank: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let span = |e: Edge| {
            let (a, b) = (rank[&e.endpoints().0], rank[&e.endpoints().1]);
            (a.min(b), a.max(b))
        };
        let mut pages = vec![1usize; new.len()];
        loop {
            let mut all: Vec<((usize, usize), usize)> = old.iter().map(|&(e, p)| (span(e), p)).collect();
            all.extend(new.iter().zip(&pages).map(|(&e, &p)| (span(e), p)));
            let ok = all.iter().enumerate().all(|(i, &(a, p))| {
                all[i + 1..].iter().all(|&(b, q)| {
                    p != q || !((a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1))
                })
            });
            if ok {
                found.insert((order.clone(), pages.clone()));
            }
            match pages.iter().rposition(|&p| p < ell) {
                Some(i) => {
                    pages[i] += 1;
                    pages[i + 1..].iter_mut().for_each(|p| *p = 1);
                }
                None => break,
            }
        }
    }
    found
}

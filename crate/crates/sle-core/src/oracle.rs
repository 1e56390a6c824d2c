//! Brute-force ground truth: every insertion of the new vertices into the old
//! spine, every page choice for the new edges.

use std::collections::VecDeque;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::alternate;
use crate::model::{Edge, Instance, Layout, Page, VertexId};

pub const DEFAULT_CAP: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "SLE_ORACLE_CAP";

pub fn default_cap() -> u128 {
    std::env::var(CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// Interval (1-based) and within-interval rank of every new vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub slots: Vec<(usize, usize)>,
}

impl Placement {
    /// Reads the placement of the new vertices off a layout of `G`.
    pub fn of(inst: &Instance, layout: &Layout) -> Option<Placement> {
        let mut slots = Vec::with_capacity(inst.n_add());
        for &v in inst.new_vertices() {
            let r = layout.spine.rank(v)?;
            let before = layout.spine.order()[..r].iter().filter(|&&w| inst.is_old(w)).count();
            let within = layout.spine.order()[..r].iter().rev().take_while(|&&w| !inst.is_old(w)).count();
            slots.push((before + 1, within));
        }
        Some(Placement { slots })
    }
}

/// Number of (placement, page assignment) pairs the oracle may visit.
pub fn search_space(inst: &Instance) -> u128 {
    let n_old = inst.h().num_vertices() as u128;
    let mut total: u128 = 1;
    for i in 1..=inst.n_add() as u128 {
        total = total.saturating_mul(n_old + i);
    }
    for _ in 0..inst.m_add() {
        total = total.saturating_mul(inst.ell() as u128);
    }
    total
}

fn guard(inst: &Instance, cap: u128) -> Result<()> {
    let estimate = search_space(inst);
    if estimate > cap {
        return Err(Error::Capacity { estimate, cap });
    }
    Ok(())
}

struct Engine<'a> {
    inst: &'a Instance,
    k: usize,
}

impl<'a> Engine<'a> {
    fn new(inst: &'a Instance) -> Self {
        Engine { inst, k: inst.h().num_vertices() + 1 }
    }

    /// Full spine for interval tuple `t` and within-interval ranks `q`.
    fn spine(&self, t: &[usize], q: &[usize]) -> Vec<VertexId> {
        let old = self.inst.layout_h().spine.order();
        let nv = self.inst.new_vertices();
        let mut out = Vec::with_capacity(old.len() + nv.len());
        for interval in 1..=self.k {
            let mut here: Vec<(usize, VertexId)> =
                (0..nv.len()).filter(|&i| t[i] == interval).map(|i| (q[i], nv[i])).collect();
            here.sort();
            out.extend(here.into_iter().map(|x| x.1));
            if interval <= old.len() {
                out.push(old[interval - 1]);
            }
        }
        out
    }

    /// Calls `visit` with every crossing-free page vector for the new edges, pages
    /// ascending, edges in instance order. Stops when `visit` returns true.
    fn page_assignments(&self, rank: &[usize], visit: &mut dyn FnMut(&[Page]) -> bool) -> bool {
        let inst = self.inst;
        let ell = inst.ell();
        let mut old_by_page: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ell + 1];
        for (e, &p) in &inst.layout_h().pages {
            old_by_page[p].push(span_of(rank, *e));
        }
        let spans: Vec<(usize, usize)> = inst.new_edges().iter().map(|&e| span_of(rank, e)).collect();
        let allowed: Vec<Vec<Page>> = spans
            .iter()
            .map(|&s| (1..=ell).filter(|&p| old_by_page[p].iter().all(|&o| !alternate(o, s))).collect())
            .collect();
        if allowed.iter().any(Vec::is_empty) {
            return false;
        }
        let mut chosen = Vec::with_capacity(spans.len());
        rec(&spans, &allowed, &mut chosen, visit)
    }
}

fn span_of(rank: &[usize], e: Edge) -> (usize, usize) {
    let (u, v) = e.endpoints();
    let (a, b) = (rank[u.index()], rank[v.index()]);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn rec(
    spans: &[(usize, usize)],
    allowed: &[Vec<Page>],
    chosen: &mut Vec<Page>,
    visit: &mut dyn FnMut(&[Page]) -> bool,
) -> bool {
    let i = chosen.len();
    if i == spans.len() {
        return visit(chosen);
    }
    for &p in &allowed[i] {
        if (0..i).all(|j| chosen[j] != p || !alternate(spans[j], spans[i])) {
            chosen.push(p);
            if rec(spans, allowed, chosen, visit) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Within-interval rank vectors for tuple `t`, lexicographic over new-vertex index.
fn rank_vectors(t: &[usize]) -> Vec<Vec<usize>> {
    fn go(t: &[usize], sizes: &[usize], q: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = q.len();
        if i == t.len() {
            out.push(q.clone());
            return;
        }
        for r in 0..sizes[i] {
            if (0..i).all(|j| t[j] != t[i] || q[j] != r) {
                q.push(r);
                go(t, sizes, q, out);
                q.pop();
            }
        }
    }
    let sizes: Vec<usize> = t.iter().map(|&x| t.iter().filter(|&&y| y == x).count()).collect();
    let mut out = Vec::new();
    go(t, &sizes, &mut Vec::with_capacity(t.len()), &mut out);
    out
}

/// Lexicographic successor of an interval tuple over `[1, k]^n`.
fn next_tuple(t: &mut [usize], k: usize) -> bool {
    for x in t.iter_mut().rev() {
        if *x < k {
            *x += 1;
            return true;
        }
        *x = 1;
    }
    false
}

fn ranks_of(spine: &[VertexId], size: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; size];
    for (i, v) in spine.iter().enumerate() {
        rank[v.index()] = i;
    }
    rank
}

pub fn solve_exhaustive(inst: &Instance) -> Result<Option<Layout>> {
    solve_exhaustive_with(inst, default_cap(), &Budget::unlimited())
}

pub fn solve_exhaustive_with(inst: &Instance, cap: u128, budget: &Budget) -> Result<Option<Layout>> {
    guard(inst, cap)?;
    let engine = Engine::new(inst);
    let n = inst.n_add();
    let mut t = vec![1; n];
    loop {
        budget.check()?;
        for q in rank_vectors(&t) {
            let spine = engine.spine(&t, &q);
            let rank = ranks_of(&spine, inst.names().len());
            let mut found = None;
            engine.page_assignments(&rank, &mut |pages| {
                found = Some(pages.to_vec());
                true
            });
            if let Some(pages) = found {
                let new_pages = inst.new_edges().iter().copied().zip(pages);
                return Ok(Some(inst.assemble(spine, new_pages)));
            }
        }
        if !next_tuple(&mut t, engine.k) {
            return Ok(None);
        }
    }
}

/// Streams every valid extension exactly once: intervals left to right, then
/// within-interval ranks, then pages ascending.
pub struct Solutions<'a> {
    engine: Engine<'a>,
    tuple: Option<Vec<usize>>,
    buffer: VecDeque<Layout>,
}

impl Iterator for Solutions<'_> {
    type Item = Layout;

    fn next(&mut self) -> Option<Layout> {
        loop {
            if let Some(l) = self.buffer.pop_front() {
                return Some(l);
            }
            let t = self.tuple.clone()?;
            let inst = self.engine.inst;
            for q in rank_vectors(&t) {
                let spine = self.engine.spine(&t, &q);
                let rank = ranks_of(&spine, inst.names().len());
                let buffer = &mut self.buffer;
                self.engine.page_assignments(&rank, &mut |pages| {
                    let new_pages = inst.new_edges().iter().copied().zip(pages.iter().copied());
                    buffer.push_back(inst.assemble(spine.clone(), new_pages));
                    false
                });
            }
            let mut t = t;
            self.tuple = if next_tuple(&mut t, self.engine.k) { Some(t) } else { None };
        }
    }
}

pub fn enumerate_solutions(inst: &Instance) -> Result<Solutions<'_>> {
    enumerate_solutions_with(inst, default_cap())
}

pub fn enumerate_solutions_with(inst: &Instance, cap: u128) -> Result<Solutions<'_>> {
    guard(inst, cap)?;
    let engine = Engine::new(inst);
    Ok(Solutions { tuple: Some(vec![1; inst.n_add()]), engine, buffer: VecDeque::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{extends, is_valid};
    use crate::model::InstanceBuilder;

    #[test]
    fn no_new_elements_returns_layout_h() {
        let mut b = InstanceBuilder::new(2);
        b.old_vertices(["a", "b", "c"]).old_edge("a", "c", 2);
        let inst = b.build().unwrap();
        assert_eq!(solve_exhaustive(&inst).unwrap().as_ref(), Some(inst.layout_h()));
        let all: Vec<Layout> = enumerate_solutions(&inst).unwrap().collect();
        assert_eq!(all, vec![inst.layout_h().clone()]);
    }

    #[test]
    fn single_new_vertex_on_one_page() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertex("a").new_vertex("b").new_edge("a", "b");
        let inst = b.build().unwrap();
        let sol = solve_exhaustive(&inst).unwrap().unwrap();
        assert!(is_valid(inst.g(), &sol).unwrap());
        assert!(extends(&sol, inst.layout_h()).unwrap());
        // b left of a, then right of a.
        assert_eq!(enumerate_solutions(&inst).unwrap().count(), 2);
    }

    #[test]
    fn unsatisfiable_stream_is_empty() {
        // a..d with a-c and b-d on the single page already blocked by each other.
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b", "c", "d"]).old_edge("a", "c", 1).new_edge("b", "d");
        let inst = b.build().unwrap();
        assert_eq!(solve_exhaustive(&inst).unwrap(), None);
        assert_eq!(enumerate_solutions(&inst).unwrap().count(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = InstanceBuilder::new(3);
        b.old_vertices(["a", "b"]).new_vertex("x").new_vertex("y").new_edge("x", "a").new_edge("y", "b");
        let inst = b.build().unwrap();
        assert_eq!(search_space(&inst), 3 * 4 * 9);
        assert!(matches!(solve_exhaustive_with(&inst, 10, &Budget::unlimited()), Err(Error::Capacity { .. })));
        assert!(enumerate_solutions_with(&inst, 10).is_err());
    }

    #[test]
    fn rank_vectors_are_lexicographic_permutations() {
        assert_eq!(rank_vectors(&[2, 1, 2]), vec![vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(rank_vectors(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn placement_round_trip() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b"]).new_vertex("x").new_vertex("y");
        let inst = b.build().unwrap();
        let layouts: Vec<Layout> = enumerate_solutions(&inst).unwrap().collect();
        assert_eq!(layouts.len(), 12);
        let first = Placement::of(&inst, &layouts[0]).unwrap();
        assert_eq!(first.slots, vec![(1, 0), (1, 1)]);
        let last = Placement::of(&inst, &layouts[11]).unwrap();
        assert_eq!(last.slots, vec![(3, 1), (3, 0)]);
    }
}

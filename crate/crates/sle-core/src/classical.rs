//! Edges-only FPT, the one-new-vertex greedy and the XP branching solver.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::alternate;
use crate::lookup::FaceLookup;
use crate::model::{Edge, Instance, Layout, Page, VertexId};

/// `S(e)`: pages on which the old-old edge `e` crosses no edge of `H`, ascending.
pub fn candidate_pages(inst: &Instance, e: Edge) -> Result<Vec<Page>> {
    let spine = &inst.layout_h().spine;
    let (u, v) = e.endpoints();
    if !inst.is_old(u) || !inst.is_old(v) {
        return Err(Error::InvalidArgument(format!("edge {} has a new endpoint", inst.edge_name(e))));
    }
    let span = spine.span(e).ok_or_else(|| Error::InvalidArgument("endpoint not on spine".into()))?;
    Ok(candidates_for_span(inst, span))
}

fn candidates_for_span(inst: &Instance, span: (usize, usize)) -> Vec<Page> {
    let layout = inst.layout_h();
    let mut blocked = vec![false; inst.ell() + 1];
    for (e, &p) in &layout.pages {
        if !blocked[p] && alternate(layout.span(*e).expect("old edge"), span) {
            blocked[p] = true;
        }
    }
    (1..=inst.ell()).filter(|&p| !blocked[p]).collect()
}

fn require_edges_only(inst: &Instance) -> Result<()> {
    if inst.n_add() > 0 {
        return Err(Error::Precondition(format!("instance has {} new vertices", inst.n_add())));
    }
    Ok(())
}

/// Indices removed by the safe-edge rule, in removal order: repeatedly the first
/// remaining edge with at least as many candidate pages as there are remaining edges.
pub(crate) fn safe_removals(cands: &[Vec<Page>]) -> Vec<usize> {
    let mut alive = vec![true; cands.len()];
    let mut remaining = cands.len();
    let mut removed = Vec::new();
    while let Some(i) = (0..cands.len()).find(|&i| alive[i] && cands[i].len() >= remaining) {
        alive[i] = false;
        remaining -= 1;
        removed.push(i);
    }
    removed
}

/// Page choice for new edges whose endpoints are all fixed on the spine. `cands[i]`
/// already excludes pages blocked by old edges; only new-new crossings remain.
pub(crate) fn solve_edge_problem(spans: &[(usize, usize)], cands: &[Vec<Page>]) -> Option<Vec<Page>> {
    let removed = safe_removals(cands);
    let mut survivors: Vec<usize> = (0..cands.len()).filter(|i| !removed.contains(i)).collect();
    survivors.sort_by_key(|&i| cands[i].len());
    let mut pages = vec![0; cands.len()];
    if !backtrack(spans, cands, &survivors, &mut pages, 0) {
        return None;
    }
    let mut placed: Vec<usize> = survivors;
    for &i in removed.iter().rev() {
        let p = *cands[i]
            .iter()
            .find(|&&p| placed.iter().all(|&j| pages[j] != p))
            .expect("a safe edge always has a page free of new edges");
        pages[i] = p;
        placed.push(i);
    }
    Some(pages)
}

fn backtrack(spans: &[(usize, usize)], cands: &[Vec<Page>], order: &[usize], pages: &mut [Page], k: usize) -> bool {
    let Some(&i) = order.get(k) else { return true };
    for &p in &cands[i] {
        if order[..k].iter().all(|&j| pages[j] != p || !alternate(spans[i], spans[j])) {
            pages[i] = p;
            if backtrack(spans, cands, order, pages, k + 1) {
                return true;
            }
        }
    }
    false
}

/// Applies the safe-edge rule; the result is extendable iff the input is.
pub fn reduce_safe_edges(inst: &Instance) -> Result<(Instance, Vec<Edge>)> {
    require_edges_only(inst)?;
    let cands = inst.new_edges().iter().map(|&e| candidate_pages(inst, e)).collect::<Result<Vec<_>>>()?;
    let removed: Vec<Edge> = safe_removals(&cands).into_iter().map(|i| inst.new_edges()[i]).collect();
    Ok((inst.without_new_edges(&removed), removed))
}

pub fn solve_edges_only(inst: &Instance) -> Result<Option<Layout>> {
    require_edges_only(inst)?;
    let spine = &inst.layout_h().spine;
    let spans: Vec<(usize, usize)> = inst.new_edges().iter().map(|&e| spine.span(e).expect("old endpoints")).collect();
    let cands: Vec<Vec<Page>> = spans.iter().map(|&s| candidates_for_span(inst, s)).collect();
    Ok(solve_edge_problem(&spans, &cands)
        .map(|pages| inst.assemble(spine.order().to_vec(), inst.new_edges().iter().copied().zip(pages))))
}

/// Tries every interval for the single new vertex; each new edge takes the first
/// page on which the vertex sees the old endpoint.
pub fn solve_one_vertex(inst: &Instance) -> Result<Option<Layout>> {
    if inst.n_add() != 1 || inst.new_edges().iter().any(|&e| inst.is_old_edge(e)) {
        return Err(Error::Precondition("needs exactly one new vertex and no new edge between old vertices".into()));
    }
    let v = inst.new_vertices()[0];
    let spine = &inst.layout_h().spine;
    let lookup = FaceLookup::new(inst.layout_h());
    let targets: Vec<usize> =
        inst.new_edges().iter().map(|e| spine.rank(e.other(v).expect("edge at v")).expect("old")).collect();
    for i in 1..=lookup.intervals() {
        let pages: Option<Vec<Page>> =
            targets.iter().map(|&w| (1..=inst.ell()).find(|&p| lookup.sees_old(p, i, w))).collect();
        if let Some(pages) = pages {
            let mut order = spine.order().to_vec();
            order.insert(i - 1, v);
            return Ok(Some(inst.assemble(order, inst.new_edges().iter().copied().zip(pages))));
        }
    }
    Ok(None)
}

/// Branch counter of [`solve_xp_with`] and its theoretical ceiling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XpStats {
    pub branches: u64,
    pub bound: u128,
}

pub fn xp_bound(inst: &Instance) -> u128 {
    let nh = inst.h().num_vertices() as u128;
    (1..=inst.n_add() as u128).fold(1u128, |acc, i| acc.saturating_mul(nh + i))
}

pub fn solve_xp(inst: &Instance) -> Result<Option<Layout>> {
    solve_xp_with(inst, &Budget::unlimited()).map(|r| r.0)
}

/// How a new edge's endpoints sit relative to the branch's spine.
#[derive(Clone, Copy)]
enum Ends {
    Old(usize, usize),
    Mixed(usize, usize),
    New(usize, usize),
}

/// Interval multisets in colex order, then new-vertex permutations in lex order;
/// each branch fixes the spine and solves the remaining page problem.
pub fn solve_xp_with(inst: &Instance, budget: &Budget) -> Result<(Option<Layout>, XpStats)> {
    let n = inst.n_add();
    let spine = &inst.layout_h().spine;
    let lookup = FaceLookup::new(inst.layout_h());
    let k = lookup.intervals();
    let mut new_pos = vec![usize::MAX; inst.names().len()];
    for (i, v) in inst.new_vertices().iter().enumerate() {
        new_pos[v.index()] = i;
    }
    let ends: Vec<Ends> = inst
        .new_edges()
        .iter()
        .map(|&e| {
            let (a, b) = e.endpoints();
            match (inst.is_old(a), inst.is_old(b)) {
                (true, true) => Ends::Old(spine.rank(a).unwrap(), spine.rank(b).unwrap()),
                (true, false) => Ends::Mixed(new_pos[b.index()], spine.rank(a).unwrap()),
                (false, true) => Ends::Mixed(new_pos[a.index()], spine.rank(b).unwrap()),
                (false, false) => Ends::New(new_pos[a.index()], new_pos[b.index()]),
            }
        })
        .collect();
    let fixed: Vec<Option<Vec<Page>>> = ends
        .iter()
        .map(|x| match *x {
            Ends::Old(a, b) => Some(candidates_for_span(inst, (a.min(b), a.max(b)))),
            _ => None,
        })
        .collect();

    let mut stats = XpStats { branches: 0, bound: xp_bound(inst) };
    let mut t = vec![0usize; n];
    let mut found = None;
    let mut err = None;
    multisets(&mut t, n, k, &mut |t| {
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if let Err(e) = budget.check() {
                err = Some(e);
                return true;
            }
            stats.branches += 1;
            // interval and G-rank of every new vertex
            let mut interval = vec![0; n];
            let mut grank = vec![0; n];
            for (pos, &v) in perm.iter().enumerate() {
                interval[v] = t[pos];
                grank[v] = t[pos] - 1 + pos;
            }
            let old_rank = |r: usize| r + t.partition_point(|&x| x <= r + 1);
            let mut spans = Vec::with_capacity(ends.len());
            let mut cands = Vec::with_capacity(ends.len());
            for (x, fx) in ends.iter().zip(&fixed) {
                let (a, b, c) = match *x {
                    Ends::Old(a, b) => (old_rank(a), old_rank(b), fx.clone().unwrap()),
                    Ends::Mixed(v, w) => (
                        grank[v],
                        old_rank(w),
                        (1..=inst.ell()).filter(|&p| lookup.sees_old(p, interval[v], w)).collect(),
                    ),
                    Ends::New(v, w) => (
                        grank[v],
                        grank[w],
                        (1..=inst.ell()).filter(|&p| lookup.sees_between(p, interval[v], interval[w])).collect(),
                    ),
                };
                spans.push((a.min(b), a.max(b)));
                cands.push(c);
            }
            if cands.iter().all(|c: &Vec<Page>| !c.is_empty()) {
                if let Some(pages) = solve_edge_problem(&spans, &cands) {
                    let mut order: Vec<VertexId> = spine.order().to_vec();
                    for (pos, &v) in perm.iter().enumerate() {
                        order.insert(t[pos] - 1 + pos, inst.new_vertices()[v]);
                    }
                    found = Some(inst.assemble(order, inst.new_edges().iter().copied().zip(pages)));
                    return true;
                }
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok((found, stats))
}

/// Non-decreasing tuples over `[1, k]` in colex order (last coordinate slowest).
fn multisets(t: &mut [usize], len: usize, upper: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if len == 0 {
        return visit(t);
    }
    for x in 1..=upper {
        t[len - 1] = x;
        if multisets(t, len - 1, x, visit) {
            return true;
        }
    }
    false
}

/// Lexicographic successor; false after the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

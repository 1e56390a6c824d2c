//! Face-based dynamic program over the spine intervals and its branching driver.
//!
//! A branch fixes (i) a page per new edge, (ii) the order of the new vertices,
//! (iii) a super interval per new vertex and (iv) the depth of the face each
//! edge with a new endpoint runs through. Faces come from `H` alone; new edges
//! between old vertices are settled by [`check_branch`].

mod dp;
mod greedy;

pub use dp::{admissible_pred_place, admissible_pred_right, dp_solve_branch, dp_table, DpTable};
pub use greedy::{solve_greedy_is, solve_greedy_is_with};

use crate::budget::Budget;
use crate::classical::next_permutation;
use crate::error::Result;
use crate::geometry::{alternate, page_width, super_intervals, SuperInterval};
use crate::lookup::FaceLookup;
use crate::model::{Edge, Instance, Layout, Page};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ends {
    /// Both endpoints old, by `H` rank.
    OldOld(usize, usize),
    /// New vertex index and `H` rank of the old endpoint.
    NewOld(usize, usize),
    NewNew(usize, usize),
}

/// Per-instance data shared by every branch.
#[derive(Clone, Debug)]
pub struct FptContext<'a> {
    pub(crate) inst: &'a Instance,
    pub(crate) lookup: FaceLookup,
    pub(crate) sis: Vec<SuperInterval>,
    pub(crate) ends: Vec<Ends>,
    /// New edges at each new vertex.
    pub(crate) incident: Vec<Vec<usize>>,
    /// Position of each `H` rank within `V_inc`.
    pub(crate) inc_index: Vec<usize>,
    pub(crate) omega: usize,
}

impl<'a> FptContext<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let spine = &inst.layout_h().spine;
        let mut new_index = vec![usize::MAX; inst.names().len()];
        for (i, v) in inst.new_vertices().iter().enumerate() {
            new_index[v.index()] = i;
        }
        let mut incident = vec![Vec::new(); inst.n_add()];
        let ends = inst
            .new_edges()
            .iter()
            .enumerate()
            .map(|(k, &e)| {
                let (a, b) = e.endpoints();
                match (inst.is_old(a), inst.is_old(b)) {
                    (true, true) => Ends::OldOld(spine.rank(a).unwrap(), spine.rank(b).unwrap()),
                    (true, false) => {
                        incident[new_index[b.index()]].push(k);
                        Ends::NewOld(new_index[b.index()], spine.rank(a).unwrap())
                    }
                    (false, true) => {
                        incident[new_index[a.index()]].push(k);
                        Ends::NewOld(new_index[a.index()], spine.rank(b).unwrap())
                    }
                    (false, false) => {
                        let (x, y) = (new_index[a.index()], new_index[b.index()]);
                        incident[x].push(k);
                        incident[y].push(k);
                        Ends::NewNew(x, y)
                    }
                }
            })
            .collect();
        let mut inc_index = vec![usize::MAX; spine.len()];
        for (k, v) in inst.v_inc().into_iter().enumerate() {
            inc_index[spine.rank(v).unwrap()] = k;
        }
        FptContext {
            inst,
            lookup: FaceLookup::new(inst.layout_h()),
            sis: super_intervals(inst),
            ends,
            incident,
            inc_index,
            omega: page_width(inst.layout_h()),
        }
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn lookup(&self) -> &FaceLookup {
        &self.lookup
    }

    pub fn super_intervals(&self) -> &[SuperInterval] {
        &self.sis
    }

    /// Page width `ω` of the layout of `H`.
    pub fn omega(&self) -> usize {
        self.omega
    }

    /// `ℓ^m · n! · (2m+1)^n · (ω+1)^m`, saturating.
    pub fn branch_bound(&self) -> u128 {
        let (n, m) = (self.inst.n_add() as u128, self.inst.m_add() as u32);
        let ell = self.inst.ell() as u128;
        let fact = (1..=n).fold(1u128, |a, i| a.saturating_mul(i));
        ell.saturating_pow(m)
            .saturating_mul(fact)
            .saturating_mul((2 * m as u128 + 1).saturating_pow(n as u32))
            .saturating_mul((self.omega as u128 + 1).saturating_pow(m))
    }

    /// Spine key of an endpoint; a total order on new-edge endpoints once (ii) and (iii) are fixed.
    fn key(&self, b: &BranchAssignment, pos: &[usize], end: Endpoint) -> (usize, usize) {
        match end {
            Endpoint::Old(r) => (2 * self.inc_index[r] + 1, 0),
            Endpoint::New(v) => (2 * b.super_of[v], pos[v]),
        }
    }

    fn endpoints(&self, k: usize) -> (Endpoint, Endpoint) {
        match self.ends[k] {
            Ends::OldOld(a, b) => (Endpoint::Old(a), Endpoint::Old(b)),
            Ends::NewOld(v, w) => (Endpoint::New(v), Endpoint::Old(w)),
            Ends::NewNew(x, y) => (Endpoint::New(x), Endpoint::New(y)),
        }
    }
}

#[derive(Clone, Copy)]
enum Endpoint {
    Old(usize),
    New(usize),
}

/// One choice of (i)-(iv). Vectors are indexed by new edge (instance order) or new
/// vertex index; `order` lists new-vertex indices left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchAssignment {
    pub pages: Vec<Page>,
    pub order: Vec<usize>,
    pub super_of: Vec<usize>,
    /// Face depth per new edge; `None` for edges between old vertices.
    pub depth: Vec<Option<usize>>,
}

impl BranchAssignment {
    /// The branch a layout of `G` complies with.
    pub fn of_layout(ctx: &FptContext, layout: &Layout) -> Option<BranchAssignment> {
        let inst = ctx.inst;
        let nv = inst.new_vertices();
        let mut interval = Vec::with_capacity(nv.len());
        for &v in nv {
            let r = layout.spine.rank(v)?;
            interval.push(1 + layout.spine.order()[..r].iter().filter(|&&w| inst.is_old(w)).count());
        }
        let mut order: Vec<usize> = (0..nv.len()).collect();
        order.sort_by_key(|&i| layout.spine.rank(nv[i]));
        let super_of = interval.iter().map(|&i| ctx.sis.iter().position(|s| s.contains(i)).unwrap()).collect();
        let mut pages = Vec::with_capacity(inst.m_add());
        let mut depth = Vec::with_capacity(inst.m_add());
        for (k, &e) in inst.new_edges().iter().enumerate() {
            let p = layout.page_of(e)?;
            pages.push(p);
            depth.push(match ctx.ends[k] {
                Ends::OldOld(..) => None,
                Ends::NewOld(v, _) | Ends::NewNew(v, _) => Some(ctx.lookup.depth_at(p, interval[v])),
            });
        }
        Some(BranchAssignment { pages, order, super_of, depth })
    }
}

/// Why a branch is inconsistent.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("malformed branch: {0}")]
    Malformed(String),
    #[error("new vertices {first} and {second} are ordered against their super intervals")]
    OrderSuperConflict { first: usize, second: usize },
    #[error("edge {0:?} crosses an edge of H or another new edge between old vertices")]
    OldCrossing(Edge),
    #[error("edges {0:?} and {1:?} are forced to cross")]
    ImpliedCrossing(Edge, Edge),
}

/// Consistency of (i)-(iii); depths are not inspected.
pub fn check_branch(ctx: &FptContext, b: &BranchAssignment) -> std::result::Result<(), Rejection> {
    let inst = ctx.inst;
    let (n, m) = (inst.n_add(), inst.m_add());
    let mut seen = vec![false; n];
    if b.pages.len() != m || b.super_of.len() != n || b.order.len() != n {
        return Err(Rejection::Malformed("vector lengths do not match the instance".into()));
    }
    for &v in &b.order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Rejection::Malformed("order is not a permutation".into()));
        }
    }
    if b.pages.iter().any(|&p| p == 0 || p > inst.ell()) || b.super_of.iter().any(|&s| s >= ctx.sis.len()) {
        return Err(Rejection::Malformed("page or super interval out of range".into()));
    }
    for w in b.order.windows(2) {
        if b.super_of[w[0]] > b.super_of[w[1]] {
            return Err(Rejection::OrderSuperConflict { first: w[0], second: w[1] });
        }
    }

    let layout = inst.layout_h();
    let old_old: Vec<usize> = (0..m).filter(|&k| matches!(ctx.ends[k], Ends::OldOld(..))).collect();
    for (x, &k) in old_old.iter().enumerate() {
        let Ends::OldOld(a, c) = ctx.ends[k] else { unreachable!() };
        let span = (a.min(c), a.max(c));
        let blocked = layout.edges_on(b.pages[k]).any(|e| alternate(layout.span(e).unwrap(), span))
            || old_old[..x].iter().any(|&j| {
                let Ends::OldOld(a2, c2) = ctx.ends[j] else { unreachable!() };
                b.pages[j] == b.pages[k] && alternate((a2.min(c2), a2.max(c2)), span)
            });
        if blocked {
            return Err(Rejection::OldCrossing(inst.new_edges()[k]));
        }
    }

    let mut pos = vec![0; n];
    for (i, &v) in b.order.iter().enumerate() {
        pos[v] = i;
    }
    let spans: Vec<((usize, usize), (usize, usize))> = (0..m)
        .map(|k| {
            let (x, y) = ctx.endpoints(k);
            let (kx, ky) = (ctx.key(b, &pos, x), ctx.key(b, &pos, y));
            (kx.min(ky), kx.max(ky))
        })
        .collect();
    for k in 0..m {
        for j in 0..k {
            if b.pages[j] == b.pages[k] && alternate(spans[j], spans[k]) {
                return Err(Rejection::ImpliedCrossing(inst.new_edges()[j], inst.new_edges()[k]));
            }
        }
    }
    Ok(())
}

/// New-new edges with exactly one endpoint among the first `j` vertices of the order,
/// for every `j`; each entry is (edge index, the endpoint already placed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeSet {
    pub by_prefix: Vec<Vec<(usize, usize)>>,
}

impl HalfEdgeSet {
    pub fn new(ctx: &FptContext, b: &BranchAssignment) -> Self {
        let n = b.order.len();
        let mut pos = vec![0; n];
        for (i, &v) in b.order.iter().enumerate() {
            pos[v] = i;
        }
        let by_prefix = (0..=n)
            .map(|j| {
                ctx.ends
                    .iter()
                    .enumerate()
                    .filter_map(|(k, e)| match *e {
                        Ends::NewNew(x, y) if pos[x] < j && pos[y] >= j => Some((k, x)),
                        Ends::NewNew(x, y) if pos[y] < j && pos[x] >= j => Some((k, y)),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        HalfEdgeSet { by_prefix }
    }
}

/// Counters of one [`solve_fpt_with`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Branches handed to the dynamic program.
    pub branches: u64,
    /// Branches dropped by [`check_branch`].
    pub rejected: u64,
    pub dp_cells: u64,
    pub bound: u128,
}

impl FptContext<'_> {
    /// Calls `visit` on every consistent choice of (i)-(iii): pages lex, then
    /// orders lex, then super intervals lex. Depths are left unset.
    pub(crate) fn for_each_consistent(
        &self,
        rejected: &mut u64,
        visit: &mut dyn FnMut(&mut BranchAssignment) -> bool,
    ) -> bool {
        let (n, m) = (self.inst.n_add(), self.inst.m_add());
        let mut b =
            BranchAssignment { pages: vec![1; m], order: Vec::new(), super_of: vec![0; n], depth: vec![None; m] };
        self.pages_rec(0, &mut b, &mut |b| {
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                b.order.clone_from(&perm);
                if self.super_rec(0, 0, b, rejected, visit) {
                    return true;
                }
                if !next_permutation(&mut perm) {
                    return false;
                }
            }
        })
    }

    fn pages_rec(
        &self,
        k: usize,
        b: &mut BranchAssignment,
        next: &mut dyn FnMut(&mut BranchAssignment) -> bool,
    ) -> bool {
        if k == b.pages.len() {
            return next(b);
        }
        let layout = self.inst.layout_h();
        for p in 1..=self.inst.ell() {
            if let Ends::OldOld(a, c) = self.ends[k] {
                let span = (a.min(c), a.max(c));
                let clash = layout.edges_on(p).any(|e| alternate(layout.span(e).unwrap(), span))
                    || (0..k).any(|j| match self.ends[j] {
                        Ends::OldOld(a2, c2) => b.pages[j] == p && alternate((a2.min(c2), a2.max(c2)), span),
                        _ => false,
                    });
                if clash {
                    continue;
                }
            }
            b.pages[k] = p;
            if self.pages_rec(k + 1, b, next) {
                return true;
            }
        }
        false
    }

    fn super_rec(
        &self,
        i: usize,
        low: usize,
        b: &mut BranchAssignment,
        rejected: &mut u64,
        visit: &mut dyn FnMut(&mut BranchAssignment) -> bool,
    ) -> bool {
        if i == b.order.len() {
            if check_branch(self, b).is_err() {
                *rejected += 1;
                return false;
            }
            return visit(b);
        }
        for s in low..self.sis.len() {
            b.super_of[b.order[i]] = s;
            if self.super_rec(i + 1, s, b, rejected, visit) {
                return true;
            }
        }
        false
    }

    /// Every consistent branch with every depth in `0..=ω` for each edge that
    /// has a new endpoint, until `visit` returns true. The solver itself only
    /// tries the depths that can host an edge; this is for cross-checking.
    pub fn for_each_branch(&self, visit: &mut dyn FnMut(&BranchAssignment) -> bool) -> bool {
        let free: Vec<usize> = (0..self.ends.len()).filter(|&k| !matches!(self.ends[k], Ends::OldOld(..))).collect();
        let mut rejected = 0;
        self.for_each_consistent(&mut rejected, &mut |b| {
            let mut digits = vec![0usize; free.len()];
            loop {
                for (&k, &d) in free.iter().zip(&digits) {
                    b.depth[k] = Some(d);
                }
                if visit(b) {
                    return true;
                }
                let Some(pos) = digits.iter().rposition(|&d| d < self.omega) else { return false };
                digits[pos] += 1;
                digits[pos + 1..].fill(0);
            }
        })
    }

    /// Depths worth trying per new edge: those of innermost faces, inside the
    /// endpoint's super interval, that can actually host the edge.
    fn depth_candidates(&self, b: &BranchAssignment) -> Vec<Vec<Option<usize>>> {
        let lk = &self.lookup;
        let depths_in = |v: usize, p: Page, keep: &dyn Fn(usize) -> bool| -> Vec<usize> {
            let si = &self.sis[b.super_of[v]];
            let mut ds: Vec<usize> = (si.first..=si.last).filter(|&i| keep(i)).map(|i| lk.depth_at(p, i)).collect();
            ds.sort_unstable();
            ds.dedup();
            ds
        };
        self.ends
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let p = b.pages[k];
                match *e {
                    Ends::OldOld(..) => vec![None],
                    Ends::NewOld(v, w) => depths_in(v, p, &|i| lk.sees_old(p, i, w)).into_iter().map(Some).collect(),
                    Ends::NewNew(x, y) => {
                        let dy = depths_in(y, p, &|_| true);
                        depths_in(x, p, &|_| true).into_iter().filter(|d| dy.contains(d)).map(Some).collect()
                    }
                }
            })
            .collect()
    }
}

pub fn solve_fpt(inst: &Instance) -> Result<Option<Layout>> {
    solve_fpt_with(inst, &Budget::unlimited()).map(|r| r.0)
}

/// Enumerates consistent branches, then depths lex, running the DP on each.
pub fn solve_fpt_with(inst: &Instance, budget: &Budget) -> Result<(Option<Layout>, FptStats)> {
    let ctx = FptContext::new(inst);
    let mut stats = FptStats { bound: ctx.branch_bound(), ..Default::default() };
    let mut found = None;
    let mut err = None;
    let mut rejected = 0;
    ctx.for_each_consistent(&mut rejected, &mut |b| {
        let lists = ctx.depth_candidates(b);
        if lists.iter().any(Vec::is_empty) {
            return false;
        }
        let mut idx = vec![0usize; lists.len()];
        loop {
            for (k, l) in lists.iter().enumerate() {
                b.depth[k] = l[idx[k]];
            }
            if let Err(e) = budget.check() {
                err = Some(e);
                return true;
            }
            stats.branches += 1;
            let table = dp_table(&ctx, b);
            stats.dp_cells += table.cells() as u64;
            if let Some(layout) = table.layout(&ctx, b) {
                found = Some(layout);
                return true;
            }
            // lexicographic odometer, last edge fastest
            let mut k = lists.len();
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    });
    stats.rejected = rejected;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((found, stats))
}

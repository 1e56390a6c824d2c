use super::{check_branch, BranchAssignment, Ends, FptContext, HalfEdgeSet};
use crate::error::{Error, Result};
use crate::model::{Layout, VertexId};

/// `D[i][j][r]` for `i ∈ [1, K]`, `j ∈ [0, n]`, `r ∈ {0, 1}`, with the
/// predecessor `r` each cell was first reached from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    intervals: usize,
    n: usize,
    cells: Vec<[Option<u8>; 2]>,
}

impl DpTable {
    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.n + 1) + j
    }

    pub fn get(&self, i: usize, j: usize, r: usize) -> bool {
        self.cells[self.idx(i, j)][r].is_some()
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn cells(&self) -> usize {
        self.cells.len() * 2
    }

    pub fn accepts(&self) -> bool {
        self.get(self.intervals, self.n, 0) || self.get(self.intervals, self.n, 1)
    }

    /// Interval of each position of the order, read back from the table.
    pub fn backtrace(&self) -> Option<Vec<usize>> {
        let (mut i, mut j) = (self.intervals, self.n);
        let mut r = if self.get(i, j, 0) {
            0
        } else if self.get(i, j, 1) {
            1
        } else {
            return None;
        };
        let mut at = vec![0; self.n];
        while (i, j, r) != (1, 0, 0) {
            let prev = self.cells[self.idx(i, j)][r].expect("reached cell has a predecessor") as usize;
            if r == 1 {
                at[j - 1] = i;
                j -= 1;
            } else {
                i -= 1;
            }
            r = prev;
        }
        Some(at)
    }

    /// The layout of `G` read off the table; vertices sharing an interval keep the branch order.
    pub fn layout(&self, ctx: &FptContext, b: &BranchAssignment) -> Option<Layout> {
        let at = self.backtrace()?;
        let inst = ctx.inst;
        let old = inst.layout_h().spine.order();
        let mut spine: Vec<VertexId> = Vec::with_capacity(old.len() + at.len());
        let mut next = 0;
        for i in 1..=self.intervals {
            while next < at.len() && at[next] == i {
                spine.push(inst.new_vertices()[b.order[next]]);
                next += 1;
            }
            if i <= old.len() {
                spine.push(old[i - 1]);
            }
        }
        Some(inst.assemble(spine, inst.new_edges().iter().copied().zip(b.pages.iter().copied())))
    }
}

/// Whether `(i, j, ·)` may move right to `(i + 1, j, 0)`: every half-edge's face
/// continues past the right end of interval `i`.
pub fn admissible_pred_right(ctx: &FptContext, b: &BranchAssignment, half: &HalfEdgeSet, i: usize, j: usize) -> bool {
    half.by_prefix[j].iter().all(|&(k, _)| {
        let (p, d) = (b.pages[k], b.depth[k].expect("half-edges have depths"));
        match ctx.lookup.face_at(p, i, d) {
            Some(f) => ctx.lookup.spans(p, f, i + 1),
            None => false,
        }
    })
}

/// Whether the `j`-th vertex of the order may be placed in interval `i`.
pub fn admissible_pred_place(ctx: &FptContext, b: &BranchAssignment, i: usize, j: usize) -> bool {
    let v = b.order[j - 1];
    if !ctx.sis[b.super_of[v]].contains(i) {
        return false;
    }
    let lk = &ctx.lookup;
    ctx.incident[v].iter().all(|&k| {
        let (p, d) = (b.pages[k], b.depth[k].expect("edges at new vertices have depths"));
        if lk.depth_at(p, i) != d {
            return false;
        }
        match ctx.ends[k] {
            Ends::NewOld(_, w) => lk.vertex_incident(p, lk.innermost(p, i), w),
            _ => true,
        }
    })
}

/// Fills the table for branch `b`; no consistency check.
pub fn dp_table(ctx: &FptContext, b: &BranchAssignment) -> DpTable {
    let k = ctx.lookup.intervals();
    let n = b.order.len();
    let half = HalfEdgeSet::new(ctx, b);
    let mut t = DpTable { intervals: k, n, cells: vec![[None, None]; k * (n + 1)] };
    let first = |c: [Option<u8>; 2]| {
        if c[0].is_some() {
            Some(0)
        } else if c[1].is_some() {
            Some(1)
        } else {
            None
        }
    };
    // the root is marked with a self-link that backtrace never follows
    let root = t.idx(1, 0);
    t.cells[root][0] = Some(0);
    for i in 1..=k {
        if i > 1 {
            for j in 0..=n {
                let prev = t.cells[t.idx(i - 1, j)];
                if let Some(r) = first(prev) {
                    if admissible_pred_right(ctx, b, &half, i - 1, j) {
                        let c = t.idx(i, j);
                        t.cells[c][0] = Some(r);
                    }
                }
            }
        }
        for j in 1..=n {
            let prev = t.cells[t.idx(i, j - 1)];
            if let Some(r) = first(prev) {
                if admissible_pred_place(ctx, b, i, j) {
                    let c = t.idx(i, j);
                    t.cells[c][1] = Some(r);
                }
            }
        }
    }
    t
}

/// Runs the DP on a consistent branch and assembles the layout on success.
pub fn dp_solve_branch(ctx: &FptContext, b: &BranchAssignment) -> Result<Option<Layout>> {
    check_branch(ctx, b).map_err(|r| Error::Precondition(r.to_string()))?;
    let (n, m) = (ctx.inst.n_add(), ctx.inst.m_add());
    if b.depth.len() != m {
        return Err(Error::Precondition("depth vector length".into()));
    }
    for k in 0..m {
        let needs = !matches!(ctx.ends[k], Ends::OldOld(..));
        if needs != b.depth[k].is_some() {
            return Err(Error::Precondition("depths must be set exactly on edges with a new endpoint".into()));
        }
    }
    debug_assert_eq!(b.order.len(), n);
    Ok(dp_table(ctx, b).layout(ctx, b))
}

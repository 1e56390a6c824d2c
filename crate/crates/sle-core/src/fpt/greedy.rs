use super::{BranchAssignment, Ends, FptContext, FptStats};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::model::{Instance, Layout, VertexId};

pub fn solve_greedy_is(inst: &Instance) -> Result<Option<Layout>> {
    solve_greedy_is_with(inst, &Budget::unlimited()).map(|r| r.0)
}

/// For independent new vertices: branch over pages, order and super intervals,
/// then place each vertex in the leftmost interval of its super interval from
/// which all its edges are visible.
pub fn solve_greedy_is_with(inst: &Instance, budget: &Budget) -> Result<(Option<Layout>, FptStats)> {
    if !inst.new_vertices_independent() {
        return Err(Error::Precondition("new vertices are not independent".into()));
    }
    let ctx = FptContext::new(inst);
    let mut stats = FptStats { bound: ctx.branch_bound(), ..Default::default() };
    let mut found = None;
    let mut err = None;
    let mut rejected = 0;
    ctx.for_each_consistent(&mut rejected, &mut |b| {
        if let Err(e) = budget.check() {
            err = Some(e);
            return true;
        }
        stats.branches += 1;
        found = scan(&ctx, b);
        found.is_some()
    });
    stats.rejected = rejected;
    match err {
        Some(e) => Err(e),
        None => Ok((found, stats)),
    }
}

fn scan(ctx: &FptContext, b: &BranchAssignment) -> Option<Layout> {
    let lk = &ctx.lookup;
    let k = lk.intervals();
    let mut at = Vec::with_capacity(b.order.len());
    let mut i = 1;
    for &v in &b.order {
        let si = &ctx.sis[b.super_of[v]];
        i = i.max(si.first);
        loop {
            if i > si.last.min(k) {
                return None;
            }
            let visible = ctx.incident[v].iter().all(|&e| match ctx.ends[e] {
                Ends::NewOld(_, w) => lk.sees_old(b.pages[e], i, w),
                _ => unreachable!("independent new vertices"),
            });
            if visible {
                break;
            }
            i += 1;
        }
        at.push(i);
    }
    let inst = ctx.inst;
    let old = inst.layout_h().spine.order();
    let mut spine: Vec<VertexId> = Vec::with_capacity(old.len() + at.len());
    let mut next = 0;
    for interval in 1..=k {
        while next < at.len() && at[next] == interval {
            spine.push(inst.new_vertices()[b.order[next]]);
            next += 1;
        }
        if interval <= old.len() {
            spine.push(old[interval - 1]);
        }
    }
    Some(inst.assemble(spine, inst.new_edges().iter().copied().zip(b.pages.iter().copied())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::solve_one_vertex;
    use crate::model::InstanceBuilder;

    #[test]
    fn isolated_vertex_goes_first() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b"]).new_vertex("x");
        let inst = b.build().unwrap();
        let sol = solve_greedy_is(&inst).unwrap().unwrap();
        assert_eq!(sol.spine.at(0), inst.vertex("x").unwrap());
    }

    #[test]
    fn agrees_with_one_vertex() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertices(["a", "b", "c", "d", "e"]).old_edge("a", "c", 1).old_edge("c", "e", 1);
        b.new_vertex("x").new_edge("x", "b").new_edge("x", "c");
        let inst = b.build().unwrap();
        assert_eq!(solve_greedy_is(&inst).unwrap().is_some(), solve_one_vertex(&inst).unwrap().is_some());
        b.new_edge("x", "d");
        let inst = b.build().unwrap();
        assert_eq!(solve_greedy_is(&inst).unwrap(), None);
        assert_eq!(solve_one_vertex(&inst).unwrap(), None);
    }

    #[test]
    fn rejects_dependent_vertices() {
        let mut b = InstanceBuilder::new(1);
        b.old_vertex("a").new_vertex("x").new_vertex("y").new_edge("x", "y");
        assert!(matches!(solve_greedy_is(&b.build().unwrap()), Err(Error::Precondition(_))));
    }
}

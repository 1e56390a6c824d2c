//! Per-instance face table: for every page and interval, the faces spanning it.

use crate::geometry::{FaceKind, FaceRef, PageNest};
use crate::model::{Layout, Page};

/// A face of one page: the outer face or the face below the `i`-th edge of that page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalFace {
    Outer,
    Edge(u32),
}

/// Faces of `layout_h`, precomputed once and shared read-only.
#[derive(Clone, Debug)]
pub struct FaceLookup {
    nests: Vec<PageNest>,
    /// `chains[p][i]`: edge indices of the faces spanning interval `i`, outside-in.
    chains: Vec<Vec<Vec<u32>>>,
    intervals: usize,
}

impl FaceLookup {
    pub fn new(layout: &Layout) -> FaceLookup {
        let k = layout.spine.len() + 1;
        let mut nests = Vec::with_capacity(layout.ell + 1);
        let mut chains = Vec::with_capacity(layout.ell + 1);
        nests.push(PageNest::build(layout, 0));
        chains.push(Vec::new());
        for p in 1..=layout.ell {
            let nest = PageNest::build(layout, p);
            let mut per = vec![Vec::new(); k + 1];
            for (i, chain) in per.iter_mut().enumerate().skip(1) {
                let mut cur = nest.innermost[i];
                while let Some(c) = cur {
                    chain.push(c as u32);
                    cur = nest.parent[c];
                }
                chain.reverse();
            }
            nests.push(nest);
            chains.push(per);
        }
        FaceLookup { nests, chains, intervals: k }
    }

    /// Number of intervals, `|V(H)| + 1`.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn pages(&self) -> usize {
        self.nests.len() - 1
    }

    /// Depth of the innermost face containing interval `i` on page `p`.
    pub fn depth_at(&self, p: Page, i: usize) -> usize {
        self.chains[p][i].len()
    }

    pub fn innermost(&self, p: Page, i: usize) -> LocalFace {
        match self.chains[p][i].last() {
            None => LocalFace::Outer,
            Some(&e) => LocalFace::Edge(e),
        }
    }

    /// Face at depth `d` spanning interval `i`, if one exists.
    pub fn face_at(&self, p: Page, i: usize, d: usize) -> Option<LocalFace> {
        if d == 0 {
            return Some(LocalFace::Outer);
        }
        self.chains[p][i].get(d - 1).map(|&e| LocalFace::Edge(e))
    }

    /// Whether `face` spans interval `i`.
    pub fn spans(&self, p: Page, face: LocalFace, i: usize) -> bool {
        match face {
            LocalFace::Outer => i >= 1 && i <= self.intervals,
            LocalFace::Edge(e) => {
                let (l, r) = self.nests[p].spans[e as usize];
                l + 2 <= i && i <= r + 1
            }
        }
    }

    /// Whether the old vertex at spine rank `w` is incident to `face`.
    pub fn vertex_incident(&self, p: Page, face: LocalFace, w: usize) -> bool {
        let f = match face {
            LocalFace::Outer => None,
            LocalFace::Edge(e) => Some(e as usize),
        };
        self.nests[p].vertex_incident(f, w)
    }

    /// A vertex placed in interval `i` sees the old vertex at rank `w` on page `p`.
    pub fn sees_old(&self, p: Page, i: usize, w: usize) -> bool {
        self.vertex_incident(p, self.innermost(p, i), w)
    }

    /// Two vertices placed in intervals `i` and `j` see each other on page `p`.
    pub fn sees_between(&self, p: Page, i: usize, j: usize) -> bool {
        self.innermost(p, i) == self.innermost(p, j)
    }

    pub fn face_ref(&self, p: Page, face: LocalFace) -> FaceRef {
        FaceRef {
            page: p,
            kind: match face {
                LocalFace::Outer => FaceKind::Outer,
                LocalFace::Edge(e) => FaceKind::Inner(self.nests[p].edges[e as usize]),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::face_at_distance;
    use crate::model::{Edge, PageAssignment, SpineOrder, VertexId};

    #[test]
    fn agrees_with_face_at_distance() {
        let v = VertexId;
        let spine = SpineOrder::new((0..6).map(v).collect()).unwrap();
        let mut pages = PageAssignment::new();
        pages.insert(Edge::new(v(0), v(5)), 1);
        pages.insert(Edge::new(v(1), v(3)), 1);
        pages.insert(Edge::new(v(1), v(2)), 1);
        pages.insert(Edge::new(v(2), v(4)), 2);
        let layout = Layout::new(spine, pages, 2).unwrap();
        let lk = FaceLookup::new(&layout);
        for p in 1..=2 {
            for i in 1..=7 {
                for d in 0..4 {
                    let direct = face_at_distance(&layout, p, i, d).unwrap();
                    assert_eq!(lk.face_at(p, i, d).map(|f| lk.face_ref(p, f)), direct, "p={p} i={i} d={d}");
                }
            }
        }
        assert_eq!(lk.depth_at(1, 3), 3);
        assert!(lk.spans(1, lk.innermost(1, 4), 4));
        assert!(!lk.spans(1, lk.innermost(1, 4), 5));
    }
}

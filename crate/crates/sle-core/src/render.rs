//! SVG arc diagrams. Vertices sit on a horizontal spine in layout order; each
//! edge is a half-ellipse in its page's color. Pages either alternate between the
//! two half-planes or get one band each.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::model::{Edge, Instance, Layout, Page, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PageMode {
    /// Odd pages above the spine, even pages below.
    #[default]
    Alternate,
    /// One band per page, each with its own copy of the spine.
    Stacked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub mode: PageMode,
    /// Horizontal distance between consecutive vertices.
    pub spacing: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { mode: PageMode::Alternate, spacing: 48.0, labels: true }
    }
}

/// Elements drawn emphasized.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Highlight {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

impl Highlight {
    /// The vertices and edges of `G` missing from `H`.
    pub fn new_elements(inst: &Instance) -> Highlight {
        Highlight {
            vertices: inst.new_vertices().iter().copied().collect(),
            edges: inst.new_edges().iter().copied().collect(),
        }
    }
}

const PALETTE: [&str; 8] = ["#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"];
const HIGHLIGHT: &str = "#1f4fd8";
const MARGIN: f64 = 24.0;

pub fn page_color(p: Page) -> String {
    match PALETTE.get(p.wrapping_sub(1)) {
        Some(c) => c.to_string(),
        None => format!("hsl({}, 60%, 45%)", (p * 47) % 360),
    }
}

/// One drawn edge: the upper or lower half of an axis-aligned ellipse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub edge: Edge,
    pub page: Page,
    pub cx: f64,
    /// y of the spine the arc stands on.
    pub cy: f64,
    pub rx: f64,
    pub ry: f64,
    pub above: bool,
}

impl Arc {
    /// Point at parameter `t` in `[0, 1]`, left end to right end.
    pub fn point(&self, t: f64) -> (f64, f64) {
        let theta = std::f64::consts::PI * (1.0 - t);
        let dy = self.ry * theta.sin();
        (self.cx + self.rx * theta.cos(), if self.above { self.cy - dy } else { self.cy + dy })
    }
}

struct Frame {
    width: f64,
    height: f64,
    /// Spine y per page, index 0 unused.
    spine_y: Vec<f64>,
}

fn x_of(rank: usize, opts: &RenderOptions) -> f64 {
    MARGIN + rank as f64 * opts.spacing
}

/// Flattening of page `p`'s ellipses; arcs of one page share it, so they keep
/// their nesting.
fn aspect(p: Page, opts: &RenderOptions) -> f64 {
    match opts.mode {
        PageMode::Alternate => 0.9_f64.powi(((p - 1) / 2) as i32),
        PageMode::Stacked => 1.0,
    }
}

fn frame(layout: &Layout, opts: &RenderOptions) -> Frame {
    let n = layout.spine.len();
    let width = 2.0 * MARGIN + n.saturating_sub(1) as f64 * opts.spacing;
    let mut tallest = vec![0.0f64; layout.ell + 1];
    for (&e, &p) in &layout.pages {
        if let Some((l, r)) = layout.span(e) {
            let h = (r - l) as f64 * opts.spacing / 2.0 * aspect(p, opts);
            tallest[p] = tallest[p].max(h);
        }
    }
    let label = if opts.labels { 16.0 } else { 0.0 };
    match opts.mode {
        PageMode::Alternate => {
            let up = (1..=layout.ell).step_by(2).map(|p| tallest[p]).fold(0.0, f64::max);
            let down = (2..=layout.ell).step_by(2).map(|p| tallest[p]).fold(0.0, f64::max);
            let y = MARGIN + up;
            Frame { width, height: y + down + label + MARGIN, spine_y: vec![y; layout.ell + 1] }
        }
        PageMode::Stacked => {
            let mut spine_y = vec![0.0; layout.ell + 1];
            let mut y = MARGIN;
            for p in 1..=layout.ell {
                y += tallest[p].max(opts.spacing / 2.0);
                spine_y[p] = y;
                y += label + MARGIN;
            }
            Frame { width, height: y, spine_y }
        }
    }
}

/// Geometry of every edge, in page-assignment order.
pub fn arcs(layout: &Layout, opts: &RenderOptions) -> Vec<Arc> {
    let fr = frame(layout, opts);
    layout
        .pages
        .iter()
        .filter_map(|(&edge, &page)| {
            let (l, r) = layout.span(edge)?;
            let rx = (r - l) as f64 * opts.spacing / 2.0;
            Some(Arc {
                edge,
                page,
                cx: (x_of(l, opts) + x_of(r, opts)) / 2.0,
                cy: fr.spine_y[page],
                rx,
                ry: rx * aspect(page, opts),
                above: opts.mode == PageMode::Stacked || page % 2 == 1,
            })
        })
        .collect()
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Draws `layout`, labelling vertex `v` with `label(v)`.
pub fn render_arc_diagram(
    layout: &Layout,
    label: &dyn Fn(VertexId) -> String,
    highlight: &Highlight,
    opts: &RenderOptions,
) -> String {
    let fr = frame(layout, opts);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        fr.width, fr.height, fr.width, fr.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let spines: BTreeSet<u64> = fr.spine_y[1..].iter().map(|y| y.to_bits()).collect();
    for y in spines.iter().map(|&b| f64::from_bits(b)) {
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#444" stroke-width="1"/>"##,
            MARGIN / 2.0,
            fr.width - MARGIN / 2.0
        );
    }
    for a in arcs(layout, opts) {
        let (x1, x2) = (a.cx - a.rx, a.cx + a.rx);
        let sweep = if a.above { 1 } else { 0 };
        let (color, extra) = if highlight.edges.contains(&a.edge) {
            (HIGHLIGHT.to_string(), r#" stroke-width="3" stroke-dasharray="6 3""#)
        } else {
            (page_color(a.page), r#" stroke-width="1.5""#)
        };
        let _ = writeln!(
            s,
            r#"<path d="M {x1:.2} {y:.2} A {rx:.2} {ry:.2} 0 0 {sweep} {x2:.2} {y:.2}" fill="none" stroke="{color}"{extra} data-page="{p}"/>"#,
            y = a.cy,
            rx = a.rx,
            ry = a.ry,
            p = a.page
        );
    }
    for y in spines.iter().map(|&b| f64::from_bits(b)) {
        for (rank, &v) in layout.spine.order().iter().enumerate() {
            let x = x_of(rank, opts);
            if highlight.vertices.contains(&v) {
                let _ = writeln!(
                    s,
                    r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{HIGHLIGHT}"/>"#,
                    x - 5.0,
                    y - 5.0
                );
            } else {
                let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
            }
            if opts.labels {
                let _ = writeln!(
                    s,
                    r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
                    y + 16.0,
                    escape(&label(v))
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Draws a layout of `inst` (either `H`'s or a solution) with the new elements highlighted.
pub fn render_instance(inst: &Instance, layout: &Layout, opts: &RenderOptions) -> String {
    render_arc_diagram(layout, &|v| inst.name(v).to_string(), &Highlight::new_elements(inst), opts)
}

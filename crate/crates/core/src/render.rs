//! Deterministic SVG pictures of matchings: an arc diagram over the number
//! line for `d = 1`, points with McCann circles for `d = 2`.

use std::fmt::Write as _;

use crate::analysis::mccann_circles;
use crate::matching::{Matching, Method};
use crate::points::PointSet;
use crate::{Error, Result};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const DOT_RADIUS: f64 = 3.0;
const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";

fn stroke(method: Method) -> &'static str {
    match method {
        Method::Greedy => "#1b9e77",
        Method::Dyck => "#7570b3",
        Method::Optimal => "#d95f02",
        Method::Sorted => "#666666",
        Method::BruteForce => "#e7298a",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// Upper semicircle over the baseline between `x1 < x2`.
    Arc {
        x1: f64,
        x2: f64,
        baseline: f64,
    },
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
    },
    Dot {
        cx: f64,
        cy: f64,
        red: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub width: f64,
    pub height: f64,
    pub stroke: &'static str,
    pub elements: Vec<Element>,
}

impl SvgScene {
    /// Edge elements (arcs or circles), one per matched pair.
    pub fn edge_elements(&self) -> impl Iterator<Item = &Element> {
        self.elements
            .iter()
            .filter(|e| !matches!(e, Element::Dot { .. }))
    }

    /// Bounding box `(min_x, min_y, max_x, max_y)` of an element.
    pub fn extent(e: &Element) -> (f64, f64, f64, f64) {
        match *e {
            Element::Arc { x1, x2, baseline } => {
                let r = 0.5 * (x2 - x1);
                (x1, baseline - r, x2, baseline)
            }
            Element::Circle { cx, cy, r } => (cx - r, cy - r, cx + r, cy + r),
            Element::Dot { cx, cy, .. } => (
                cx - DOT_RADIUS,
                cy - DOT_RADIUS,
                cx + DOT_RADIUS,
                cy + DOT_RADIUS,
            ),
        }
    }

    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {:.3} {:.3}" width="{:.0}" height="{:.0}">"#,
            self.width, self.height, self.width, self.height
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for e in &self.elements {
            match *e {
                Element::Arc { x1, x2, baseline } => {
                    let r = 0.5 * (x2 - x1);
                    let _ = writeln!(
                        s,
                        r#"<path d="M {x1:.3} {baseline:.3} A {r:.3} {r:.3} 0 0 1 {x2:.3} {baseline:.3}" fill="none" stroke="{}" stroke-width="1.2"/>"#,
                        self.stroke
                    );
                }
                Element::Circle { cx, cy, r } => {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="{}" stroke-width="1"/>"#,
                        self.stroke
                    );
                }
                Element::Dot { cx, cy, red } => {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{DOT_RADIUS:.1}" fill="{}"/>"#,
                        if red { RED } else { BLUE }
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

/// Builds the scene for `m` over its points.
pub fn render_matching(m: &Matching, x: &PointSet, y: &PointSet) -> Result<SvgScene> {
    let inner = WIDTH - 2.0 * MARGIN;
    match x.dim() {
        1 => {
            let (lo, hi) = span(x.coords().iter().chain(y.coords()).copied());
            let scale = if hi > lo { inner / (hi - lo) } else { 0.0 };
            let sx = |v: f64| {
                if hi > lo {
                    MARGIN + (v - lo) * scale
                } else {
                    WIDTH / 2.0
                }
            };
            let max_r = m
                .edges
                .iter()
                .map(|e| 0.5 * (sx(x.point(e.i)[0]) - sx(y.point(e.j)[0])).abs())
                .fold(0.0, f64::max);
            let baseline = MARGIN + max_r;
            let mut elements = Vec::with_capacity(3 * m.n());
            for e in &m.edges {
                let (a, b) = (sx(x.point(e.i)[0]), sx(y.point(e.j)[0]));
                elements.push(Element::Arc {
                    x1: a.min(b),
                    x2: a.max(b),
                    baseline,
                });
            }
            elements.extend(x.coords().iter().map(|&v| Element::Dot {
                cx: sx(v),
                cy: baseline,
                red: true,
            }));
            elements.extend(y.coords().iter().map(|&v| Element::Dot {
                cx: sx(v),
                cy: baseline,
                red: false,
            }));
            Ok(SvgScene {
                width: WIDTH,
                height: baseline + MARGIN,
                stroke: stroke(m.method),
                elements,
            })
        }
        2 => {
            let circles = mccann_circles(m, x, y)?.circles;
            let (x_lo, x_hi) = span(
                circles
                    .iter()
                    .flat_map(|c| [c.center[0] - c.radius, c.center[0] + c.radius]),
            );
            let (y_lo, y_hi) = span(
                circles
                    .iter()
                    .flat_map(|c| [c.center[1] - c.radius, c.center[1] + c.radius]),
            );
            let extent = (x_hi - x_lo).max(y_hi - y_lo);
            let scale = if extent > 0.0 { inner / extent } else { 0.0 };
            // SVG y grows downwards
            let tx = |v: f64| MARGIN + (v - x_lo) * scale;
            let ty = |v: f64| MARGIN + (y_hi - v) * scale;
            let mut elements = Vec::with_capacity(3 * m.n());
            for c in &circles {
                elements.push(Element::Circle {
                    cx: tx(c.center[0]),
                    cy: ty(c.center[1]),
                    r: c.radius * scale,
                });
            }
            elements.extend(x.iter().map(|p| Element::Dot {
                cx: tx(p[0]),
                cy: ty(p[1]),
                red: true,
            }));
            elements.extend(y.iter().map(|p| Element::Dot {
                cx: tx(p[0]),
                cy: ty(p[1]),
                red: false,
            }));
            let height = 2.0 * MARGIN + (y_hi - y_lo) * scale;
            Ok(SvgScene {
                width: WIDTH,
                height,
                stroke: stroke(m.method),
                elements,
            })
        }
        dim => Err(Error::UnsupportedDimension {
            op: "rendering",
            dim,
            required: "d = 1 or d = 2",
        }),
    }
}

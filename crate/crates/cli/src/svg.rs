//! Deterministic SVG rendering of curves, matchings and the free-space
//! diagram.
//!
//! The left panel draws both curves with leader segments between sampled
//! matched point pairs. With `diagram` set, a second panel shows the
//! free-space diagram at the Fréchet distance, rows and columns scaled to
//! the length of the edge they correspond to, with the matching path
//! overlaid. Output depends only on the inputs.

use std::fmt::Write as _;

use lcfm::{frechet_distance, free_interval, Curve2d, ParamMatching2d, Point2d};

const PANEL: f64 = 400.0;
const MARGIN: f64 = 12.0;
const LEADERS: usize = 32;

fn fmt(v: f64) -> String {
    // Two decimals are plenty for drawing coordinates and keep files small.
    format!("{v:.2}")
}

struct View {
    min: Point2d,
    scale: f64,
    x0: f64,
    y0: f64,
}

impl View {
    fn fit(curves: [&Curve2d; 2]) -> View {
        let mut min = Point2d::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2d::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for c in curves {
            for v in c.vertices() {
                min.x = min.x.min(v.x);
                min.y = min.y.min(v.y);
                max.x = max.x.max(v.x);
                max.y = max.y.max(v.y);
            }
        }
        let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
        View {
            min,
            scale: PANEL / span,
            x0: MARGIN,
            y0: MARGIN,
        }
    }

    fn map(&self, p: Point2d) -> (f64, f64) {
        (
            self.x0 + (p.x - self.min.x) * self.scale,
            // SVG y grows downward.
            self.y0 + PANEL - (p.y - self.min.y) * self.scale,
        )
    }
}

fn polyline(out: &mut String, class: &str, stroke: &str, pts: &[(f64, f64)]) {
    let _ = write!(out, r#"<polyline class="{class}" fill="none" stroke="{stroke}" points=""#);
    for (k, (x, y)) in pts.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", fmt(*x), fmt(*y));
    }
    out.push_str("\"/>\n");
}

/// Renders both curves, leader segments for the matching, and optionally
/// the free-space diagram with the matching path overlaid.
pub fn render_svg(
    p: &Curve2d,
    q: &Curve2d,
    matching: Option<&ParamMatching2d>,
    diagram: bool,
) -> String {
    let draw_diagram = diagram && p.edge_count() >= 1 && q.edge_count() >= 1;
    let width = if draw_diagram {
        2.0 * PANEL + 3.0 * MARGIN
    } else {
        PANEL + 2.0 * MARGIN
    };
    let height = PANEL + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        fmt(width),
        fmt(height)
    );

    let view = View::fit([p, q]);
    // Leaders go underneath the curves.
    if let Some(m) = matching {
        let path = m.path();
        for k in 0..LEADERS {
            let t = if path.len() == 1 {
                0.0
            } else {
                k as f64 * (path.len() - 1) as f64 / (LEADERS - 1) as f64
            };
            let idx = (t.floor() as usize).min(path.len() - 1);
            let frac = t - idx as f64;
            let pt = if frac == 0.0 || idx + 1 >= path.len() {
                path[idx]
            } else {
                lcfm::ParamPoint2d::new(
                    path[idx].x + frac * (path[idx + 1].x - path[idx].x),
                    path[idx].y + frac * (path[idx + 1].y - path[idx].y),
                )
            };
            let a = view.map(p.point_at(pt.x).expect("matching in range"));
            let b = view.map(q.point_at(pt.y).expect("matching in range"));
            let _ = writeln!(
                out,
                r##"<line class="leader" stroke="#bbbbbb" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
                fmt(a.0),
                fmt(a.1),
                fmt(b.0),
                fmt(b.1)
            );
        }
    }
    let pts: Vec<(f64, f64)> = p.vertices().iter().map(|&v| view.map(v)).collect();
    polyline(&mut out, "curve", "#1f77b4", &pts);
    let pts: Vec<(f64, f64)> = q.vertices().iter().map(|&v| view.map(v)).collect();
    polyline(&mut out, "curve", "#d62728", &pts);

    if draw_diagram {
        render_diagram(&mut out, p, q, matching);
    }
    out.push_str("</svg>\n");
    out
}

/// Cumulative arc lengths at the vertices, so rows and columns take up
/// space proportional to the edge they correspond to.
fn arc_scale(c: &Curve2d) -> Vec<f64> {
    let mut cum = vec![0.0];
    for i in 0..c.edge_count() {
        let len = c.vertex(i).distance(c.vertex(i + 1));
        cum.push(cum.last().unwrap() + len);
    }
    cum
}

fn render_diagram(out: &mut String, p: &Curve2d, q: &Curve2d, matching: Option<&ParamMatching2d>) {
    let eps = frechet_distance(p, q);
    let (m, n) = (p.edge_count(), q.edge_count());
    let cum_p = arc_scale(p);
    let cum_q = arc_scale(q);
    let total_p = *cum_p.last().unwrap();
    let total_q = *cum_q.last().unwrap();
    let x0 = PANEL + 2.0 * MARGIN;
    let y0 = MARGIN;
    let sx = PANEL / total_p.max(1e-9);
    let sy = PANEL / total_q.max(1e-9);
    let to_px = |x: f64| -> f64 {
        let c = (x.floor() as usize).min(m - 1);
        let t = x - c as f64;
        x0 + (cum_p[c] + t * (cum_p[c + 1] - cum_p[c])) * sx
    };
    let to_py = |y: f64| -> f64 {
        let r = (y.floor() as usize).min(n - 1);
        let t = y - r as f64;
        y0 + PANEL - (cum_q[r] + t * (cum_q[r + 1] - cum_q[r])) * sy
    };

    // Shaded background; the free region is drawn on top as thin vertical
    // strips sampled along each cell column.
    let _ = writeln!(
        out,
        r##"<rect class="blocked" x="{}" y="{}" width="{}" height="{}" fill="#9a9a9a"/>"##,
        fmt(x0),
        fmt(y0),
        fmt(PANEL),
        fmt(PANEL)
    );
    const STRIPS: usize = 24;
    for c in 0..m {
        let seg_px = (to_px(c as f64 + 1.0) - to_px(c as f64)) / STRIPS as f64;
        for k in 0..STRIPS {
            let x_mid = c as f64 + (k as f64 + 0.5) / STRIPS as f64;
            let sample = p.point_at(x_mid).expect("sample in range");
            let strip_x = to_px(c as f64) + k as f64 * seg_px;
            for r in 0..n {
                let free = free_interval(sample, q.edge(r), eps).expect("valid edge");
                if let Some((lo, hi)) = free.bounds() {
                    let y_top = to_py(r as f64 + hi);
                    let y_bot = to_py(r as f64 + lo);
                    let _ = writeln!(
                        out,
                        r##"<rect class="free" x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>"##,
                        fmt(strip_x),
                        fmt(y_top),
                        fmt(seg_px.max(0.1)),
                        fmt((y_bot - y_top).max(0.0))
                    );
                }
            }
        }
    }
    // Cell boundaries.
    for c in 0..=m {
        let x = to_px((c as f64).min(m as f64 - 1e-12)).max(x0);
        let x = if c == m { x0 + PANEL } else { x };
        let _ = writeln!(
            out,
            r##"<line class="grid" stroke="#666666" stroke-width="0.5" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
            fmt(x),
            fmt(y0),
            fmt(x),
            fmt(y0 + PANEL)
        );
    }
    for r in 0..=n {
        let y = if r == n { y0 } else { to_py(r as f64) };
        let _ = writeln!(
            out,
            r##"<line class="grid" stroke="#666666" stroke-width="0.5" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
            fmt(x0),
            fmt(y),
            fmt(x0 + PANEL),
            fmt(y)
        );
    }
    if let Some(matching) = matching {
        let pts: Vec<(f64, f64)> = matching
            .path()
            .iter()
            .map(|pt| (to_px(pt.x.min(m as f64)), to_py(pt.y.min(n as f64))))
            .collect();
        polyline(out, "matchpath", "#d62728", &pts);
    }
}

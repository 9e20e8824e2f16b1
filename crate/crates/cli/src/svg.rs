//! SVG 1.1 rendering of a line pair over its checkerboard regions.

use std::fmt::Write;

use twocut::{LinePair, OrientedLine, Point};

type P = (f64, f64);

/// Canvas and styling. The two region fills must differ.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub even_fill: String,
    pub odd_fill: String,
    pub point_radius: f64,
    pub line_stroke: String,
    pub line_width: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 640,
            height: 640,
            even_fill: "#add8e6".into(),
            odd_fill: "#3cb371".into(),
            point_radius: 4.0,
            line_stroke: "#202020".into(),
            line_width: 1.5,
        }
    }
}

const SET_COLORS: [&str; 5] = ["#d62728", "#1f1f9f", "#ff7f0e", "#8c2d9c", "#5a3a1a"];

/// Everything drawn besides the regions.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub sets: Vec<(String, Vec<Point>)>,
    pub polygons: Vec<(String, Vec<Point>)>,
    pub marker: Option<Point>,
}

impl Scene {
    fn extent(&self) -> [f64; 4] {
        let mut all: Vec<P> = self
            .sets
            .iter()
            .chain(self.polygons.iter())
            .flat_map(|(_, pts)| pts.iter().map(Point::to_f64))
            .collect();
        all.extend(self.marker.iter().map(Point::to_f64));
        if all.is_empty() {
            return [-1.0, 1.0, -1.0, 1.0];
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for (x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        // square, padded
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = ((x1 - x0).max(y1 - y0) / 2.0).max(0.5) * 1.15;
        [cx - half, cx + half, cy - half, cy + half]
    }
}

fn clip(poly: &[P], l: [f64; 3]) -> Vec<P> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let vp = l[0] * p.0 + l[1] * p.1 + l[2];
        let vq = l[0] * q.0 + l[1] * q.1 + l[2];
        if vp >= 0.0 {
            out.push(p);
        }
        if (vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0) {
            let t = vp / (vp - vq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

fn coeffs(l: &OrientedLine) -> [f64; 3] {
    let (a, b, c) = l.to_f64();
    [a, b, c]
}

fn neg(l: [f64; 3]) -> [f64; 3] {
    [-l[0], -l[1], -l[2]]
}

/// Endpoints of `l` inside the rectangle, if it crosses it.
fn chord(l: [f64; 3], rect: &[P]) -> Option<(P, P)> {
    let scale = rect
        .iter()
        .map(|p| (l[0] * p.0).abs() + (l[1] * p.1).abs() + l[2].abs())
        .fold(0.0, f64::max);
    let on: Vec<P> = clip(rect, l)
        .into_iter()
        .filter(|p| (l[0] * p.0 + l[1] * p.1 + l[2]).abs() <= 1e-9 * scale)
        .collect();
    match on.as_slice() {
        [a, .., b] if a != b => Some((*a, *b)),
        _ => None,
    }
}

pub fn render(spec: &RenderSpec, scene: &Scene, pair: Option<&LinePair>) -> String {
    let [x0, x1, y0, y1] = scene.extent();
    let (w, h) = (spec.width as f64, spec.height as f64);
    let map = |p: P| ((p.0 - x0) / (x1 - x0) * w, (y1 - p.1) / (y1 - y0) * h);
    let path = |poly: &[P]| {
        let mut d = String::new();
        for (i, p) in poly.iter().enumerate() {
            let (sx, sy) = map(*p);
            let _ = write!(d, "{}{sx:.3},{sy:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    };
    let rect = vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)];

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(out, r#"  <rect width="{}" height="{}" fill="white"/>"#, spec.width, spec.height);

    if let Some(pair) = pair {
        let (l1, l2) = (coeffs(&pair.first), coeffs(&pair.second));
        let _ = writeln!(out, r#"  <g id="regions" stroke="none">"#);
        for (a, b, even) in [(l1, l2, true), (neg(l1), neg(l2), true), (l1, neg(l2), false), (neg(l1), l2, false)] {
            let piece = clip(&clip(&rect, a), b);
            if piece.len() < 3 {
                continue;
            }
            let (fill, class) = if even {
                (&spec.even_fill, "even")
            } else {
                (&spec.odd_fill, "odd")
            };
            let _ = writeln!(out, r#"    <path class="region {class}" fill="{fill}" d="{}"/>"#, path(&piece));
        }
        let _ = writeln!(out, "  </g>");
        let _ = writeln!(
            out,
            r#"  <g id="lines" stroke="{}" stroke-width="{}" fill="none">"#,
            spec.line_stroke, spec.line_width
        );
        for (k, l) in [&pair.first, &pair.second].into_iter().enumerate() {
            if l.is_at_infinity() {
                let _ = writeln!(
                    out,
                    r#"    <rect class="line-at-infinity" x="1" y="1" width="{}" height="{}" stroke-dasharray="6,4"/>"#,
                    spec.width - 2,
                    spec.height - 2
                );
                let _ = writeln!(
                    out,
                    r#"    <text x="6" y="16" font-family="sans-serif" font-size="12" fill="{}" stroke="none">line {} at infinity</text>"#,
                    spec.line_stroke,
                    k + 1
                );
            } else if let Some((a, b)) = chord(coeffs(l), &rect) {
                let (p, q) = (map(a), map(b));
                let _ = writeln!(
                    out,
                    r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                    p.0, p.1, q.0, q.1
                );
            }
        }
        let _ = writeln!(out, "  </g>");
    }

    for (name, poly) in &scene.polygons {
        let pts: Vec<P> = poly.iter().map(Point::to_f64).collect();
        let _ = writeln!(
            out,
            r##"  <path class="polygon" data-name="{}" fill="none" stroke="#404040" stroke-width="1" d="{}"/>"##,
            escape(name),
            path(&pts)
        );
    }
    for (i, (name, pts)) in scene.sets.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <g class="set" data-name="{}" fill="{}">"#,
            escape(name),
            SET_COLORS[i % SET_COLORS.len()]
        );
        for p in pts {
            let (sx, sy) = map(p.to_f64());
            let _ = writeln!(out, r#"    <circle cx="{sx:.3}" cy="{sy:.3}" r="{}"/>"#, spec.point_radius);
        }
        let _ = writeln!(out, "  </g>");
    }
    if let Some(q) = &scene.marker {
        let (sx, sy) = map(q.to_f64());
        let r = spec.point_radius * 1.5;
        let _ = writeln!(
            out,
            r#"  <path class="marker" stroke="black" stroke-width="1.5" d="M{:.3},{:.3} L{:.3},{:.3} M{:.3},{:.3} L{:.3},{:.3}"/>"#,
            sx - r,
            sy - r,
            sx + r,
            sy + r,
            sx - r,
            sy + r,
            sx + r,
            sy - r
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

//! Minimal SVG document builder shared by the figure emitters.

use std::fmt::Write;

pub struct SvgDoc {
    buf: String,
    scale: f64,
    offset: (f64, f64),
}

impl SvgDoc {
    /// A square canvas mapping the world box [−extent, extent]² to
    /// `pixels`×`pixels`, with the y axis pointing up.
    pub fn new(pixels: f64, extent: f64) -> Self {
        let mut buf = String::new();
        writeln!(
            buf,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
            pixels
        )
        .unwrap();
        SvgDoc { buf, scale: pixels / (2.0 * extent), offset: (extent, extent) }
    }

    pub fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x + self.offset.0) * self.scale, (self.offset.1 - y) * self.scale)
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            let (px, py) = self.to_px(*x, *y);
            write!(d, "{}{:.3},{:.3} ", if i == 0 { "M" } else { "L" }, px, py).unwrap();
        }
        writeln!(
            self.buf,
            r#"<path d="{}" fill="none" stroke="{}" stroke-width="{:.2}"/>"#,
            d.trim(),
            stroke,
            width
        )
        .unwrap();
    }

    pub fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str, width: f64) {
        let mut d = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            let (px, py) = self.to_px(*x, *y);
            write!(d, "{}{:.3},{:.3} ", if i == 0 { "M" } else { "L" }, px, py).unwrap();
        }
        writeln!(
            self.buf,
            r#"<path d="{}Z" fill="{}" stroke="{}" stroke-width="{:.2}"/>"#,
            d.trim(),
            fill,
            stroke,
            width
        )
        .unwrap();
    }

    pub fn circle(&mut self, cx: f64, cy: f64, world_r: f64, stroke: &str, width: f64) {
        let (px, py) = self.to_px(cx, cy);
        writeln!(
            self.buf,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="{}" stroke-width="{:.2}"/>"#,
            px,
            py,
            world_r * self.scale,
            stroke,
            width
        )
        .unwrap();
    }

    pub fn text(&mut self, x: f64, y: f64, size_px: f64, content: &str) {
        let (px, py) = self.to_px(x, y);
        writeln!(
            self.buf,
            r#"<text x="{:.3}" y="{:.3}" font-size="{:.1}" text-anchor="middle" font-family="sans-serif">{}</text>"#,
            px, py, size_px, content
        )
        .unwrap();
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

/// Octagon + trajectory figure: the surface sides with labels, trajectory
/// chords, and optionally a family of extra segments (affine side images).
pub fn octagon_figure(
    chords: &[Vec<(f64, f64)>],
    extra_segments: &[((f64, f64), (f64, f64))],
) -> String {
    let mut doc = SvgDoc::new(760.0, 2.7);
    let verts: Vec<(f64, f64)> = crate::surface::VERTICES
        .iter()
        .map(|(x, y)| (x.to_float(), y.to_float()))
        .collect();
    doc.polygon(&verts, "none", "#222222", 2.0);
    for side in crate::surface::SIDES.iter() {
        let a = &verts[side.index];
        let b = &verts[(side.index + 1) % 8];
        let mx = (a.0 + b.0) / 2.0 * 1.09;
        let my = (a.1 + b.1) / 2.0 * 1.09;
        doc.text(mx, my, 26.0, &side.label.as_char().to_string());
    }
    for seg in extra_segments {
        doc.polyline(&[seg.0, seg.1], "#2b7de9", 1.2);
    }
    for chord in chords {
        doc.polyline(chord, "#d62728", 1.6);
    }
    doc.finish()
}

/// Graph of a piecewise map in angle coordinates on [0, π]².
pub fn map_graph_figure(branches: &[Vec<(f64, f64)>], title: &str) -> String {
    let pi = std::f64::consts::PI;
    let mut doc = SvgDoc::new(700.0, 0.55 * pi);
    let shift = |t: f64| t - 0.5 * pi;
    doc.polygon(
        &[
            (shift(0.0), shift(0.0)),
            (shift(pi), shift(0.0)),
            (shift(pi), shift(pi)),
            (shift(0.0), shift(pi)),
        ],
        "none",
        "#999999",
        1.0,
    );
    for k in 1..8 {
        let b = k as f64 * pi / 8.0;
        doc.polyline(&[(shift(b), shift(0.0)), (shift(b), shift(pi))], "#dddddd", 0.6);
    }
    doc.polyline(&[(shift(0.0), shift(0.0)), (shift(pi), shift(pi))], "#bbbbbb", 0.8);
    for branch in branches {
        let pts: Vec<(f64, f64)> = branch.iter().map(|(x, y)| (shift(*x), shift(*y))).collect();
        doc.polyline(&pts, "#d62728", 1.5);
    }
    doc.text(0.0, 0.52 * pi, 22.0, title);
    doc.finish()
}

/// A loose well-formedness check used by tests: tags balance and the
/// document parses as nested elements.
pub fn is_well_formed_xml(s: &str) -> bool {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = s;
    while let Some(start) = rest.find('<') {
        let Some(end_rel) = rest[start..].find('>') else { return false };
        let tag = &rest[start + 1..start + end_rel];
        rest = &rest[start + end_rel + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            match stack.pop() {
                Some(open) if open == name => {}
                _ => return false,
            }
        } else if tag.ends_with('/') {
            continue;
        } else {
            let name: String = tag.split_whitespace().next().unwrap_or("").to_string();
            if name.is_empty() {
                return false;
            }
            stack.push(name);
        }
    }
    stack.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_are_well_formed() {
        let doc = octagon_figure(&[vec![(0.0, 0.0), (1.0, 1.0)]], &[]);
        assert!(doc.starts_with("<?xml"));
        assert!(is_well_formed_xml(&doc));
        let graph = map_graph_figure(&crate::cfmaps::farey_graph(12), "F");
        assert!(is_well_formed_xml(&graph));
        assert!(!is_well_formed_xml("<svg><g></svg>"));
    }
}

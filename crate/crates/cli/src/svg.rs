//! Static SVG 1.1 pictures of plane tropical curves. Everything is drawn in
//! a square box around the curve's vertices; rays and lines are cut off at
//! the box.

use std::fmt::Write;

use num_traits::ToPrimitive;

use tropint::intersect::IntersectionPoint;
use tropint::lattice::IntVector;
use tropint::polytope::Rational;
use tropint::tropical::HypersurfaceComplex;

const SIZE: f64 = 480.0;
const INSET: f64 = 120.0;
const COLORS: [&str; 2] = ["#1f5fbf", "#c0392b"];

fn f(q: &Rational) -> f64 {
    q.to_f64().expect("finite rational")
}

fn fv(v: &IntVector) -> (f64, f64) {
    (v[0].to_f64().expect("small entry"), v[1].to_f64().expect("small entry"))
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    origin: (f64, f64),
    direction: (f64, f64),
    lo: f64,
    hi: f64,
}

/// Facets as parametrized pieces with their weights.
fn pieces(h: &HypersurfaceComplex) -> Vec<(Piece, String)> {
    let mut out = Vec::new();
    for facet in &h.facets {
        let w = facet.weight.to_string();
        if !h.lineality.is_empty() {
            let base = (f(&facet.base[0]), f(&facet.base[1]));
            out.push((
                Piece { origin: base, direction: fv(&facet.directions[0]), lo: f64::NEG_INFINITY, hi: f64::INFINITY },
                w,
            ));
            continue;
        }
        let vs: Vec<(f64, f64)> =
            facet.vertices.iter().map(|&i| (f(&h.vertices[i][0]), f(&h.vertices[i][1]))).collect();
        match vs.as_slice() {
            [a, b] => out.push((Piece { origin: *a, direction: (b.0 - a.0, b.1 - a.1), lo: 0.0, hi: 1.0 }, w)),
            [a] => {
                for r in &facet.rays {
                    out.push((Piece { origin: *a, direction: fv(r), lo: 0.0, hi: f64::INFINITY }, w.clone()));
                }
            }
            _ => {}
        }
    }
    out
}

struct View {
    cx: f64,
    cy: f64,
    half: f64,
}

impl View {
    fn around(points: &[(f64, f64)]) -> View {
        if points.is_empty() {
            return View { cx: 0.0, cy: 0.0, half: 2.0 };
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let extent = (x1 - x0).max(y1 - y0);
        View { cx: (x0 + x1) / 2.0, cy: (y0 + y1) / 2.0, half: extent / 2.0 + (0.3 * extent).max(1.0) }
    }

    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        let s = SIZE / (2.0 * self.half);
        ((p.0 - self.cx + self.half) * s, (self.cy + self.half - p.1) * s)
    }

    /// Liang–Barsky clip of the piece to the box.
    fn clip(&self, p: &Piece) -> Option<((f64, f64), (f64, f64))> {
        let (mut lo, mut hi) = (p.lo, p.hi);
        let bounds = [
            (p.direction.0, p.origin.0, self.cx - self.half, self.cx + self.half),
            (p.direction.1, p.origin.1, self.cy - self.half, self.cy + self.half),
        ];
        for (d, o, min, max) in bounds {
            if d == 0.0 {
                if o < min || o > max {
                    return None;
                }
                continue;
            }
            let (a, b) = ((min - o) / d, (max - o) / d);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        if lo > hi {
            return None;
        }
        let at = |t: f64| (p.origin.0 + t * p.direction.0, p.origin.1 + t * p.direction.1);
        Some((at(lo), at(hi)))
    }
}

fn header(out: &mut String) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"#);
}

fn curve(out: &mut String, view: &View, h: &HypersurfaceComplex, color: &str) {
    let _ = writeln!(out, r#"<g stroke="{color}" stroke-width="2" fill="none">"#);
    let mut labels = Vec::new();
    for (piece, w) in pieces(h) {
        if let Some((a, b)) = view.clip(&piece) {
            let (a, b) = (view.px(a), view.px(b));
            let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, a.0, a.1, b.0, b.1);
            if w != "1" {
                labels.push(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0, w));
            }
        }
    }
    let _ = writeln!(out, "</g>");
    for (x, y, w) in labels {
        let _ =
            writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{color}">{w}</text>"#, x + 4.0, y - 4.0);
    }
}

fn polygon_order(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = points.len() as f64;
    let c = (points.iter().map(|p| p.0).sum::<f64>() / n, points.iter().map(|p| p.1).sum::<f64>() / n);
    let mut v = points.to_vec();
    v.sort_by(|a, b| (a.1 - c.1).atan2(a.0 - c.0).total_cmp(&(b.1 - c.1).atan2(b.0 - c.0)));
    v
}

/// Newton polygon with the regular subdivision, bottom right.
fn newton_inset(out: &mut String, h: &HypersurfaceComplex) {
    let support: Vec<(f64, f64)> = h.polynomial.support().iter().map(fv).collect();
    let (x0, y0) = support.iter().fold((f64::INFINITY, f64::INFINITY), |m, p| (m.0.min(p.0), m.1.min(p.1)));
    let range = support.iter().map(|p| (p.0 - x0).max(p.1 - y0)).fold(1.0, f64::max);
    let pad = 10.0;
    let scale = (INSET - 2.0 * pad) / range;
    let left = SIZE - INSET;
    let px = |p: (f64, f64)| (left + pad + (p.0 - x0) * scale, SIZE - pad - (p.1 - y0) * scale);
    let _ = writeln!(
        out,
        r##"<rect x="{left:.2}" y="{left:.2}" width="{INSET}" height="{INSET}" fill="#f4f4f4" stroke="#888888"/>"##
    );
    let _ = writeln!(out, r##"<g stroke="#555555" stroke-width="1" fill="none">"##);
    for cell in &h.subdivision {
        let vs: Vec<(f64, f64)> = cell.polytope().vertices().iter().map(|v| px(fv(v))).collect();
        let path: Vec<String> = polygon_order(&vs).iter().map(|p| format!("{:.2},{:.2}", p.0, p.1)).collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, path.join(" "));
    }
    let _ = writeln!(out, "</g>");
    for p in &support {
        let q = px(*p);
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="black"/>"#, q.0, q.1);
    }
}

fn anchor_points(h: &HypersurfaceComplex) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = h.vertices.iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    if !h.lineality.is_empty() {
        pts.extend(h.facets.iter().map(|fa| (f(&fa.base[0]), f(&fa.base[1]))));
    }
    pts
}

/// A plane curve with its Newton polygon and subdivision.
pub fn hypersurface_svg(h: &HypersurfaceComplex) -> String {
    let view = View::around(&anchor_points(h));
    let mut out = String::new();
    header(&mut out);
    curve(&mut out, &view, h, COLORS[0]);
    newton_inset(&mut out, h);
    out.push_str("</svg>\n");
    out
}

/// Both curves, with intersection points sized by multiplicity.
pub fn intersection_svg(h1: &HypersurfaceComplex, h2: &HypersurfaceComplex, points: &[IntersectionPoint]) -> String {
    let mut anchors = anchor_points(h1);
    anchors.extend(anchor_points(h2));
    anchors.extend(points.iter().map(|p| (f(&p.location[0]), f(&p.location[1]))));
    let view = View::around(&anchors);
    let mut out = String::new();
    header(&mut out);
    curve(&mut out, &view, h1, COLORS[0]);
    curve(&mut out, &view, h2, COLORS[1]);
    for p in points {
        let c = view.px((f(&p.location[0]), f(&p.location[1])));
        let r = 3.0 + 2.0 * p.multiplicity.to_f64().unwrap_or(1.0);
        let _ =
            writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="black" fill-opacity="0.6"/>"#, c.0, c.1);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            c.0 + r + 2.0,
            c.1 - r,
            p.multiplicity
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropint::tropical::{hypersurface, TropicalPolynomial};

    #[test]
    fn draws_three_rays_and_inset() {
        let p = TropicalPolynomial::from_integers(&[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)]).unwrap();
        let svg = hypersurface_svg(&hypersurface(&p).unwrap());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line ").count(), 3);
        assert_eq!(svg.matches("<polygon ").count(), 1);
        assert_eq!(svg.matches("<circle ").count(), 3);
    }

    #[test]
    fn lines_without_vertices_are_clipped() {
        let p = TropicalPolynomial::from_integers(&[(&[0, 0], 0), (&[2, 2], 1)]).unwrap();
        let svg = hypersurface_svg(&hypersurface(&p).unwrap());
        assert_eq!(svg.matches("<line ").count(), 1);
        assert!(svg.contains(">2</text>"));
    }
}

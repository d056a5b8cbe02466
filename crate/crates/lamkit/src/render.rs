//! SVG drawings of slices in the Poincare disk.
//!
//! Floating point appears only here, when angles become coordinates.
//! Coordinates are printed with 6 decimals, so output is a pure function of
//! the slice and the spec.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::circle::{Angle, Chord};
use crate::lamination::{GapKind, Generator, LaminationSlice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeodesicStyle {
    /// Circular arcs orthogonal to the unit circle.
    Hyperbolic,
    Straight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub size: u32,
    pub stroke_width: f64,
    pub style: GeodesicStyle,
    /// Labels of finite gap generators to shade.
    pub highlight: Vec<String>,
    /// Shade every finite gap formed by the leaves.
    pub fill_gaps: bool,
    pub background: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 600,
            stroke_width: 0.6,
            style: GeodesicStyle::Hyperbolic,
            highlight: Vec::new(),
            fill_gaps: false,
            background: true,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

struct Disk {
    c: f64,
    r: f64,
    style: GeodesicStyle,
}

impl Disk {
    fn point(&self, a: &Angle) -> (f64, f64) {
        let t = a.value().to_f64().unwrap_or(0.0) * TAU;
        (self.c + self.r * t.cos(), self.c - self.r * t.sin())
    }

    /// Path segment from `s` to `t`, assuming the pen is at `s`.
    fn segment(&self, s: &Angle, t: &Angle) -> String {
        let (x, y) = self.point(t);
        let len = s.dist_to(t);
        let half = num_rational::BigRational::new(1.into(), 2.into());
        if self.style == GeodesicStyle::Straight || len == half {
            return format!("L {} {}", num(x), num(y));
        }
        // Orthogonal circle radius is R tan(theta / 2) over the short arc.
        let (short, sweep) = if len < half { (len.to_f64().unwrap(), 1) } else { (1.0 - len.to_f64().unwrap(), 0) };
        let rad = self.r * (short * TAU / 2.0).tan();
        format!("A {} {} 0 0 {sweep} {} {}", num(rad), num(rad), num(x), num(y))
    }

    fn chord(&self, c: &Chord) -> String {
        let (x, y) = self.point(c.lo());
        format!("M {} {} {}", num(x), num(y), self.segment(c.lo(), c.hi()))
    }

    /// Closed polygon through sorted vertices.
    fn polygon(&self, v: &[Angle]) -> String {
        let (x, y) = self.point(&v[0]);
        let mut d = format!("M {} {}", num(x), num(y));
        for i in 0..v.len() {
            d.push(' ');
            d.push_str(&self.segment(&v[i], &v[(i + 1) % v.len()]));
        }
        d.push_str(" Z");
        d
    }
}

/// Vertex sets of connected leaf components with at least three vertices.
fn finite_gaps(s: &LaminationSlice) -> Vec<Vec<Angle>> {
    let mut adj: BTreeMap<&Angle, Vec<&Angle>> = BTreeMap::new();
    for c in s.chords() {
        adj.entry(c.lo()).or_default().push(c.hi());
        adj.entry(c.hi()).or_default().push(c.lo());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start.clone()];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    comp.push(y.clone());
                    stack.push(y);
                }
            }
        }
        if comp.len() >= 3 {
            comp.sort();
            out.push(comp);
        }
    }
    out
}

/// One `<path class="leaf">` per leaf, in canonical chord order.
pub fn render_svg(s: &LaminationSlice, spec: &RenderSpec) -> String {
    let size = f64::from(spec.size);
    let disk = Disk { c: size / 2.0, r: size / 2.0 - 4.0, style: spec.style };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.size
    );
    let _ = writeln!(out, "<desc>degree {} depth {} leaves {}</desc>", s.degree(), s.depth(), s.leaves().len());
    if spec.background {
        let _ = writeln!(out, r#"<rect x="0" y="0" width="{0}" height="{0}" fill="white"/>"#, spec.size);
    }
    let mut shaded: Vec<Vec<Angle>> = Vec::new();
    if spec.fill_gaps {
        shaded.extend(finite_gaps(s));
    }
    for g in s.generators() {
        if let Generator::Gap(desc) = g {
            if let GapKind::Finite { vertices } = &desc.kind {
                if spec.highlight.contains(&desc.label) && !shaded.contains(vertices) {
                    shaded.push(vertices.clone());
                }
            }
        }
    }
    for v in &shaded {
        let _ = writeln!(out, r##"<path class="gap" d="{}" fill="#c8c8c8" stroke="none"/>"##, disk.polygon(v));
    }
    let _ = writeln!(
        out,
        r#"<circle cx="{0}" cy="{0}" r="{1}" fill="none" stroke="black" stroke-width="{2}"/>"#,
        num(disk.c),
        num(disk.r),
        num(spec.stroke_width * 2.0)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{}">"#, num(spec.stroke_width));
    for c in s.chords() {
        let _ = writeln!(out, r#"<path class="leaf" d="{}"/>"#, disk.chord(c));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Number of leaf paths in an SVG produced by [`render_svg`].
pub fn count_leaves(svg: &str) -> usize {
    svg.matches(r#"<path class="leaf""#).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn slice(chords: &[&str]) -> LaminationSlice {
        LaminationSlice::from_chords(3, 1, chords.iter().map(|s| c(s)).collect(), vec![])
    }

    #[test]
    fn empty_is_circle_only() {
        let svg = render_svg(&slice(&[]), &RenderSpec::default());
        assert!(svg.contains("<circle"));
        assert_eq!(count_leaves(&svg), 0);
    }

    #[test]
    fn diameter_is_straight() {
        let svg = render_svg(&slice(&["0-1/2"]), &RenderSpec::default());
        assert!(svg.contains(r#"d="M 596.000000 300.000000 L 4.000000 300.000000""#));
    }

    #[test]
    fn arc_is_orthogonal() {
        // Quarter chord: orthogonal circle radius equals R.
        let svg = render_svg(&slice(&["0-1/4"]), &RenderSpec::default());
        assert!(svg.contains("A 296.000000 296.000000 0 0 1 300.000000 4.000000"));
        let svg = render_svg(&slice(&["1/4-0"]), &RenderSpec::default());
        assert!(svg.contains("A 296.000000 296.000000 0 0 1 300.000000 4.000000"));
    }

    #[test]
    fn long_way_round_flips_sweep() {
        let svg = render_svg(&slice(&["1/8-7/8"]), &RenderSpec::default());
        assert!(svg.contains(" 0 0 0 "));
    }

    #[test]
    fn fill_gaps_shades_triangles() {
        let s = slice(&["1/7-2/7", "2/7-4/7", "1/7-4/7"]);
        let spec = RenderSpec { fill_gaps: true, ..RenderSpec::default() };
        let svg = render_svg(&s, &spec);
        assert_eq!(svg.matches(r#"class="gap""#).count(), 1);
        assert_eq!(count_leaves(&svg), 3);
    }

    #[test]
    fn output_is_stable() {
        let s = slice(&["1/8-3/8", "5/8-7/8", "0-1/2"]);
        assert_eq!(render_svg(&s, &RenderSpec::default()), render_svg(&s, &RenderSpec::default()));
    }
}

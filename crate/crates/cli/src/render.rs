//! Deterministic SVG figures.
//!
//! Layers, bottom to top: the body (filled), reflections `2z − K` (outlined),
//! `A_K` (hatched), point markers. The hatch pattern is drawn with a path so
//! that `<polygon>` elements correspond one to one with bodies.

use std::fmt::Write;

use midset::geom::{rat_to_f64, Body, Point};

#[derive(Default)]
pub struct Figure {
    pub body: Vec<[f64; 2]>,
    pub reflections: Vec<Vec<[f64; 2]>>,
    pub a_body: Option<Vec<[f64; 2]>>,
    pub markers: Vec<[f64; 2]>,
}

pub fn float_ring(b: &Body) -> Vec<[f64; 2]> {
    b.vertices().iter().map(float_point).collect()
}

pub fn float_point(p: &Point) -> [f64; 2] {
    [rat_to_f64(&p.x), rat_to_f64(&p.y)]
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// SVG `points` attribute; `y` is flipped so the figure reads upright.
fn points_attr(ring: &[[f64; 2]]) -> String {
    ring.iter()
        .map(|p| format!("{},{}", num(p[0]), num(-p[1])))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Figure {
    fn extent(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let all = self
            .body
            .iter()
            .chain(self.reflections.iter().flatten())
            .chain(self.a_body.iter().flatten())
            .chain(self.markers.iter());
        for p in all {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.extent();
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let (mx, my) = (
            0.05 * (hi[0] - lo[0]).max(span * 1e-3),
            0.05 * (hi[1] - lo[1]).max(span * 1e-3),
        );
        let (x0, y0) = (lo[0] - mx, -hi[1] - my);
        let (w, h) = (hi[0] - lo[0] + 2.0 * mx, hi[1] - lo[1] + 2.0 * my);
        let stroke = num(span * 4e-3);
        let radius = num(span * 1.2e-2);

        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="{}">"#,
            num(x0),
            num(y0),
            num(w),
            num(h),
            num((640.0 * h / w).round()),
        )
        .unwrap();
        if self.a_body.is_some() {
            let cell = span * 2e-2;
            writeln!(
                s,
                r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="{c}" height="{c}" patternTransform="rotate(45)"><path d="M 0 0 L 0 {c}" stroke="#b03a2e" stroke-width="{sw}"/></pattern></defs>"##,
                c = num(cell),
                sw = num(cell * 0.3),
            )
            .unwrap();
        }
        writeln!(
            s,
            r##"<g id="body"><polygon points="{}" fill="#aed6f1" stroke="#1b4f72" stroke-width="{stroke}"/></g>"##,
            points_attr(&self.body)
        )
        .unwrap();
        if !self.reflections.is_empty() {
            s.push_str("<g id=\"reflections\">\n");
            for r in &self.reflections {
                writeln!(
                    s,
                    r##"<polygon points="{}" fill="none" stroke="#7d3c98" stroke-width="{stroke}" stroke-dasharray="{d} {d}"/>"##,
                    points_attr(r),
                    d = num(span * 1.5e-2),
                )
                .unwrap();
            }
            s.push_str("</g>\n");
        }
        if let Some(a) = &self.a_body {
            writeln!(
                s,
                r##"<g id="a-body"><polygon points="{}" fill="url(#hatch)" stroke="#b03a2e" stroke-width="{stroke}"/></g>"##,
                points_attr(a)
            )
            .unwrap();
        }
        if !self.markers.is_empty() {
            s.push_str("<g id=\"markers\">\n");
            for m in &self.markers {
                writeln!(
                    s,
                    r##"<circle class="marker" cx="{}" cy="{}" r="{radius}" fill="#145a32"/>"##,
                    num(m[0]),
                    num(-m[1])
                )
                .unwrap();
            }
            s.push_str("</g>\n");
        }
        s.push_str("</svg>\n");
        s
    }
}

//! SVG figures: `m·S` with its Γ-hull, the normal fan of `S`, and the cone Γ.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write;

use num_rational::BigRational;
use slelong_core::cones::{hull_polygon_2d, Cone};
use slelong_core::field::format_rational;
use slelong_core::geometry::fan::arc_of_cell;
use slelong_core::geometry::{normal_fan, Polytope};
use slelong_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigurePart {
    All,
    Hull,
    Fan,
    Gamma,
}

#[derive(Debug, Clone, Copy)]
pub struct FigureSpec {
    pub what: FigurePart,
    /// Pixels per unit of `m·S`.
    pub scale: f64,
    pub annotations: bool,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self {
            what: FigurePart::All,
            scale: 60.0,
            annotations: true,
        }
    }
}

pub struct FigureData {
    pub polytope: Polytope,
    pub m: u64,
    pub cone: Option<Cone>,
    /// Per-vertex labels replacing the coordinate labels.
    pub labels: Option<Vec<String>>,
}

const PAD: f64 = 40.0;
const WEDGE_R: f64 = 110.0;
const COLORS: [&str; 6] = ["#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69"];

struct Panel {
    width: f64,
    height: f64,
    body: String,
}

fn vertex_label(s: &Polytope, m: u64, i: usize) -> String {
    if s.is_rational_input() {
        let mq = BigRational::from_integer(m.into());
        let parts: Vec<String> = s.exact_vertices()[i]
            .iter()
            .map(|c| format_rational(&(c * &mq)))
            .collect();
        format!("({})", parts.join(", "))
    } else {
        let parts: Vec<String> = s.vertices()[i]
            .iter()
            .map(|c| format!("{}", (c * m as f64 * 1e4).round() / 1e4))
            .collect();
        format!("({})", parts.join(", "))
    }
}

fn points_attr(pts: &[[f64; 2]]) -> String {
    pts.iter()
        .map(|p| format!("{:.2},{:.2}", p[0], p[1]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn hull_panel(spec: &FigureSpec, data: &FigureData) -> Result<Panel> {
    let m = data.m as f64;
    let s = &data.polytope;
    let ms: Vec<[f64; 2]> = s.vertices().iter().map(|v| [m * v[0], m * v[1]]).collect();
    let hull: Option<Vec<[f64; 2]>> = match &data.cone {
        Some(c) => hull_polygon_2d(s, c)?
            .polygon
            .map(|p| p.iter().map(|v| [m * v[0], m * v[1]]).collect()),
        None => None,
    };
    let all = ms.iter().chain(hull.iter().flatten());
    let (xmax, ymax) = all.fold((0.0f64, 0.0f64), |(x, y), p| (x.max(p[0]), y.max(p[1])));
    let k = spec.scale;
    let left = PAD + 40.0;
    let width = left + PAD + k * xmax.max(1.0) + 80.0;
    let height = 2.0 * PAD + 20.0 + k * ymax.max(1.0);
    let map = |p: &[f64; 2]| [left + k * p[0], height - PAD - k * p[1]];

    let mut b = String::new();
    let (o, xe, ye) = (map(&[0.0, 0.0]), map(&[xmax.max(1.0), 0.0]), map(&[0.0, ymax.max(1.0)]));
    let _ = writeln!(
        b,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
        o[0], o[1], xe[0] + 10.0, xe[1]
    );
    let _ = writeln!(
        b,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
        o[0], o[1], ye[0], ye[1] - 10.0
    );
    let mapped: Vec<[f64; 2]> = ms.iter().map(map).collect();
    let _ = writeln!(
        b,
        r##"<polygon class="polytope" points="{}" fill="#c6dbef" stroke="#08519c" stroke-width="1.5"/>"##,
        points_attr(&mapped)
    );
    if let Some(h) = &hull {
        let mapped: Vec<[f64; 2]> = h.iter().map(map).collect();
        let _ = writeln!(
            b,
            r##"<polygon class="hull" points="{}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 3"/>"##,
            points_attr(&mapped)
        );
    }
    if spec.annotations {
        let c = mapped.iter().fold([0.0, 0.0], |acc, p| [acc[0] + p[0], acc[1] + p[1]]);
        let c = [c[0] / mapped.len() as f64, c[1] / mapped.len() as f64];
        for (i, p) in mapped.iter().enumerate() {
            let text = match &data.labels {
                Some(l) => l[i].clone(),
                None => vertex_label(s, data.m, i),
            };
            let v = &ms[i];
            let (x, y, anchor) = if v[0] == 0.0 {
                (p[0] - 8.0, p[1] + 4.0, "end")
            } else if v[1] == 0.0 {
                (p[0], p[1] + 18.0, "middle")
            } else {
                let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
                let len = dx.hypot(dy).max(1e-9);
                let (ux, uy) = (dx / len, dy / len);
                let anchor = if ux > 0.3 {
                    "start"
                } else if ux < -0.3 {
                    "end"
                } else {
                    "middle"
                };
                (p[0] + 8.0 * ux, p[1] + 10.0 * uy + 4.0, anchor)
            };
            let _ = writeln!(b, r##"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="2.5" fill="#08519c"/>"##, p[0], p[1]);
            let _ = writeln!(
                b,
                r##"<text class="vertex-label" x="{:.2}" y="{:.2}" font-size="12" text-anchor="{anchor}">{}</text>"##,
                x,
                y,
                escape(&text)
            );
        }
        let _ = writeln!(b, r##"<text x="{:.2}" y="{:.2}" font-size="13">mS, m = {}</text>"##, PAD, 18.0, data.m);
    }
    Ok(Panel { width, height, body: b })
}

fn sector(cx: f64, cy: f64, r: f64, start: f64, end: f64) -> String {
    if end - start >= 2.0 * PI - 1e-9 {
        return format!("M {:.2} {:.2} m {r:.2} 0 a {r:.2} {r:.2} 0 1 0 {:.2} 0 a {r:.2} {r:.2} 0 1 0 {:.2} 0 Z", cx, cy, -2.0 * r, 2.0 * r);
    }
    let (x0, y0) = (cx + r * start.cos(), cy - r * start.sin());
    let (x1, y1) = (cx + r * end.cos(), cy - r * end.sin());
    let large = u8::from(end - start > PI);
    format!("M {cx:.2} {cy:.2} L {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 0 {x1:.2} {y1:.2} Z")
}

fn fan_panel(spec: &FigureSpec, data: &FigureData) -> Result<Panel> {
    let fan = normal_fan(&data.polytope)?;
    let size = 2.0 * (WEDGE_R + PAD) + 20.0;
    let (cx, cy) = (size / 2.0, size / 2.0);
    let mut b = String::new();
    for (i, cell) in fan.cells().iter().enumerate() {
        let (start, end) = arc_of_cell(&cell.cone);
        let _ = writeln!(
            b,
            r##"<path class="fan-cell" d="{}" fill="{}" fill-opacity="0.7" stroke="#555"/>"##,
            sector(cx, cy, WEDGE_R, start, end),
            COLORS[i % COLORS.len()]
        );
        if spec.annotations {
            let mid = (start + end) / 2.0;
            let r = if end - start < 0.8 { 1.15 * WEDGE_R } else { 0.6 * WEDGE_R };
            let _ = writeln!(
                b,
                r##"<text class="fan-label" x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">N{}</text>"##,
                cx + r * mid.cos(),
                cy - r * mid.sin() + 4.0,
                escape(&vertex_label(&data.polytope, 1, cell.vertex))
            );
        }
    }
    if spec.annotations {
        let _ = writeln!(b, r##"<text x="{:.2}" y="{:.2}" font-size="13">normal fan of S</text>"##, PAD / 2.0, PAD / 2.0);
    }
    Ok(Panel { width: size, height: size, body: b })
}

fn gamma_panel(spec: &FigureSpec, data: &FigureData) -> Result<Panel> {
    let cone = data
        .cone
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("the Γ panel needs a cone".into()))?;
    let size = 2.0 * (WEDGE_R + PAD);
    let (cx, cy) = (size / 2.0, size / 2.0);
    let (start, end, theta) = match cone {
        Cone::Angular(a) => (FRAC_PI_4 - a.half_angle, FRAC_PI_4 + a.half_angle, Some(a.half_angle)),
        Cone::Polyhedral(p) => {
            let (s, e) = arc_of_cell(p);
            (s, e, None)
        }
    };
    let mut b = String::new();
    let _ = writeln!(
        b,
        r##"<path class="gamma" d="{}" fill="#fee391" fill-opacity="0.8" stroke="#cc4c02"/>"##,
        sector(cx, cy, WEDGE_R, start, end)
    );
    let tip = (cx + WEDGE_R * FRAC_PI_4.cos(), cy - WEDGE_R * FRAC_PI_4.sin());
    let _ = writeln!(
        b,
        r##"<line class="axis-one" x1="{cx:.2}" y1="{cy:.2}" x2="{:.2}" y2="{:.2}" stroke="#000" stroke-width="1.5" marker-end="url(#arrow)"/>"##,
        tip.0, tip.1
    );
    if let Some(t) = theta {
        let r = 0.35 * WEDGE_R;
        let (x0, y0) = (cx + r * FRAC_PI_4.cos(), cy - r * FRAC_PI_4.sin());
        let e = FRAC_PI_4 + t.min(PI - 1e-6);
        let (x1, y1) = (cx + r * e.cos(), cy - r * e.sin());
        let large = u8::from(t > PI);
        let _ = writeln!(
            b,
            r##"<path class="angle-arc" d="M {x0:.2} {y0:.2} A {r:.2} {r:.2} 0 {large} 0 {x1:.2} {y1:.2}" fill="none" stroke="#000"/>"##
        );
        if spec.annotations {
            let mid = FRAC_PI_4 + t / 2.0;
            let _ = writeln!(
                b,
                r##"<text class="angle-label" x="{:.2}" y="{:.2}" font-size="11">θ = {:.4}</text>"##,
                cx + (r + 8.0) * mid.cos(),
                cy - (r + 8.0) * mid.sin(),
                t
            );
        }
    }
    if spec.annotations {
        let _ = writeln!(
            b,
            r##"<text class="one-label" x="{:.2}" y="{:.2}" font-size="12">𝟙</text>"##,
            tip.0 + 6.0,
            tip.1 - 4.0
        );
        let _ = writeln!(b, r##"<text x="{:.2}" y="{:.2}" font-size="13">cone Γ</text>"##, PAD / 2.0, PAD / 2.0);
    }
    Ok(Panel { width: size, height: size, body: b })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_figure(spec: &FigureSpec, data: &FigureData) -> Result<String> {
    let n = data.polytope.dim();
    if n != 2 {
        return Err(Error::NotTwoDimensional(n));
    }
    if let Some(c) = &data.cone {
        if c.dim() != 2 {
            return Err(Error::NotTwoDimensional(c.dim()));
        }
    }
    let mut panels = Vec::new();
    let all = spec.what == FigurePart::All;
    if all || spec.what == FigurePart::Hull {
        panels.push(hull_panel(spec, data)?);
    }
    if all || spec.what == FigurePart::Fan {
        panels.push(fan_panel(spec, data)?);
    }
    if (all && data.cone.is_some()) || spec.what == FigurePart::Gamma {
        panels.push(gamma_panel(spec, data)?);
    }
    let width: f64 = panels.iter().map(|p| p.width).sum();
    let height = panels.iter().map(|p| p.height).fold(0.0, f64::max);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n",
    );
    let _ = writeln!(out, r#"<rect width="{width:.2}" height="{height:.2}" fill="white"/>"#);
    let mut x = 0.0;
    for p in panels {
        let _ = writeln!(out, r#"<g transform="translate({x:.2},0)">"#);
        out.push_str(&p.body);
        out.push_str("</g>\n");
        x += p.width;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

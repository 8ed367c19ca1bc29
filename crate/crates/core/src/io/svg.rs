//! SVG drawing of a packing: one colour per member, labelled vertices and a
//! legend.

use std::fmt::Write as _;

use crate::geom::Point;
use crate::packing::{Ground, Packing};
use crate::wheel::wheel_coordinates;

const PALETTE: [&str; 10] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22",
    "#7f7f7f",
];
const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const LEGEND_ROW: f64 = 18.0;

fn layout(ground: &Ground) -> Vec<Point> {
    match ground {
        Ground::Points(s) => s.points().to_vec(),
        Ground::Wheel(w) => wheel_coordinates(w.n(), 1 << 20).expect("valid wheel").0.points().to_vec(),
    }
}

pub fn render_svg(p: &Packing, method: &str) -> String {
    let pts = layout(&p.ground);
    let (min_x, max_x) = (pts.iter().map(|q| q.x).min().unwrap_or(0), pts.iter().map(|q| q.x).max().unwrap_or(0));
    let (min_y, max_y) = (pts.iter().map(|q| q.y).min().unwrap_or(0), pts.iter().map(|q| q.y).max().unwrap_or(0));
    let span = ((max_x - min_x).max(max_y - min_y)).max(1) as f64;
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // y grows downwards in SVG
    let pos = |q: Point| (MARGIN + (q.x - min_x) as f64 * scale, SIZE - MARGIN - (q.y - min_y) as f64 * scale);
    let height = SIZE + LEGEND_ROW * (p.members.len() + 1) as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{height}\" viewBox=\"0 0 {SIZE} {height}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for (i, m) in p.members.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, "<g class=\"member\" stroke=\"{colour}\" stroke-width=\"2\">");
        for e in m.edges() {
            let (x1, y1) = pos(pts[e.a()]);
            let (x2, y2) = pos(pts[e.b()]);
            let _ = writeln!(out, "<line class=\"edge\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>");
        }
        let _ = writeln!(out, "</g>");
    }
    for (i, &q) in pts.iter().enumerate() {
        let (x, y) = pos(q);
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"black\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\">{i}</text>",
            x + 8.0,
            y - 8.0
        );
    }
    let base = SIZE;
    let _ = writeln!(
        out,
        "<text x=\"{MARGIN}\" y=\"{base:.2}\" font-family=\"sans-serif\" font-size=\"13\">method: {}</text>",
        escape(method)
    );
    for (i, m) in p.members.iter().enumerate() {
        let y = base + LEGEND_ROW * (i + 1) as f64;
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            "<rect x=\"{MARGIN}\" y=\"{:.2}\" width=\"12\" height=\"12\" fill=\"{colour}\"/><text x=\"{:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"12\">member {i} ({}, {} edges)</text>",
            y - 11.0,
            MARGIN + 18.0,
            m.kind.as_str(),
            m.len()
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

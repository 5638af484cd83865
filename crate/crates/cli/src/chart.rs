//! Chart output: plot-data tables and a standalone SVG line chart.
//!
//! The SVG is a fixed-viewport chart with linear axes; its layout is stable
//! for a given input but not promised bit-exact across versions. The data
//! table is the canonical, diffable form.

use crate::payload::fmt_sig;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Stroke colour.
    pub color: &'static str,
}

pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

pub const UTILITY_COLOR: &str = "#1f77b4";
pub const NORM_COLOR: &str = "#7f7f7f";

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 180.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 64.0;

pub fn render_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    markers: &[Marker],
) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    for m in markers {
        x_min = x_min.min(m.x);
        x_max = x_max.max(m.x);
        y_min = y_min.min(m.y);
        y_max = y_max.max(m.y);
    }
    if !x_min.is_finite() {
        x_min = 0.0;
        x_max = 1.0;
        y_min = 0.0;
        y_max = 1.0;
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let x_pad = 0.05 * (x_max - x_min);
    let y_pad = 0.05 * (y_max - y_min);
    x_min -= x_pad;
    x_max += x_pad;
    y_min -= y_pad;
    y_max += y_pad;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = move |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = move |y: f64| MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        escape(title)
    ));
    svg.push('\n');

    // axes with 5 ticks each
    for i in 0..=4 {
        let fx = x_min + (x_max - x_min) * i as f64 / 4.0;
        let px = sx(fx);
        svg.push_str(&format!(
            r##"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="#dddddd"/>"##,
            MARGIN_TOP,
            MARGIN_TOP + plot_h
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r#"<text x="{px:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            MARGIN_TOP + plot_h + 18.0,
            fmt_sig(round_tick(fx))
        ));
        svg.push('\n');
        let fy = y_min + (y_max - y_min) * i as f64 / 4.0;
        let py = sy(fy);
        svg.push_str(&format!(
            r##"<line x1="{}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="#dddddd"/>"##,
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r#"<text x="{}" y="{py:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 6.0,
            fmt_sig(round_tick(fy))
        ));
        svg.push('\n');
    }
    svg.push_str(&format!(
        r#"<rect x="{}" y="{}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#,
        MARGIN_LEFT, MARGIN_TOP
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="20" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(y_label)
    ));
    svg.push('\n');

    for (i, s) in series.iter().enumerate() {
        let points: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            s.color,
            points.join(" ")
        ));
        svg.push('\n');
        let ly = MARGIN_TOP + 14.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/>"#,
            MARGIN_LEFT + plot_w + 10.0,
            MARGIN_LEFT + plot_w + 34.0,
            s.color
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            MARGIN_LEFT + plot_w + 40.0,
            ly + 4.0,
            escape(&s.label)
        ));
        svg.push('\n');
    }

    for m in markers {
        svg.push_str(&format!(
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#,
            sx(m.x),
            sy(m.y)
        ));
        svg.push('\n');
        svg.push_str(&format!(
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10">{}</text>"#,
            sx(m.x) + 6.0,
            sy(m.y) - 6.0,
            escape(&m.label)
        ));
        svg.push('\n');
    }

    svg.push_str("</svg>\n");
    svg
}

fn round_tick(v: f64) -> f64 {
    // keep tick labels short
    (v * 1e4).round() / 1e4
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

//! Hand-written SVG line plot of the dilatation profile.

use std::fmt::Write;

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// `samples` are `(φ, K)` pairs in increasing `φ`; `max` is marked.
pub fn dilatation_plot(samples: &[(f64, f64)], max: (f64, f64), title: &str) -> String {
    let (x0, x1) = (samples.first().map_or(0.0, |s| s.0), samples.last().map_or(1.0, |s| s.0));
    let y0 = 1.0f64.min(samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min));
    let mut y1 = samples.iter().map(|s| s.1).fold(max.1, f64::max);
    if y1 - y0 < 1e-9 {
        y1 = y0 + 1.0;
    }
    let span_x = if x1 > x0 { x1 - x0 } else { 1.0 };
    let px = |x: f64| LEFT + (x - x0) / span_x * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let (ax, ay) = (px(x0), py(y0));
    let _ = writeln!(s, r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{:.2}" y2="{ay:.2}" stroke="black"/>"#, W - RIGHT);
    let _ = writeln!(s, r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{ax:.2}" y2="{TOP:.2}" stroke="black"/>"#);
    for i in 0..=4 {
        let fx = x0 + span_x * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{fx:.4}</text>"#,
            px(fx),
            H - BOTTOM + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{fy:.4}</text>"#,
            LEFT - 6.0,
            py(fy) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">phi</text>"#,
        W / 2.0,
        H - 12.0
    );
    let _ = writeln!(s, r#"<text x="16" y="{:.2}" font-family="sans-serif" font-size="12">K</text>"#, H / 2.0);
    let points: Vec<String> = samples.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
    let _ =
        writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#, points.join(" "));
    let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="crimson"/>"#, px(max.0), py(max.1));
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="crimson">sup K = {:.6}</text>"#,
        px(max.0) + 8.0,
        py(max.1) - 8.0,
        max.1
    );
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

use std::fmt::Write;

use crate::stats::StatReport;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;

/// Real parts of value (solid) and reference (dashed) against `n`.
pub fn plot(rows: &[StatReport]) -> String {
    let pts: Vec<(f64, f64, Option<f64>)> = rows
        .iter()
        .map(|r| (r.n as f64, r.value.re, r.reference.map(|c| c.re)))
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    if !pts.is_empty() {
        let xs = pts.iter().map(|p| p.0);
        let ys = pts.iter().flat_map(|p| std::iter::once(p.1).chain(p.2));
        let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
        let sx = |x: f64| PAD + (x - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * PAD);
        let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * PAD);
        let line = |vals: Vec<(f64, f64)>, style: &str| {
            let p: Vec<String> = vals
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            format!(
                r#"<polyline fill="none" stroke="black" {style} points="{}"/>"#,
                p.join(" ")
            )
        };
        let _ = writeln!(
            s,
            "{}",
            line(pts.iter().map(|p| (p.0, p.1)).collect(), r#"stroke-width="2""#)
        );
        let refs: Vec<(f64, f64)> = pts.iter().filter_map(|p| p.2.map(|r| (p.0, r))).collect();
        if !refs.is_empty() {
            let _ = writeln!(s, "{}", line(refs, r#"stroke-dasharray="6 4""#));
        }
        for p in &pts {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, sx(p.0), sy(p.1));
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
                sx(p.0),
                H - PAD + 18.0,
                p.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="10" y="{:.2}" font-size="12">{y1:.4}</text>"#,
            sy(y1) + 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="10" y="{:.2}" font-size="12">{y0:.4}</text>"#,
            sy(y0) + 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{PAD}" y="20" font-size="14">{} (q={})</text>"#,
            rows[0].stat, rows[0].q
        );
    }
    s.push_str("</svg>\n");
    s
}

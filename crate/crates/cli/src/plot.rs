//! Self-contained SVG plots of wave tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};

use crate::output::{read_table, Row};
use crate::UsageError;

const W: f64 = 720.0;
const H: f64 = 520.0;
const PAD: f64 = 60.0;

pub fn plot_file(input: &Path, axis: usize, output: &Path) -> anyhow::Result<()> {
    let rows = read_table(input)?;
    let svg = render(&rows, axis)?;
    std::fs::write(output, svg).with_context(|| format!("writing {}", output.display()))
}

fn varying(rows: &[Row], n: usize) -> Vec<usize> {
    (0..n).filter(|&j| rows.iter().any(|r| r.x[j] != rows[0].x[j])).collect()
}

/// Line plot when only `x_axis` varies, heat map of |psi| when one other
/// coordinate varies as well.
pub fn render(rows: &[Row], axis: usize) -> anyhow::Result<String> {
    if rows.is_empty() {
        bail!("empty table");
    }
    let n = rows[0].x.len();
    if axis < 1 || axis > n {
        return Err(UsageError::new(format!("field `axis`: must lie in 1..={n}, got {axis}")).into());
    }
    let k = axis - 1;
    let var = varying(rows, n);
    let others: Vec<usize> = var.iter().copied().filter(|&j| j != k).collect();
    match others.as_slice() {
        [] => Ok(line_plot(rows, k)),
        [m] => Ok(heat_map(rows, k, *m)),
        _ => bail!("table varies in {} coordinates besides x{axis}; at most one is supported", others.len()),
    }
}

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn open(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>"#, W / 2.0);
    s
}

fn panel(s: &mut String, pts: &[(f64, f64)], top: f64, height: f64, label: &str, xlabel: &str, colour: &str) {
    let (x0, x1) = span(pts.iter().map(|p| p.0));
    let (y0, y1) = span(pts.iter().map(|p| p.1));
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| top + height - (y - y0) / (y1 - y0) * height;
    let _ = writeln!(s, r##"<rect x="{PAD}" y="{top}" width="{}" height="{height}" fill="none" stroke="#444"/>"##, W - 2.0 * PAD);
    let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    let _ = writeln!(s, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{y1:.4e}</text>"#, PAD - 4.0, top + 10.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{y0:.4e}</text>"#, PAD - 4.0, top + height);
    let _ = writeln!(s, r#"<text x="{PAD}" y="{}">{x0}</text>"#, top + height + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{x1}</text>"#, W - PAD, top + height + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#, W / 2.0, top + height + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">{label}</text>"#, PAD + 6.0, top + 16.0);
}

fn line_plot(rows: &[Row], k: usize) -> String {
    let mut sorted: Vec<&Row> = rows.iter().collect();
    sorted.sort_by(|a, b| a.x[k].total_cmp(&b.x[k]));
    let modulus: Vec<(f64, f64)> = sorted.iter().map(|r| (r.x[k], r.value.norm())).collect();
    let phase: Vec<(f64, f64)> = sorted.iter().map(|r| (r.x[k], r.value.arg())).collect();
    let mut s = open(&format!("psi along x{} ({})", k + 1, rows[0].method));
    let h = (H - 3.0 * PAD) / 2.0;
    panel(&mut s, &modulus, PAD, h, "|psi|", &format!("x{}", k + 1), "#1f5fa8");
    panel(&mut s, &phase, 2.0 * PAD + h, h, "arg psi", &format!("x{}", k + 1), "#b8442c");
    s.push_str("</svg>\n");
    s
}

fn colour(t: f64) -> String {
    // dark blue -> teal -> yellow
    let stops = [(0.0, [32.0, 24.0, 96.0]), (0.5, [33.0, 145.0, 140.0]), (1.0, [250.0, 230.0, 60.0])];
    let t = t.clamp(0.0, 1.0);
    let (a, b) = if t < 0.5 { (stops[0], stops[1]) } else { (stops[1], stops[2]) };
    let u = (t - a.0) / (b.0 - a.0);
    let c: Vec<u8> = (0..3).map(|i| (a.1[i] + u * (b.1[i] - a.1[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn heat_map(rows: &[Row], k: usize, m: usize) -> String {
    let key = |v: f64| v.to_bits();
    let xs: BTreeSet<u64> = rows.iter().map(|r| key(r.x[k])).collect();
    let ys: BTreeSet<u64> = rows.iter().map(|r| key(r.x[m])).collect();
    let mut xv: Vec<f64> = xs.into_iter().map(f64::from_bits).collect();
    let mut yv: Vec<f64> = ys.into_iter().map(f64::from_bits).collect();
    xv.sort_by(f64::total_cmp);
    yv.sort_by(f64::total_cmp);
    let (lo, hi) = span(rows.iter().map(|r| r.value.norm()));
    let cw = (W - 2.0 * PAD) / xv.len() as f64;
    let ch = (H - 2.0 * PAD) / yv.len() as f64;
    let mut s = open(&format!("|psi| over (x{}, x{})", k + 1, m + 1));
    for r in rows {
        let i = xv.iter().position(|&v| v == r.x[k]).unwrap_or(0);
        let j = yv.iter().position(|&v| v == r.x[m]).unwrap_or(0);
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            PAD + i as f64 * cw,
            H - PAD - (j + 1) as f64 * ch,
            cw + 0.3,
            ch + 0.3,
            colour((r.value.norm() - lo) / (hi - lo))
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">x{}: {} .. {}</text>"#, W / 2.0, H - PAD + 18.0, k + 1, xv[0], xv[xv.len() - 1]);
    let _ = writeln!(s, r#"<text x="12" y="{}" transform="rotate(-90 12 {})" text-anchor="middle">x{}: {} .. {}</text>"#, H / 2.0, H / 2.0, m + 1, yv[0], yv[yv.len() - 1]);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">|psi| in [{lo:.3e}, {hi:.3e}]</text>"#, W - PAD, PAD - 8.0);
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use givental_core::quad::Method;
    use num_complex::Complex64;

    fn row(x: Vec<f64>, v: f64) -> Row {
        Row { x, value: Complex64::new(v, 0.1 * v), error: 0.0, method: Method::Direct }
    }

    #[test]
    fn line_and_heat() {
        let line: Vec<Row> = (0..5).map(|i| row(vec![i as f64, 0.0], 1.0 + i as f64)).collect();
        let svg = render(&line, 1).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("polyline") && svg.trim_end().ends_with("</svg>"));
        let heat: Vec<Row> = (0..9).map(|i| row(vec![(i % 3) as f64, (i / 3) as f64], i as f64)).collect();
        let svg = render(&heat, 2).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1 + 9);
    }

    #[test]
    fn axis_out_of_range() {
        let line: Vec<Row> = (0..2).map(|i| row(vec![i as f64], 1.0)).collect();
        let e = render(&line, 2).unwrap_err();
        assert!(e.downcast_ref::<UsageError>().is_some());
    }
}

//! Minimal SVG rendering of `coeffs` and `bargmann-ray` tables.

use std::fmt::Write as _;

use crate::{CliError, CliResult, PlotArgs};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 64.0;

/// (legend, colour, points)
type Series = (&'static str, &'static str, Vec<(f64, f64)>);

struct Table {
    x_label: &'static str,
    series: [Series; 2],
}

fn parse_value(s: &str) -> Option<f64> {
    match s.trim() {
        "-inf" => Some(f64::NEG_INFINITY),
        "inf" => Some(f64::INFINITY),
        t => t.parse().ok(),
    }
}

fn parse_table(text: &str) -> CliResult<Table> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| CliError::Io("empty CSV".into()))?;
    let (x_label, cols) = match header.trim() {
        "n,log10_abs,phase_rad,log10_envelope" => ("n", [(1, "log10 |c_n|"), (3, "envelope")]),
        "r,log10_abs_Bf,log10_bound,excess" => ("r", [(1, "log10 |Bf|"), (2, "bound")]),
        h => return Err(CliError::Io(format!("unrecognised CSV header '{h}'"))),
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let bad = || CliError::Io(format!("malformed CSV row {}", i + 2));
        if fields.len() != 4 {
            return Err(bad());
        }
        let x = parse_value(fields[0]).filter(|x| x.is_finite()).ok_or_else(bad)?;
        first.push((x, parse_value(fields[cols[0].0]).ok_or_else(bad)?));
        second.push((x, parse_value(fields[cols[1].0]).ok_or_else(bad)?));
    }
    if first.is_empty() {
        return Err(CliError::Io("CSV has no data rows".into()));
    }
    Ok(Table {
        x_label,
        series: [(cols[0].1, "#1f77b4", first), (cols[1].1, "#d62728", second)],
    })
}

fn bounds<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn render_svg(text: &str) -> CliResult<String> {
    let t = parse_table(text)?;
    let (x0, x1) = bounds(t.series[0].2.iter().map(|p| &p.0));
    let (y0, y1) = bounds(t.series.iter().flat_map(|s| s.2.iter().map(|p| &p.1)));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (l, r, top, bot) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<polyline points="{l:.2},{top:.2} {l:.2},{bot:.2} {r:.2},{bot:.2}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            sx(xv),
            bot + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            l - 6.0,
            sy(yv) + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 20.0,
        t.x_label
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">log10 magnitude</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (k, (name, colour, points)) in t.series.iter().enumerate() {
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, svg: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(
                    svg,
                    r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
                    run.join(" ")
                );
            }
            run.clear();
        };
        for &(x, y) in points {
            if y.is_finite() {
                run.push(format!("{:.2},{:.2}", sx(x), sy(y)));
            } else if !run.is_empty() && k == 0 && t.x_label == "n" {
                // odd-parity zeros: keep the even entries connected
                continue;
            } else {
                flush(&mut run, &mut svg);
            }
        }
        flush(&mut run, &mut svg);
        let ly = top + 16.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="1.5"/>"#,
            r - 150.0,
            ly,
            r - 126.0,
            ly
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">{name}</text>"#,
            r - 120.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

pub fn cmd_plot(args: &PlotArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let svg = render_svg(&text)?;
    std::fs::write(&args.output, svg).map_err(|e| CliError::Io(format!("{}: {e}", args.output.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const COEFFS: &str = "n,log10_abs,phase_rad,log10_envelope\n0,-0.1,0,0\n1,-inf,0,-0.2\n2,-0.3,3.1,-0.4\n";

    #[test]
    fn rejects_empty_and_malformed() {
        for bad in ["", "n,log10_abs,phase_rad,log10_envelope\n", "x,y\n1,2\n", "n,log10_abs,phase_rad,log10_envelope\n0,a,0,0\n"] {
            assert_eq!(render_svg(bad).unwrap_err().exit_code(), 3, "{bad:?}");
        }
    }

    #[test]
    fn deterministic_document() {
        let a = render_svg(COEFFS).unwrap();
        assert_eq!(a, render_svg(COEFFS).unwrap());
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("stroke-width=\"1.5\"/>").count(), 4);
        assert!(!a.contains("NaN") && !a.contains("inf"));
    }
}

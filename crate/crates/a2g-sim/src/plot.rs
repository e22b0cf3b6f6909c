//! Dependency-free SVG line charts: 800x600 canvas, linear axes with tick
//! labels, one polyline per series, and a legend. Output is a plain string
//! built in a fixed order, so identical input gives identical bytes.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fmt::round_sig6;
use crate::scenario::CurveSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Renders the chart and writes it to `path`.
pub fn write_svg_plot(series: &[CurveSeries], title: &str, path: &Path) -> Result<()> {
    let doc = svg_document(series, title)?;
    std::fs::write(path, doc)?;
    Ok(())
}

/// Renders the chart as an SVG string.
pub fn svg_document(series: &[CurveSeries], title: &str) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Config(
            "cannot plot an empty series list".to_string(),
        ));
    }
    let points: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .collect();
    if points.is_empty() {
        return Err(Error::Config(
            "cannot plot series with no points".to_string(),
        ));
    }
    let (x_min, x_max) = padded_range(points.iter().map(|p| p.0), 0.0);
    let (y_min, y_max) = padded_range(points.iter().map(|p| p.1), 0.04);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::with_capacity(16 * 1024);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        escape(title)
    ));

    // ticks and grid labels
    for tx in nice_ticks(x_min, x_max, 7) {
        let px = sx(tx);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#000000\" stroke-width=\"1\"/>\n",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>\n",
            MARGIN_TOP + plot_h + 20.0,
            tick_label(tx)
        ));
    }
    for ty in nice_ticks(y_min, y_max, 6) {
        let py = sy(ty);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#000000\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT - 6.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>\n",
            MARGIN_LEFT - 10.0,
            py + 4.0,
            tick_label(ty)
        ));
    }

    // axes
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
         stroke=\"#000000\" stroke-width=\"1.5\"/>\n",
        MARGIN_TOP + plot_h,
        MARGIN_LEFT + plot_w,
        MARGIN_TOP + plot_h
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT:.2}\" y1=\"{MARGIN_TOP:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{:.2}\" \
         stroke=\"#000000\" stroke-width=\"1.5\"/>\n",
        MARGIN_TOP + plot_h
    ));

    // axis names from the first series
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(&series[0].x_name)
    ));
    svg.push_str(&format!(
        "  <text x=\"20\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&series[0].y_name)
    ));

    // data
    for (i, s) in series.iter().enumerate() {
        if s.points.len() < 2 {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
    }

    // legend
    let legend_x = MARGIN_LEFT + plot_w + 14.0;
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let ly = MARGIN_TOP + 12.0 + i as f64 * 20.0;
        svg.push_str(&format!(
            "  <line x1=\"{legend_x:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
             stroke=\"{color}\" stroke-width=\"2.5\"/>\n",
            legend_x + 22.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 28.0,
            ly + 4.0,
            escape(&s.label)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn padded_range(values: impl Iterator<Item = f64>, pad: f64) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        return (min - 1.0, max + 1.0);
    }
    let span = max - min;
    (min - pad * span, max + pad * span)
}

fn nice_ticks(min: f64, max: f64, target: usize) -> Vec<f64> {
    let span = max - min;
    let raw_step = span / target as f64;
    let magnitude = 10f64.powf(raw_step.abs().log10().floor());
    let mut step = 10.0 * magnitude;
    for m in [1.0, 2.0, 2.5, 5.0] {
        if span / (m * magnitude) <= target as f64 {
            step = m * magnitude;
            break;
        }
    }
    let first = (min / step).ceil();
    let mut ticks = Vec::new();
    let mut i = 0;
    loop {
        let t = (first + i as f64) * step;
        if t > max + 1e-9 * span {
            break;
        }
        ticks.push(round_sig6(t));
        i += 1;
    }
    ticks
}

fn tick_label(v: f64) -> String {
    format!("{v}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point_series() -> CurveSeries {
        CurveSeries::new("demo", "distance_m", "p_los", vec![(0.0, 0.1), (10.0, 0.9)]).unwrap()
    }

    #[test]
    fn one_polyline_per_series() {
        let doc = svg_document(&[two_point_series()], "title").unwrap();
        assert_eq!(doc.matches("<polyline").count(), 1);
        assert!(doc.contains("width=\"800\""));
        assert!(doc.contains("height=\"600\""));
        assert!(doc.contains("demo"));
        assert_eq!(
            doc.matches("http").count(),
            1,
            "no references beyond the xmlns"
        );
        assert!(doc.contains("xmlns=\"http://www.w3.org/2000/svg\""));
    }

    #[test]
    fn empty_series_list_is_config_error() {
        assert!(matches!(svg_document(&[], "t"), Err(Error::Config(_))));
    }

    #[test]
    fn output_is_deterministic() {
        let s = vec![
            two_point_series(),
            CurveSeries::new("b", "x", "y", vec![(0.0, 1.0), (5.0, 2.0)]).unwrap(),
        ];
        assert_eq!(
            svg_document(&s, "t").unwrap(),
            svg_document(&s, "t").unwrap()
        );
    }

    #[test]
    fn ticks_cover_the_range_with_clean_values() {
        let ticks = nice_ticks(0.0, 90.0, 7);
        assert!(ticks.contains(&0.0));
        assert!(ticks.iter().all(|t| (0.0..=90.0).contains(t)));
        assert!(ticks.len() >= 4 && ticks.len() <= 8, "{ticks:?}");
        let ticks = nice_ticks(0.0219, 0.99998, 6);
        assert!(ticks.iter().all(|t| format!("{t}").len() <= 8), "{ticks:?}");
    }

    #[test]
    fn degenerate_y_range_still_renders() {
        let flat = CurveSeries::new("flat", "x", "y", vec![(0.0, 0.5), (1.0, 0.5)]).unwrap();
        let doc = svg_document(&[flat], "flat").unwrap();
        assert_eq!(doc.matches("<polyline").count(), 1);
    }
}

//! Standalone SVG 1.1 line plots: one polyline per series, optional log
//! axes with decade ticks, legend from series labels, optional reference
//! line of a given slope. Pure text emission, deterministic.

use crate::CliError;
use std::fmt::Write as _;

pub struct PlotConfig {
    pub width: usize,
    pub height: usize,
    pub logx: bool,
    pub logy: bool,
    /// Slope and anchor point (data coordinates) of a dashed guide line.
    pub reference: Option<(f64, (f64, f64))>,
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 48.0;

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Result<Self, CliError> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            if log && v <= 0.0 {
                continue;
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(CliError::Compute(
                "no plottable points (log axes need positive values)".into(),
            ));
        }
        if lo == hi {
            lo *= 0.5;
            hi *= 2.0;
            if lo == hi {
                // both zero on a linear axis
                lo = -1.0;
                hi = 1.0;
            }
        }
        let (lo, hi) = if log {
            (lo.log10(), hi.log10())
        } else {
            (lo, hi)
        };
        let pad = 0.03 * (hi - lo);
        Ok(Self {
            lo: lo - pad,
            hi: hi + pad,
            log,
        })
    }

    /// Transformed coordinate in [0, 1].
    fn unit(&self, v: f64) -> Option<f64> {
        let t = if self.log {
            if v <= 0.0 {
                return None;
            }
            v.log10()
        } else {
            v
        };
        Some((t - self.lo) / (self.hi - self.lo))
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let lo = self.lo.ceil() as i64;
            let hi = self.hi.floor() as i64;
            let mut step = 1i64;
            while (hi - lo) / step > 10 {
                step += 1;
            }
            (lo..=hi)
                .step_by(step as usize)
                .map(|k| (k as f64, format!("1e{k}")))
                .collect()
        } else {
            let span = self.hi - self.lo;
            let raw = span / 6.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .iter()
                .map(|s| s * mag)
                .find(|s| span / s <= 7.0)
                .unwrap_or(mag * 10.0);
            let first = (self.lo / step).ceil() as i64;
            let last = (self.hi / step).floor() as i64;
            (first..=last)
                .map(|k| {
                    let v = k as f64 * step;
                    (v, trim_label(v))
                })
                .collect()
        }
    }
}

fn trim_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.abs() >= 0.01 && v.abs() < 1e6 {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        s
    } else {
        format!("{v:e}")
    }
}

/// Renders the full SVG document.
pub fn render(series: &[(String, Vec<(f64, f64)>)], cfg: &PlotConfig) -> Result<String, CliError> {
    if series.is_empty() || series.iter().any(|(_, pts)| pts.is_empty()) {
        return Err(CliError::Compute("empty series".into()));
    }
    let xaxis = Axis::new(
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)),
        cfg.logx,
    )?;
    let yaxis = Axis::new(
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)),
        cfg.logy,
    )?;
    let w = cfg.width as f64;
    let h = cfg.height as f64;
    let plot_w = w - MARGIN_L - MARGIN_R;
    let plot_h = h - MARGIN_T - MARGIN_B;
    let px = |u: f64| MARGIN_L + u * plot_w;
    let py = |u: f64| MARGIN_T + (1.0 - u) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444" stroke-width="1"/>"##,
        MARGIN_L, MARGIN_T
    );

    // ticks and grid
    for (t, label) in xaxis.ticks() {
        let u = (t - xaxis.lo) / (xaxis.hi - xaxis.lo);
        if !(0.0..=1.0).contains(&u) {
            continue;
        }
        let x = px(u);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="#ccc" stroke-width="0.5"/>"##,
            MARGIN_T,
            MARGIN_T + plot_h
        );
        let _ = writeln!(
            svg,
            r##"<text x="{x:.2}" y="{}" font-size="11" text-anchor="middle" fill="#222">{label}</text>"##,
            MARGIN_T + plot_h + 16.0
        );
    }
    for (t, label) in yaxis.ticks() {
        let u = (t - yaxis.lo) / (yaxis.hi - yaxis.lo);
        if !(0.0..=1.0).contains(&u) {
            continue;
        }
        let y = py(u);
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ccc" stroke-width="0.5"/>"##,
            MARGIN_L,
            MARGIN_L + plot_w
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{y:.2}" font-size="11" text-anchor="end" dominant-baseline="middle" fill="#222">{label}</text>"##,
            MARGIN_L - 6.0
        );
    }

    // series polylines
    for (i, (_, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut path = String::new();
        for (x, y) in pts {
            let (Some(ux), Some(uy)) = (xaxis.unit(*x), yaxis.unit(*y)) else {
                continue;
            };
            let _ = write!(path, "{:.2},{:.2} ", px(ux), py(uy));
        }
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.trim_end()
        );
    }

    // reference line, straight under the active transforms
    if let Some((slope, (ax, ay))) = cfg.reference {
        let t0 = if cfg.logx { ax.log10() } else { ax };
        let y0 = if cfg.logy { ay.log10() } else { ay };
        let (ta, tb) = (xaxis.lo, xaxis.hi);
        let ya = y0 + slope * (ta - t0);
        let yb = y0 + slope * (tb - t0);
        let ua = (ya - yaxis.lo) / (yaxis.hi - yaxis.lo);
        let ub = (yb - yaxis.lo) / (yaxis.hi - yaxis.lo);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#555" stroke-width="1" stroke-dasharray="6,4"/>"##,
            px(0.0),
            py(ua),
            px(1.0),
            py(ub)
        );
    }

    // legend
    for (i, (label, _)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_T + 14.0 + 16.0 * i as f64;
        let x = MARGIN_L + plot_w - 150.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#,
            x + 22.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="11" fill="#222">{}</text>"##,
            x + 28.0,
            y + 4.0,
            xml_escape(label)
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

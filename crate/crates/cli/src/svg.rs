//! Hand-written SVG output.
//!
//! Numbers are printed with a fixed number of decimals so the same input
//! yields byte-identical files everywhere.

use std::fmt::Write as _;

use pois_core::analysis::{ColorClass, PmaxTable};

const MARKER_BLUE: &str = "#1f4fff";
const PANEL_W: f64 = 120.0;
const PANEL_H: f64 = 64.0;
const GAP: f64 = 10.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;

pub fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// One small panel of an EDPOIS lattice.
#[derive(Debug, Clone)]
pub struct Panel {
    pub scale_factor: f64,
    pub crossover_rate: f64,
    /// POIS values in ascending order.
    pub sorted_pois: Vec<f64>,
    pub class: ColorClass,
}

/// Lattice of EDPOIS panels: one column per Cr value (left to right), one
/// row per F value (bottom to top).
///
/// Each panel draws its runs as bars sorted by POIS (x = run, y = POIS in
/// [0, 1]) in the colour of its class, and a blue dot marking where its
/// (Cr, F) pair sits on the global axes Cr in [0, 1], F in (0, 2].
/// `panels` must contain exactly one entry per grid cell.
pub fn edpois_lattice(title: &str, f_grid: &[f64], cr_grid: &[f64], panels: &[Panel]) -> String {
    let cols = cr_grid.len();
    let rows = f_grid.len();
    let width = MARGIN_LEFT + cols as f64 * (PANEL_W + GAP) - GAP + MARGIN_RIGHT;
    let height = MARGIN_TOP + rows as f64 * (PANEL_H + GAP) - GAP + MARGIN_BOTTOM;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" font-size="14" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape(title)
    );

    for (row, f) in f_grid.iter().enumerate() {
        let y = panel_top(rows, row) + PANEL_H / 2.0 + 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{y:.2}" font-size="10" text-anchor="end">F={f}</text>"#,
            MARGIN_LEFT - 8.0
        );
    }
    for (col, cr) in cr_grid.iter().enumerate() {
        let x = panel_left(col) + PANEL_W / 2.0;
        let y = height - MARGIN_BOTTOM + 18.0;
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="10" text-anchor="middle">Cr={cr}</text>"#
        );
    }

    for panel in panels {
        let col = position(cr_grid, panel.crossover_rate).expect("panel on the Cr grid");
        let row = position(f_grid, panel.scale_factor).expect("panel on the F grid");
        draw_panel(&mut s, panel, panel_left(col), panel_top(rows, row));
    }

    let legend_y = height - 16.0;
    let mut x = MARGIN_LEFT;
    for class in [ColorClass::Teal, ColorClass::Orange, ColorClass::Violet] {
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{:.2}" width="10" height="10" fill="{}"/>"#,
            legend_y - 9.0,
            class.hex()
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{legend_y:.2}" font-size="10">{}</text>"#,
            x + 14.0,
            class.name()
        );
        x += 70.0;
    }
    let _ = writeln!(
        s,
        r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{MARKER_BLUE}"/>"#,
        x + 5.0,
        legend_y - 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{legend_y:.2}" font-size="10">(Cr, F) position</text>"#,
        x + 14.0
    );
    s.push_str("</svg>\n");
    s
}

fn panel_left(col: usize) -> f64 {
    MARGIN_LEFT + col as f64 * (PANEL_W + GAP)
}

/// Row 0 is the bottom row.
fn panel_top(rows: usize, row: usize) -> f64 {
    MARGIN_TOP + (rows - 1 - row) as f64 * (PANEL_H + GAP)
}

pub fn position(grid: &[f64], v: f64) -> Option<usize> {
    grid.iter().position(|g| (g - v).abs() <= 1e-9 * g.abs().max(1.0))
}

fn draw_panel(s: &mut String, panel: &Panel, left: f64, top: f64) {
    let _ = writeln!(
        s,
        r##"<g class="panel {}" data-f="{}" data-cr="{}">"##,
        panel.class.name(),
        panel.scale_factor,
        panel.crossover_rate
    );
    let _ = writeln!(
        s,
        r##"<rect x="{left:.2}" y="{top:.2}" width="{PANEL_W:.2}" height="{PANEL_H:.2}" fill="none" stroke="#999999" stroke-width="0.5"/>"##
    );
    let m = panel.sorted_pois.len().max(1) as f64;
    let bar_w = PANEL_W / m;
    let bottom = top + PANEL_H;
    for (k, v) in panel.sorted_pois.iter().enumerate() {
        let h = v.clamp(0.0, 1.0) * PANEL_H;
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="{}"/>"#,
            left + k as f64 * bar_w,
            bottom - h,
            bar_w,
            panel.class.hex()
        );
    }
    let cx = left + panel.crossover_rate.clamp(0.0, 1.0) * PANEL_W;
    let cy = bottom - (panel.scale_factor / 2.0).clamp(0.0, 1.0) * PANEL_H;
    let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="2.5" fill="{MARKER_BLUE}"/>"#);
    s.push_str("</g>\n");
}

const CURVE_COLOURS: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// `p_max` against `t`, one shaded region `[0, p_max]` per dimensionality.
pub fn pmax_chart(table: &PmaxTable) -> String {
    let (w, h) = (640.0, 420.0);
    let (left, right, top, bottom) = (80.0, 150.0, 40.0, 50.0);
    let plot_w = w - left - right;
    let plot_h = h - top - bottom;
    let t_max = table.t_grid.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let p_top = table
        .values
        .iter()
        .flatten()
        .cloned()
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let sx = |t: f64| left + t / t_max * plot_w;
    let sy = |p: f64| top + plot_h - p / p_top * plot_h;

    let mut order: Vec<usize> = (0..table.t_grid.len()).collect();
    order.sort_by(|&a, &b| table.t_grid[a].total_cmp(&table.t_grid[b]));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="22" font-size="13" text-anchor="middle">largest per-dimension p with 1-(1-p)^n &lt;= t</text>"#,
        left + plot_w / 2.0
    );
    let _ = writeln!(
        s,
        r##"<path d="M {left:.2} {top:.2} L {left:.2} {:.2} L {:.2} {:.2}" fill="none" stroke="#000000"/>"##,
        top + plot_h,
        left + plot_w,
        top + plot_h
    );
    for (frac, anchor_y) in [(0.0, top + plot_h), (1.0, top)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{:.3e}</text>"#,
            left - 6.0,
            anchor_y + 4.0,
            frac * p_top
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
            left + frac * plot_w,
            top + plot_h + 16.0,
            frac * t_max
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">t</text>"#,
        left + plot_w / 2.0,
        h - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-size="11" text-anchor="middle" transform="rotate(-90 18 {:.2})">p_max</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );

    for (row, n) in table.n_grid.iter().enumerate() {
        let colour = CURVE_COLOURS[row % CURVE_COLOURS.len()];
        let mut pts = String::new();
        for &c in &order {
            let _ = write!(pts, "{:.2},{:.2} ", sx(table.t_grid[c]), sy(table.values[row][c]));
        }
        let first = order.first().map_or(0.0, |&c| table.t_grid[c]);
        let last = order.last().map_or(0.0, |&c| table.t_grid[c]);
        let _ = writeln!(
            s,
            r#"<polygon points="{:.2},{:.2} {}{:.2},{:.2}" fill="{colour}" fill-opacity="0.15" stroke="none"/>"#,
            sx(first),
            sy(0.0),
            pts,
            sx(last),
            sy(0.0)
        );
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            pts.trim_end()
        );
        let ly = top + 12.0 + row as f64 * 16.0;
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="12" height="8" fill="{colour}"/>"#,
            w - right + 16.0,
            ly - 8.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" font-size="10">n = {n}</text>"#,
            w - right + 32.0
        );
    }
    s.push_str("</svg>\n");
    s
}

//! Deterministic ASCII and SVG renderings of cities and pipe configurations.
//!
//! The ASCII canvas puts the abscissa `x` at column `2x` and the elevation
//! `e` at row `2(emax − e)`, so cell centers land on even/even positions and
//! the diagonal cell sides on odd/odd positions. A crossing is an `X` at the
//! cell center, an elbow a pair of bends `) (` beside it. Config renderings
//! end with an `->` line listing the wire arriving at each customer.
//!
//! With color on, every wire gets a stroke from the fixed 16-color palette,
//! cycling beyond 16; the crossing glyph takes the color of the wire
//! entering from the upper left.

use std::fmt::Write as _;

use crate::city::City;
use crate::config::{MeetingKind, PipeConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub format: RenderFormat,
    /// Dye each wire with its palette color.
    pub color: bool,
    /// Pixels per lattice unit (SVG only).
    pub scale: f64,
    /// Draw faucet and customer indices.
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: RenderFormat::Ascii,
            color: false,
            scale: 32.0,
            labels: true,
        }
    }
}

const ANSI_PALETTE: [&str; 16] = [
    "31", "32", "33", "34", "35", "36", "91", "92", "93", "94", "95", "96", "1;31", "1;32", "1;33",
    "1;34",
];

const SVG_PALETTE: [&str; 16] = [
    "#e6194b", "#3cb44b", "#c7a600", "#4363d8", "#f58231", "#911eb4", "#2aa9a9", "#f032e6",
    "#7f8c1e", "#bf616a", "#008080", "#8d6cab", "#9a6324", "#5e81ac", "#800000", "#2e8b57",
];

fn ansi_color(wire: usize) -> &'static str {
    ANSI_PALETTE[(wire - 1) % ANSI_PALETTE.len()]
}

fn svg_color(wire: usize) -> &'static str {
    SVG_PALETTE[(wire - 1) % SVG_PALETTE.len()]
}

pub fn render_city(city: &City, opts: &RenderOptions) -> Result<String> {
    check_scale(opts)?;
    Ok(match opts.format {
        RenderFormat::Ascii => ascii_document(city, None, opts),
        RenderFormat::Svg => svg_document(city, None, opts),
    })
}

pub fn render_config(cfg: &PipeConfig, opts: &RenderOptions) -> Result<String> {
    check_scale(opts)?;
    Ok(match opts.format {
        RenderFormat::Ascii => ascii_document(cfg.city(), Some(cfg), opts),
        RenderFormat::Svg => svg_document(cfg.city(), Some(cfg), opts),
    })
}

fn check_scale(opts: &RenderOptions) -> Result<()> {
    if opts.scale > 0.0 {
        Ok(())
    } else {
        Err(Error::BadScale)
    }
}

struct Canvas {
    rows: usize,
    cols: usize,
    cells: Vec<(char, Option<usize>)>,
}

impl Canvas {
    fn new(rows: usize, cols: usize) -> Self {
        Canvas {
            rows,
            cols,
            cells: vec![(' ', None); rows * cols],
        }
    }

    fn set(&mut self, row: i64, col: i64, ch: char, wire: Option<usize>) {
        debug_assert!(row >= 0 && (row as usize) < self.rows);
        debug_assert!(col >= 0 && (col as usize) < self.cols);
        self.cells[row as usize * self.cols + col as usize] = (ch, wire);
    }

    fn line(&self, row: usize, color: bool) -> String {
        let mut out = String::new();
        let slice = &self.cells[row * self.cols..(row + 1) * self.cols];
        let width = slice
            .iter()
            .rposition(|&(ch, _)| ch != ' ')
            .map_or(0, |i| i + 1);
        for &(ch, wire) in &slice[..width] {
            match wire {
                Some(w) if color => {
                    let _ = write!(out, "\x1b[{}m{}\x1b[0m", ansi_color(w), ch);
                }
                _ => out.push(ch),
            }
        }
        out
    }

    fn is_blank(&self, row: usize) -> bool {
        self.cells[row * self.cols..(row + 1) * self.cols]
            .iter()
            .all(|&(ch, _)| ch == ' ')
    }
}

fn ascii_document(city: &City, cfg: Option<&PipeConfig>, opts: &RenderOptions) -> String {
    let m = city.m() as i64;
    let emax = *city.top_elevations().iter().max().expect("nonempty");
    let emin = *city.bottom_elevations().iter().min().expect("nonempty");
    let rows = (2 * (emax - emin) + 1) as usize;
    let cols = (2 * m + 1) as usize;
    let mut canvas = Canvas::new(rows, cols);
    let row_of = |twice_e: i64| 2 * emax - twice_e;

    let trace = cfg.map(|c| c.trace());
    let exit_wire: Option<Vec<usize>> = trace.as_ref().map(|t| {
        let inv = t.permutation.inverse();
        (1..=city.m()).map(|c| inv.image(c)).collect()
    });

    // boundary path edges; in a configuration the top edge j carries wire j
    // and the bottom edge c carries the wire exiting at customer c
    let top = city.top_elevations();
    let bottom = city.bottom_elevations();
    for j in 1..=m as usize {
        let (e0, e1) = (top[j - 1], top[j]);
        let ch = if e1 > e0 { '/' } else { '\\' };
        canvas.set(row_of(e0 + e1), 2 * j as i64 - 1, ch, cfg.map(|_| j));
        let (e0, e1) = (bottom[j - 1], bottom[j]);
        let ch = if e1 > e0 { '/' } else { '\\' };
        let wire = exit_wire.as_ref().map(|w| w[j - 1]);
        canvas.set(row_of(e0 + e1), 2 * j as i64 - 1, ch, wire);
    }

    match trace {
        None => {
            for cell in city.cells() {
                let (x, e) = (cell.x() as i64, cell.e());
                let r = row_of(2 * e);
                canvas.set(r - 1, 2 * x - 1, '/', None);
                canvas.set(r - 1, 2 * x + 1, '\\', None);
                canvas.set(r + 1, 2 * x - 1, '\\', None);
                canvas.set(r + 1, 2 * x + 1, '/', None);
                canvas.set(r, 2 * x, '*', None);
            }
        }
        Some(trace) => {
            for meeting in &trace.meetings {
                let (x, e) = (meeting.cell.x() as i64, meeting.cell.e());
                let (u, v) = meeting.wires;
                let r = row_of(2 * e);
                canvas.set(r - 1, 2 * x - 1, '/', Some(u));
                canvas.set(r - 1, 2 * x + 1, '\\', Some(v));
                match meeting.kind {
                    MeetingKind::Cross => {
                        canvas.set(r + 1, 2 * x - 1, '\\', Some(v));
                        canvas.set(r + 1, 2 * x + 1, '/', Some(u));
                        canvas.set(r, 2 * x, 'X', Some(u));
                    }
                    MeetingKind::Elbow => {
                        canvas.set(r + 1, 2 * x - 1, '\\', Some(u));
                        canvas.set(r + 1, 2 * x + 1, '/', Some(v));
                        canvas.set(r, 2 * x - 1, ')', Some(u));
                        canvas.set(r, 2 * x + 1, '(', Some(v));
                    }
                }
            }
        }
    }

    let label_line = || -> String {
        let mut chars = vec![' '; cols];
        for i in 1..=m as usize {
            chars[2 * i - 1] = char::from_digit((i % 10) as u32, 10).expect("single digit");
        }
        let line: String = chars.into_iter().collect();
        line.trim_end().to_string()
    };

    let mut out = String::new();
    if opts.labels {
        out.push_str(&label_line());
        out.push('\n');
    }
    let first = (0..rows).find(|&r| !canvas.is_blank(r)).unwrap_or(0);
    let last = (0..rows).rev().find(|&r| !canvas.is_blank(r)).unwrap_or(0);
    for r in first..=last {
        out.push_str(&canvas.line(r, opts.color));
        out.push('\n');
    }
    if opts.labels {
        out.push_str(&label_line());
        out.push('\n');
    }
    if let Some(exits) = exit_wire {
        out.push_str("->");
        for w in &exits {
            if opts.color {
                let _ = write!(out, " \x1b[{}m{}\x1b[0m", ansi_color(*w), w);
            } else {
                let _ = write!(out, " {w}");
            }
        }
        out.push('\n');
    }
    out
}

fn svg_document(city: &City, cfg: Option<&PipeConfig>, opts: &RenderOptions) -> String {
    let s = opts.scale;
    let m = city.m();
    let emax = *city.top_elevations().iter().max().expect("nonempty");
    let emin = *city.bottom_elevations().iter().min().expect("nonempty");
    let px = |x: f64| (x + 1.0) * s;
    let py = |e: f64| (emax as f64 - e + 1.0) * s;
    let width = (m as f64 + 2.0) * s;
    let height = ((emax - emin) as f64 + 2.0) * s;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );

    for (class, elevations) in [
        ("boundary top", city.top_elevations()),
        ("boundary bottom", city.bottom_elevations()),
    ] {
        let mut d = String::new();
        for (j, &e) in elevations.iter().enumerate() {
            let cmd = if j == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{}{},{} ", cmd, px(j as f64), py(e as f64));
        }
        let _ = writeln!(
            out,
            r##"<path class="{class}" d="{}" fill="none" stroke="#999" stroke-width="{}"/>"##,
            d.trim_end(),
            s / 16.0
        );
    }

    let trace = cfg.map(|c| c.trace());

    // one glyph group per cell
    for cell in city.cells() {
        let (x, e) = (cell.x() as f64, cell.e() as f64);
        let (lx, ly) = (px(x - 1.0), py(e));
        let (tx, ty) = (px(x), py(e + 1.0));
        let (rx, ry) = (px(x + 1.0), py(e));
        let (bx, by) = (px(x), py(e - 1.0));
        let _ = writeln!(out, r#"<g class="cell" data-cell="{},{}">"#, cell.a, cell.b);
        let _ = writeln!(
            out,
            r##"<path class="outline" d="M{lx},{ly} L{tx},{ty} L{rx},{ry} L{bx},{by} Z" fill="none" stroke="#bbb" stroke-width="{}"/>"##,
            s / 24.0
        );
        if let Some(cfg) = cfg {
            let stroke = s / 10.0;
            let (ulx, uly) = (px(x - 0.5), py(e + 0.5));
            let (urx, ury) = (px(x + 0.5), py(e + 0.5));
            let (llx, lly) = (px(x - 0.5), py(e - 0.5));
            let (lrx, lry) = (px(x + 0.5), py(e - 0.5));
            let (cx, cy) = (px(x), py(e));
            if cfg.is_elbow(*cell) {
                let _ = writeln!(
                    out,
                    r##"<path class="bend" d="M{ulx},{uly} Q{cx},{cy} {llx},{lly}" fill="none" stroke="#333" stroke-width="{stroke}"/>"##
                );
                let _ = writeln!(
                    out,
                    r##"<path class="bend" d="M{urx},{ury} Q{cx},{cy} {lrx},{lry}" fill="none" stroke="#333" stroke-width="{stroke}"/>"##
                );
            } else {
                let _ = writeln!(
                    out,
                    r##"<path class="cross" d="M{ulx},{uly} L{lrx},{lry} M{urx},{ury} L{llx},{lly}" fill="none" stroke="#333" stroke-width="{stroke}"/>"##
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if let Some(trace) = &trace {
        let routes = wire_routes(city, trace);
        for (wire, points) in routes.iter().enumerate() {
            let wire = wire + 1;
            let stroke = if opts.color { svg_color(wire) } else { "#000" };
            let pts: Vec<String> = points
                .iter()
                .map(|&(x, e)| format!("{},{}", px(x), py(e)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline class="wire" data-wire="{wire}" points="{}" fill="none" stroke="{stroke}" stroke-width="{}" stroke-linejoin="round"/>"#,
                pts.join(" "),
                s / 12.0
            );
        }
        let inv = trace.permutation.inverse();
        let bottom = city.bottom_elevations();
        for customer in 1..=m {
            let wire = inv.image(customer);
            let x = customer as f64 - 0.5;
            let e = (bottom[customer - 1] + bottom[customer]) as f64 / 2.0;
            let fill = if opts.color { svg_color(wire) } else { "#000" };
            let _ = writeln!(
                out,
                r#"<circle class="endpoint" data-wire="{wire}" data-customer="{customer}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
                px(x),
                py(e),
                s / 8.0
            );
        }
    }

    if opts.labels {
        let top = city.top_elevations();
        let bottom = city.bottom_elevations();
        let font = s * 0.45;
        for i in 1..=m {
            let x = i as f64 - 0.5;
            let e = (top[i - 1] + top[i]) as f64 / 2.0;
            let _ = writeln!(
                out,
                r#"<text class="label faucet" x="{}" y="{}" font-size="{font}" text-anchor="middle">{i}</text>"#,
                px(x),
                py(e) - 0.35 * s
            );
            let e = (bottom[i - 1] + bottom[i]) as f64 / 2.0;
            let _ = writeln!(
                out,
                r#"<text class="label customer" x="{}" y="{}" font-size="{font}" text-anchor="middle">{i}</text>"#,
                px(x),
                py(e) + 0.65 * s
            );
        }
    }

    out.push_str("</svg>\n");
    out
}

/// Geometric route of every wire through the configuration, in lattice
/// coordinates `(x, e)`.
fn wire_routes(city: &City, trace: &crate::config::TraceResult) -> Vec<Vec<(f64, f64)>> {
    let m = city.m();
    let top = city.top_elevations();
    let bottom = city.bottom_elevations();
    let mut routes: Vec<Vec<(f64, f64)>> = (1..=m)
        .map(|i| {
            let e = (top[i - 1] + top[i]) as f64 / 2.0;
            vec![(i as f64 - 0.5, e)]
        })
        .collect();
    let mut push = |wire: usize, p: (f64, f64)| {
        let route = &mut routes[wire - 1];
        if route.last() != Some(&p) {
            route.push(p);
        }
    };
    for meeting in &trace.meetings {
        let (x, e) = (meeting.cell.x() as f64, meeting.cell.e() as f64);
        let (u, v) = meeting.wires;
        let (ul, ur) = ((x - 0.5, e + 0.5), (x + 0.5, e + 0.5));
        let (ll, lr) = ((x - 0.5, e - 0.5), (x + 0.5, e - 0.5));
        match meeting.kind {
            MeetingKind::Cross => {
                push(u, ul);
                push(u, (x, e));
                push(u, lr);
                push(v, ur);
                push(v, (x, e));
                push(v, ll);
            }
            MeetingKind::Elbow => {
                push(u, ul);
                push(u, (x - 0.3, e));
                push(u, ll);
                push(v, ur);
                push(v, (x + 0.3, e));
                push(v, lr);
            }
        }
    }
    let inv = trace.permutation.inverse();
    for customer in 1..=m {
        let wire = inv.image(customer);
        let e = (bottom[customer - 1] + bottom[customer]) as f64 / 2.0;
        push(wire, (customer as f64 - 0.5, e));
    }
    routes
}

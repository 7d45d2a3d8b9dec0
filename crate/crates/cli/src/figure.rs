//! Static CSV and SVG renderings. Pixel positions are computed from the exact
//! rationals and rounded down, so output is byte-for-byte reproducible.

use std::fmt::Write;

use waveset_core::format::Document;
use waveset_core::intervals::{int, Rational};
use waveset_core::{format_rational, Error, Interval, IntervalSet, Result, StepFn, WindowStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureFormat {
    Csv,
    Svg,
}

const WIDTH: i64 = 800;
const MARGIN: i64 = 40;
const PLOT_HEIGHT: i64 = 200;

/// Rows as `(lo, hi, value)` for step-like objects.
fn step_rows(doc: &Document) -> Option<Vec<(Rational, Rational, Rational)>> {
    match doc {
        Document::StepFn(f) => Some(
            f.pieces()
                .iter()
                .map(|(i, v)| (i.lo().clone(), i.hi().clone(), v.clone()))
                .collect(),
        ),
        Document::DimWindow { dim, .. } => Some(window_rows(dim)),
        _ => None,
    }
}

fn window_rows(w: &WindowStep) -> Vec<(Rational, Rational, Rational)> {
    w.atoms()
        .map(|(i, v)| (i.lo().clone(), i.hi().clone(), v.clone()))
        .collect()
}

pub fn csv(doc: &Document) -> Result<String> {
    let mut out = String::new();
    match doc {
        Document::IntervalSet(s) => {
            out.push_str("lo,hi\n");
            for p in s.parts() {
                writeln!(out, "{},{}", format_rational(p.lo()), format_rational(p.hi())).unwrap();
            }
        }
        Document::StepFn(f) => {
            out.push_str("lo,hi,value\n");
            for (i, v) in f.pieces() {
                writeln!(
                    out,
                    "{},{},{}",
                    format_rational(i.lo()),
                    format_rational(i.hi()),
                    format_rational(v)
                )
                .unwrap();
            }
        }
        Document::DimWindow { dim, .. } => {
            // value holds on [break, next break); the closing break has none
            out.push_str("break,value\n");
            for (i, v) in dim.atoms() {
                writeln!(out, "{},{}", format_rational(i.lo()), format_rational(v)).unwrap();
            }
            writeln!(out, "{},", format_rational(dim.breaks().last().unwrap())).unwrap();
        }
        Document::Mat2(_) => return Err(unsupported(doc)),
    }
    Ok(out)
}

fn unsupported(doc: &Document) -> Error {
    Error::Input(format!("cannot plot a {} document", doc.kind()))
}

/// Maps `[lo, hi]` onto `[p0, p0 + span]` pixels.
struct Axis {
    lo: Rational,
    hi: Rational,
    p0: i64,
    span: i64,
}

impl Axis {
    fn new(lo: Rational, hi: Rational, p0: i64, span: i64) -> Self {
        let hi = if hi > lo { hi } else { &lo + int(1) };
        Axis { lo, hi, p0, span }
    }

    fn px(&self, x: &Rational) -> i64 {
        let t = (x - &self.lo) * int(self.span) / (&self.hi - &self.lo);
        let t: i64 = t.floor().to_integer().try_into().expect("pixel fits");
        self.p0 + t
    }
}

fn header(out: &mut String, height: i64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#).unwrap();
}

fn tick(out: &mut String, x: i64, y: i64, label: &Rational) {
    writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="gray"/>"#, y - 4, y + 4).unwrap();
    writeln!(
        out,
        r#"<text x="{x}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
        y + 16,
        format_rational(label)
    )
    .unwrap();
}

fn sorted_ticks<'a>(points: impl Iterator<Item = &'a Rational>) -> Vec<Rational> {
    let mut t: Vec<Rational> = points.cloned().collect();
    t.sort();
    t.dedup();
    t
}

fn number_line(s: &IntervalSet) -> String {
    let hull = s.hull().unwrap_or_else(|| Interval::new(int(0), int(1)).unwrap());
    let axis = Axis::new(hull.lo().clone(), hull.hi().clone(), MARGIN, WIDTH - 2 * MARGIN);
    let height = 80;
    let y = 40;
    let mut out = String::new();
    header(&mut out, height);
    writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#,
        WIDTH - MARGIN
    )
    .unwrap();
    for p in s.parts() {
        let (x0, x1) = (axis.px(p.lo()), axis.px(p.hi()));
        writeln!(
            out,
            r#"<rect x="{x0}" y="{}" width="{}" height="8" fill="steelblue"/>"#,
            y - 4,
            (x1 - x0).max(1)
        )
        .unwrap();
    }
    for t in sorted_ticks(s.parts().iter().flat_map(|p| [p.lo(), p.hi()])) {
        tick(&mut out, axis.px(&t), y, &t);
    }
    out.push_str("</svg>\n");
    out
}

fn step_plot(rows: &[(Rational, Rational, Rational)], domain: Option<Interval>) -> String {
    let (xlo, xhi) = match (&domain, rows.first(), rows.last()) {
        (Some(d), _, _) => (d.lo().clone(), d.hi().clone()),
        (None, Some(first), Some(last)) => (first.0.clone(), last.1.clone()),
        _ => (int(0), int(1)),
    };
    let values = rows.iter().map(|r| &r.2);
    let ymax = values.clone().fold(int(0), |m, v| if v > &m { v.clone() } else { m });
    let ymin = values.fold(int(0), |m, v| if v < &m { v.clone() } else { m });
    let x = Axis::new(xlo, xhi, MARGIN, WIDTH - 2 * MARGIN);
    // y grows downward: map ymax to the top margin
    let top = 20;
    let y = Axis::new(ymin.clone(), ymax.clone(), 0, PLOT_HEIGHT);
    let py = |v: &Rational| top + PLOT_HEIGHT - y.px(v);
    let height = top + PLOT_HEIGHT + 40;
    let mut out = String::new();
    header(&mut out, height);
    let base = py(&int(0));
    writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        WIDTH - MARGIN
    )
    .unwrap();
    for (lo, hi, v) in rows {
        let (x0, x1, yv) = (x.px(lo), x.px(hi), py(v));
        writeln!(out, r#"<line x1="{x0}" y1="{yv}" x2="{x1}" y2="{yv}" stroke="steelblue" stroke-width="2"/>"#)
            .unwrap();
    }
    for t in sorted_ticks(rows.iter().flat_map(|r| [&r.0, &r.1])) {
        tick(&mut out, x.px(&t), base, &t);
    }
    for v in sorted_ticks(rows.iter().map(|r| &r.2).chain([&ymin, &ymax])) {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{}</text>"#,
            MARGIN - 6,
            py(&v) + 3,
            format_rational(&v)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn svg(doc: &Document) -> Result<String> {
    match doc {
        Document::IntervalSet(s) => Ok(number_line(s)),
        Document::StepFn(f) => Ok(step_plot(&step_rows(doc).unwrap(), support_hull(f))),
        Document::DimWindow { dim, .. } => Ok(step_plot(&step_rows(doc).unwrap(), Some(dim.domain()))),
        Document::Mat2(_) => Err(unsupported(doc)),
    }
}

fn support_hull(f: &StepFn) -> Option<Interval> {
    f.support().hull()
}

pub fn render(doc: &Document, format: FigureFormat) -> Result<String> {
    match format {
        FigureFormat::Csv => csv(doc),
        FigureFormat::Svg => svg(doc),
    }
}

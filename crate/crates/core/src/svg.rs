//! Static SVG 1.1 drawings of path tuples and domino tilings, 20px per unit.

use std::fmt::Write;

use crate::aztec::{tiling_to_paths, Orientation, Parity, Tiling};
use crate::error::Result;
use crate::nipaths::PathTuple;

const UNIT: f64 = 20.0;
const MARGIN: f64 = 10.0;
const PATH_COLOURS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Maps plane coordinates into the picture with the y axis pointing up.
struct Frame {
    x0: f64,
    y1: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Frame {
            x0: xmin,
            y1: ymax,
            width: (xmax - xmin) * UNIT + 2.0 * MARGIN,
            height: (ymax - ymin) * UNIT + 2.0 * MARGIN,
        }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.x0) * UNIT + MARGIN
    }

    fn y(&self, y: f64) -> f64 {
        (self.y1 - y) * UNIT + MARGIN
    }

    fn open(&self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            w = self.width,
            h = self.height
        )
    }
}

fn polylines(out: &mut String, frame: &Frame, p: &PathTuple, dx: f64, dy: f64) {
    for (k, path) in p.paths().iter().enumerate() {
        let pts: Vec<String> = path
            .vertices()
            .map(|(x, y)| format!("{},{}", frame.x(x as f64 + dx), frame.y(y as f64 + dy)))
            .collect();
        let colour = PATH_COLOURS[k % PATH_COLOURS.len()];
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"3\" stroke-linejoin=\"round\"/>",
            pts.join(" ")
        );
        for (x, y) in path.vertices() {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{colour}\"/>",
                frame.x(x as f64 + dx),
                frame.y(y as f64 + dy)
            );
        }
    }
}

/// The tuple on its lattice, with the x-axis dashed.
pub fn tuple_svg(p: &PathTuple) -> String {
    let pts: Vec<(i64, i64)> = p.paths().iter().flat_map(|q| q.vertices()).collect();
    let xmin = pts.iter().map(|v| v.0).min().unwrap_or(0).min(0) as f64;
    let xmax = pts.iter().map(|v| v.0).max().unwrap_or(0).max(2 * p.m()) as f64;
    let ymax = pts.iter().map(|v| v.1).max().unwrap_or(0).max(1) as f64;
    let frame = Frame::new(xmin, xmax, 0.0, ymax);
    let mut out = frame.open();
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>",
        frame.x(xmin),
        frame.x(xmax),
        y = frame.y(0.0)
    );
    polylines(&mut out, &frame, p, 0.0, 0.0);
    out.push_str("</svg>\n");
    out
}

fn domino_fill(o: Orientation, p: Parity) -> &'static str {
    match (o, p) {
        (Orientation::Horizontal, Parity::Even) => "#f2f2f2",
        (Orientation::Horizontal, Parity::Odd) => "#9ecae1",
        (Orientation::Vertical, Parity::Even) => "#fdd0a2",
        (Orientation::Vertical, Parity::Odd) => "#a1d99b",
    }
}

/// Dominoes in four styles by orientation and parity; `overlay` adds the paths.
pub fn tiling_svg(t: &Tiling, overlay: bool) -> Result<String> {
    let cells = t.region().cells();
    let xmin = cells.iter().map(|c| c.0).min().unwrap_or(0) as f64;
    let xmax = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0) as f64;
    let ymin = cells.iter().map(|c| c.1).min().unwrap_or(0) as f64;
    let ymax = cells.iter().map(|c| c.1 + 1).max().unwrap_or(0) as f64;
    let frame = Frame::new(xmin, xmax, ymin, ymax);
    let mut out = frame.open();
    for d in t.dominoes() {
        let (i, j) = d.anchor;
        let (w, h) = match d.orientation {
            Orientation::Horizontal => (2.0, 1.0),
            Orientation::Vertical => (1.0, 2.0),
        };
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            frame.x(i as f64),
            frame.y(j as f64 + h),
            w * UNIT,
            h * UNIT,
            domino_fill(d.orientation, d.parity)
        );
    }
    if overlay {
        let p = tiling_to_paths(t)?;
        let r = t.region();
        polylines(&mut out, &frame, &p, -(r.path_width() as f64), 0.5 - r.n() as f64);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::aztec::{enumerate_tilings, Region};
    use crate::nipaths::enumerate_tuples;

    #[test]
    fn well_formed_documents() {
        let r = Arc::new(Region::aztec(2).unwrap());
        let t = &enumerate_tilings(&r).unwrap()[3];
        let s = tiling_svg(t, true).unwrap();
        assert!(s.starts_with("<?xml") && s.ends_with("</svg>\n"));
        assert_eq!(s.matches("<rect").count(), 1 + 6);
        assert_eq!(s.matches("<polyline").count(), 2);
        let p = &enumerate_tuples(1, 2).unwrap()[0];
        assert_eq!(tuple_svg(p).matches("<polyline").count(), 2);
    }
}

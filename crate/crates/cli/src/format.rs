//! Data file formats: gnuplot-compatible ASCII and CSV.
//!
//! Numbers are written with the shortest decimal representation that parses
//! back to the identical 64-bit float, so files round-trip bit-exactly.

use std::fmt::Write as _;

use swbench_core::catalog::{Built, Generated, Params};
use swbench_core::{froude, ChannelSpec, SolutionProfile};

const COLUMNS_1D: [&str; 7] = ["x", "h", "u", "z", "q", "h+z", "Fr"];
const COLUMNS_2D: [&str; 6] = ["x", "y", "h", "u", "v", "z"];

fn froude_or_zero(spec: &ChannelSpec<f64>, h: f64, u: f64) -> f64 {
    froude(h, u, spec.gravity, spec.dry_tolerance).unwrap_or(0.0)
}

fn row_1d(spec: &ChannelSpec<f64>, p: &SolutionProfile<f64>, i: usize) -> [f64; 7] {
    let x = p.grid.center(i);
    let (h, u, z) = (p.h[i], p.u[i], p.z[i]);
    [x, h, u, z, h * u, h + z, froude_or_zero(spec, h, u)]
}

fn header(out: &mut String, id: &str, built: &Built<f64>, params: &Params, comment: &str) {
    let _ = writeln!(out, "{comment} swbench solution {id}");
    match &built.solution {
        Generated::OneD(p) => {
            let _ = writeln!(out, "{comment} cells: {}", p.grid.n);
            let _ = writeln!(out, "{comment} time: {}", p.time);
        }
        Generated::TwoD(f) => {
            let _ = writeln!(out, "{comment} cells: {} x {}", f.grid.nx, f.grid.ny);
            let _ = writeln!(out, "{comment} time: {}", f.time);
        }
    }
    for (key, value) in params.iter() {
        let _ = writeln!(out, "{comment} param {key} = {value}");
    }
    for note in &built.notes {
        let _ = writeln!(out, "{comment} note: {note}");
    }
}

/// Renders a generated solution as a gnuplot-compatible ASCII document:
/// `#` metadata lines, whitespace-separated data columns, one blank line
/// between y-rows in two dimensions, LF endings.
pub fn gnuplot(id: &str, built: &Built<f64>, params: &Params) -> String {
    let mut out = String::new();
    header(&mut out, id, built, params, "#");
    match &built.solution {
        Generated::OneD(p) => {
            let _ = writeln!(out, "# columns: {}", COLUMNS_1D.join(" "));
            for i in 0..p.grid.n {
                let row = row_1d(&built.spec, p, i);
                let rendered: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                let _ = writeln!(out, "{}", rendered.join(" "));
            }
        }
        Generated::TwoD(f) => {
            let _ = writeln!(out, "# columns: {}", COLUMNS_2D.join(" "));
            for j in 0..f.grid.ny {
                for i in 0..f.grid.nx {
                    let (x, y) = f.grid.center(i, j);
                    let k = f.grid.index(i, j);
                    let row = [x, y, f.h[k], f.u[k], f.v[k], f.z[k]];
                    let rendered: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                    let _ = writeln!(out, "{}", rendered.join(" "));
                }
                if j + 1 < f.grid.ny {
                    let _ = writeln!(out);
                }
            }
        }
    }
    out
}

/// Same values as [`gnuplot`], comma-separated with a header row.
pub fn csv(id: &str, built: &Built<f64>, params: &Params) -> String {
    let _ = id;
    let _ = params;
    let mut out = String::new();
    match &built.solution {
        Generated::OneD(p) => {
            let _ = writeln!(out, "{}", COLUMNS_1D.join(","));
            for i in 0..p.grid.n {
                let row = row_1d(&built.spec, p, i);
                let rendered: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                let _ = writeln!(out, "{}", rendered.join(","));
            }
        }
        Generated::TwoD(f) => {
            let _ = writeln!(out, "{}", COLUMNS_2D.join(","));
            for j in 0..f.grid.ny {
                for i in 0..f.grid.nx {
                    let (x, y) = f.grid.center(i, j);
                    let k = f.grid.index(i, j);
                    let row = [x, y, f.h[k], f.u[k], f.v[k], f.z[k]];
                    let rendered: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                    let _ = writeln!(out, "{}", rendered.join(","));
                }
            }
        }
    }
    out
}

/// A parsed gnuplot data file: metadata lines and numeric rows (blank-line
/// block structure flattened).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGnuplot {
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Parses a gnuplot document written by [`gnuplot`]; used to verify the
/// bit-exact round trip.
pub fn parse_gnuplot(text: &str) -> Result<ParsedGnuplot, String> {
    let mut metadata = Vec::new();
    let mut columns = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(cols) = rest.strip_prefix("columns:") {
                columns = cols.split_whitespace().map(str::to_string).collect();
            } else {
                metadata.push(rest.to_string());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> =
            line.split_whitespace().map(|tok| tok.parse::<f64>()).collect();
        match row {
            Ok(values) => {
                if !columns.is_empty() && values.len() != columns.len() {
                    return Err(format!(
                        "row has {} fields, expected {}",
                        values.len(),
                        columns.len()
                    ));
                }
                rows.push(values);
            }
            Err(e) => return Err(format!("bad numeric field: {e}")),
        }
    }
    Ok(ParsedGnuplot { metadata, columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use swbench_core::catalog;

    fn built(id: &str, cells: usize) -> (Built<f64>, Params) {
        let entry = catalog::find(id).unwrap();
        let params = entry.resolve(&[]).unwrap();
        let built = catalog::generate::<f64>(id, &params, cells, None, None).unwrap();
        (built, params)
    }

    #[test]
    fn gnuplot_round_trips_bit_exactly() {
        let (b, params) = built("transient/dambreak/ritter", 37);
        let text = gnuplot("transient/dambreak/ritter", &b, &params);
        let parsed = parse_gnuplot(&text).unwrap();
        assert_eq!(parsed.columns, COLUMNS_1D);
        assert_eq!(parsed.rows.len(), 37);
        let profile = match &b.solution {
            Generated::OneD(p) => p,
            _ => unreachable!(),
        };
        for (i, row) in parsed.rows.iter().enumerate() {
            let expected = row_1d(&b.spec, profile, i);
            for (a, e) in row.iter().zip(expected.iter()) {
                assert!(a.to_bits() == e.to_bits(), "cell {i}: {a} != {e}");
            }
        }
    }

    #[test]
    fn gnuplot_2d_has_blank_separated_blocks() {
        let (b, params) = built("transient/thacker/curved-2d", 8);
        let text = gnuplot("transient/thacker/curved-2d", &b, &params);
        let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
        assert_eq!(blocks.len(), 8, "one block per y-row");
        assert!(text.ends_with('\n'));
        let parsed = parse_gnuplot(&text).unwrap();
        assert_eq!(parsed.rows.len(), 64);
        assert_eq!(parsed.columns, COLUMNS_2D);
    }

    #[test]
    fn csv_same_values_different_separator() {
        let (b, params) = built("steady/bump/subcritical", 16);
        let g = gnuplot("steady/bump/subcritical", &b, &params);
        let c = csv("steady/bump/subcritical", &b, &params);
        let mut lines = c.lines();
        assert_eq!(lines.next().unwrap(), "x,h,u,z,q,h+z,Fr");
        let g_rows: Vec<&str> = g.lines().filter(|l| !l.starts_with('#')).collect();
        for (crow, grow) in lines.zip(g_rows.iter()) {
            assert_eq!(crow.replace(',', " "), *grow);
        }
    }

    #[test]
    fn determinism() {
        let (b1, p1) = built("gvf/M1", 50);
        let (b2, p2) = built("gvf/M1", 50);
        assert_eq!(gnuplot("gvf/M1", &b1, &p1), gnuplot("gvf/M1", &b2, &p2));
    }
}

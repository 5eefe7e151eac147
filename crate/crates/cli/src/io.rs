//! CSV formats. Floats are written with 17 significant digits so every
//! double round-trips exactly and repeated runs are byte-identical.

use bathtangle::scan::ScanRow;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const AMPLITUDE_HEADER: &str = "d,nu,k0,kc,r,method,amp_re,amp_im,abs_err";
pub const SCAN_HEADER: &str = "r,amp_re,amp_im,tangle,method";

pub fn amplitude_csv(d: u8, nu: f64, k0: f64, kc: f64, rows: &[ScanRow]) -> String {
    let mut out = String::from(AMPLITUDE_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{d},{},{},{},{},{},{},{},{}\n",
            fmt_f64(nu),
            fmt_f64(k0),
            fmt_f64(kc),
            fmt_f64(row.r),
            row.method.token(),
            fmt_f64(row.amp.re),
            fmt_f64(row.amp.im),
            fmt_f64(row.abs_err),
        ));
    }
    out
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(row.r),
            fmt_f64(row.amp.re),
            fmt_f64(row.amp.im),
            fmt_f64(row.tangle),
            row.method.token(),
        ));
    }
    out
}

/// Which column of a scan CSV to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitColumn {
    Tangle,
    AmpModulus,
}

/// Reads (r, y) points from a CSV. Accepts the scan schema (header line,
/// `y` from the requested column) or plain headerless two-column `r,y`
/// data. Errors carry the offending line number.
pub fn read_fit_points(text: &str, column: FitColumn) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines().enumerate().peekable();
    if let Some(&(_, first)) = lines.peek() {
        let head: Vec<&str> = first.split(',').map(str::trim).collect();
        if head.first().and_then(|s| s.parse::<f64>().ok()).is_none() {
            let find = |name: &str| head.iter().position(|h| *h == name);
            let idx_r = find("r").ok_or("header has no 'r' column".to_string())?;
            lines.next();
            return match column {
                FitColumn::Tangle => {
                    let idx_y =
                        find("tangle").ok_or("header has no 'tangle' column".to_string())?;
                    read_rows(lines, idx_r, idx_y, None)
                }
                FitColumn::AmpModulus => {
                    let re = find("amp_re").ok_or("header has no 'amp_re' column".to_string())?;
                    let im = find("amp_im").ok_or("header has no 'amp_im' column".to_string())?;
                    read_rows(lines, idx_r, re, Some(im))
                }
            };
        }
    }
    read_rows(lines, 0, 1, None)
}

fn read_rows<'a, I: Iterator<Item = (usize, &'a str)>>(
    lines: I,
    idx_r: usize,
    idx_y: usize,
    idx_im: Option<usize>,
) -> Result<Vec<(f64, f64)>, String> {
    let mut points = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parse = |idx: usize| -> Result<f64, String> {
            fields
                .get(idx)
                .ok_or(format!("line {}: missing column {}", i + 1, idx + 1))?
                .parse::<f64>()
                .map_err(|e| format!("line {}: {e}", i + 1))
        };
        let r = parse(idx_r)?;
        let y = match idx_im {
            None => parse(idx_y)?,
            Some(im) => parse(idx_y)?.hypot(parse(im)?),
        };
        points.push((r, y));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_roundtrip() {
        for &x in &[0.1, 1.0 / 3.0, 2.5e-300, -7.25e17, std::f64::consts::PI] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn reads_scan_schema_and_bare_pairs() {
        let csv = "r,amp_re,amp_im,tangle,method\n1.0,2.0,0.0,4.0,quad\n2.0,1.0,0.0,1.0,quad\n";
        let pts = read_fit_points(csv, FitColumn::Tangle).unwrap();
        assert_eq!(pts, vec![(1.0, 4.0), (2.0, 1.0)]);
        let pts = read_fit_points(csv, FitColumn::AmpModulus).unwrap();
        assert_eq!(pts, vec![(1.0, 2.0), (2.0, 1.0)]);
        let pts = read_fit_points("1.0,5.0\n2.0,2.5\n", FitColumn::Tangle).unwrap();
        assert_eq!(pts, vec![(1.0, 5.0), (2.0, 2.5)]);
    }

    #[test]
    fn bad_line_is_reported_with_number() {
        let csv = "1.0,5.0\nnot,a,number\n";
        let err = read_fit_points(csv, FitColumn::Tangle).unwrap_err();
        assert!(err.contains("line 2"), "{err}");
    }
}

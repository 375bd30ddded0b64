//! Row-major text matrices: `dim N`, then `N` lines of `N` entries `re,im`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::SynthError;
use crate::ir::format_angle;

fn bad(line: usize, message: impl Into<String>) -> SynthError {
    SynthError::MatrixFile {
        line,
        message: message.into(),
    }
}

/// Parses the matrix text format. Blank lines and `#` comments are skipped.
pub fn parse_matrix_file(text: &str) -> Result<DMatrix<C64>, SynthError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| bad(1, "missing `dim` header"))?;
    let dim: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => n
            .parse()
            .map_err(|_| bad(hline, format!("bad dimension `{n}`")))?,
        _ => return Err(bad(hline, "expected `dim <N>`")),
    };
    if dim == 0 || !dim.is_power_of_two() {
        return Err(bad(hline, format!("dimension {dim} is not a power of two")));
    }

    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (lineno, line) in lines {
        if rows == dim {
            return Err(bad(lineno, format!("more than {dim} rows")));
        }
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != dim {
            return Err(bad(
                lineno,
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        for tok in row {
            let (re, im) = tok
                .split_once(',')
                .ok_or_else(|| bad(lineno, format!("entry `{tok}` is not `re,im`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| bad(lineno, format!("bad number `{s}`")))
            };
            entries.push(C64::new(parse(re)?, parse(im)?));
        }
        rows += 1;
    }
    if rows != dim {
        return Err(bad(
            text.lines().count().max(1),
            format!("expected {dim} rows, found {rows}"),
        ));
    }
    Ok(DMatrix::from_row_slice(dim, dim, &entries))
}

pub fn serialize_matrix_file(m: &DMatrix<C64>) -> String {
    let mut out = format!("dim {}\n", m.nrows());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                format!(
                    "{},{}",
                    format_angle(m[(i, j)].re),
                    format_angle(m[(i, j)].im)
                )
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

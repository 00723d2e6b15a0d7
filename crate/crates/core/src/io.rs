//! Line-oriented text formats.
//!
//! Pencil files:
//!
//! ```text
//! PENCIL 1
//! dim <n>
//! E
//! <n rows of n entries>
//! A
//! <n rows of n entries>
//! ```
//!
//! Matrix files use the header `MATRIX 1` followed by `dims <rows> <cols>`
//! and the rows. Vector files hold one entry per line. An entry is
//! `<re>:<im>` with each part in decimal or scientific notation and `.` as
//! the decimal separator. Lines whose first non-blank character is `#` and
//! blank lines are ignored everywhere.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so `parse(format(x)) == x` bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::ParseError;
use crate::integrator::Trajectory;
use crate::linalg::{c64, CMatrix, CVector};
use crate::pencil::Pencil;

pub const PENCIL_HEADER: &str = "PENCIL 1";
pub const MATRIX_HEADER: &str = "MATRIX 1";

/// Shortest round-trip decimal for a finite `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:?}")
}

pub fn format_complex(z: Complex64) -> String {
    format!("{:?}:{:?}", z.re, z.im)
}

/// Content lines with their 1-based numbers; comments and blanks dropped.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last_line: 0,
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last_line = i + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, line));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.next_content()
            .ok_or_else(|| ParseError::syntax(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")))
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.next_content() {
            None => Ok(()),
            Some((ln, line)) => {
                let col = tokens(line).first().map_or(1, |t| t.0);
                Err(ParseError::syntax(ln, col, "unexpected content after the last section"))
            }
        }
    }
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

fn parse_real(text: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    let valid_chars = text
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'));
    if text.is_empty() || !valid_chars || !text.chars().any(|c| c.is_ascii_digit()) {
        return Err(ParseError::syntax(line, column, format!("invalid number `{text}`")));
    }
    let x: f64 = text
        .parse()
        .map_err(|_| ParseError::syntax(line, column, format!("invalid number `{text}`")))?;
    if !x.is_finite() {
        return Err(ParseError::syntax(line, column, format!("number `{text}` is out of range")));
    }
    Ok(x)
}

/// Parses one `<re>:<im>` entry located at `(line, column)`.
pub fn parse_entry(text: &str, line: usize, column: usize) -> Result<Complex64, ParseError> {
    let (re, im) = text
        .split_once(':')
        .ok_or_else(|| ParseError::syntax(line, column, format!("entry `{text}` is not of the form re:im")))?;
    let re = parse_real(re, line, column)?;
    let im_column = column + text.find(':').map_or(0, |i| text[..i].chars().count() + 1);
    let im = parse_real(im, line, im_column)?;
    Ok(c64(re, im))
}

fn parse_positive(text: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    match text.parse::<usize>() {
        Ok(n) if n > 0 && text.chars().all(|c| c.is_ascii_digit()) => Ok(n),
        _ => Err(ParseError::syntax(line, column, format!("{what} must be a positive integer, got `{text}`"))),
    }
}

fn expect_keyword_line(lines: &mut Lines<'_>, words: &[&str], what: &str) -> Result<(), ParseError> {
    let (ln, line) = lines.expect(what)?;
    let toks = tokens(line);
    let matches = toks.len() == words.len() && toks.iter().zip(words).all(|(t, w)| t.1 == *w);
    if !matches {
        let col = toks.first().map_or(1, |t| t.0);
        return Err(ParseError::syntax(ln, col, format!("expected {what}")));
    }
    Ok(())
}

fn parse_rows(lines: &mut Lines<'_>, rows: usize, cols: usize, section: &str) -> Result<CMatrix, ParseError> {
    // grows with the input rather than the declared size
    let mut data: Vec<Complex64> = Vec::new();
    for r in 0..rows {
        let (ln, line) = lines.expect(&format!("row {} of {section}", r + 1))?;
        let toks = tokens(line);
        if toks.len() != cols {
            let col = toks.get(cols).map_or(1, |t| t.0);
            return Err(ParseError::dimension(
                ln,
                col,
                format!("row {} of {section} has {} entries, expected {cols}", r + 1, toks.len()),
            ));
        }
        for (col, tok) in toks {
            data.push(parse_entry(tok, ln, col)?);
        }
    }
    Ok(CMatrix::from_row_iterator(rows, cols, data))
}

fn parse_dims(lines: &mut Lines<'_>, keyword: &str, count: usize) -> Result<Vec<usize>, ParseError> {
    let what = format!("`{keyword}` line");
    let (ln, line) = lines.expect(&what)?;
    let toks = tokens(line);
    if toks.first().map(|t| t.1) != Some(keyword) {
        let col = toks.first().map_or(1, |t| t.0);
        return Err(ParseError::syntax(ln, col, format!("expected {what}")));
    }
    if toks.len() != count + 1 {
        let col = toks.get(count + 1).or(toks.last()).map_or(1, |t| t.0);
        return Err(ParseError::syntax(ln, col, format!("`{keyword}` takes {count} value(s)")));
    }
    toks[1..]
        .iter()
        .map(|&(col, t)| parse_positive(t, ln, col, "dimension"))
        .collect()
}

pub fn parse_pencil(text: &str) -> Result<Pencil, ParseError> {
    let mut lines = Lines::new(text);
    expect_keyword_line(&mut lines, &["PENCIL", "1"], "header `PENCIL 1`")?;
    let n = parse_dims(&mut lines, "dim", 1)?[0];
    expect_keyword_line(&mut lines, &["E"], "section marker `E`")?;
    let e = parse_rows(&mut lines, n, n, "E")?;
    expect_keyword_line(&mut lines, &["A"], "section marker `A`")?;
    let a = parse_rows(&mut lines, n, n, "A")?;
    lines.expect_end()?;
    Ok(Pencil::new(e, a).expect("parsed entries are finite and square"))
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, ParseError> {
    let mut lines = Lines::new(text);
    expect_keyword_line(&mut lines, &["MATRIX", "1"], "header `MATRIX 1`")?;
    let dims = parse_dims(&mut lines, "dims", 2)?;
    let m = parse_rows(&mut lines, dims[0], dims[1], "matrix")?;
    lines.expect_end()?;
    Ok(m)
}

pub fn parse_vector(text: &str) -> Result<CVector, ParseError> {
    let mut lines = Lines::new(text);
    let mut data = Vec::new();
    while let Some((ln, line)) = lines.next_content() {
        let toks = tokens(line);
        if toks.len() != 1 {
            return Err(ParseError::dimension(ln, toks[1].0, "vector files hold one entry per line"));
        }
        data.push(parse_entry(toks[0].1, ln, toks[0].0)?);
    }
    if data.is_empty() {
        return Err(ParseError::syntax(lines.last_line + 1, 1, "vector file holds no entries"));
    }
    Ok(CVector::from_vec(data))
}

fn write_rows(out: &mut String, m: &CMatrix) {
    for row in m.row_iter() {
        let entries: Vec<String> = row.iter().map(|z| format_complex(*z)).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
}

pub fn format_pencil(p: &Pencil) -> String {
    let mut out = format!("{PENCIL_HEADER}\ndim {}\nE\n", p.n());
    write_rows(&mut out, p.e());
    out.push_str("A\n");
    write_rows(&mut out, p.a());
    out
}

pub fn format_matrix(m: &CMatrix) -> String {
    let mut out = format!("{MATRIX_HEADER}\ndims {} {}\n", m.nrows(), m.ncols());
    write_rows(&mut out, m);
    out
}

pub fn format_vector(v: &CVector) -> String {
    v.iter().map(|z| format_complex(*z) + "\n").collect()
}

/// `t,norm_Ex,x1_re,x1_im,...,xn_re,xn_im` followed by one row per sample.
pub fn format_trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.states.first().map_or(0, |x| x.len());
    let mut out = String::from("t,norm_Ex");
    for i in 1..=n {
        let _ = write!(out, ",x{i}_re,x{i}_im");
    }
    out.push('\n');
    for ((t, x), norm) in traj.times.iter().zip(&traj.states).zip(&traj.ex_norms) {
        out.push_str(&format_real(*t));
        out.push(',');
        out.push_str(&format_real(*norm));
        for z in x.iter() {
            let _ = write!(out, ",{:?},{:?}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;
    use proptest::prelude::*;

    #[test]
    fn minimal_pencil() {
        let p = parse_pencil("PENCIL 1\ndim 1\nE\n1:0\nA\n-1:0").unwrap();
        assert_eq!(p.e()[(0, 0)], c64(1.0, 0.0));
        assert_eq!(p.a()[(0, 0)], c64(-1.0, 0.0));
    }

    #[test]
    fn comments_blanks_and_scientific() {
        let text = "# generated\nPENCIL 1\n\ndim 2\nE\n  # first row\n1.5:0 -3e2:1.0\n0:0 0:0\nA\n1:0 0:0\n0:0 1:-2.5E-3\n# trailing\n";
        let p = parse_pencil(text).unwrap();
        assert_eq!(p.e()[(0, 1)], c64(-300.0, 1.0));
        assert_eq!(p.a()[(1, 1)], c64(1.0, -2.5e-3));
    }

    #[test]
    fn comma_decimal_rejected_with_position() {
        let err = parse_pencil("PENCIL 1\ndim 1\nE\n1,5:0\nA\n-1:0").unwrap_err();
        assert_eq!((err.line, err.column), (4, 1));
        assert_eq!(err.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn missing_a_section_names_marker() {
        let err = parse_pencil("PENCIL 1\ndim 1\nE\n1:0\n").unwrap_err();
        assert!(err.message.contains("`A`"), "{}", err.message);
        assert_eq!(err.line, 5);
        let err = parse_pencil("PENCIL 1\ndim 1\nE\n1:0\nB\n1:0").unwrap_err();
        assert!(err.message.contains("`A`"));
        assert_eq!((err.line, err.column), (5, 1));
    }

    #[test]
    fn row_length_is_dimension_mismatch() {
        let err = parse_pencil("PENCIL 1\ndim 2\nE\n1:0 0:0 7:0\n0:0 1:0\nA\n1:0 0:0\n0:0 1:0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DimensionMismatch);
        assert_eq!((err.line, err.column), (4, 9));
    }

    #[test]
    fn rejects_bad_numbers() {
        for bad in ["inf:0", "1:nan", "1e400:0", "1", "1:2:3", ":1", "0x1:0", "1:", "e:0", "--1:0"] {
            let text = format!("PENCIL 1\ndim 1\nE\n{bad}\nA\n1:0");
            assert!(parse_pencil(&text).is_err(), "{bad}");
        }
        let err = parse_pencil("PENCIL 1\ndim 1\nE\n  1:abc\nA\n1:0").unwrap_err();
        assert_eq!((err.line, err.column), (4, 5));
    }

    #[test]
    fn header_and_dim_errors() {
        assert_eq!(parse_pencil("PENCIL 2\ndim 1").unwrap_err().line, 1);
        assert_eq!(parse_pencil("").unwrap_err().line, 1);
        assert!(parse_pencil("PENCIL 1\ndim 0\nE\nA\n").is_err());
        assert!(parse_pencil("PENCIL 1\ndim -1").is_err());
        assert!(parse_pencil("PENCIL 1\ndim 1 2").is_err());
        // huge declared size fails on missing rows, not on allocation
        assert!(parse_pencil("PENCIL 1\ndim 4000000000\nE\n").is_err());
    }

    #[test]
    fn trailing_content_rejected() {
        let err = parse_pencil("PENCIL 1\ndim 1\nE\n1:0\nA\n1:0\n2:0").unwrap_err();
        assert_eq!(err.line, 7);
    }

    #[test]
    fn matrix_and_vector_files() {
        let m = parse_matrix("MATRIX 1\ndims 2 3\n1:0 2:0 3:0\n4:0 5:0 6:1\n").unwrap();
        assert_eq!(m.shape(), (2, 3));
        assert_eq!(m[(1, 2)], c64(6.0, 1.0));
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("MATRIX 1\ndims 2\n").is_err());

        let v = parse_vector("# z0\n0:0\n1.0:-0.5\n").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(parse_vector(&format_vector(&v)).unwrap(), v);
        assert!(parse_vector("# nothing\n").is_err());
        assert!(parse_vector("1:0 2:0\n").is_err());
    }

    #[test]
    fn trajectory_header() {
        let traj = Trajectory {
            times: vec![0.0, 0.5],
            states: vec![CVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 2.0)]); 2],
            ex_norms: vec![1.0, 0.25],
        };
        let csv = format_trajectory_csv(&traj);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,norm_Ex,x1_re,x1_im,x2_re,x2_im"));
        assert_eq!(lines.next(), Some("0.0,1.0,1.0,0.0,0.0,2.0"));
        assert_eq!(lines.next(), Some("0.5,0.25,1.0,0.0,0.0,2.0"));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            Just(-0.0),
            Just(f64::MIN_POSITIVE),
            Just(5e-324),
        ]
    }

    proptest! {
        #[test]
        fn pencil_round_trip_is_bit_exact(
            n in 1usize..5,
            raw in prop::collection::vec((finite(), finite()), 50),
        ) {
            let entries: Vec<Complex64> = raw.iter().cycle().take(2 * n * n).map(|&(r, i)| c64(r, i)).collect();
            let e = CMatrix::from_row_slice(n, n, &entries[..n * n]);
            let a = CMatrix::from_row_slice(n, n, &entries[n * n..]);
            let p = Pencil::new(e, a).unwrap();
            let back = parse_pencil(&format_pencil(&p)).unwrap();
            for (x, y) in p.e().iter().chain(p.a().iter()).zip(back.e().iter().chain(back.a().iter())) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }

        #[test]
        fn parser_never_panics(text in "\\PC{0,200}") {
            let _ = parse_pencil(&text);
            let _ = parse_matrix(&text);
            let _ = parse_vector(&text);
        }
    }
}

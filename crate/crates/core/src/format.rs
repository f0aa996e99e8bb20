//! Plain-text formats for vectors, matrices, half-spaces and generator lists.
//!
//! ```text
//! vector:      n            matrix:     p n          half-space:  n
//!              x_1 ... x_n              row_1                     a_1 ... a_n
//!                                       ...                       b_1 ... b_n
//!                                       row_p
//! generators:  q n
//!              g_1
//!              ...
//! ```
//!
//! Tokens are `-inf`, `+inf` (also `-Inf`, `inf`), decimal integers and
//! decimal fractions. Blank lines and lines starting with `#` are skipped.
//! Error positions are 1-based line and column.

use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;
use crate::halfspace::HalfSpace;
use crate::linalg::{RowVector, TropicalMatrix, TropicalVector};
use crate::scalar::Scalar;
use crate::semimodule::GeneratedSemimodule;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(column, token)` pairs with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

pub fn parse_token_line<T: Scalar>(line: &str, line_no: usize) -> Result<Vec<ExtendedReal<T>>> {
    tokens(line)
        .into_iter()
        .map(|(col, tok)| {
            ExtendedReal::parse_token(tok)
                .ok_or_else(|| parse_error(line_no, col, format!("invalid token {tok:?}")))
        })
        .collect()
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<_> = content_lines(text).collect();
        let last_line = text.lines().count().max(1);
        Self {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let l = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| parse_error(self.last_line, 1, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    fn header(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>)> {
        let (no, line) = self.next(what)?;
        let toks = tokens(line);
        if toks.len() != count {
            return Err(parse_error(
                no,
                1,
                format!("expected {count} header field(s) for {what}, found {}", toks.len()),
            ));
        }
        let dims = toks
            .into_iter()
            .map(|(col, t)| {
                t.parse::<usize>()
                    .map_err(|_| parse_error(no, col, format!("invalid dimension {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((no, dims))
    }

    fn row<T: Scalar>(&mut self, n: usize, what: &str) -> Result<Vec<ExtendedReal<T>>> {
        let (no, line) = self.next(what)?;
        let entries = parse_token_line(line, no)?;
        if entries.len() != n {
            return Err(parse_error(
                no,
                1,
                format!("expected {n} entries in {what}, found {}", entries.len()),
            ));
        }
        Ok(entries)
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(no, _)) => Err(parse_error(no, 1, "trailing content")),
            None => Ok(()),
        }
    }
}

fn positive(dim: usize, line: usize, what: &str) -> Result<usize> {
    if dim == 0 {
        Err(parse_error(line, 1, format!("{what} must be positive")))
    } else {
        Ok(dim)
    }
}

pub fn parse_vector<T: Scalar>(text: &str) -> Result<TropicalVector<T>> {
    let mut r = Reader::new(text);
    let (no, dims) = r.header(1, "vector header \"n\"")?;
    let n = positive(dims[0], no, "n")?;
    let v = TropicalVector::new(r.row(n, "vector")?)?;
    r.finish()?;
    Ok(v)
}

pub fn parse_matrix<T: Scalar>(text: &str) -> Result<TropicalMatrix<T>> {
    let mut r = Reader::new(text);
    let (no, dims) = r.header(2, "matrix header \"p n\"")?;
    let n = positive(dims[1], no, "n")?;
    let rows = (0..dims[0])
        .map(|_| RowVector::new(r.row(n, "matrix row")?))
        .collect::<Result<Vec<_>>>()?;
    r.finish()?;
    TropicalMatrix::from_rows(rows, n)
}

pub fn parse_halfspace<T: Scalar>(text: &str) -> Result<HalfSpace<T>> {
    let mut r = Reader::new(text);
    let (no, dims) = r.header(1, "half-space header \"n\"")?;
    let n = positive(dims[0], no, "n")?;
    let a = RowVector::new(r.row(n, "coefficient row a")?)?;
    let b = RowVector::new(r.row(n, "coefficient row b")?)?;
    r.finish()?;
    HalfSpace::new(a, b)
}

pub fn parse_generators<T: Scalar>(text: &str) -> Result<GeneratedSemimodule<T>> {
    let mut r = Reader::new(text);
    let (no, dims) = r.header(2, "generator header \"q n\"")?;
    let n = positive(dims[1], no, "n")?;
    let gens = (0..dims[0])
        .map(|_| TropicalVector::new(r.row(n, "generator")?))
        .collect::<Result<Vec<_>>>()?;
    r.finish()?;
    GeneratedSemimodule::new(n, gens)
}

/// True when every finite token in the text is an integer.
pub fn all_tokens_integral(text: &str) -> bool {
    content_lines(text).all(|(_, line)| {
        tokens(line)
            .into_iter()
            .all(|(_, t)| ExtendedReal::<i64>::parse_token(t).is_some() || t.parse::<f64>().is_err())
    })
}

pub fn write_vector<T: Scalar>(v: &TropicalVector<T>) -> String {
    format!("{}\n{}\n", v.len(), v)
}

pub fn write_matrix<T: Scalar>(m: &TropicalMatrix<T>) -> String {
    let mut s = format!("{} {}\n", m.nrows(), m.ncols());
    for r in m.rows() {
        s.push_str(&format!("{r}\n"));
    }
    s
}

pub fn write_halfspace<T: Scalar>(h: &HalfSpace<T>) -> String {
    format!("{}\n{}\n{}\n", h.dim(), h.a(), h.b())
}

pub fn write_generators<T: Scalar>(v: &GeneratedSemimodule<T>) -> String {
    let mut s = format!("{} {}\n", v.generators().len(), v.dim());
    for g in v.generators() {
        s.push_str(&format!("{g}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_with_comments_and_blank_lines() {
        let m: TropicalMatrix<i64> = parse_matrix("# A\n2 3\n\n0 -inf 1\n-inf 2 +inf\n").unwrap();
        assert_eq!(m.nrows(), 2);
        assert_eq!(write_matrix(&m), "2 3\n0 -inf 1\n-inf 2 +inf\n");
    }

    #[test]
    fn errors_cite_line_and_column() {
        let err = parse_vector::<i64>("3\n1 2 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                message: "invalid token \"x\"".into()
            }
        );
        let err = parse_vector::<i64>("3\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_matrix::<i64>("2 2\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_vector::<i64>("1\n1.5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 1, .. }));
    }

    #[test]
    fn integral_detection() {
        assert!(all_tokens_integral("2\n1 -inf\n"));
        assert!(!all_tokens_integral("2\n1 0.5\n"));
    }

    #[test]
    fn halfspace_round_trip() {
        let text = "3\n-inf 0 -inf\n0 -inf -inf\n";
        let h: HalfSpace<i64> = parse_halfspace(text).unwrap();
        assert_eq!(write_halfspace(&h), text);
    }

    fn token() -> impl Strategy<Value = String> {
        prop_oneof![
            Just("-inf".to_string()),
            Just("+inf".to_string()),
            (-1000i64..1000).prop_map(|v| v.to_string()),
        ]
    }

    fn rmax_token() -> impl Strategy<Value = String> {
        prop_oneof![Just("-inf".to_string()), (-1000i64..1000).prop_map(|v| v.to_string())]
    }

    proptest! {
        #[test]
        fn matrix_print_parse_is_lossless(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(token(), 25)) {
            let mut text = format!("{rows} {cols}\n");
            for i in 0..rows {
                let line: Vec<&str> = (0..cols).map(|j| seed[i * 5 + j].as_str()).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            let m: TropicalMatrix<i64> = parse_matrix(&text).unwrap();
            prop_assert_eq!(write_matrix(&m), text.clone());
            let back: TropicalMatrix<i64> = parse_matrix(&write_matrix(&m)).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn generators_round_trip(q in 0usize..4, seed in prop::collection::vec(rmax_token(), 12)) {
            let mut text = format!("{q} 3\n");
            for i in 0..q {
                text.push_str(&seed[i * 3..i * 3 + 3].join(" "));
                text.push('\n');
            }
            let g: GeneratedSemimodule<i64> = parse_generators(&text).unwrap();
            prop_assert_eq!(write_generators(&g), text);
        }
    }
}

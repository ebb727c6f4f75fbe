//! Plain-text file formats. Entries are field encodings in decimal,
//! separated by single spaces, one matrix row or point per line.
//!
//! - matrix:    header `rows cols q`
//! - points:    header `n k q N`, then N Plücker points
//! - generator: header `q K N`, then K rows of length N

use std::io::{BufRead, Write};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::gf::Field;
use crate::grassmann::PluckerPoint;
use crate::linalg::Matrix;

fn write_row<W: Write>(w: &mut W, row: &[u8]) -> Result<()> {
    let mut line = String::with_capacity(row.len() * 3);
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        line.push_str(&x.to_string());
    }
    line.push('\n');
    w.write_all(line.as_bytes())?;
    Ok(())
}

struct Lines<R> {
    inner: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    fn new(inner: R) -> Self {
        Lines {
            inner,
            line: 0,
            buf: String::new(),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    /// Next non-blank line split into integers.
    fn numbers(&mut self) -> Result<Vec<u64>> {
        loop {
            self.buf.clear();
            self.line += 1;
            if self.inner.read_line(&mut self.buf)? == 0 {
                return Err(self.err("unexpected end of file"));
            }
            if self.buf.trim().is_empty() {
                continue;
            }
            return self
                .buf
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| self.err(format!("not an integer: {t:?}"))))
                .collect();
        }
    }

    fn header(&mut self, len: usize, what: &str) -> Result<Vec<u64>> {
        let h = self.numbers()?;
        if h.len() != len {
            return Err(self.err(format!("{what} header needs {len} fields, found {}", h.len())));
        }
        Ok(h)
    }

    fn row(&mut self, cols: usize, q: u64) -> Result<Vec<u8>> {
        let r = self.numbers()?;
        if r.len() != cols {
            return Err(self.err(format!("expected {cols} entries, found {}", r.len())));
        }
        if let Some(x) = r.iter().find(|&&x| x >= q) {
            return Err(self.err(format!("{x} is not an element of GF({q})")));
        }
        Ok(r.into_iter().map(|x| x as u8).collect())
    }
}

fn field_from_header(q: u64) -> Result<Field> {
    Field::new(u32::try_from(q).map_err(|_| Error::UnsupportedField(u32::MAX))?)
}

pub fn write_matrix<W: Write>(w: &mut W, m: &Matrix, f: &Field) -> Result<()> {
    writeln!(w, "{} {} {}", m.rows(), m.cols(), f.order())?;
    for r in m.row_iter() {
        write_row(w, r)?;
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(r: R) -> Result<(Matrix, Field)> {
    let mut lines = Lines::new(r);
    let h = lines.header(3, "matrix")?;
    let (rows, cols) = (h[0] as usize, h[1] as usize);
    let f = field_from_header(h[2])?;
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        data.extend(lines.row(cols, h[2])?);
    }
    Ok((Matrix::from_vec(rows, cols, data)?, f))
}

/// Reads an alternating form stored in the matrix format.
pub fn read_form<R: BufRead>(r: R) -> Result<(AlternatingForm, Field)> {
    let (m, f) = read_matrix(r)?;
    Ok((AlternatingForm::new(m, &f)?, f))
}

pub fn write_points<W: Write>(w: &mut W, n: usize, k: usize, f: &Field, points: &[PluckerPoint]) -> Result<()> {
    writeln!(w, "{} {} {} {}", n, k, f.order(), points.len())?;
    for p in points {
        write_row(w, p.coords())?;
    }
    Ok(())
}

/// Header of a point-list file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointListHeader {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub count: usize,
}

/// Reads a point list; each point has C(2n, k) coordinates.
pub fn read_points<R: BufRead>(r: R) -> Result<(PointListHeader, Vec<Vec<u8>>)> {
    let mut lines = Lines::new(r);
    let h = lines.header(4, "point list")?;
    let header = PointListHeader {
        n: h[0] as usize,
        k: h[1] as usize,
        q: h[2] as u32,
        count: h[3] as usize,
    };
    field_from_header(h[2])?;
    let width = crate::formulas::binomial(2 * header.n, header.k) as usize;
    let points = (0..header.count)
        .map(|_| lines.row(width, h[2]))
        .collect::<Result<_>>()?;
    Ok((header, points))
}

pub fn write_generator<W: Write>(w: &mut W, code: &LinearCode) -> Result<()> {
    writeln!(w, "{} {} {}", code.field().order(), code.dimension(), code.length())?;
    for r in code.generator().row_iter() {
        write_row(w, r)?;
    }
    Ok(())
}

/// Reads a generator matrix file; the matrix must have full row rank.
pub fn read_generator<R: BufRead>(r: R) -> Result<LinearCode> {
    let mut lines = Lines::new(r);
    let h = lines.header(3, "generator")?;
    let f = field_from_header(h[0])?;
    let (k, n) = (h[1] as usize, h[2] as usize);
    let mut data = Vec::with_capacity(k * n);
    for _ in 0..k {
        data.extend(lines.row(n, h[0])?);
    }
    LinearCode::from_generator(f, Matrix::from_vec(k, n, data)?)
}

//! Dense exact linear algebra over GF(2^k).

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};

/// A dense row-major matrix over a [`FiniteField`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: FiniteField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The 1x1 matrix holding `a`.
    pub fn scalar(a: FieldElement) -> Self {
        Matrix {
            field: a.field(),
            rows: 1,
            cols: 1,
            data: vec![a.bits()],
        }
    }

    pub fn from_rows(field: FiniteField, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(e.bits());
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix from raw bit patterns, reducing each entry.
    pub fn from_bits(field: FiniteField, rows: usize, cols: usize, bits: &[u8]) -> Self {
        assert_eq!(bits.len(), rows * cols, "bit buffer has the wrong length");
        Matrix {
            field,
            rows,
            cols,
            data: bits.iter().map(|&b| field.element(b).bits()).collect(),
        }
    }

    pub fn column_vector(field: FiniteField, entries: &[FieldElement]) -> Self {
        Matrix {
            field,
            rows: entries.len(),
            cols: 1,
            data: entries.iter().map(|e| e.bits()).collect(),
        }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v.bits();
    }

    pub(crate) fn bits(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub(crate) fn set_bits(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, 1);
        for r in 0..self.rows {
            m.data[r] = self.bits(r, c);
        }
        m
    }

    pub fn columns(&self) -> Vec<Matrix> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Entries of a column vector.
    pub fn to_vec(&self) -> Vec<FieldElement> {
        self.data.iter().map(|&b| self.field.element(b)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.bits(r, c) == u8::from(r == c)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                if a == 1 {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o ^= b;
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o ^= f.mul_bits(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.add_unchecked(rhs))
    }

    pub(crate) fn add_unchecked(&self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&rhs.data) {
            *o ^= b;
        }
        out
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(rhs)
    }

    pub fn scale(&self, a: FieldElement) -> Matrix {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = self.field.mul_bits(*o, a.bits());
        }
        out
    }

    /// Reduced row echelon form, pivot columns, and rank.
    ///
    /// Pivots are taken as the first nonzero entry scanning columns left to
    /// right, so the result is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(None);
        let rank = pivots.len();
        (m, pivots, rank)
    }

    /// Row-reduces in place, applying the same row operations to `companion`.
    fn rref_in_place(&mut self, mut companion: Option<&mut Matrix>) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| self.bits(r, c) != 0) else {
                continue;
            };
            if sel != prow {
                self.swap_rows(sel, prow);
                if let Some(comp) = companion.as_deref_mut() {
                    comp.swap_rows(sel, prow);
                }
            }
            let inv = f.inv_bits(self.bits(prow, c)).expect("pivot is nonzero");
            if inv != 1 {
                self.scale_row(prow, inv);
                if let Some(comp) = companion.as_deref_mut() {
                    comp.scale_row(prow, inv);
                }
            }
            for r in 0..self.rows {
                if r != prow {
                    let factor = self.bits(r, c);
                    if factor != 0 {
                        self.add_row_multiple(r, prow, factor);
                        if let Some(comp) = companion.as_deref_mut() {
                            comp.add_row_multiple(r, prow, factor);
                        }
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul_bits(*v, s);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: u8) {
        let f = self.field;
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c];
            if s != 0 {
                self.data[dst * cols + c] ^= f.mul_bits(s, factor);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Basis of the right null space, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        self.kernel_matrix().columns()
    }

    /// Right null space basis stacked as the columns of a `cols x nullity`
    /// matrix. Free variables are taken in increasing column order.
    pub fn kernel_matrix(&self) -> Matrix {
        let (r, pivots, _) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                // Characteristic 2: -x = x.
                k.data[pc * free.len() + j] = r.bits(i, fc);
            }
        }
        k
    }

    /// Solves `self * x = rhs`; `Ok(None)` if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side {}",
                self.rows, rhs.rows
            )));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        let pivots = a.rref_in_place(Some(&mut b));
        let rank = pivots.len();
        for r in rank..b.rows {
            if (0..b.cols).any(|c| b.bits(r, c) != 0) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.data[pc * rhs.cols + c] = b.bits(i, c);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, self.rows);
        let pivots = a.rref_in_place(Some(&mut inv));
        if pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn kronecker(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let f = self.field;
        let (br, bc) = (rhs.rows, rhs.cols);
        let mut out = Matrix::zeros(f, self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.bits(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        out.set_bits(i * br + k, j * bc + l, f.mul_bits(a, rhs.bits(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty stack".into()))?;
        let rows = first.rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(first.field, rows, cols);
        let mut off = 0;
        for m in parts {
            if m.rows != rows || m.field != first.field {
                return Err(Error::DimensionMismatch("hstack row count".into()));
            }
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set_bits(r, off + c, m.bits(r, c));
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty stack".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.cols != cols || m.field != first.field {
                return Err(Error::DimensionMismatch("vstack column count".into()));
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(Matrix {
            field: first.field,
            rows,
            cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set_bits(i, j, self.bits(r, c));
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set_bits(r, j, self.bits(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        out
    }

    /// Column indices of a maximal linearly independent prefix-greedy subset.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space, taken from the original columns.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    /// Extends the independent columns of `self` to a basis of the full
    /// space using standard vectors; returns the square basis matrix.
    pub fn extend_to_basis(&self) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        let all = Matrix::hstack(&[self, &id]).expect("same row count");
        all.column_space()
    }

    /// Text format: one row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text format. Rows may also be separated by `;`.
    pub fn parse_text(field: FiniteField, text: &str) -> Result<Matrix> {
        let mut rows = Vec::new();
        for line in text.split(['\n', ';']) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| field.parse_element(t))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Matrix::from_rows(field, &rows)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::f4()
    }

    fn m(text: &str) -> Matrix {
        Matrix::parse_text(f4(), text).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(f4(), 3);
        let (r, _, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
        assert_eq!(Matrix::zeros(f4(), 2, 2).rank(), 0);
        let a = m("1 w; w2 1");
        let (r, piv, rank) = a.rref();
        assert_eq!(rank, 1);
        assert_eq!(piv, vec![0]);
        assert_eq!(r, m("1 w; 0 0"));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(f4(), 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f4(), 3, 3).kernel_basis().len(), 3);
        let k = m("1 w").kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], m("w; 1"));
    }

    #[test]
    fn solve_examples() {
        let v = m("1; w; w2");
        let id = Matrix::identity(f4(), 3);
        assert_eq!(id.solve(&v).unwrap().unwrap(), v);
        assert!(Matrix::zeros(f4(), 3, 3).solve(&v).unwrap().is_none());
        assert!(id.solve(&m("1; 1")).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let i2 = Matrix::identity(f4(), 2);
        let i3 = Matrix::identity(f4(), 3);
        assert_eq!(i2.kronecker(&i3).unwrap(), Matrix::identity(f4(), 6));
        let a = m("1 w; 0 w2");
        let w = f4().omega().unwrap();
        assert_eq!(a.kronecker(&Matrix::scalar(w)).unwrap(), a.scale(w));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m("1 w 0; 0 1 w2; w 0 1");
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(matches!(m("1 w; w2 1").inverse(), Err(Error::Singular)));
    }

    #[test]
    fn text_round_trip() {
        let a = m("0 1 w w2\nw2 w 1 0");
        assert_eq!(Matrix::parse_text(f4(), &a.to_text()).unwrap(), a);
    }
}

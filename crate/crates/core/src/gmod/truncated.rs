//! Modules over R[G] with R = Z4 mod 2^m, free of finite rank over R.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::FiniteField;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;
use crate::morava::Z4Element;

use super::{endotrivial, GModule};

/// Dense matrix over the truncated Witt ring.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    precision: u32,
    rows: usize,
    cols: usize,
    data: Vec<Z4Element>,
}

impl RMatrix {
    pub fn zeros(precision: u32, rows: usize, cols: usize) -> Self {
        RMatrix {
            precision,
            rows,
            cols,
            data: vec![Z4Element::zero(precision); rows * cols],
        }
    }

    pub fn identity(precision: u32, n: usize) -> Self {
        let mut m = Self::zeros(precision, n, n);
        for i in 0..n {
            m.set(i, i, Z4Element::one(precision));
        }
        m
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Z4Element {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Z4Element) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &RMatrix) -> Result<RMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = RMatrix::zeros(self.precision, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).add(&a.mul(&o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> RMatrix {
        let mut out = RMatrix::zeros(self.precision, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c));
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> RMatrix {
        let mut out = RMatrix::zeros(self.precision, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Entrywise reduction to F4.
    pub fn reduce(&self) -> Matrix {
        let f4 = FiniteField::f4();
        let mut m = Matrix::zeros(f4, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).residue());
            }
        }
        m
    }

    /// Gauss-Jordan inverse; a matrix is invertible over R exactly when its
    /// reduction is.
    pub fn inverse(&self) -> Result<RMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMatrix::identity(self.precision, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.get(r, col).is_unit())
                .ok_or_else(|| Error::NonUnit("matrix is not invertible over R".into()))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).inverse()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Z4Element) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(s);
            self.set(r, c, v);
        }
    }

    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &Z4Element) {
        for c in 0..self.cols {
            let v = self.get(target, c).sub(&f.mul(&self.get(source, c)));
            self.set(target, c, v);
        }
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A left R[G]-module on R^rank, one matrix per group element.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    precision: u32,
    group: Arc<FiniteGroup>,
    rank: usize,
    rho: Vec<RMatrix>,
}

impl TruncatedModule {
    /// Checks rho(e) = I and rho(g) rho(h) = rho(gh) exactly over R.
    pub fn from_table(precision: u32, group: Arc<FiniteGroup>, rho: Vec<RMatrix>) -> Result<Self> {
        if rho.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                rho.len(),
                group.order()
            )));
        }
        let rank = rho[0].rows();
        if rho
            .iter()
            .any(|m| m.rows() != rank || m.cols() != rank || m.precision() != precision)
        {
            return Err(Error::DimensionMismatch(
                "action matrices differ in shape".into(),
            ));
        }
        if rho[group.identity()] != RMatrix::identity(precision, rank) {
            return Err(Error::InconsistentAction(
                "identity does not act as 1".into(),
            ));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if rho[g].mul(&rho[h])? != rho[group.mul(g, h)] {
                    return Err(Error::InconsistentAction(format!(
                        "rho({})rho({}) != rho({})",
                        group.element_name(g),
                        group.element_name(h),
                        group.element_name(group.mul(g, h))
                    )));
                }
            }
        }
        Ok(TruncatedModule {
            precision,
            group,
            rank,
            rho,
        })
    }

    pub fn trivial(precision: u32, group: Arc<FiniteGroup>, rank: usize) -> Self {
        let rho = vec![RMatrix::identity(precision, rank); group.order()];
        TruncatedModule {
            precision,
            group,
            rank,
            rho,
        }
    }

    pub fn regular(precision: u32, group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let rho = (0..n)
            .map(|g| {
                let mut m = RMatrix::zeros(precision, n, n);
                for h in 0..n {
                    m.set(group.mul(g, h), h, Z4Element::one(precision));
                }
                m
            })
            .collect();
        TruncatedModule {
            precision,
            group,
            rank: n,
            rho,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rho(&self, g: usize) -> &RMatrix {
        &self.rho[g]
    }

    /// kappa (x)_R M as an F4[G]-module.
    pub fn reduce(&self) -> Result<GModule> {
        let rho = self.rho.iter().map(RMatrix::reduce).collect();
        GModule::from_table(FiniteField::f4(), Arc::clone(&self.group), rho)
    }
}

/// The R[Q8] left ideal generated by w i + w^2 j + k, which reduces to the
/// five-dimensional Joker module.
pub fn lifted_joker(precision: u32) -> Result<TruncatedModule> {
    let group = Arc::new(FiniteGroup::q8());
    let n = group.order();
    let m = precision;
    let one = Z4Element::one(m);
    let w = Z4Element::omega(m);
    let w2 = w.mul(&w);
    let mut x = vec![Z4Element::zero(m); n];
    for (c, name) in [(w, "i"), (w2, "j"), (one, "k")] {
        x[group.element(name).expect("Q8 element")] = c;
    }
    let reg = TruncatedModule::regular(m, Arc::clone(&group));
    let mut span = RMatrix::zeros(m, n, n);
    for g in 0..n {
        for (h, &c) in x.iter().enumerate() {
            span.set(group.mul(g, h), g, c);
        }
    }
    let cols = span.reduce().independent_columns();
    let basis = span.select_columns(&cols);
    let rows = basis.reduce().transpose().independent_columns();
    let square_inv = basis.select_rows(&rows).inverse()?;
    let rho = (0..n)
        .map(|g| {
            let image = reg.rho(g).mul(&basis)?;
            let coords = square_inv.mul(&image.select_rows(&rows))?;
            if basis.mul(&coords)? != image {
                return Err(Error::Internal(
                    "lifted span is not an R[Q8]-submodule".into(),
                ));
            }
            Ok(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedModule::from_table(m, group, rho)
}

/// Endotriviality over R[G], decided on the reduction kappa (x)_R M.
pub fn endotrivial_truncated(m: &TruncatedModule) -> Result<bool> {
    if !m.group.is_p_group(2) {
        return Err(Error::NotTwoGroup(m.group.order()));
    }
    for (g, r) in m.rho.iter().enumerate() {
        if !r.reduce().is_invertible() {
            return Err(Error::NonUnit(format!(
                "rho({}) has non-unit determinant",
                m.group.element_name(g)
            )));
        }
    }
    endotrivial(&m.reduce()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_over_r() {
        let m = 6;
        let mut a = RMatrix::identity(m, 2);
        a.set(0, 1, Z4Element::new(m, 2, 1));
        a.set(1, 0, Z4Element::new(m, 0, 2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RMatrix::identity(m, 2));
    }

    #[test]
    fn joker_lift_has_rank_5() {
        let j = lifted_joker(6).unwrap();
        assert_eq!(j.rank(), 5);
        assert!(endotrivial_truncated(&j).unwrap());
    }

    #[test]
    fn trivial_modules() {
        let q8 = Arc::new(FiniteGroup::q8());
        assert!(endotrivial_truncated(&TruncatedModule::trivial(5, Arc::clone(&q8), 1)).unwrap());
        assert!(!endotrivial_truncated(&TruncatedModule::trivial(5, Arc::clone(&q8), 2)).unwrap());
        assert!(!endotrivial_truncated(&TruncatedModule::regular(5, q8)).unwrap());
    }
}

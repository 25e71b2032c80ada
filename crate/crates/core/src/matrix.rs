//! Dense matrices over an exact ring, with elimination over fields.

use crate::error::{Error, Result};
use crate::scalar::{Field, Fp, Reduction, Ring};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data: alloc::vec![R::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one(ctx);
        }
        m
    }

    pub fn from_fn(
        ctx: &R::Ctx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> R,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data,
        }
    }

    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    expected: (r, c),
                    found: (r, row.len()),
                });
            }
            for x in row {
                if x.ctx() != *ctx {
                    return Err(Error::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            ctx: ctx.clone(),
            data,
        })
    }

    pub fn from_ints(ctx: &R::Ctx, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(ctx, rows.len(), c, |i, j| R::from_int(ctx, rows[i][j]))
    }

    pub fn column_vector(ctx: &R::Ctx, v: Vec<R>) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            ctx: ctx.clone(),
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx, self.rows)
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != o.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: o.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone_shape()
        })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            data: self.data.iter().map(|a| a.neg()).collect(),
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, s: &R) -> Self {
        Matrix {
            data: self.data.iter().map(|a| s.mul(a)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx.clone(),
            data: Vec::new(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, o.cols),
                found: o.shape(),
            });
        }
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, 1),
                found: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = R::zero(&self.ctx);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, o.cols),
                found: o.shape(),
            });
        }
        Ok(Self::from_fn(
            &self.ctx,
            self.rows,
            self.cols + o.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    o.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::ShapeMismatch {
                expected: (o.rows, self.cols),
                found: o.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            ctx: self.ctx.clone(),
            data,
        })
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let x = b.get(i, j);
                if !x.is_zero() {
                    let idx = (r0 + i) * self.cols + c0 + j;
                    self.data[idx] = self.data[idx].add(x);
                }
            }
        }
    }

    pub fn block_diag(ctx: &R::Ctx, blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(ctx, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(
        &self,
        ctx: &S::Ctx,
        f: impl FnMut(&R) -> Result<S>,
    ) -> Result<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<S>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx.clone(),
            data,
        })
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Ring> {
    pub rref: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let v = m.get(i, j).sub(&f.mul(x));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel basis as columns of an `cols x nullity` matrix.
    pub fn kernel(&self) -> Matrix<F> {
        let e = self.echelon();
        kernel_from_echelon(&e, self.cols)
    }

    pub fn rank_kernel(&self) -> (usize, Matrix<F>) {
        let e = self.echelon();
        (e.pivots.len(), kernel_from_echelon(&e, self.cols))
    }

    /// One solution of `self x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, 1),
                found: (b.len(), 1),
            });
        }
        let aug = self.hstack(&Matrix::column_vector(&self.ctx, b.to_vec()))?;
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = alloc::vec![F::zero(&self.ctx); self.cols];
        for (r, &c) in e.pivots.iter().enumerate() {
            x[c] = e.rref.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn in_column_span(&self, v: &[F]) -> Result<bool> {
        Ok(self.solve(v)?.is_some())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, self.rows),
                found: self.shape(),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let e = self.hstack(&Self::identity(&self.ctx, n))?.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(e.rref.block(0, n, n, n))
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, self.rows),
                found: self.shape(),
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(F::zero(&self.ctx));
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul(&inv);
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Coefficients `c_0..c_{n-1}` of `det(x I - self) = x^n + sum c_k x^k`,
    /// by interpolation at `x = 0..n`. Needs more than `n` field elements.
    pub fn charpoly(&self) -> Result<Vec<F>> {
        let n = self.rows;
        let ctx = &self.ctx;
        let mut vals = Vec::with_capacity(n + 1);
        for x in 0..=n {
            let shifted = Self::identity(ctx, n)
                .scale(&F::from_int(ctx, x as i64))
                .sub(self)?;
            // subtract the leading x^n term
            vals.push(
                shifted
                    .det()?
                    .sub(&F::from_int(ctx, x as i64).pow(n as u64)),
            );
        }
        let vander = Self::from_fn(ctx, n + 1, n, |i, k| {
            F::from_int(ctx, i as i64).pow(k as u64)
        });
        vander.solve(&vals)?.ok_or(Error::Singular)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn specialize(&self, r: &Reduction) -> Result<Matrix<Fp>> {
        self.try_map(&r.p, |x| x.reduce(r))
    }
}

fn kernel_from_echelon<F: Field>(e: &Echelon<F>, cols: usize) -> Matrix<F> {
    let ctx = e.rref.ctx().clone();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut k = Matrix::zeros(&ctx, cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, F::one(&ctx));
        for (r, &p) in e.pivots.iter().enumerate() {
            k.set(p, j, e.rref.get(r, f).neg());
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Canonical, Rational};

    #[test]
    fn rank_one_kernel() {
        let m = Matrix::<Rational>::from_ints(&(), &[&[1, 2], &[2, 4]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(
            k.column(0),
            alloc::vec![Rational::int(-2), Rational::int(1)]
        );
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::<Rational>::from_ints(&(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let x = m
            .solve(&[Rational::int(3), Rational::int(2)])
            .unwrap()
            .unwrap();
        assert_eq!(x, alloc::vec![Rational::int(1), Rational::int(1)]);
        let s = Matrix::<Rational>::from_ints(&(), &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s
            .solve(&[Rational::int(1), Rational::int(0)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn specialize_half_mod_five() {
        let m = Matrix::from_rows(&(), alloc::vec![alloc::vec![Rational::new(1, 2)]]).unwrap();
        let r = Rational::reduction(&(), 5).unwrap();
        assert_eq!(m.specialize(&r).unwrap().get(0, 0).canonical(), "5:3");
    }

    #[test]
    fn det_and_charpoly() {
        let m = Matrix::<Rational>::from_ints(&(), &[&[2, 1], &[1, 3]]);
        assert_eq!(m.det().unwrap(), Rational::int(5));
        assert_eq!(
            m.charpoly().unwrap(),
            alloc::vec![Rational::int(5), Rational::int(-5)]
        );
        let p = Matrix::<Rational>::from_ints(&(), &[&[0, 1], &[1, 0]]);
        assert_eq!(p.det().unwrap(), Rational::int(-1));
    }

    #[test]
    fn mismatched_shapes_rejected() {
        let a = Matrix::<Rational>::zeros(&(), 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch { .. })));
    }
}

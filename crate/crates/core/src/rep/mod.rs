//! Representations of the double, graded modules over the graded triple,
//! and the linear algebra built on them.
//!
//! `X_h` is stored as a map `V_{s(h)} -> V_{t(h)}`. Paths act on the right,
//! so the word `h_1 h_2` evaluates to `X_{h_2} X_{h_1}`.

mod graded;
mod hom;
mod sample;
mod tangent;

pub use graded::{evaluate, evaluate_laurent, induce, truncate, GradedModule};
pub use hom::{graded_hom, hom_kernel, rep_hom, HomBlock};
pub use sample::{sample_rep, Sample, SamplerConfig};
pub use tangent::{jacobian, tangent_dim, TangentReport};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{build_relation, PathPoly};
use crate::quiver::DoubledQuiver;
use crate::scalar::{Canonical, Field, Ring};
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<R: Ring> {
    dq: DoubledQuiver,
    alpha: Vec<usize>,
    mats: Vec<Matrix<R>>,
    ctx: R::Ctx,
}

impl<R: Ring> Representation<R> {
    pub fn new(
        dq: &DoubledQuiver,
        alpha: &[usize],
        mats: Vec<Matrix<R>>,
        ctx: &R::Ctx,
    ) -> Result<Self> {
        if alpha.len() != dq.num_vertices() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "alpha has {} entries",
                alpha.len()
            )));
        }
        if mats.len() != dq.num_arrows() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} matrices for {} arrows",
                mats.len(),
                dq.num_arrows()
            )));
        }
        for (h, m) in mats.iter().enumerate() {
            let want = (alpha[dq.tgt(h)], alpha[dq.src(h)]);
            if m.shape() != want {
                return Err(Error::ShapeMismatch {
                    expected: want,
                    found: m.shape(),
                });
            }
            if m.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Representation {
            dq: dq.clone(),
            alpha: alpha.to_vec(),
            mats,
            ctx: ctx.clone(),
        })
    }

    pub fn zero(dq: &DoubledQuiver, alpha: &[usize], ctx: &R::Ctx) -> Self {
        let mats = (0..dq.num_arrows())
            .map(|h| Matrix::zeros(ctx, alpha[dq.tgt(h)], alpha[dq.src(h)]))
            .collect();
        Representation {
            dq: dq.clone(),
            alpha: alpha.to_vec(),
            mats,
            ctx: ctx.clone(),
        }
    }

    pub fn quiver(&self) -> &DoubledQuiver {
        &self.dq
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn mat(&self, h: usize) -> &Matrix<R> {
        &self.mats[h]
    }

    pub fn mats(&self) -> &[Matrix<R>] {
        &self.mats
    }

    pub fn set_mat(&mut self, h: usize, m: Matrix<R>) {
        assert_eq!(m.shape(), self.mats[h].shape());
        self.mats[h] = m;
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn total_dim(&self) -> usize {
        self.alpha.iter().sum()
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.dq != o.dq {
            return Err(Error::DimensionMismatch("different quivers".into()));
        }
        let alpha: Vec<usize> = self
            .alpha
            .iter()
            .zip(&o.alpha)
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .mats
            .iter()
            .zip(&o.mats)
            .map(|(a, b)| Matrix::block_diag(&self.ctx, &[a.clone(), b.clone()]))
            .collect();
        Representation::new(&self.dq, &alpha, mats, &self.ctx)
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Representation<S> {
        Representation {
            dq: self.dq.clone(),
            alpha: self.alpha.clone(),
            mats: self.mats.iter().map(|m| m.map(ctx, &f)).collect(),
            ctx: ctx.clone(),
        }
    }

    /// Action of `e_i p` with `t` acting as the identity, as a map out of `V_i`.
    pub fn eval(&self, p: &PathPoly<R>, i: usize) -> Result<Matrix<R>> {
        let mut end = None;
        let mut acc: Option<Matrix<R>> = None;
        for (m, c) in p.terms().filter(|(m, _)| m.start == i) {
            if *end.get_or_insert(m.end) != m.end {
                return Err(Error::VertexMismatch);
            }
            let mut x = Matrix::identity(&self.ctx, self.alpha[i]);
            for &h in &m.word {
                x = self.mats[h].mul(&x)?;
            }
            let x = x.scale(c);
            acc = Some(match acc {
                None => x,
                Some(a) => a.add(&x)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::zeros(&self.ctx, self.alpha[i], self.alpha[i])))
    }
}

/// `prod_i q_i^{alpha_i}`.
pub fn q_power<R: Ring>(q: &[R], alpha: &[usize]) -> R {
    q.iter()
        .zip(alpha)
        .fold(R::one(&q[0].ctx()), |acc, (x, &a)| {
            acc.mul(&x.pow(a as u64))
        })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<R: Ring> {
    /// `[D]_i - [D*]_i` per vertex.
    pub residuals: Vec<Matrix<R>>,
}

impl<R: Ring> CheckReport<R> {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|m| m.is_zero())
    }
}

pub fn check_obstruction<R: Ring + Canonical>(q: &[R], alpha: &[usize]) -> Result<()> {
    let v = q_power(q, alpha);
    if v.is_one() {
        Ok(())
    } else {
        Err(Error::Obstruction {
            value: v.canonical(),
        })
    }
}

/// Checks `q^alpha = 1`, the invertibility of every `1 + h h*`, and returns
/// the residual of the multiplicative relation at every vertex.
pub fn check_rep<F: Field + Canonical>(rep: &Representation<F>, q: &[F]) -> Result<CheckReport<F>> {
    check_obstruction(q, &rep.alpha)?;
    let rel = build_relation(&rep.dq, q)?;
    for h in 0..rep.dq.num_arrows() {
        let s = rep.dq.src(h);
        let g = rep.eval(&rel.g[h], s)?;
        if !g.is_invertible() {
            return Err(Error::SingularGroupElement {
                arrow: String::from(rep.dq.arrow(h).name.as_str()),
            });
        }
    }
    residuals(rep, &rel.rho).map(|residuals| CheckReport { residuals })
}

pub(crate) fn residuals<R: Ring>(
    rep: &Representation<R>,
    rho: &PathPoly<R>,
) -> Result<Vec<Matrix<R>>> {
    (0..rep.dq.num_vertices())
        .map(|i| rep.eval(rho, i))
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scalar::Rational;

    pub fn one_loop() -> DoubledQuiver {
        Quiver::new(&["v"], &[("a", "v", "v")], None)
            .unwrap()
            .double()
    }

    pub fn two_loops() -> DoubledQuiver {
        Quiver::new(&["v"], &[("a", "v", "v"), ("b", "v", "v")], None)
            .unwrap()
            .double()
    }

    pub fn two_vertex() -> DoubledQuiver {
        Quiver::new(&["u", "w"], &[("a", "u", "w")], None)
            .unwrap()
            .double()
    }

    /// One loop, `alpha = 2`, `q = -1`.
    pub fn r1() -> Representation<Rational> {
        let xa = Matrix::from_ints(&(), &[&[0, 1], &[0, 0]]);
        let xs = Matrix::from_ints(&(), &[&[0, 0], &[-2, 0]]);
        Representation::new(&one_loop(), &[2], alloc::vec![xa, xs], &()).unwrap()
    }

    pub fn two_vertex_rep() -> Representation<Rational> {
        let xa = Matrix::from_ints(&(), &[&[1]]);
        let xs = Matrix::from_ints(&(), &[&[-2]]);
        Representation::new(&two_vertex(), &[1, 1], alloc::vec![xa, xs], &()).unwrap()
    }
}

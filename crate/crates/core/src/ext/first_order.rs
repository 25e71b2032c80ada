use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{check_rep, hom_kernel, induce, jacobian, GradedModule, Representation};
use crate::scalar::{Canonical, Field};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderReport {
    pub tangent_dim: usize,
    pub orbit_dim: usize,
    /// `dim End(Ind R)`: the expected answer for a transverse direction.
    pub bound: usize,
    /// Hom dimension for a deformation along the orbit.
    pub hom_orbit: usize,
    /// Hom dimension for a deformation transverse to the orbit, if the
    /// tangent space has such a direction.
    pub hom_transverse: Option<usize>,
}

impl FirstOrderReport {
    pub fn ok(&self) -> bool {
        self.hom_orbit == 2 * self.bound && self.hom_transverse.is_none_or(|h| h == self.bound)
    }
}

/// The `k[eps]`-point `R + eps xi` as a representation of twice the
/// dimension, `[[X, 0], [xi, X]]`.
fn thicken<F: Field>(rep: &Representation<F>, xi: &[Matrix<F>]) -> Result<Representation<F>> {
    let ctx = rep.ctx();
    let mats = rep
        .mats()
        .iter()
        .zip(xi)
        .map(|(x, e)| {
            let (r, c) = x.shape();
            let mut m = Matrix::zeros(ctx, 2 * r, 2 * c);
            m.set_block(0, 0, x);
            m.set_block(r, c, x);
            m.set_block(r, 0, e);
            m
        })
        .collect();
    let alpha: Vec<usize> = rep.alpha().iter().map(|a| 2 * a).collect();
    Representation::new(rep.quiver(), &alpha, mats, ctx)
}

fn eps_action<F: Field>(ctx: &F::Ctx, d: usize) -> Matrix<F> {
    let h = d / 2;
    Matrix::from_fn(ctx, d, d, |i, j| {
        if i >= h && i - h == j {
            F::one(ctx)
        } else {
            F::zero(ctx)
        }
    })
}

/// Dimension of degree-zero maps `W -> V` commuting with `eps` at every
/// graded vertex.
fn eps_hom_dim<F: Field>(w: &GradedModule<F>, v: &GradedModule<F>) -> usize {
    let tq = w.quiver();
    let ctx = w.ctx();
    let eps_w: Vec<Matrix<F>> = w.dims().iter().map(|&d| eps_action(ctx, d)).collect();
    let eps_v: Vec<Matrix<F>> = v.dims().iter().map(|&d| eps_action(ctx, d)).collect();
    let mut arrows: Vec<_> = tq
        .arrows()
        .into_iter()
        .map(|a| (tq.src(a), tq.tgt(a), w.map_of(a), v.map_of(a)))
        .collect();
    for k in 0..tq.num_vertices() {
        arrows.push((k, k, &eps_w[k], &eps_v[k]));
    }
    hom_kernel(ctx, w.dims(), v.dims(), &arrows).cols()
}

fn split<F: Field>(rep: &Representation<F>, col: &[F]) -> Vec<Matrix<F>> {
    let mut at = 0;
    rep.mats()
        .iter()
        .map(|x| {
            let (r, c) = x.shape();
            let m = Matrix::from_fn(rep.ctx(), r, c, |i, j| col[at + i * c + j].clone());
            at += r * c;
            m
        })
        .collect()
}

/// Orbit directions `[Y, X]_h = Y_{t(h)} X_h - X_h Y_{s(h)}`, one column per
/// elementary `Y`, flattened like [`jacobian`] columns.
fn orbit_span<F: Field>(rep: &Representation<F>) -> Result<Matrix<F>> {
    let dq = rep.quiver();
    let ctx = rep.ctx();
    let total: usize = rep.mats().iter().map(|m| m.rows() * m.cols()).sum();
    let mut cols = Vec::new();
    for i in 0..dq.num_vertices() {
        let a = rep.alpha()[i];
        for k in 0..a * a {
            let y = Matrix::from_fn(ctx, a, a, |r, c| {
                if r * a + c == k {
                    F::one(ctx)
                } else {
                    F::zero(ctx)
                }
            });
            let mut col = Vec::with_capacity(total);
            for h in 0..dq.num_arrows() {
                let x = rep.mat(h);
                let mut m = Matrix::zeros(ctx, x.rows(), x.cols());
                if dq.tgt(h) == i {
                    m = m.add(&y.mul(x)?)?;
                }
                if dq.src(h) == i {
                    m = m.sub(&x.mul(&y)?)?;
                }
                col.extend(m.entries().iter().cloned());
            }
            cols.push(col);
        }
    }
    Ok(Matrix::from_fn(ctx, total, cols.len(), |r, c| {
        cols[c][r].clone()
    }))
}

/// First-order support check: for `V = Ind R` and `W = Ind(R + eps xi)`,
/// `Hom_{k[eps]}(W, V[eps])` is free of rank `dim End` along the orbit and
/// drops to `dim End` for a transverse tangent vector `xi`.
pub fn first_order_check<F: Field + Canonical>(
    rep: &Representation<F>,
    q: &[F],
    n: usize,
) -> Result<FirstOrderReport> {
    let tangent = jacobian(rep, q)?.kernel();
    let orbit = orbit_span(rep)?;
    let orbit_rank = orbit.rank();
    let zero: Vec<Matrix<F>> = rep
        .mats()
        .iter()
        .map(|m| Matrix::zeros(rep.ctx(), m.rows(), m.cols()))
        .collect();
    let trivial = induce(&thicken(rep, &zero)?, n, None)?;
    let bound = crate::rep::graded_hom(&induce(rep, n, None)?, &induce(rep, n, None)?)?.len();

    let along = if orbit.cols() > 0 && orbit_rank > 0 {
        let j = (0..orbit.cols())
            .find(|&j| orbit.column(j).iter().any(|x| !x.is_zero()))
            .unwrap_or(0);
        orbit.column(j)
    } else {
        alloc::vec![F::zero(rep.ctx()); orbit.rows()]
    };
    let hom_orbit = eps_hom_dim(&deform(rep, q, n, &along)?, &trivial);

    let mut hom_transverse = None;
    for j in 0..tangent.cols() {
        let col = tangent.column(j);
        let widened = if orbit.cols() == 0 {
            Matrix::column_vector(rep.ctx(), col.clone())
        } else {
            orbit.hstack(&Matrix::column_vector(rep.ctx(), col.clone()))?
        };
        if widened.rank() > orbit_rank {
            hom_transverse = Some(eps_hom_dim(&deform(rep, q, n, &col)?, &trivial));
            break;
        }
    }
    Ok(FirstOrderReport {
        tangent_dim: tangent.cols(),
        orbit_dim: orbit_rank,
        bound,
        hom_orbit,
        hom_transverse,
    })
}

fn deform<F: Field + Canonical>(
    rep: &Representation<F>,
    q: &[F],
    n: usize,
    col: &[F],
) -> Result<GradedModule<F>> {
    let big = thicken(rep, &split(rep, col))?;
    if !check_rep(&big, q)?.is_zero() {
        return Err(Error::Consistency(
            "deformation direction is not tangent".into(),
        ));
    }
    induce(&big, n, None)
}

use super::{check_rep, residuals, Representation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{build_relation, PathPoly};
use crate::scalar::{Canonical, Dual, Field};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub tangent_dim: usize,
    /// `tangent_dim - (sum alpha_i^2 - 1)`.
    pub moduli_dim: i64,
}

fn lift_poly<F: Field>(p: &PathPoly<F>) -> PathPoly<Dual<F>> {
    let mut out = PathPoly::zero(p.ctx());
    for (m, c) in p.terms() {
        out.add_term(m.clone(), Dual::real(c.clone()));
    }
    out
}

/// Derivative of the relation map at `rep`, computed by perturbing one entry
/// at a time over the dual numbers. Columns follow the arrows, row-major
/// inside each matrix.
pub fn jacobian<F: Field + Canonical>(rep: &Representation<F>, q: &[F]) -> Result<Matrix<F>> {
    let check = check_rep(rep, q)?;
    if !check.is_zero() {
        return Err(Error::Consistency(
            "representation does not satisfy the relation".into(),
        ));
    }
    let ctx = rep.ctx().clone();
    let rho = lift_poly(&build_relation(rep.quiver(), q)?.rho);
    let base = rep.map(&ctx, |x| Dual::real(x.clone()));
    let mut cols: Vec<Vec<F>> = Vec::new();
    for h in 0..rep.quiver().num_arrows() {
        let (r, c) = rep.mat(h).shape();
        for k in 0..r * c {
            let mut probe = base.clone();
            let mut m = probe.mat(h).clone();
            let x = m.get(k / c, k % c).clone();
            m.set(k / c, k % c, Dual::new(x.re, F::one(&ctx)));
            probe.set_mat(h, m);
            let res = residuals(&probe, &rho)?;
            cols.push(
                res.iter()
                    .flat_map(|m| m.entries().iter().map(|d| d.eps.clone()))
                    .collect(),
            );
        }
    }
    let rows = cols.first().map_or(0, |c| c.len());
    Ok(Matrix::from_fn(&ctx, rows, cols.len(), |i, j| {
        cols[j][i].clone()
    }))
}

/// Kernel dimension of [`jacobian`].
pub fn tangent_dim<F: Field + Canonical>(
    rep: &Representation<F>,
    q: &[F],
) -> Result<TangentReport> {
    let jac = jacobian(rep, q)?;
    let tangent = jac.cols() - jac.rank();
    let gl: i64 = rep.alpha().iter().map(|&a| (a * a) as i64).sum::<i64>() - 1;
    Ok(TangentReport {
        tangent_dim: tangent,
        moduli_dim: tangent as i64 - gl,
    })
}

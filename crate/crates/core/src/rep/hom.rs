use super::{GradedModule, Representation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use alloc::vec::Vec;

/// A morphism given by one matrix per vertex.
pub type HomBlock<F> = Vec<Matrix<F>>;

/// Kernel of the commutation system `Y_a Phi_u - Phi_w X_a = 0` over arrows
/// `a: u -> w`, where `X` lives on the source and `Y` on the target. Unknowns
/// are ordered vertex-major, then row-major inside each `Phi_v`.
pub fn hom_kernel<F: Field>(
    ctx: &F::Ctx,
    src_dims: &[usize],
    tgt_dims: &[usize],
    arrows: &[(usize, usize, &Matrix<F>, &Matrix<F>)],
) -> Matrix<F> {
    let mut offset = Vec::with_capacity(src_dims.len());
    let mut total = 0;
    for (s, t) in src_dims.iter().zip(tgt_dims) {
        offset.push(total);
        total += s * t;
    }
    let rows: usize = arrows
        .iter()
        .map(|&(u, w, _, _)| tgt_dims[w] * src_dims[u])
        .sum();
    let mut sys: Matrix<F> = Matrix::zeros(ctx, rows, total);
    let mut r0 = 0;
    for &(u, w, x, y) in arrows {
        let (su, tw, tu, sw) = (src_dims[u], tgt_dims[w], tgt_dims[u], src_dims[w]);
        for r in 0..tw {
            for c in 0..su {
                let row = r0 + r * su + c;
                // (Y Phi_u)[r][c] = sum_k Y[r][k] Phi_u[k][c]
                for k in 0..tu {
                    let a = y.get(r, k);
                    if !a.is_zero() {
                        let col = offset[u] + k * su + c;
                        let v = sys.get(row, col).add(a);
                        sys.set(row, col, v);
                    }
                }
                // (Phi_w X)[r][c] = sum_k Phi_w[r][k] X[k][c]
                for k in 0..sw {
                    let a = x.get(k, c);
                    if !a.is_zero() {
                        let col = offset[w] + r * sw + k;
                        let v = sys.get(row, col).sub(a);
                        sys.set(row, col, v);
                    }
                }
            }
        }
        r0 += tw * su;
    }
    if total == 0 {
        return Matrix::zeros(ctx, 0, 0);
    }
    sys.kernel()
}

fn unpack<F: Field>(
    ctx: &F::Ctx,
    kernel: &Matrix<F>,
    src_dims: &[usize],
    tgt_dims: &[usize],
) -> Vec<HomBlock<F>> {
    (0..kernel.cols())
        .map(|j| {
            let col = kernel.column(j);
            let mut at = 0;
            src_dims
                .iter()
                .zip(tgt_dims)
                .map(|(&s, &t)| {
                    let m = Matrix::from_fn(ctx, t, s, |r, c| col[at + r * s + c].clone());
                    at += s * t;
                    m
                })
                .collect()
        })
        .collect()
}

/// Basis of degree-zero module maps `W -> V`.
pub fn graded_hom<F: Field>(w: &GradedModule<F>, v: &GradedModule<F>) -> Result<Vec<HomBlock<F>>> {
    if w.quiver() != v.quiver() {
        return Err(Error::DimensionMismatch(
            "modules over different graded quivers".into(),
        ));
    }
    if w.ctx() != v.ctx() {
        return Err(Error::FieldMismatch);
    }
    let tq = w.quiver();
    let arrows: Vec<_> = tq
        .arrows()
        .into_iter()
        .map(|a| (tq.src(a), tq.tgt(a), w.map_of(a), v.map_of(a)))
        .collect();
    let k = hom_kernel(w.ctx(), w.dims(), v.dims(), &arrows);
    Ok(unpack(w.ctx(), &k, w.dims(), v.dims()))
}

/// Basis of representation maps `A -> B`.
pub fn rep_hom<F: Field>(a: &Representation<F>, b: &Representation<F>) -> Result<Vec<HomBlock<F>>> {
    if a.quiver() != b.quiver() {
        return Err(Error::DimensionMismatch(
            "representations of different quivers".into(),
        ));
    }
    let dq = a.quiver();
    let arrows: Vec<_> = (0..dq.num_arrows())
        .map(|h| (dq.src(h), dq.tgt(h), a.mat(h), b.mat(h)))
        .collect();
    let k = hom_kernel(a.ctx(), a.alpha(), b.alpha(), &arrows);
    Ok(unpack(a.ctx(), &k, a.alpha(), b.alpha()))
}

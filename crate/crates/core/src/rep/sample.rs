use super::{check_obstruction, check_rep, residuals, CheckReport, Representation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{build_relation, Relation};
use crate::quiver::DoubledQuiver;
use crate::scalar::{Canonical, Field};
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Entries are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub retries: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            bound: 3,
            retries: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample<F: Field> {
    pub rep: Representation<F>,
    pub check: CheckReport<F>,
    pub attempts: usize,
}

fn random_matrix<F: Field>(
    rng: &mut ChaCha8Rng,
    ctx: &F::Ctx,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix<F> {
    Matrix::from_fn(ctx, rows, cols, |_, _| {
        F::from_int(ctx, rng.gen_range(-bound..=bound))
    })
}

/// For a loop `b = a_g` at `v`, with `Z = I + YX` the relation reads
/// `Z (P X) = q_v (Q X) Z`, so an invertible `Z` exists only when `P X` and
/// `q_v Q X` are similar. Replaces `X` by `X + u w^T` with `w` chosen so the
/// two characteristic polynomials agree; both are affine in `w`.
fn match_spectra<F: Field>(
    rep: &Representation<F>,
    rel: &Relation<F>,
    q: &[F],
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<Option<Matrix<F>>> {
    let dq = rep.quiver();
    let last = 2 * dq.g() - 1;
    let v = dq.src(last);
    let n = rep.alpha()[v];
    let ctx = rep.ctx().clone();
    let p = rep.eval(&rel.l[last - 1], v)?;
    let qq = rep.eval(&rel.r[last], v)?.scale(&q[v]);
    let x0 = rep.mat(last - 1).clone();
    let u = random_matrix(rng, &ctx, n, 1, bound);
    let with = |w: &[F]| -> Result<(Matrix<F>, Vec<F>)> {
        let row = Matrix::from_fn(&ctx, 1, n, |_, j| w[j].clone());
        let x = x0.add(&u.mul(&row)?)?;
        let a = p.mul(&x)?.charpoly()?;
        let b = qq.mul(&x)?.charpoly()?;
        Ok((x, a.iter().zip(&b).map(|(s, t)| s.sub(t)).collect()))
    };
    let zero = alloc::vec![F::zero(&ctx); n];
    let (_, f0) = with(&zero)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = zero.clone();
        e[j] = F::one(&ctx);
        cols.push(
            with(&e)?
                .1
                .iter()
                .zip(&f0)
                .map(|(a, b)| a.sub(b))
                .collect::<Vec<F>>(),
        );
    }
    let jac = Matrix::from_fn(&ctx, n, n, |r, c| cols[c][r].clone());
    let rhs: Vec<F> = f0.iter().map(|x| x.neg()).collect();
    let Some(mut w) = jac.solve(&rhs)? else {
        return Ok(None);
    };
    let kernel = jac.kernel();
    for j in 0..kernel.cols() {
        let c = F::from_int(&ctx, rng.gen_range(-bound..=bound));
        for (wi, kij) in w.iter_mut().zip(kernel.column(j)) {
            *wi = wi.add(&c.mul(&kij));
        }
    }
    Ok(Some(with(&w)?.0))
}

/// Draws every arrow except the last starred one at random, then solves
/// for `Y = X_{a_g*}`.
///
/// The relation residual at each vertex is affine in `Y` because `Y` occurs
/// exactly once in each of `D` and `D*`, so all vertex equations are solved
/// together as one linear system; a random point of the solution space is
/// taken. When the last arrow pair is a loop, `X_{a_g}` is first adjusted by
/// a rank-one term so that the system admits invertible solutions.
pub fn sample_rep<F: Field + Canonical>(
    dq: &DoubledQuiver,
    alpha: &[usize],
    q: &[F],
    seed: u64,
    cfg: &SamplerConfig,
) -> Result<Sample<F>> {
    if alpha.len() != dq.num_vertices() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "alpha has {} entries",
            alpha.len()
        )));
    }
    check_obstruction(q, alpha)?;
    let rel = build_relation(dq, q)?;
    let ctx = q[0].ctx();
    if dq.g() == 0 {
        return Err(Error::UnsupportedShape("quiver has no arrows".into()));
    }
    let last = 2 * dq.g() - 1;
    let (ys, yt) = (alpha[dq.tgt(last)], alpha[dq.src(last)]);
    if ys != yt || ys == 0 {
        return Err(Error::UnsupportedShape(alloc::format!(
            "last ordered arrow {} has endpoint dimensions {yt} and {ys}",
            dq.arrow(last - 1).name
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unknowns = ys * yt;
    for attempt in 1..=cfg.retries {
        let mut rep = Representation::zero(dq, alpha, &ctx);
        for h in 0..dq.num_arrows() {
            if h != last {
                let (r, c) = (alpha[dq.tgt(h)], alpha[dq.src(h)]);
                rep.set_mat(h, random_matrix(&mut rng, &ctx, r, c, cfg.bound));
            }
        }
        if dq.src(last) == dq.tgt(last) {
            match match_spectra(&rep, &rel, q, &mut rng, cfg.bound)? {
                Some(x) => rep.set_mat(last - 1, x),
                None => continue,
            }
        }
        let flat = |rep: &Representation<F>| -> Result<Vec<F>> {
            Ok(residuals(rep, &rel.rho)?
                .iter()
                .flat_map(|m| m.entries().to_vec())
                .collect())
        };
        let f0 = flat(&rep)?;
        let mut cols = Vec::with_capacity(unknowns);
        for k in 0..unknowns {
            let mut probe = rep.clone();
            let mut y = Matrix::zeros(&ctx, ys, yt);
            y.set(k / yt, k % yt, F::one(&ctx));
            probe.set_mat(last, y);
            let fk = flat(&probe)?;
            cols.push(
                fk.iter()
                    .zip(&f0)
                    .map(|(a, b)| a.sub(b))
                    .collect::<Vec<F>>(),
            );
        }
        let a = Matrix::from_fn(&ctx, f0.len(), unknowns, |r, c| cols[c][r].clone());
        let rhs: Vec<F> = f0.iter().map(|x| x.neg()).collect();
        let Some(mut y) = a.solve(&rhs)? else {
            continue;
        };
        let kernel = a.kernel();
        for j in 0..kernel.cols() {
            let c = F::from_int(&ctx, rng.gen_range(-cfg.bound..=cfg.bound));
            for (yi, kij) in y.iter_mut().zip(kernel.column(j)) {
                *yi = yi.add(&c.mul(&kij));
            }
        }
        rep.set_mat(
            last,
            Matrix::from_fn(&ctx, ys, yt, |r, c| y[r * yt + c].clone()),
        );
        match check_rep(&rep, q) {
            Ok(check) if check.is_zero() => {
                return Ok(Sample {
                    rep,
                    check,
                    attempts: attempt,
                })
            }
            Ok(_) => {
                return Err(Error::Consistency(
                    "solved representation fails the relation".into(),
                ))
            }
            Err(Error::SingularGroupElement { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryExhausted {
        attempts: cfg.retries,
    })
}

use super::Representation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{Monomial, PathPoly, Relation};
use crate::quiver::{GradedArrow, TripledQuiver};
use crate::scalar::{Field, Ring};
use alloc::string::String;
use alloc::vec::Vec;

/// Representation of the graded triple: fibers `M_{i,n}`, maps
/// `(h,n): M_{s(h),n} -> M_{t(h),n+1}` and `t_{i,n}: M_{i,n} -> M_{i,n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule<R: Ring> {
    tq: TripledQuiver,
    dims: Vec<usize>,
    lift: Vec<Matrix<R>>,
    tmaps: Vec<Matrix<R>>,
    ctx: R::Ctx,
}

impl<R: Ring> GradedModule<R> {
    pub fn zero(tq: &TripledQuiver, dims: &[usize], ctx: &R::Ctx) -> Self {
        let dq = tq.base();
        let (nh, ni, n) = (dq.num_arrows(), dq.num_vertices(), tq.levels());
        let dim = |i: usize, l: usize| dims[tq.vertex(i, l)];
        let mut lift = Vec::with_capacity(n * nh);
        let mut tmaps = Vec::with_capacity(n * ni);
        for l in 0..n {
            for h in 0..nh {
                lift.push(Matrix::zeros(ctx, dim(dq.tgt(h), l + 1), dim(dq.src(h), l)));
            }
            for i in 0..ni {
                tmaps.push(Matrix::zeros(ctx, dim(i, l + 1), dim(i, l)));
            }
        }
        GradedModule {
            tq: tq.clone(),
            dims: dims.to_vec(),
            lift,
            tmaps,
            ctx: ctx.clone(),
        }
    }

    pub fn quiver(&self) -> &TripledQuiver {
        &self.tq
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize, level: usize) -> usize {
        self.dims[self.tq.vertex(i, level)]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrow(&self, h: usize, level: usize) -> &Matrix<R> {
        &self.lift[level * self.tq.base().num_arrows() + h]
    }

    pub fn tmap(&self, i: usize, level: usize) -> &Matrix<R> {
        &self.tmaps[level * self.tq.base().num_vertices() + i]
    }

    pub fn map_of(&self, a: GradedArrow) -> &Matrix<R> {
        match a {
            GradedArrow::Lift { h, level } => self.arrow(h, level),
            GradedArrow::T { vertex, level } => self.tmap(vertex, level),
        }
    }

    pub fn set_arrow(&mut self, h: usize, level: usize, m: Matrix<R>) -> Result<()> {
        let k = level * self.tq.base().num_arrows() + h;
        check_shape(&self.lift[k], &m)?;
        self.lift[k] = m;
        Ok(())
    }

    pub fn set_tmap(&mut self, i: usize, level: usize, m: Matrix<R>) -> Result<()> {
        let k = level * self.tq.base().num_vertices() + i;
        check_shape(&self.tmaps[k], &m)?;
        self.tmaps[k] = m;
        Ok(())
    }

    /// The `J` relations `t (h,n+1) = (h,n) t` as matrix identities.
    pub fn j_relations_hold(&self) -> Result<bool> {
        let dq = self.tq.base();
        for l in 0..self.tq.levels().saturating_sub(1) {
            for h in 0..dq.num_arrows() {
                let lhs = self.arrow(h, l + 1).mul(self.tmap(dq.src(h), l))?;
                let rhs = self.tmap(dq.tgt(h), l + 1).mul(self.arrow(h, l))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `J` relations plus vanishing of `rho` out of every fiber where it is defined.
    pub fn check_module(&self, rel: &Relation<R>) -> Result<()> {
        if !self.j_relations_hold()? {
            return Err(Error::NotAModule(
                "t does not commute with the arrows".into(),
            ));
        }
        let deg = 2 * self.tq.base().g();
        for l in 0..=self.tq.levels() {
            if l + deg > self.tq.levels() {
                break;
            }
            for i in 0..self.tq.base().num_vertices() {
                if !evaluate(&rel.rho, self, i, l)?.is_zero() {
                    return Err(Error::NotAModule(alloc::format!(
                        "rho does not vanish at ({}, {l})",
                        self.tq.base().vertex_name(i)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_shape<R: Ring>(old: &Matrix<R>, new: &Matrix<R>) -> Result<()> {
    if old.shape() != new.shape() {
        return Err(Error::ShapeMismatch {
            expected: old.shape(),
            found: new.shape(),
        });
    }
    if old.ctx() != new.ctx() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn monomial_map<R: Ring>(
    m: &Monomial,
    module: &GradedModule<R>,
    level: usize,
) -> Result<Matrix<R>> {
    let mut x = Matrix::identity(&module.ctx, module.dim(m.start, level));
    let mut l = level;
    for &h in &m.word {
        x = module.arrow(h, l).mul(&x)?;
        l += 1;
    }
    for _ in 0..m.tpow {
        x = module.tmap(m.end, l).mul(&x)?;
        l += 1;
    }
    Ok(x)
}

fn check_degree<R: Ring>(e: &PathPoly<R>, module: &GradedModule<R>, level: usize) -> Result<i64> {
    let d = match e.degree() {
        Some(d) => d,
        None if e.is_zero() => 0,
        None => return Err(Error::NotHomogeneous),
    };
    let target = level as i64 + d;
    if target < 0 || target > module.tq.levels() as i64 {
        return Err(Error::DegreeOverflow {
            degree: target,
            max: module.tq.levels(),
        });
    }
    Ok(d)
}

fn common_end<R: Ring>(e: &PathPoly<R>, i: usize) -> Result<usize> {
    let mut end = None;
    for (m, _) in e.terms() {
        if *end.get_or_insert(m.end) != m.end {
            return Err(Error::VertexMismatch);
        }
    }
    Ok(end.unwrap_or(i))
}

/// Action of `e_i p` from the fiber `(i, n)` to `(j, n + deg p)`.
pub fn evaluate<R: Ring>(
    p: &PathPoly<R>,
    module: &GradedModule<R>,
    i: usize,
    n: usize,
) -> Result<Matrix<R>> {
    let e = p.left_idem(i);
    let d = check_degree(&e, module, n)?;
    let j = common_end(&e, i)?;
    if e.terms().any(|(m, _)| m.tpow < 0) {
        return Err(Error::DegreeOverflow {
            degree: -1,
            max: module.tq.levels(),
        });
    }
    let mut acc = Matrix::zeros(
        &module.ctx,
        module.dim(j, (n as i64 + d) as usize),
        module.dim(i, n),
    );
    for (m, c) in e.terms() {
        acc = acc.add(&monomial_map(m, module, n)?.scale(c))?;
    }
    Ok(acc)
}

/// Like [`evaluate`], for modules on which `t` is invertible: negative
/// powers of `t` are allowed, and words that would leave `[0, N]` are folded
/// back with `t^{-1}`. Only the total degree has to land in range.
pub fn evaluate_laurent<F: Field>(
    p: &PathPoly<F>,
    module: &GradedModule<F>,
    i: usize,
    n: usize,
) -> Result<Matrix<F>> {
    let e = p.left_idem(i);
    let d = check_degree(&e, module, n)?;
    let j = common_end(&e, i)?;
    let mut acc = Matrix::zeros(
        &module.ctx,
        module.dim(j, (n as i64 + d) as usize),
        module.dim(i, n),
    );
    let mut inverses: Vec<Option<Matrix<F>>> = alloc::vec![None; module.tmaps.len()];
    for (m, c) in e.terms() {
        acc = acc.add(&laurent_monomial(m, module, n, &mut inverses)?.scale(c))?;
    }
    Ok(acc)
}

fn laurent_monomial<F: Field>(
    m: &Monomial,
    module: &GradedModule<F>,
    level: usize,
    cache: &mut [Option<Matrix<F>>],
) -> Result<Matrix<F>> {
    let top = module.tq.levels();
    let ni = module.tq.base().num_vertices();
    let mut down = |x: Matrix<F>, v: usize, l: usize| -> Result<Matrix<F>> {
        let k = (l - 1) * ni + v;
        if cache[k].is_none() {
            cache[k] = Some(module.tmaps[k].inverse().map_err(|_| Error::Singular)?);
        }
        cache[k].as_ref().unwrap().mul(&x)
    };
    let mut x = Matrix::identity(&module.ctx, module.dim(m.start, level));
    let (mut l, mut v, mut pending) = (level, m.start, m.tpow as i64);
    while pending < 0 && l > 0 {
        x = down(x, v, l)?;
        l -= 1;
        pending += 1;
    }
    for &h in &m.word {
        if l == top {
            if l == 0 {
                return Err(Error::DegreeOverflow {
                    degree: 1,
                    max: top,
                });
            }
            x = down(x, v, l)?;
            l -= 1;
            pending += 1;
        }
        x = module.arrow(h, l).mul(&x)?;
        l += 1;
        v = module.tq.base().tgt(h);
    }
    while pending > 0 {
        x = module.tmap(v, l).mul(&x)?;
        l += 1;
        pending -= 1;
    }
    while pending < 0 {
        x = down(x, v, l)?;
        l -= 1;
        pending += 1;
    }
    Ok(x)
}

/// `(h,n) = g_{t(h),n+1} X_h g_{s(h),n}^{-1}` and `t_{i,n} = g_{i,n+1} g_{i,n}^{-1}`;
/// `group` is indexed like the graded vertices and defaults to identities.
pub fn induce<F: Field>(
    rep: &Representation<F>,
    n: usize,
    group: Option<&[Matrix<F>]>,
) -> Result<GradedModule<F>> {
    let dq = rep.quiver();
    let tq = dq.triple(n)?;
    let dims = crate::quiver::lift_dimension(rep.alpha(), n);
    let mut out = GradedModule::zero(&tq, &dims, rep.ctx());
    let Some(group) = group else {
        for l in 0..n {
            for h in 0..dq.num_arrows() {
                out.set_arrow(h, l, rep.mat(h).clone())?;
            }
            for i in 0..dq.num_vertices() {
                out.set_tmap(i, l, Matrix::identity(rep.ctx(), rep.alpha()[i]))?;
            }
        }
        return Ok(out);
    };
    if group.len() != tq.num_vertices() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} group elements",
            group.len()
        )));
    }
    let mut inv = Vec::with_capacity(group.len());
    for (v, g) in group.iter().enumerate() {
        let (i, l) = tq.split_vertex(v);
        inv.push(g.inverse().map_err(|_| Error::SingularGroupElement {
            arrow: alloc::format!("g({},{l})", String::from(dq.vertex_name(i))),
        })?);
    }
    for l in 0..n {
        for h in 0..dq.num_arrows() {
            let m = group[tq.vertex(dq.tgt(h), l + 1)]
                .mul(rep.mat(h))?
                .mul(&inv[tq.vertex(dq.src(h), l)])?;
            out.set_arrow(h, l, m)?;
        }
        for i in 0..dq.num_vertices() {
            out.set_tmap(i, l, group[tq.vertex(i, l + 1)].mul(&inv[tq.vertex(i, l)])?)?;
        }
    }
    Ok(out)
}

/// Degree-`[0, N]` truncation of `V[t]`, built from the action on the basis
/// `v t^n`.
pub fn truncate<F: Field>(rep: &Representation<F>, n: usize) -> Result<GradedModule<F>> {
    let dq = rep.quiver();
    let tq = dq.triple(n)?;
    let ctx = rep.ctx();
    let dims = crate::quiver::lift_dimension(rep.alpha(), n);
    let mut out = GradedModule::zero(&tq, &dims, ctx);
    let unit = |d: usize, k: usize| -> Vec<F> {
        (0..d)
            .map(|r| if r == k { F::one(ctx) } else { F::zero(ctx) })
            .collect()
    };
    for l in 0..n {
        for h in 0..dq.num_arrows() {
            let (s, t) = (rep.alpha()[dq.src(h)], rep.alpha()[dq.tgt(h)]);
            let mut m = Matrix::zeros(ctx, t, s);
            for k in 0..s {
                // h . (e_k t^l) = (X_h e_k) t^{l+1}
                for (r, x) in rep.mat(h).mul_vec(&unit(s, k))?.into_iter().enumerate() {
                    m.set(r, k, x);
                }
            }
            out.set_arrow(h, l, m)?;
        }
        for i in 0..dq.num_vertices() {
            let d = rep.alpha()[i];
            let mut m = Matrix::zeros(ctx, d, d);
            for k in 0..d {
                for (r, x) in unit(d, k).into_iter().enumerate() {
                    m.set(r, k, x);
                }
            }
            out.set_tmap(i, l, m)?;
        }
    }
    Ok(out)
}

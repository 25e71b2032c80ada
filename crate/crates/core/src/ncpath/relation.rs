use super::bimod::{derive, BimodElem, BimodTerm, Slot};
use super::poly::PathPoly;
use crate::error::{Error, Result};
use crate::quiver::DoubledQuiver;
use crate::scalar::Ring;
use alloc::string::String;
use alloc::vec::Vec;

/// `G_h`, the partial products `L_h`, `R_h`, and `D`, `D*`, `rho`.
///
/// For the ordered arrows `a_1..a_g`:
/// `L_{a_j} = G_{a_1}..G_{a_{j-1}}`, `R_{a_j} = G_{a_{j+1}}..G_{a_g}`,
/// `L_{a_j*} = G_{a_g*}..G_{a_{j+1}*}`, `R_{a_j*} = G_{a_{j-1}*}..G_{a_1*}`.
#[derive(Clone, Debug)]
pub struct Relation<R: Ring> {
    pub dq: DoubledQuiver,
    pub q: Vec<R>,
    pub g: Vec<PathPoly<R>>,
    pub l: Vec<PathPoly<R>>,
    pub r: Vec<PathPoly<R>>,
    pub d: PathPoly<R>,
    pub d_star: PathPoly<R>,
    pub rho: PathPoly<R>,
}

impl<R: Ring> Relation<R> {
    pub fn ctx(&self) -> &R::Ctx {
        self.rho.ctx()
    }

    /// `sum_i q_i e_i`.
    pub fn q_poly(&self) -> PathPoly<R> {
        PathPoly::vertex_scalars(self.ctx(), &self.q)
    }

    /// `delta(G_h) = h eta_{h*} + eta_h h*`.
    pub fn delta_g(&self, h: usize) -> BimodElem<R> {
        derive(&self.dq, &self.g[h])
    }
}

fn product<R: Ring>(
    ctx: &R::Ctx,
    dq: &DoubledQuiver,
    factors: impl Iterator<Item = PathPoly<R>>,
) -> PathPoly<R> {
    factors.fold(PathPoly::one(ctx, dq), |acc, f| acc.mul(&f))
}

pub fn build_relation<R: Ring>(dq: &DoubledQuiver, q: &[R]) -> Result<Relation<R>> {
    if q.len() != dq.num_vertices() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} parameters for {} vertices",
            q.len(),
            dq.num_vertices()
        )));
    }
    if let Some(i) = q.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroParameter {
            vertex: String::from(dq.vertex_name(i)),
        });
    }
    let ctx = q[0].ctx();
    for x in q {
        x.same_field(&q[0])?;
    }
    let gn = dq.g();
    let t2 = PathPoly::t_pow(&ctx, dq, 2);
    let g: Vec<PathPoly<R>> = (0..dq.num_arrows())
        .map(|h| {
            let a = PathPoly::arrow(&ctx, dq, h);
            let b = PathPoly::arrow(&ctx, dq, dq.star(h));
            t2.add(&a.mul(&b))
        })
        .collect();
    let ga = |j: usize| g[2 * j].clone();
    let gs = |j: usize| g[2 * j + 1].clone();
    let mut l = alloc::vec![PathPoly::zero(&ctx); dq.num_arrows()];
    let mut r = alloc::vec![PathPoly::zero(&ctx); dq.num_arrows()];
    for j in 0..gn {
        l[2 * j] = product(&ctx, dq, (0..j).map(ga));
        r[2 * j] = product(&ctx, dq, (j + 1..gn).map(ga));
        l[2 * j + 1] = product(&ctx, dq, (j + 1..gn).rev().map(gs));
        r[2 * j + 1] = product(&ctx, dq, (0..j).rev().map(gs));
    }
    let d = product(&ctx, dq, (0..gn).map(ga));
    let qp = PathPoly::vertex_scalars(&ctx, q);
    let d_star = qp.mul(&product(&ctx, dq, (0..gn).rev().map(gs)));
    let rho = d.sub(&d_star);
    Ok(Relation {
        dq: dq.clone(),
        q: q.to_vec(),
        g,
        l,
        r,
        d,
        d_star,
        rho,
    })
}

/// Components of the bimodule resolution differentials.
#[derive(Clone, Debug)]
pub struct Differentials<R: Ring> {
    /// `alpha(eta_i)` per vertex.
    pub alpha: Vec<BimodElem<R>>,
    /// `beta(eta_h)` per doubled arrow.
    pub beta: Vec<BimodElem<R>>,
    /// `alpha^dual(eta_h^dual)` per doubled arrow.
    pub alpha_dual: Vec<BimodElem<R>>,
}

pub fn differential_components<R: Ring>(rel: &Relation<R>) -> Differentials<R> {
    let dq = &rel.dq;
    let ctx = rel.ctx().clone();
    let n = dq.num_vertices();
    let mut alpha = alloc::vec![BimodElem::zero(&ctx); n];
    for j in 0..dq.g() {
        let (a, s) = (2 * j, 2 * j + 1);
        let pos = rel.delta_g(a).left_mul(&rel.l[a]).right_mul(&rel.r[a]);
        let neg = rel
            .delta_g(s)
            .left_mul(&rel.l[s])
            .right_mul(&rel.r[s])
            .left_mul(&rel.q_poly());
        let (i, k) = (dq.src(a), dq.tgt(a));
        alpha[i] = alpha[i].add(&pos);
        alpha[k] = alpha[k].sub(&neg);
    }
    let beta = (0..dq.num_arrows())
        .map(|h| {
            let (s, t) = (dq.src(h), dq.tgt(h));
            let arrow = PathPoly::arrow(&ctx, dq, h);
            let left = BimodElem::tensor(&PathPoly::idempotent(&ctx, s), Slot::Vertex(s), &arrow);
            let right = BimodElem::tensor(&arrow, Slot::Vertex(t), &PathPoly::idempotent(&ctx, t));
            left.sub(&right)
        })
        .collect();
    let mut alpha_dual = alloc::vec![BimodElem::zero(&ctx); dq.num_arrows()];
    for (i, a) in alpha.iter().enumerate() {
        for (term, c) in a.terms() {
            if let Slot::Arrow(h) = term.slot {
                let left = term.right.with_tpow(term.left.tpow);
                let right = term.left.with_tpow(0);
                alpha_dual[h].add_term(BimodTerm::new(left, Slot::VertexDual(i), right), c.clone());
            }
        }
    }
    Differentials {
        alpha,
        beta,
        alpha_dual,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

/// Symbolic identities in the free path algebra.
pub fn identity_suite<R: Ring>(rel: &Relation<R>) -> IdentityReport {
    let dq = &rel.dq;
    let ctx = rel.ctx().clone();
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(IdentityCheck {
            name: name.into(),
            pass,
        })
    };

    let intertwine = (0..dq.num_arrows()).all(|h| {
        let a = PathPoly::arrow(&ctx, dq, h);
        let s = PathPoly::arrow(&ctx, dq, dq.star(h));
        let (ga, gs) = (&rel.g[h], &rel.g[dq.star(h)]);
        ga.mul(&a).sub(&a.mul(gs)).is_zero() && s.mul(ga).sub(&gs.mul(&s)).is_zero()
    });
    push("g_intertwines_arrows", intertwine);

    let n = dq.num_vertices();
    let mut diag = PathPoly::zero(&ctx);
    let mut off_diag_zero = true;
    for i in 0..n {
        for j in 0..n {
            let block = rel.rho.left_idem(i).right_idem(j);
            if i == j {
                diag = diag.add(&block);
            } else if !block.is_zero() {
                off_diag_zero = false;
            }
        }
    }
    push("rho_peirce_diagonal", off_diag_zero && diag == rel.rho);

    let diffs = differential_components(rel);
    let drho = derive(dq, &rel.rho);
    let alpha_ok = (0..n).all(|i| diffs.alpha[i].sub(&drho.left_idem(i)).is_zero());
    push("alpha_is_derivative_of_rho", alpha_ok);

    let deg = 2 * dq.g() as i64;
    push(
        "rho_homogeneous",
        rel.rho.is_zero() || rel.rho.degree() == Some(deg),
    );

    let compatible = diffs
        .alpha
        .iter()
        .chain(&diffs.beta)
        .chain(&diffs.alpha_dual)
        .all(|b| b.slots_compatible(dq));
    push("slots_compatible", compatible);

    IdentityReport { checks }
}

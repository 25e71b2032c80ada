//! The three-term complex `L(V0, W0) -> E(V0, W1) -> L(V0, W_2g)` computing
//! Ext between graded modules, assembled by contracting the symbolic
//! differentials against the modules.
//!
//! Cochain blocks: `L(n)` has one block `V_i -> W_{n,i}` per vertex, `E` one
//! block `V_{s(h)} -> W_{1,t(h)}` per doubled arrow, each flattened row-major.

mod contract;
mod first_order;
mod members;
mod phi;

pub use contract::{add_sandwich, Evaluator, Layout};
pub use first_order::{first_order_check, FirstOrderReport};
pub use members::{verify_bimodule_memberships, MembershipReport};
pub use phi::{phi_correspondence, PhiReport};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{build_relation, differential_components, Differentials, Relation, Slot};
use crate::quiver::expected_rank;
use crate::rep::{graded_hom, induce, GradedModule, Representation};
use crate::scalar::{Canonical, Field};
use alloc::vec::Vec;
use contract::{check_block, contract_primal};

/// Source and target of the complex, with the relation data.
#[derive(Clone, Debug)]
pub struct ExtPair<F: Field> {
    pub vbar: Representation<F>,
    pub w: GradedModule<F>,
    pub rel: Relation<F>,
    pub diffs: Differentials<F>,
}

/// Degree-zero part of `V` with `t` set to one: `X_h = t_{t(h),0}^{-1} V_{(h,0)}`.
pub fn degree_zero_part<F: Field>(v: &GradedModule<F>) -> Result<Representation<F>> {
    let tq = v.quiver();
    let dq = tq.base();
    if tq.levels() == 0 {
        return Err(Error::DegreeOverflow { degree: 1, max: 0 });
    }
    let alpha: Vec<usize> = (0..dq.num_vertices()).map(|i| v.dim(i, 0)).collect();
    let mut mats = Vec::with_capacity(dq.num_arrows());
    for h in 0..dq.num_arrows() {
        let tinv = v
            .tmap(dq.tgt(h), 0)
            .inverse()
            .map_err(|_| Error::Singular)?;
        mats.push(tinv.mul(v.arrow(h, 0))?);
    }
    Representation::new(dq, &alpha, mats, v.ctx())
}

impl<F: Field> ExtPair<F> {
    pub fn new(v: &GradedModule<F>, w: &GradedModule<F>, q: &[F]) -> Result<Self> {
        if v.quiver() != w.quiver() {
            return Err(Error::DimensionMismatch(
                "modules over different graded quivers".into(),
            ));
        }
        Self::from_parts(degree_zero_part(v)?, w.clone(), q)
    }

    pub fn from_parts(vbar: Representation<F>, w: GradedModule<F>, q: &[F]) -> Result<Self> {
        if vbar.quiver() != w.quiver().base() {
            return Err(Error::DimensionMismatch(
                "source and target over different quivers".into(),
            ));
        }
        let g = w.quiver().base().g();
        if w.quiver().levels() < 2 * g {
            return Err(Error::DegreeOverflow {
                degree: 2 * g as i64,
                max: w.quiver().levels(),
            });
        }
        let rel = build_relation(w.quiver().base(), q)?;
        let diffs = differential_components(&rel);
        Ok(ExtPair {
            vbar,
            w,
            rel,
            diffs,
        })
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.w.ctx()
    }

    pub fn top(&self) -> usize {
        2 * self.rel.dq.g()
    }

    pub(crate) fn evaluator(&self) -> Evaluator<'_, F> {
        Evaluator {
            vbar: &self.vbar,
            w: &self.w,
        }
    }

    /// Layout of `L(n)`.
    pub fn layout_l(&self, n: usize) -> Layout {
        let dq = &self.rel.dq;
        Layout::new(
            (0..dq.num_vertices())
                .map(|i| (self.w.dim(i, n), self.vbar.alpha()[i]))
                .collect(),
        )
    }

    pub fn layout_e(&self) -> Layout {
        let dq = &self.rel.dq;
        Layout::new(
            (0..dq.num_arrows())
                .map(|h| (self.w.dim(dq.tgt(h), 1), self.vbar.alpha()[dq.src(h)]))
                .collect(),
        )
    }

    pub fn d0(&self) -> Result<Matrix<F>> {
        let slot = |s: Slot| match s {
            Slot::Vertex(i) => Some(i),
            _ => None,
        };
        contract_primal(
            &self.evaluator(),
            &self.diffs.beta,
            &self.layout_l(0),
            slot,
            0,
            &self.layout_e(),
        )
    }

    pub fn d1(&self) -> Result<Matrix<F>> {
        let slot = |s: Slot| match s {
            Slot::Arrow(h) => Some(h),
            _ => None,
        };
        let out = self.layout_l(self.top());
        contract_primal(
            &self.evaluator(),
            &self.diffs.alpha,
            &self.layout_e(),
            slot,
            1,
            &out,
        )
    }

    /// `d1` rebuilt from the dual components: `eta_h^dual` seeded by the
    /// `E`-block `h`, contracted with `alpha^dual(eta_h^dual)`.
    pub fn d1_from_dual(&self) -> Result<Matrix<F>> {
        let ev = self.evaluator();
        let (input, output) = (self.layout_e(), self.layout_l(self.top()));
        let mut out = Matrix::zeros(self.ctx(), output.dim, input.dim);
        for (h, e) in self.diffs.alpha_dual.iter().enumerate() {
            for (term, c) in e.terms() {
                let Slot::VertexDual(i) = term.slot else {
                    return Err(Error::NotAComplex);
                };
                let (a, b) = ev.dual(term, c, 1, 0)?;
                check_block(&a, &b, input.shapes[h], output.shapes[i])?;
                add_sandwich(&mut out, output.offsets[i], input.offsets[h], &a, &b);
            }
        }
        Ok(out)
    }
}

/// `(d0, d1)` for the pair `(V, W)`.
pub fn build_differentials<F: Field>(
    v: &GradedModule<F>,
    w: &GradedModule<F>,
    q: &[F],
) -> Result<(Matrix<F>, Matrix<F>)> {
    let pair = ExtPair::new(v, w, q)?;
    Ok((pair.d0()?, pair.d1()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub dim_l: usize,
    pub dim_e: usize,
    pub dim_l_top: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub h_minus1: usize,
    pub h0: usize,
    pub h1: usize,
    pub is_complex: bool,
    pub euler_ok: bool,
    pub expected_rank: i64,
    pub rank_matches: bool,
    /// `dim Hom(tau V, W)`.
    pub hom_into_w: usize,
    /// `dim Hom(W, tau V)`.
    pub hom_from_w: usize,
    pub dual_contraction_agrees: bool,
}

impl ComplexReport {
    pub fn all_pass(&self) -> bool {
        self.is_complex
            && self.euler_ok
            && self.rank_matches
            && self.dual_contraction_agrees
            && self.h_minus1 == self.hom_into_w
            && self.h1 == self.hom_from_w
    }
}

pub fn complex_report<F: Field + Canonical>(pair: &ExtPair<F>) -> Result<ComplexReport> {
    let (d0, d1) = (pair.d0()?, pair.d1()?);
    if !d1.mul(&d0)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let (dim_l, dim_e, dim_l_top) = (d0.cols(), d0.rows(), d1.rows());
    let (rank_d0, rank_d1) = (d0.rank(), d1.rank());
    let h_minus1 = dim_l - rank_d0;
    let h0 = dim_e - rank_d0 - rank_d1;
    let h1 = dim_l_top - rank_d1;
    let euler_ok =
        h_minus1 as i64 - h0 as i64 + h1 as i64 == dim_l as i64 - dim_e as i64 + dim_l_top as i64;
    let dq = &pair.rel.dq;
    let expected = expected_rank(dq, pair.vbar.alpha());
    let same_alpha = (0..dq.num_vertices()).all(|i| pair.w.dim(i, 0) == pair.vbar.alpha()[i]);
    let rank_matches = !same_alpha || dim_e as i64 - dim_l as i64 - dim_l_top as i64 == expected;
    let tau_v = induce(&pair.vbar, pair.w.quiver().levels(), None)?;
    let hom_into_w = graded_hom(&tau_v, &pair.w)?.len();
    let hom_from_w = graded_hom(&pair.w, &tau_v)?.len();
    let dual_contraction_agrees = pair.d1_from_dual()? == d1;
    Ok(ComplexReport {
        dim_l,
        dim_e,
        dim_l_top,
        rank_d0,
        rank_d1,
        h_minus1,
        h0,
        h1,
        is_complex: true,
        euler_ok,
        expected_rank: expected,
        rank_matches,
        hom_into_w,
        hom_from_w,
        dual_contraction_agrees,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rep::fixtures::*;
    use crate::scalar::Rational;

    pub fn r1_pair() -> ExtPair<Rational> {
        let m = induce(&r1(), 2, None).unwrap();
        ExtPair::new(&m, &m, &[Rational::int(-1)]).unwrap()
    }

    #[test]
    fn r1_shapes_and_cohomology() {
        let p = r1_pair();
        assert_eq!(p.d0().unwrap().shape(), (8, 4));
        assert_eq!(p.d1().unwrap().shape(), (4, 8));
        let r = complex_report(&p).unwrap();
        assert_eq!((r.h_minus1, r.h0, r.h1), (1, 2, 1));
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn scalar_loop_shapes() {
        let m = |x: i64| Matrix::<Rational>::from_ints(&(), &[&[x]]);
        let r = Representation::new(&one_loop(), &[1], alloc::vec![m(2), m(3)], &()).unwrap();
        let g = induce(&r, 2, None).unwrap();
        let p = ExtPair::new(&g, &g, &[Rational::int(1)]).unwrap();
        assert_eq!(p.d0().unwrap().shape(), (2, 1));
        assert_eq!(p.d1().unwrap().shape(), (1, 2));
        assert!(complex_report(&p).unwrap().all_pass());
    }

    #[test]
    fn two_vertex_cohomology() {
        let q = [Rational::int(-1), Rational::int(-1)];
        let m = induce(&two_vertex_rep(), 2, None).unwrap();
        let r = complex_report(&ExtPair::new(&m, &m, &q).unwrap()).unwrap();
        assert_eq!((r.dim_l, r.dim_e, r.dim_l_top), (2, 2, 2));
        // Euler characteristic 2 - 2 + 2 forces h0 = 0 once h-1 = h1 = 1.
        assert_eq!((r.h_minus1, r.h0, r.h1), (1, 0, 1));
        assert_eq!(r.expected_rank, -2);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn zero_modules() {
        let z = Representation::<Rational>::zero(&one_loop(), &[0], &());
        let m = induce(&z, 2, None).unwrap();
        let p = ExtPair::new(&m, &m, &[Rational::int(1)]).unwrap();
        assert_eq!(p.d0().unwrap().shape(), (0, 0));
        assert_eq!(p.d1().unwrap().shape(), (0, 0));
    }

    #[test]
    fn sampled_pairs() {
        use crate::rep::{sample_rep, SamplerConfig};
        for q in [Rational::int(1), Rational::int(-1)] {
            let reps: Vec<_> = (0..3)
                .map(|seed| {
                    sample_rep(
                        &two_loops(),
                        &[2],
                        core::slice::from_ref(&q),
                        seed,
                        &SamplerConfig::default(),
                    )
                    .unwrap()
                    .rep
                })
                .collect();
            let mods: Vec<_> = reps.iter().map(|r| induce(r, 4, None).unwrap()).collect();
            for (i, v) in mods.iter().enumerate() {
                for (j, w) in mods.iter().enumerate() {
                    let r = complex_report(&ExtPair::new(v, w, core::slice::from_ref(&q)).unwrap())
                        .unwrap();
                    assert!(r.all_pass(), "{i} {j} {r:?}");
                    let h = if i == j { 1 } else { 0 };
                    assert_eq!((r.h_minus1, r.h1), (h, h), "{i} {j} {r:?}");
                }
            }
        }
    }
}

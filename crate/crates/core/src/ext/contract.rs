use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpath::{BimodElem, BimodTerm, PathPoly, Slot};
use crate::rep::{evaluate_laurent, GradedModule, Representation};
use crate::scalar::Field;
use alloc::vec::Vec;

/// Block layout of a cochain space: block `k` is a `rows x cols` matrix,
/// flattened row-major, blocks concatenated in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub shapes: Vec<(usize, usize)>,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl Layout {
    pub fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut dim = 0;
        for &(r, c) in &shapes {
            offsets.push(dim);
            dim += r * c;
        }
        Layout {
            shapes,
            offsets,
            dim,
        }
    }

    pub fn unpack<F: Field>(&self, ctx: &F::Ctx, v: &[F]) -> Vec<Matrix<F>> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| Matrix::from_fn(ctx, r, c, |i, j| v[o + i * c + j].clone()))
            .collect()
    }

    pub fn pack<F: Field>(&self, ctx: &F::Ctx, blocks: &[Matrix<F>]) -> Vec<F> {
        let mut out = alloc::vec![F::zero(ctx); self.dim];
        for (b, &o) in blocks.iter().zip(&self.offsets) {
            for (k, x) in b.entries().iter().enumerate() {
                out[o + k] = x.clone();
            }
        }
        out
    }
}

/// Adds the matrix of `f -> a f b` (row-major vectorization) into `out` at
/// the given block offsets.
pub fn add_sandwich<F: Field>(
    out: &mut Matrix<F>,
    r0: usize,
    c0: usize,
    a: &Matrix<F>,
    b: &Matrix<F>,
) {
    let (m, n, k) = (a.cols(), b.rows(), b.cols());
    for r in 0..a.rows() {
        for i in 0..m {
            let x = a.get(r, i);
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for s in 0..k {
                    let y = b.get(j, s);
                    if !y.is_zero() {
                        let (row, col) = (r0 + r * k + s, c0 + i * n + j);
                        let v = out.get(row, col).add(&x.mul(y));
                        out.set(row, col, v);
                    }
                }
            }
        }
    }
}

/// Evaluation data: the ungraded source `V` (with `t = 1`) and the graded
/// target `W`.
#[derive(Clone, Debug)]
pub struct Evaluator<'a, F: Field> {
    pub vbar: &'a Representation<F>,
    pub w: &'a GradedModule<F>,
}

impl<F: Field> Evaluator<'_, F> {
    fn ctx(&self) -> &F::Ctx {
        self.w.ctx()
    }

    fn on_v(&self, m: &crate::ncpath::Monomial) -> Result<Matrix<F>> {
        let p = PathPoly::monomial(self.ctx(), m.with_tpow(0), F::one(self.ctx()));
        self.vbar.eval(&p, m.start)
    }

    fn on_w(&self, m: &crate::ncpath::Monomial, shift: i64, level: usize) -> Result<Matrix<F>> {
        let p = PathPoly::monomial(
            self.ctx(),
            m.with_tpow(m.tpow + shift as i32),
            F::one(self.ctx()),
        );
        evaluate_laurent(&p, self.w, m.start, level)
    }

    /// For `x (slot) y`, the pair `(A, B)` with contribution `f -> A f B`,
    /// where `f: V_{s} -> W_{level, t}` sits in the slot. `x` acts on `V`
    /// and its degree is carried over to `W` as a power of `t`.
    pub fn primal(&self, term: &BimodTerm, c: &F, level: usize) -> Result<(Matrix<F>, Matrix<F>)> {
        let b = self.on_v(&term.left)?;
        let a = self.on_w(&term.right, term.left.degree(), level)?.scale(c);
        Ok((a, b))
    }

    /// For a dual term `x (eta_i^dual) y` seeded by `m: V_w -> W_{level, u}`:
    /// `m -> W(x) m V(y)`, with `y`'s degree and `extra` carried to `W`.
    pub fn dual(
        &self,
        term: &BimodTerm,
        c: &F,
        level: usize,
        extra: i64,
    ) -> Result<(Matrix<F>, Matrix<F>)> {
        let b = self.on_v(&term.right)?;
        let a = self
            .on_w(&term.left, term.right.degree() + extra, level)?
            .scale(c);
        Ok((a, b))
    }
}

/// Matrix of the linear map obtained by contracting `elems[k]` (output block
/// `k`) against input blocks indexed by slot.
pub fn contract_primal<F: Field>(
    ev: &Evaluator<'_, F>,
    elems: &[BimodElem<F>],
    input: &Layout,
    slot_index: impl Fn(Slot) -> Option<usize>,
    level: usize,
    output: &Layout,
) -> Result<Matrix<F>> {
    let mut out = Matrix::zeros(ev.w.ctx(), output.dim, input.dim);
    for (k, e) in elems.iter().enumerate() {
        for (term, c) in e.terms() {
            let j = slot_index(term.slot).ok_or(Error::ShapeMismatch {
                expected: (0, 0),
                found: (1, 1),
            })?;
            let (a, b) = ev.primal(term, c, level)?;
            check_block(&a, &b, input.shapes[j], output.shapes[k])?;
            add_sandwich(&mut out, output.offsets[k], input.offsets[j], &a, &b);
        }
    }
    Ok(out)
}

pub(crate) fn check_block<F: Field>(
    a: &Matrix<F>,
    b: &Matrix<F>,
    input: (usize, usize),
    output: (usize, usize),
) -> Result<()> {
    if (a.cols(), b.rows()) != input {
        return Err(Error::ShapeMismatch {
            expected: input,
            found: (a.cols(), b.rows()),
        });
    }
    if (a.rows(), b.cols()) != output {
        return Err(Error::ShapeMismatch {
            expected: output,
            found: (a.rows(), b.cols()),
        });
    }
    Ok(())
}

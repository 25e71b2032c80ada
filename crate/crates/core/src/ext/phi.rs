use super::ExtPair;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{graded_hom, induce, GradedModule, HomBlock};
use crate::scalar::Field;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub dim_kernel: usize,
    pub dim_hom: usize,
    /// Every kernel vector maps to a module map `W -> tau V`.
    pub forward_in_hom: bool,
    /// Every module map `W -> tau V` maps back into the kernel.
    pub backward_in_kernel: bool,
    pub round_trip: bool,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.dim_kernel == self.dim_hom
            && self.forward_in_hom
            && self.backward_in_kernel
            && self.round_trip
    }
}

/// `phi*` blocks `W_{2g,i} -> V_i` are paired with `L(2g)` by
/// `<chi, phi*> = sum_i tr(phi*_i chi_i)`, so in coordinates the dual of
/// `d1` is its transpose acting on the row-major flattening of `phi*_i^T`.
fn to_blocks<F: Field>(pair: &ExtPair<F>, u: &[F]) -> Vec<Matrix<F>> {
    pair.layout_l(pair.top())
        .unpack(pair.ctx(), u)
        .iter()
        .map(|m| m.transpose())
        .collect()
}

fn to_coords<F: Field>(pair: &ExtPair<F>, blocks: &[Matrix<F>]) -> Vec<F> {
    let t: Vec<Matrix<F>> = blocks.iter().map(|m| m.transpose()).collect();
    pair.layout_l(pair.top()).pack(pair.ctx(), &t)
}

struct Twist<F: Field> {
    d: Vec<Matrix<F>>,
    d_inv: Vec<Matrix<F>>,
    /// `to_top[l][i]`: `W_{l,i} -> W_{2g,i}` by powers of `t`, inverted
    /// above `2g`.
    to_top: Vec<Vec<Matrix<F>>>,
}

fn twist<F: Field>(pair: &ExtPair<F>) -> Result<Twist<F>> {
    let dq = &pair.rel.dq;
    let (w, top, levels) = (&pair.w, pair.top(), pair.w.quiver().levels());
    let mut d = Vec::new();
    let mut d_inv = Vec::new();
    for i in 0..dq.num_vertices() {
        let m = pair.vbar.eval(&pair.rel.d, i)?;
        d_inv.push(m.inverse().map_err(|_| Error::SingularD)?);
        d.push(m);
    }
    let mut to_top: Vec<Vec<Matrix<F>>> = Vec::with_capacity(levels + 1);
    for l in 0..=levels {
        let mut row = Vec::new();
        for i in 0..dq.num_vertices() {
            let mut x = Matrix::identity(w.ctx(), w.dim(i, l));
            if l <= top {
                for k in l..top {
                    x = w.tmap(i, k).mul(&x)?;
                }
            } else {
                for k in (top..l).rev() {
                    x = x.mul(&w.tmap(i, k).inverse().map_err(|_| Error::SingularD)?)?;
                }
            }
            row.push(x);
        }
        to_top.push(row);
    }
    Ok(Twist { d, d_inv, to_top })
}

fn forward<F: Field>(tw: &Twist<F>, phi: &[Matrix<F>]) -> Result<HomBlock<F>> {
    let ni = phi.len();
    let mut out = Vec::with_capacity(tw.to_top.len() * ni);
    for row in &tw.to_top {
        for i in 0..ni {
            out.push(tw.d[i].mul(&phi[i])?.mul(&row[i])?);
        }
    }
    Ok(out)
}

fn is_module_map<F: Field>(
    src: &GradedModule<F>,
    tgt: &GradedModule<F>,
    phi: &[Matrix<F>],
) -> Result<bool> {
    let tq = src.quiver();
    for a in tq.arrows() {
        if tgt.map_of(a).mul(&phi[tq.src(a)])? != phi[tq.tgt(a)].mul(src.map_of(a))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matches the kernel of the dual of `d1` with module maps `W -> tau V`:
/// `Phi*` on level `l` is `D phi* t^{2g-l}`, and `phi* = D^{-1} Phi*_{2g}`.
pub fn phi_correspondence<F: Field>(pair: &ExtPair<F>) -> Result<PhiReport> {
    let tw = twist(pair)?;
    let d1t = pair.d1()?.transpose();
    let kernel = d1t.kernel();
    let tau_v = induce(&pair.vbar, pair.w.quiver().levels(), None)?;
    let homs = graded_hom(&pair.w, &tau_v)?;
    let ni = pair.rel.dq.num_vertices();
    let top = pair.top();
    let (mut forward_in_hom, mut backward_in_kernel, mut round_trip) = (true, true, true);
    for j in 0..kernel.cols() {
        let phi = to_blocks(pair, &kernel.column(j));
        let big = forward(&tw, &phi)?;
        forward_in_hom &= is_module_map(&pair.w, &tau_v, &big)?;
        let back: Vec<Matrix<F>> = (0..ni)
            .map(|i| tw.d_inv[i].mul(&big[top * ni + i]))
            .collect::<Result<_>>()?;
        round_trip &= back == phi;
    }
    for psi in &homs {
        let phi: Vec<Matrix<F>> = (0..ni)
            .map(|i| tw.d_inv[i].mul(&psi[top * ni + i]))
            .collect::<Result<_>>()?;
        backward_in_kernel &= d1t
            .mul_vec(&to_coords(pair, &phi))?
            .iter()
            .all(|x| x.is_zero());
        round_trip &= forward(&tw, &phi)? == *psi;
    }
    Ok(PhiReport {
        dim_kernel: kernel.cols(),
        dim_hom: homs.len(),
        forward_in_hom,
        backward_in_kernel,
        round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::tests::r1_pair;
    use crate::rep::fixtures::*;
    use crate::rep::{sample_rep, SamplerConfig};
    use crate::scalar::Rational;

    #[test]
    fn r1_one_dimensional() {
        let r = phi_correspondence(&r1_pair()).unwrap();
        assert_eq!((r.dim_kernel, r.dim_hom), (1, 1));
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn higher_levels_and_distinct_pairs() {
        let q = [Rational::int(1)];
        let a = sample_rep(&two_loops(), &[2], &q, 0, &SamplerConfig::default())
            .unwrap()
            .rep;
        let b = sample_rep(&two_loops(), &[2], &q, 1, &SamplerConfig::default())
            .unwrap()
            .rep;
        let (ma, mb) = (induce(&a, 5, None).unwrap(), induce(&b, 5, None).unwrap());
        let same = phi_correspondence(&ExtPair::new(&ma, &ma, &q).unwrap()).unwrap();
        assert!(same.ok() && same.dim_hom == 1, "{same:?}");
        let diff = phi_correspondence(&ExtPair::new(&ma, &mb, &q).unwrap()).unwrap();
        assert!(diff.ok() && diff.dim_hom == 0, "{diff:?}");
    }

    #[test]
    fn zeroed_t_map_is_singular() {
        let mut w = induce(&r1(), 3, None).unwrap();
        w.set_tmap(0, 2, Matrix::zeros(&(), 2, 2)).unwrap();
        let pair = ExtPair::from_parts(r1(), w, &[Rational::int(-1)]).unwrap();
        assert!(matches!(phi_correspondence(&pair), Err(Error::SingularD)));
    }
}

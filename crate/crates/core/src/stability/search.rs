use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::pairing;
use crate::scalar::{Fp, Rational, Ring};
use alloc::rc::Rc;
use alloc::vec::Vec;

/// Vertex dimensions plus `(src, tgt, matrix)` per arrow.
#[derive(Clone, Debug)]
pub struct LinearData<R: Ring> {
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize, Matrix<R>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_total_dim: usize,
    pub max_prime: u64,
    /// Upper bound on search nodes before giving up.
    pub max_nodes: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_total_dim: 9,
            max_prime: 7,
            max_nodes: 5_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Number of subspace tuples without any pruning.
    pub candidate_tuples: u128,
    pub visited: u64,
    /// Invariant tuples reached, including 0 and the whole space.
    pub closed: u64,
}

/// An invariant subspace tuple; `basis[i]` has independent columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<R: Ring> {
    pub dims: Vec<usize>,
    pub basis: Vec<Matrix<R>>,
    pub pairing: Rational,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// A proper nonzero subrepresentation of least pairing.
    pub witness: Option<Witness<Fp>>,
    pub stats: SearchStats,
}

pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

pub fn subspace_count(n: usize, p: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).sum()
}

/// Every subspace of `F_p^m`, as `m x k` column bases in reduced echelon form.
pub fn all_subspaces(m: usize, p: u64) -> Vec<Matrix<Fp>> {
    let mut out = Vec::new();
    for k in 0..=m {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    (pv[r] + 1..m)
                        .filter(move |c| !pv.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = alloc::vec![0u64; free.len()];
            loop {
                let mut b = Matrix::zeros(&p, m, k);
                for (r, &pc) in pivots.iter().enumerate() {
                    b.set(pc, r, Fp::new(p, 1));
                }
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    b.set(c, r, Fp::new(p, d));
                }
                out.push(b);
                if !odometer(&mut digits, p) {
                    break;
                }
            }
            if !next_combination(&mut pivots, m) {
                break;
            }
        }
    }
    out
}

fn odometer(d: &mut [u64], p: u64) -> bool {
    for x in d.iter_mut() {
        *x += 1;
        if *x < p {
            return true;
        }
        *x = 0;
    }
    false
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn span_contains(basis: &Matrix<Fp>, v: &Matrix<Fp>) -> bool {
    let r = basis.rank();
    basis.hstack(v).map(|m| m.rank() == r).unwrap_or(false)
}

/// Independent columns spanning the column space of `m`.
fn column_basis(m: &Matrix<Fp>) -> Matrix<Fp> {
    let e = m.echelon();
    let cols: Vec<Vec<Fp>> = e.pivots.iter().map(|&j| m.column(j)).collect();
    Matrix::from_fn(m.ctx(), m.rows(), cols.len(), |i, j| cols[j][i])
}

/// Standard basis vectors completing `base` to a basis.
fn complement(base: &Matrix<Fp>, p: u64) -> Matrix<Fp> {
    let d = base.rows();
    let mut cur = base.clone();
    let mut picked = Vec::new();
    for i in 0..d {
        let e = Matrix::from_fn(&p, d, 1, |r, _| Fp::new(p, (r == i) as u64));
        let next = cur.hstack(&e).expect("row count");
        if next.rank() > cur.rank() {
            cur = next;
            picked.push(i);
        }
    }
    Matrix::from_fn(&p, d, picked.len(), |r, c| {
        Fp::new(p, (r == picked[c]) as u64)
    })
}

struct Searcher<'a> {
    data: &'a LinearData<Fp>,
    theta: &'a [Rational],
    p: u64,
    cfg: SearchConfig,
    quotients: Vec<Option<Rc<Vec<Matrix<Fp>>>>>,
    stats: SearchStats,
    chosen: Vec<Matrix<Fp>>,
    best: Option<Witness<Fp>>,
}

impl Searcher<'_> {
    fn subspaces_of(&mut self, m: usize) -> Rc<Vec<Matrix<Fp>>> {
        let p = self.p;
        self.quotients[m]
            .get_or_insert_with(|| Rc::new(all_subspaces(m, p)))
            .clone()
    }

    fn go(&mut self, v: usize) -> Result<()> {
        self.stats.visited += 1;
        if self.stats.visited > self.cfg.max_nodes {
            return Err(Error::TooLarge {
                what: "subspace search nodes",
                size: self.stats.visited,
                limit: self.cfg.max_nodes,
            });
        }
        let data = self.data;
        if v == data.dims.len() {
            self.leaf();
            return Ok(());
        }
        let d = data.dims[v];
        let p = self.p;
        let mut req = Matrix::zeros(&p, d, 0);
        for (s, t, x) in &data.arrows {
            if *t == v && *s < v {
                req = req.hstack(&x.mul(&self.chosen[*s])?)?;
            }
        }
        let base = column_basis(&req);
        let comp = complement(&base, p);
        let quot = self.subspaces_of(comp.cols());
        for s in quot.iter() {
            let u = base.hstack(&comp.mul(s)?)?;
            let closed = data.arrows.iter().all(|(s, t, x)| {
                if *s != v || *t > v {
                    return true;
                }
                let target = if *t == v { &u } else { &self.chosen[*t] };
                x.mul(&u)
                    .map(|img| span_contains(target, &img))
                    .unwrap_or(false)
            });
            if closed {
                self.chosen.push(u);
                let r = self.go(v + 1);
                self.chosen.pop();
                r?;
            }
        }
        Ok(())
    }

    fn leaf(&mut self) {
        self.stats.closed += 1;
        let dims: Vec<usize> = self.chosen.iter().map(|b| b.cols()).collect();
        if dims.iter().all(|&k| k == 0) || dims == self.data.dims {
            return;
        }
        let pr = pairing(self.theta, &dims);
        if self.best.as_ref().is_none_or(|b| pr < b.pairing) {
            self.best = Some(Witness {
                dims,
                basis: self.chosen.clone(),
                pairing: pr,
            });
        }
    }
}

/// Exhaustive search for the proper nonzero invariant subspace tuple of
/// least `theta`-pairing. Vertices are visited in index order; a subspace at
/// `v` is only drawn among those containing the images from earlier vertices.
pub fn destabilizer(
    data: &LinearData<Fp>,
    theta: &[Rational],
    p: u64,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if theta.len() != data.dims.len() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "theta has {} entries for {} vertices",
            theta.len(),
            data.dims.len()
        )));
    }
    let total: usize = data.dims.iter().sum();
    if total > cfg.max_total_dim {
        return Err(Error::TooLarge {
            what: "total dimension",
            size: total as u64,
            limit: cfg.max_total_dim as u64,
        });
    }
    if p > cfg.max_prime {
        return Err(Error::TooLarge {
            what: "prime",
            size: p,
            limit: cfg.max_prime,
        });
    }
    let candidate_tuples = data.dims.iter().map(|&d| subspace_count(d, p)).product();
    let mut s = Searcher {
        data,
        theta,
        p,
        cfg: *cfg,
        quotients: alloc::vec![None; data.dims.iter().copied().max().unwrap_or(0) + 1],
        stats: SearchStats {
            candidate_tuples,
            ..Default::default()
        },
        chosen: Vec::new(),
        best: None,
    };
    s.go(0)?;
    Ok(SearchResult {
        witness: s.best,
        stats: s.stats,
    })
}

/// Checks `X_h(U_{s(h)}) ⊆ U_{t(h)}` for every arrow.
pub fn is_invariant<F: crate::scalar::Field>(
    data: &LinearData<F>,
    basis: &[Matrix<F>],
) -> Result<bool> {
    for (s, t, x) in &data.arrows {
        let img = x.mul(&basis[*s])?;
        let r = basis[*t].rank();
        if basis[*t].hstack(&img)?.rank() != r {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_binomial(2, 1, 5), 6);
        assert_eq!(subspace_count(2, 5), 8);
        assert_eq!(subspace_count(4, 5), 1 + 156 + 806 + 156 + 1);
        for (m, p) in [(0, 5), (1, 3), (2, 5), (3, 3), (3, 5)] {
            let all = all_subspaces(m, p);
            assert_eq!(all.len() as u128, subspace_count(m, p));
            assert!(all.iter().all(|b| b.rank() == b.cols()));
        }
    }

    fn r1_mod5() -> LinearData<Fp> {
        let x = Matrix::from_ints(&5, &[&[0, 1], &[0, 0]]);
        let y = Matrix::from_ints(&5, &[&[0, 0], &[-2, 0]]);
        LinearData {
            dims: alloc::vec![2],
            arrows: alloc::vec![(0, 0, x), (0, 0, y)],
        }
    }

    #[test]
    fn r1_is_simple_mod_five() {
        let r = destabilizer(&r1_mod5(), &[Rational::int(0)], 5, &SearchConfig::default()).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.stats.closed, 2);
        assert_eq!(r.stats.candidate_tuples, 8);
    }

    #[test]
    fn no_arrows_visits_every_tuple() {
        let data = LinearData::<Fp> {
            dims: alloc::vec![2, 1],
            arrows: Vec::new(),
        };
        let r = destabilizer(
            &data,
            &[Rational::int(1), Rational::int(-2)],
            3,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(r.stats.closed as u128, r.stats.candidate_tuples);
        let w = r.witness.unwrap();
        assert_eq!(w.dims, alloc::vec![0, 1]);
        assert_eq!(w.pairing, Rational::int(-2));
    }

    #[test]
    fn bounds_enforced() {
        let data = LinearData::<Fp> {
            dims: alloc::vec![10],
            arrows: Vec::new(),
        };
        assert!(matches!(
            destabilizer(&data, &[Rational::int(0)], 5, &SearchConfig::default()),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            destabilizer(
                &r1_mod5(),
                &[Rational::int(0)],
                11,
                &SearchConfig::default()
            ),
            Err(Error::TooLarge { .. })
        ));
    }
}

//! King stability by exhaustive subspace search over a prime field.
//!
//! Convention: `M` is `theta`-semistable when every proper nonzero
//! subrepresentation `S` has `theta(dim S) >= 0`, and stable when the
//! inequality is strict.

mod search;

pub use search::{
    all_subspaces, destabilizer, gaussian_binomial, is_invariant, subspace_count, LinearData,
    SearchConfig, SearchResult, SearchStats, Witness,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::lift_stability;
use crate::rep::{induce, GradedModule, Representation};
use crate::scalar::{is_prime, Field, Fp, Rational, Ring};
use alloc::vec::Vec;

impl<R: Ring> LinearData<R> {
    pub fn from_rep(rep: &Representation<R>) -> Self {
        let dq = rep.quiver();
        LinearData {
            dims: rep.alpha().to_vec(),
            arrows: (0..dq.num_arrows())
                .map(|h| (dq.src(h), dq.tgt(h), rep.mat(h).clone()))
                .collect(),
        }
    }

    pub fn from_module(m: &GradedModule<R>) -> Self {
        let tq = m.quiver();
        LinearData {
            dims: m.dims().to_vec(),
            arrows: tq
                .arrows()
                .into_iter()
                .map(|a| (tq.src(a), tq.tgt(a), m.map_of(a).clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<F: Ring> {
    CertifiedStable,
    /// Semistable, with an exact subrepresentation of pairing zero.
    CertifiedSemistableOnly(Witness<F>),
    /// An exact subrepresentation of negative pairing.
    UnstableWithWitness(Witness<F>),
    /// The mod-p witness does not lift. `semistable` records whether
    /// semistability is still certified.
    Inconclusive {
        semistable: bool,
        witness: Witness<Fp>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict<F: Ring> {
    pub verdict: Verdict<F>,
    pub prime: u64,
    pub stats: SearchStats,
}

impl<F: Ring> StabilityVerdict<F> {
    pub fn is_semistable(&self) -> Option<bool> {
        match &self.verdict {
            Verdict::CertifiedStable | Verdict::CertifiedSemistableOnly(_) => Some(true),
            Verdict::UnstableWithWitness(_) => Some(false),
            Verdict::Inconclusive {
                semistable: true, ..
            } => Some(true),
            Verdict::Inconclusive { .. } => None,
        }
    }

    pub fn is_stable(&self) -> Option<bool> {
        match &self.verdict {
            Verdict::CertifiedStable => Some(true),
            Verdict::CertifiedSemistableOnly(_) | Verdict::UnstableWithWitness(_) => Some(false),
            Verdict::Inconclusive { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match &self.verdict {
            Verdict::CertifiedStable => "stable",
            Verdict::CertifiedSemistableOnly(_) => "semistable-not-stable",
            Verdict::UnstableWithWitness(_) => "unstable",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Reads a mod-p witness back with symmetric integer entries and keeps it
/// only if it is an exact invariant tuple of the same dimensions.
fn lift_witness<F: Field>(
    data: &LinearData<F>,
    w: &Witness<Fp>,
    ctx: &F::Ctx,
) -> Result<Option<Witness<F>>> {
    let basis: Vec<Matrix<F>> = w
        .basis
        .iter()
        .map(|b| b.map(ctx, |x| F::from_int(ctx, x.symmetric())))
        .collect();
    if basis.iter().zip(&w.dims).any(|(b, &k)| b.rank() != k) || !is_invariant(data, &basis)? {
        return Ok(None);
    }
    Ok(Some(Witness {
        dims: w.dims.clone(),
        basis,
        pairing: w.pairing.clone(),
    }))
}

/// Reduces mod `p` and searches. No destabilizer mod `p` certifies the
/// corresponding property over the base field, since an invariant subspace
/// over the base field saturates to one mod `p` of the same dimensions.
pub fn verdict<F: Field>(
    data: &LinearData<F>,
    ctx: &F::Ctx,
    theta: &[Rational],
    p: u64,
    cfg: &SearchConfig,
) -> Result<StabilityVerdict<F>> {
    let red = F::reduction(ctx, p)?;
    let modp = LinearData {
        dims: data.dims.clone(),
        arrows: data
            .arrows
            .iter()
            .map(|(s, t, x)| Ok((*s, *t, x.specialize(&red)?)))
            .collect::<Result<Vec<_>>>()?,
    };
    let found = destabilizer(&modp, theta, p, cfg)?;
    let zero = Rational::int(0);
    let verdict = match found.witness {
        None => Verdict::CertifiedStable,
        Some(w) if w.pairing > zero => Verdict::CertifiedStable,
        Some(w) => {
            let semistable = w.pairing == zero;
            match lift_witness(data, &w, ctx)? {
                Some(exact) if semistable => Verdict::CertifiedSemistableOnly(exact),
                Some(exact) => Verdict::UnstableWithWitness(exact),
                None => Verdict::Inconclusive {
                    semistable,
                    witness: w,
                },
            }
        }
    };
    Ok(StabilityVerdict {
        verdict,
        prime: p,
        stats: found.stats,
    })
}

/// First prime `p >= from`, up to `cfg.max_prime`, at which every arrow of
/// `data` reduces.
pub fn usable_prime<F: Field>(
    data: &LinearData<F>,
    ctx: &F::Ctx,
    from: u64,
    cfg: &SearchConfig,
) -> Result<u64> {
    let mut last = Error::BadPrime {
        p: from,
        reason: "above the search limit",
    };
    for p in (from.max(2)..=cfg.max_prime).filter(|&p| is_prime(p)) {
        let ok = F::reduction(ctx, p).and_then(|red| {
            data.arrows
                .iter()
                .try_for_each(|(_, _, x)| x.specialize(&red).map(|_| ()))
        });
        match ok {
            Ok(()) => return Ok(p),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[derive(Clone, Debug)]
pub struct IndCompat<F: Ring> {
    pub base: StabilityVerdict<F>,
    pub induced: StabilityVerdict<F>,
    pub theta_gtr: Vec<Rational>,
    pub agree: bool,
}

/// Compares the verdict for `rep` under `theta` with the verdict for its
/// induced graded module under the lifted stability vector.
pub fn ind_compat_report<F: Field>(
    rep: &Representation<F>,
    theta: &[Rational],
    n: usize,
    t: Option<Rational>,
    p: u64,
    cfg: &SearchConfig,
) -> Result<IndCompat<F>> {
    let theta_gtr = lift_stability(theta, rep.alpha(), n, t)?;
    let base = verdict(&LinearData::from_rep(rep), rep.ctx(), theta, p, cfg)?;
    let module = induce(rep, n, None)?;
    let induced = verdict(
        &LinearData::from_module(&module),
        rep.ctx(),
        &theta_gtr,
        p,
        cfg,
    )?;
    let agree = base.is_semistable().is_some()
        && base.is_stable() == induced.is_stable()
        && base.is_semistable() == induced.is_semistable();
    Ok(IndCompat {
        base,
        induced,
        theta_gtr,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::fixtures::*;

    fn big() -> SearchConfig {
        SearchConfig {
            max_total_dim: 12,
            ..Default::default()
        }
    }

    #[test]
    fn r1_certified_stable() {
        let v = verdict(
            &LinearData::from_rep(&r1()),
            &(),
            &[Rational::int(0)],
            5,
            &big(),
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::CertifiedStable);
    }

    #[test]
    fn r1_sum_semistable_with_exact_diagonal() {
        let r = r1().direct_sum(&r1()).unwrap();
        let data = LinearData::from_rep(&r);
        let v = verdict(&data, &(), &[Rational::int(0)], 5, &big()).unwrap();
        let Verdict::CertifiedSemistableOnly(w) = &v.verdict else {
            panic!("{v:?}")
        };
        assert_eq!(w.dims, alloc::vec![2]);
        assert!(is_invariant(&data, &w.basis).unwrap());
    }

    #[test]
    fn two_vertex_stable() {
        let theta = [Rational::int(1), Rational::int(-1)];
        let v = verdict(
            &LinearData::from_rep(&two_vertex_rep()),
            &(),
            &theta,
            5,
            &big(),
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::CertifiedStable);
    }

    #[test]
    fn invariant_line_is_unstable() {
        // X_a = 0 leaves the first coordinate line invariant; theta makes it negative.
        let m = |x: i64| Matrix::<Rational>::from_ints(&(), &[&[x]]);
        let r = Representation::new(&two_vertex(), &[1, 1], alloc::vec![m(0), m(1)], &()).unwrap();
        let theta = [Rational::int(-1), Rational::int(1)];
        let v = verdict(&LinearData::from_rep(&r), &(), &theta, 5, &big()).unwrap();
        let Verdict::UnstableWithWitness(w) = &v.verdict else {
            panic!("{v:?}")
        };
        assert_eq!(w.dims, alloc::vec![1, 0]);
        assert_eq!(v.is_semistable(), Some(false));
    }

    #[test]
    fn prime_skips_denominators() {
        let m = Matrix::<Rational>::from_rows(&(), alloc::vec![alloc::vec![Rational::new(1, 5)]])
            .unwrap();
        let data = LinearData {
            dims: alloc::vec![1],
            arrows: alloc::vec![(0, 0, m)],
        };
        let cfg = SearchConfig::default();
        assert_eq!(usable_prime(&data, &(), 5, &cfg).unwrap(), 7);
        assert_eq!(usable_prime(&data, &(), 2, &cfg).unwrap(), 2);
        let cfg = SearchConfig {
            max_prime: 5,
            ..cfg
        };
        assert!(matches!(
            usable_prime(&data, &(), 5, &cfg),
            Err(Error::BadPrime { .. })
        ));
    }

    #[test]
    fn induction_compatible() {
        let cases: Vec<(Representation<Rational>, Vec<Rational>)> = alloc::vec![
            (r1(), alloc::vec![Rational::int(0)]),
            (
                r1().direct_sum(&r1()).unwrap(),
                alloc::vec![Rational::int(0)]
            ),
            (
                two_vertex_rep(),
                alloc::vec![Rational::int(1), Rational::int(-1)]
            ),
        ];
        let cfg = SearchConfig {
            max_total_dim: 12,
            ..Default::default()
        };
        for (r, theta) in cases {
            let c = ind_compat_report(&r, &theta, 2, None, 5, &cfg).unwrap();
            assert!(c.agree, "{} vs {}", c.base.label(), c.induced.label());
        }
    }
}

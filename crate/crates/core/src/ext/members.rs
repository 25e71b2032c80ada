use super::{add_sandwich, ExtPair, Layout};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::ncpath::{BimodElem, PathPoly, Slot};
use crate::scalar::Field;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCheck {
    pub name: String,
    pub tested: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub checks: Vec<MembershipCheck>,
}

impl MembershipReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn record(&mut self, name: &str, pass: bool) {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                c.tested += 1;
                c.pass &= pass;
            }
            None => self.checks.push(MembershipCheck {
                name: name.into(),
                tested: 1,
                pass,
            }),
        }
    }
}

/// Evaluates `m * elem` for every seed `m: V_w -> W_{0,u}` (one input block
/// per pair `(u, w)` of term endpoints), shifted by powers of `t` so each
/// term lands in `L(2g)`.
fn dual_map<F: Field>(pair: &ExtPair<F>, elem: &BimodElem<F>) -> Result<Matrix<F>> {
    let ev = pair.evaluator();
    let output = pair.layout_l(pair.top());
    let mut seeds: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (term, _) in elem.terms() {
        let n = seeds.len();
        seeds.entry((term.left.start, term.right.end)).or_insert(n);
    }
    let mut keys: Vec<_> = seeds.iter().map(|(&k, &v)| (v, k)).collect();
    keys.sort();
    let input = Layout::new(
        keys.iter()
            .map(|&(_, (u, w))| (pair.w.dim(u, 0), pair.vbar.alpha()[w]))
            .collect(),
    );
    let mut out = Matrix::zeros(pair.ctx(), output.dim, input.dim);
    for (term, c) in elem.terms() {
        let Slot::VertexDual(i) = term.slot else {
            continue;
        };
        let j = seeds[&(term.left.start, term.right.end)];
        let extra = pair.top() as i64 - term.degree();
        let (a, b) = ev.dual(term, c, 0, extra)?;
        add_sandwich(&mut out, output.offsets[i], input.offsets[j], &a, &b);
    }
    Ok(out)
}

fn in_image<F: Field>(d1: &Matrix<F>, rank: usize, m: &Matrix<F>) -> Result<bool> {
    Ok(m.cols() == 0 || d1.hstack(m)?.rank() == rank)
}

/// Checks that the commutator and intertwiner families built from `D`
/// evaluate into the image of `d1`, and verifies the `alpha^dual` identities
/// and the commuting rule for `G_h` away from `s(h)` as evaluated equalities.
pub fn verify_bimodule_memberships<F: Field>(pair: &ExtPair<F>) -> Result<MembershipReport> {
    let rel = &pair.rel;
    let dq = &rel.dq;
    let ctx = pair.ctx().clone();
    let d1 = pair.d1()?;
    let rank = d1.rank();
    let tinv2 = |p: &PathPoly<F>| p.shift_t(-2);
    let dual = |i: usize| Slot::VertexDual(i);
    let e = |i: usize| PathPoly::idempotent(&ctx, i);
    let tensor = BimodElem::tensor;
    let d = &rel.d;
    let mut report = MembershipReport { checks: Vec::new() };

    for i in 0..dq.num_vertices() {
        for j in 0..dq.g() {
            for (name, g) in [
                ("g_commutators", &rel.g[2 * j]),
                ("g_star_commutators", &rel.g[2 * j + 1]),
            ] {
                let elem = tensor(&g.mul(d).right_idem(i), dual(i), &e(i)).sub(&tensor(
                    &d.right_idem(i),
                    dual(i),
                    &g.left_idem(i),
                ));
                report.record(name, in_image(&d1, rank, &dual_map(pair, &elem)?)?);
            }
        }
    }
    for j in 0..dq.g() {
        let (a, s) = (2 * j, 2 * j + 1);
        let (sa, ta) = (dq.src(a), dq.tgt(a));
        let (pa, ps) = (PathPoly::arrow(&ctx, dq, a), PathPoly::arrow(&ctx, dq, s));
        let dt = tinv2(d);
        let f3 =
            tensor(&ps.mul(&dt), dual(sa), &e(sa)).sub(&tensor(&dt.right_idem(ta), dual(ta), &ps));
        report.record(
            "a_star_intertwiners",
            in_image(&d1, rank, &dual_map(pair, &f3)?)?,
        );
        let f4 =
            tensor(&pa.mul(&dt), dual(ta), &e(ta)).sub(&tensor(&dt.right_idem(sa), dual(sa), &pa));
        report.record(
            "a_intertwiners",
            in_image(&d1, rank, &dual_map(pair, &f4)?)?,
        );

        let ad = &pair.diffs.alpha_dual;
        let qt = rel.q[ta].clone();
        let x1 = tensor(
            &rel.r[s].right_idem(ta).scale(&qt),
            dual(ta),
            &rel.l[s].left_idem(ta),
        );
        let lhs1 = ad[a].right_mul(&pa).sub(&ad[s].left_mul(&ps));
        let rhs1 = x1.left_mul(&rel.g[s]).sub(&x1.right_mul(&rel.g[s]));
        report.record(
            "alpha_dual_identity_star",
            dual_map(pair, &lhs1.sub(&rhs1))?.is_zero(),
        );
        let x2 = tensor(&rel.r[a].right_idem(sa), dual(sa), &rel.l[a].left_idem(sa));
        let lhs2 = ad[a].left_mul(&pa).sub(&ad[s].right_mul(&ps));
        let rhs2 = x2.left_mul(&rel.g[a]).sub(&x2.right_mul(&rel.g[a]));
        report.record(
            "alpha_dual_identity",
            dual_map(pair, &lhs2.sub(&rhs2))?.is_zero(),
        );
    }
    for h in 0..dq.num_arrows() {
        for i in (0..dq.num_vertices()).filter(|&i| i != dq.src(h)) {
            let g = &rel.g[h];
            let elem = tensor(&g.mul(d).right_idem(i), dual(i), &e(i)).sub(&tensor(
                &d.right_idem(i),
                dual(i),
                &g.left_idem(i),
            ));
            report.record(
                "g_commutes_away_from_source",
                dual_map(pair, &elem)?.is_zero(),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::tests::r1_pair;
    use crate::rep::fixtures::*;
    use crate::rep::{induce, sample_rep, SamplerConfig};
    use crate::scalar::Rational;

    #[test]
    fn r1_memberships() {
        let r = verify_bimodule_memberships(&r1_pair()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "g_commutators" && c.tested == 1));
    }

    #[test]
    fn sampled_two_loops() {
        let q = [Rational::int(1)];
        let a = sample_rep(&two_loops(), &[2], &q, 4, &SamplerConfig::default())
            .unwrap()
            .rep;
        let b = sample_rep(&two_loops(), &[2], &q, 5, &SamplerConfig::default())
            .unwrap()
            .rep;
        let (ma, mb) = (induce(&a, 4, None).unwrap(), induce(&b, 4, None).unwrap());
        let r = verify_bimodule_memberships(&ExtPair::new(&ma, &mb, &q).unwrap()).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn two_vertex_memberships() {
        let q = [Rational::int(-1), Rational::int(-1)];
        let m = induce(&two_vertex_rep(), 2, None).unwrap();
        let r = verify_bimodule_memberships(&ExtPair::new(&m, &m, &q).unwrap()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "g_commutes_away_from_source"));
    }

    #[test]
    fn controls_detect_failures() {
        let pair = r1_pair();
        let d1 = pair.d1().unwrap();
        let rank = d1.rank();
        let ctx = ();
        let plain = BimodElem::tensor(
            &pair.rel.d.shift_t(-2),
            Slot::VertexDual(0),
            &PathPoly::idempotent(&ctx, 0),
        );
        assert!(!in_image(&d1, rank, &dual_map(&pair, &plain).unwrap()).unwrap());
        let rel = &pair.rel;
        let x = BimodElem::tensor(&rel.r[1], Slot::VertexDual(0), &rel.l[1]);
        let unscaled = x.left_mul(&rel.g[1]).sub(&x.right_mul(&rel.g[1]));
        let pa = PathPoly::arrow(&ctx, &rel.dq, 0);
        let ps = PathPoly::arrow(&ctx, &rel.dq, 1);
        let ad = &pair.diffs.alpha_dual;
        let lhs = ad[0].right_mul(&pa).sub(&ad[1].left_mul(&ps));
        assert!(!dual_map(&pair, &lhs.sub(&unscaled)).unwrap().is_zero());
    }
}

use super::poly::{Monomial, PathPoly};
use crate::quiver::DoubledQuiver;
use crate::scalar::Ring;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Free generator of a term `x (slot) y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// `eta_h`, for `h` in the doubled arrow set.
    Arrow(usize),
    /// `eta_i`.
    Vertex(usize),
    /// `eta_i^dual`.
    VertexDual(usize),
}

impl Slot {
    /// Vertex where the left factor must end and where the right factor
    /// must start.
    pub fn ends(&self, dq: &DoubledQuiver) -> (usize, usize) {
        match *self {
            Slot::Arrow(h) => (dq.src(h), dq.tgt(h)),
            Slot::Vertex(i) | Slot::VertexDual(i) => (i, i),
        }
    }
}

/// A basis term. `t` is central over the base, so its power is kept on the
/// left factor and `right.tpow` is always zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BimodTerm {
    pub left: Monomial,
    pub slot: Slot,
    pub right: Monomial,
}

impl BimodTerm {
    pub fn new(left: Monomial, slot: Slot, right: Monomial) -> Self {
        let tpow = left.tpow + right.tpow;
        BimodTerm {
            left: left.with_tpow(tpow),
            slot,
            right: right.with_tpow(0),
        }
    }

    pub fn is_compatible(&self, dq: &DoubledQuiver) -> bool {
        let (l, r) = self.slot.ends(dq);
        self.left.end == l && self.right.start == r
    }

    pub fn degree(&self) -> i64 {
        self.left.degree() + self.right.degree()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BimodElem<R: Ring> {
    ctx: R::Ctx,
    terms: BTreeMap<BimodTerm, R>,
}

impl<R: Ring> BimodElem<R> {
    pub fn zero(ctx: &R::Ctx) -> Self {
        BimodElem {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `x (slot) y` for path polynomials `x`, `y`.
    pub fn tensor(x: &PathPoly<R>, slot: Slot, y: &PathPoly<R>) -> Self {
        let mut b = Self::zero(x.ctx());
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                b.add_term(BimodTerm::new(m1.clone(), slot, m2.clone()), c1.mul(c2));
            }
        }
        b
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BimodTerm, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: BimodTerm, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut b = self.clone();
        for (t, c) in &o.terms {
            b.add_term(t.clone(), c.clone());
        }
        b
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&R::one(&self.ctx).neg()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut b = Self::zero(&self.ctx);
        for (t, x) in &self.terms {
            b.add_term(t.clone(), c.mul(x));
        }
        b
    }

    /// `p * self`.
    pub fn left_mul(&self, p: &PathPoly<R>) -> Self {
        let mut b = Self::zero(&self.ctx);
        for (m, c) in p.terms() {
            for (t, x) in &self.terms {
                if let Some(l) = m.compose(&t.left) {
                    b.add_term(BimodTerm::new(l, t.slot, t.right.clone()), c.mul(x));
                }
            }
        }
        b
    }

    /// `self * p`.
    pub fn right_mul(&self, p: &PathPoly<R>) -> Self {
        let mut b = Self::zero(&self.ctx);
        for (t, x) in &self.terms {
            for (m, c) in p.terms() {
                if let Some(r) = t.right.compose(m) {
                    b.add_term(BimodTerm::new(t.left.clone(), t.slot, r), x.mul(c));
                }
            }
        }
        b
    }

    /// Terms whose left factor starts at `i`.
    pub fn left_idem(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| t.left.start == i)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        BimodElem {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn slots_compatible(&self, dq: &DoubledQuiver) -> bool {
        self.terms.keys().all(|t| t.is_compatible(dq))
    }

    pub fn slots(&self) -> Vec<Slot> {
        let mut s: Vec<Slot> = self.terms.keys().map(|t| t.slot).collect();
        s.sort();
        s.dedup();
        s
    }
}

/// The universal derivation: `h_1...h_k t^d` maps to
/// `sum_j h_1..h_{j-1} t^d (eta_{h_j}) h_{j+1}..h_k`.
pub fn derive<R: Ring>(dq: &DoubledQuiver, p: &PathPoly<R>) -> BimodElem<R> {
    let mut b = BimodElem::zero(p.ctx());
    for (m, c) in p.terms() {
        for (j, &h) in m.word.iter().enumerate() {
            let left =
                Monomial::from_word(dq, m.start, &m.word[..j], m.tpow).expect("prefix of a path");
            let right =
                Monomial::from_word(dq, dq.tgt(h), &m.word[j + 1..], 0).expect("suffix of a path");
            b.add_term(BimodTerm::new(left, Slot::Arrow(h), right), c.clone());
        }
    }
    b
}

use crate::error::{Error, Result};
use crate::quiver::DoubledQuiver;
use crate::scalar::Ring;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

/// A path `e_start h_1 ... h_k e_end` times `t^tpow`, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub start: usize,
    pub end: usize,
    pub word: Vec<usize>,
    pub tpow: i32,
}

impl Monomial {
    pub fn idempotent(i: usize) -> Self {
        Monomial {
            start: i,
            end: i,
            word: Vec::new(),
            tpow: 0,
        }
    }

    pub fn arrow(dq: &DoubledQuiver, h: usize) -> Self {
        Monomial {
            start: dq.src(h),
            end: dq.tgt(h),
            word: alloc::vec![h],
            tpow: 0,
        }
    }

    pub fn from_word(dq: &DoubledQuiver, start: usize, word: &[usize], tpow: i32) -> Option<Self> {
        let mut end = start;
        for &h in word {
            if dq.src(h) != end {
                return None;
            }
            end = dq.tgt(h);
        }
        Some(Monomial {
            start,
            end,
            word: word.to_vec(),
            tpow,
        })
    }

    pub fn degree(&self) -> i64 {
        self.word.len() as i64 + self.tpow as i64
    }

    pub fn compose(&self, o: &Self) -> Option<Self> {
        (self.end == o.start).then(|| {
            let mut word = self.word.clone();
            word.extend_from_slice(&o.word);
            Monomial {
                start: self.start,
                end: o.end,
                word,
                tpow: self.tpow + o.tpow,
            }
        })
    }

    pub fn with_tpow(&self, tpow: i32) -> Self {
        Monomial {
            tpow,
            ..self.clone()
        }
    }

    pub fn render(&self, dq: &DoubledQuiver) -> String {
        let mut parts: Vec<String> = self
            .word
            .iter()
            .map(|&h| dq.arrow(h).name.clone())
            .collect();
        if parts.is_empty() {
            parts.push(alloc::format!("e({})", dq.vertex_name(self.start)));
        }
        match self.tpow {
            0 => {}
            1 => parts.push("t".into()),
            d => parts.push(alloc::format!("t^{d}")),
        }
        parts.join(" * ")
    }
}

/// Element of the path algebra of the double with a central variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathPoly<R: Ring> {
    ctx: R::Ctx,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> PathPoly<R> {
    pub fn zero(ctx: &R::Ctx) -> Self {
        PathPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ctx: &R::Ctx, m: Monomial, c: R) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn idempotent(ctx: &R::Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::idempotent(i), R::one(ctx))
    }

    /// `sum_i e_i`.
    pub fn one(ctx: &R::Ctx, dq: &DoubledQuiver) -> Self {
        Self::t_pow(ctx, dq, 0)
    }

    /// `t^d = sum_i e_i t^d`.
    pub fn t_pow(ctx: &R::Ctx, dq: &DoubledQuiver, d: i32) -> Self {
        let mut p = Self::zero(ctx);
        for i in 0..dq.num_vertices() {
            p.add_term(Monomial::idempotent(i).with_tpow(d), R::one(ctx));
        }
        p
    }

    /// `sum_i c_i e_i`.
    pub fn vertex_scalars(ctx: &R::Ctx, c: &[R]) -> Self {
        let mut p = Self::zero(ctx);
        for (i, x) in c.iter().enumerate() {
            p.add_term(Monomial::idempotent(i), x.clone());
        }
        p
    }

    pub fn arrow(ctx: &R::Ctx, dq: &DoubledQuiver, h: usize) -> Self {
        Self::monomial(ctx, Monomial::arrow(dq, h), R::one(ctx))
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&R::one(&self.ctx).neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (m, x) in &self.terms {
            p.add_term(m.clone(), c.mul(x));
        }
        p
    }

    /// Product in the path algebra; incompatible paths multiply to zero.
    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some(m) = m1.compose(m2) {
                    p.add_term(m, c1.mul(c2));
                }
            }
        }
        p
    }

    /// Like `mul`, but a non-composable pair of genuine arrow words is an
    /// error rather than zero.
    pub fn checked_mul(&self, o: &Self, pos: usize) -> Result<Self> {
        for m1 in self.terms.keys() {
            for m2 in o.terms.keys() {
                if !m1.word.is_empty() && !m2.word.is_empty() && m1.end != m2.start {
                    return Err(Error::NonComposable { pos });
                }
            }
        }
        Ok(self.mul(o))
    }

    pub fn shift_t(&self, d: i32) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            p.add_term(m.with_tpow(m.tpow + d), c.clone());
        }
        p
    }

    /// `e_i p`.
    pub fn left_idem(&self, i: usize) -> Self {
        self.filter(|m| m.start == i)
    }

    /// `p e_i`.
    pub fn right_idem(&self, i: usize) -> Self {
        self.filter(|m| m.end == i)
    }

    fn filter(&self, f: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| f(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        PathPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Degree when every term has the same degree; `None` for mixed degrees.
    /// The zero polynomial has no degree.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn render(&self, dq: &DoubledQuiver, fmt_coeff: impl Fn(&R) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "({}) * {}", fmt_coeff(c), m.render(dq));
        }
        s
    }
}

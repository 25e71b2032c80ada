//! Exact scalar fields.
//!
//! Every scalar carries enough context to rebuild its field, so matrices and
//! path algebras can be created without a separate field handle.

mod cyclotomic;
mod dual;
mod fp;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_root, CycCtx, Cyclotomic};
pub use dual::Dual;
pub use fp::Fp;
pub use rational::Rational;

use crate::error::{Error, Result};
use alloc::string::String;
use core::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug {
    type Ctx: Clone + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// `None` when `d` is not invertible.
    fn from_ratio(ctx: &Self::Ctx, n: i64, d: i64) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A reduction map to `F_p`: `zeta` is the image of the primitive root of
/// unity for cyclotomic fields and is ignored otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub p: u64,
    pub zeta: u64,
}

pub trait Field: Ring {
    fn reduction(ctx: &Self::Ctx, p: u64) -> Result<Reduction>;
    fn reduce(&self, r: &Reduction) -> Result<Fp>;
}

/// Canonical text form, stable across runs.
pub trait Canonical: Ring {
    fn canonical(&self) -> String;
    fn parse_canonical(s: &str) -> Result<Self>;
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_err(msg: &str, input: &str) -> Error {
    Error::Parse {
        pos: 0,
        msg: alloc::format!("{msg}: {input:?}"),
    }
}

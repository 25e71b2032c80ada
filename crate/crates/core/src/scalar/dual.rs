use super::Ring;

/// `a + b eps` with `eps^2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<R: Ring> {
    pub re: R,
    pub eps: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }

    pub fn real(re: R) -> Self {
        let eps = R::zero(&re.ctx());
        Dual { re, eps }
    }
}

impl<R: Ring> Ring for Dual<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.re.ctx()
    }
    fn zero(ctx: &R::Ctx) -> Self {
        Dual {
            re: R::zero(ctx),
            eps: R::zero(ctx),
        }
    }
    fn one(ctx: &R::Ctx) -> Self {
        Dual {
            re: R::one(ctx),
            eps: R::zero(ctx),
        }
    }
    fn from_int(ctx: &R::Ctx, n: i64) -> Self {
        Dual {
            re: R::from_int(ctx, n),
            eps: R::zero(ctx),
        }
    }
    fn from_ratio(ctx: &R::Ctx, n: i64, d: i64) -> Option<Self> {
        Some(Dual {
            re: R::from_ratio(ctx, n, d)?,
            eps: R::zero(ctx),
        })
    }
    fn add(&self, rhs: &Self) -> Self {
        Dual {
            re: self.re.add(&rhs.re),
            eps: self.eps.add(&rhs.eps),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Dual {
            re: self.re.sub(&rhs.re),
            eps: self.eps.sub(&rhs.eps),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Dual {
            re: self.re.mul(&rhs.re),
            eps: self.re.mul(&rhs.eps).add(&self.eps.mul(&rhs.re)),
        }
    }
    fn neg(&self) -> Self {
        Dual {
            re: self.re.neg(),
            eps: self.eps.neg(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let a = self.re.inv()?;
        let eps = a.mul(&a).mul(&self.eps).neg();
        Some(Dual { re: a, eps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn eps_squares_to_zero() {
        let e = Dual::new(Rational::int(0), Rational::int(1));
        assert!(e.mul(&e).is_zero());
        assert!(e.inv().is_none());
        let x = Dual::new(Rational::int(2), Rational::int(3));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }
}

use super::{parse_err, Canonical, Field, Fp, Reduction, Ring};
use crate::error::{Error, Result};
use alloc::string::String;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn ceil(&self) -> Self {
        Rational(self.0.ceil())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Fp> {
        let pb = BigInt::from(p);
        let d = self.0.denom().mod_floor(&pb);
        if d.is_zero() {
            return Err(Error::BadPrime {
                p,
                reason: "divides a denominator",
            });
        }
        let n = self.0.numer().mod_floor(&pb);
        let n = Fp::new(p, n.to_u64().unwrap_or(0));
        let d = Fp::new(p, d.to_u64().unwrap_or(0));
        Ok(n.mul(&d.inv().ok_or(Error::Singular)?))
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn from_int(_: &(), n: i64) -> Self {
        Rational::int(n)
    }
    fn from_ratio(_: &(), n: i64, d: i64) -> Option<Self> {
        (d != 0).then(|| Rational::new(n, d))
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
}

impl Field for Rational {
    fn reduction(_: &(), p: u64) -> Result<Reduction> {
        if !super::is_prime(p) {
            return Err(Error::BadPrime {
                p,
                reason: "not prime",
            });
        }
        Ok(Reduction { p, zeta: 1 })
    }

    fn reduce(&self, r: &Reduction) -> Result<Fp> {
        self.reduce_mod(r.p)
    }
}

impl Canonical for Rational {
    fn canonical(&self) -> String {
        alloc::format!("{}/{}", self.0.numer(), self.0.denom())
    }

    fn parse_canonical(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| parse_err("bad numerator", s))?;
        let d: BigInt = d.parse().map_err(|_| parse_err("bad denominator", s))?;
        if d.is_zero() {
            return Err(parse_err("zero denominator", s));
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl core::fmt::Display for Rational {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_keeps_denominator() {
        assert_eq!(Rational::int(-2).canonical(), "-2/1");
        assert_eq!(Rational::new(2, -4).canonical(), "-1/2");
        assert_eq!(
            Rational::parse_canonical("-6/4").unwrap(),
            Rational::new(-3, 2)
        );
        assert!(Rational::parse_canonical("1/0").is_err());
    }

    #[test]
    fn half_mod_five_is_three() {
        let r = Rational::new(1, 2).reduce_mod(5).unwrap();
        assert_eq!(r.value(), 3);
        assert!(Rational::new(1, 5).reduce_mod(5).is_err());
    }
}

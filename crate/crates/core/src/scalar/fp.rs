use super::{parse_err, Canonical, Field, Reduction, Ring};
use crate::error::{Error, Result};
use alloc::string::String;

/// Residue modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u64,
    r: u64,
}

impl Fp {
    pub fn new(p: u64, r: u64) -> Self {
        Fp { p, r: r % p }
    }

    pub fn from_i64(p: u64, n: i64) -> Self {
        Fp {
            p,
            r: n.rem_euclid(p as i64) as u64,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.r
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        let r = self.r as i64;
        if 2 * r > self.p as i64 {
            r - self.p as i64
        } else {
            r
        }
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { p: *p, r: 0 }
    }
    fn one(p: &u64) -> Self {
        Fp::new(*p, 1)
    }
    fn from_int(p: &u64, n: i64) -> Self {
        Fp::from_i64(*p, n)
    }
    fn from_ratio(p: &u64, n: i64, d: i64) -> Option<Self> {
        let d = Fp::from_i64(*p, d).inv()?;
        Some(Fp::from_i64(*p, n).mul(&d))
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp {
            p: self.p,
            r: (self.r + rhs.r) % self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp {
            p: self.p,
            r: (self.r + self.p - rhs.r) % self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp {
            p: self.p,
            r: (self.r * rhs.r) % self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            p: self.p,
            r: (self.p - self.r) % self.p,
        }
    }
    fn is_zero(&self) -> bool {
        self.r == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.r != 0).then(|| self.pow(self.p - 2))
    }
}

impl Field for Fp {
    fn reduction(ctx: &u64, p: u64) -> Result<Reduction> {
        if *ctx != p {
            return Err(Error::BadPrime {
                p,
                reason: "differs from the field characteristic",
            });
        }
        Ok(Reduction { p, zeta: 1 })
    }

    fn reduce(&self, r: &Reduction) -> Result<Fp> {
        if r.p != self.p {
            return Err(Error::FieldMismatch);
        }
        Ok(*self)
    }
}

impl Canonical for Fp {
    fn canonical(&self) -> String {
        alloc::format!("{}:{}", self.p, self.r)
    }

    fn parse_canonical(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, r) = s
            .split_once(':')
            .ok_or_else(|| parse_err("expected p:r", s))?;
        let p: u64 = p.trim().parse().map_err(|_| parse_err("bad modulus", s))?;
        let r: i64 = r.trim().parse().map_err(|_| parse_err("bad residue", s))?;
        if !super::is_prime(p) || p >= 1 << 31 {
            return Err(Error::BadPrime {
                p,
                reason: "not a supported prime",
            });
        }
        Ok(Fp::from_i64(p, r))
    }
}

/// Smallest primitive `m`-th root of unity mod `p`.
pub(crate) fn primitive_root_of_unity(p: u64, m: u64) -> Option<u64> {
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return None;
    }
    let divisors: alloc::vec::Vec<u64> = (1..m).filter(|d| m.is_multiple_of(*d)).collect();
    (1..p).find(|&x| {
        let x = Fp::new(p, x);
        x.pow(m).is_one() && divisors.iter().all(|&d| !x.pow(d).is_one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_seven() {
        let a = Fp::new(7, 3);
        assert_eq!(a.inv().unwrap().value(), 5);
        assert_eq!(a.neg().value(), 4);
        assert_eq!(Fp::from_i64(7, -1).symmetric(), -1);
        assert!(Fp::zero(&7).inv().is_none());
    }

    #[test]
    fn canonical_round_trip() {
        let a = Fp::new(5, 3);
        assert_eq!(a.canonical(), "5:3");
        assert_eq!(Fp::parse_canonical("5:-2").unwrap(), a);
        assert!(Fp::parse_canonical("6:1").is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(primitive_root_of_unity(7, 3), Some(2));
        assert_eq!(primitive_root_of_unity(5, 3), None);
        assert_eq!(primitive_root_of_unity(5, 2), Some(4));
    }
}

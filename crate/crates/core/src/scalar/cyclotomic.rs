use super::fp::primitive_root_of_unity;
use super::{parse_err, Canonical, Field, Fp, Rational, Reduction, Ring};
use crate::error::{Error, Result};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug)]
pub struct CycField {
    m: u64,
    /// Monic minimal polynomial, lowest coefficient first.
    phi: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct CycCtx(Arc<CycField>);

impl PartialEq for CycCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.m == other.0.m
    }
}

impl CycCtx {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 || m > 1000 {
            return Err(Error::UnsupportedShape(alloc::format!(
                "cyclotomic order {m}"
            )));
        }
        Ok(CycCtx(Arc::new(CycField {
            m,
            phi: cyclotomic_polynomial(m),
        })))
    }

    pub fn order(&self) -> u64 {
        self.0.m
    }

    pub fn degree(&self) -> usize {
        self.0.phi.len() - 1
    }
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // x^m - 1 divided by every proper-divisor cyclotomic factor.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    ctx: CycCtx,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl Cyclotomic {
    pub fn from_coeffs(ctx: &CycCtx, coeffs: &[Rational]) -> Self {
        let mut full: Vec<BigRational> = coeffs.iter().map(|c| c.0.clone()).collect();
        if full.len() < ctx.degree() {
            full.resize(ctx.degree(), BigRational::zero());
        }
        reduce(ctx, full)
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().cloned().map(Rational).collect()
    }

    pub fn field(&self) -> &CycCtx {
        &self.ctx
    }
}

fn reduce(ctx: &CycCtx, mut c: Vec<BigRational>) -> Cyclotomic {
    let phi = &ctx.0.phi;
    let deg = phi.len() - 1;
    for k in (deg..c.len()).rev() {
        let top = core::mem::take(&mut c[k]);
        if top.is_zero() {
            continue;
        }
        for j in 0..deg {
            let pj = BigRational::from_integer(BigInt::from(phi[j]));
            c[k - deg + j] -= &top * pj;
        }
    }
    c.truncate(deg);
    c.resize(deg, BigRational::zero());
    Cyclotomic {
        ctx: ctx.clone(),
        coeffs: c,
    }
}

/// `zeta_m^k`.
pub fn cyclotomic_root(ctx: &CycCtx, k: i64) -> Cyclotomic {
    let m = ctx.order() as i64;
    let e = k.rem_euclid(m) as usize;
    let mut c = vec![BigRational::zero(); e.max(ctx.degree() - 1) + 1];
    c[e] = BigRational::one();
    reduce(ctx, c)
}

impl Ring for Cyclotomic {
    type Ctx = CycCtx;

    fn ctx(&self) -> CycCtx {
        self.ctx.clone()
    }
    fn zero(ctx: &CycCtx) -> Self {
        Cyclotomic {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }
    fn one(ctx: &CycCtx) -> Self {
        Self::from_int(ctx, 1)
    }
    fn from_int(ctx: &CycCtx, n: i64) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigRational::from_integer(BigInt::from(n));
        z
    }
    fn from_ratio(ctx: &CycCtx, n: i64, d: i64) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigRational::new(BigInt::from(n), BigInt::from(d));
        Some(z)
    }
    fn add(&self, rhs: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len();
        let mut c = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        reduce(&self.ctx, c)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Solve self * y = 1 through the multiplication matrix.
        let n = self.coeffs.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let xj = cyclotomic_root(&self.ctx, j as i64);
            cols.push(self.mul(&xj).coeffs);
        }
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for k in col..=n {
                        let v = &aug[col][k] * &f;
                        aug[r][k] -= v;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|row| row[n].clone()).collect();
        Some(Cyclotomic {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }
}

impl Field for Cyclotomic {
    fn reduction(ctx: &CycCtx, p: u64) -> Result<Reduction> {
        if !super::is_prime(p) || p == 2 {
            return Err(Error::BadPrime {
                p,
                reason: "not an odd prime",
            });
        }
        let m = ctx.order();
        let zeta = primitive_root_of_unity(p, m).ok_or(Error::BadPrime {
            p,
            reason: "p is not 1 mod the cyclotomic order",
        })?;
        Ok(Reduction { p, zeta })
    }

    fn reduce(&self, r: &Reduction) -> Result<Fp> {
        let z = Fp::new(r.p, r.zeta);
        let mut acc = Fp::zero(&r.p);
        let mut zk = Fp::one(&r.p);
        for c in &self.coeffs {
            acc = acc.add(&Rational(c.clone()).reduce_mod(r.p)?.mul(&zk));
            zk = zk.mul(&z);
        }
        Ok(acc)
    }
}

impl Canonical for Cyclotomic {
    fn canonical(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| Rational(c.clone()).canonical())
            .collect();
        alloc::format!("({}; {})", self.ctx.order(), parts.join(","))
    }

    fn parse_canonical(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| parse_err("expected (m; c0,...)", s))?;
        let (m, rest) = inner
            .split_once(';')
            .ok_or_else(|| parse_err("missing ';'", s))?;
        let m: u64 = m.trim().parse().map_err(|_| parse_err("bad order", s))?;
        let ctx = CycCtx::new(m)?;
        let coeffs = rest
            .split(',')
            .map(Rational::parse_canonical)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > ctx.degree() {
            return Err(parse_err("too many coefficients", s));
        }
        Ok(Cyclotomic::from_coeffs(&ctx, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_has_order_three() {
        let ctx = CycCtx::new(3).unwrap();
        let z = cyclotomic_root(&ctx, 1);
        assert_eq!(z.coeffs(), vec![Rational::int(0), Rational::int(1)]);
        assert!(z.pow(3).is_one());
        assert!(!z.is_one());
        assert_eq!(z.mul(&z.inv().unwrap()), Cyclotomic::one(&ctx));
        assert_eq!(z.inv().unwrap(), cyclotomic_root(&ctx, 2));
    }

    #[test]
    fn zeta2_is_minus_one() {
        let ctx = CycCtx::new(2).unwrap();
        assert_eq!(cyclotomic_root(&ctx, 1), Cyclotomic::from_int(&ctx, -1));
    }

    #[test]
    fn canonical_and_reduction() {
        let ctx = CycCtx::new(3).unwrap();
        let z = cyclotomic_root(&ctx, 1);
        assert_eq!(z.canonical(), "(3; 0/1,1/1)");
        assert_eq!(Cyclotomic::parse_canonical("(3; 0/1,1/1)").unwrap(), z);
        let r = Cyclotomic::reduction(&ctx, 7).unwrap();
        assert_eq!(z.reduce(&r).unwrap().value(), 2);
        assert!(Cyclotomic::reduction(&ctx, 5).is_err());
    }
}

//! Quivers, their doubles and the graded triple used for `k[t]`-module lifts.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Ring};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseArrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<BaseArrow>,
    order: Vec<usize>,
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// `arrows` are `(name, source, target)`; `order` lists every arrow name
    /// once and fixes the order of the factors in the relation.
    pub fn new(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        order: Option<&[&str]>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !valid_name(v) || vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(alloc::format!(
                    "bad or repeated vertex {v:?}"
                )));
            }
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::InvalidQuiver(alloc::format!("unknown vertex {v:?}")))
        };
        let mut base = Vec::new();
        for &(name, s, t) in arrows {
            if !valid_name(name)
                || name == "t"
                || name == "e"
                || base.iter().any(|a: &BaseArrow| a.name == name)
            {
                return Err(Error::InvalidQuiver(alloc::format!(
                    "bad or repeated arrow {name:?}"
                )));
            }
            if vertices.iter().any(|v| v == name) {
                return Err(Error::InvalidQuiver(alloc::format!(
                    "arrow {name:?} shadows a vertex"
                )));
            }
            base.push(BaseArrow {
                name: name.to_string(),
                src: find(s)?,
                tgt: find(t)?,
            });
        }
        let order = match order {
            None => (0..base.len()).collect(),
            Some(names) => {
                let mut o = Vec::new();
                for n in names {
                    let k = base.iter().position(|a| a.name == *n).ok_or_else(|| {
                        Error::InvalidQuiver(alloc::format!("ordering names unknown arrow {n:?}"))
                    })?;
                    if o.contains(&k) {
                        return Err(Error::InvalidQuiver(alloc::format!(
                            "arrow {n:?} ordered twice"
                        )));
                    }
                    o.push(k);
                }
                if o.len() != base.len() {
                    return Err(Error::InvalidQuiver(
                        "ordering must list every arrow".into(),
                    ));
                }
                o
            }
        };
        Ok(Quiver {
            vertices,
            arrows: base,
            order,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[BaseArrow] {
        &self.arrows
    }

    pub fn double(&self) -> DoubledQuiver {
        let mut arrows = Vec::new();
        for (j, &k) in self.order.iter().enumerate() {
            let a = &self.arrows[k];
            arrows.push(Arrow {
                name: a.name.clone(),
                src: a.src,
                tgt: a.tgt,
                star: 2 * j + 1,
                pos: j,
                is_star: false,
            });
            let mut sn = a.name.clone();
            sn.push('*');
            arrows.push(Arrow {
                name: sn,
                src: a.tgt,
                tgt: a.src,
                star: 2 * j,
                pos: j,
                is_star: true,
            });
        }
        DoubledQuiver {
            vertices: self.vertices.clone(),
            arrows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub star: usize,
    /// Position `j` of the underlying arrow `a_j` in the ordering.
    pub pos: usize,
    pub is_star: bool,
}

/// The double `Q-bar`. Arrow `2j` is `a_j`, arrow `2j+1` is `a_j*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl DoubledQuiver {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn g(&self) -> usize {
        self.arrows.len() / 2
    }

    pub fn arrow(&self, h: usize) -> &Arrow {
        &self.arrows[h]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn src(&self, h: usize) -> usize {
        self.arrows[h].src
    }

    pub fn tgt(&self, h: usize) -> usize {
        self.arrows[h].tgt
    }

    pub fn star(&self, h: usize) -> usize {
        self.arrows[h].star
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn find_arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn triple(&self, n: usize) -> Result<TripledQuiver> {
        let required = 2 * self.g();
        if n < required {
            return Err(Error::NLevelTooSmall { n, required });
        }
        Ok(TripledQuiver {
            dq: self.clone(),
            n,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GradedArrow {
    /// `(h, n)` from `(s(h), n)` to `(t(h), n+1)`.
    Lift { h: usize, level: usize },
    /// `t_{i,n}` from `(i, n)` to `(i, n+1)`.
    T { vertex: usize, level: usize },
}

/// Graded quiver on `I x [0, N]`. Vertex `(i, n)` has index `n |I| + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripledQuiver {
    dq: DoubledQuiver,
    n: usize,
}

impl TripledQuiver {
    pub fn base(&self) -> &DoubledQuiver {
        &self.dq
    }

    pub fn levels(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        (self.n + 1) * self.dq.num_vertices()
    }

    pub fn vertex(&self, i: usize, level: usize) -> usize {
        level * self.dq.num_vertices() + i
    }

    pub fn split_vertex(&self, v: usize) -> (usize, usize) {
        let k = self.dq.num_vertices();
        (v % k, v / k)
    }

    pub fn arrows(&self) -> Vec<GradedArrow> {
        let mut out = Vec::new();
        for level in 0..self.n {
            out.extend((0..self.dq.num_arrows()).map(|h| GradedArrow::Lift { h, level }));
            out.extend((0..self.dq.num_vertices()).map(|vertex| GradedArrow::T { vertex, level }));
        }
        out
    }

    pub fn num_arrows(&self) -> usize {
        self.n * (self.dq.num_arrows() + self.dq.num_vertices())
    }

    pub fn src(&self, a: GradedArrow) -> usize {
        match a {
            GradedArrow::Lift { h, level } => self.vertex(self.dq.src(h), level),
            GradedArrow::T { vertex, level } => self.vertex(vertex, level),
        }
    }

    pub fn tgt(&self, a: GradedArrow) -> usize {
        match a {
            GradedArrow::Lift { h, level } => self.vertex(self.dq.tgt(h), level + 1),
            GradedArrow::T { vertex, level } => self.vertex(vertex, level + 1),
        }
    }
}

/// `alpha` repeated on every level, in the graded vertex order.
pub fn lift_dimension(alpha: &[usize], n: usize) -> Vec<usize> {
    (0..=n).flat_map(|_| alpha.iter().copied()).collect()
}

pub fn pairing(theta: &[Rational], dims: &[usize]) -> Rational {
    theta
        .iter()
        .zip(dims)
        .fold(Rational::int(0), |acc, (t, &d)| {
            acc.add(&t.mul(&Rational::int(d as i64)))
        })
}

/// Smallest integer `T` with `T >= 1 + (N+1) |alpha| (1 + max |theta_i|)`.
pub fn default_t(theta: &[Rational], alpha: &[usize], n: usize) -> Rational {
    let total: usize = alpha.iter().sum();
    let max = theta
        .iter()
        .map(|t| t.abs())
        .max()
        .unwrap_or_else(|| Rational::int(0));
    let bound = Rational::int(((n + 1) * total) as i64).mul(&Rational::int(1).add(&max));
    Rational::int(1).add(&bound).ceil()
}

/// Stability on the graded quiver: `T^i` at `(i, N)`, `theta_i - T^i` at
/// `(i, 0)`, zero in between, with vertices counted from 1.
pub fn lift_stability(
    theta: &[Rational],
    alpha: &[usize],
    n: usize,
    t: Option<Rational>,
) -> Result<Vec<Rational>> {
    if theta.len() != alpha.len() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "theta has {} entries, alpha {}",
            theta.len(),
            alpha.len()
        )));
    }
    if !pairing(theta, alpha).is_zero() {
        return Err(Error::BadPairing);
    }
    let t = t.unwrap_or_else(|| default_t(theta, alpha, n));
    let k = alpha.len();
    let mut out = alloc::vec![Rational::int(0); (n + 1) * k];
    for i in 0..k {
        let ti = t.pow(i as u64 + 1);
        out[n * k + i] = ti.clone();
        out[i] = theta[i].sub(&ti);
    }
    Ok(out)
}

/// `sum_{h in H} alpha_s alpha_t - 2 sum alpha_i^2`.
pub fn expected_rank(dq: &DoubledQuiver, alpha: &[usize]) -> i64 {
    let arrows: i64 = dq
        .arrows()
        .iter()
        .map(|a| (alpha[a.src] * alpha[a.tgt]) as i64)
        .sum();
    let diag: i64 = alpha.iter().map(|&a| (a * a) as i64).sum();
    arrows - 2 * diag
}

//! TOML instance files.
//!
//! ```toml
//! alpha = [2]
//! theta = ["0"]
//! q = ["-1"]          # or q_exponents = [1] over a cyclotomic field
//! levels = 2
//! seed = 0
//!
//! [field]
//! kind = "rational"   # "cyclotomic" with `order`, "prime" with `modulus`
//!
//! [quiver]
//! vertices = ["v"]
//! arrows = [["a", "v", "v"]]
//! ```
//!
//! Optional keys: `t` (lifting parameter), `pair_seed` (second sample for
//! Ext pairs), `prime` (search prime), `order` in `[quiver]`, a `[bounds]`
//! table and `[[matrices]]` entries `{ arrow = "a*", rows = [["1", "0"]] }`
//! giving every arrow of the double explicitly.

use mqv_core::matrix::Matrix;
use mqv_core::quiver::{pairing, DoubledQuiver, Quiver};
use mqv_core::rep::{Representation, SamplerConfig};
use mqv_core::scalar::{cyclotomic_root, Canonical, CycCtx, Field, Rational, Ring};
use mqv_core::stability::SearchConfig;
use serde::Deserialize;
use std::fmt;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Locates `key = ` in the source so semantic errors still carry a position.
fn key_position(src: &str, key: &str) -> (usize, usize) {
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let t = line.trim_start();
        if t.starts_with(key) && t[key.len()..].trim_start().starts_with('=') {
            return position(src, offset + line.len() - t.len());
        }
        offset += line.len();
    }
    (1, 1)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: String,
    pub order: Option<u64>,
    pub modulus: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub max_total_dim: Option<usize>,
    pub max_nodes: Option<u64>,
    pub sampler_bound: Option<i64>,
    pub retries: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub arrow: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub alpha: Vec<usize>,
    pub theta: Vec<String>,
    pub q: Option<Vec<String>>,
    pub q_exponents: Option<Vec<i64>>,
    pub levels: usize,
    pub t: Option<String>,
    #[serde(default)]
    pub seed: u64,
    pub pair_seed: Option<u64>,
    pub prime: Option<u64>,
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub matrices: Vec<MatrixSpec>,
}

/// Parsed file together with its source, for error positions.
#[derive(Clone, Debug)]
pub struct Source {
    pub text: String,
    pub file: InstanceFile,
}

impl Source {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file: InstanceFile = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
            ParseError {
                line,
                column,
                msg: e.message().trim().to_string(),
            }
        })?;
        Ok(Source {
            text: text.to_string(),
            file,
        })
    }

    pub fn error(&self, key: &str, msg: impl Into<String>) -> ParseError {
        let (line, column) = key_position(&self.text, key);
        ParseError {
            line,
            column,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Cyclotomic(u64),
    Prime(u64),
}

pub fn field_kind(src: &Source) -> Result<FieldKind, ParseError> {
    let f = &src.file.field;
    match f.kind.as_str() {
        "rational" => Ok(FieldKind::Rational),
        "cyclotomic" => match f.order {
            Some(m) if m >= 1 => Ok(FieldKind::Cyclotomic(m)),
            _ => Err(src.error("kind", "cyclotomic field needs order >= 1")),
        },
        "prime" => match f.modulus {
            Some(p) if mqv_core::scalar::is_prime(p) => Ok(FieldKind::Prime(p)),
            _ => Err(src.error("kind", "prime field needs a prime modulus")),
        },
        other => Err(src.error("kind", format!("unknown field kind {other:?}"))),
    }
}

/// Scalar types the CLI can run over.
pub trait CliField: Field + Canonical + Send + Sync
where
    Self::Ctx: Send + Sync,
{
    fn make_ctx(kind: &FieldKind) -> Self::Ctx;
    fn root(ctx: &Self::Ctx, k: i64) -> Option<Self>;
}

impl CliField for Rational {
    fn make_ctx(_: &FieldKind) -> Self::Ctx {}
    fn root(_: &(), _: i64) -> Option<Self> {
        None
    }
}

impl CliField for mqv_core::scalar::Cyclotomic {
    fn make_ctx(kind: &FieldKind) -> CycCtx {
        let FieldKind::Cyclotomic(m) = kind else {
            unreachable!("field dispatch")
        };
        CycCtx::new(*m).expect("order checked")
    }
    fn root(ctx: &CycCtx, k: i64) -> Option<Self> {
        Some(cyclotomic_root(ctx, k))
    }
}

impl CliField for mqv_core::scalar::Fp {
    fn make_ctx(kind: &FieldKind) -> u64 {
        let FieldKind::Prime(p) = kind else {
            unreachable!("field dispatch")
        };
        *p
    }
    fn root(_: &u64, _: i64) -> Option<Self> {
        None
    }
}

/// Canonical form, or an integer / `n/d` ratio mapped into the field.
pub fn parse_scalar<F: CliField>(ctx: &F::Ctx, s: &str) -> Option<F>
where
    F::Ctx: Send + Sync,
{
    if let Ok(x) = F::parse_canonical(s) {
        if x.ctx() == *ctx {
            return Some(x);
        }
    }
    let r = Rational::parse_canonical(s).ok()?;
    let (n, d) = (r.numer().try_into().ok()?, r.denom().try_into().ok()?);
    F::from_ratio(ctx, n, d)
}

/// Fully resolved instance over a concrete field.
#[derive(Clone, Debug)]
pub struct Instance<F: CliField>
where
    F::Ctx: Send + Sync,
{
    pub ctx: F::Ctx,
    pub dq: DoubledQuiver,
    pub alpha: Vec<usize>,
    pub theta: Vec<Rational>,
    pub q: Vec<F>,
    pub levels: usize,
    pub t: Option<Rational>,
    pub seed: u64,
    pub pair_seed: Option<u64>,
    pub prime: u64,
    /// Set when the prime was given explicitly rather than defaulted.
    pub prime_fixed: bool,
    pub search: SearchConfig,
    pub sampler: SamplerConfig,
    pub explicit: Option<Representation<F>>,
}

pub fn resolve<F: CliField>(src: &Source, kind: &FieldKind) -> Result<Instance<F>, ParseError>
where
    F::Ctx: Send + Sync,
{
    let f = &src.file;
    let ctx = F::make_ctx(kind);
    let vs: Vec<&str> = f.quiver.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> = f
        .quiver
        .arrows
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    let order: Option<Vec<&str>> = f
        .quiver
        .order
        .as_ref()
        .map(|o| o.iter().map(String::as_str).collect());
    let quiver = Quiver::new(&vs, &arrows, order.as_deref())
        .map_err(|e| src.error("vertices", e.to_string()))?;
    let dq = quiver.double();
    let nv = dq.num_vertices();
    if f.alpha.len() != nv {
        return Err(src.error("alpha", format!("expected {nv} entries")));
    }
    if f.theta.len() != nv {
        return Err(src.error("theta", format!("expected {nv} entries")));
    }
    let theta = f
        .theta
        .iter()
        .map(|s| {
            Rational::parse_canonical(s)
                .map_err(|_| src.error("theta", format!("bad rational {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !pairing(&theta, &f.alpha).is_zero() {
        return Err(src.error("theta", "theta does not pair to zero with alpha"));
    }
    let q: Vec<F> = match (&f.q, &f.q_exponents) {
        (Some(q), None) => q
            .iter()
            .map(|s| {
                parse_scalar::<F>(&ctx, s)
                    .ok_or_else(|| src.error("q", format!("bad scalar {s:?}")))
            })
            .collect::<Result<_, _>>()?,
        (None, Some(k)) => k
            .iter()
            .map(|&k| {
                F::root(&ctx, k)
                    .ok_or_else(|| src.error("q_exponents", "exponents need a cyclotomic field"))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(src.error("alpha", "give exactly one of q and q_exponents")),
    };
    if q.len() != nv {
        return Err(src.error(
            if f.q.is_some() { "q" } else { "q_exponents" },
            format!("expected {nv} entries"),
        ));
    }
    if q.iter().any(|x| x.is_zero()) {
        return Err(src.error("q", "q entries must be nonzero"));
    }
    let t = match &f.t {
        Some(s) => Some(
            Rational::parse_canonical(s)
                .map_err(|_| src.error("t", format!("bad rational {s:?}")))?,
        ),
        None => None,
    };
    let prime = f.prime.unwrap_or_else(|| default_prime(kind));
    if !mqv_core::scalar::is_prime(prime) {
        return Err(src.error("prime", format!("{prime} is not prime")));
    }
    let mut search = SearchConfig::default();
    let mut sampler = SamplerConfig::default();
    let b = &f.bounds;
    search.max_total_dim = b.max_total_dim.unwrap_or(search.max_total_dim);
    search.max_nodes = b.max_nodes.unwrap_or(search.max_nodes);
    sampler.bound = b.sampler_bound.unwrap_or(sampler.bound);
    sampler.retries = b.retries.unwrap_or(sampler.retries);
    let explicit = if f.matrices.is_empty() {
        None
    } else {
        Some(explicit_rep::<F>(src, &dq, &f.alpha, &ctx)?)
    };
    Ok(Instance {
        ctx,
        dq,
        alpha: f.alpha.clone(),
        theta,
        q,
        levels: f.levels,
        t,
        seed: f.seed,
        pair_seed: f.pair_seed,
        prime,
        prime_fixed: f.prime.is_some(),
        search,
        sampler,
        explicit,
    })
}

/// Smallest prime from 5 on that the search accepts for this field.
pub fn default_prime(kind: &FieldKind) -> u64 {
    match *kind {
        FieldKind::Rational => 5,
        FieldKind::Cyclotomic(m) => (5..)
            .find(|&p| mqv_core::scalar::is_prime(p) && p % m == 1 % m)
            .expect("primes exist"),
        FieldKind::Prime(p) => p,
    }
}

fn explicit_rep<F: CliField>(
    src: &Source,
    dq: &DoubledQuiver,
    alpha: &[usize],
    ctx: &F::Ctx,
) -> Result<Representation<F>, ParseError>
where
    F::Ctx: Send + Sync,
{
    let mut mats: Vec<Option<Matrix<F>>> = vec![None; dq.num_arrows()];
    for m in &src.file.matrices {
        let h = dq
            .find_arrow(&m.arrow)
            .ok_or_else(|| src.error("arrow", format!("unknown arrow {:?}", m.arrow)))?;
        let rows = m
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        parse_scalar::<F>(ctx, s)
                            .ok_or_else(|| src.error("rows", format!("bad scalar {s:?}")))
                    })
                    .collect::<Result<Vec<F>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (r, c) = (alpha[dq.tgt(h)], alpha[dq.src(h)]);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(src.error("rows", format!("arrow {} needs a {r}x{c} matrix", m.arrow)));
        }
        mats[h] = Some(Matrix::from_fn(ctx, r, c, |i, j| rows[i][j].clone()));
    }
    let mats = mats
        .into_iter()
        .enumerate()
        .map(|(h, m)| {
            m.ok_or_else(|| src.error("matrices", format!("missing arrow {}", dq.arrow(h).name)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(dq, alpha, mats, ctx).map_err(|e| src.error("matrices", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const R1: &str = include_str!("../instances/r1.toml");

    #[test]
    fn bundled_instance_resolves() {
        let src = Source::parse(R1).unwrap();
        let inst = resolve::<Rational>(&src, &field_kind(&src).unwrap()).unwrap();
        assert_eq!(inst.alpha, vec![2]);
        assert_eq!(inst.q, vec![Rational::int(-1)]);
        assert!(inst.explicit.is_some());
    }

    #[test]
    fn syntax_error_has_position() {
        let e = Source::parse("alpha = [1,\nbeta = ").unwrap_err();
        assert!(e.line >= 2, "{e}");
    }

    #[test]
    fn semantic_error_points_at_key() {
        let bad = R1.replace("theta = [\"0\"]", "theta = [\"1\"]");
        let src = Source::parse(&bad).unwrap();
        let e = resolve::<Rational>(&src, &FieldKind::Rational).unwrap_err();
        assert_eq!((e.line, e.column), key_position(&bad, "theta"));
        assert!(e.msg.contains("pair"));
    }

    #[test]
    fn default_primes() {
        assert_eq!(default_prime(&FieldKind::Rational), 5);
        assert_eq!(default_prime(&FieldKind::Cyclotomic(3)), 7);
        assert_eq!(default_prime(&FieldKind::Cyclotomic(2)), 5);
        assert_eq!(default_prime(&FieldKind::Prime(7)), 7);
    }

    #[test]
    fn scalars_from_ratios() {
        assert_eq!(
            parse_scalar::<mqv_core::scalar::Fp>(&7, "1/2")
                .unwrap()
                .value(),
            4
        );
        assert_eq!(
            parse_scalar::<Rational>(&(), "-6/4").unwrap(),
            Rational::new(-3, 2)
        );
        assert!(parse_scalar::<Rational>(&(), "x").is_none());
    }
}

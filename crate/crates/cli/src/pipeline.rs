use crate::instance::{CliField, Instance};
use crate::report::{ints, matrix, scalar, Section, Status};
use mqv_core::ext::{
    complex_report, first_order_check, phi_correspondence, verify_bimodule_memberships, ExtPair,
};
use mqv_core::ncpath::{build_relation, identity_suite};
use mqv_core::quiver::expected_rank;
use mqv_core::rep::{
    check_obstruction, check_rep, induce, q_power, sample_rep, tangent_dim, GradedModule,
    Representation,
};
use mqv_core::stability::{
    ind_compat_report, usable_prime, verdict, LinearData, StabilityVerdict, Verdict, Witness,
};
use mqv_core::Result;
use toml::{Table, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Identities,
    Sample,
    Check,
    Stability,
    Ext,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Identities => "identities",
            Command::Sample => "sample",
            Command::Check => "check",
            Command::Stability => "stability",
            Command::Ext => "ext",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub first_order: bool,
}

/// Runs `f`; on failure the section keeps the values recorded so far and
/// names the error.
fn stage<T>(
    out: &mut Vec<Section>,
    name: &str,
    f: impl FnOnce(&mut Section) -> Result<T>,
) -> Option<T> {
    let mut s = Section::new(name);
    let r = f(&mut s);
    if let Err(e) = &r {
        s.pass = false;
        s.error = Some(e.name().into());
        s.message = Some(e.to_string());
    }
    out.push(s);
    r.ok()
}

fn hit_bound(out: &[Section]) -> bool {
    out.last()
        .is_some_and(|s| s.status() == Status::ResourceBound)
}

fn identities<F: CliField>(inst: &Instance<F>, s: &mut Section) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    let rel = build_relation(&inst.dq, &inst.q)?;
    for c in identity_suite(&rel).checks {
        s.check(&c.name, c.pass);
    }
    s.set("rho_degree", rel.rho.degree().unwrap_or(-1));
    Ok(())
}

fn sampled<F: CliField>(inst: &Instance<F>, seed: u64) -> Result<(Representation<F>, usize)>
where
    F::Ctx: Send + Sync,
{
    let s = sample_rep(&inst.dq, &inst.alpha, &inst.q, seed, &inst.sampler)?;
    Ok((s.rep, s.attempts))
}

fn sample<F: CliField>(inst: &Instance<F>, s: &mut Section) -> Result<Representation<F>>
where
    F::Ctx: Send + Sync,
{
    let rep = match &inst.explicit {
        Some(r) => {
            s.set("source", "explicit");
            r.clone()
        }
        None => {
            let (rep, attempts) = sampled(inst, inst.seed)?;
            s.set("source", "sampled").set("attempts", attempts as i64);
            rep
        }
    };
    let mut mats = Table::new();
    for h in 0..inst.dq.num_arrows() {
        mats.insert(inst.dq.arrow(h).name.clone(), matrix(rep.mat(h)));
    }
    s.set("matrices", Value::Table(mats));
    Ok(rep)
}

fn obstruction<F: CliField>(inst: &Instance<F>, s: &mut Section) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    s.set("q_alpha", scalar(&q_power(&inst.q, &inst.alpha)));
    check_obstruction(&inst.q, &inst.alpha)
}

fn check<F: CliField>(inst: &Instance<F>, rep: &Representation<F>, s: &mut Section) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    let r = check_rep(rep, &inst.q)?;
    s.set(
        "residuals",
        Value::Array(r.residuals.iter().map(matrix).collect()),
    );
    s.check("residual_zero", r.is_zero());
    Ok(())
}

fn witness<F: CliField>(w: &Witness<F>) -> Value
where
    F::Ctx: Send + Sync,
{
    let mut t = Table::new();
    t.insert("dims".into(), ints(&w.dims));
    t.insert("pairing".into(), scalar(&w.pairing));
    t.insert(
        "basis".into(),
        Value::Array(w.basis.iter().map(matrix).collect()),
    );
    Value::Table(t)
}

fn verdict_values<F: CliField>(v: &StabilityVerdict<F>) -> Table
where
    F::Ctx: Send + Sync,
{
    let mut t = Table::new();
    t.insert("label".into(), v.label().into());
    t.insert("prime".into(), Value::Integer(v.prime as i64));
    t.insert(
        "candidate_tuples".into(),
        v.stats.candidate_tuples.to_string().into(),
    );
    t.insert("visited".into(), Value::Integer(v.stats.visited as i64));
    t.insert("closed".into(), Value::Integer(v.stats.closed as i64));
    match &v.verdict {
        Verdict::CertifiedSemistableOnly(w) | Verdict::UnstableWithWitness(w) => {
            t.insert("witness".into(), witness(w));
        }
        Verdict::Inconclusive { witness: w, .. } => {
            t.insert("witness_mod_p".into(), witness(w));
        }
        Verdict::CertifiedStable => {}
    }
    t
}

/// The pinned prime, or the first one from the default at which `rep` reduces.
fn search_prime<F: CliField>(inst: &Instance<F>, rep: &Representation<F>) -> Result<u64>
where
    F::Ctx: Send + Sync,
{
    if inst.prime_fixed {
        Ok(inst.prime)
    } else {
        usable_prime(
            &LinearData::from_rep(rep),
            &inst.ctx,
            inst.prime,
            &inst.search,
        )
    }
}

fn stability<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
    s: &mut Section,
) -> Result<bool>
where
    F::Ctx: Send + Sync,
{
    let p = search_prime(inst, rep)?;
    let v = verdict(
        &LinearData::from_rep(rep),
        &inst.ctx,
        &inst.theta,
        p,
        &inst.search,
    )?;
    s.set(
        "theta",
        Value::Array(inst.theta.iter().map(scalar).collect()),
    );
    s.check(
        "certified",
        !matches!(v.verdict, Verdict::Inconclusive { .. }),
    );
    for (k, x) in verdict_values(&v) {
        s.set(&k, x);
    }
    Ok(v.is_stable() == Some(true))
}

fn ind_compat<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
    s: &mut Section,
) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    let p = search_prime(inst, rep)?;
    let c = ind_compat_report(
        rep,
        &inst.theta,
        inst.levels,
        inst.t.clone(),
        p,
        &inst.search,
    )?;
    s.set(
        "theta_gtr",
        Value::Array(c.theta_gtr.iter().map(scalar).collect()),
    );
    s.set("base", Value::Table(verdict_values(&c.base)));
    s.set("induced", Value::Table(verdict_values(&c.induced)));
    s.check("agree", c.agree);
    Ok(())
}

fn complex_values<F: CliField>(pair: &ExtPair<F>, s: &mut Section) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    let r = complex_report(pair)?;
    for (k, v) in [
        ("dim_l", r.dim_l),
        ("dim_e", r.dim_e),
        ("dim_l_top", r.dim_l_top),
        ("rank_d0", r.rank_d0),
        ("rank_d1", r.rank_d1),
        ("h_minus1", r.h_minus1),
        ("h0", r.h0),
        ("h1", r.h1),
        ("hom_into_w", r.hom_into_w),
        ("hom_from_w", r.hom_from_w),
    ] {
        s.set(k, v as i64);
    }
    s.set("expected_rank", r.expected_rank);
    s.check("is_complex", r.is_complex);
    s.check("euler", r.euler_ok);
    s.check("rank_matches", r.rank_matches);
    s.check("dual_contraction_agrees", r.dual_contraction_agrees);
    s.check("h_minus1_is_hom", r.h_minus1 == r.hom_into_w);
    s.check("h1_is_hom", r.h1 == r.hom_from_w);
    Ok(())
}

/// `(Ind R, Ind R)` and, with a pair seed, `(Ind R, Ind R')`.
fn pairs<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
) -> Result<Vec<(&'static str, ExtPair<F>)>>
where
    F::Ctx: Send + Sync,
{
    let v: GradedModule<F> = induce(rep, inst.levels, None)?;
    let mut out = vec![("diagonal", ExtPair::new(&v, &v, &inst.q)?)];
    if let Some(seed) = inst.pair_seed {
        let (other, _) = sampled(inst, seed)?;
        let w = induce(&other, inst.levels, None)?;
        out.push(("pair", ExtPair::new(&v, &w, &inst.q)?));
    }
    Ok(out)
}

fn ext<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
    stable: bool,
    s: &mut Section,
) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    for (name, pair) in pairs(inst, rep)? {
        let mut sub = Section::new(name);
        complex_values(&pair, &mut sub)?;
        s.pass &= sub.pass;
        s.set(name, Value::Table(sub.values));
    }
    let t = tangent_dim(rep, &inst.q)?;
    let expected = expected_rank(&inst.dq, &inst.alpha);
    s.set("tangent_dim", t.tangent_dim as i64)
        .set("moduli_dim", t.moduli_dim);
    s.set("stable", stable);
    if stable {
        s.check("rank_identity", expected == t.moduli_dim - 2);
    }
    Ok(())
}

fn first_order<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
    s: &mut Section,
) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    let r = first_order_check(rep, &inst.q, inst.levels)?;
    s.set("tangent_dim", r.tangent_dim as i64)
        .set("orbit_dim", r.orbit_dim as i64)
        .set("bound", r.bound as i64)
        .set("hom_orbit", r.hom_orbit as i64);
    if let Some(h) = r.hom_transverse {
        s.set("hom_transverse", h as i64);
    }
    s.check("support", r.ok());
    Ok(())
}

fn phi<F: CliField>(inst: &Instance<F>, rep: &Representation<F>, s: &mut Section) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    for (name, pair) in pairs(inst, rep)? {
        let r = phi_correspondence(&pair)?;
        let mut t = Table::new();
        t.insert("dim_kernel".into(), Value::Integer(r.dim_kernel as i64));
        t.insert("dim_hom".into(), Value::Integer(r.dim_hom as i64));
        t.insert("forward_in_hom".into(), r.forward_in_hom.into());
        t.insert("backward_in_kernel".into(), r.backward_in_kernel.into());
        t.insert("round_trip".into(), r.round_trip.into());
        s.pass &= r.ok();
        s.set(name, Value::Table(t));
    }
    Ok(())
}

fn memberships<F: CliField>(
    inst: &Instance<F>,
    rep: &Representation<F>,
    s: &mut Section,
) -> Result<()>
where
    F::Ctx: Send + Sync,
{
    for (name, pair) in pairs(inst, rep)? {
        let r = verify_bimodule_memberships(&pair)?;
        let mut t = Table::new();
        for c in &r.checks {
            let mut e = Table::new();
            e.insert("pass".into(), c.pass.into());
            e.insert("tested".into(), Value::Integer(c.tested as i64));
            t.insert(c.name.clone(), Value::Table(e));
        }
        s.pass &= r.all_pass();
        s.set(name, Value::Table(t));
    }
    Ok(())
}

/// Runs `cmd`. Structural errors stop the pipeline; failed checks do not.
pub fn run<F: CliField>(inst: &Instance<F>, cmd: Command, opts: Options) -> Vec<Section>
where
    F::Ctx: Send + Sync,
{
    let mut out = Vec::new();
    let o = &mut out;
    match cmd {
        Command::Validate => {
            let mut s = Section::new("validate");
            s.set("vertices", inst.dq.num_vertices() as i64)
                .set("doubled_arrows", inst.dq.num_arrows() as i64)
                .set("alpha", ints(&inst.alpha))
                .set("levels", inst.levels as i64);
            s.check("levels_cover_2g", inst.levels >= 2 * inst.dq.g());
            o.push(s);
        }
        Command::Identities => {
            stage(o, "identities", |s| identities(inst, s));
        }
        Command::Sample => {
            stage(o, "sample", |s| sample(inst, s));
        }
        Command::Check => {
            if stage(o, "obstruction", |s| obstruction(inst, s)).is_some() {
                if let Some(rep) = stage(o, "sample", |s| sample(inst, s)) {
                    stage(o, "check", |s| check(inst, &rep, s));
                }
            }
        }
        Command::Stability => {
            if let Some(rep) = stage(o, "sample", |s| sample(inst, s)) {
                stage(o, "stability", |s| stability(inst, &rep, s));
                stage(o, "ind_compat", |s| ind_compat(inst, &rep, s));
            }
        }
        Command::Ext => {
            if let Some(rep) = stage(o, "sample", |s| sample(inst, s)) {
                let stable = stage(o, "stability", |s| stability(inst, &rep, s)).unwrap_or(false);
                stage(o, "ext", |s| ext(inst, &rep, stable, s));
                if opts.first_order {
                    stage(o, "first_order", |s| first_order(inst, &rep, s));
                }
            }
        }
        Command::VerifyAll => verify_all(inst, opts, o),
    }
    out
}

fn verify_all<F: CliField>(inst: &Instance<F>, opts: Options, o: &mut Vec<Section>)
where
    F::Ctx: Send + Sync,
{
    if stage(o, "identities", |s| identities(inst, s)).is_none() {
        return;
    }
    let Some(rep) = stage(o, "sample", |s| sample(inst, s)) else {
        return;
    };
    if stage(o, "check", |s| check(inst, &rep, s)).is_none() {
        return;
    }
    // Search bounds only cost the stability stages; the rest still runs.
    let stable = stage(o, "stability", |s| stability(inst, &rep, s));
    if stable.is_none() && !hit_bound(o) {
        return;
    }
    if stage(o, "ind_compat", |s| ind_compat(inst, &rep, s)).is_none() && !hit_bound(o) {
        return;
    }
    let stable = stable.unwrap_or(false);
    if stage(o, "ext", |s| ext(inst, &rep, stable, s)).is_none() {
        return;
    }
    if opts.first_order && stage(o, "first_order", |s| first_order(inst, &rep, s)).is_none() {
        return;
    }
    if stage(o, "phi", |s| phi(inst, &rep, s)).is_none() {
        return;
    }
    stage(o, "memberships", |s| memberships(inst, &rep, s));
}

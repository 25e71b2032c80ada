//! Batch driver for `mqv-core`: instance files in, TOML reports out.

pub mod instance;
pub mod pipeline;
pub mod report;

use instance::{field_kind, resolve, CliField, FieldKind, Instance, ParseError, Source};
use mqv_core::scalar::{Cyclotomic, Fp, Rational};
use pipeline::{Command, Options};
use report::{InstanceReport, Report};
use sha2::{Digest, Sha256};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Per-run overrides of instance keys.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub prime: Option<u64>,
}

enum AnyInstance {
    Rational(Instance<Rational>),
    Cyclotomic(Instance<Cyclotomic>),
    Prime(Instance<Fp>),
}

pub struct Loaded {
    path: String,
    digest: String,
    field: String,
    inst: AnyInstance,
}

fn apply<F: CliField>(mut inst: Instance<F>, o: Overrides) -> Instance<F>
where
    F::Ctx: Send + Sync,
{
    inst.seed = o.seed.unwrap_or(inst.seed);
    if let Some(p) = o.prime {
        inst.prime = p;
        inst.prime_fixed = true;
    }
    inst
}

/// Parses and resolves an instance; every failure here is a usage error.
pub fn load(path: &str, text: &str, o: Overrides) -> Result<Loaded, ParseError> {
    if let Some(p) = o.prime {
        if !mqv_core::scalar::is_prime(p) {
            return Err(ParseError {
                line: 0,
                column: 0,
                msg: format!("--prime {p} is not prime"),
            });
        }
    }
    let src = Source::parse(text)?;
    let kind = field_kind(&src)?;
    let (field, inst) = match kind {
        FieldKind::Rational => (
            "rational".to_string(),
            AnyInstance::Rational(apply(resolve(&src, &kind)?, o)),
        ),
        FieldKind::Cyclotomic(m) => (
            format!("cyclotomic {m}"),
            AnyInstance::Cyclotomic(apply(resolve(&src, &kind)?, o)),
        ),
        FieldKind::Prime(p) => (
            format!("prime {p}"),
            AnyInstance::Prime(apply(resolve(&src, &kind)?, o)),
        ),
    };
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok(Loaded {
        path: path.into(),
        digest,
        field,
        inst,
    })
}

pub fn run_one(l: &Loaded, cmd: Command, opts: Options) -> InstanceReport {
    let (seed, sections) = match &l.inst {
        AnyInstance::Rational(i) => (i.seed, pipeline::run(i, cmd, opts)),
        AnyInstance::Cyclotomic(i) => (i.seed, pipeline::run(i, cmd, opts)),
        AnyInstance::Prime(i) => (i.seed, pipeline::run(i, cmd, opts)),
    };
    let status = sections
        .iter()
        .map(|s| s.status())
        .max()
        .unwrap_or(report::Status::Pass);
    InstanceReport {
        path: l.path.clone(),
        digest: l.digest.clone(),
        field: l.field.clone(),
        seed,
        status,
        sections,
    }
}

/// Runs every instance, `jobs` at a time; the report keeps input order.
pub fn run_all(loaded: &[Loaded], cmd: Command, opts: Options, jobs: usize) -> Report {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<InstanceReport>>> =
        Mutex::new((0..loaded.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, loaded.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(l) = loaded.get(k) else { break };
                let r = run_one(l, cmd, opts);
                slots.lock().expect("no poisoned workers")[k] = Some(r);
            });
        }
    });
    let reports = slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect();
    Report::new(cmd.name(), reports)
}

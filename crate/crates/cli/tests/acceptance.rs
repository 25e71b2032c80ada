//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use mqv::pipeline::{Command, Options};
use mqv::{load, run_all, Overrides};
use mqv_core::ext::{complex_report, phi_correspondence, verify_bimodule_memberships, ExtPair};
use mqv_core::matrix::Matrix;
use mqv_core::ncpath::{build_relation, identity_suite};
use mqv_core::quiver::{expected_rank, DoubledQuiver, Quiver};
use mqv_core::rep::{
    check_rep, induce, rep_hom, sample_rep, tangent_dim, Representation, SamplerConfig,
};
use mqv_core::scalar::{cyclotomic_root, CycCtx, Cyclotomic, Field, Rational};
use mqv_core::stability::{
    ind_compat_report, is_invariant, usable_prime, verdict, LinearData, SearchConfig, Verdict,
};
use mqv_core::Error;
use std::path::Path;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn loops(g: usize) -> DoubledQuiver {
    let names = ["a", "b", "c"];
    let arrows: Vec<(&str, &str, &str)> = names[..g].iter().map(|&a| (a, "v", "v")).collect();
    Quiver::new(&["v"], &arrows, None).unwrap().double()
}

fn two_vertex() -> DoubledQuiver {
    Quiver::new(&["u", "w"], &[("a", "u", "w")], None)
        .unwrap()
        .double()
}

fn chain() -> DoubledQuiver {
    Quiver::new(&["u", "v", "w"], &[("a", "u", "v"), ("b", "v", "w")], None)
        .unwrap()
        .double()
}

fn int(n: i64) -> Rational {
    Rational::int(n)
}

fn r1() -> Representation<Rational> {
    let xa = Matrix::from_ints(&(), &[&[0, 1], &[0, 0]]);
    let xs = Matrix::from_ints(&(), &[&[0, 0], &[-2, 0]]);
    Representation::new(&loops(1), &[2], vec![xa, xs], &()).unwrap()
}

fn sample<F: Field + mqv_core::scalar::Canonical>(
    dq: &DoubledQuiver,
    alpha: &[usize],
    q: &[F],
    seed: u64,
) -> Representation<F> {
    sample_rep(dq, alpha, q, seed, &SamplerConfig::default())
        .unwrap()
        .rep
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || {
        format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(DoubledQuiver, Vec<Rational>)> = vec![
        (loops(1), vec![int(-1)]),
        (loops(2), vec![int(1)]),
        (loops(3), vec![Rational::new(2, 3)]),
        (two_vertex(), vec![int(-1), int(-1)]),
        (chain(), vec![int(1), int(-1), int(3)]),
    ];
    for (dq, q) in &cases {
        let rel = build_relation(dq, q).map_err(|e| e.to_string())?;
        let r = identity_suite(&rel);
        for name in [
            "g_intertwines_arrows",
            "rho_peirce_diagonal",
            "alpha_is_derivative_of_rho",
            "rho_homogeneous",
        ] {
            ensure(r.get(name) == Some(true), || {
                format!("{name} failed on a quiver with g = {}", dq.g())
            })?;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} quivers", cases.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let z3 = CycCtx::new(3).unwrap();
    let mut count = 0;
    let mut exact = |ok: bool| {
        count += 1;
        ok
    };
    for seed in 0..20 {
        let runs = [
            (loops(1), vec![2], vec![int(-1)]),
            (loops(2), vec![2], vec![int(1)]),
            (loops(1), vec![1], vec![int(1)]),
            (two_vertex(), vec![1, 1], vec![int(-1), int(-1)]),
        ];
        for (dq, alpha, q) in &runs {
            let s = sample_rep(dq, alpha, q, seed, &SamplerConfig::default())
                .map_err(|e| e.to_string())?;
            ensure(exact(check_rep(&s.rep, q).unwrap().is_zero()), || {
                format!("nonzero residual at seed {seed}")
            })?;
        }
        let q = [cyclotomic_root(&z3, 1)];
        let s = sample_rep(&loops(2), &[3], &q, seed, &SamplerConfig::default())
            .map_err(|e| e.to_string())?;
        ensure(exact(check_rep(&s.rep, &q).unwrap().is_zero()), || {
            format!("nonzero residual over Q(z3) at seed {seed}")
        })?;
    }
    let obstructed: [(DoubledQuiver, Vec<usize>, Vec<Rational>); 3] = [
        (loops(1), vec![2], vec![int(2)]),
        (loops(1), vec![1], vec![int(-1)]),
        (two_vertex(), vec![1, 1], vec![int(1), int(-1)]),
    ];
    for (dq, alpha, q) in &obstructed {
        let r = sample_rep(dq, alpha, q, 0, &SamplerConfig::default());
        ensure(matches!(r, Err(Error::Obstruction { .. })), || {
            format!("q = {q:?} not rejected")
        })?;
    }
    let zq = [cyclotomic_root(&z3, 1)];
    let r = sample_rep::<Cyclotomic>(&loops(1), &[2], &zq, 0, &SamplerConfig::default());
    ensure(matches!(r, Err(Error::Obstruction { .. })), || {
        "z3 with alpha = 2 not rejected".into()
    })?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{count} samples exact, 4 obstructed parameters rejected"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig {
        max_total_dim: 12,
        ..Default::default()
    };
    let zero = [int(0)];
    let v =
        verdict(&LinearData::from_rep(&r1()), &(), &zero, 5, &cfg).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::CertifiedStable, || {
        format!("R1 is {}", v.label())
    })?;
    let sum = r1().direct_sum(&r1()).unwrap();
    let data = LinearData::from_rep(&sum);
    let v = verdict(&data, &(), &zero, 5, &cfg).map_err(|e| e.to_string())?;
    match &v.verdict {
        Verdict::CertifiedSemistableOnly(w) => {
            ensure(is_invariant(&data, &w.basis).unwrap(), || {
                "witness not invariant".into()
            })?
        }
        _ => return Err(format!("R1+R1 is {}", v.label())),
    }

    let mut cases: Vec<(Representation<Rational>, Vec<Rational>, usize)> = Vec::new();
    for seed in 0..5 {
        cases.push((sample(&loops(1), &[1], &[int(1)], seed), vec![int(0)], 2));
        cases.push((sample(&loops(1), &[2], &[int(-1)], seed), vec![int(0)], 2));
    }
    let tq = [int(-1), int(-1)];
    let thetas = [[int(1), int(-1)], [int(-1), int(1)], [int(0), int(0)]];
    for seed in 0..6 {
        cases.push((
            sample(&two_vertex(), &[1, 1], &tq, seed),
            thetas[seed as usize % 3].to_vec(),
            2,
        ));
    }
    for seed in 0..3 {
        cases.push((sample(&loops(2), &[1], &[int(1)], seed), vec![int(0)], 4));
    }
    cases.push((r1(), vec![int(0)], 2));
    cases.push((sum, vec![int(0)], 2));
    let a = sample(&two_vertex(), &[1, 1], &tq, 10);
    let b = sample(&two_vertex(), &[1, 1], &tq, 11);
    let ab = a.direct_sum(&b).unwrap();
    cases.push((ab.clone(), vec![int(1), int(-1)], 2));
    cases.push((ab, vec![int(-1), int(1)], 2));

    let total: usize = cases.len();
    for (k, (rep, theta, n)) in cases.iter().enumerate() {
        let sum_alpha: usize = rep.alpha().iter().sum();
        ensure(sum_alpha <= 6, || format!("case {k} too large"))?;
        let p = usable_prime(&LinearData::from_rep(rep), &(), 5, &cfg)
            .map_err(|e| format!("case {k}: {e}"))?;
        let c = ind_compat_report(rep, theta, *n, None, p, &cfg)
            .map_err(|e| format!("case {k}: {e}"))?;
        ensure(c.agree, || {
            format!("case {k}: {} vs {}", c.base.label(), c.induced.label())
        })?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "R1 stable, R1+R1 semistable with exact witness, {total} induction cases agree"
    ))
}

/// Sampled representations used for the Ext criteria, grouped by family.
struct Family {
    q: Vec<Rational>,
    n: usize,
    reps: Vec<Representation<Rational>>,
}

fn families() -> Vec<Family> {
    let fam = |dq: DoubledQuiver,
               alpha: &[usize],
               q: Vec<Rational>,
               n: usize,
               seeds: std::ops::Range<u64>| Family {
        reps: seeds.map(|s| sample(&dq, alpha, &q, s)).collect(),
        q,
        n,
    };
    vec![
        fam(loops(1), &[2], vec![int(-1)], 2, 0..4),
        fam(loops(2), &[2], vec![int(1)], 4, 0..3),
        fam(loops(1), &[1], vec![int(1)], 2, 0..3),
        fam(two_vertex(), &[1, 1], vec![int(-1), int(-1)], 2, 0..3),
    ]
}

fn stable(rep: &Representation<Rational>) -> bool {
    let theta = vec![int(0); rep.alpha().len()];
    let theta = if rep.alpha().len() == 2 {
        vec![int(1), int(-1)]
    } else {
        theta
    };
    let (data, cfg) = (LinearData::from_rep(rep), SearchConfig::default());
    usable_prime(&data, &(), 5, &cfg)
        .and_then(|p| verdict(&data, &(), &theta, p, &cfg))
        .is_ok_and(|v| v.is_stable() == Some(true))
}

fn criterion_4(fams: &[Family]) -> Outcome {
    let mut pairs = 0;
    let mut stable_points = 0;
    for f in fams {
        let mods: Vec<_> = f
            .reps
            .iter()
            .map(|r| induce(r, f.n, None).unwrap())
            .collect();
        for v in &mods {
            for w in &mods {
                let p = ExtPair::new(v, w, &f.q).map_err(|e| e.to_string())?;
                let r = complex_report(&p).map_err(|e| e.to_string())?;
                ensure(r.is_complex && r.euler_ok && r.rank_matches, || {
                    format!("{r:?}")
                })?;
                pairs += 1;
            }
        }
        for rep in &f.reps {
            if stable(rep) {
                let t = tangent_dim(rep, &f.q).map_err(|e| e.to_string())?;
                let e = expected_rank(rep.quiver(), rep.alpha());
                ensure(e == t.moduli_dim - 2, || {
                    format!("expected rank {e}, moduli dim {}", t.moduli_dim)
                })?;
                stable_points += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs are complexes with exact Euler and rank identities, {stable_points} stable points"))
}

fn criterion_5(fams: &[Family]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for f in fams {
        let mods: Vec<_> = f
            .reps
            .iter()
            .map(|r| induce(r, f.n, None).unwrap())
            .collect();
        for (i, v) in mods.iter().enumerate() {
            for (j, w) in mods.iter().enumerate() {
                let r = complex_report(&ExtPair::new(v, w, &f.q).unwrap())
                    .map_err(|e| e.to_string())?;
                ensure(r.h1 == r.hom_from_w && r.h_minus1 == r.hom_into_w, || {
                    format!("{r:?}")
                })?;
                let (a, b) = (&f.reps[i], &f.reps[j]);
                if stable(a) && stable(b) {
                    let iso = rep_hom(a, b).unwrap().len();
                    let want = if i == j { 1 } else { iso };
                    ensure((r.h_minus1, r.h1) == (want, want), || {
                        format!(
                            "pair ({i},{j}): h = ({}, {}), want {want}",
                            r.h_minus1, r.h1
                        )
                    })?;
                }
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 30, || format!("only {pairs} pairs"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{pairs} pairs"))
}

fn criterion_6(fams: &[Family]) -> Outcome {
    let mut pairs = 0;
    for f in fams {
        let mods: Vec<_> = f
            .reps
            .iter()
            .map(|r| induce(r, f.n, None).unwrap())
            .collect();
        for v in &mods {
            for w in &mods {
                let r = phi_correspondence(&ExtPair::new(v, w, &f.q).unwrap())
                    .map_err(|e| e.to_string())?;
                ensure(r.ok(), || format!("{r:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn criterion_7(fams: &[Family]) -> Outcome {
    let mut tested = 0;
    for f in fams {
        let mods: Vec<_> = f
            .reps
            .iter()
            .map(|r| induce(r, f.n, None).unwrap())
            .collect();
        for v in &mods {
            for w in mods.iter().take(2) {
                let r = verify_bimodule_memberships(&ExtPair::new(v, w, &f.q).unwrap())
                    .map_err(|e| e.to_string())?;
                ensure(r.all_pass(), || format!("{r:?}"))?;
                tested += 1;
            }
        }
    }
    let z3 = CycCtx::new(3).unwrap();
    let q = [cyclotomic_root(&z3, 1)];
    let rep = sample(&loops(2), &[3], &q, 0);
    let m = induce(&rep, 4, None).unwrap();
    let r = verify_bimodule_memberships(&ExtPair::new(&m, &m, &q).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(r.all_pass(), || format!("z3: {r:?}"))?;
    tested += 1;
    Ok(format!("{tested} instances"))
}

fn criterion_8() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances");
    let files = ["r1.toml", "two_vertex.toml", "prime_loop.toml"];
    let mut loaded = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(dir.join(f)).map_err(|e| e.to_string())?;
        loaded.push(
            load(
                f,
                &text,
                Overrides {
                    seed: Some(42),
                    prime: None,
                },
            )
            .map_err(|e| e.to_string())?,
        );
    }
    let opts = Options { first_order: true };
    let a = run_all(&loaded, Command::VerifyAll, opts, 1).render();
    let b = run_all(&loaded, Command::VerifyAll, opts, 3).render();
    ensure(a == b, || "in-process reports differ".into())?;
    let run = || {
        let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_mqv"));
        cmd.args(["verify-all", "--seed", "42"]);
        for f in files {
            cmd.arg("--instance").arg(dir.join(f));
        }
        cmd.output().map(|o| o.stdout)
    };
    let (x, y) = (
        run().map_err(|e| e.to_string())?,
        run().map_err(|e| e.to_string())?,
    );
    ensure(!x.is_empty() && x == y, || "binary reports differ".into())?;
    Ok(format!("{} byte reports identical", x.len()))
}

fn main() {
    let fams = families();
    let results: Vec<(&str, Outcome)> = vec![
        ("symbolic identities", criterion_1()),
        ("sampler soundness", criterion_2()),
        ("stability and induction", criterion_3()),
        ("complex structure", criterion_4(&fams)),
        ("Ext cohomology", criterion_5(&fams)),
        ("phi correspondence", criterion_6(&fams)),
        ("membership checks", criterion_7(&fams)),
        ("determinism", criterion_8()),
    ];
    let mut failed = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {e}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

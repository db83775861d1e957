//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use kappa_core::bounds::{
    delta_surface, euler_bounds_check, kappa_certificate, lower_bound_free_product, rho,
    GroupProfile,
};
use kappa_core::homology::{betti_numbers, cup_pairing_on_h1, has_property_a};
use kappa_core::reduce::{kill_step, simplify_pipeline, PreservationSpec};
use kappa_core::report::{run_report, ReportOptions};
use kappa_core::surfaces::{
    attach_circle, catalog, classify, desk_search, parity_obstruction_search, wedge,
};
use kappa_core::{Label, SurfaceId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sid(s: &str) -> SurfaceId {
    s.parse().unwrap()
}

fn c1_rho() -> Check {
    let got: Vec<i64> = [2, 1, 0, -1, -2].iter().map(|&k| rho(k).unwrap()).collect();
    ensure(got == [4, 6, 7, 8, 9], || format!("rho(2..-2) = {got:?}"))?;
    Ok(format!("rho(2..-2) = {got:?}"))
}

fn c2_delta() -> Check {
    let want = [
        ("S2", 4),
        ("N1", 10),
        ("M1", 14),
        ("N2", 16),
        ("N3", 20),
        ("M2", 24),
    ];
    for (s, d) in want {
        let got = delta_surface(sid(s));
        ensure(got == d, || format!("delta({s}) = {got}, want {d}"))?;
        let entry = catalog(sid(s)).map_err(|e| e.to_string())?;
        let a2 = entry.complex.num_triangles() as i64;
        ensure(entry.minimal && a2 == d, || {
            format!("catalog {s} has {a2} triangles")
        })?;
    }
    Ok("4 10 14 16 20 24; catalog counts equal".into())
}

fn c3_kappa() -> Check {
    let mut parts = Vec::new();
    for s in ["N1", "M1", "N2", "N3", "M2", "M3", "N4", "N5"] {
        let c = kappa_certificate(sid(s)).map_err(|e| e.to_string())?;
        let gap = if ["N2", "N3", "M2"].contains(&s) {
            2
        } else {
            0
        };
        ensure(
            c.kappa == c.lower_bound + gap && c.exceptional == (gap == 2),
            || format!("{s}: kappa {} lower {}", c.kappa, c.lower_bound),
        )?;
        if let Some(w) = c.upper_bound_witness {
            ensure(w as i64 == c.kappa, || format!("{s}: witness {w}"))?;
        }
        parts.push(format!("{s}:{}/{}", c.kappa, c.lower_bound));
    }
    ensure(kappa_certificate(SurfaceId::SPHERE).is_err(), || {
        "sphere certified".into()
    })?;
    Ok(parts.join(" "))
}

fn c4_free_product() -> Check {
    let torus = catalog(SurfaceId::TORUS).unwrap().complex;
    let sphere = catalog(SurfaceId::SPHERE).unwrap().complex;
    let k = attach_circle(&torus, &Label::Int(0)).map_err(|e| e.to_string())?;
    let k = wedge(&k, &Label::Int(0), &sphere, &Label::Int(1)).map_err(|e| e.to_string())?;
    let spec = PreservationSpec::new(vec![vec![torus.triangle_labels(torus.triangles()[0])]]);
    let (l, trace) = simplify_pipeline(&k, &spec, false).map_err(|e| e.to_string())?;
    ensure(classify(&l).surface == Some(SurfaceId::TORUS), || {
        "L is not a torus".into()
    })?;
    ensure(l.num_triangles() == 14, || {
        format!("alpha2(L) = {}", l.num_triangles())
    })?;
    ensure(trace.circle_summands == 1, || {
        format!("m = {}", trace.circle_summands)
    })?;
    ensure(trace.killed_triangles.len() == 1, || {
        format!("killed {}", trace.killed_triangles.len())
    })?;
    ensure(
        l.euler_characteristic()
            == k.euler_characteristic() - trace.killed_triangles.len() as i64
                + trace.circle_summands as i64
            && trace.euler_balanced(),
        || "chi bookkeeping".into(),
    )?;
    let lb = lower_bound_free_product(&GroupProfile::surface(SurfaceId::TORUS)).lower_bound;
    ensure(lb == Some(14), || format!("lower bound {lb:?}"))?;
    // the torus with one circle attains the bound
    let input = attach_circle(&torus, &Label::Int(0)).unwrap();
    let opts = ReportOptions {
        surface: Some(SurfaceId::TORUS),
        ..Default::default()
    };
    let r = run_report("torus+circle", &input, &opts).map_err(|e| e.to_string())?;
    ensure(r.success && r.input.counts[2] == 14, || {
        "report not certified".into()
    })?;
    Ok("L = torus, 14 triangles, m = 1, killed 1; kappa(Z^2 * Z) = 14".into())
}

fn c5_kill_steps() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut steps = 0;
    for run in 0..100 {
        let (mut k, mut surface_triangle) = common::random_wedge(&mut rng, 60);
        if run % 2 == 0 {
            (k, surface_triangle) = common::relabel_keep(&k, &mut rng, &surface_triangle);
        }
        let spec = if run % 3 == 0 {
            PreservationSpec::default()
        } else {
            PreservationSpec::new(vec![vec![surface_triangle.clone()]])
        };
        let mut m = k;
        ensure(m.num_triangles() <= 60, || {
            format!("run {run}: too many triangles")
        })?;
        while common::betti(&m).2 > spec.target_rank() {
            let before = common::betti(&m);
            let (next, step) = kill_step(&m, &spec).map_err(|e| format!("run {run}: {e}"))?;
            let after = common::betti(&next);
            ensure(
                (after.0, after.1) == (before.0, before.1) && after.2 + 1 == before.2,
                || {
                    format!(
                        "run {run}: {before:?} -> {after:?} removing {:?}",
                        step.triangle
                    )
                },
            )?;
            ensure(common::functionals_surjective(&next, &spec), || {
                format!("run {run}: surjectivity lost removing {:?}", step.triangle)
            })?;
            m = next;
            steps += 1;
        }
    }
    Ok(format!("100 runs, {steps} kill steps, 0 violations"))
}

fn c6_property_a() -> Check {
    let mut checked = 0;
    let mut held = 0;
    for s in common::MINIMAL {
        let k = common::minimal(s);
        let (lib, brute) = (has_property_a(&k).holds, common::property_a_brute(&k));
        ensure(lib && brute, || {
            format!("{s}: library {lib}, brute {brute}")
        })?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut random = 0;
    while random < 50 {
        let k = if random % 2 == 0 {
            common::random_wedge(&mut rng, 40).0
        } else {
            common::random_complex(&mut rng, 7, 6 + random % 9, random % 4)
        };
        if betti_numbers(&k).b1 > 10 {
            continue;
        }
        let (lib, brute) = (has_property_a(&k).holds, common::property_a_brute(&k));
        ensure(lib == brute, || {
            format!("random complex {random}: library {lib}, brute {brute}")
        })?;
        held += usize::from(lib);
        random += 1;
        checked += 1;
    }
    Ok(format!(
        "{checked} complexes agree ({held} of 50 random have property (A))"
    ))
}

fn c7_pairings() -> Check {
    let t = cup_pairing_on_h1(&common::minimal("M1"));
    let p = cup_pairing_on_h1(&common::minimal("N1"));
    let m2 = cup_pairing_on_h1(&common::minimal("M2"));
    ensure(
        t.rank() == 2 && common::scalar_cup_rank(&common::minimal("M1")) == 2,
        || format!("torus rank {}", t.rank()),
    )?;
    ensure(!p.is_zero() && p.rank() == 1, || "RP2 pairing zero".into())?;
    ensure(
        m2.rank() == 4 && common::scalar_cup_rank(&common::minimal("M2")) == 4,
        || format!("M2 rank {}", m2.rank()),
    )?;
    Ok("ranks: torus 2, RP2 1, M2 4".into())
}

fn c8_euler() -> Check {
    let mut parts = Vec::new();
    for (s, slack) in [("S2", 0), ("M1", 0), ("N2", 2), ("N3", 2), ("M2", 2)] {
        let r = euler_bounds_check(&common::minimal(s));
        ensure(r.applicable && r.holds(), || format!("{s}: {r:?}"))?;
        ensure(r.rho_slack() == Some(slack), || {
            format!("{s}: slack {:?}", r.rho_slack())
        })?;
        if slack == 0 {
            ensure(
                r.alpha0 as i64 == r.rho_value.unwrap() && r.alpha2_slack() == Some(0),
                || format!("{s}: not tight"),
            )?;
        }
        parts.push(format!("{s}:+{slack}"));
    }
    Ok(parts.join(" "))
}

fn c9_search() -> Check {
    let rp2 = desk_search(6, SurfaceId::PROJECTIVE_PLANE, None).map_err(|e| e.to_string())?;
    ensure(rp2.min_triangles == Some(10), || {
        format!("RP2: {:?}", rp2.min_triangles)
    })?;
    let w = rp2.witness_complex().unwrap();
    ensure(
        classify(&w).surface == Some(SurfaceId::PROJECTIVE_PLANE),
        || "bad witness".into(),
    )?;
    let torus = desk_search(6, SurfaceId::TORUS, None).map_err(|e| e.to_string())?;
    ensure(torus.min_triangles.is_none(), || {
        format!("torus: {:?}", torus.min_triangles)
    })?;
    Ok("(6, RP2) -> 10; (6, torus) -> none".into())
}

fn c10_parity() -> Check {
    let r = parity_obstruction_search(8, None).map_err(|e| e.to_string())?;
    ensure(r.found.is_empty(), || {
        format!("{} complexes found", r.found.len())
    })?;
    Ok(format!("empty after {} nodes", r.nodes))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("rho table", c1_rho, Duration::from_millis(1)),
        ("delta table", c2_delta, Duration::from_secs(1)),
        ("kappa certificates", c3_kappa, Duration::from_secs(1)),
        (
            "free-product demo",
            c4_free_product,
            Duration::from_secs(10),
        ),
        (
            "kill-step invariants",
            c5_kill_steps,
            Duration::from_secs(120),
        ),
        (
            "property (A) oracle",
            c6_property_a,
            Duration::from_secs(60),
        ),
        ("cup pairing ranks", c7_pairings, Duration::from_secs(5)),
        ("euler tightness", c8_euler, Duration::from_secs(1)),
        ("desk search", c9_search, Duration::from_secs(60)),
        ("parity obstruction", c10_parity, Duration::from_secs(120)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "criterion {:>2} {tag} [{elapsed:.2?}] {name}: {detail}",
            i + 1
        );
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}

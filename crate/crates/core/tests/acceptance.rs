//! Acceptance suite: one line per criterion, with pinned time limits.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use thomas::algthomas::{algebraic_decompose, are_disjoint, count_solutions, member, verify_simple};
use thomas::control::{flat_report, invert, verify_witness, Verdict};
use thomas::diffring::DiffRing;
use thomas::diffthomas::{
    differential_decompose, member_diff, member_radical, passivity_check, verify_simple_differential, Passivity,
};
use thomas::janet::{check_janet_basis, enumerate, janet_assign, janet_complete, DiffMonomial};
use thomas::polyring::{discriminant, pseudo_divide, Int, Monomial, Poly, Var};
use thomas::sysfile::{self, SystemFile};
use thomas::system::{Decomposition, Options, System};
use thomas::Error;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(text: &str) -> (SystemFile, System) {
    let f = sysfile::parse(text).unwrap();
    let s = f.system().unwrap();
    (f, s)
}

fn decompose(s: &System) -> Result<Decomposition, String> {
    let o = Options::factorized();
    if s.ring.n() == 0 { algebraic_decompose(s, &o) } else { differential_decompose(s, &o) }.map_err(|e| e.to_string())
}

fn unit_eq(a: &Poly, b: &Poly) -> bool {
    a.primitive_int() == b.primitive_int() || a.primitive_int() == -&b.primitive_int()
}

fn idx(d: &Decomposition, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| d.ring.indet_index(n).unwrap()).collect()
}

fn diff_sound(ring: &DiffRing, s: &System, d: &Decomposition) -> Outcome {
    for sys in &d.systems {
        verify_simple_differential(ring, sys).map_err(|e| format!("not simple: {}", e))?;
        for p in &s.equations {
            ensure!(member_diff(ring, p, sys), "an input equation is not in a system's ideal");
        }
    }
    Ok(())
}

fn circle() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/circle.sys"));
    let r = &s.ring;
    let d = decompose(&s)?;
    let p = |t: &str| f.parse_poly(r, t).unwrap();
    ensure!(d.len() == 2, "{} systems", d.len());
    ensure!(d.systems[0].equation_polys() == vec![p("x^2 + y^2 - 1")], "first system equations");
    ensure!(d.systems[0].inequation_polys() == vec![p("y^2 - 1")], "first system inequations");
    ensure!(d.systems[1].equation_polys() == vec![p("x"), p("y^2 - 1")], "second system equations");
    ensure!(d.systems[1].inequations.is_empty(), "second system inequations");
    for sys in &d.systems {
        verify_simple(r, sys).map_err(|e| e.to_string())?;
        ensure!(member(r, &s.equations[0], sys), "circle not a member");
    }
    ensure!(are_disjoint(r, &d.systems[0], &d.systems[1]).map_err(|e| e.to_string())?, "systems overlap");
    Ok(())
}

fn stereographic() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/stereographic.sys"));
    let r = &s.ring;
    let d = decompose(&s)?;
    let px = f.parse_poly(r, "(1 + t^2)*x - 2*t").unwrap();
    let py = f.parse_poly(r, "(1 + t^2)*y - t^2 + 1").unwrap();
    let (x, y) = (r.jet("x", &[]), r.jet("y", &[]));
    let hit = d.systems.iter().any(|sys| {
        member(r, &px, sys)
            && member(r, &py, sys)
            && sys.equation_with_leader(x).is_some_and(|e| e.poly.degree(x) == 1)
            && sys.equation_with_leader(y).is_some_and(|e| e.poly.degree(y) == 1)
    });
    ensure!(hit, "no system carries the parametrisation");
    Ok(())
}

fn ode() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/ode.sys"));
    let r = &s.ring;
    let (u, ux) = (r.jet("u", &[0]), r.jet("u", &[1]));
    let want = &Poly::constant(-64) * &f.parse_poly(r, "u^3*(27*u - 4*x^3)").unwrap();
    ensure!(discriminant(&s.equations[0], ux) == want, "discriminant differs");
    let d = decompose(&s)?;
    ensure!(d.len() == 2, "{} systems", d.len());
    let leaders = |i: usize| {
        let sys = &d.systems[i];
        (sys.equations.iter().map(|e| e.leader).collect::<Vec<Var>>(), sys.inequations.iter().map(|q| q.leader).collect::<Vec<Var>>())
    };
    ensure!(leaders(0) == (vec![ux], vec![u]), "generic system leaders");
    ensure!(leaders(1) == (vec![u], vec![]), "singular system leaders");
    diff_sound(r, &s, &d)
}

fn pde() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/pde.sys"));
    let r = &s.ring;
    let p = |t: &str| f.parse_poly(r, t).unwrap();
    let d = decompose(&s)?;
    ensure!(d.len() == 2, "{} systems", d.len());
    ensure!(d.systems[0].equation_polys() == vec![p("u[x] - u^2"), p("u[y] + u^2")], "first system");
    ensure!(d.systems[0].inequations.is_empty(), "first system inequations");
    ensure!(d.systems[1].equation_polys() == vec![p("u[x] - u^2"), p("u[y] - u^2")], "second system");
    ensure!(d.systems[1].inequation_polys() == vec![p("u")], "second system inequations");
    match passivity_check(r, &[p("u[x] - u^2"), p("u[y,y] - 2*u^3")]).map_err(|e| e.to_string())? {
        Passivity::Remainder(rem) => ensure!(unit_eq(&rem, &p("(u[y] + u^2)*(u[y] - u^2)")), "remainder differs"),
        other => return Err(format!("intermediate pair: {:?}", other)),
    }
    diff_sound(r, &s, &d)
}

fn janet_tables() -> Outcome {
    const T: bool = true;
    const F: bool = false;
    let m: Vec<DiffMonomial> = vec![vec![2, 1, 0], vec![2, 0, 1], vec![0, 2, 1], vec![0, 1, 2]];
    let t = janet_assign(&m).map_err(|e| e.to_string())?;
    ensure!(t.monomials == m, "assignment order");
    ensure!(t.admissible == vec![vec![T, T, T], vec![T, F, T], vec![F, T, T], vec![F, F, T]], "first table");
    let (c, _) = janet_complete(&m).map_err(|e| e.to_string())?;
    ensure!(
        c.monomials == vec![vec![2, 1, 0], vec![2, 0, 1], vec![1, 2, 1], vec![1, 1, 2], vec![0, 2, 1], vec![0, 1, 2]],
        "completed monomials"
    );
    ensure!(
        c.admissible
            == vec![vec![T, T, T], vec![T, F, T], vec![F, T, T], vec![F, F, T], vec![F, T, T], vec![F, F, T]],
        "second table"
    );
    Ok(())
}

fn cauchy_riemann() -> Outcome {
    let (mut f, s) = load(include_str!("../../../systems/cauchy_riemann.sys"));
    let d = decompose(&s)?;
    let v = f.parse_poly(&s.ring, "v[x,x] + v[y,y]").unwrap();
    ensure!(member_radical(&d, &v), "v harmonic not found under u >> v");
    f.set_blocks(vec![vec!["v".into()], vec!["u".into()]]);
    let s2 = f.system().unwrap();
    let d2 = decompose(&s2)?;
    let u = f.parse_poly(&s2.ring, "u[x,x] + u[y,y]").unwrap();
    ensure!(member_radical(&d2, &u), "u harmonic not found under v >> u");
    Ok(())
}

fn unicycle() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/unicycle.sys"));
    let d = decompose(&s)?;
    let r = &d.ring;
    let [u1, u2] = idx(&d, &["u1", "u2"])[..] else { unreachable!() };
    let w1 = f.parse_poly(r, "u1^2 - y1[t]^2 - y2[t]^2").unwrap();
    let w2 = f.parse_poly(r, "(y1[t]^2 + y2[t]^2)*u2 - y1[t]*y2[t,t] + y2[t]*y1[t,t]").unwrap();
    let rep = invert(&d, &idx(&d, &["y1", "y2"]), &[u1, u2], &[]).map_err(|e| e.to_string())?;
    let generic = rep.systems.iter().position(|s| s.verdict == Verdict::Holds).ok_or("no invertible system")?;
    let sys = &d.systems[generic];
    ensure!(verify_witness(r, sys, u1, &w1) && verify_witness(r, sys, u2, &w2), "witnesses fail on the generic system");
    let found = &rep.systems[generic].witnesses;
    ensure!(unit_eq(&found[0].poly, &w1) && unit_eq(&found[1].poly, &w2), "reported witnesses differ");
    ensure!(d.len() == 7, "{} systems", d.len());
    Ok(())
}

fn crane() -> Outcome {
    let (_, s) = load(include_str!("../../../systems/crane.sys"));
    let d = decompose(&s)?;
    let rep = flat_report(&d, &idx(&d, &["x", "z"]), &[]).map_err(|e| e.to_string())?;
    ensure!(rep.count(Verdict::Holds) == 1, "flat on {} systems", rep.count(Verdict::Holds));
    for sys in rep.systems.iter().filter(|s| s.verdict == Verdict::Fails) {
        ensure!(
            sys.reasons.iter().all(|r| r.contains("element of K{Y}") || r.contains("is not observable")),
            "unexplained verdict: {:?}",
            sys.reasons
        );
    }
    Ok(())
}

fn tank() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/tank.sys"));
    let d = decompose(&s)?;
    ensure!(d.len() == 3, "{} systems", d.len());
    let consts = idx(&d, &["c1", "c2"]);
    let rep = flat_report(&d, &idx(&d, &["c", "sV"]), &consts).map_err(|e| e.to_string())?;
    ensure!(rep.systems[0].verdict == Verdict::Holds, "generic system not flat: {:?}", rep.systems[0].reasons);
    let c12 = f.parse_poly(&d.ring, "c1 - c2").unwrap();
    ensure!(!member_diff(&d.ring, &c12, &d.systems[0]), "generic system forces c1 = c2");
    for sys in &d.systems[1..] {
        ensure!(member_diff(&d.ring, &c12, sys), "degenerate system without c1 = c2");
    }
    diff_sound(&d.ring, &s, &d)
}

fn pfaffian() -> Outcome {
    let (f, s) = load(include_str!("../../../systems/pfaffian.sys"));
    let d = decompose(&s)?;
    let r = &d.ring;
    ensure!(d.len() == 3, "{} systems", d.len());
    let a22 = r.jet("a", &[0, 2, 0]);
    let n = d.systems.iter().filter(|sys| sys.equation_with_leader(a22).is_some()).count();
    ensure!(n == 1, "{} systems with leader a[x2,x2]", n);
    let a = r.indet_index("a").unwrap();
    let generic = &d.systems[0];
    ensure!(!member_diff(r, &Poly::var(a22), generic), "generic system forces a[x2,x2] = 0");
    let on_a: Vec<Var> = generic.equations.iter().map(|e| e.leader).filter(|v| v.indet() == Some(a)).collect();
    ensure!(on_a == vec![r.jet("a", &[1, 0, 0]), r.jet("a", &[0, 0, 1])], "extra equations on a: {:?}", on_a);
    let ineqs: Vec<Poly> =
        generic.inequations.iter().filter(|q| q.leader.indet() == Some(a)).map(|q| q.poly.clone()).collect();
    ensure!(ineqs == vec![f.parse_poly(r, "a").unwrap()], "inequations on a");
    diff_sound(r, &s, &d)
}

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn poly_strategy(vars: Vec<Var>, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let nv = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, nv), -5i64..=5), 1..=max_terms).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(es, k)| (Monomial::from_pairs(vars.iter().copied().zip(es).collect()), Int::from(k)))
            .collect();
        Poly::from_terms(terms)
    })
}

fn properties() -> Outcome {
    let (x, y, t) = (Var::indet_var(0), Var::indet_var(1), Var::param(0));
    let pair = (poly_strategy(vec![x, y, t], 6, 3), poly_strategy(vec![x, y, t], 4, 2));
    runner(500, 1)
        .run(&pair, |(p1, p2)| {
            if p2.degree(x) == 0 {
                return Ok(());
            }
            let pd = pseudo_divide(&p1, &p2, x);
            prop_assert_eq!(&pd.remainder, &(&(&pd.c1 * &p1) - &(&pd.c2 * &p2)));
            prop_assert!(pd.remainder.degree(x) < p2.degree(x));
            Ok(())
        })
        .map_err(|e| format!("pseudo-division: {}", e))?;

    let sets = (1usize..=3).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=5));
    runner(200, 2)
        .run(&sets, |m| {
            let t = janet_assign(&m).unwrap();
            let mut overlap = false;
            enumerate(t.monomials[0].len(), 7, &mut |e| {
                overlap |= (0..t.monomials.len()).filter(|&i| t.cone_contains(i, e)).count() > 1;
            });
            prop_assert!(!overlap);
            prop_assert!(check_janet_basis(&janet_complete(&m).unwrap().0, 7));
            Ok(())
        })
        .map_err(|e| format!("Janet cones: {}", e))?;

    for seed in 0..100 {
        let tri = common::triangular(0xacce_0000 + seed);
        let d = algebraic_decompose(&tri.system, &Options::factorized()).map_err(|e| e.to_string())?;
        let got = count_solutions(&d);
        match common::back_substitution_count(&tri) {
            Some(n) => ensure!(got == Ok(n), "counting, seed {}: {:?} vs {}", seed, got, n),
            None => ensure!(got == Err(Error::NotZeroDimensional), "counting, seed {}: {:?} vs infinite", seed, got),
        }
    }

    for seed in 0..100 {
        let sys = common::random_system(0x5eed_0000 + seed);
        let d = algebraic_decompose(&sys, &Options::factorized()).map_err(|e| e.to_string())?;
        for s in &d.systems {
            verify_simple(&sys.ring, s).map_err(|e| format!("soundness, seed {}: {}", seed, e))?;
            for p in &sys.equations {
                ensure!(member(&sys.ring, p, s), "soundness, seed {}: input not a member", seed);
            }
        }
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let disjoint = are_disjoint(&sys.ring, &d.systems[i], &d.systems[j]).map_err(|e| e.to_string())?;
                ensure!(disjoint, "disjointness, seed {}: systems {} and {} overlap", seed, i, j);
            }
        }
        common::check_partition(&sys, &d, 3).map_err(|e| format!("partition, seed {}: {}", seed, e))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("circle decomposition", circle, 1_000),
        ("stereographic projection", stereographic, 1_000),
        ("ODE singular solutions", ode, 1_000),
        ("PDE example", pde, 1_000),
        ("Janet tables", janet_tables, 100),
        ("Cauchy-Riemann elimination", cauchy_riemann, 1_000),
        ("unicycle inversion", unicycle, 30_000),
        ("crane flat output", crane, 30_000),
        ("stirred tank", tank, 10_000),
        ("Pfaffian system", pfaffian, 10_000),
        ("property suites", properties, 300_000),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check, limit_ms)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = t.elapsed();
        if outcome.is_ok() && took > Duration::from_millis(*limit_ms) {
            outcome = Err("over the time limit".into());
        }
        let ms = took.as_secs_f64() * 1e3;
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({:.0} ms, limit {} ms)", i + 1, name, ms, limit_ms),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.0} ms, limit {} ms): {}", i + 1, name, ms, limit_ms, why);
            }
        }
    }
    let total = start.elapsed();
    if total > Duration::from_secs(300) {
        failed += 1;
        println!("FAIL    whole suite over 300 s ({:.1} s)", total.as_secs_f64());
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed.min(criteria.len()), criteria.len(), total.as_secs_f64());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use mpres_core::classifier::{classify, classify_m, classify_um, validate_inclusions};
use mpres_core::corpus::{fixture, fixtures, random_affine, random_affine_corpus};
use mpres_core::finspace::{
    chain_bound_check, discreteness_profile, random_metric, random_path, random_ultrametric, realize_triplet,
    transform_space, validate_metric, validate_ultrametric, Axiom, Mode, Shape, Triplet,
};
use mpres_core::properties::{global_continuity_report, infimum_positive, is_concave, is_continuous_at_zero};
use mpres_core::rational::{frac, int, ExtRational, Rational};
use mpres_core::rng::Lcg;
use mpres_core::{PiecewiseFunction, Status};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, PiecewiseFunction)> {
    let mut out: Vec<(String, PiecewiseFunction)> = fixtures().into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    out.extend(random_affine_corpus(60, 1000).into_iter().enumerate().map(|(i, f)| (format!("affine#{}", 1000 + i), f)));
    out
}

fn classification_table() -> Outcome {
    use Status::{Proven as P, Refuted as R};
    // (fixture, [U, M, MU, UM]) with None where no claim is made
    let table: [(&str, [Option<Status>; 4]); 6] = [
        ("x_over_1px", [Some(P), Some(P), Some(R), Some(P)]),
        ("min1x", [Some(P), Some(P), Some(R), Some(P)]),
        ("xsq", [Some(P), Some(R), None, None]),
        ("staircase", [Some(P), Some(P), Some(R), None]),
        ("ex55", [Some(R), Some(R), None, Some(P)]),
        ("step", [None, None, Some(P), None]),
    ];
    for (name, expected) in table {
        let r = classify(&fixture(name));
        let got = [r.in_u.status, r.in_m.status, r.in_mu.status, r.in_um.status];
        for (k, class) in ["U", "M", "MU", "UM"].iter().enumerate() {
            if let Some(e) = expected[k] {
                check(got[k] == e, || format!("{name}: {class} is {} (expected {e})", got[k]))?;
            }
        }
    }
    let cc = is_concave(&fixture("staircase"));
    check(cc.is_refuted(), || format!("staircase concavity is {}", cc.status))?;
    Ok("6 fixtures, 19 verdicts plus staircase concavity".into())
}

fn witness_fidelity() -> Outcome {
    let sq = classify_m(&fixture("xsq"));
    let w = sq.realized().ok_or("x^2: no realized witness")?;
    let v = &w.failed_axiom;
    check(v.axiom == Axiom::M3 && v.lhs == int(4) && v.rhs == int(2), || format!("x^2: {v}"))?;
    let ex = fixture("ex55");
    let m = classify_m(&ex);
    let w = m.realized().ok_or("ex55: no realized witness")?;
    let t = w.triplet().ok_or("ex55: witness is not a triplet")?;
    let v = &w.failed_axiom;
    check((t.a.clone(), t.b.clone(), t.c.clone()) == (int(1), frac(1, 3), frac(4, 3)), || format!("ex55 triplet ({}, {}, {})", t.a, t.b, t.c))?;
    check(ex.eval(&t.b) == frac(1, 3) && ex.eval(&t.c) == frac(1, 2), || "ex55 image values".into())?;
    check(v.axiom == Axiom::M3 && v.lhs == int(1) && v.rhs == frac(1, 3) + frac(1, 2), || format!("ex55: {v}"))?;
    check(w.verify(&ex), || "ex55 witness does not re-verify".into())?;
    Ok("4 > 2 and 1 > 1/3 + 1/2".into())
}

fn c_variant_boundary() -> Outcome {
    for (name, proven) in [
        ("cvariant_0.1", false),
        ("cvariant_0.4", false),
        ("cvariant_0.49", false),
        ("cvariant_0.5", true),
        ("cvariant_0.6", true),
        ("cvariant_1", true),
    ] {
        let v = classify_um(&fixture(name));
        let want = if proven { Status::Proven } else { Status::Refuted };
        check(v.status == want, || format!("{name}: UM is {}", v.status))?;
    }
    Ok("refuted below 1/2, proven from 1/2".into())
}

fn inclusion_chain() -> Outcome {
    let corpus = corpus();
    for (name, f) in &corpus {
        let broken = validate_inclusions(&classify(f));
        check(broken.is_empty(), || format!("{name}: {broken:?}"))?;
    }
    Ok(format!("{} functions", corpus.len()))
}

/// A triangle triplet with sides near the breakpoints half of the time.
fn random_delta(rng: &mut Lcg) -> (Rational, Rational, Rational) {
    let (b, c) = if rng.coin() { (rng.scaled(12), rng.scaled(12)) } else { (rng.rational(), rng.rational()) };
    let lo = if b > c { &b - &c } else { &c - &b };
    let hi = &b + &c;
    let a = &lo + (&hi - &lo) * rng.unit();
    (a, b, c)
}

fn affine_oracle() -> Outcome {
    let (mut proven, mut refuted) = (0, 0);
    for seed in 0..25u64 {
        let f = random_affine(5000 + seed);
        let v = classify_m(&f);
        match v.status {
            Status::Proven => {
                proven += 1;
                let mut rng = Lcg::new(seed);
                for _ in 0..10_000 {
                    let (a, b, c) = random_delta(&mut rng);
                    check(f.eval(&a) <= f.eval(&b) + f.eval(&c), || format!("seed {seed}: ({a}, {b}, {c}) contradicts Proven\n{f}"))?;
                }
            }
            Status::Refuted => {
                refuted += 1;
                let ok = v.realized().is_some_and(|w| w.verify(&f));
                check(ok, || format!("seed {seed}: witness does not re-verify\n{f}"))?;
            }
            Status::Unknown => return Err(format!("seed {seed}: exact decision returned Unknown\n{f}")),
        }
    }
    Ok(format!("{proven} proven against 10^4 triplets each, {refuted} refuted with verified witnesses"))
}

fn transform_fuzz() -> Outcome {
    const SPACES: usize = 200;
    let mut checked = 0usize;
    for (name, f) in corpus() {
        let r = classify(&f);
        if !(r.in_u.is_proven() || r.in_um.is_proven() || r.in_mu.is_proven()) {
            continue;
        }
        for i in 0..SPACES {
            let n = 2 + i % 11;
            if r.in_u.is_proven() || r.in_um.is_proven() {
                let u = random_ultrametric(n, i as u64);
                let img = transform_space(&u, &f).map_err(|e| format!("{name}: {e}"))?;
                if r.in_u.is_proven() {
                    check(validate_ultrametric(&img).is_proven(), || format!("{name}: U image fails\n{u}"))?;
                }
                if r.in_um.is_proven() {
                    check(validate_metric(&img).is_proven(), || format!("{name}: UM image fails\n{u}"))?;
                }
                checked += 1;
            }
            if r.in_mu.is_proven() {
                let d = random_metric(n, i as u64);
                let img = transform_space(&d, &f).map_err(|e| format!("{name}: {e}"))?;
                check(validate_ultrametric(&img).is_proven(), || format!("{name}: MU image fails\n{d}"))?;
                check(discreteness_profile(&img).two_valued, || format!("{name}: MU image not two-valued\n{d}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} transformed spaces, n <= 12"))
}

fn continuity_equivalences() -> Outcome {
    let mut m_count = 0;
    let mut um_count = 0;
    for (name, f) in corpus() {
        let r = classify(&f);
        let at_zero = is_continuous_at_zero(&f).is_proven();
        let everywhere = global_continuity_report(&f).continuous_everywhere;
        let inf = infimum_positive(&f).map_err(|e| format!("{name}: {e}"))?.inf;
        let inf_zero = inf == ExtRational::Finite(int(0));
        if r.in_m.is_proven() {
            m_count += 1;
            check(at_zero == everywhere && at_zero == inf_zero, || {
                format!("{name} (M): at 0 {at_zero}, everywhere {everywhere}, inf = 0 {inf_zero}")
            })?;
        }
        if r.in_um.is_proven() {
            um_count += 1;
            check(at_zero == inf_zero, || format!("{name} (UM): at 0 {at_zero}, inf = 0 {inf_zero}"))?;
        }
    }
    let g = fixture("g65");
    let r = classify(&g);
    check(r.in_um.is_proven(), || "g65 not in UM".into())?;
    check(r.continuity.at_zero && !r.continuity.everywhere, || {
        format!("g65: at_zero {}, everywhere {}", r.continuity.at_zero, r.continuity.everywhere)
    })?;
    Ok(format!("{m_count} M members, {um_count} UM members, g65 continuous at 0 only"))
}

fn chain_bound() -> Outcome {
    let mut rng = Lcg::new(24);
    let mut paths = 0;
    for s in 0..20u64 {
        let n = 2 + (s as usize % 11);
        let d = random_ultrametric(n, 100 + s);
        for _ in 0..50 {
            let len = 2 + rng.below(9) as usize;
            let path = random_path(&mut rng, n, len);
            let c = chain_bound_check(&d, &path).map_err(|e| e.to_string())?;
            let lhs = d.get(path[0], path[len - 1]);
            let rhs = path.windows(2).map(|w| d.get(w[0], w[1])).max().unwrap();
            check(c.holds && c.lhs == *lhs && c.rhs == *rhs && lhs <= rhs, || format!("space {s}, path {path:?}"))?;
            paths += 1;
        }
    }
    Ok(format!("{paths} paths in 20 spaces"))
}

fn ultra_triplet_shapes() -> Outcome {
    let mut rng = Lcg::new(55);
    let small = |rng: &mut Lcg| int(1 + rng.below(6) as i64);
    let (mut accepted, mut rejected) = (0, 0);
    while accepted < 10_000 || rejected < 10_000 {
        let (a, b, c) = (small(&mut rng), small(&mut rng), small(&mut rng));
        let t = Triplet::new(a.clone(), b.clone(), c.clone());
        let mut sorted = [a.clone(), b.clone(), c.clone()];
        sorted.sort();
        let ultra = sorted[1] == sorted[2];
        check(t.in_delta_inf == ultra, || format!("({a}, {b}, {c}) membership"))?;
        if ultra && accepted < 10_000 {
            accepted += 1;
            check(t.shape != Shape::Irregular, || format!("({a}, {b}, {c}) has no shape"))?;
            let d = realize_triplet(&t, Mode::Ultrametric).map_err(|e| e.to_string())?;
            check(validate_ultrametric(&d).is_proven(), || format!("({a}, {b}, {c}) realization"))?;
        } else if !ultra && rejected < 10_000 {
            rejected += 1;
            check(realize_triplet(&t, Mode::Ultrametric).is_err(), || format!("({a}, {b}, {c}) accepted"))?;
        }
    }
    Ok("10^4 shapes classified, 10^4 non-ultra triples rejected".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("classification table", classification_table),
        ("witness fidelity", witness_fidelity),
        ("c-variant boundary", c_variant_boundary),
        ("inclusion chain", inclusion_chain),
        ("affine oracle equivalence", affine_oracle),
        ("transform soundness fuzz", transform_fuzz),
        ("continuity equivalences", continuity_equivalences),
        ("ultrametric chain bound", chain_bound),
        ("ultra triangle shapes", ultra_triplet_shapes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

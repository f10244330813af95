//! Acceptance run: one PASS/FAIL line per criterion, with its runtime and limit.

use std::time::{Duration, Instant};

use geocipher::analysis::axioms::{laguerre_axiom_audit, minkowski_axiom_audit, Axiom, Scope};
use geocipher::analysis::census::{laguerre_census, minkowski_census};
use geocipher::analysis::completeness::{
    laguerre_completeness_audit, minkowski_equation_audit, minkowski_full_cipher_audit, replay_equations,
    replay_laguerre, replay_minkowski, LagScope,
};
use geocipher::analysis::perfectness::{laguerre_perfectness_audit, minkowski_perfectness_audit, PerfectnessVerdict};
use geocipher::analysis::representation::representation_cross_check;
use geocipher::analysis::Fraction;
use geocipher::field::{Field, FieldElement};
use geocipher::laguerre_cipher::{LagCipherConfig, LagKey};
use geocipher::minkowski::MinkPoint;
use geocipher::minkowski_cipher::{MinkKey, MinkowskiCipher, DEFAULT_MAX_ATTEMPTS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn field(q: u32) -> Field {
    if q.is_power_of_two() {
        Field::binary(q.trailing_zeros()).unwrap()
    } else {
        Field::prime(q).unwrap()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census() -> Outcome {
    for q in [3u32, 4, 5, 7, 8] {
        let r = laguerre_census(&field(q));
        let q64 = q as u64;
        let got = |n| r.measured(n).unwrap_or(0);
        ensure(
            r.all_pass()
                && got("points") == q64 * (q64 + 1)
                && got("cycles") == q64.pow(3)
                && got("points_per_cycle") == q64 + 1,
            || format!("Laguerre census q={q}: {r:?}"),
        )?;
    }
    for q in [3u32, 4, 5, 7] {
        let r = minkowski_census(&field(q));
        let q64 = q as u64;
        let got = |n| r.measured(n).unwrap_or(0);
        ensure(
            r.all_pass()
                && got("points") == (q64 + 1).pow(2)
                && got("cycles") == (q64 + 1) * q64 * (q64 - 1)
                && got("affine_hyperbolas") == q64 * q64 * (q64 - 1)
                && got("slanted_lines") == q64 * (q64 - 1)
                && got("affine_hyperbolas") + got("slanted_lines") == got("cycles"),
            || format!("Minkowski census q={q}: {r:?}"),
        )?;
    }
    Ok("Laguerre q=3,4,5,7,8 and Minkowski q=3,4,5,7 match".into())
}

fn axioms() -> Outcome {
    let mut checked = 0;
    for q in [4u32, 5, 7, 8] {
        let r = laguerre_axiom_audit(&field(q));
        ensure(r.all_hold(), || format!("Laguerre q={q}: {:?}", r.verdicts.iter().find(|v| !v.holds)))?;
        checked += r.verdicts.len();
    }
    let core = [Axiom::N1, Axiom::N2, Axiom::N3, Axiom::N4, Axiom::N5, Axiom::T];
    for q in [3u32, 4, 5] {
        let r = minkowski_axiom_audit(&field(q), false);
        for a in core {
            let v = r.verdict(a, Scope::Full);
            ensure(v.is_some_and(|v| v.holds), || format!("Minkowski q={q} {a:?}: {v:?}"))?;
            checked += 1;
        }
    }
    let mut skipped = 0;
    for q in [3u32, 4] {
        let r = minkowski_axiom_audit(&field(q), true);
        for a in [Axiom::R, Axiom::S] {
            let v = r.verdict(a, Scope::Affine);
            ensure(v.is_some_and(|v| v.holds && v.checked > 0), || format!("Minkowski q={q} {a:?}: {v:?}"))?;
            skipped += v.and_then(|v| v.skipped).unwrap_or(0);
            checked += 1;
        }
    }
    Ok(format!("{checked} axiom verdicts hold; {skipped} non-affine R/S configurations skipped"))
}

fn laguerre_perfectness() -> Outcome {
    for q in [5u32, 7, 8] {
        let cfg = LagCipherConfig::with_default_generators(field(q)).unwrap();
        let r = laguerre_perfectness_audit(&cfg);
        ensure(
            r.count_min == q as u64
                && r.count_max == q as u64
                && r.conservation
                && r.max_deviation == Fraction::ZERO
                && r.verdict == PerfectnessVerdict::Exact,
            || format!("q={q}: keys {}..{}, deviation {}", r.count_min, r.count_max, r.max_deviation),
        )?;
    }
    Ok("q=5,7,8: exactly q keys per (m, c), max |nu - mu| = 0".into())
}

fn minkowski_perfectness() -> Outcome {
    let mut summary = Vec::new();
    for q in [5u32, 7] {
        let f = field(q);
        let cipher = MinkowskiCipher::new(f.clone());
        let pts = ["(0,1)", "(1,2)", "(2,4)"].map(|t| MinkPoint::from_text(&f, t).unwrap());
        let msg = cipher.message(pts).unwrap();
        let r = minkowski_perfectness_audit(&cipher, &msg).map_err(|e| e.to_string())?;
        let q64 = q as u64;
        let first = &r.steps[0];
        let m1 = pts[0];
        let counts = first.counts.as_ref().ok_or("no first-point counts")?;
        for pc in counts {
            let tangent = pc.c == [m1.x.value(), m1.y.value()];
            let want = if tangent { q64 - 1 } else { q64 };
            ensure(pc.keys == want, || format!("q={q}: c1={:?} has {} key points, want {want}", pc.c, pc.keys))?;
        }
        let total: u64 = counts.iter().map(|c| c.keys).sum();
        ensure(
            first.unrestricted_key_total == Some(q64 * q64 - q64 + 1)
                && first.valid_key_totals == vec![q64 * q64 - q64 - 1]
                && total == q64 * q64 - q64 - 1,
            || format!("q={q}: unrestricted {:?}, valid {:?}, sum {total}", first.unrestricted_key_total, first.valid_key_totals),
        )?;
        ensure(r.steps.iter().all(|s| s.conservation), || format!("q={q}: conservation fails"))?;
        if q == 7 {
            ensure(r.within_bound && r.max_deviation <= Fraction::new(3, 7), || {
                format!("q=7: max |nu - mu| = {} exceeds 3/7", r.max_deviation)
            })?;
        }
        summary.push(format!(
            "q={q}: tangent {} / secant {} keys, valid {} vs unrestricted {}, max |nu - mu| {}",
            q - 1,
            q,
            total,
            q64 * q64 - q64 + 1,
            r.max_deviation
        ));
    }
    Ok(summary.join("; "))
}

fn round_trips() -> Outcome {
    let mut lag_pairs = 0u64;
    for q in [5u32, 8] {
        let f = field(q);
        let elems: Vec<FieldElement> = f.elements().collect();
        for g1 in &elems {
            for g2 in &elems {
                for g3 in &elems {
                    for g4 in &elems {
                        let Ok(cfg) = LagCipherConfig::new(f.clone(), [*g1, *g2, *g3, *g4]) else { continue };
                        for key in cfg.keys() {
                            for &m in &elems {
                                let c = cfg.encrypt(&key, m);
                                ensure(cfg.decrypt(&key, c) == m, || {
                                    format!("Laguerre q={q} g={:?} key={key:?} m={m:?}", cfg.generators())
                                })?;
                                lag_pairs += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    let f = field(4);
    let cipher = MinkowskiCipher::new(f.clone());
    let pts: Vec<MinkPoint> = cipher.plane().points();
    let mut mink_pairs = 0u64;
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                let Ok(msg) = cipher.message([a, b, c]) else { continue };
                for &k1 in &pts {
                    for &k2 in &pts {
                        for &k3 in &pts {
                            let key = MinkKey::new([k1, k2, k3]);
                            let Ok(ct) = cipher.encrypt(&msg, &key) else { continue };
                            ensure(cipher.decrypt(&ct, &key).ok().as_ref() == Some(&msg), || {
                                format!("Minkowski q=4 msg={:?} key={key:?}", msg.points())
                            })?;
                            mink_pairs += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(mink_pairs > 0, || "no valid Minkowski pair at q=4".into())?;

    let f = field(7);
    let cipher = MinkowskiCipher::new(f.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random_pairs = 0;
    while random_pairs < 10_000 {
        let pts = [(); 3].map(|_| MinkPoint::new(f.random(&mut rng), f.random(&mut rng)));
        let Ok(msg) = cipher.message(pts) else { continue };
        let key = cipher.keygen(&msg, rng.gen(), DEFAULT_MAX_ATTEMPTS).map_err(|e| e.to_string())?.key;
        let ct = cipher.encrypt(&msg, &key).map_err(|e| e.to_string())?;
        ensure(cipher.decrypt(&ct, &key).ok().as_ref() == Some(&msg), || {
            format!("Minkowski q=7 msg={:?} key={key:?}", msg.points())
        })?;
        random_pairs += 1;
    }
    Ok(format!(
        "Laguerre {lag_pairs} (generators, key, message) triples at q=5,8; Minkowski {mink_pairs} valid pairs at q=4; {random_pairs} seeded pairs at q=7"
    ))
}

fn mult_by(f: &Field, lambda: FieldElement, n: u32) -> Vec<Vec<bool>> {
    (0..n)
        .map(|i| {
            let img = f.mul(lambda, f.element(1 << i).unwrap());
            (0..n).map(|j| img.bit(j)).collect()
        })
        .collect()
}

fn laguerre_completeness() -> Outcome {
    let mut tuples = 0;
    for n in [2u32, 3] {
        let f = Field::binary(n).unwrap();
        let elems: Vec<FieldElement> = f.elements().collect();
        for g1 in &elems {
            for g2 in &elems {
                for g3 in &elems {
                    for g4 in &elems {
                        let Ok(cfg) = LagCipherConfig::new(f.clone(), [*g1, *g2, *g3, *g4]) else { continue };
                        let r = laguerre_completeness_audit(&cfg, LagScope::FixedGenerators).map_err(|e| e.to_string())?;
                        ensure(r.matrix.cells == mult_by(&f, cfg.lambda(), n) && replay_laguerre(&cfg, &r), || {
                            format!("n={n} g={:?}: matrix {:?}", cfg.generators(), r.matrix.cells)
                        })?;
                        tuples += 1;
                    }
                }
            }
        }
        let cfg = LagCipherConfig::with_default_generators(f.clone()).unwrap();
        let key = LagKey::new(f.one(), f.zero());
        let fixed = laguerre_completeness_audit(&cfg, LagScope::FixedKey(key)).map_err(|e| e.to_string())?;
        ensure(fixed.matrix.cells == mult_by(&f, cfg.lambda(), n), || format!("n={n}: fixed-key matrix differs"))?;
        let u = laguerre_completeness_audit(&cfg, LagScope::LambdaUniversal).map_err(|e| e.to_string())?;
        ensure(u.matrix.is_complete() && replay_laguerre(&cfg, &u), || format!("n={n}: universal {:?}", u.matrix.cells))?;
    }
    Ok(format!("{tuples} generator tuples match mult-by-lambda; lambda-universal all-ones at n=2,3"))
}

fn equation_model() -> Outcome {
    for n in [2u32, 3] {
        let f = Field::binary(n).unwrap();
        let r = minkowski_equation_audit(&f).map_err(|e| e.to_string())?;
        ensure(
            r.witnesses_for_all_pairs
                && r.mixed.missing.is_empty()
                && r.same.missing.is_empty()
                && r.parallel_gen1.legitimate_solutions == 0
                && r.parallel_gen2.legitimate_solutions == 0
                && r.parallel_systems_unsolvable
                && replay_equations(&f, &r),
            || format!("n={n}: {r:?}"),
        )?;
    }
    Ok("n=2,3: witnesses for every (i, j); parallel systems have no legitimate solution".into())
}

fn full_cipher() -> Outcome {
    let cipher = MinkowskiCipher::new(Field::binary(2).unwrap());
    let r = minkowski_full_cipher_audit(&cipher, 0, 0).map_err(|e| e.to_string())?;
    let again = minkowski_full_cipher_audit(&cipher, 0, 0).map_err(|e| e.to_string())?;
    ensure(r.exhaustive && r.pairs > 0, || "n=2 audit was not exhaustive".into())?;
    ensure(replay_minkowski(&cipher, &r), || "a stored witness does not replay".into())?;
    ensure(r.matrix.witnesses.len() == r.matrix.true_cells(), || "true cell without witness".into())?;
    ensure(r == again, || "verdict differs across reruns".into())?;
    Ok(format!(
        "n=2 exhaustive over {} pairs: {}/{} true cells, {} flip comparisons, verdict {:?}",
        r.pairs,
        r.matrix.true_cells(),
        r.matrix.rows * r.matrix.cols,
        r.comparisons.iter().sum::<u64>(),
        r.verdict
    ))
}

fn representation() -> Outcome {
    let mut comparisons = 0;
    for q in [5u32, 7, 8] {
        let r = representation_cross_check(&field(q));
        ensure(r.comparisons > 0 && r.disagreements == 0, || format!("q={q}: {r:?}"))?;
        comparisons += r.comparisons;
    }
    Ok(format!("{comparisons} comparisons at q=5,7,8, no disagreement"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("census", 10, census),
        ("axiom audits", 120, axioms),
        ("Laguerre perfectness", 5, laguerre_perfectness),
        ("Minkowski perfectness", 30, minkowski_perfectness),
        ("round trips", 60, round_trips),
        ("Laguerre completeness", 30, laguerre_completeness),
        ("Minkowski equation model", 60, equation_model),
        ("Minkowski full-cipher avalanche", 600, full_cipher),
        ("representation cross-check", 60, representation),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {status} {name} ({:.2}s / {limit}s) {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Brute-force axiom audits.
//!
//! Each axiom is a local predicate over a handful of indices. The audit sweeps
//! every configuration in a fixed order and keeps the first failing one, which
//! [`recheck`] can evaluate again in isolation.
//!
//! Minkowski audits run N1 to N5 and T on the full plane (the derived affine model
//! with its distant points adjoined): in the affine model alone an asymptote
//! meets its hyperbola nowhere, so N4 fails trivially. R and S are reported
//! twice: on the full plane, and on the affine model restricted to
//! configurations in which every construction step stays affine, with a count
//! of the skipped configurations.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::incidence::Incidence;
use super::with_pool;
use crate::field::Field;
use crate::laguerre::LaguerrePlane;
use crate::minkowski::MinkowskiPlane;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    L1,
    L2,
    L3,
    L4,
    L5,
    N1,
    N2,
    N3,
    N4,
    N5,
    T,
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Every configuration of the structure.
    Full,
    /// Only configurations whose constructions stay affine.
    Affine,
}

/// A configuration on which an axiom fails. Indices refer to the audited structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub points: Vec<usize>,
    pub cycles: Vec<usize>,
    /// (family, generator) pairs.
    pub generators: Vec<(usize, usize)>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub scope: Scope,
    pub holds: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomAuditReport {
    pub structure: String,
    pub field: String,
    pub q: u32,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomAuditReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, axiom: Axiom, scope: Scope) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom && v.scope == scope)
    }
}

pub fn laguerre_axiom_audit(field: &Field) -> AxiomAuditReport {
    let inc = Incidence::laguerre(&LaguerrePlane::new(field.clone()));
    let verdicts = with_pool(|| {
        vec![
            check(&inc, Axiom::L1, Scope::Full),
            check(&inc, Axiom::L2, Scope::Full),
            check(&inc, Axiom::L3, Scope::Full),
            check(&inc, Axiom::L4, Scope::Full),
            check(&inc, Axiom::L5, Scope::Full),
        ]
    });
    AxiomAuditReport {
        structure: "laguerre".into(),
        field: field.spec().to_string(),
        q: field.order(),
        verdicts,
    }
}

pub fn minkowski_axiom_audit(field: &Field, include_rs: bool) -> AxiomAuditReport {
    let plane = MinkowskiPlane::new(field.clone());
    let full = Incidence::minkowski_closure(&plane);
    let verdicts = with_pool(|| {
        let mut v: Vec<AxiomVerdict> = [Axiom::N1, Axiom::N2, Axiom::N3, Axiom::N4, Axiom::N5, Axiom::T]
            .into_iter()
            .map(|a| check(&full, a, Scope::Full))
            .collect();
        if include_rs {
            let affine = Incidence::minkowski_affine(&plane);
            for a in [Axiom::R, Axiom::S] {
                v.push(check(&affine, a, Scope::Affine));
                v.push(check(&full, a, Scope::Full));
            }
        }
        v
    });
    AxiomAuditReport {
        structure: "minkowski".into(),
        field: field.spec().to_string(),
        q: field.order(),
        verdicts,
    }
}

/// Audits one axiom on any structure.
pub fn check(inc: &Incidence, axiom: Axiom, scope: Scope) -> AxiomVerdict {
    let (checked, skipped, cx) = match axiom {
        Axiom::L1 | Axiom::N1 => sweep(inc.n_points(), |p| one_generator_per_family(inc, p)),
        Axiom::L2 | Axiom::N5 => three_points(inc),
        Axiom::L3 | Axiom::N4 => generator_meets_cycles(inc),
        Axiom::L4 | Axiom::T => touch(inc),
        Axiom::L5 => {
            let cx = richness(inc);
            (1, 0, cx)
        }
        Axiom::N2 => generator_crossings(inc),
        Axiom::N3 => {
            let gens: Vec<(usize, usize)> = (0..inc.families().len())
                .flat_map(|f| (0..inc.families()[f].generators.len()).map(move |g| (f, g)))
                .collect();
            sweep(gens.len(), |i| generator_size(inc, gens[i].0, gens[i].1))
        }
        Axiom::R => rectangle(inc, scope),
        Axiom::S => symmetry(inc, scope),
    };
    AxiomVerdict {
        axiom,
        scope,
        holds: cx.is_none(),
        checked,
        skipped: (scope == Scope::Affine).then_some(skipped),
        counterexample: cx,
    }
}

/// True iff `cx` is a genuine counterexample to `axiom` on `inc`.
pub fn recheck(inc: &Incidence, axiom: Axiom, scope: Scope, cx: &Counterexample) -> bool {
    let p = &cx.points;
    let c = &cx.cycles;
    let g = &cx.generators;
    match axiom {
        Axiom::L1 | Axiom::N1 => p.len() == 1 && one_generator_per_family(inc, p[0]).is_some(),
        Axiom::L2 | Axiom::N5 => p.len() == 3 && triple(inc, p[0], p[1], p[2]).is_some(),
        Axiom::L3 | Axiom::N4 => {
            g.len() == 1 && c.len() == 1 && inc.generator(g[0].0, g[0].1).intersection_count(inc.cycle(c[0])) != 1
        }
        Axiom::L4 | Axiom::T => p.len() == 2 && c.len() == 1 && touch_at(inc, c[0], p[0], p[1]).is_some(),
        Axiom::L5 => richness(inc).is_some(),
        Axiom::N2 => {
            g.len() == 2 && inc.generator(g[0].0, g[0].1).intersection_count(inc.generator(g[1].0, g[1].1)) != 1
        }
        Axiom::N3 => g.len() == 1 && inc.generator(g[0].0, g[0].1).count_ones(..) < 2,
        Axiom::R => c.len() == 3 && matches!(rectangle_at(inc, scope, c[0], c[1], c[2], &cycle_index(inc)), Some(false)),
        Axiom::S => c.len() == 2 && matches!(symmetry_at(inc, scope, c[0], c[1]), Some(Err(_))),
    }
}

type Sweep = (u64, u64, Option<Counterexample>);

fn sweep(n: usize, f: impl Fn(usize) -> Option<Counterexample> + Sync) -> Sweep {
    (n as u64, 0, (0..n).find_map(f))
}

fn one_generator_per_family(inc: &Incidence, p: usize) -> Option<Counterexample> {
    for fam in inc.families() {
        let n = fam.generators.iter().filter(|g| g.contains(p)).count();
        if n != 1 {
            return Some(Counterexample {
                points: vec![p],
                cycles: vec![],
                generators: vec![],
                description: format!("{} lies on {n} generators of {}", inc.point_label(p), fam.name),
            });
        }
    }
    None
}

fn triple(inc: &Incidence, a: usize, b: usize, c: usize) -> Option<Counterexample> {
    if !(inc.connectable(a, b) && inc.connectable(b, c) && inc.connectable(a, c)) {
        return None;
    }
    let n = inc.through(a).ones().filter(|&x| inc.through(b).contains(x) && inc.through(c).contains(x)).count();
    (n != 1).then(|| Counterexample {
        points: vec![a, b, c],
        cycles: vec![],
        generators: vec![],
        description: format!(
            "{} cycles through {}, {}, {}",
            n,
            inc.point_label(a),
            inc.point_label(b),
            inc.point_label(c)
        ),
    })
}

fn three_points(inc: &Incidence) -> Sweep {
    let n = inc.n_points();
    let results: Vec<(u64, Option<Counterexample>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut checked = 0;
            for b in (a + 1)..n {
                if !inc.connectable(a, b) {
                    continue;
                }
                for c in (b + 1)..n {
                    if inc.connectable(a, c) && inc.connectable(b, c) {
                        checked += 1;
                        if let Some(cx) = triple(inc, a, b, c) {
                            return (checked, Some(cx));
                        }
                    }
                }
            }
            (checked, None)
        })
        .collect();
    merge(results)
}

fn generator_meets_cycles(inc: &Incidence) -> Sweep {
    let mut checked = 0;
    for (fi, fam) in inc.families().iter().enumerate() {
        for (gi, g) in fam.generators.iter().enumerate() {
            for c in 0..inc.n_cycles() {
                checked += 1;
                let n = g.intersection_count(inc.cycle(c));
                if n != 1 {
                    return (
                        checked,
                        0,
                        Some(Counterexample {
                            points: vec![],
                            cycles: vec![c],
                            generators: vec![(fi, gi)],
                            description: format!(
                                "{} meets cycle {} in {n} points",
                                inc.generator_label(fi, gi),
                                inc.cycle_label(c)
                            ),
                        }),
                    );
                }
            }
        }
    }
    (checked, 0, None)
}

fn generator_crossings(inc: &Incidence) -> Sweep {
    let mut checked = 0;
    let fams = inc.families();
    for g1 in 0..fams[0].generators.len() {
        for g2 in 0..fams[1].generators.len() {
            checked += 1;
            let n = inc.generator(0, g1).intersection_count(inc.generator(1, g2));
            if n != 1 {
                return (
                    checked,
                    0,
                    Some(Counterexample {
                        points: vec![],
                        cycles: vec![],
                        generators: vec![(0, g1), (1, g2)],
                        description: format!(
                            "{} and {} share {n} points",
                            inc.generator_label(0, g1),
                            inc.generator_label(1, g2)
                        ),
                    }),
                );
            }
        }
    }
    (checked, 0, None)
}

fn generator_size(inc: &Incidence, f: usize, g: usize) -> Option<Counterexample> {
    let n = inc.generator(f, g).count_ones(..);
    (n < 2).then(|| Counterexample {
        points: vec![],
        cycles: vec![],
        generators: vec![(f, g)],
        description: format!("{} has {n} points", inc.generator_label(f, g)),
    })
}

/// Number of cycles D through a and b with C ∩ D = {a}, when b is admissible.
fn touch_at(inc: &Incidence, c: usize, a: usize, b: usize) -> Option<Counterexample> {
    let cyc = inc.cycle(c);
    if !cyc.contains(a) || cyc.contains(b) || !inc.connectable(a, b) {
        return None;
    }
    let n = inc
        .through(a)
        .intersection(inc.through(b))
        .filter(|&d| inc.cycle(d).intersection_count(cyc) == 1)
        .count();
    (n != 1).then(|| Counterexample {
        points: vec![a, b],
        cycles: vec![c],
        generators: vec![],
        description: format!(
            "{n} cycles through {} touch {} at {}",
            inc.point_label(b),
            inc.cycle_label(c),
            inc.point_label(a)
        ),
    })
}

fn touch(inc: &Incidence) -> Sweep {
    let results: Vec<(u64, Option<Counterexample>)> = (0..inc.n_cycles())
        .into_par_iter()
        .map(|c| {
            let mut checked = 0;
            for a in inc.cycle(c).ones() {
                for b in 0..inc.n_points() {
                    if inc.cycle(c).contains(b) || !inc.connectable(a, b) {
                        continue;
                    }
                    checked += 1;
                    if let Some(cx) = touch_at(inc, c, a, b) {
                        return (checked, Some(cx));
                    }
                }
            }
            (checked, None)
        })
        .collect();
    merge(results)
}

fn richness(inc: &Incidence) -> Option<Counterexample> {
    let fail = |description: String, generators| {
        Some(Counterexample {
            points: vec![],
            cycles: vec![],
            generators,
            description,
        })
    };
    if !(0..inc.n_cycles()).any(|c| inc.cycle(c).count_ones(..) >= 3) {
        return fail("no cycle has three points".into(), vec![]);
    }
    if inc.n_points() <= 3 {
        return fail(format!("only {} points", inc.n_points()), vec![]);
    }
    for f in 0..inc.families().len() {
        for g in 0..inc.families()[f].generators.len() {
            if let Some(cx) = generator_size(inc, f, g) {
                return fail(cx.description, cx.generators);
            }
        }
    }
    None
}

fn merge(results: Vec<(u64, Option<Counterexample>)>) -> Sweep {
    let checked = results.iter().map(|r| r.0).sum();
    (checked, 0, results.into_iter().find_map(|r| r.1))
}

fn cycle_index(inc: &Incidence) -> HashMap<FixedBitSet, usize> {
    (0..inc.n_cycles()).map(|c| (inc.cycle(c).clone(), c)).collect()
}

fn is_affine(inc: &Incidence, p: usize) -> bool {
    inc.affine_points().is_none_or(|a| a.contains(p))
}

/// `[[x]₁ ∩ B]₂ ∩ [[x]₂ ∩ C]₁`, or `None` when a step is undefined.
fn rect_image(inc: &Incidence, x: usize, b: usize, c: usize) -> Option<usize> {
    let on_b = inc.meet(0, inc.gen_of(0, x)?, b)?;
    let on_c = inc.meet(1, inc.gen_of(1, x)?, c)?;
    inc.cross(inc.gen_of(0, on_c)?, inc.gen_of(1, on_b)?)
}

/// `Some(verdict)` for an evaluated configuration, `None` if skipped.
fn rectangle_at(
    inc: &Incidence,
    scope: Scope,
    a: usize,
    b: usize,
    c: usize,
    index: &HashMap<FixedBitSet, usize>,
) -> Option<bool> {
    let mut image = FixedBitSet::with_capacity(inc.n_points());
    for x in inc.cycle(a).ones() {
        if scope == Scope::Affine && !is_affine(inc, x) {
            continue;
        }
        let y = rect_image(inc, x, b, c)?;
        if scope == Scope::Affine && !is_affine(inc, y) {
            return None;
        }
        image.insert(y);
    }
    Some(match scope {
        Scope::Full => index.contains_key(&image),
        Scope::Affine => {
            let mut ones = image.ones();
            match ones.next() {
                None => true,
                Some(first) => {
                    let mut common = inc.through(first).clone();
                    for p in ones {
                        common.intersect_with(inc.through(p));
                    }
                    !common.is_clear()
                }
            }
        }
    })
}

fn rectangle(inc: &Incidence, scope: Scope) -> Sweep {
    let index = cycle_index(inc);
    let n = inc.n_cycles();
    let results: Vec<(u64, u64, Option<Counterexample>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let (mut checked, mut skipped) = (0, 0);
            for b in 0..n {
                for c in 0..n {
                    match rectangle_at(inc, scope, a, b, c, &index) {
                        None => skipped += 1,
                        Some(true) => checked += 1,
                        Some(false) => {
                            checked += 1;
                            let cx = Counterexample {
                                points: vec![],
                                cycles: vec![a, b, c],
                                generators: vec![],
                                description: format!(
                                    "image of {} under ({}, {}) is not a cycle",
                                    inc.cycle_label(a),
                                    inc.cycle_label(b),
                                    inc.cycle_label(c)
                                ),
                            };
                            return (checked, skipped, Some(cx));
                        }
                    }
                }
            }
            (checked, skipped, None)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let skipped = results.iter().map(|r| r.1).sum();
    (checked, skipped, results.into_iter().find_map(|r| r.2))
}

/// `None` if skipped; `Some(Err((p, x)))` if p satisfies the premise but x breaks it.
fn symmetry_at(inc: &Incidence, scope: Scope, c: usize, d: usize) -> Option<Result<(), (usize, usize)>> {
    let pts: Vec<usize> = inc
        .cycle(c)
        .ones()
        .filter(|&x| scope == Scope::Full || is_affine(inc, x))
        .collect();
    let mut images = Vec::with_capacity(pts.len());
    for &x in &pts {
        let y = rect_image(inc, x, d, d)?;
        if scope == Scope::Affine && !is_affine(inc, y) {
            return None;
        }
        images.push(y);
    }
    let on_c = |y: usize| inc.cycle(c).contains(y);
    let premise = pts
        .iter()
        .zip(&images)
        .find(|(&p, &y)| !inc.cycle(d).contains(p) && on_c(y));
    if let Some((&p, _)) = premise {
        if let Some((&x, _)) = pts.iter().zip(&images).find(|(_, &y)| !on_c(y)) {
            return Some(Err((p, x)));
        }
    }
    Some(Ok(()))
}

fn symmetry(inc: &Incidence, scope: Scope) -> Sweep {
    let n = inc.n_cycles();
    let results: Vec<(u64, u64, Option<Counterexample>)> = (0..n)
        .into_par_iter()
        .map(|c| {
            let (mut checked, mut skipped) = (0, 0);
            for d in 0..n {
                if c == d {
                    continue;
                }
                match symmetry_at(inc, scope, c, d) {
                    None => skipped += 1,
                    Some(Ok(())) => checked += 1,
                    Some(Err((p, x))) => {
                        checked += 1;
                        let cx = Counterexample {
                            points: vec![p, x],
                            cycles: vec![c, d],
                            generators: vec![],
                            description: format!(
                                "{} reflects into {} but {} does not",
                                inc.point_label(p),
                                inc.cycle_label(c),
                                inc.point_label(x)
                            ),
                        };
                        return (checked, skipped, Some(cx));
                    }
                }
            }
            (checked, skipped, None)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let skipped = results.iter().map(|r| r.1).sum();
    (checked, skipped, results.into_iter().find_map(|r| r.2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_q5_passes() {
        let r = laguerre_axiom_audit(&Field::prime(5).unwrap());
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.verdicts.len(), 5);
    }

    #[test]
    fn minkowski_q4_passes() {
        let r = minkowski_axiom_audit(&Field::binary(2).unwrap(), false);
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn minkowski_q3_rectangle_and_symmetry() {
        let r = minkowski_axiom_audit(&Field::prime(3).unwrap(), true);
        assert!(r.all_hold(), "{r:?}");
        let ra = r.verdict(Axiom::R, Scope::Affine).unwrap();
        assert!(ra.checked > 0 && ra.skipped.unwrap() > 0);
        assert!(r.verdict(Axiom::S, Scope::Full).unwrap().checked > 0);
    }

    #[test]
    fn affine_model_alone_fails_n4() {
        let inc = Incidence::minkowski_affine(&MinkowskiPlane::new(Field::prime(3).unwrap()));
        let v = check(&inc, Axiom::N4, Scope::Full);
        assert!(!v.holds);
        assert!(recheck(&inc, Axiom::N4, Scope::Full, v.counterexample.as_ref().unwrap()));
    }

    #[test]
    fn broken_structures_yield_recheckable_counterexamples() {
        let inc = Incidence::laguerre(&LaguerrePlane::new(Field::prime(3).unwrap()));
        let missing = inc.without_cycle(5);
        for axiom in [Axiom::L2, Axiom::L4] {
            let v = check(&missing, axiom, Scope::Full);
            assert!(!v.holds, "{axiom:?}");
            let cx = v.counterexample.unwrap();
            assert!(recheck(&missing, axiom, Scope::Full, &cx));
            assert!(!recheck(&inc, axiom, Scope::Full, &cx));
        }
        // points 0 and 1 share the generator x = 0
        let bent = inc.with_cycle(vec![0, 1, 5, 9], "bent");
        let v = check(&bent, Axiom::L3, Scope::Full);
        assert!(recheck(&bent, Axiom::L3, Scope::Full, v.counterexample.as_ref().unwrap()));
        let doubled = inc.with_cycle(inc.cycle(0).ones().collect(), "dup");
        let v = check(&doubled, Axiom::L2, Scope::Full);
        assert!(recheck(&doubled, Axiom::L2, Scope::Full, v.counterexample.as_ref().unwrap()));

        let mink = Incidence::minkowski_closure(&MinkowskiPlane::new(Field::prime(3).unwrap()));
        let broken = mink.without_cycle(0);
        let bent = mink.with_cycle(vec![0, 1, 6, 11], "bent");
        let v = check(&bent, Axiom::N4, Scope::Full);
        assert!(recheck(&bent, Axiom::N4, Scope::Full, v.counterexample.as_ref().unwrap()));
        for axiom in [Axiom::N5, Axiom::T, Axiom::R] {
            let v = check(&broken, axiom, Scope::Full);
            assert!(!v.holds, "{axiom:?}");
            assert!(recheck(&broken, axiom, Scope::Full, v.counterexample.as_ref().unwrap()));
        }
    }
}

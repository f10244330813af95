//! A-priori versus a-posteriori probabilities for both ciphers.
//!
//! Laguerre: every key pair is enumerated for every message; the scheme is
//! perfect iff each (m, c) is reached by the same number of keys.
//!
//! Minkowski: the three message points are encrypted one after another. For
//! point i the admissible keys depend on the moves already made (the key
//! prefix), so the audit enumerates every live prefix and, under it, every key
//! for point i, and groups the resulting ratios `count / |Kᵢ|` by which of the
//! points so far were fixed (`mⱼ = cⱼ`). Each group is compared with the
//! closed-form value obtained by counting keys without the asymptote and
//! distinct-ciphertext rules.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Fraction;
use crate::error::Result;
use crate::field::FieldElement;
use crate::laguerre_cipher::LagCipherConfig;
use crate::minkowski::MinkPoint;
use crate::minkowski_cipher::{MinkMessage, MinkowskiCipher, PointStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PerfectnessVerdict {
    Exact,
    /// Largest |ν − μ| observed.
    Approximate(Fraction),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagPerfectnessReport {
    pub field: String,
    pub q: u32,
    pub generators: [u32; 4],
    pub lambda: u32,
    pub total_keys: u64,
    pub a_priori: Fraction,
    /// `counts[m][c]`: number of keys mapping m to c.
    pub counts: Vec<Vec<u64>>,
    pub count_min: u64,
    pub count_max: u64,
    /// Every row of `counts` sums to the number of keys.
    pub conservation: bool,
    pub max_deviation: Fraction,
    pub verdict: PerfectnessVerdict,
}

pub fn laguerre_perfectness_audit(cfg: &LagCipherConfig) -> LagPerfectnessReport {
    let f = cfg.field();
    let q = f.order() as usize;
    let mut counts = vec![vec![0u64; q]; q];
    let keys: Vec<_> = cfg.keys().collect();
    for m in f.elements() {
        for key in &keys {
            counts[m.value() as usize][cfg.encrypt(key, m).value() as usize] += 1;
        }
    }
    let total_keys = keys.len() as u64;
    let a_priori = Fraction::new(1, q as u64);
    let column_sums: Vec<u64> = (0..q).map(|c| (0..q).map(|m| counts[m][c]).sum()).collect();
    let mut max_deviation = Fraction::ZERO;
    for row in &counts {
        for (&n, &sum) in row.iter().zip(&column_sums) {
            if sum > 0 {
                max_deviation = max_deviation.max(Fraction::new(n, sum).abs_diff(&a_priori));
            }
        }
    }
    let conservation = counts.iter().all(|row| row.iter().sum::<u64>() == total_keys);
    let flat = counts.iter().flatten();
    let count_min = flat.clone().copied().min().unwrap_or(0);
    let count_max = flat.copied().max().unwrap_or(0);
    let verdict = if max_deviation == Fraction::ZERO {
        PerfectnessVerdict::Exact
    } else {
        PerfectnessVerdict::Approximate(max_deviation)
    };
    LagPerfectnessReport {
        field: f.spec().to_string(),
        q: f.order(),
        generators: cfg.generators().map(|g| g.value()),
        lambda: cfg.lambda().value(),
        total_keys,
        a_priori,
        counts,
        count_min,
        count_max,
        conservation,
        max_deviation,
        verdict,
    }
}

/// One line of a per-point table: all instances sharing a fixed-point pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub case: String,
    pub a_priori: Fraction,
    pub formula: Fraction,
    pub formula_denominator: u64,
    pub measured_min: Fraction,
    pub measured_max: Fraction,
    pub numerators: Vec<u64>,
    pub denominators: Vec<u64>,
    /// Number of (prefix, ciphertext point) pairs in this row.
    pub instances: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub c: [u32; 2],
    pub keys: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub a_priori: Fraction,
    pub prefixes: u64,
    /// Prefixes after which no key is admissible for this point.
    pub dead_prefixes: u64,
    /// Distinct sizes of the admissible key set over live prefixes.
    pub valid_key_totals: Vec<u64>,
    /// Key count without the asymptote rule; first point only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unrestricted_key_total: Option<u64>,
    /// Keys per ciphertext point; first point only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<PointCount>>,
    pub rows: Vec<CaseRow>,
    pub conservation: bool,
    pub max_deviation: Fraction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinkPerfectnessReport {
    pub field: String,
    pub q: u32,
    pub message: [[u32; 2]; 3],
    pub cycle: [u32; 3],
    pub steps: Vec<StepReport>,
    pub max_deviation: Fraction,
    pub max_deviation_f64: f64,
    pub first_approximation_bound: Fraction,
    pub within_bound: bool,
}

#[derive(Default)]
struct RowAcc {
    nus: BTreeSet<(u64, u64)>,
    numerators: BTreeSet<u64>,
    denominators: BTreeSet<u64>,
    instances: u64,
}

struct StepAcc {
    step: usize,
    q: u64,
    prefixes: u64,
    dead: u64,
    totals: BTreeSet<u64>,
    rows: BTreeMap<Vec<bool>, RowAcc>,
    conservation: bool,
}

impl StepAcc {
    fn new(step: usize, q: u64) -> Self {
        StepAcc {
            step,
            q,
            prefixes: 0,
            dead: 0,
            totals: BTreeSet::new(),
            rows: BTreeMap::new(),
            conservation: true,
        }
    }

    /// Records the admissible moves for one prefix. `fixed` says which earlier points were fixed.
    fn record(&mut self, fixed: &[bool], m: &MinkPoint, moves: &[PointStep]) {
        self.prefixes += 1;
        if moves.is_empty() {
            self.dead += 1;
            return;
        }
        let total = moves.len() as u64;
        self.totals.insert(total);
        let mut per_c: BTreeMap<MinkPoint, u64> = BTreeMap::new();
        for s in moves {
            *per_c.entry(s.c).or_default() += 1;
        }
        self.conservation &= per_c.values().sum::<u64>() == total;
        for (c, n) in per_c {
            let mut key = fixed.to_vec();
            key.push(c == *m);
            let row = self.rows.entry(key).or_default();
            let nu = Fraction::new(n, total);
            row.nus.insert((nu.num(), nu.den()));
            row.numerators.insert(n);
            row.denominators.insert(total);
            row.instances += 1;
        }
    }

    fn finish(self, unrestricted_key_total: Option<u64>, counts: Option<Vec<PointCount>>) -> StepReport {
        let q = self.q;
        let a_priori = Fraction::new(1, q - self.step as u64);
        let mut max_deviation = Fraction::ZERO;
        let rows = all_patterns(self.step)
            .into_iter()
            .map(|pattern| {
                let (num, den) = formula_value(q, &pattern);
                let acc = self.rows.get(&pattern);
                let nus: Vec<Fraction> = acc
                    .map(|a| a.nus.iter().map(|&(n, d)| Fraction::new(n, d)).collect())
                    .unwrap_or_default();
                for nu in &nus {
                    max_deviation = max_deviation.max(nu.abs_diff(&a_priori));
                }
                CaseRow {
                    case: case_label(&pattern),
                    a_priori,
                    formula: if den == 0 { Fraction::ZERO } else { Fraction::new(num, den) },
                    formula_denominator: den,
                    measured_min: nus.iter().min().copied().unwrap_or(Fraction::ZERO),
                    measured_max: nus.iter().max().copied().unwrap_or(Fraction::ZERO),
                    numerators: acc.map(|a| a.numerators.iter().copied().collect()).unwrap_or_default(),
                    denominators: acc.map(|a| a.denominators.iter().copied().collect()).unwrap_or_default(),
                    instances: acc.map_or(0, |a| a.instances),
                }
            })
            .collect();
        StepReport {
            step: self.step,
            a_priori,
            prefixes: self.prefixes,
            dead_prefixes: self.dead,
            valid_key_totals: self.totals.into_iter().collect(),
            unrestricted_key_total,
            counts,
            rows,
            conservation: self.conservation,
            max_deviation,
        }
    }
}

/// Fixed-point patterns in table order: `=` before `≠`, earlier points vary slowest.
fn all_patterns(len: usize) -> Vec<Vec<bool>> {
    (0..1usize << len)
        .map(|bits| (0..len).map(|i| bits >> (len - 1 - i) & 1 == 0).collect())
        .collect()
}

fn case_label(pattern: &[bool]) -> String {
    pattern
        .iter()
        .enumerate()
        .map(|(i, &fixed)| format!("m{n}{}c{n}", if fixed { "=" } else { "≠" }, n = i + 1))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Closed-form key counts: numerator q−1 for a fixed point, q otherwise; the
/// denominator loses q keys per earlier fixed point and 2q per moved one,
/// starting from q²−q+1 (first point: all keys off the hyperbola).
fn formula_value(q: u64, pattern: &[bool]) -> (u64, u64) {
    let (last, earlier) = pattern.split_last().expect("nonempty pattern");
    let num = if *last { q - 1 } else { q };
    let mut den = (q * q - q + 1) as i64;
    for &fixed in earlier {
        den -= if fixed { q as i64 } else { 2 * q as i64 };
    }
    (num, den.max(0) as u64)
}

/// Sequential perfectness audit for one message.
pub fn minkowski_perfectness_audit(cipher: &MinkowskiCipher, msg: &MinkMessage) -> Result<MinkPerfectnessReport> {
    let f = cipher.field();
    let q = f.order() as u64;
    let h = msg.cycle();
    let m = msg.points();
    let plane = cipher.plane();
    let keys = plane.points();

    // moves[i]: admissible single-point moves for m_i, in key order
    let moves: Vec<Vec<PointStep>> = m
        .iter()
        .map(|mi| keys.iter().filter_map(|k| cipher.step(&h, mi, k).ok()).collect())
        .collect();

    let compatible = |prev: &[&PointStep], s: &PointStep| {
        prev.iter().all(|p| !p.overlaps(s) && p.c != s.c)
    };

    let mut step1 = StepAcc::new(1, q);
    step1.record(&[], &m[0], &moves[0]);
    let mut per_c: BTreeMap<MinkPoint, u64> = plane.cycle_points(&h).into_iter().map(|c| (c, 0)).collect();
    for s in &moves[0] {
        *per_c.entry(s.c).or_default() += 1;
    }
    let counts = per_c
        .into_iter()
        .map(|(c, keys)| PointCount {
            c: [c.x.value(), c.y.value()],
            keys,
        })
        .collect();

    let mut step2 = StepAcc::new(2, q);
    let mut step3 = StepAcc::new(3, q);
    for s1 in &moves[0] {
        let k2: Vec<PointStep> = moves[1].iter().filter(|s| compatible(&[s1], s)).copied().collect();
        step2.record(&[s1.c == m[0]], &m[1], &k2);
        for s2 in &k2 {
            let k3: Vec<PointStep> = moves[2].iter().filter(|s| compatible(&[s1, s2], s)).copied().collect();
            step3.record(&[s1.c == m[0], s2.c == m[1]], &m[2], &k3);
        }
    }

    let steps = vec![
        step1.finish(Some(q * q - q + 1), Some(counts)),
        step2.finish(None, None),
        step3.finish(None, None),
    ];
    let max_deviation = steps.iter().map(|s| s.max_deviation).max().unwrap_or(Fraction::ZERO);
    let bound = Fraction::new(3, q);
    let coords = |p: MinkPoint| [p.x.value(), p.y.value()];
    Ok(MinkPerfectnessReport {
        field: f.spec().to_string(),
        q: f.order(),
        message: m.map(coords),
        cycle: [h.a(), h.b(), h.c()].map(FieldElement::value),
        steps,
        max_deviation,
        max_deviation_f64: max_deviation.to_f64(),
        first_approximation_bound: bound,
        within_bound: max_deviation <= bound,
    })
}

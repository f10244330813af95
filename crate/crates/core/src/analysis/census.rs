//! Point, generator and cycle counts against their closed forms.

use serde::Serialize;

use super::incidence::Incidence;
use crate::field::Field;
use crate::laguerre::LaguerrePlane;
use crate::minkowski::MinkowskiPlane;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub measured: u64,
    pub expected: u64,
    pub formula: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub geometry: String,
    pub field: String,
    pub q: u32,
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn measured(&self, name: &str) -> Option<u64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.measured)
    }
}

fn entry(name: &str, measured: u64, expected: u64, formula: &str) -> CensusEntry {
    CensusEntry {
        name: name.into(),
        measured,
        expected,
        formula: formula.into(),
        pass: measured == expected,
    }
}

/// Uniform cycle size, or `u64::MAX` when sizes differ.
fn uniform_cycle_size(inc: &Incidence) -> u64 {
    let mut sizes = (0..inc.n_cycles()).map(|c| inc.cycle(c).count_ones(..) as u64);
    let first = sizes.next().unwrap_or(0);
    if sizes.all(|s| s == first) {
        first
    } else {
        u64::MAX
    }
}

pub fn laguerre_census(field: &Field) -> CensusReport {
    let plane = LaguerrePlane::new(field.clone());
    let q = field.order() as u64;
    let inc = Incidence::laguerre(&plane);
    let gen_sizes_ok = inc.families()[0].generators.iter().all(|g| g.count_ones(..) as u64 == q);
    CensusReport {
        geometry: "laguerre".into(),
        field: field.spec().to_string(),
        q: field.order(),
        entries: vec![
            entry("points", inc.n_points() as u64, q * (q + 1), "q(q+1)"),
            entry("generators", inc.families()[0].generators.len() as u64, q + 1, "q+1"),
            entry("points_per_generator", if gen_sizes_ok { q } else { u64::MAX }, q, "q"),
            entry("cycles", inc.n_cycles() as u64, q * q * q, "q^3"),
            entry("points_per_cycle", uniform_cycle_size(&inc), q + 1, "q+1"),
        ],
    }
}

pub fn minkowski_census(field: &Field) -> CensusReport {
    let plane = MinkowskiPlane::new(field.clone());
    let q = field.order() as u64;
    let affine_points = plane.points().len() as u64;
    let hyperbolas = plane.hyperbolas().count() as u64;
    let lines = plane.slanted_lines().count() as u64;
    let distant = 2 * q + 1;
    let full = Incidence::minkowski_closure(&plane);
    CensusReport {
        geometry: "minkowski".into(),
        field: field.spec().to_string(),
        q: field.order(),
        entries: vec![
            entry("affine_points", affine_points, q * q, "q^2"),
            entry("distant_points", distant, 2 * q + 1, "2q+1"),
            entry("points", affine_points + distant, (q + 1) * (q + 1), "(q+1)^2"),
            entry("points_enumerated", full.n_points() as u64, (q + 1) * (q + 1), "(q+1)^2"),
            entry("generators_per_family", full.families()[0].generators.len() as u64, q + 1, "q+1"),
            entry("affine_hyperbolas", hyperbolas, q * q * (q - 1), "q^2(q-1)"),
            entry("slanted_lines", lines, q * (q - 1), "q(q-1)"),
            entry("cycles", hyperbolas + lines, (q + 1) * q * (q - 1), "(q+1)q(q-1)"),
            entry("points_per_cycle", uniform_cycle_size(&full), q + 1, "q+1"),
        ],
    }
}

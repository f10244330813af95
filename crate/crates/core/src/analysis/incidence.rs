//! Finite incidence structures as bitsets.
//!
//! A structure has points, one or two generator families and a set of cycles.
//! Lookup tables for "the generator of a family through a point" and "the point
//! where a generator meets a cycle" are derived once at construction; entries
//! are `None` whenever the answer is not unique, which is exactly what the
//! axiom predicates need to detect.

use fixedbitset::FixedBitSet;

use crate::field::FieldElement;
use crate::laguerre::{LagGenerator, LaguerrePlane};
use crate::minkowski::{MinkPoint, MinkowskiPlane};

#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub generators: Vec<FixedBitSet>,
}

#[derive(Debug, Clone)]
pub struct Incidence {
    name: String,
    point_labels: Vec<String>,
    cycle_labels: Vec<String>,
    cycles: Vec<FixedBitSet>,
    through: Vec<FixedBitSet>,
    families: Vec<Family>,
    // gen_of[f][p]: the unique generator of family f through p
    gen_of: Vec<Vec<Option<usize>>>,
    // meet[f][g * n_cycles + c]: the unique point of generator g on cycle c
    meet: Vec<Vec<Option<usize>>>,
    // cross[g1 * |G2| + g2]: the unique common point of g1 ∈ family 0, g2 ∈ family 1
    cross: Vec<Option<usize>>,
    affine: Option<FixedBitSet>,
}

fn unique(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    match it.next() {
        None => Some(first),
        Some(_) => None,
    }
}

impl Incidence {
    /// Builds a structure from point labels, generator families and cycles given
    /// as point-index lists.
    pub fn from_parts(
        name: impl Into<String>,
        point_labels: Vec<String>,
        families: Vec<(String, Vec<Vec<usize>>)>,
        cycles: Vec<Vec<usize>>,
        cycle_labels: Vec<String>,
    ) -> Self {
        let n = point_labels.len();
        let to_set = |pts: &Vec<usize>| {
            let mut s = FixedBitSet::with_capacity(n);
            for &p in pts {
                s.insert(p);
            }
            s
        };
        let cycles: Vec<FixedBitSet> = cycles.iter().map(to_set).collect();
        let families: Vec<Family> = families
            .into_iter()
            .map(|(name, gens)| Family {
                name,
                generators: gens.iter().map(to_set).collect(),
            })
            .collect();

        let mut through = vec![FixedBitSet::with_capacity(cycles.len()); n];
        for (ci, c) in cycles.iter().enumerate() {
            for p in c.ones() {
                through[p].insert(ci);
            }
        }
        let gen_of = families
            .iter()
            .map(|fam| {
                (0..n)
                    .map(|p| unique(fam.generators.iter().enumerate().filter(|(_, g)| g.contains(p)).map(|(i, _)| i)))
                    .collect()
            })
            .collect();
        let meet = families
            .iter()
            .map(|fam| {
                let mut table = Vec::with_capacity(fam.generators.len() * cycles.len());
                for g in &fam.generators {
                    for c in &cycles {
                        table.push(unique(g.intersection(c)));
                    }
                }
                table
            })
            .collect();
        let cross = if families.len() == 2 {
            let mut table = Vec::new();
            for g1 in &families[0].generators {
                for g2 in &families[1].generators {
                    table.push(unique(g1.intersection(g2)));
                }
            }
            table
        } else {
            Vec::new()
        };
        Incidence {
            name: name.into(),
            point_labels,
            cycle_labels,
            cycles,
            through,
            families,
            gen_of,
            meet,
            cross,
            affine: None,
        }
    }

    /// The Laguerre plane: q² finite and q distant points, q+1 generators, q³ cycles.
    pub fn laguerre(plane: &LaguerrePlane) -> Self {
        let f = plane.field();
        let points = plane.points();
        let q = f.order() as usize;
        let index = |p: &crate::laguerre::LagPoint| match *p {
            crate::laguerre::LagPoint::Finite { x, y } => x.value() as usize * q + y.value() as usize,
            crate::laguerre::LagPoint::Distant(a) => q * q + a.value() as usize,
        };
        let labels = points.iter().map(|p| p.to_text(f)).collect();
        let gens = plane
            .generators()
            .into_iter()
            .map(|g: LagGenerator| plane.generator_points(g).iter().map(index).collect())
            .collect();
        let mut cycles = Vec::new();
        let mut cycle_labels = Vec::new();
        for c in plane.cycles() {
            cycles.push(plane.cycle_points(&c).iter().map(index).collect());
            cycle_labels.push(c.to_text(f));
        }
        Incidence::from_parts(
            format!("laguerre {}", f.spec()),
            labels,
            vec![("generators".into(), gens)],
            cycles,
            cycle_labels,
        )
    }

    /// The full Minkowski plane obtained by adjoining the 2q+1 distant points to
    /// the derived affine model. Coordinate value q stands for ∞.
    pub fn minkowski_closure(plane: &MinkowskiPlane) -> Self {
        let f = plane.field();
        let q = f.order() as usize;
        let side = q + 1;
        let idx = |x: usize, y: usize| x * side + y;
        let coord = |v: usize| if v == q { "inf".to_string() } else { f.format(FieldElement::from_raw(v as u32)) };
        let labels = (0..side)
            .flat_map(|x| (0..side).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", coord(x), coord(y)))
            .collect();
        let gen1 = (0..side).map(|x| (0..side).map(|y| idx(x, y)).collect()).collect();
        let gen2 = (0..side).map(|y| (0..side).map(|x| idx(x, y)).collect()).collect();
        let mut cycles = Vec::new();
        let mut cycle_labels = Vec::new();
        for h in plane.hyperbolas() {
            let mut pts: Vec<usize> = plane
                .cycle_points(&h)
                .iter()
                .map(|p| idx(p.x.value() as usize, p.y.value() as usize))
                .collect();
            pts.push(idx(h.a().value() as usize, q));
            pts.push(idx(q, h.b().value() as usize));
            cycles.push(pts);
            cycle_labels.push(h.to_text(f));
        }
        for l in plane.slanted_lines() {
            let mut pts: Vec<usize> = plane
                .line_points(&l)
                .iter()
                .map(|p| idx(p.x.value() as usize, p.y.value() as usize))
                .collect();
            pts.push(idx(q, q));
            cycles.push(pts);
            cycle_labels.push(l.to_text(f));
        }
        let mut inc = Incidence::from_parts(
            format!("minkowski closure {}", f.spec()),
            labels,
            vec![("gen1".into(), gen1), ("gen2".into(), gen2)],
            cycles,
            cycle_labels,
        );
        let mut affine = FixedBitSet::with_capacity(side * side);
        for x in 0..q {
            for y in 0..q {
                affine.insert(idx(x, y));
            }
        }
        inc.affine = Some(affine);
        inc
    }

    /// The derived affine model only: q² points, q verticals, q horizontals,
    /// hyperbolas and slanted lines as affine point sets.
    pub fn minkowski_affine(plane: &MinkowskiPlane) -> Self {
        let f = plane.field();
        let q = f.order() as usize;
        let idx = |p: &MinkPoint| p.x.value() as usize * q + p.y.value() as usize;
        let labels = plane.points().iter().map(|p| p.to_text(f)).collect();
        let gen1 = (0..q).map(|x| (0..q).map(|y| x * q + y).collect()).collect();
        let gen2 = (0..q).map(|y| (0..q).map(|x| x * q + y).collect()).collect();
        let mut cycles = Vec::new();
        let mut cycle_labels = Vec::new();
        for h in plane.hyperbolas() {
            cycles.push(plane.cycle_points(&h).iter().map(idx).collect());
            cycle_labels.push(h.to_text(f));
        }
        for l in plane.slanted_lines() {
            cycles.push(plane.line_points(&l).iter().map(idx).collect());
            cycle_labels.push(l.to_text(f));
        }
        let mut inc = Incidence::from_parts(
            format!("minkowski affine {}", f.spec()),
            labels,
            vec![("gen1".into(), gen1), ("gen2".into(), gen2)],
            cycles,
            cycle_labels,
        );
        let mut affine = FixedBitSet::with_capacity(q * q);
        affine.insert_range(..);
        inc.affine = Some(affine);
        inc
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_points(&self) -> usize {
        self.point_labels.len()
    }

    pub fn n_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn point_label(&self, p: usize) -> &str {
        &self.point_labels[p]
    }

    pub fn cycle_label(&self, c: usize) -> &str {
        &self.cycle_labels[c]
    }

    pub fn generator_label(&self, family: usize, g: usize) -> String {
        format!("{}#{}", self.families[family].name, g)
    }

    pub fn cycle(&self, c: usize) -> &FixedBitSet {
        &self.cycles[c]
    }

    /// Cycles through point `p`.
    pub fn through(&self, p: usize) -> &FixedBitSet {
        &self.through[p]
    }

    pub fn generator(&self, family: usize, g: usize) -> &FixedBitSet {
        &self.families[family].generators[g]
    }

    pub fn gen_of(&self, family: usize, p: usize) -> Option<usize> {
        self.gen_of[family][p]
    }

    pub fn meet(&self, family: usize, g: usize, c: usize) -> Option<usize> {
        self.meet[family][g * self.cycles.len() + c]
    }

    /// Common point of a family-0 and a family-1 generator.
    pub fn cross(&self, g1: usize, g2: usize) -> Option<usize> {
        self.cross[g1 * self.families[1].generators.len() + g2]
    }

    /// Points marked affine, when the structure distinguishes them.
    pub fn affine_points(&self) -> Option<&FixedBitSet> {
        self.affine.as_ref()
    }

    /// Distinct and on different generators in every family.
    pub fn connectable(&self, a: usize, b: usize) -> bool {
        a != b
            && (0..self.families.len()).all(|f| match (self.gen_of(f, a), self.gen_of(f, b)) {
                (Some(x), Some(y)) => x != y,
                _ => !self.families[f].generators.iter().any(|g| g.contains(a) && g.contains(b)),
            })
    }

    /// Copy without cycle `c`.
    pub fn without_cycle(&self, c: usize) -> Incidence {
        let mut parts = self.parts();
        parts.3.remove(c);
        parts.4.remove(c);
        self.rebuild(parts)
    }

    /// Copy with an extra cycle.
    pub fn with_cycle(&self, points: Vec<usize>, label: impl Into<String>) -> Incidence {
        let mut parts = self.parts();
        parts.3.push(points);
        parts.4.push(label.into());
        self.rebuild(parts)
    }

    #[allow(clippy::type_complexity)]
    fn parts(&self) -> (String, Vec<String>, Vec<(String, Vec<Vec<usize>>)>, Vec<Vec<usize>>, Vec<String>) {
        (
            self.name.clone(),
            self.point_labels.clone(),
            self.families
                .iter()
                .map(|f| (f.name.clone(), f.generators.iter().map(|g| g.ones().collect()).collect()))
                .collect(),
            self.cycles.iter().map(|c| c.ones().collect()).collect(),
            self.cycle_labels.clone(),
        )
    }

    #[allow(clippy::type_complexity)]
    fn rebuild(
        &self,
        (name, labels, families, cycles, cycle_labels): (
            String,
            Vec<String>,
            Vec<(String, Vec<Vec<usize>>)>,
            Vec<Vec<usize>>,
            Vec<String>,
        ),
    ) -> Incidence {
        let mut inc = Incidence::from_parts(name, labels, families, cycles, cycle_labels);
        inc.affine = self.affine.clone();
        inc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn laguerre_shape() {
        let inc = Incidence::laguerre(&LaguerrePlane::new(Field::prime(3).unwrap()));
        assert_eq!(inc.n_points(), 12);
        assert_eq!(inc.n_cycles(), 27);
        assert!((0..inc.n_cycles()).all(|c| inc.cycle(c).count_ones(..) == 4));
    }

    #[test]
    fn minkowski_closure_shape() {
        let inc = Incidence::minkowski_closure(&MinkowskiPlane::new(Field::prime(3).unwrap()));
        assert_eq!(inc.n_points(), 16);
        assert_eq!(inc.n_cycles(), 24);
        assert!((0..inc.n_cycles()).all(|c| inc.cycle(c).count_ones(..) == 4));
        assert_eq!(inc.affine_points().unwrap().count_ones(..), 9);
        for g1 in 0..4 {
            for g2 in 0..4 {
                assert!(inc.cross(g1, g2).is_some());
            }
        }
    }

    #[test]
    fn affine_model_has_asymptotes() {
        let inc = Incidence::minkowski_affine(&MinkowskiPlane::new(Field::prime(3).unwrap()));
        let missing = (0..inc.n_cycles())
            .flat_map(|c| (0..3).map(move |g| (g, c)))
            .filter(|&(g, c)| inc.meet(0, g, c).is_none())
            .count();
        // each hyperbola misses exactly its vertical asymptote
        assert_eq!(missing, 18);
    }
}

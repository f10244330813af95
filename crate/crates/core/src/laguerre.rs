//! The finite Laguerre plane in the parabola model.
//!
//! Finite points are pairs `(x, y)`; the distant generator holds one point per
//! leading coefficient. A cycle `[a,b,c]` is the parabola `y = ax² + bx + c`
//! together with the distant point `inf(a)`. All q³ parameter triples are
//! cycles, horizontal lines `y = c` included.
//!
//! Cycle membership can also be decided with dual numbers: `Finite(x, y)` maps
//! to `x + yε`, and four points on pairwise distinct generators are concyclic
//! iff their double ratio has no ε-part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DualNumber, Field, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LagPoint {
    Finite { x: FieldElement, y: FieldElement },
    /// The distant point shared by all cycles with leading coefficient `lead`.
    Distant(FieldElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LagGenerator {
    /// The vertical line `x = x0`.
    Finite(FieldElement),
    Distant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LagCycle {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl LagPoint {
    pub fn finite(x: FieldElement, y: FieldElement) -> Self {
        LagPoint::Finite { x, y }
    }

    pub fn generator(&self) -> LagGenerator {
        match *self {
            LagPoint::Finite { x, .. } => LagGenerator::Finite(x),
            LagPoint::Distant(_) => LagGenerator::Distant,
        }
    }

    pub fn is_distant(&self) -> bool {
        matches!(self, LagPoint::Distant(_))
    }

    /// `x + yε` for finite points.
    pub fn as_dual(&self) -> Option<DualNumber> {
        match *self {
            LagPoint::Finite { x, y } => Some(DualNumber::new(x, y)),
            LagPoint::Distant(_) => None,
        }
    }

    pub fn to_text(&self, field: &Field) -> String {
        match *self {
            LagPoint::Finite { x, y } => format!("({},{})", field.format(x), field.format(y)),
            LagPoint::Distant(a) => format!("inf({})", field.format(a)),
        }
    }

    pub fn from_text(field: &Field, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "Laguerre point",
            input: s.to_string(),
        };
        if let Some(inner) = s.strip_prefix("inf(").and_then(|r| r.strip_suffix(')')) {
            return Ok(LagPoint::Distant(field.parse(inner)?));
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        Ok(LagPoint::finite(field.parse(x)?, field.parse(y)?))
    }
}

/// Generator through a point.
pub fn generator_of(p: &LagPoint) -> LagGenerator {
    p.generator()
}

impl LagGenerator {
    pub fn contains(&self, p: &LagPoint) -> bool {
        p.generator() == *self
    }
}

impl LagCycle {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        LagCycle { a, b, c }
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        let ax = field.mul(self.a, x);
        field.add(field.mul(field.add(ax, self.b), x), self.c)
    }

    pub fn to_text(&self, field: &Field) -> String {
        format!(
            "[{},{},{}]",
            field.format(self.a),
            field.format(self.b),
            field.format(self.c)
        )
    }

    pub fn from_text(field: &Field, s: &str) -> Result<Self> {
        let [a, b, c] = parse_triple(field, s, "Laguerre cycle")?;
        Ok(LagCycle { a, b, c })
    }
}

pub(crate) fn parse_triple(field: &Field, s: &str, what: &'static str) -> Result<[FieldElement; 3]> {
    let bad = || Error::Parse {
        what,
        input: s.to_string(),
    };
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let parts: Vec<_> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok([field.parse(parts[0])?, field.parse(parts[1])?, field.parse(parts[2])?])
}

/// The Laguerre plane over one finite field.
#[derive(Debug, Clone)]
pub struct LaguerrePlane {
    field: Field,
}

impl LaguerrePlane {
    pub fn new(field: Field) -> Self {
        LaguerrePlane { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// q² finite points (ordered by x, then y) followed by the q distant points.
    pub fn points(&self) -> Vec<LagPoint> {
        let f = &self.field;
        let mut pts: Vec<_> = f
            .elements()
            .flat_map(|x| f.elements().map(move |y| LagPoint::finite(x, y)))
            .collect();
        pts.extend(f.elements().map(LagPoint::Distant));
        pts
    }

    pub fn generators(&self) -> Vec<LagGenerator> {
        let mut gens: Vec<_> = self.field.elements().map(LagGenerator::Finite).collect();
        gens.push(LagGenerator::Distant);
        gens
    }

    /// All q³ cycles in lexicographic (a, b, c) order.
    pub fn cycles(&self) -> impl Iterator<Item = LagCycle> + '_ {
        let f = &self.field;
        f.elements().flat_map(move |a| {
            f.elements()
                .flat_map(move |b| f.elements().map(move |c| LagCycle { a, b, c }))
        })
    }

    pub fn generator_points(&self, g: LagGenerator) -> Vec<LagPoint> {
        match g {
            LagGenerator::Finite(x) => self.field.elements().map(|y| LagPoint::finite(x, y)).collect(),
            LagGenerator::Distant => self.field.elements().map(LagPoint::Distant).collect(),
        }
    }

    /// The q+1 points of a cycle: one per finite generator, then the distant one.
    pub fn cycle_points(&self, c: &LagCycle) -> Vec<LagPoint> {
        self.generators()
            .into_iter()
            .map(|g| self.meet_generator(c, g))
            .collect()
    }

    pub fn incident(&self, p: &LagPoint, c: &LagCycle) -> bool {
        match *p {
            LagPoint::Finite { x, y } => c.eval(&self.field, x) == y,
            LagPoint::Distant(lead) => lead == c.a,
        }
    }

    /// The unique point of `g` on `c`.
    pub fn meet_generator(&self, c: &LagCycle, g: LagGenerator) -> LagPoint {
        match g {
            LagGenerator::Finite(x) => LagPoint::finite(x, c.eval(&self.field, x)),
            LagGenerator::Distant => LagPoint::Distant(c.a),
        }
    }

    /// The unique cycle through three points on pairwise distinct generators.
    pub fn cycle_through(&self, p1: &LagPoint, p2: &LagPoint, p3: &LagPoint) -> Result<LagCycle> {
        let pts = [*p1, *p2, *p3];
        if pts.iter().filter(|p| p.is_distant()).count() > 1 {
            return Err(Error::TwoDistantPoints);
        }
        let (g1, g2, g3) = (p1.generator(), p2.generator(), p3.generator());
        if g1 == g2 || g2 == g3 || g1 == g3 {
            return Err(Error::SharedGenerator);
        }
        let f = &self.field;
        let lead = pts.iter().find_map(|p| match p {
            LagPoint::Distant(a) => Some(*a),
            _ => None,
        });
        let finite: Vec<(FieldElement, FieldElement)> = pts
            .iter()
            .filter_map(|p| match *p {
                LagPoint::Finite { x, y } => Some((x, y)),
                _ => None,
            })
            .collect();
        match lead {
            Some(a) => {
                // y - a x² = b x + c through the two finite points
                let (x1, y1) = finite[0];
                let (x2, y2) = finite[1];
                let r1 = f.sub(y1, f.mul(a, f.square(x1)));
                let r2 = f.sub(y2, f.mul(a, f.square(x2)));
                let b = f.div(f.sub(r1, r2), f.sub(x1, x2))?;
                let c = f.sub(r1, f.mul(b, x1));
                Ok(LagCycle { a, b, c })
            }
            None => {
                // Lagrange interpolation, collecting coefficients of x², x, 1.
                let mut coef = [FieldElement::ZERO; 3];
                for i in 0..3 {
                    let (xi, yi) = finite[i];
                    let (xj, _) = finite[(i + 1) % 3];
                    let (xk, _) = finite[(i + 2) % 3];
                    let denom = f.mul(f.sub(xi, xj), f.sub(xi, xk));
                    let w = f.div(yi, denom)?;
                    // (x - xj)(x - xk) = x² - (xj + xk) x + xj xk
                    coef[0] = f.add(coef[0], w);
                    coef[1] = f.sub(coef[1], f.mul(w, f.add(xj, xk)));
                    coef[2] = f.add(coef[2], f.mul(w, f.mul(xj, xk)));
                }
                Ok(LagCycle {
                    a: coef[0],
                    b: coef[1],
                    c: coef[2],
                })
            }
        }
    }
}

/// `((a−c)/(a−z)) / ((b−c)/(b−z))` in dual arithmetic.
pub fn double_ratio(
    field: &Field,
    a: DualNumber,
    b: DualNumber,
    c: DualNumber,
    z: DualNumber,
) -> Result<DualNumber> {
    let left = field.dual_div(field.dual_sub(a, c), field.dual_sub(a, z))?;
    let right = field.dual_div(field.dual_sub(b, c), field.dual_sub(b, z))?;
    field.dual_div(left, right)
}

/// True iff `z` lies on the cycle through `a`, `b`, `c`.
pub fn dr_concyclic(
    field: &Field,
    a: DualNumber,
    b: DualNumber,
    c: DualNumber,
    z: DualNumber,
) -> Result<bool> {
    Ok(double_ratio(field, a, b, c, z)?.is_real())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> LaguerrePlane {
        LaguerrePlane::new(Field::prime(5).unwrap())
    }

    fn e(v: u32) -> FieldElement {
        Field::prime(17).unwrap().element(v as u64).unwrap()
    }

    fn pt(x: u32, y: u32) -> LagPoint {
        LagPoint::finite(e(x), e(y))
    }

    fn cyc(a: u32, b: u32, c: u32) -> LagCycle {
        LagCycle::new(e(a), e(b), e(c))
    }

    fn dual(re: u32, eps: u32) -> DualNumber {
        DualNumber::new(e(re), e(eps))
    }

    #[test]
    fn generators() {
        assert_eq!(generator_of(&pt(3, 1)), LagGenerator::Finite(e(3)));
        assert_eq!(generator_of(&LagPoint::Distant(e(2))), LagGenerator::Distant);
        let plane = gf5();
        for p in plane.generator_points(LagGenerator::Finite(e(3))) {
            assert!(matches!(p, LagPoint::Finite { x, .. } if x == e(3)));
        }
    }

    #[test]
    fn incidence_examples() {
        let plane = gf5();
        let c = cyc(2, 2, 4);
        assert!(plane.incident(&pt(1, 3), &c));
        assert!(plane.incident(&LagPoint::Distant(e(2)), &c));
        assert!(!plane.incident(&pt(1, 2), &c));
    }

    #[test]
    fn cycle_through_examples() {
        let plane = gf5();
        assert_eq!(plane.cycle_through(&pt(0, 4), &pt(2, 1), &pt(3, 3)).unwrap(), cyc(2, 2, 4));
        assert_eq!(
            plane
                .cycle_through(&LagPoint::Distant(e(2)), &pt(0, 4), &pt(1, 3))
                .unwrap(),
            cyc(2, 2, 4)
        );
        assert_eq!(
            plane.cycle_through(&pt(0, 4), &LagPoint::Distant(e(2)), &pt(1, 3)).unwrap(),
            cyc(2, 2, 4)
        );
        assert_eq!(plane.cycle_through(&pt(0, 0), &pt(1, 0), &pt(2, 0)).unwrap(), cyc(0, 0, 0));
        // collinear points give a line (a = 0), not an error
        assert_eq!(plane.cycle_through(&pt(0, 1), &pt(1, 2), &pt(2, 3)).unwrap(), cyc(0, 1, 1));
    }

    #[test]
    fn cycle_through_errors() {
        let plane = gf5();
        assert!(matches!(
            plane.cycle_through(&pt(0, 1), &pt(0, 2), &pt(3, 3)),
            Err(Error::SharedGenerator)
        ));
        assert!(matches!(
            plane.cycle_through(&LagPoint::Distant(e(1)), &LagPoint::Distant(e(2)), &pt(3, 3)),
            Err(Error::TwoDistantPoints)
        ));
    }

    #[test]
    fn meet_generator_examples() {
        let plane = gf5();
        assert_eq!(plane.meet_generator(&cyc(2, 2, 4), LagGenerator::Finite(e(1))), pt(1, 3));
        assert_eq!(
            plane.meet_generator(&cyc(3, 1, 4), LagGenerator::Distant),
            LagPoint::Distant(e(3))
        );
        assert_eq!(plane.meet_generator(&cyc(0, 0, 0), LagGenerator::Finite(e(4))), pt(4, 0));
    }

    #[test]
    fn double_ratio_examples() {
        let f = Field::prime(5).unwrap();
        assert_eq!(double_ratio(&f, dual(0, 0), dual(1, 0), dual(2, 0), dual(3, 0)).unwrap(), dual(3, 0));
        assert_eq!(double_ratio(&f, dual(0, 0), dual(1, 0), dual(2, 0), dual(3, 1)).unwrap(), dual(3, 3));
        assert_eq!(double_ratio(&f, dual(0, 1), dual(1, 4), dual(3, 2), dual(3, 2)).unwrap(), dual(1, 0));
        assert!(matches!(
            double_ratio(&f, dual(0, 0), dual(1, 0), dual(2, 0), dual(0, 3)),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn dr_concyclic_examples() {
        let f = Field::prime(5).unwrap();
        assert!(dr_concyclic(&f, dual(0, 0), dual(1, 0), dual(2, 0), dual(3, 0)).unwrap());
        assert!(!dr_concyclic(&f, dual(0, 0), dual(1, 0), dual(2, 0), dual(3, 1)).unwrap());
        let on_cycle = [pt(0, 4), pt(2, 1), pt(3, 3), pt(1, 3)].map(|p| p.as_dual().unwrap());
        assert!(dr_concyclic(&f, on_cycle[0], on_cycle[1], on_cycle[2], on_cycle[3]).unwrap());
    }

    #[test]
    fn cycle_has_q_plus_one_points() {
        let plane = gf5();
        for c in plane.cycles() {
            let pts = plane.cycle_points(&c);
            assert_eq!(pts.len(), 6);
            assert!(pts.iter().all(|p| plane.incident(p, &c)));
        }
    }

    #[test]
    fn text_forms() {
        let f = Field::prime(5).unwrap();
        assert_eq!(pt(1, 3).to_text(&f), "(1,3)");
        assert_eq!(LagPoint::Distant(e(2)).to_text(&f), "inf(2)");
        assert_eq!(LagPoint::from_text(&f, "inf(2)").unwrap(), LagPoint::Distant(e(2)));
        assert_eq!(LagPoint::from_text(&f, "(1, 3)").unwrap(), pt(1, 3));
        assert_eq!(LagCycle::from_text(&f, "[2,2,4]").unwrap(), cyc(2, 2, 4));
        assert_eq!(cyc(2, 2, 4).to_text(&f), "[2,2,4]");
        assert!(LagPoint::from_text(&f, "1,3").is_err());
    }
}

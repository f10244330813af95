//! The finite Minkowski plane, derived at one distinguished point.
//!
//! What remains is the affine plane F²: the two generator families become the
//! vertical and horizontal lines, cycles not through the distinguished point are
//! the hyperbolas `(x−a)(y−b) = c` with `c ≠ 0`, and cycles through it become
//! the slanted lines `y = s·x + t` with `s ≠ 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::laguerre::parse_triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinkPoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl MinkPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        MinkPoint { x, y }
    }

    pub fn to_text(&self, field: &Field) -> String {
        format!("({},{})", field.format(self.x), field.format(self.y))
    }

    pub fn from_text(field: &Field, s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "Minkowski point",
            input: s.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        Ok(MinkPoint::new(field.parse(x)?, field.parse(y)?))
    }
}

/// The hyperbola `(x−a)(y−b) = c`, with asymptotes `x = a` and `y = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinkCycle {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl MinkCycle {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DegenerateHyperbola);
        }
        Ok(MinkCycle { a, b, c })
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn c(&self) -> FieldElement {
        self.c
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
        let [a, b, c] = parse_triple(field, s, "hyperbola")?;
        MinkCycle::new(a, b, c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffLine {
    /// `x = x0`, a generator of the first family.
    Vertical(FieldElement),
    /// `y = y0`, a generator of the second family.
    Horizontal(FieldElement),
    /// `y = s·x + t` with `s ≠ 0`.
    Slanted { s: FieldElement, t: FieldElement },
}

impl AffLine {
    pub fn contains(&self, field: &Field, p: &MinkPoint) -> bool {
        match *self {
            AffLine::Vertical(x0) => p.x == x0,
            AffLine::Horizontal(y0) => p.y == y0,
            AffLine::Slanted { s, t } => field.add(field.mul(s, p.x), t) == p.y,
        }
    }

    pub fn to_text(&self, field: &Field) -> String {
        match *self {
            AffLine::Vertical(x) => format!("V({})", field.format(x)),
            AffLine::Horizontal(y) => format!("H({})", field.format(y)),
            AffLine::Slanted { s, t } => format!("S({},{})", field.format(s), field.format(t)),
        }
    }

    pub fn from_text(field: &Field, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "line",
            input: s.to_string(),
        };
        let (tag, rest) = s.split_at(s.find('(').ok_or_else(bad)?);
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        match tag {
            "V" => Ok(AffLine::Vertical(field.parse(inner)?)),
            "H" => Ok(AffLine::Horizontal(field.parse(inner)?)),
            "S" => {
                let (sl, t) = inner.split_once(',').ok_or_else(bad)?;
                let s = field.parse(sl)?;
                if s.is_zero() {
                    return Err(bad());
                }
                Ok(AffLine::Slanted { s, t: field.parse(t)? })
            }
            _ => Err(bad()),
        }
    }
}

/// Which generator classes two points share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParallelClass {
    /// Connectable.
    None,
    /// Same x-coordinate.
    Gen1,
    /// Same y-coordinate.
    Gen2,
    /// The points coincide.
    Both,
}

pub fn parallel_class(p: &MinkPoint, r: &MinkPoint) -> ParallelClass {
    match (p.x == r.x, p.y == r.y) {
        (true, true) => ParallelClass::Both,
        (true, false) => ParallelClass::Gen1,
        (false, true) => ParallelClass::Gen2,
        (false, false) => ParallelClass::None,
    }
}

#[derive(Debug, Clone)]
pub struct MinkowskiPlane {
    field: Field,
}

impl MinkowskiPlane {
    pub fn new(field: Field) -> Self {
        MinkowskiPlane { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The q² affine points, ordered by x then y.
    pub fn points(&self) -> Vec<MinkPoint> {
        let f = &self.field;
        f.elements()
            .flat_map(|x| f.elements().map(move |y| MinkPoint::new(x, y)))
            .collect()
    }

    /// All q²(q−1) hyperbolas in lexicographic (a, b, c) order.
    pub fn hyperbolas(&self) -> impl Iterator<Item = MinkCycle> + '_ {
        let f = &self.field;
        f.elements().flat_map(move |a| {
            f.elements()
                .flat_map(move |b| f.nonzero_elements().map(move |c| MinkCycle { a, b, c }))
        })
    }

    /// All q(q−1) slanted lines.
    pub fn slanted_lines(&self) -> impl Iterator<Item = AffLine> + '_ {
        let f = &self.field;
        f.nonzero_elements()
            .flat_map(move |s| f.elements().map(move |t| AffLine::Slanted { s, t }))
    }

    pub fn incident(&self, p: &MinkPoint, h: &MinkCycle) -> bool {
        let f = &self.field;
        f.mul(f.sub(p.x, h.a), f.sub(p.y, h.b)) == h.c
    }

    /// The q−1 points of a hyperbola, ordered by x.
    pub fn cycle_points(&self, h: &MinkCycle) -> Vec<MinkPoint> {
        let f = &self.field;
        f.elements()
            .filter_map(|x| self.meet_vertical(h, x).map(|y| MinkPoint::new(x, y)))
            .collect()
    }

    pub fn line_points(&self, l: &AffLine) -> Vec<MinkPoint> {
        let f = &self.field;
        match *l {
            AffLine::Vertical(x) => f.elements().map(|y| MinkPoint::new(x, y)).collect(),
            AffLine::Horizontal(y) => f.elements().map(|x| MinkPoint::new(x, y)).collect(),
            AffLine::Slanted { s, t } => f
                .elements()
                .map(|x| MinkPoint::new(x, f.add(f.mul(s, x), t)))
                .collect(),
        }
    }

    /// y-coordinate where `x = x0` meets `h`; `None` on the asymptote.
    pub fn meet_vertical(&self, h: &MinkCycle, x0: FieldElement) -> Option<FieldElement> {
        let f = &self.field;
        let dx = f.sub(x0, h.a);
        let q = f.div(h.c, dx).ok()?;
        Some(f.add(h.b, q))
    }

    /// x-coordinate where `y = y0` meets `h`; `None` on the asymptote.
    pub fn meet_horizontal(&self, h: &MinkCycle, y0: FieldElement) -> Option<FieldElement> {
        let f = &self.field;
        let dy = f.sub(y0, h.b);
        let q = f.div(h.c, dy).ok()?;
        Some(f.add(h.a, q))
    }

    /// Solves `y·u + x·v − w = x·y` through three points, with `(u,v,w) = (a, b, ab−c)`.
    pub fn cycle_through(&self, p1: &MinkPoint, p2: &MinkPoint, p3: &MinkPoint) -> Result<MinkCycle> {
        let pts = [p1, p2, p3];
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if parallel_class(pts[i], pts[j]) != ParallelClass::None {
                return Err(Error::ParallelPair);
            }
        }
        let f = &self.field;
        let mut rows: Vec<[FieldElement; 4]> = pts
            .iter()
            .map(|p| [p.y, p.x, f.neg(f.one()), f.mul(p.x, p.y)])
            .collect();
        let [u, v, w] = solve3(f, &mut rows).ok_or(Error::Collinear)?;
        let c = f.sub(f.mul(u, v), w);
        MinkCycle::new(u, v, c).map_err(|_| Error::Collinear)
    }

    pub fn line_through(&self, p: &MinkPoint, r: &MinkPoint) -> Result<AffLine> {
        let f = &self.field;
        match parallel_class(p, r) {
            ParallelClass::Both => Err(Error::EqualPoints),
            ParallelClass::Gen1 => Ok(AffLine::Vertical(p.x)),
            ParallelClass::Gen2 => Ok(AffLine::Horizontal(p.y)),
            ParallelClass::None => {
                let s = f.div(f.sub(r.y, p.y), f.sub(r.x, p.x))?;
                let t = f.sub(p.y, f.mul(s, p.x));
                Ok(AffLine::Slanted { s, t })
            }
        }
    }

    /// Affine points common to `l` and `h`, ordered by x. Slanted lines are scanned.
    pub fn intersect_line_cycle(&self, l: &AffLine, h: &MinkCycle) -> Vec<MinkPoint> {
        let f = &self.field;
        match *l {
            AffLine::Vertical(x0) => self
                .meet_vertical(h, x0)
                .map(|y| vec![MinkPoint::new(x0, y)])
                .unwrap_or_default(),
            AffLine::Horizontal(y0) => self
                .meet_horizontal(h, y0)
                .map(|x| vec![MinkPoint::new(x, y0)])
                .unwrap_or_default(),
            AffLine::Slanted { s, t } => f
                .elements()
                .map(|x| MinkPoint::new(x, f.add(f.mul(s, x), t)))
                .filter(|p| self.incident(p, h))
                .collect(),
        }
    }

    /// Whether a slanted line meets `h` in exactly one point.
    pub fn is_tangent(&self, l: &AffLine, h: &MinkCycle) -> Result<bool> {
        if !matches!(l, AffLine::Slanted { .. }) {
            return Err(Error::NotSlanted);
        }
        Ok(self.intersect_line_cycle(l, h).len() == 1)
    }
}

/// Gauss-Jordan elimination on a 3×4 augmented system. `None` when singular.
fn solve3(f: &Field, rows: &mut [[FieldElement; 4]]) -> Option<[FieldElement; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = f.inv(rows[col][col]).ok()?;
        for k in 0..4 {
            rows[col][k] = f.mul(rows[col][k], inv);
        }
        for r in 0..3 {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for k in 0..4 {
                    rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[col][k]));
                }
            }
        }
    }
    Some([rows[0][3], rows[1][3], rows[2][3]])
}

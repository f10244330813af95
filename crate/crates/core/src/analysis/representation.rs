//! Cross-check of the two Laguerre representations: membership by parabola
//! equation versus membership by a real double ratio.

use serde::Serialize;

use crate::field::Field;
use crate::laguerre::{dr_concyclic, LagPoint, LaguerrePlane};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub field: String,
    pub cycles: u64,
    pub comparisons: u64,
    pub disagreements: u64,
    /// `[cycle, a, b, c, z]` in text form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<[String; 5]>,
}

/// For every cycle, every triple of its finite points and every finite point z
/// on another generator, compares `z ∈ cycle` with `Dr(a,b,c,z) ∈ F`.
pub fn representation_cross_check(field: &Field) -> RepresentationReport {
    let plane = LaguerrePlane::new(field.clone());
    let f = field;
    let xs: Vec<_> = f.elements().collect();
    let mut comparisons = 0;
    let mut disagreements = 0;
    let mut first = None;
    let mut cycles = 0;
    for cyc in plane.cycles() {
        cycles += 1;
        let on = |x| LagPoint::finite(x, cyc.eval(f, x));
        for (ia, &xa) in xs.iter().enumerate() {
            for (ib, &xb) in xs.iter().enumerate().skip(ia + 1) {
                for &xc in xs.iter().skip(ib + 1) {
                    let [a, b, c] = [on(xa), on(xb), on(xc)].map(|p| p.as_dual().expect("finite"));
                    for &xz in xs.iter().filter(|&&x| x != xa && x != xb && x != xc) {
                        for yz in f.elements() {
                            let z = LagPoint::finite(xz, yz);
                            let by_equation = plane.incident(&z, &cyc);
                            let by_ratio = dr_concyclic(f, a, b, c, z.as_dual().expect("finite"))
                                .expect("distinct generators give units");
                            comparisons += 1;
                            if by_equation != by_ratio {
                                disagreements += 1;
                                first.get_or_insert_with(|| {
                                    [
                                        cyc.to_text(f),
                                        on(xa).to_text(f),
                                        on(xb).to_text(f),
                                        on(xc).to_text(f),
                                        z.to_text(f),
                                    ]
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    RepresentationReport {
        field: f.spec().to_string(),
        cycles,
        comparisons,
        disagreements,
        first_disagreement: first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representations_agree_gf5() {
        let r = representation_cross_check(&Field::prime(5).unwrap());
        assert_eq!(r.cycles, 125);
        assert!(r.comparisons > 0);
        assert_eq!(r.disagreements, 0);
    }
}
